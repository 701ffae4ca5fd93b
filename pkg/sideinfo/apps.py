from django.apps import AppConfig


class SideinfoConfig(AppConfig):
    name = 'sideinfo'
