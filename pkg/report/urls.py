from django.urls import path
from report.views import classify_config, config_bounds, list_report_rows

urlpatterns = [
    path('classify/<str:config>/', classify_config, name='classify'),
    path('bounds/<str:config>/', config_bounds, name='bounds'),
    path('reports/', list_report_rows, name='report-rows'),
]
