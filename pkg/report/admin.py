from django.contrib import admin
from report.models import ReportRow


@admin.register(ReportRow)
class ReportRowAdmin(admin.ModelAdmin):
    list_display = ['config_id', 'bits', 'complete_sets', 'tightness', 'inner_sum', 'outer_sum', 'max_gap', 'power', 'updated_at']
    list_filter = ['tightness', 'base', 'power']
    search_fields = ['bits', 'complete_sets']
    readonly_fields = ['created_at', 'updated_at']

    fieldsets = (
        ('Configuration', {
            'fields': ('config_id', 'bits', 'complete_sets', 'tightness')
        }),
        ('Bounds', {
            'fields': ('inner_sum', 'outer_sum', 'max_gap')
        }),
        ('Channel', {
            'fields': ('power', 'n1', 'n2', 'n3', 'base', 'grid')
        }),
        ('Timestamps', {
            'fields': ('created_at', 'updated_at')
        }),
    )
