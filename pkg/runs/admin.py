from django.contrib import admin
from .models import RunManifest


@admin.register(RunManifest)
class RunManifestAdmin(admin.ModelAdmin):
    list_display = ('command', 'grid_size', 'exit_code', 'wall_time', 'created_at')
    list_filter = ('command', 'exit_code', 'created_at')
    search_fields = ('command',)
    readonly_fields = ('id', 'created_at', 'updated_at')
    date_hierarchy = 'created_at'

    fieldsets = (
        (None, {
            'fields': ('id', 'command', 'exit_code', 'wall_time')
        }),
        ('Inputs', {
            'fields': ('parameters', 'grid_size', 'tolerances')
        }),
        ('Outputs', {
            'fields': ('artifact_hashes', 'provenance'),
            'classes': ('collapse',)
        }),
    )
