from django.apps import AppConfig


class LimitingConfigurationsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'limiting_configurations'
    verbose_name = 'Limiting configurations and concentration sweeps'
