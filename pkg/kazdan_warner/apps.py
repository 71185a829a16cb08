from django.apps import AppConfig


class KazdanWarnerConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'kazdan_warner'
    verbose_name = 'Kazdan-Warner equation solver'
