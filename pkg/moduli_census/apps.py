from django.apps import AppConfig


class ModuliCensusConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'moduli_census'
    verbose_name = 'Moduli space census'
