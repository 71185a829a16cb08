from django.apps import AppConfig


class QuaternionicAlgebraConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'quaternionic_algebra'
    verbose_name = 'Quaternionic representation and moment maps'
