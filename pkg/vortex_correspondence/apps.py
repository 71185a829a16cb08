from django.apps import AppConfig


class VortexCorrespondenceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'vortex_correspondence'
    verbose_name = 'Holomorphic triples and vortex solutions'
