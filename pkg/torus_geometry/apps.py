from django.apps import AppConfig


class TorusGeometryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'torus_geometry'
    verbose_name = 'Flat torus, lattice line bundles and theta sections'
