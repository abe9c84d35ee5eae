from django.apps import AppConfig


class DimersConfig(AppConfig):
    name = "dimers"
    verbose_name = "Snake Graph Dimer Models"
    default_auto_field = "django.db.models.BigAutoField"
