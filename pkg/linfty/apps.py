from django.apps import AppConfig


class LinftyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "linfty"
    verbose_name = "Pre-Lie pairs and L-infinity morphisms"
