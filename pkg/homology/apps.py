from django.apps import AppConfig


class HomologyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "homology"
    verbose_name = "Windowed homology of graph and tree complexes"
