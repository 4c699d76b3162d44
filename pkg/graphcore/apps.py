from django.apps import AppConfig


class GraphcoreConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "graphcore"
    verbose_name = "Oriented hairy graphs"
