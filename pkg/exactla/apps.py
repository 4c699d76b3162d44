from django.apps import AppConfig


class ExactlaConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "exactla"
    verbose_name = "Exact sparse linear algebra"
