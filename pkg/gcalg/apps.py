from django.apps import AppConfig


class GcalgConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "gcalg"
    verbose_name = "Kontsevich graph complex"
