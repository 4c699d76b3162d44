from django.apps import AppConfig


class HgcalgConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "hgcalg"
    verbose_name = "Hairy graph complexes"
