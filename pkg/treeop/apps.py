from django.apps import AppConfig


class TreeopConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "treeop"
    verbose_name = "Rooted tree operads"
