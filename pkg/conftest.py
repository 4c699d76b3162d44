import os
import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "graphcx.settings")
django.setup()
