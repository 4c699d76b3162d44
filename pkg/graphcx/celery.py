import os

from celery import Celery

# Set the default Django settings module for the 'celery' program.
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "graphcx.settings")

app = Celery("graphcx")


app.config_from_object("django.conf:settings", namespace="CELERY")

# Bucket and residual tasks live in the homology and linfty apps.
app.autodiscover_tasks()
