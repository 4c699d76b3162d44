"""
Django settings for the graphcx project.

graphcx has no web surface and no database: Django provides configuration,
logging, caching and the management-command front end, Celery provides the
worker pool. Engine knobs are collected in ``GRAPHCX``.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_int(name, default):
    return int(os.environ.get(name, default))


def env_bool(name, default):
    return os.environ.get(name, str(default)).strip().lower() in ("1", "true", "yes")


SECRET_KEY = os.environ.get("GRAPHCX_SECRET_KEY", "graphcx-local-only")

DEBUG = env_bool("GRAPHCX_DEBUG", False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "exactla",
    "graphcore",
    "gcalg",
    "hgcalg",
    "treeop",
    "linfty",
    "homology",
    "cli",
]

DATABASES = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Engine configuration

GRAPHCX = {
    "CANON_CACHE_SIZE": env_int("GRAPHCX_CANON_CACHE_SIZE", 200000),
    "JOBS": env_int("GRAPHCX_JOBS", 1),
    "BUCKET_CACHE_TIMEOUT": env_int("GRAPHCX_BUCKET_CACHE_TIMEOUT", 3600),
    "MAX_SEARCH_LEAVES": env_int("GRAPHCX_MAX_SEARCH_LEAVES", 500000),
    "TOOL_VERSION": "graphcx 1.0",
}

REDIS_URL = os.environ.get("GRAPHCX_REDIS_URL", "")


# configurations for restframework (serializers and the JSON renderer only)

REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": ["rest_framework.renderers.JSONRenderer"],
    "UNAUTHENTICATED_USER": None,
}


# Celery Settings
CELERY_BROKER_URL = REDIS_URL or "memory://"
CELERY_RESULT_BACKEND = REDIS_URL or "cache+memory://"
CELERY_ACCEPT_CONTENT = ["application/json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
# A bare checkout runs every task inline; point GRAPHCX_REDIS_URL at a broker
# and set GRAPHCX_EAGER=0 to use real workers.
CELERY_TASK_ALWAYS_EAGER = env_bool("GRAPHCX_EAGER", True)
CELERY_TASK_EAGER_PROPAGATES = True


# Cache Configuration (homology buckets)
if REDIS_URL:
    CACHES = {
        "default": {
            "BACKEND": "django_redis.cache.RedisCache",
            "LOCATION": REDIS_URL,
            "OPTIONS": {
                "CLIENT_CLASS": "django_redis.client.DefaultClient",
            },
        }
    }
else:
    CACHES = {
        "default": {
            "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
            "LOCATION": "graphcx-buckets",
        }
    }


# Logging

LOG_LEVEL = os.environ.get("GRAPHCX_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in (
            "exactla",
            "graphcore",
            "gcalg",
            "hgcalg",
            "treeop",
            "linfty",
            "homology",
            "cli",
        )
    },
}
