"""
Django settings for pptkit project.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    "DJANGO_SECRET_KEY", "django-insecure-pptkit-local-analysis-only"
)

DEBUG = os.environ.get("DJANGO_DEBUG", "False") == "True"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # Third party apps
    "rest_framework",
    # Local apps
    "linalg",
    "states",
    "entanglement",
    "analysis",
]


# Nothing is persisted, so no database is configured.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Serializers only; there are no API views to authenticate.
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}

# Numerical settings used by the management commands.
# The library functions take explicit tolerances; these are only CLI defaults.
PPTKIT = {
    "TOLERANCE": float(os.environ.get("PPTKIT_TOL", "1e-10")),
    # family-structured reports also carry the dense spectrum up to this size
    "DENSE_SPECTRUM_MAX_DIM": 64,
    "SWEEP_WORKERS": int(os.environ.get("PPTKIT_SWEEP_WORKERS", "1")),
}


# Logging
LOG_LEVEL = os.environ.get("PPTKIT_LOG_LEVEL", "WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in ("linalg", "states", "entanglement", "analysis")
    },
}
