"""
Django settings for seesaw_project project.

The project hosts the `seesaw` application: management commands that run the
theta-lift and seesaw computations over Q(√−7), plus a small archive of reports.
"""

from pathlib import Path
import os
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SEESAW_SECRET_KEY', 'django-insecure-seesaw-local-computation-only')

DEBUG = os.environ.get('SEESAW_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'rest_framework',
    'seesaw',
]

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
    'COERCE_DECIMAL_TO_STRING': True,
}


# Database
# https://docs.djangoproject.com/en/5.1/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Computation defaults; RunConfig layers a config file and command-line flags on top.

SEESAW = {
    'PRECISION_BITS': 128,
    'LATTICE_RADIUS': 60,
    'QUAD_DEPTH': 4,
    'EULER_CUTOFF': 200,
    'SEED': 0,
    'OUTPUT_FORMAT': 'json',
    'OUTPUT_PATH': None,
    'THREADS': int(os.environ.get('SEESAW_THREADS', '1')),
}


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'seesaw': {
            'handlers': ['console'],
            'level': os.environ.get('SEESAW_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.1/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
