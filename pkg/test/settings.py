"""
Django settings for the PECR project.

Generated by 'django-admin startproject' using Django 3.2.10.

For more information on this file, see
https://docs.djangoproject.com/en/3.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/3.2/ref/settings/
"""

import os
import string
import random
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def generate_secret(nb: int = 128):
    return ''.join([random.choice(string.printable) for i in range(nb)])


SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY') or generate_secret()

DEBUG = os.environ.get('DJANGO_DEBUG', 'true').lower() == 'true'

ALLOWED_HOSTS = ['127.0.0.1', 'localhost']

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'pecr_logic.common',
    'pecr_logic.programs',
    'pecr_logic.matrices',
    'pecr_logic.kernel',
    'pecr_logic.proofs',
    'pecr_logic.applications',
    'pecr_logic.dynsys',
    'pecr_logic.cli',
]

# No models: nothing is persisted
DATABASES = {}

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'pecr',
    }
}

# Internationalization
# https://docs.djangoproject.com/en/3.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_L10N = True

USE_TZ = False

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
        'services': {
            'handlers': ['console'],
            'level': os.getenv('PECR_LOG_LEVEL', 'INFO'),
        },
        'kernel': {
            'handlers': ['console'],
            'level': os.getenv('PECR_LOG_LEVEL', 'INFO'),
        },
        'prover': {
            'handlers': ['console'],
            'level': os.getenv('PECR_LOG_LEVEL', 'INFO'),
        },
    },
}

from pecr_logic.settings import *

if os.environ.get('PECR_DATA_DIR'):
    PECR_DATA_DIR = Path(os.environ.get('PECR_DATA_DIR'))
else:
    PECR_DATA_DIR = BASE_DIR / 'pecr_logic' / 'applications' / 'data'
