"""
Django settings for the snakedimer project.

Exact combinatorics of mixed dimer covers on snake graphs. There is no
database: every computation is pure and results are served through the
`snake` management command and a small read-only JSON API.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'SNAKEDIMER_SECRET_KEY',
    'django-insecure-snakedimer-change-this-in-production-918273645',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('SNAKEDIMER_DEBUG', '1') == '1'

ALLOWED_HOSTS = ['localhost', '127.0.0.1', '0.0.0.0', 'testserver']

# Application definition
INSTALLED_APPS = [
    # DRF's request handling imports the auth models
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # Third party apps
    'rest_framework',
    'corsheaders',

    # Local apps
    'dimers.apps.DimersConfig',
]

MIDDLEWARE = [
    'corsheaders.middleware.CorsMiddleware',
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'snakedimer_project.urls'

TEMPLATES = []

WSGI_APPLICATION = 'snakedimer_project.wsgi.application'

# No database: covers, lattices and networks are computed on demand.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Cache configuration
CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'snakedimer',
        'TIMEOUT': 300,
        'OPTIONS': {
            'MAX_ENTRIES': 1000,
        }
    }
}

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'DEBUG',
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'dimers.log',
            'formatter': 'verbose',
        },
        'console': {
            # StreamHandler writes to stderr; stdout is reserved for results.
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
        'dimers': {
            'handlers': ['console', 'file'],
            'level': os.environ.get('SNAKEDIMER_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}

# Create logs directory if it doesn't exist
os.makedirs(BASE_DIR / 'logs', exist_ok=True)

# REST Framework configuration
REST_FRAMEWORK = {
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'EXCEPTION_HANDLER': 'dimers.api_views.exception_handler',
}

# CORS settings (for API access)
CORS_ALLOWED_ORIGINS = [
    "http://localhost:3000",
    "http://127.0.0.1:3000",
]

# Security settings
SECURE_CONTENT_TYPE_NOSNIFF = True
X_FRAME_OPTIONS = 'DENY'

# Application-specific settings
DIMERS_SETTINGS = {
    'ENUMERATION_GUARD': 10 ** 6,
    'CLASS_ENUMERATION_LIMIT': 10,
    'MATCHING_VERTEX_LIMIT': 200,
    'QPOLY_N_LIMIT': 12,
    'DOT_RANKDIR': 'BT',
}
