"""
Django settings for the qdagprint project.

QDAG fingerprinting library, CLI (management commands) and lookup service.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

from datetime import timedelta
from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    "DJANGO_SECRET_KEY",
    "django-insecure-qdagprint-local-development-key-change-me",
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get("DJANGO_DEBUG", "1") == "1"

ALLOWED_HOSTS = [
    host.strip()
    for host in os.environ.get("DJANGO_ALLOWED_HOSTS", "localhost,127.0.0.1").split(",")
    if host.strip()
]


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',

    'corsheaders',
    'rest_framework',
    'rest_framework_simplejwt',

    'plans',
    'fingerprints',
    'evaluation',
]

MIDDLEWARE = [
    'corsheaders.middleware.CorsMiddleware',
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'qdagprint.urls'

WSGI_APPLICATION = 'qdagprint.wsgi.application'


# Database (only the auth tables behind the JWT login live here)

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True


REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': (
        'rest_framework_simplejwt.authentication.JWTAuthentication',
    ),
    'DEFAULT_PERMISSION_CLASSES': (
        'rest_framework.permissions.IsAuthenticated',
    ),
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
}

SIMPLE_JWT = {
    'ACCESS_TOKEN_LIFETIME': timedelta(minutes=60),
    'REFRESH_TOKEN_LIFETIME': timedelta(days=1),
}

# CORS settings
CORS_ALLOW_ALL_ORIGINS = True


# Fingerprinting, matching and evaluation defaults. CLI flags override these
# per invocation; the lookup service uses them as-is.
QDAGPRINT = {
    "APPROACH": os.environ.get("QDAGPRINT_APPROACH", "structured"),
    "K": int(os.environ.get("QDAGPRINT_K", "10")),
    "TOP_N": int(os.environ.get("QDAGPRINT_TOP_N", "5")),
    "NGRAM_N": int(os.environ.get("QDAGPRINT_NGRAM_N", "3")),
    "INDEX_PATH": os.environ.get("QDAGPRINT_INDEX", str(BASE_DIR / "index.jsonl")),
    "OPERATOR_REGISTRY": os.environ.get(
        "QDAGPRINT_OPERATOR_REGISTRY",
        str(BASE_DIR / "fingerprints" / "data" / "operators.tsv"),
    ),
    "WORKERS": int(os.environ.get("QDAGPRINT_WORKERS", "1")),
}


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        name: {
            'handlers': ['console'],
            'level': os.environ.get('QDAGPRINT_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        }
        for name in ('plans', 'fingerprints', 'evaluation')
    },
}
