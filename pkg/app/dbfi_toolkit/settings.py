"""
Django settings for the dbfi_toolkit project.

The toolkit is driven through management commands (see the console app);
there is no web surface, so only the pieces needed by the ORM, the REST
framework serializers and Celery are configured here.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')


def env_bool(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'dbfi-toolkit-local-only')

DEBUG = env_bool('DEBUG', False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    # 3rd party apps
    'rest_framework',
    # local apps
    'lang',
    'engine',
    'tower',
    'conformance',
    'console',
]


# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': os.environ.get('DB_ENGINE', 'django.db.backends.sqlite3'),
        'NAME': os.environ.get('DB_NAME', str(BASE_DIR / 'db.sqlite3')),
        'HOST': os.environ.get('DB_HOST', ''),
        'USER': os.environ.get('DB_USER', ''),
        'PASSWORD': os.environ.get('DB_PASSWORD', ''),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Toolkit settings
DBFI = {
    'DEFAULT_PROFILE': os.environ.get('DBFI_PROFILE', 'portable'),
    'RUN_STEP_LIMIT': int(os.environ.get('DBFI_RUN_STEP_LIMIT', 10**9)),
    'TOWER_STEP_LIMIT': int(os.environ.get('DBFI_TOWER_STEP_LIMIT', 10**10)),
    'FUZZ_STEP_LIMIT': int(os.environ.get('DBFI_FUZZ_STEP_LIMIT', 10**7)),
    'LEVEL_OVERHEAD_FACTOR': int(os.environ.get('DBFI_LEVEL_OVERHEAD_FACTOR', 10_000)),
    'MAX_CHAIN': 2,
    'TRACE_WINDOW': 8,
    'REPRO_DIR': Path(os.environ.get('DBFI_REPRO_DIR', BASE_DIR / 'repro')),
}


# Logging: everything goes to stderr, stdout is reserved for program output
LOG_LEVEL = os.environ.get('DBFI_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {'handlers': ['stderr'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('lang', 'engine', 'tower', 'conformance', 'console')
    },
}


# Celery Configuration
CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'redis://:redis@redis:6379/0')
CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', 'redis://:redis@redis:6379/0')
CELERY_TASK_ALWAYS_EAGER = env_bool('CELERY_TASK_ALWAYS_EAGER', True)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'
