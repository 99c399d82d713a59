"""
Django settings for the faulhaberLab project.

The project has no database, views or templates; Django supplies the
management-command runner and configuration. Every POWERSUMS_* value can
be overridden from the environment or a .env / settings.ini file at the
project root, which is how CI widens the verification sweep.
"""

from pathlib import Path

from decouple import AutoConfig, Csv

BASE_DIR = Path(__file__).resolve().parent.parent

config = AutoConfig(search_path=str(BASE_DIR))


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='faulhaberlab-development-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


INSTALLED_APPS = [
    'powersums',
]

DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Verification sweep bounds and harness knobs

POWERSUMS_MAX_M = config('POWERSUMS_MAX_M', default=6, cast=int)
POWERSUMS_MAX_R = config('POWERSUMS_MAX_R', default=3, cast=int)
POWERSUMS_MAX_N = config('POWERSUMS_MAX_N', default=12, cast=int)
POWERSUMS_X_GRID = config('POWERSUMS_X_GRID', default='0,1,1/2,-3/2,7/3', cast=Csv())
POWERSUMS_SEED = config('POWERSUMS_SEED', default=20240229, cast=int)
POWERSUMS_WORKERS = config('POWERSUMS_WORKERS', default=1, cast=int)
POWERSUMS_Y_ORDER = config('POWERSUMS_Y_ORDER', default=13, cast=int)
POWERSUMS_T_ORDER = config('POWERSUMS_T_ORDER', default=7, cast=int)
POWERSUMS_NAIVE_CEILING = config('POWERSUMS_NAIVE_CEILING', default=10 ** 7, cast=int)
POWERSUMS_LOG_LEVEL = config('POWERSUMS_LOG_LEVEL', default='INFO')


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
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'powersums': {
            'handlers': ['console'],
            'level': POWERSUMS_LOG_LEVEL,
            'propagate': False,
        },
    },
}
