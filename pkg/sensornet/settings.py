# Django settings for the sensornet project.
import os
import sys

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), './'))
SITE_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))

sys.path.append(os.path.join(PROJECT_ROOT, 'apps'))

PROJECT_TITLE = 'sensornet'
PROJECT_NAME = 'sensornet'

DEBUG = bool(os.environ.get('DEBUG', False))
DEVELOPMENT = bool(os.environ.get('DEVELOPMENT', False))

# The simulator keeps no state in a database; exports go to files.
DATABASES = {}

TIME_ZONE = os.environ.get('TIME_ZONE', 'UTC')
LANGUAGE_CODE = os.environ.get('LANGUAGE_CODE', 'en-us')
USE_I18N = False
USE_TZ = True

# Make this unique, and don't share it with anybody.
SECRET_KEY = os.environ.get('SECRET_KEY', 'sensornet-insecure-^k2r8w!x0p3v6m9q4t7z1')

INSTALLED_APPS = (
    'topology',
    'energy',
    'strategies',
    'engine',
    'metrics',
    'experiments',
)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s'
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'topology': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
        'energy': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
        'strategies': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
        'engine': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
        'metrics': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
        'experiments': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
    }
}


def _get_float(name, default):
    value = os.environ.get(name)
    return float(value) if value is not None else default


def _get_int(name, default):
    value = os.environ.get(name)
    return int(value) if value is not None else default


# Network setup
SENSORNET_NODE_COUNT = _get_int('SENSORNET_NODE_COUNT', 100)
SENSORNET_AREA_WIDTH = _get_float('SENSORNET_AREA_WIDTH', 100.0)
SENSORNET_AREA_HEIGHT = _get_float('SENSORNET_AREA_HEIGHT', 100.0)
SENSORNET_BASE_X = _get_float('SENSORNET_BASE_X', 0.0)
SENSORNET_BASE_Y = _get_float('SENSORNET_BASE_Y', 0.0)

# First order radio model
SENSORNET_ELEC_PER_BIT = _get_float('SENSORNET_ELEC_PER_BIT', 50e-9)
SENSORNET_AMP_PER_BIT_PER_M2 = _get_float('SENSORNET_AMP_PER_BIT_PER_M2', 100e-12)
SENSORNET_DATA_BITS = _get_int('SENSORNET_DATA_BITS', 2000)
SENSORNET_CONTROL_BITS = _get_int('SENSORNET_CONTROL_BITS', 100)
SENSORNET_INITIAL_BATTERY = _get_float('SENSORNET_INITIAL_BATTERY', 0.5)

# Routing strategies
SENSORNET_MAX_NEIGHBORS = _get_int('SENSORNET_MAX_NEIGHBORS', 8)
SENSORNET_MAX_RANGE = os.environ.get('SENSORNET_MAX_RANGE') and float(os.environ['SENSORNET_MAX_RANGE'])
SENSORNET_CLUSTERS = _get_int('SENSORNET_CLUSTERS', 5)
SENSORNET_ROUND_LENGTH = _get_int('SENSORNET_ROUND_LENGTH', 20)
SENSORNET_LOW_POWER_THRESHOLD = _get_float('SENSORNET_LOW_POWER_THRESHOLD', 0.10)
SENSORNET_POWER_COMPARE_THRESHOLD = _get_float('SENSORNET_POWER_COMPARE_THRESHOLD', 0.50)
SENSORNET_QUEUE_LIMIT = _get_int('SENSORNET_QUEUE_LIMIT', 10)
SENSORNET_KMEANS_MAX_SWEEPS = _get_int('SENSORNET_KMEANS_MAX_SWEEPS', 100)

# Simulation
SENSORNET_MAX_ITERATIONS = _get_int('SENSORNET_MAX_ITERATIONS', 100000)

# Batch processing
SENSORNET_BATCH_PROCESSING_MODE_IMMEDIATE = bool(os.environ.get('SENSORNET_BATCH_PROCESSING_MODE_IMMEDIATE', False))
SENSORNET_BATCH_WORKERS = os.environ.get('SENSORNET_BATCH_WORKERS') and int(os.environ['SENSORNET_BATCH_WORKERS'])

# Overwrite defaults with local settings
try:
    from settings_local import *
except ImportError:
    pass

if DEVELOPMENT:
    try:
        import django_extensions
        INSTALLED_APPS += ('django_extensions',)
    except ImportError:
        pass
