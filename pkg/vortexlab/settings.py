import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-default-key-for-development')

DEBUG = os.getenv('DEBUG', 'True').lower() == 'true'

ALLOWED_HOSTS = os.getenv('ALLOWED_HOSTS', 'localhost,127.0.0.1').split(',')

# Application definition
INSTALLED_APPS = [
    # Django apps
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',

    # Third party apps
    'rest_framework',

    # Local apps
    'core.apps.CoreConfig',
    'runs.apps.RunsConfig',
    'torus_geometry.apps.TorusGeometryConfig',
    'quaternionic_algebra.apps.QuaternionicAlgebraConfig',
    'dolbeault.apps.DolbeaultConfig',
    'kazdan_warner.apps.KazdanWarnerConfig',
    'vortex_correspondence.apps.VortexCorrespondenceConfig',
    'moduli_census.apps.ModuliCensusConfig',
    'limiting_configurations.apps.LimitingConfigurationsConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
]

ROOT_URLCONF = 'vortexlab.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

# Database (run manifests only)
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('VORTEXLAB_DB', str(BASE_DIR / 'db.sqlite3')),
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

STATIC_URL = '/static/'

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings (serializers only, nothing is served)
REST_FRAMEWORK = {
    'COERCE_DECIMAL_TO_STRING': False,
    'UNICODE_JSON': False,
}

# Numerical defaults. Explicit arguments always override these.
VORTEXLAB = {
    'SEED': int(os.getenv('VORTEXLAB_SEED', '20240607')),
    'THETA_TRUNCATION': int(os.getenv('VORTEXLAB_THETA_TRUNCATION', '8')),
    'RANK_TOL': float(os.getenv('VORTEXLAB_RANK_TOL', '1e-6')),
    'MIN_GAP_RATIO': float(os.getenv('VORTEXLAB_MIN_GAP_RATIO', '1e3')),
    'KW_MAX_NEWTON': int(os.getenv('VORTEXLAB_KW_MAX_NEWTON', '60')),
    'KW_MAX_HALVINGS': int(os.getenv('VORTEXLAB_KW_MAX_HALVINGS', '30')),
    'KW_CG_RTOL': float(os.getenv('VORTEXLAB_KW_CG_RTOL', '1e-2')),
    'KW_CG_MAXITER': int(os.getenv('VORTEXLAB_KW_CG_MAXITER', '500')),
    'MASK_RADIUS_CELLS': int(os.getenv('VORTEXLAB_MASK_RADIUS_CELLS', '3')),
    'BALL_RADIUS': float(os.getenv('VORTEXLAB_BALL_RADIUS', '0.1')),
    'FLUX_RTOL': float(os.getenv('VORTEXLAB_FLUX_RTOL', '0.10')),
    'SWEEP_AMPLITUDE': float(os.getenv('VORTEXLAB_SWEEP_AMPLITUDE', '4.0')),
    'RECORD_RUNS': os.getenv('VORTEXLAB_RECORD_RUNS', 'False').lower() == 'true',
}

# Logging
LOG_LEVEL = os.getenv('VORTEXLAB_LOG_LEVEL', 'INFO').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'standard': {
            'format': '%(asctime)s - %(levelname)s - %(name)s - %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'standard',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in (
            'core',
            'runs',
            'torus_geometry',
            'quaternionic_algebra',
            'dolbeault',
            'kazdan_warner',
            'vortex_correspondence',
            'moduli_census',
            'limiting_configurations',
        )
    },
}
