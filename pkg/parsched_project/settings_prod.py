"""
Configuración específica para producción
"""
from .settings import *
import os
import dj_database_url
from decouple import config

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=False, cast=bool)

# Hosts permitidos
ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='').split(',')

# Base de datos (los BenchRecord se guardan aquí)
if 'DATABASE_URL' in os.environ:
    DATABASES = {
        'default': dj_database_url.parse(os.environ.get('DATABASE_URL'))
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': config('DB_NAME', default='parsched_prod'),
            'USER': config('DB_USER', default='postgres'),
            'PASSWORD': config('DB_PASSWORD', default=''),
            'HOST': config('DB_HOST', default='localhost'),
            'PORT': config('DB_PORT', default='5432'),
        }
    }

# La API cachea más tiempo en producción
SOLVER_SETTINGS['API_CACHE_TIMEOUT'] = config('API_CACHE_TIMEOUT', default=900, cast=int)

# Presupuesto del oráculo por petición
SOLVER_SETTINGS['ORACLE_BUDGET'] = config('PARSCHED_BUDGET', default=10**7, cast=int)
SOLVER_SETTINGS['SLOW_SOLVE_SECONDS'] = config('PARSCHED_SLOW_SOLVE_SECONDS', default=5.0, cast=float)

# Cache compartida entre workers de gunicorn
if config('PARSCHED_SHARED_CACHE', default=False, cast=bool):
    CACHES = {
        'default': {
            'BACKEND': 'django.core.cache.backends.db.DatabaseCache',
            'LOCATION': 'parsched_api_cache',  # manage.py createcachetable
            'TIMEOUT': SOLVER_SETTINGS['API_CACHE_TIMEOUT'],
        }
    }

# Archivos estáticos del admin
STATIC_URL = '/static/'
STATIC_ROOT = os.path.join(BASE_DIR, 'staticfiles')

# Usar WhiteNoise para servir archivos estáticos
MIDDLEWARE.insert(1, 'whitenoise.middleware.WhiteNoiseMiddleware')
STORAGES = {
    'default': {'BACKEND': 'django.core.files.storage.FileSystemStorage'},
    'staticfiles': {'BACKEND': 'whitenoise.storage.CompressedManifestStaticFilesStorage'},
}

# Configuración de seguridad
SECURE_CONTENT_TYPE_NOSNIFF = True
X_FRAME_OPTIONS = 'DENY'

# Si se usa HTTPS en producción
if config('USE_HTTPS', default=False, cast=bool):
    SECURE_SSL_REDIRECT = True
    SESSION_COOKIE_SECURE = True
    CSRF_COOKIE_SECURE = True
    SECURE_HSTS_SECONDS = 31536000
    SECURE_HSTS_INCLUDE_SUBDOMAINS = True

# Logging para producción
LOGGING['handlers']['console']['formatter'] = 'verbose'
LOGGING['root'] = {
    'handlers': ['console'],
    'level': 'INFO',
}
LOGGING['loggers']['django'] = {
    'handlers': ['console'],
    'level': 'INFO',
    'propagate': False,
}
