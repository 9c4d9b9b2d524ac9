"""
Cache de respuestas de la API (Django cache, LocMemCache por defecto)
"""
import hashlib
import json

from django.core.cache import cache

from scheduling.services import solver_settings


class ResponseCache:
    """Claves deterministas a partir del JSON canónico de la instancia"""

    @staticmethod
    def get_cache_key(prefix, payload, *params):
        canonical = json.dumps(payload, sort_keys=True, separators=(',', ':'))
        key_data = f"{prefix}:{canonical}:{':'.join(str(param) for param in params)}"
        return f"{prefix}:{hashlib.sha256(key_data.encode()).hexdigest()}"

    @staticmethod
    def get_timeout():
        return solver_settings()['API_CACHE_TIMEOUT']

    @classmethod
    def get(cls, key):
        return cache.get(key)

    @classmethod
    def set(cls, key, value):
        cache.set(key, value, cls.get_timeout())
