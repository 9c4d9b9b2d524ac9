from django.apps import AppConfig


class SolverApiConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'solver_api'
    verbose_name = 'API de solvers'
