from django.apps import AppConfig


class SmtlibConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'smtlib'
    verbose_name = 'SMT-LIB frontend'
