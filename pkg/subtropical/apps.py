from django.apps import AppConfig


class SubtropicalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'subtropical'
