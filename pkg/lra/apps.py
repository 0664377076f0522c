from django.apps import AppConfig


class LraConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'lra'
    verbose_name = 'Linear real arithmetic'
