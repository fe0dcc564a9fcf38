from django.apps import AppConfig


class SeesawConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'seesaw'
    verbose_name = 'Seesaw theta-lift computations'
