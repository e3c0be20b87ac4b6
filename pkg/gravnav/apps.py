from django.apps import AppConfig


class GravnavConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gravnav'
    verbose_name = "Gravity-gradient navigation"
