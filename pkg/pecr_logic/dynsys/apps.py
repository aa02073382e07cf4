from django.apps import AppConfig


class DynsysConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'pecr_logic.dynsys'
