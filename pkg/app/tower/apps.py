from django.apps import AppConfig


class TowerConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'tower'
    verbose_name = 'dbfi interpretation towers'
