import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'dbfi_toolkit.settings')

# fuzz workers; CELERY_* settings decide between eager runs and a redis broker
app = Celery('dbfi_toolkit')
app.config_from_object('django.conf:settings', namespace='CELERY')

# registers conformance.tasks.diff_case
app.autodiscover_tasks()
