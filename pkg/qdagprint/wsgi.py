"""
WSGI entry point for the qdagprint lookup service.

Served by gunicorn in deployment: ``gunicorn qdagprint.wsgi``.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'qdagprint.settings')

application = get_wsgi_application()
