"""
WSGI config for the stropsat project.

Exposes the solver API (``/api/solve/``) as ``application``.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'stropsat.settings')

application = get_wsgi_application()
