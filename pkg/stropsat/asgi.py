"""
ASGI config for the stropsat project.

Exposes the solver API (``/api/solve/``) as ``application``.
"""

import os

from django.core.asgi import get_asgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'stropsat.settings')

application = get_asgi_application()
