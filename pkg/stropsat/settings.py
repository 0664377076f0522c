from pathlib import Path
import os

from django.core.exceptions import ImproperlyConfigured
from django.core.management.utils import get_random_secret_key
from dotenv import load_dotenv
# =========================
# Base directory & ENV load
# =========================

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")


# =========================
# Core security settings
# =========================

SECRET_KEY = os.getenv("SECRET_KEY")
DEBUG = os.getenv("DEBUG", "True") == "True"

if not SECRET_KEY:
    if not DEBUG:
        raise ImproperlyConfigured("SECRET_KEY must be set when DEBUG is off.")
    # throwaway key for local runs; sessions do not survive a restart
    SECRET_KEY = get_random_secret_key()

ALLOWED_HOSTS = [
    "127.0.0.1",
    "localhost",
]


# =========================
# Application definition
# =========================

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    # Third-party
    "rest_framework",
    # Local apps
    "polynomials",
    "lra",
    "encoding",
    "engine",
    "subtropical",
    "smtlib",
    "runs",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "stropsat.urls"


# =========================
# DRF
# =========================

REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": (
        "rest_framework.authentication.SessionAuthentication",
    ),
    "DEFAULT_PERMISSION_CLASSES": (
        "rest_framework.permissions.IsAuthenticated",
    ),
}


# =========================
# Templates
# =========================

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

WSGI_APPLICATION = "stropsat.wsgi.application"


# =========================
# Database (SQLite by default, PostgreSQL from .env)
# =========================

if os.getenv("DB_ENGINE", "sqlite") == "postgresql":
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.postgresql",
            "NAME": os.getenv("DB_NAME", "stropsat_db"),
            "USER": os.getenv("DB_USER", "stropsat"),
            "PASSWORD": os.getenv("DB_PASSWORD", ""),
            "HOST": os.getenv("DB_HOST", "localhost"),
            "PORT": os.getenv("DB_PORT", "5432"),
        }
    }
else:
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.sqlite3",
            "NAME": os.getenv("DB_NAME", str(BASE_DIR / "stropsat.sqlite3")),
        }
    }


# =========================
# Localization
# =========================

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True


# =========================
# Static files
# =========================

STATIC_URL = "static/"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# =========================
# Logging (stderr only; stdout carries verdicts)
# =========================

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["stderr"],
        "level": os.getenv("STROPSAT_LOG_LEVEL", "WARNING"),
    },
}


# =========================
# Solver configuration
# =========================

STROPSAT_MAX_SQUARINGS = int(os.getenv("STROPSAT_MAX_SQUARINGS", "32"))
STROPSAT_TIMEOUT_MS = int(os.getenv("STROPSAT_TIMEOUT_MS")) if os.getenv("STROPSAT_TIMEOUT_MS") else None
STROPSAT_SEED = int(os.getenv("STROPSAT_SEED", "0"))
STROPSAT_ORTHANT = os.getenv("STROPSAT_ORTHANT", "all")  # all | positive
STROPSAT_STRATEGY = os.getenv("STROPSAT_STRATEGY", "dpll")  # dpll | enumerate
STROPSAT_ROOT_WIDTH = os.getenv("STROPSAT_ROOT_WIDTH", "1/1048576")
STROPSAT_BATCH_JOBS = int(os.getenv("STROPSAT_BATCH_JOBS", "1"))
