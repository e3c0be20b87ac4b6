import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Только команды управления, без веб-части; ключ нужен Django при старте
SECRET_KEY = os.environ.get("SECRET_KEY", default="gravnav-simulator-insecure-key")

DEBUG = os.environ.get("DEBUG", default="") in ("1", "true", "True")

ALLOWED_HOSTS = [h.strip() for h in os.environ.get("ALLOWED_HOSTS", "").split(",") if h.strip()]

# Current DJANGO_ENVIRONMENT
ENVIRONMENT = os.environ.get("DJANGO_ENVIRONMENT", default="dev")

# Application definition

INSTALLED_APPS = [
    # local apps
    "gravnav",
]

# Базы данных нет: сценарии, карты и результаты - файлы
DATABASES = {}

TIME_ZONE = "UTC"
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Симулятор

GRAVNAV_OUTPUT_DIR = Path(os.environ.get("GRAVNAV_OUTPUT_DIR", default=BASE_DIR / "output"))
GRAVNAV_WORKERS = int(os.environ.get("GRAVNAV_WORKERS", default=1))
GRAVNAV_LOG_LEVEL = os.environ.get("GRAVNAV_LOG_LEVEL", default="INFO")
GRAVNAV_SLOW_TESTS = os.environ.get("GRAVNAV_SLOW_TESTS", default="") in ("1", "true", "True")
GRAVNAV_DEFAULT_SCENARIO = os.environ.get("GRAVNAV_DEFAULT_SCENARIO",
                                          default="scenarios/liverpool_toulouse.yaml")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "gravnav": {
            "handlers": ["console"],
            "level": GRAVNAV_LOG_LEVEL,
            "propagate": False,
        },
    },
}
