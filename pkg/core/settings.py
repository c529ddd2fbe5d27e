"""Django settings for core project."""

import os
from pathlib import Path

from core.config import get_project_config
from core.configs.logging import LOGGING  # noqa: F401
from core.configs.security import SECRET_KEY  # noqa: F401

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

project_config = get_project_config()

DEBUG = os.getenv("DJANGO_DEBUG", "False").lower() == "true"
ALLOWED_HOSTS = os.getenv("DJANGO_ALLOWED_HOSTS", "localhost,127.0.0.1").split(",")

# Application definition
INSTALLED_APPS = [
    "core.apps.CoreConfig",
    "stg.apps.StgConfig",
]

# The parser keeps no database state; models live in plain files.
DATABASES = {}

# Parser defaults, validated by stg.config.get_stg_settings
STG = project_config.get("stg", {})

LANGUAGE_CODE = "en-us"
USE_TZ = True
