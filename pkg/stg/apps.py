"""Django app configuration for the stg app."""

import logging

from django.apps import AppConfig

logger = logging.getLogger(__name__)


class StgConfig(AppConfig):
    """Configuration for the state-transition grammar parser app."""

    name = "stg"
    verbose_name = "State-Transition Grammar"
