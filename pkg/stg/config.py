"""Validated settings for corpus loading, estimation and decoding.

Defaults live on the models; ``project.yaml`` (``stg:`` section) overrides
them and command-line flags override both.
"""

import logging
from typing import Any, Dict, Optional, Tuple

from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field, field_validator

logger = logging.getLogger(__name__)


class CorpusConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    root: str = Field(default="S", min_length=1, description="Category every sentence starts in")
    strict: bool = Field(default=True, description="Reject a treebank with any invalid analysis instead of skipping it")


class EstimationConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    weights: Tuple[float, float, float, float] = Field(
        default=(0.4, 0.2, 0.2, 0.2),
        description="Blend weights for word, alpha, beta and paradigm distributions",
    )
    k: float = Field(default=1.0, ge=0.0, description="Count constant damping the word weight")
    tau: float = Field(default=0.25, ge=0.0, description="Paradigm merge threshold (Jensen-Shannon, bits)")
    penalty_slack: int = Field(default=2, ge=0, description="Depths smoothed beyond the deepest observed state")

    @field_validator("weights")
    @classmethod
    def check_weights(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(w < 0 for w in value):
            raise ValueError("blend weights must be non-negative")
        if abs(sum(value) - 1.0) > 1e-9:
            raise ValueError(f"blend weights must sum to 1, got {sum(value)}")
        return value


class DecoderConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    beam_width: int = Field(default=256, ge=1)
    max_depth: int = Field(default=8, ge=1)
    n_best: int = Field(default=1, ge=1)
    use_penalty: bool = True
    node_budget: int = Field(default=1_000_000, ge=1, description="Expansion limit of the exhaustive oracle")
    workers: int = Field(default=1, ge=1)


class StgSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    corpus: CorpusConfig = CorpusConfig()
    estimation: EstimationConfig = EstimationConfig()
    decoder: DecoderConfig = DecoderConfig()


def get_stg_settings(overrides: Optional[Dict[str, Any]] = None) -> StgSettings:
    """Build the settings from ``settings.STG`` plus per-section overrides.

    Args:
        overrides: ``{"decoder": {"beam_width": 16}, ...}``; None values are ignored

    Raises:
        pydantic.ValidationError: If a value violates its section's constraints
    """
    configured = getattr(settings, "STG", None) or {}
    sections: Dict[str, Dict[str, Any]] = {}
    for name in ("corpus", "estimation", "decoder"):
        section = dict(configured.get(name) or {})
        section.update({k: v for k, v in ((overrides or {}).get(name) or {}).items() if v is not None})
        sections[name] = section
    stg_settings = StgSettings(**sections)
    logger.debug(f"Resolved stg settings: {stg_settings.model_dump()}")
    return stg_settings
