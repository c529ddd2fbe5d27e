"""Pytest configuration for stg tests."""

from pathlib import Path

import pytest

from stg.config import DecoderConfig, EstimationConfig
from stg.services.corpus import load_corpus_file
from stg.services.training import train_model

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"
ANALYSES_TB = FIXTURES_DIR / "analyses.tb"
HEADS_TB = FIXTURES_DIR / "heads.tb"
HEAVY_NP_TB = FIXTURES_DIR / "heavy_np.tb"


@pytest.fixture(scope="session")
def analyses_corpus():
    """The bundled treebank of example analyses."""
    return load_corpus_file(ANALYSES_TB)


@pytest.fixture(scope="session")
def heads_corpus():
    return load_corpus_file(HEADS_TB)


@pytest.fixture(scope="session")
def heavy_corpus():
    return load_corpus_file(HEAVY_NP_TB)


@pytest.fixture(scope="session")
def analyses_model(analyses_corpus):
    """Model trained on the bundled treebank with default settings."""
    return train_model(analyses_corpus, EstimationConfig())


@pytest.fixture
def exact_config():
    """Decoder settings that make the fixture parses unique and the search exhaustive."""
    return DecoderConfig(beam_width=10_000, use_penalty=False)
