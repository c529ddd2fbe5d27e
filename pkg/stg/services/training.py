"""End-to-end estimation: treebank in, TransitionModel out."""

import logging
from typing import Optional

from ..config import EstimationConfig
from ..grammar import DEFAULT_ROOT, Category
from .blending import TransitionModel
from .corpus import Corpus, extract_events
from .estimation import estimate_mle, generalize_alpha, generalize_beta, lexeme_counts
from .paradigms import build_paradigms
from .penalty import estimate_length_penalty
from .unknown import estimate_unknown_classes

logger = logging.getLogger(__name__)


class TrainingService:
    """Runs the estimation pipeline with one set of estimation settings."""

    def __init__(self, config: Optional[EstimationConfig] = None, root: Category = DEFAULT_ROOT):
        self.config = config or EstimationConfig()
        self.root = root

    def train(self, corpus: Corpus) -> TransitionModel:
        if not len(corpus):
            raise ValueError("Cannot train on an empty corpus")
        events = extract_events(corpus)
        counts = lexeme_counts(events)
        word = estimate_mle(events)
        alpha = generalize_alpha(word)
        beta = generalize_beta(alpha)
        paradigms = build_paradigms(beta, counts, self.config.tau)
        unknown = estimate_unknown_classes(corpus, beta, paradigms)
        penalty = estimate_length_penalty(corpus, self.config.penalty_slack)

        model = TransitionModel(
            counts=counts,
            word=word,
            alpha=alpha,
            beta=beta,
            paradigms=tuple(paradigms),
            unknown=unknown,
            penalty=penalty,
            weights=tuple(self.config.weights),
            k=self.config.k,
            tau=self.config.tau,
            root=self.root,
        )
        logger.info(
            f"Trained model on {corpus.token_count} tokens: {len(counts)} lexemes, "
            f"{len(paradigms)} paradigms, {len(unknown)} unknown-word classes"
        )
        return model


def train_model(
    corpus: Corpus, config: Optional[EstimationConfig] = None, root: Category = DEFAULT_ROOT
) -> TransitionModel:
    return TrainingService(config, root).train(corpus)
