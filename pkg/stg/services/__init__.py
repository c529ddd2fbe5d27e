from .blending import TransitionModel, blended_distribution
from .corpus import (
    AnnotatedSentence,
    Corpus,
    TransitionEvent,
    extract_events,
    load_corpus,
    load_corpus_file,
    read_corpus,
    write_corpus,
)
from .decoder import DecoderService, exhaustive_oracle, n_best, score_parse, successors, viterbi
from .estimation import Distribution, estimate_mle, generalize_alpha, generalize_beta
from .evaluation import EvalResult, Verdict, evaluate, report
from .model_store import load_model, save_model
from .paradigms import Paradigm, build_paradigms
from .penalty import LengthPenalty, estimate_length_penalty
from .training import TrainingService, train_model
from .unknown import OrthoClass, classify_unknown, estimate_unknown_classes

__all__ = [
    "TransitionModel",
    "blended_distribution",
    "AnnotatedSentence",
    "Corpus",
    "TransitionEvent",
    "extract_events",
    "load_corpus",
    "load_corpus_file",
    "read_corpus",
    "write_corpus",
    "DecoderService",
    "exhaustive_oracle",
    "n_best",
    "score_parse",
    "successors",
    "viterbi",
    "Distribution",
    "estimate_mle",
    "generalize_alpha",
    "generalize_beta",
    "EvalResult",
    "Verdict",
    "evaluate",
    "report",
    "load_model",
    "save_model",
    "Paradigm",
    "build_paradigms",
    "LengthPenalty",
    "estimate_length_penalty",
    "TrainingService",
    "train_model",
    "OrthoClass",
    "classify_unknown",
    "estimate_unknown_classes",
]
