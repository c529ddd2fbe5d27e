"""The trained model and the blended per-word distributions the decoder uses."""

import logging
import threading
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from ..exceptions import NoTransitionDataError
from ..grammar import DEFAULT_ROOT, Category, Transition
from .corpus import normalize_lexeme
from .estimation import Distribution, Table
from .paradigms import Paradigm, paradigm_index, pooled_distribution
from .penalty import LengthPenalty
from .unknown import OrthoClass, classify_unknown

logger = logging.getLogger(__name__)

DEFAULT_WEIGHTS = (0.4, 0.2, 0.2, 0.2)

# lexeme for known words, orthographic class for unknown ones
CacheKey = Union[str, OrthoClass]


@dataclass(frozen=True, eq=False)
class TransitionModel:
    """Everything estimated from a treebank.

    ``weights`` are the blend weights for the word, α, β and paradigm
    distributions; ``k`` damps the word weight for rare words as c / (c + k).
    """

    counts: Mapping[str, int]
    word: Table
    alpha: Table
    beta: Table
    paradigms: Tuple[Paradigm, ...]
    unknown: Mapping[OrthoClass, Distribution]
    penalty: LengthPenalty
    weights: Tuple[float, float, float, float] = DEFAULT_WEIGHTS
    k: float = 1.0
    tau: float = 0.25
    root: Category = DEFAULT_ROOT
    removed: FrozenSet[str] = frozenset()
    _cache: Dict[CacheKey, Distribution] = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_paradigm_of", paradigm_index(list(self.paradigms)))

    def knows(self, surface: str) -> bool:
        return normalize_lexeme(surface) in self.counts

    def paradigm_of(self, lexeme: str) -> Optional[Paradigm]:
        return self._paradigm_of.get(lexeme)

    def component_weights(self, count: int) -> Tuple[float, float, float, float]:
        """Effective weights for a word seen ``count`` times."""
        lw, la, lb, lp = self.weights
        word = lw * count / (count + self.k) if count + self.k > 0 else lw
        others = la + lb + lp
        if others <= 0:
            return (1.0, 0.0, 0.0, 0.0)
        rest = (1.0 - word) / others
        return (word, la * rest, lb * rest, lp * rest)

    def blended_distribution(self, surface: str) -> Distribution:
        """Distribution over transitions and schemas for a surface form.

        Raises:
            NoTransitionDataError: For an unknown word whose class has no data
        """
        lexeme = normalize_lexeme(surface)
        if lexeme in self.removed:
            raise NoTransitionDataError(surface, f"transitions for {lexeme!r} were removed from the model")
        key: CacheKey = lexeme if lexeme in self.counts else classify_unknown(surface)

        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        if isinstance(key, OrthoClass):
            known = self.unknown.get(key)
            if known is None:
                raise NoTransitionDataError(surface, f"no transition data for unknown word {surface!r}")
            logger.debug(f"Unknown word {surface!r} uses class {key.value}")
            distribution = Distribution({t: float(p) for t, p in known.items()})
        else:
            distribution = self._blend_known(lexeme)

        with self._lock:
            self._cache[key] = distribution
        return distribution

    def _blend_known(self, lexeme: str) -> Distribution:
        weights = self.component_weights(self.counts[lexeme])
        paradigm = self.paradigm_of(lexeme)
        components: List[Optional[Distribution]] = [
            self.word.get(lexeme),
            self.alpha.get(lexeme),
            self.beta.get(lexeme),
            paradigm.distribution if paradigm else None,
        ]
        mass: Dict[Transition, float] = {}
        for weight, component in zip(weights, components):
            if weight <= 0 or component is None:
                continue
            for transition, probability in component.items():
                mass[transition] = mass.get(transition, 0.0) + weight * float(probability)
        return Distribution(mass)

    def without_lexeme(self, lexeme: str) -> "TransitionModel":
        """A copy in which ``lexeme`` has no transitions at all.

        The word is dropped from every table and paradigm and is not treated
        as an unknown word either.
        """
        lexeme = normalize_lexeme(lexeme)
        paradigms = []
        for paradigm in self.paradigms:
            if lexeme not in paradigm:
                paradigms.append(paradigm)
                continue
            members = tuple(m for m in paradigm.members if m != lexeme)
            if members:
                paradigms.append(
                    Paradigm(
                        paradigm.name,
                        members,
                        pooled_distribution(self.beta, self.counts, members),
                        any(self.counts[m] == 1 for m in members),
                    )
                )
        return replace(
            self,
            counts={w: c for w, c in self.counts.items() if w != lexeme},
            word={w: d for w, d in self.word.items() if w != lexeme},
            alpha={w: d for w, d in self.alpha.items() if w != lexeme},
            beta={w: d for w, d in self.beta.items() if w != lexeme},
            paradigms=tuple(paradigms),
            removed=self.removed | {lexeme},
        )


def blended_distribution(model: TransitionModel, surface: str) -> Distribution:
    return model.blended_distribution(surface)
