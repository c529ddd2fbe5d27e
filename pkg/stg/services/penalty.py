"""State-length penalty estimated from the depth histogram of a corpus."""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

from ..grammar import depth
from .corpus import Corpus

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 2


@dataclass(frozen=True)
class LengthPenalty:
    """Multiplicative factors by state depth; ``factors[0]`` is 1.

    Depths past the table continue geometrically with the ratio of the last
    two factors.
    """

    factors: Tuple[float, ...] = (1.0,)

    def __post_init__(self) -> None:
        if not self.factors or self.factors[0] != 1.0:
            raise ValueError("penalty(0) must be 1")
        if any(f <= 0 or f > 1 for f in self.factors):
            raise ValueError("penalty factors must lie in (0, 1]")
        if any(b > a for a, b in zip(self.factors, self.factors[1:])):
            raise ValueError("penalty factors must be non-increasing")

    @property
    def ratio(self) -> float:
        if len(self.factors) < 2:
            return 1.0
        return self.factors[-1] / self.factors[-2]

    def __call__(self, d: int) -> float:
        last = len(self.factors) - 1
        if d <= last:
            return self.factors[d]
        return self.factors[-1] * self.ratio ** (d - last)

    def log(self, d: int) -> float:
        return math.log(self(d))


def monotone_factors(values: Iterable[Fraction]) -> Tuple[float, ...]:
    factors = []
    for value in values:
        value = min(Fraction(1), value)
        if factors:
            value = min(value, factors[-1])
        factors.append(value)
    return tuple(float(f) for f in factors)


def estimate_length_penalty(corpus: Corpus, slack: int = DEFAULT_SLACK) -> LengthPenalty:
    """Penalty(d) = f(d) / f(0), clamped to be non-increasing.

    f is the add-one smoothed relative frequency of token states by depth,
    over depths 0 .. max observed + ``slack``.
    """
    histogram = Counter(depth(state) for sentence in corpus for state in sentence.states)
    if not histogram:
        raise ValueError("Cannot estimate a length penalty from an empty corpus")
    size = max(histogram) + slack + 1
    total = sum(histogram.values()) + size
    frequencies = [Fraction(histogram[d] + 1, total) for d in range(size)]
    penalty = LengthPenalty(monotone_factors(f / frequencies[0] for f in frequencies))
    logger.info(f"Length penalty over depths 0..{size - 1}: {', '.join(f'{f:.4f}' for f in penalty.factors)}")
    return penalty
