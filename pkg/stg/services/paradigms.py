"""Word paradigms: clusters of lexemes with similar transition distributions."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy.spatial.distance import jensenshannon

from .estimation import Distribution, Table, transition_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Paradigm:
    name: str
    members: Tuple[str, ...]
    distribution: Distribution
    open_class: bool = False

    def __contains__(self, lexeme: str) -> bool:
        return lexeme in self.members


def pooled_distribution(table: Table, counts: Mapping[str, int], members) -> Distribution:
    """Count-weighted mixture of the members' distributions."""
    mass: Dict = defaultdict(Fraction)
    total = sum(counts[m] for m in members)
    for member in members:
        for transition, probability in table[member].items():
            mass[transition] += Fraction(counts[member], total) * probability
    return Distribution(mass)


def js_divergence(p: Distribution, q: Distribution) -> float:
    """Jensen-Shannon divergence in bits (0 for identical distributions, at most 1)."""
    support = sorted(set(p) | set(q), key=transition_key)
    pv = np.array([float(p.get(t, 0)) for t in support])
    qv = np.array([float(q.get(t, 0)) for t in support])
    distance = jensenshannon(pv, qv, base=2)
    if np.isnan(distance):
        return 0.0
    return float(np.square(distance))


def build_paradigms(beta_table: Table, counts: Mapping[str, int], tau: float) -> List[Paradigm]:
    """Greedy agglomerative clustering of lexemes by Jensen-Shannon divergence.

    At each step the closest pair of clusters (ties broken on their sorted
    member lists) is merged as long as its divergence is at most ``tau``.
    Clusters are compared through their count-pooled distributions.

    Args:
        beta_table: Per-lexeme schema distributions
        counts: Token count per lexeme
        tau: Merge threshold, in bits

    Returns:
        Paradigms named ``P000``, ``P001``, ... in order of their first member
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")

    clusters: Dict[Tuple[str, ...], Distribution] = {
        (lexeme,): distribution for lexeme, distribution in sorted(beta_table.items())
    }
    divergences: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], float] = {}

    def pair_divergence(a, b) -> float:
        key = (a, b) if a < b else (b, a)
        if key not in divergences:
            divergences[key] = js_divergence(clusters[a], clusters[b])
        return divergences[key]

    while len(clusters) > 1:
        keys = sorted(clusters)
        best: Optional[Tuple[float, Tuple[str, ...], Tuple[str, ...]]] = None
        for i, a in enumerate(keys):
            for b in keys[i + 1 :]:
                candidate = (pair_divergence(a, b), a, b)
                if best is None or candidate < best:
                    best = candidate
        divergence, a, b = best
        if divergence > tau + 1e-12:
            break
        merged = tuple(sorted(a + b))
        del clusters[a], clusters[b]
        divergences = {k: v for k, v in divergences.items() if a not in k and b not in k}
        clusters[merged] = pooled_distribution(beta_table, counts, merged)
        logger.debug(f"Merged {a} and {b} at divergence {divergence:.4f}")

    paradigms = [
        Paradigm(
            name=f"P{index:03d}",
            members=members,
            distribution=distribution,
            open_class=any(counts[m] == 1 for m in members),
        )
        for index, (members, distribution) in enumerate(sorted(clusters.items()))
    ]
    logger.info(f"Built {len(paradigms)} paradigms from {len(beta_table)} lexemes (tau={tau})")
    return paradigms


def paradigm_index(paradigms: List[Paradigm]) -> Dict[str, Paradigm]:
    return {member: paradigm for paradigm in paradigms for member in paradigm.members}
