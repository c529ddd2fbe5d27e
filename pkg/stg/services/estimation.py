"""Maximum-likelihood transition tables and their α/β generalizations."""

import logging
from collections import Counter, defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from ..grammar import (
    Category,
    FeatureVar,
    StackEntry,
    StatePattern,
    Terminal,
    Transition,
    alpha_generalize,
    format_state,
)
from ..grammar.schema import subsumes
from .corpus import TransitionEvent

logger = logging.getLogger(__name__)

Probability = Union[Fraction, float]
BETA_VARIABLE = FeatureVar("b")


def transition_key(transition: Transition) -> Tuple[str, str]:
    return format_state(transition.source), format_state(transition.target)


class Distribution(Mapping):
    """An immutable map from transitions to probabilities.

    Probabilities are exact fractions for estimated tables and floats for
    blended ones. Iteration order is canonical (sorted by notation).
    """

    def __init__(self, entries: Mapping[Transition, Probability]):
        items = sorted(((t, p) for t, p in entries.items() if p > 0), key=lambda item: transition_key(item[0]))
        self._entries: Dict[Transition, Probability] = dict(items)

    @classmethod
    def from_counts(cls, counts: Mapping[Transition, Union[int, Fraction]]) -> "Distribution":
        total = sum(counts.values())
        return cls({t: Fraction(c) / total for t, c in counts.items()})

    def __getitem__(self, transition: Transition) -> Probability:
        return self._entries[transition]

    def __iter__(self) -> Iterator[Transition]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"Distribution({len(self)} transitions)"

    @property
    def total(self) -> Probability:
        return sum(self._entries.values())

    def scaled(self, weight: Probability) -> Dict[Transition, Probability]:
        return {t: weight * p for t, p in self._entries.items()}


Table = Dict[str, Distribution]


def lexeme_counts(events: Iterable[TransitionEvent]) -> Dict[str, int]:
    return dict(Counter(event.lexeme for event in events))


def estimate_mle(events: Iterable[TransitionEvent]) -> Table:
    """P(t | w) = count(w, t) / count(w) over concrete transitions."""
    counts: Dict[str, Counter] = defaultdict(Counter)
    for event in events:
        counts[event.lexeme][Transition.concrete(event.from_state, event.to_state)] += 1
    table = {lexeme: Distribution.from_counts(counter) for lexeme, counter in sorted(counts.items())}
    logger.info(f"Estimated word table for {len(table)} lexemes")
    return table


def _pool(table: Table, rewrite) -> Table:
    pooled: Table = {}
    for lexeme, distribution in table.items():
        mass: Dict[Transition, Probability] = defaultdict(Fraction)
        for transition, probability in distribution.items():
            mass[rewrite(transition)] += probability
        pooled[lexeme] = Distribution(mass)
    return pooled


def generalize_alpha(word_table: Table) -> Table:
    """Rewrite every concrete transition to its α-schema and pool per lexeme."""
    table = _pool(word_table, alpha_generalize)
    schemas = sum(len(d) for d in table.values())
    logger.info(f"Alpha generalization: {sum(len(d) for d in word_table.values())} transitions -> {schemas} schemas")
    return table


def _replace_features(category: Category, features) -> Category:
    return Category(category.base, features)


def _abstract_entries(
    entries: Tuple[StackEntry, ...], features
) -> Tuple[Tuple[StackEntry, ...], int]:
    """Replace every entry category carrying exactly ``features`` by ``?b``.

    Returns:
        The rewritten entries and the number of replacements
    """
    hits = 0
    rewritten = []
    for entry in entries:
        nested, nested_hits = _abstract_entries(entry.nested, features)
        category = entry.category
        if category.features == features:
            category = _replace_features(category, (BETA_VARIABLE,))
            hits += 1
        hits += nested_hits
        rewritten.append(StackEntry(category, nested))
    return tuple(rewritten), hits


def beta_abstraction(schema: Transition) -> Optional[Transition]:
    """Propose a β-schema for an α-schema.

    The from-category's feature list is abstracted when it is non-empty and
    reappears intact at exactly one category on the to-side.
    """
    source, target = schema.source, schema.target
    features = source.category.features
    if not features or source.has_variables or isinstance(target, Terminal):
        return None

    prefix, hits = _abstract_entries(target.prefix, features)
    category = target.category
    if category is not None and category.features == features:
        category = _replace_features(category, (BETA_VARIABLE,))
        hits += 1
    if hits != 1:
        return None

    abstract_source = StatePattern(
        _replace_features(source.category, (BETA_VARIABLE,)), source.prefix, source.open_tail
    )
    abstract_target = StatePattern(category, prefix, target.open_tail, target.pop)
    return Transition(abstract_source, abstract_target)


def _merge_lexeme(distribution: Distribution) -> Distribution:
    remaining: List[Transition] = list(distribution)
    merged: Dict[Transition, Probability] = defaultdict(Fraction)
    for schema in list(remaining):
        if schema not in remaining:
            continue
        abstraction = beta_abstraction(schema)
        if abstraction is None:
            continue
        group = [other for other in remaining if subsumes(abstraction, other)]
        if len(group) < 2:
            continue
        for member in group:
            remaining.remove(member)
            merged[abstraction] += distribution[member]
    for schema in remaining:
        merged[schema] += distribution[schema]
    return Distribution(merged)


def generalize_beta(alpha_table: Table) -> Table:
    """Merge schemas that differ only in a feature list passed through unchanged."""
    table = {lexeme: _merge_lexeme(distribution) for lexeme, distribution in alpha_table.items()}
    logger.info(
        f"Beta generalization: {sum(len(d) for d in alpha_table.values())} schemas "
        f"-> {sum(len(d) for d in table.values())}"
    )
    return table
