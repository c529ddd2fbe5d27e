"""Orthographic classes for unknown words and their transition distributions."""

import enum
import logging
import re
from collections import defaultdict
from typing import Dict, List

from .corpus import Corpus, extract_events
from .estimation import Distribution, Table, lexeme_counts
from .paradigms import Paradigm, pooled_distribution

logger = logging.getLogger(__name__)

_NUMERIC = re.compile(r"^\d+([.,]\d+)*$")
_INFLECTIONS = ("s", "ed", "ing", "ly")


class OrthoClass(str, enum.Enum):
    CAPITALIZED = "CAPITALIZED"
    ALL_CAPS = "ALL_CAPS"
    NUMERIC = "NUMERIC"
    CONTAINS_DIGIT = "CONTAINS_DIGIT"
    HYPHENATED = "HYPHENATED"
    SUFFIX_INFLECTED = "SUFFIX_INFLECTED"
    OTHER = "OTHER"


def classify_unknown(surface: str) -> OrthoClass:
    """Assign a surface form to its orthographic class.

    Checks run in declaration order; the first that fits wins. A word is
    ALL_CAPS only with at least two characters, so ``I`` is CAPITALIZED.
    """
    if not surface:
        raise ValueError("Cannot classify an empty surface")
    all_caps = len(surface) > 1 and surface.isupper()
    if surface[0].isupper() and not all_caps:
        return OrthoClass.CAPITALIZED
    if all_caps:
        return OrthoClass.ALL_CAPS
    if _NUMERIC.match(surface):
        return OrthoClass.NUMERIC
    if any(ch.isdigit() for ch in surface):
        return OrthoClass.CONTAINS_DIGIT
    if "-" in surface.strip("-"):
        return OrthoClass.HYPHENATED
    if surface.lower().endswith(_INFLECTIONS):
        return OrthoClass.SUFFIX_INFLECTED
    return OrthoClass.OTHER


def estimate_unknown_classes(
    corpus: Corpus, beta_table: Table, paradigms: List[Paradigm]
) -> Dict[OrthoClass, Distribution]:
    """Pool the β-distributions of hapax legomena by orthographic class.

    Only hapaxes in open-class paradigms count. A class without hapaxes gets
    the count-weighted mixture of every open-class lexeme; with no open-class
    lexemes at all the table is empty.
    """
    events = extract_events(corpus)
    counts = lexeme_counts(events)
    open_members = sorted(m for p in paradigms if p.open_class for m in p.members if m in beta_table)
    if not open_members:
        logger.warning("No open-class paradigms; unknown words will have no transition data")
        return {}

    hapaxes: Dict[OrthoClass, List[str]] = defaultdict(list)
    for event in events:
        if counts[event.lexeme] == 1 and event.lexeme in open_members:
            hapaxes[classify_unknown(event.surface)].append(event.lexeme)

    fallback = pooled_distribution(beta_table, counts, open_members)
    table: Dict[OrthoClass, Distribution] = {}
    for ortho_class in OrthoClass:
        members = hapaxes.get(ortho_class)
        table[ortho_class] = pooled_distribution(beta_table, counts, members) if members else fallback
        logger.debug(f"Unknown class {ortho_class.value}: {len(members or [])} hapaxes")
    return table
