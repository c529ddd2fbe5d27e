from .categories import Category, FeatureTerm, FeatureVar, unify_category, unify_features
from .notation import (
    format_category,
    format_state,
    format_transition,
    parse_category,
    parse_state_notation,
    parse_transition,
)
from .parses import DEFAULT_ROOT, Parse, Violation, validate_parse
from .schema import alpha_generalize, derive_coordination, licenses, match_and_apply
from .states import TERMINAL, AnyState, StackEntry, State, StatePattern, Terminal, Transition, depth

__all__ = [
    "Category",
    "FeatureTerm",
    "FeatureVar",
    "unify_category",
    "unify_features",
    "format_category",
    "format_state",
    "format_transition",
    "parse_category",
    "parse_state_notation",
    "parse_transition",
    "DEFAULT_ROOT",
    "Parse",
    "Violation",
    "validate_parse",
    "alpha_generalize",
    "derive_coordination",
    "licenses",
    "match_and_apply",
    "TERMINAL",
    "AnyState",
    "StackEntry",
    "State",
    "StatePattern",
    "Terminal",
    "Transition",
    "depth",
]
