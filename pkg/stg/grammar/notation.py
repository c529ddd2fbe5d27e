"""Surface notation for states, patterns and transitions.

Grammar (whitespace is free between tokens)::

    state    := category '[' entries? ']' | '*' '[' entries? ']' | '<end>'
    entries  := item (',' item)*
    item     := entry | '*'
    entry    := category ('[' entries? ']')?
    category := IDENT ('(' feat (',' feat)* ')')?
    feat     := IDENT ('(' feat (',' feat)* ')')? | '?' IDENT

The canonical writer puts one space between a category and its '[', ', '
between stack entries and renders an empty stack as '[ ]'.
"""

from __future__ import annotations

import functools
from typing import Tuple, Union

import pyparsing as pp

from ..exceptions import NotationError
from .categories import Category, Feature, FeatureTerm, FeatureVar
from .states import TERMINAL, AnyState, StackEntry, State, StatePattern, Terminal, Transition


class _Marker:
    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return self.name


_TAIL = _Marker("tail")
_POP = _Marker("pop")


class _Stack:
    def __init__(self, items) -> None:
        self.items = tuple(items)


def _make_term(s, loc, tokens):
    try:
        return FeatureTerm(tokens[0], tuple(tokens[1:]))
    except ValueError as e:
        raise pp.ParseFatalException(s, loc, str(e))


def _make_category(s, loc, tokens):
    try:
        return Category(tokens[0], tuple(tokens[1:]))
    except ValueError as e:
        raise pp.ParseFatalException(s, loc, str(e))


def _make_entry(s, loc, tokens):
    nested = tokens[1].items if len(tokens) > 1 else ()
    if any(item is _TAIL for item in nested):
        raise pp.ParseFatalException(s, loc, "'*' may only end the main stack")
    return StackEntry(tokens[0], nested)


_LPAR, _RPAR, _LBRK, _RBRK = map(pp.Suppress, "()[]")
_IDENT = pp.Word(pp.alphanums + "_+-'")
_VARIABLE = pp.Regex(r"\?[A-Za-z0-9_+\-']+").set_parse_action(lambda t: FeatureVar(t[0][1:]))

_FEATURE = pp.Forward()
_TERM = (_IDENT + pp.Optional(_LPAR + pp.DelimitedList(_FEATURE) + _RPAR)).set_parse_action(_make_term)
_FEATURE <<= _VARIABLE | _TERM
_CATEGORY = (_IDENT + pp.Optional(_LPAR + pp.DelimitedList(_FEATURE) + _RPAR)).set_parse_action(_make_category)

_ENTRY = pp.Forward()
_TAIL_ITEM = pp.Literal("*").set_parse_action(lambda: _TAIL)
_STACK = (_LBRK + pp.Optional(pp.DelimitedList(_TAIL_ITEM | _ENTRY)) + _RBRK).set_parse_action(
    lambda t: _Stack(t)
)
_ENTRY <<= (_CATEGORY + pp.Optional(_STACK)).set_parse_action(_make_entry)

_POP_HEAD = pp.Literal("*").set_parse_action(lambda: _POP)
_TERMINAL = pp.Literal("<end>").set_parse_action(lambda: TERMINAL)
_STATE = _TERMINAL | ((_POP_HEAD | _CATEGORY) + _STACK)


def parse_state_notation(text: str, schema: bool = False) -> Union[AnyState, StatePattern]:
    """Parse a state written in the vertical-corpus notation.

    Args:
        text: The notation, e.g. ``"NP(t) [N(+) [NP(t)]]"``
        schema: Accept feature variables, the stack variable ``*`` and pop
            heads. Schema-mode parses always return a StatePattern (or
            Terminal); concrete-mode parses return a State (or Terminal).

    Raises:
        NotationError: On a syntax error, or a variable in concrete mode
    """
    try:
        tokens = _STATE.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise NotationError(f"Invalid state notation {text!r}: {e.msg}", position=e.loc) from e

    head = tokens[0]
    if isinstance(head, Terminal):
        return TERMINAL

    items = tokens[1].items
    if any(item is _TAIL for item in items[:-1]):
        raise NotationError(f"'*' must be the last stack element in {text!r}", position=text.find("*"))
    open_tail = bool(items) and items[-1] is _TAIL
    entries = tuple(item for item in items if item is not _TAIL)

    if head is _POP:
        if open_tail:
            raise NotationError(f"A pop head already ends in '*': {text!r}", position=text.rfind("*"))
        pattern = StatePattern(None, entries, open_tail=True, pop=True)
    else:
        pattern = StatePattern(head, entries, open_tail=open_tail)

    if schema:
        return pattern
    if not pattern.is_concrete:
        marker = min((i for i in (text.find("*"), text.find("?")) if i >= 0), default=0)
        raise NotationError(f"Variables are not allowed in a concrete state: {text!r}", position=marker)
    return pattern.to_state()


def parse_category(text: str) -> Category:
    """Parse a bare category such as ``S`` or ``S(rel,np(dog))``."""
    try:
        return _CATEGORY.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise NotationError(f"Invalid category {text!r}: {e.msg}", position=e.loc) from e


def parse_transition(source: str, target: str) -> Transition:
    """Build a transition from its two written halves."""
    src = parse_state_notation(source, schema=True)
    if isinstance(src, Terminal):
        raise NotationError("A transition cannot start at <end>", position=0)
    tgt = parse_state_notation(target, schema=True)
    try:
        return Transition(src, tgt)
    except ValueError as e:
        raise NotationError(f"Invalid transition {source} -> {target}: {e}", position=0) from e


def _format_feature(feature: Feature) -> str:
    if isinstance(feature, FeatureVar):
        return f"?{feature.name}"
    if not feature.args:
        return feature.functor
    return f"{feature.functor}({','.join(_format_feature(arg) for arg in feature.args)})"


def format_category(category: Category) -> str:
    if not category.features:
        return category.base
    return f"{category.base}({','.join(_format_feature(f) for f in category.features)})"


def _format_entry(entry: StackEntry) -> str:
    if not entry.nested:
        return format_category(entry.category)
    return f"{format_category(entry.category)} [{', '.join(_format_entry(e) for e in entry.nested)}]"


def _format_stack(items: Tuple[str, ...]) -> str:
    return f"[{', '.join(items)}]" if items else "[ ]"


@functools.lru_cache(maxsize=65536)
def format_state(state: Union[AnyState, StatePattern]) -> str:
    """Canonical rendering of a state, pattern or Terminal (``<end>``)."""
    if isinstance(state, Terminal):
        return "<end>"
    if isinstance(state, State):
        return f"{format_category(state.category)} {_format_stack(tuple(_format_entry(e) for e in state.stack))}"
    items = tuple(_format_entry(e) for e in state.prefix)
    if state.pop:
        return f"* {_format_stack(items)}"
    if state.open_tail:
        items += ("*",)
    return f"{format_category(state.category)} {_format_stack(items)}"


def format_transition(transition: Transition) -> str:
    return f"{format_state(transition.source)} -> {format_state(transition.target)}"
