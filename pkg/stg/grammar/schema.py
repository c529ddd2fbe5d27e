"""Applying schemas to states, licensing concrete steps, and deriving
generalized and coordinated schemas from concrete transitions."""

from __future__ import annotations

import logging
from typing import Optional, Tuple

from ..exceptions import CoordinationError
from .categories import Bindings, unify_category, substitute_category
from .states import (
    TERMINAL,
    AnyState,
    StackEntry,
    State,
    StatePattern,
    Terminal,
    Transition,
)

logger = logging.getLogger(__name__)


def _unify_entry(pattern: StackEntry, concrete: StackEntry, bindings: Bindings) -> Optional[Bindings]:
    bindings = unify_category(pattern.category, concrete.category, bindings)
    if bindings is None or len(pattern.nested) != len(concrete.nested):
        return None
    for p, c in zip(pattern.nested, concrete.nested):
        bindings = _unify_entry(p, c, bindings)
        if bindings is None:
            return None
    return bindings


def _substitute_entry(entry: StackEntry, bindings: Bindings) -> StackEntry:
    if not entry.has_variables:
        return entry
    return StackEntry(
        substitute_category(entry.category, bindings),
        tuple(_substitute_entry(e, bindings) for e in entry.nested),
    )


def _bind_source(source: StatePattern, current: State) -> Optional[Tuple[Bindings, Tuple[StackEntry, ...]]]:
    """Unify a from-pattern with a concrete state.

    Returns:
        The feature bindings and the stack suffix bound to α, or None
    """
    bindings = unify_category(source.category, current.category, {})
    if bindings is None:
        return None
    size = len(source.prefix)
    if len(current.stack) < size or (not source.open_tail and len(current.stack) != size):
        return None
    for p, c in zip(source.prefix, current.stack):
        bindings = _unify_entry(p, c, bindings)
        if bindings is None:
            return None
    return bindings, current.stack[size:]


def match_and_apply(schema: Transition, current: State) -> Optional[AnyState]:
    """Apply a schema (or a concrete transition) to a concrete state.

    Push targets ``Y[δ·α]`` yield ``Y[δ ++ α]``. Pop targets ``α[δ]`` take the
    first entry ``(C, σ)`` off α and yield ``C[δ ++ σ ++ rest]``; with nothing
    on α they yield Terminal when δ is empty.

    Returns:
        The successor state, or None when the schema does not apply
    """
    if isinstance(current, Terminal):
        return None
    bound = _bind_source(schema.source, current)
    if bound is None:
        return None
    bindings, alpha = bound

    target = schema.target
    if isinstance(target, Terminal):
        return TERMINAL if not alpha else None

    delta = tuple(_substitute_entry(e, bindings) for e in target.prefix)
    if target.pop:
        if not alpha:
            return TERMINAL if not delta else None
        head, rest = alpha[0], alpha[1:]
        return State(head.category, delta + head.nested + rest)

    tail = alpha if target.open_tail else ()
    return State(substitute_category(target.category, bindings), delta + tail)


def _ends_with(stack: Tuple[StackEntry, ...], suffix: Tuple[StackEntry, ...]) -> bool:
    return len(suffix) <= len(stack) and stack[len(stack) - len(suffix):] == suffix


def _pop_delta(from_state: State, to_state: State) -> Optional[Tuple[StackEntry, ...]]:
    """The δ of a pop step from ``from_state`` to ``to_state``, if it is one."""
    if not from_state.stack:
        return None
    head, rest = from_state.stack[0], from_state.stack[1:]
    if to_state.category != head.category:
        return None
    carried = head.nested + rest
    if not _ends_with(to_state.stack, carried):
        return None
    return to_state.stack[: len(to_state.stack) - len(carried)]


def licenses(from_state: AnyState, to_state: AnyState) -> bool:
    """Whether a concrete step is a push, a pop or the end of the sentence."""
    if isinstance(from_state, Terminal):
        return False
    if isinstance(to_state, Terminal):
        return not from_state.stack
    if _ends_with(to_state.stack, from_state.stack):
        return True
    return _pop_delta(from_state, to_state) is not None


def alpha_generalize(transition: Transition) -> Transition:
    """Factor the carried-over stack suffix of a concrete transition into α.

    The push form is used when the whole from-stack survives below the new
    material, the pop form when the step discharges the top entry, and
    otherwise a push form that consumes the unshared part of the from-stack.
    """
    if not transition.is_concrete:
        raise ValueError("Only concrete transitions can be generalized")
    from_state = transition.source.to_state()
    category = from_state.category

    if isinstance(transition.target, Terminal):
        return Transition(StatePattern(category), StatePattern(None, pop=True))
    to_state = transition.target.to_state()

    if _ends_with(to_state.stack, from_state.stack):
        delta = to_state.stack[: len(to_state.stack) - len(from_state.stack)]
        return Transition(StatePattern(category), StatePattern(to_state.category, delta))

    delta = _pop_delta(from_state, to_state)
    if delta is not None:
        return Transition(StatePattern(category), StatePattern(None, delta, pop=True))

    shared = 0
    while (
        shared < min(len(from_state.stack), len(to_state.stack))
        and from_state.stack[-1 - shared] == to_state.stack[-1 - shared]
    ):
        shared += 1
    consumed = from_state.stack[: len(from_state.stack) - shared]
    delta = to_state.stack[: len(to_state.stack) - shared]
    return Transition(StatePattern(category, consumed), StatePattern(to_state.category, delta))


def derive_coordination(transition: Transition, from_state: Optional[State] = None) -> Transition:
    """Derive the schema that opens a coordination from an ordinary schema.

    A push schema ``X[α] → Y[δ·α]`` becomes ``X[α] → Y[δ·X(+)·α]``. A pop
    schema ``X[α] → α[δ]`` needs the concrete state it applies to, since the
    discharged segment ``X, E`` is packed into one nested entry
    ``X(+)[E]``: the result is ``X[E·α] → E[δ·X(+)[E]·α]``.

    Raises:
        CoordinationError: If the schema has no α in its to-pattern, or the
            from-state has no one- or two-category segment to discharge
    """
    source, target = transition.source, transition.target
    if isinstance(target, Terminal) or not target.open_tail or not source.open_tail:
        raise CoordinationError("Schema binds nothing to α in its to-pattern")
    conjunct = source.category.with_feature("+")

    if not target.pop:
        if source.prefix:
            raise CoordinationError("Coordinating a schema that consumes stack entries is not supported")
        entries = target.prefix + (StackEntry(conjunct),)
        return Transition(source, StatePattern(target.category, entries))

    if from_state is None:
        raise CoordinationError("A pop schema is coordinated against a concrete from-state")
    if source.prefix or _bind_source(source, from_state) is None:
        raise CoordinationError("The from-state does not match the schema")

    if not from_state.stack:
        raise CoordinationError("The from-state has no stack entry to discharge")

    head = from_state.stack[0]
    if head.nested:
        raise CoordinationError("Coordinated segments longer than two categories are not supported")
    entries = target.prefix + (StackEntry(conjunct, (head,)),)
    logger.debug(f"Packing segment {source.category.base}, {head.category.base} into a coordination entry")
    return Transition(StatePattern(source.category, (head,)), StatePattern(head.category, entries))


def _match_pattern(general: StatePattern, specific: StatePattern, bindings: Bindings) -> Optional[Bindings]:
    if (
        general.open_tail != specific.open_tail
        or general.pop != specific.pop
        or len(general.prefix) != len(specific.prefix)
    ):
        return None
    if general.category is not None:
        bindings = unify_category(general.category, specific.category, bindings)
        if bindings is None:
            return None
    for g, s in zip(general.prefix, specific.prefix):
        bindings = _unify_entry(g, s, bindings)
        if bindings is None:
            return None
    return bindings


def subsumes(general: Transition, specific: Transition) -> bool:
    """Whether a variable-free schema is an instance of ``general``.

    Only ``general`` may carry feature variables; α positions must agree.
    """
    bindings = _match_pattern(general.source, specific.source, {})
    if bindings is None:
        return False
    if isinstance(general.target, Terminal) or isinstance(specific.target, Terminal):
        return isinstance(general.target, Terminal) and isinstance(specific.target, Terminal)
    return _match_pattern(general.target, specific.target, bindings) is not None
