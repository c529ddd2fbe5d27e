"""States, stack entries, state patterns and transitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .categories import Category, feature_variables


@dataclass(frozen=True)
class StackEntry:
    """A category on the stack, possibly carrying a nested stack of its own."""

    category: Category
    nested: Tuple["StackEntry", ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(entry.size for entry in self.nested)

    @property
    def has_variables(self) -> bool:
        return self.category.has_variables or any(entry.has_variables for entry in self.nested)


class Terminal:
    """The accepting state reached after the last word."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TERMINAL"

    def __reduce__(self):
        return (Terminal, ())


TERMINAL = Terminal()


@dataclass(frozen=True)
class State:
    category: Category
    stack: Tuple[StackEntry, ...] = ()

    @property
    def has_variables(self) -> bool:
        return self.category.has_variables or any(entry.has_variables for entry in self.stack)


AnyState = Union[State, Terminal]


def depth(state: AnyState) -> int:
    """Number of stack entries in a state, nested entries included."""
    if isinstance(state, Terminal):
        return 0
    return sum(entry.size for entry in state.stack)


@dataclass(frozen=True)
class StatePattern:
    """A state with an optional suffix variable.

    ``open_tail`` marks the stack variable α as the final stack element. A
    pop pattern (target side only) has no category of its own: it becomes the
    first entry bound to α, carrying ``prefix`` (δ) on top of its stack.
    """

    category: Union[Category, None]
    prefix: Tuple[StackEntry, ...] = ()
    open_tail: bool = True
    pop: bool = False

    def __post_init__(self) -> None:
        if self.pop and (self.category is not None or not self.open_tail):
            raise ValueError("A pop pattern has no category and always ends in α")
        if not self.pop and self.category is None:
            raise ValueError("A push pattern needs a category")

    @classmethod
    def from_state(cls, state: State) -> "StatePattern":
        return cls(state.category, state.stack, open_tail=False)

    @property
    def is_concrete(self) -> bool:
        return not self.open_tail and not self.has_variables

    @property
    def has_variables(self) -> bool:
        if self.category is not None and self.category.has_variables:
            return True
        return any(entry.has_variables for entry in self.prefix)

    def variables(self) -> set:
        names = set()
        if self.category is not None:
            names |= feature_variables(self.category.features)
        for entry in self.prefix:
            names |= _entry_variables(entry)
        return names

    def to_state(self) -> State:
        if not self.is_concrete:
            raise ValueError("Only concrete patterns denote a state")
        return State(self.category, self.prefix)


def _entry_variables(entry: StackEntry) -> set:
    names = feature_variables(entry.category.features)
    for nested in entry.nested:
        names |= _entry_variables(nested)
    return names


Target = Union[StatePattern, Terminal]


@dataclass(frozen=True)
class Transition:
    """A lexical event or schema: ``source`` rewritten to ``target``."""

    source: StatePattern
    target: Target

    def __post_init__(self) -> None:
        if self.source.pop:
            raise ValueError("A from-pattern cannot be a pop pattern")
        if isinstance(self.target, Terminal):
            return
        if self.target.open_tail and not self.source.open_tail:
            raise ValueError("α occurs in the to-pattern but not in the from-pattern")
        unbound = self.target.variables() - self.source.variables()
        if unbound:
            names = ", ".join(sorted(f"?{name}" for name in unbound))
            raise ValueError(f"Feature variables {names} do not occur in the from-pattern")

    @classmethod
    def concrete(cls, from_state: State, to_state: AnyState) -> "Transition":
        target = to_state if isinstance(to_state, Terminal) else StatePattern.from_state(to_state)
        return cls(StatePattern.from_state(from_state), target)

    @property
    def is_concrete(self) -> bool:
        if not self.source.is_concrete:
            return False
        return isinstance(self.target, Terminal) or self.target.is_concrete

    @property
    def is_pop(self) -> bool:
        return isinstance(self.target, StatePattern) and self.target.pop
