"""State paths and their consistency checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .categories import Category
from .schema import licenses
from .states import TERMINAL, AnyState, State, Terminal

DEFAULT_ROOT = Category("S")


@dataclass(frozen=True)
class Parse:
    """Tokens zipped with their states.

    ``states`` has one more element than ``tokens``: the state entered after
    the last word, Terminal for a complete parse.
    """

    tokens: Tuple[str, ...]
    states: Tuple[AnyState, ...]
    score: Optional[float] = None

    def __post_init__(self) -> None:
        if len(self.states) != len(self.tokens) + 1:
            raise ValueError(f"A parse of {len(self.tokens)} tokens needs {len(self.tokens) + 1} states")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[str, State]], score: Optional[float] = None) -> "Parse":
        return cls(
            tuple(surface for surface, _ in pairs),
            tuple(state for _, state in pairs) + (TERMINAL,),
            score,
        )

    def steps(self) -> Iterator[Tuple[str, AnyState, AnyState]]:
        """Yield ``(surface, from_state, to_state)`` for every token."""
        for i, surface in enumerate(self.tokens):
            yield surface, self.states[i], self.states[i + 1]

    def same_path(self, other: "Parse") -> bool:
        return self.states == other.states


@dataclass(frozen=True)
class Violation:
    position: int
    check: str
    message: str

    def __str__(self) -> str:
        return f"token {self.position}: {self.message}"


def validate_parse(parse: Parse, root: Category = DEFAULT_ROOT) -> List[Violation]:
    """Check a parse for consistency.

    Positions are 1-based token indices; a broken step is reported at the
    token whose outgoing transition is not licensed.

    Returns:
        The violations found, empty if the parse is well formed
    """
    violations: List[Violation] = []
    if not parse.tokens:
        return [Violation(0, "empty", "parse has no tokens")]

    first = parse.states[0]
    if not isinstance(first, State) or first.category != root or first.stack:
        violations.append(Violation(1, "root", f"first state must be {root.base} with an empty stack"))

    for i, state in enumerate(parse.states[:-1], start=1):
        if isinstance(state, State) and state.has_variables:
            violations.append(Violation(i, "variables", "concrete states cannot contain variables"))

    last = len(parse.tokens)
    for i, (surface, src, dst) in enumerate(parse.steps(), start=1):
        if isinstance(src, Terminal):
            violations.append(Violation(i, "licensing", f"{surface!r} follows the end of the sentence"))
        elif isinstance(dst, Terminal):
            if i < last:
                violations.append(Violation(i, "licensing", f"{surface!r} ends the sentence early"))
        elif not licenses(src, dst):
            violations.append(Violation(i, "licensing", f"transition for {surface!r} is neither a push nor a pop"))

    if not isinstance(parse.states[-1], Terminal):
        violations.append(Violation(last, "terminal", "parse does not reach <end>"))
    elif not licenses(parse.states[-2], TERMINAL):
        violations.append(Violation(last, "terminal", "<end> is reached with a non-empty stack"))
    return violations
