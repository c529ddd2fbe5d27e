"""Categories and feature terms.

A category is a base symbol plus an ordered list of feature terms, written
``A(b)``. Feature terms nest (``np(dog)``) and, inside schemas only, a feature
variable ``?b`` stands for the remainder of the feature list it sits in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

Bindings = Dict[str, Tuple["FeatureTerm", ...]]


@dataclass(frozen=True)
class FeatureVar:
    """Placeholder bound to the rest of a feature list (schemas only)."""

    name: str


@dataclass(frozen=True)
class FeatureTerm:
    functor: str
    args: Tuple["Feature", ...] = ()

    def __post_init__(self) -> None:
        if not self.functor:
            raise ValueError("Feature functor cannot be empty")
        _check_feature_list(self.args, f"feature {self.functor}")

    @property
    def has_variables(self) -> bool:
        return any(isinstance(arg, FeatureVar) or arg.has_variables for arg in self.args)


Feature = Union[FeatureTerm, FeatureVar]


@dataclass(frozen=True)
class Category:
    base: str
    features: Tuple[Feature, ...] = ()

    def __post_init__(self) -> None:
        if not self.base:
            raise ValueError("Category base cannot be empty")
        _check_feature_list(self.features, f"category {self.base}")

    @property
    def has_variables(self) -> bool:
        return any(isinstance(f, FeatureVar) or f.has_variables for f in self.features)

    def with_feature(self, functor: str) -> "Category":
        """Return the base category carrying the single feature ``functor``."""
        return Category(self.base, (FeatureTerm(functor),))


def _check_feature_list(features: Tuple[Feature, ...], owner: str) -> None:
    functors = [f.functor for f in features if isinstance(f, FeatureTerm)]
    if len(functors) != len(set(functors)):
        raise ValueError(f"Duplicate feature functor in {owner}")
    if sum(isinstance(f, FeatureVar) for f in features) > 1:
        raise ValueError(f"More than one feature variable in {owner}")


def unify_features(
    pattern: Tuple[Feature, ...], concrete: Tuple[Feature, ...], bindings: Bindings
) -> Optional[Bindings]:
    """Match a pattern feature list against a concrete one.

    Without a variable the lists must agree term by term. With a variable the
    explicit terms are looked up by functor and the variable takes whatever is
    left, in its original order.

    Returns:
        The extended bindings, or None if the lists do not unify.
    """
    variable = next((f for f in pattern if isinstance(f, FeatureVar)), None)
    if variable is None:
        if len(pattern) != len(concrete):
            return None
        for p, c in zip(pattern, concrete):
            bindings = _unify_term(p, c, bindings)
            if bindings is None:
                return None
        return bindings

    by_functor = {c.functor: c for c in concrete if isinstance(c, FeatureTerm)}
    used = set()
    for p in pattern:
        if isinstance(p, FeatureVar):
            continue
        c = by_functor.get(p.functor)
        if c is None:
            return None
        bindings = _unify_term(p, c, bindings)
        if bindings is None:
            return None
        used.add(p.functor)

    rest = tuple(c for c in concrete if not (isinstance(c, FeatureTerm) and c.functor in used))
    if variable.name in bindings:
        return bindings if bindings[variable.name] == rest else None
    return {**bindings, variable.name: rest}


def _unify_term(pattern: Feature, concrete: Feature, bindings: Bindings) -> Optional[Bindings]:
    if isinstance(pattern, FeatureVar) or isinstance(concrete, FeatureVar):
        # single-term variables only occur through unify_features
        return None
    if pattern.functor != concrete.functor:
        return None
    return unify_features(pattern.args, concrete.args, bindings)


def unify_category(pattern: Category, concrete: Category, bindings: Bindings) -> Optional[Bindings]:
    if pattern.base != concrete.base:
        return None
    return unify_features(pattern.features, concrete.features, bindings)


def substitute_features(features: Tuple[Feature, ...], bindings: Bindings) -> Tuple[FeatureTerm, ...]:
    """Replace variables by their bound feature lists."""
    result = []
    for f in features:
        if isinstance(f, FeatureVar):
            if f.name not in bindings:
                raise KeyError(f"Unbound feature variable ?{f.name}")
            result.extend(bindings[f.name])
        else:
            result.append(FeatureTerm(f.functor, substitute_features(f.args, bindings)))
    return tuple(result)


def substitute_category(category: Category, bindings: Bindings) -> Category:
    if not category.has_variables:
        return category
    return Category(category.base, substitute_features(category.features, bindings))


def feature_variables(features: Tuple[Feature, ...]) -> set:
    names = set()
    for f in features:
        if isinstance(f, FeatureVar):
            names.add(f.name)
        else:
            names |= feature_variables(f.args)
    return names
