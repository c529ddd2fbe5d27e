"""Sectioned text format for trained models.

Sections, in order: ``[config]``, ``[count]``, ``[word]``, ``[alpha]``,
``[beta]``, ``[paradigm]``, ``[unknown]``, ``[penalty]``. Distribution rows
are ``key<TAB>from<TAB>to<TAB>probability`` with exact fractions; paradigm
member rows are ``P000<TAB>lexeme lexeme ...``.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Tuple, Union

from ..exceptions import ModelFormatError, NotationError
from ..grammar import format_category, format_state, parse_category, parse_transition
from .blending import TransitionModel
from .corpus import byte_position
from .estimation import Distribution, Table
from .paradigms import Paradigm
from .penalty import LengthPenalty
from .unknown import OrthoClass

logger = logging.getLogger(__name__)

SECTIONS = ("config", "count", "word", "alpha", "beta", "paradigm", "unknown", "penalty")


def _format_probability(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def _distribution_rows(key: str, distribution: Distribution) -> List[str]:
    return [
        f"{key}\t{format_state(t.source)}\t{format_state(t.target)}\t{_format_probability(p)}"
        for t, p in distribution.items()
    ]


def _table_rows(table: Mapping[str, Distribution]) -> List[str]:
    rows: List[str] = []
    for key in sorted(table):
        rows.extend(_distribution_rows(key, table[key]))
    return rows


def dumps_model(model: TransitionModel) -> str:
    lines: List[str] = ["[config]"]
    lines.append(f"lambda\t{','.join(repr(float(w)) for w in model.weights)}")
    lines.append(f"k\t{float(model.k)!r}")
    lines.append(f"tau\t{float(model.tau)!r}")
    lines.append(f"root\t{format_category(model.root)}")
    if model.removed:
        lines.append(f"removed\t{' '.join(sorted(model.removed))}")

    lines += ["", "[count]"] + [f"{w}\t{model.counts[w]}" for w in sorted(model.counts)]
    lines += ["", "[word]"] + _table_rows(model.word)
    lines += ["", "[alpha]"] + _table_rows(model.alpha)
    lines += ["", "[beta]"] + _table_rows(model.beta)
    lines += ["", "[paradigm]"]
    for paradigm in model.paradigms:
        lines.append(f"{paradigm.name}\t{' '.join(paradigm.members)}")
        lines.extend(_distribution_rows(paradigm.name, paradigm.distribution))
    lines += ["", "[unknown]"] + _table_rows({c.value: d for c, d in model.unknown.items()})
    lines += ["", "[penalty]"] + [f"{d}\t{f!r}" for d, f in enumerate(model.penalty.factors)]
    return "\n".join(lines) + "\n"


def save_model(model: TransitionModel, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_model(model))
    logger.info(f"Wrote model with {len(model.counts)} lexemes to {path}")


def _parse_probability(text: str) -> Fraction:
    value = Fraction(text)
    if not 0 < value <= 1:
        raise ValueError(f"probability {text} outside (0, 1]")
    return value


def loads_model(text: str) -> TransitionModel:
    """Parse a model file.

    Raises:
        ModelFormatError: On an unknown section or a malformed row
    """
    rows: Dict[str, List[Tuple[int, List[str]]]] = {name: [] for name in SECTIONS}
    section = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\r\n")
        if not line.strip():
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1]
            if section not in rows:
                raise ModelFormatError(f"unknown section [{section}]", number)
            continue
        if section is None:
            raise ModelFormatError("row outside of any section", number)
        rows[section].append((number, line.split("\t")))

    def parse_rows(name: str, parse: Callable) -> None:
        for number, fields in rows[name]:
            try:
                parse(fields)
            except (ValueError, KeyError, IndexError, NotationError) as e:
                raise ModelFormatError(f"[{name}] {e}", number) from e

    config: Dict[str, str] = {}

    def config_row(fields):
        key, value = fields
        config[key] = value

    counts: Dict[str, int] = {}

    def count_row(fields):
        lexeme, value = fields
        counts[lexeme] = int(value)

    def table_collector(target: Dict[str, Dict]):
        def row(fields):
            key, source, dst, probability = fields
            target.setdefault(key, {})[parse_transition(source, dst)] = _parse_probability(probability)

        return row

    word: Dict[str, Dict] = {}
    alpha: Dict[str, Dict] = {}
    beta: Dict[str, Dict] = {}
    unknown: Dict[str, Dict] = {}
    members: Dict[str, Tuple[str, ...]] = {}
    paradigm_rows: Dict[str, Dict] = {}
    paradigm_distribution = table_collector(paradigm_rows)

    def paradigm_row(fields):
        if len(fields) == 2:
            members[fields[0]] = tuple(fields[1].split())
        else:
            paradigm_distribution(fields)

    factors: List[float] = []

    def penalty_row(fields):
        d, factor = fields
        if int(d) != len(factors):
            raise ValueError(f"penalty depths must be consecutive from 0, got {d}")
        factors.append(float(factor))

    parse_rows("config", config_row)
    parse_rows("count", count_row)
    parse_rows("word", table_collector(word))
    parse_rows("alpha", table_collector(alpha))
    parse_rows("beta", table_collector(beta))
    parse_rows("paradigm", paradigm_row)
    parse_rows("unknown", table_collector(unknown))
    parse_rows("penalty", penalty_row)

    def to_table(raw: Dict[str, Dict]) -> Table:
        return {key: Distribution(entries) for key, entries in raw.items()}

    try:
        paradigms = tuple(
            Paradigm(
                name,
                lexemes,
                Distribution(paradigm_rows.get(name, {})),
                any(counts[m] == 1 for m in lexemes),
            )
            for name, lexemes in members.items()
        )
        model = TransitionModel(
            counts=counts,
            word=to_table(word),
            alpha=to_table(alpha),
            beta=to_table(beta),
            paradigms=paradigms,
            unknown={OrthoClass(key): d for key, d in to_table(unknown).items()},
            penalty=LengthPenalty(tuple(factors) or (1.0,)),
            weights=tuple(float(w) for w in config["lambda"].split(",")),
            k=float(config["k"]),
            tau=float(config["tau"]),
            root=parse_category(config.get("root", "S")),
            removed=frozenset(config.get("removed", "").split()),
        )
    except (KeyError, ValueError, NotationError) as e:
        raise ModelFormatError(f"inconsistent model: {e}") from e
    logger.debug(f"Loaded model with {len(counts)} lexemes and {len(paradigms)} paradigms")
    return model


def load_model(path: Union[str, Path]) -> TransitionModel:
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ModelFormatError("invalid UTF-8", byte_position(data, e.start)[0]) from e
    return loads_model(text)
