"""Most-probable state paths under the first-order transition model.

A path's score is the sum over tokens of the log blended probability of the
step plus, with the penalty on, the log length penalty of the state entered.
Equal scores are ordered by the formatted state path.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from ..config import DecoderConfig
from ..exceptions import EmptySentenceError, NoScoreError, NoTransitionDataError, SearchBudgetExceeded, STGError
from ..grammar import (
    TERMINAL,
    AnyState,
    Category,
    Parse,
    State,
    Terminal,
    depth,
    format_state,
    match_and_apply,
)
from .blending import TransitionModel

logger = logging.getLogger(__name__)

Successor = Tuple[AnyState, float]
# score, formatted path, states
Hypothesis = Tuple[float, Tuple[str, ...], Tuple[AnyState, ...]]


def _rank(hypothesis: Hypothesis):
    return -hypothesis[0], hypothesis[1]


def successors(model: TransitionModel, state: State, surface: str, config: DecoderConfig) -> List[Successor]:
    """States reachable from ``state`` by reading ``surface``, best first.

    Several schemas yielding the same state count once, with the best score.
    Successors deeper than ``config.max_depth`` are dropped; an unknown word
    without class data has no successors.
    """
    try:
        distribution = model.blended_distribution(surface)
    except NoTransitionDataError as e:
        logger.debug(e.message)
        return []

    best: Dict[AnyState, float] = {}
    for transition, probability in distribution.items():
        following = match_and_apply(transition, state)
        if following is None:
            continue
        d = depth(following)
        if d > config.max_depth:
            continue
        score = math.log(probability)
        if config.use_penalty:
            score += model.penalty.log(d)
        if score > best.get(following, -math.inf):
            best[following] = score
    return sorted(best.items(), key=lambda item: (-item[1], format_state(item[0])))


def _seed(model: TransitionModel, sentence: Sequence[str], root: Optional[Category]) -> State:
    if not sentence:
        raise EmptySentenceError()
    return State(root or model.root)


def n_best(
    model: TransitionModel, sentence: Sequence[str], config: DecoderConfig, root: Optional[Category] = None
) -> List[Parse]:
    """The ``config.n_best`` highest-scoring complete parses, best first.

    Each chart cell keeps the n best partial paths ending in its state, and
    each position keeps the ``config.beam_width`` states with the best paths.

    Raises:
        EmptySentenceError: For a sentence without tokens
    """
    start = _seed(model, sentence, root)
    n = config.n_best
    chart: Dict[AnyState, List[Hypothesis]] = {start: [(0.0, (format_state(start),), (start,))]}
    last = len(sentence) - 1

    for position, surface in enumerate(sentence):
        following: Dict[AnyState, List[Hypothesis]] = {}
        for state, hypotheses in chart.items():
            for successor, step in successors(model, state, surface, config):
                if isinstance(successor, Terminal) != (position == last):
                    continue
                key = format_state(successor)
                cell = following.setdefault(successor, [])
                cell.extend(
                    (score + step, path + (key,), states + (successor,)) for score, path, states in hypotheses
                )
        for state in following:
            following[state] = sorted(following[state], key=_rank)[:n]
        if len(following) > config.beam_width:
            kept = sorted(following, key=lambda s: _rank(following[s][0]))[: config.beam_width]
            following = {state: following[state] for state in kept}
        if not following:
            logger.debug(f"No path survives token {position + 1} ({surface!r})")
            return []
        chart = following

    return [Parse(tuple(sentence), states, score) for score, _, states in chart.get(TERMINAL, [])]


def viterbi(
    model: TransitionModel, sentence: Sequence[str], config: DecoderConfig, root: Optional[Category] = None
) -> Optional[Parse]:
    """The best complete parse, or None when no path reaches the end."""
    parses = n_best(model, sentence, config.model_copy(update={"n_best": 1}), root)
    return parses[0] if parses else None


def score_parse(model: TransitionModel, parse: Parse, config: DecoderConfig) -> float:
    """Score a given state path the way the decoder scores it.

    Raises:
        NoScoreError: If a step is outside the model's support
    """
    total = 0.0
    for position, (surface, src, dst) in enumerate(parse.steps(), start=1):
        if isinstance(src, Terminal):
            raise NoScoreError(position, "path continues after <end>")
        try:
            distribution = model.blended_distribution(surface)
        except NoTransitionDataError as e:
            raise NoScoreError(position, e.message) from e
        best = max(
            (math.log(p) for t, p in distribution.items() if match_and_apply(t, src) == dst),
            default=None,
        )
        if best is None:
            raise NoScoreError(
                position, f"no transition for {surface!r} from {format_state(src)} to {format_state(dst)}"
            )
        total += best
        if config.use_penalty:
            total += model.penalty.log(depth(dst))
    return total


def exhaustive_oracle(
    model: TransitionModel, sentence: Sequence[str], config: DecoderConfig, root: Optional[Category] = None
) -> Optional[Parse]:
    """Best parse by depth-first enumeration of every complete path.

    Raises:
        SearchBudgetExceeded: After expanding ``config.node_budget`` states
    """
    start = _seed(model, sentence, root)
    last = len(sentence) - 1
    best: Optional[Hypothesis] = None
    expanded = 0
    cache: Dict[Tuple[AnyState, int], List[Successor]] = {}

    def expand(position: int, hypothesis: Hypothesis) -> None:
        nonlocal best, expanded
        expanded += 1
        if expanded > config.node_budget:
            raise SearchBudgetExceeded(f"oracle expanded more than {config.node_budget} states")
        score, path, states = hypothesis
        key = (states[-1], position)
        if key not in cache:
            cache[key] = successors(model, states[-1], sentence[position], config)
        for successor, step in cache[key]:
            if isinstance(successor, Terminal) != (position == last):
                continue
            extended = (score + step, path + (format_state(successor),), states + (successor,))
            if position == last:
                if best is None or _rank(extended) < _rank(best):
                    best = extended
            else:
                expand(position + 1, extended)

    expand(0, (0.0, (format_state(start),), (start,)))
    if best is None:
        return None
    return Parse(tuple(sentence), best[2], best[0])


class DecoderService:
    """Decodes batches of sentences with a shared read-only model."""

    def __init__(
        self, model: TransitionModel, config: Optional[DecoderConfig] = None, root: Optional[Category] = None
    ):
        self.model = model
        self.config = config or DecoderConfig()
        self.root = root

    def decode(self, sentence: Sequence[str]) -> List[Parse]:
        parses = n_best(self.model, sentence, self.config, self.root)
        if parses:
            logger.debug(f"Parsed {' '.join(sentence)!r}: logprob={parses[0].score:.4f}")
        else:
            logger.debug(f"No parse for {' '.join(sentence)!r}")
        return parses

    def try_decode(self, sentence: Sequence[str]) -> List[Parse]:
        """Like :meth:`decode`, but a decoder error yields no parses."""
        try:
            return self.decode(sentence)
        except STGError as e:
            logger.warning(f"Decoder failed on {' '.join(sentence)!r}: {e.message}")
            return []

    def decode_many(self, sentences: Sequence[Sequence[str]], tolerant: bool = False) -> List[List[Parse]]:
        """Decode on ``config.workers`` threads; results follow input order.

        With ``tolerant`` a sentence the decoder fails on gets an empty list
        instead of raising.
        """
        decode = self.try_decode if tolerant else self.decode
        if self.config.workers == 1:
            return [decode(sentence) for sentence in sentences]
        with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
            return list(pool.map(decode, sentences))


def format_parses(sentence: Sequence[str], parses: Sequence[Parse], ranked: bool = False) -> str:
    """Render decoder output in treebank format.

    Every parse is followed by ``# logprob=<score>``; a sentence without a
    parse renders as ``# NOPARSE``. With ``ranked`` each parse opens with
    ``# rank=<i>``.
    """
    header = f"# text = {' '.join(sentence)}"
    if not parses:
        return f"{header}\n# NOPARSE\n"
    blocks = []
    for rank, parse in enumerate(parses, start=1):
        lines = [header]
        if ranked:
            lines.append(f"# rank={rank}")
        lines.extend(f"{surface}\t{format_state(state)}" for surface, state in zip(parse.tokens, parse.states))
        lines.append(f"# logprob={parse.score:.6f}")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)
