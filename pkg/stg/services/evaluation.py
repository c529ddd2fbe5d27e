"""Three-way evaluation of the decoder against gold analyses."""

import enum
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..config import DecoderConfig
from ..grammar import Category, Parse, format_state
from .blending import TransitionModel
from .corpus import AnnotatedSentence, Corpus
from .decoder import DecoderService

logger = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    CORRECT = "CORRECT"
    WRONG = "WRONG"
    NOPARSE = "NOPARSE"


@dataclass(frozen=True)
class SentenceResult:
    sent_id: str
    verdict: Verdict
    gold: Parse
    predicted: Optional[Parse] = None

    @property
    def divergence(self) -> Optional[int]:
        """1-based token position of the first state that differs from gold."""
        if self.predicted is None or self.verdict is not Verdict.WRONG:
            return None
        for position, (gold, parsed) in enumerate(zip(self.gold.states, self.predicted.states), start=1):
            if gold != parsed:
                return position
        return None


@dataclass(frozen=True)
class EvalResult:
    sentences: Tuple[SentenceResult, ...] = ()

    @property
    def totals(self) -> Dict[Verdict, int]:
        counts = Counter(result.verdict for result in self.sentences)
        return {verdict: counts.get(verdict, 0) for verdict in Verdict}

    def percentage(self, verdict: Verdict) -> float:
        if not self.sentences:
            return 0.0
        return 100.0 * self.totals[verdict] / len(self.sentences)


def judge(sentence: AnnotatedSentence, predicted: Optional[Parse]) -> SentenceResult:
    gold = sentence.parse
    if predicted is None:
        verdict = Verdict.NOPARSE
    elif predicted.same_path(gold):
        verdict = Verdict.CORRECT
    else:
        verdict = Verdict.WRONG
    return SentenceResult(sentence.label, verdict, gold, predicted)


def evaluate(
    model: TransitionModel,
    test: Corpus,
    config: Optional[DecoderConfig] = None,
    root: Optional[Category] = None,
) -> EvalResult:
    """Decode every test sentence and compare it with its gold analysis.

    Any decoder error on a sentence counts as NOPARSE for that sentence.
    """
    config = (config or DecoderConfig()).model_copy(update={"n_best": 1})
    service = DecoderService(model, config, root)
    decoded = service.decode_many([sentence.surfaces for sentence in test.sentences], tolerant=True)
    predictions = [parses[0] if parses else None for parses in decoded]

    result = EvalResult(tuple(judge(s, p) for s, p in zip(test.sentences, predictions)))
    totals = result.totals
    logger.info(
        f"Evaluated {len(test)} sentences: {totals[Verdict.CORRECT]} correct, "
        f"{totals[Verdict.WRONG]} wrong, {totals[Verdict.NOPARSE]} not parsed"
    )
    return result


def format_percentage(value: float) -> str:
    return f"{round(value, 1):g}%"


def render_report(result: EvalResult, machine: bool = False) -> str:
    """Totals, percentages and one line per sentence.

    The machine variant is only ``id<TAB>verdict`` lines.
    """
    lines: List[str] = []
    if machine:
        lines = [f"{r.sent_id}\t{r.verdict.value}" for r in result.sentences]
        return "".join(f"{line}\n" for line in lines)

    totals = result.totals
    lines.append(f"sentences\t{len(result.sentences)}")
    for verdict in Verdict:
        lines.append(f"{verdict.value}\t{totals[verdict]}\t{format_percentage(result.percentage(verdict))}")
    lines.append("")
    for r in result.sentences:
        line = f"{r.sent_id}\t{r.verdict.value}"
        position = r.divergence
        if position is not None:
            gold = format_state(r.gold.states[position - 1])
            parsed = format_state(r.predicted.states[position - 1])
            line += f"\tfirst divergence at token {position}: gold {gold}, parsed {parsed}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def report(result: EvalResult, machine: bool = False) -> bytes:
    return render_report(result, machine).encode("utf-8")
