"""Vertical treebank reading and writing.

One token per line as ``surface<TAB>state``; a blank line ends a sentence and
``#`` starts a comment. Header comments ``# source = ...`` and
``# tokens = ...`` and the per-sentence ``# sent_id = ...`` are kept; any
other comment is dropped. The Terminal state is implicit after the last
token and never written.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, List, Optional, TextIO, Tuple, Union

from ..exceptions import CorpusFormatError, CorpusValidationError, NotationError
from ..grammar import (
    DEFAULT_ROOT,
    AnyState,
    Category,
    Parse,
    State,
    format_state,
    parse_state_notation,
    validate_parse,
)

logger = logging.getLogger(__name__)

SOURCE_KEY = "source"
TOKENS_KEY = "tokens"
SENT_ID_KEY = "sent_id"


def normalize_lexeme(surface: str) -> str:
    """Lexemes are lower-cased surfaces; punctuation passes through unchanged."""
    return surface.lower()


def tokenize(line: str) -> List[str]:
    return line.split()


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: Tuple[Tuple[str, State], ...]
    sent_id: Optional[str] = None
    line: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("An annotated sentence needs at least one token")

    @property
    def surfaces(self) -> List[str]:
        return [surface for surface, _ in self.tokens]

    @property
    def states(self) -> List[State]:
        return [state for _, state in self.tokens]

    @property
    def parse(self) -> Parse:
        return Parse.from_pairs(self.tokens)

    @property
    def label(self) -> str:
        return self.sent_id or f"line-{self.line}"


@dataclass(frozen=True)
class Corpus:
    sentences: Tuple[AnnotatedSentence, ...] = ()
    source: Optional[str] = None

    @property
    def token_count(self) -> int:
        return sum(len(sentence.tokens) for sentence in self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


@dataclass(frozen=True)
class TransitionEvent:
    """One token's transition: the state it labels and the state after it."""

    lexeme: str
    surface: str
    from_state: State
    to_state: AnyState


def _parse_comment(text: str) -> Optional[Tuple[str, str]]:
    body = text[1:].strip()
    if "=" not in body:
        return None
    key, value = body.split("=", 1)
    return key.strip(), value.strip()


def read_corpus(text: str, root: Category = DEFAULT_ROOT, strict: bool = True) -> Corpus:
    """Parse treebank text into a validated corpus.

    Args:
        text: The treebank contents
        root: Category every sentence must start in
        strict: Raise on invalid analyses instead of excluding them

    Raises:
        CorpusFormatError: On a malformed line
        CorpusValidationError: In strict mode, if any analysis fails validation
    """
    sentences: List[AnnotatedSentence] = []
    failures: List[Tuple[int, object]] = []
    source: Optional[str] = None
    pending: List[Tuple[str, State]] = []
    token_lines: List[int] = []
    sent_id: Optional[str] = None

    def close_sentence() -> None:
        nonlocal pending, token_lines, sent_id
        if pending:
            sentence = AnnotatedSentence(tuple(pending), sent_id, token_lines[0])
            violations = validate_parse(sentence.parse, root)
            if violations:
                for violation in violations:
                    line = token_lines[min(max(violation.position, 1), len(token_lines)) - 1]
                    failures.append((line, violation))
                logger.warning(f"Excluding sentence {sentence.label}: {'; '.join(map(str, violations))}")
            else:
                sentences.append(sentence)
        pending, token_lines, sent_id = [], [], None

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            close_sentence()
            continue
        if line.lstrip().startswith("#"):
            comment = _parse_comment(line.lstrip())
            if comment is None:
                continue
            key, value = comment
            if key == SENT_ID_KEY:
                sent_id = value
            elif key == SOURCE_KEY and not sentences and not pending and source is None:
                source = value
            continue

        fields = line.split("\t")
        if len(fields) != 2 or not fields[0].strip():
            raise CorpusFormatError("expected 'surface<TAB>state'", number, 1)
        surface, notation = fields[0].strip(), fields[1]
        try:
            state = parse_state_notation(notation)
        except NotationError as e:
            raise CorpusFormatError(e.message, number, len(fields[0]) + 2 + e.position) from e
        if not isinstance(state, State):
            raise CorpusFormatError("<end> is implicit and cannot label a token", number, len(fields[0]) + 2)
        pending.append((surface, state))
        token_lines.append(number)
    close_sentence()

    if failures and strict:
        raise CorpusValidationError(failures)
    corpus = Corpus(tuple(sentences), source)
    logger.info(f"Loaded {len(corpus)} sentences ({corpus.token_count} tokens)")
    return corpus


def byte_position(data: bytes, offset: int) -> Tuple[int, int]:
    """1-based line and column of a byte offset."""
    line_start = data.rfind(b"\n", 0, offset) + 1
    return data.count(b"\n", 0, offset) + 1, offset - line_start + 1


def load_corpus(source: Union[BinaryIO, TextIO], root: Category = DEFAULT_ROOT, strict: bool = True) -> Corpus:
    """Read a treebank from a byte or text stream (UTF-8).

    Raises:
        CorpusFormatError: For bytes that are not valid UTF-8
    """
    data = source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            line, column = byte_position(data, e.start)
            raise CorpusFormatError("invalid UTF-8", line, column) from e
    return read_corpus(data, root=root, strict=strict)


def load_corpus_file(path: Union[str, Path], root: Category = DEFAULT_ROOT, strict: bool = True) -> Corpus:
    with open(path, "rb") as f:
        return load_corpus(f, root=root, strict=strict)


def format_tokens(pairs: Iterable[Tuple[str, State]]) -> List[str]:
    return [f"{surface}\t{format_state(state)}" for surface, state in pairs]


def dumps_corpus(corpus: Corpus) -> str:
    lines: List[str] = []
    if corpus.source is not None:
        lines.append(f"# {SOURCE_KEY} = {corpus.source}")
    lines.append(f"# {TOKENS_KEY} = {corpus.token_count}")
    for sentence in corpus.sentences:
        lines.append("")
        if sentence.sent_id is not None:
            lines.append(f"# {SENT_ID_KEY} = {sentence.sent_id}")
        lines.extend(format_tokens(sentence.tokens))
    return "\n".join(lines) + "\n"


def write_corpus(corpus: Corpus) -> bytes:
    """Canonical UTF-8 rendering of a corpus."""
    return dumps_corpus(corpus).encode("utf-8")


def write_corpus_file(corpus: Corpus, path: Union[str, Path]) -> None:
    with open(path, "wb") as f:
        f.write(write_corpus(corpus))


def extract_events(corpus: Corpus) -> List[TransitionEvent]:
    """One event per token; the last token of a sentence goes to Terminal."""
    events: List[TransitionEvent] = []
    for sentence in corpus.sentences:
        for surface, src, dst in sentence.parse.steps():
            events.append(TransitionEvent(normalize_lexeme(surface), surface, src, dst))
    logger.debug(f"Extracted {len(events)} transition events")
    return events
