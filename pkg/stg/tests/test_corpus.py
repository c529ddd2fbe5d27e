"""Tests for treebank reading, writing and event extraction."""

import io
import unittest
from collections import Counter

import pytest

from stg.exceptions import CorpusFormatError, CorpusValidationError
from stg.grammar import TERMINAL, parse_state_notation
from stg.services.corpus import (
    extract_events,
    load_corpus,
    load_corpus_file,
    normalize_lexeme,
    read_corpus,
    write_corpus,
    write_corpus_file,
)

from .conftest import ANALYSES_TB

BROKEN = """# sent_id = ok
Dogs\tS [ ]
bark\tVP [ ]

# sent_id = broken
The\tS [ ]
man\tN [VP]
gave\tVP [ ]
the\tNP [NP]
dog\tN [VP]
a\tNP [ ]
bone\tN [ ]
"""


@pytest.mark.unit
class TestReadCorpus(unittest.TestCase):
    """Test parsing treebank text"""

    def test_load_fixture(self) -> None:
        corpus = load_corpus_file(ANALYSES_TB)
        self.assertEqual(len(corpus), 12)
        self.assertEqual(corpus.token_count, 101)
        self.assertEqual(corpus.source, "example analyses")
        self.assertEqual([s.sent_id for s in corpus][:3], ["1a", "2a", "3a"])

    def test_empty_corpus(self) -> None:
        corpus = read_corpus("")
        self.assertEqual(len(corpus), 0)
        self.assertEqual(corpus.token_count, 0)

    def test_single_token_sentence(self) -> None:
        corpus = read_corpus("Hi\tS [ ]\n")
        self.assertEqual(len(corpus), 1)
        self.assertEqual(corpus.sentences[0].parse.states[-1], TERMINAL)

    def test_unknown_comments_are_ignored(self) -> None:
        corpus = read_corpus("# a free comment\n# text = Hi\nHi\tS [ ]\n")
        self.assertEqual(len(corpus), 1)
        self.assertIsNone(corpus.sentences[0].sent_id)

    def test_strict_rejects_broken_chain(self) -> None:
        with self.assertRaises(CorpusValidationError) as ctx:
            read_corpus(BROKEN)
        lines = {line for line, _ in ctx.exception.violations}
        self.assertEqual(lines, {9, 10})
        self.assertIn("violations", ctx.exception.to_dict())

    def test_lenient_excludes_broken_sentence(self) -> None:
        with self.assertLogs("stg.services.corpus", level="WARNING"):
            corpus = read_corpus(BROKEN, strict=False)
        self.assertEqual([s.sent_id for s in corpus], ["ok"])

    def test_missing_tab(self) -> None:
        with self.assertRaises(CorpusFormatError) as ctx:
            read_corpus("Hi S [ ]\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 1))

    def test_bad_notation_points_into_the_state(self) -> None:
        with self.assertRaises(CorpusFormatError) as ctx:
            read_corpus("Hi\tS [ ]\n\nThe\tS [ ]\ndog\tN [VP\n")
        self.assertEqual(ctx.exception.line, 4)
        self.assertGreater(ctx.exception.column, len("dog\t"))

    def test_end_cannot_label_a_token(self) -> None:
        with self.assertRaises(CorpusFormatError):
            read_corpus("Hi\t<end>\n")

    def test_schema_notation_is_not_a_state(self) -> None:
        with self.assertRaises(CorpusFormatError):
            read_corpus("Hi\tS [*]\n")

    def test_bytes_stream(self) -> None:
        corpus = load_corpus(io.BytesIO("Ça\tS [ ]\n".encode("utf-8")))
        self.assertEqual(corpus.sentences[0].surfaces, ["Ça"])

    def test_invalid_utf8(self) -> None:
        with self.assertRaises(CorpusFormatError) as ctx:
            load_corpus(io.BytesIO(b"The\tS [ ]\nm\xffan\tN [ ]\n"))
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 2))


class TestWriteCorpus:
    """Test canonical rendering"""

    @pytest.mark.unit
    def test_fixture_round_trip_is_byte_identical(self, analyses_corpus):
        assert write_corpus(analyses_corpus) == ANALYSES_TB.read_bytes()

    @pytest.mark.unit
    def test_write_file(self, analyses_corpus, tmp_path):
        path = tmp_path / "copy.tb"
        write_corpus_file(analyses_corpus, path)
        assert load_corpus_file(path) == analyses_corpus

    @pytest.mark.unit
    def test_empty_corpus(self):
        assert write_corpus(read_corpus("")) == b"# tokens = 0\n"

    @pytest.mark.unit
    def test_states_are_rewritten_canonically(self):
        corpus = read_corpus("Hi\tS[]\nthere\tN[ VP(np) ]\ngo\tVP(np)[]\n\n")
        assert write_corpus(corpus).decode("utf-8").splitlines()[1:] == [
            "",
            "Hi\tS [ ]",
            "there\tN [VP(np)]",
            "go\tVP(np) [ ]",
        ]


class TestExtractEvents:
    """Test turning analyses into transition events"""

    @pytest.mark.unit
    def test_one_event_per_token(self, analyses_corpus):
        assert len(extract_events(analyses_corpus)) == 101

    @pytest.mark.unit
    def test_lexemes_are_lower_cased(self, analyses_corpus):
        lexemes = Counter(event.lexeme for event in extract_events(analyses_corpus))
        assert lexemes["the"] == 11
        assert lexemes["a"] == 7
        assert "The" not in lexemes
        assert normalize_lexeme("Fido") == "fido"

    @pytest.mark.unit
    def test_gave_events(self, analyses_corpus):
        events = [e for e in extract_events(analyses_corpus) if e.lexeme == "gave"]
        assert [(e.from_state, e.to_state) for e in events] == [
            (parse_state_notation("VP [ ]"), parse_state_notation("NP [NP]")),
            (parse_state_notation("VP(np) [ ]"), parse_state_notation("NP [ ]")),
        ]

    @pytest.mark.unit
    def test_last_token_goes_to_terminal(self, analyses_corpus):
        events = [e for e in extract_events(analyses_corpus) if e.lexeme == "bone"]
        assert len(events) == 4
        assert events[0].to_state is TERMINAL
        assert events[-1].to_state == parse_state_notation("NP(t) [N(+) [NP(t)]]")
