"""Tests for the decoder and the exhaustive oracle."""

import dataclasses
import math

import pytest

from stg.config import DecoderConfig, EstimationConfig
from stg.exceptions import EmptySentenceError, NoScoreError, SearchBudgetExceeded
from stg.grammar import TERMINAL, Parse, Transition, depth, format_state, parse_state_notation
from stg.services.decoder import (
    DecoderService,
    exhaustive_oracle,
    format_parses,
    n_best,
    score_parse,
    successors,
    viterbi,
)
from stg.services.training import train_model

WORD_ONLY = EstimationConfig(weights=(1.0, 0.0, 0.0, 0.0), k=0.0)
ALPHA_ONLY = EstimationConfig(weights=(0.0, 1.0, 0.0, 0.0), k=0.0)


def states(*notations: str) -> tuple:
    return tuple(parse_state_notation(text) for text in notations) + (TERMINAL,)


@pytest.fixture(scope="module")
def word_model(analyses_corpus):
    return train_model(analyses_corpus, WORD_ONLY)


@pytest.fixture(scope="module")
def alpha_model(analyses_corpus):
    return train_model(analyses_corpus, ALPHA_ONLY)


@pytest.fixture(scope="module")
def heavy_model(heavy_corpus, analyses_model):
    """α-only model of the heavy-object treebank with the depth penalty of the example analyses."""
    model = train_model(heavy_corpus, ALPHA_ONLY)
    return dataclasses.replace(model, penalty=analyses_model.penalty)


def heavy_parses(m: int):
    """The shifted and unshifted readings of a verb-particle sentence with ``m`` adjectives."""
    adjectives = ("big",) * m
    shifted = Parse(
        ("I", "threw", "the") + adjectives + ("bacon", "out"),
        states("S [ ]", "VP [ ]", "NP [X(out)]", *(["N [X(out)]"] * (m + 1)), "X(out) [ ]"),
    )
    particle_first = Parse(
        ("I", "threw", "out", "the") + adjectives + ("bacon",),
        states("S [ ]", "VP [ ]", "X(out) [NP]", "NP [ ]", *(["N [ ]"] * (m + 1))),
    )
    return shifted, particle_first


class TestSuccessors:
    """Test one decoding step"""

    @pytest.mark.unit
    def test_schemas_without_penalty(self, alpha_model):
        config = DecoderConfig(use_penalty=False)
        result = successors(alpha_model, parse_state_notation("N [NP]"), "dog", config)
        assert [(format_state(s), score) for s, score in result] == [
            ("S(rel) [NP]", pytest.approx(math.log(2 / 5))),
            ("NP [ ]", pytest.approx(math.log(1 / 5))),
            ("NP [S(rel)]", pytest.approx(math.log(1 / 5))),
            ("S(np) [NP]", pytest.approx(math.log(1 / 5))),
        ]

    @pytest.mark.unit
    def test_penalty_reorders(self, alpha_model):
        result = successors(alpha_model, parse_state_notation("N [NP]"), "dog", DecoderConfig())
        assert [format_state(s) for s, _ in result] == ["S(rel) [NP]", "NP [ ]", "NP [S(rel)]", "S(np) [NP]"]
        assert result[0][1] == pytest.approx(math.log(2 / 5) + math.log(43 / 55))
        assert result[1][1] == pytest.approx(math.log(1 / 5))

    @pytest.mark.unit
    def test_depth_cap(self, alpha_model):
        config = DecoderConfig(max_depth=1, use_penalty=False)
        result = successors(alpha_model, parse_state_notation("N [NP]"), "dog", config)
        assert all(depth(s) <= 1 for s, _ in result)
        assert len(result) == 4
        result = successors(alpha_model, parse_state_notation("N [NP, VP]"), "dog", config)
        assert [format_state(s) for s, _ in result] == ["NP [VP]"]

    @pytest.mark.unit
    def test_unknown_word_without_data(self, analyses_model):
        model = analyses_model.without_lexeme("dog")
        assert successors(model, parse_state_notation("N [NP]"), "dog", DecoderConfig()) == []


class TestViterbi:
    """Test best-path decoding"""

    @pytest.mark.unit
    def test_recovers_every_analysis(self, analyses_corpus, word_model, exact_config):
        for sentence in analyses_corpus:
            parse = viterbi(word_model, sentence.surfaces, exact_config)
            assert parse is not None and parse.same_path(sentence.parse), sentence.label

    @pytest.mark.unit
    def test_blended_model_recovers_gold(self, analyses_corpus, analyses_model, exact_config):
        gold = next(s for s in analyses_corpus if s.sent_id == "1a")
        parse = viterbi(analyses_model, gold.surfaces, exact_config)
        assert parse.same_path(gold.parse)
        assert parse.score == pytest.approx(score_parse(analyses_model, gold.parse, exact_config))

    @pytest.mark.unit
    def test_no_parse(self, analyses_corpus, analyses_model, exact_config):
        gold = next(s for s in analyses_corpus if s.sent_id == "1a")
        model = analyses_model.without_lexeme("gave")
        assert viterbi(model, gold.surfaces, exact_config) is None
        assert n_best(model, gold.surfaces, exact_config) == []

    @pytest.mark.unit
    def test_depth_limit(self, analyses_corpus, word_model):
        """The doubly center-embedded sentence needs depth 3."""
        gold = next(s for s in analyses_corpus if s.sent_id == "8")
        assert viterbi(word_model, gold.surfaces, DecoderConfig(max_depth=2, use_penalty=False)) is None
        parse = viterbi(word_model, gold.surfaces, DecoderConfig(max_depth=3, use_penalty=False))
        assert parse.same_path(gold.parse)

    @pytest.mark.unit
    def test_empty_sentence(self, analyses_model):
        with pytest.raises(EmptySentenceError):
            viterbi(analyses_model, [], DecoderConfig())

    @pytest.mark.unit
    def test_root_override(self, word_model):
        assert viterbi(word_model, ["dog"], DecoderConfig(), root=parse_state_notation("X(out) [ ]").category) is None


class TestNBest:
    """Test ranked decoding"""

    @pytest.mark.unit
    def test_ranked_and_distinct(self, analyses_corpus, analyses_model):
        sentence = next(s for s in analyses_corpus if s.sent_id == "1a").surfaces
        config = DecoderConfig(n_best=5, beam_width=10_000)
        parses = n_best(analyses_model, sentence, config)
        assert 1 <= len(parses) <= 5
        scores = [p.score for p in parses]
        assert scores == sorted(scores, reverse=True)
        assert len({p.states for p in parses}) == len(parses)
        assert parses[0].same_path(viterbi(analyses_model, sentence, config))

    @pytest.mark.unit
    def test_scores_match_rescoring(self, analyses_corpus, analyses_model):
        sentence = next(s for s in analyses_corpus if s.sent_id == "6").surfaces
        config = DecoderConfig(n_best=3, beam_width=10_000)
        for parse in n_best(analyses_model, sentence, config):
            assert parse.score == pytest.approx(score_parse(analyses_model, parse, config))


class TestOracle:
    """Test the beam decoder against exhaustive enumeration"""

    @pytest.mark.unit
    @pytest.mark.parametrize("use_penalty", [False, True])
    def test_word_model_agrees(self, analyses_corpus, word_model, use_penalty):
        config = DecoderConfig(beam_width=10_000, use_penalty=use_penalty)
        for sentence in analyses_corpus:
            expected = exhaustive_oracle(word_model, sentence.surfaces, config)
            found = viterbi(word_model, sentence.surfaces, config)
            assert found.same_path(expected) and found.score == expected.score, sentence.label

    @pytest.mark.unit
    @pytest.mark.parametrize("use_penalty", [False, True])
    def test_schema_model_agrees(self, analyses_corpus, alpha_model, use_penalty):
        config = DecoderConfig(beam_width=10_000, use_penalty=use_penalty)
        for sentence in analyses_corpus:
            expected = exhaustive_oracle(alpha_model, sentence.surfaces, config)
            found = viterbi(alpha_model, sentence.surfaces, config)
            if expected is None:
                assert found is None
            else:
                assert found.same_path(expected) and found.score == expected.score, sentence.label

    @pytest.mark.unit
    @pytest.mark.parametrize("use_penalty", [False, True])
    def test_default_model_agrees(self, analyses_corpus, analyses_model, use_penalty):
        config = DecoderConfig(beam_width=10_000, use_penalty=use_penalty)
        for sentence in analyses_corpus:
            expected = exhaustive_oracle(analyses_model, sentence.surfaces, config)
            found = viterbi(analyses_model, sentence.surfaces, config)
            assert found.same_path(expected) and found.score == expected.score, sentence.label

    @pytest.mark.unit
    def test_default_model_oracle_finds_gold(self, analyses_corpus, analyses_model):
        config = DecoderConfig(beam_width=10_000)
        for sentence in analyses_corpus:
            parse = exhaustive_oracle(analyses_model, sentence.surfaces, config)
            assert parse.same_path(sentence.parse), sentence.label

    @pytest.mark.unit
    def test_narrower_beams_never_beat_full_search(self, analyses_corpus, analyses_model):
        for sentence in analyses_corpus:
            scores = []
            for width in (1, 2, 4, 16, 64, 10_000):
                parse = viterbi(analyses_model, sentence.surfaces, DecoderConfig(beam_width=width))
                scores.append(-math.inf if parse is None else parse.score)
            assert all(score <= scores[-1] for score in scores), sentence.label

    @pytest.mark.unit
    def test_budget(self, analyses_corpus, alpha_model):
        sentence = next(s for s in analyses_corpus if s.sent_id == "1a").surfaces
        with pytest.raises(SearchBudgetExceeded):
            exhaustive_oracle(alpha_model, sentence, DecoderConfig(node_budget=2))


class TestScoreParse:
    """Test rescoring a given state path"""

    @pytest.mark.unit
    def test_penalty_adds_depth_terms(self, analyses_corpus, analyses_model):
        gold = next(s for s in analyses_corpus if s.sent_id == "8").parse
        with_penalty = score_parse(analyses_model, gold, DecoderConfig())
        without = score_parse(analyses_model, gold, DecoderConfig(use_penalty=False))
        expected = sum(analyses_model.penalty.log(depth(s)) for s in gold.states[1:])
        assert with_penalty - without == pytest.approx(expected)

    @pytest.mark.unit
    def test_outside_support(self, analyses_corpus, analyses_model):
        gold = next(s for s in analyses_corpus if s.sent_id == "1a").parse
        with pytest.raises(NoScoreError) as ctx:
            score_parse(analyses_model.without_lexeme("gave"), gold, DecoderConfig())
        assert ctx.value.position == 3

    @pytest.mark.unit
    def test_path_after_end(self, analyses_model):
        parse = Parse(("dog", "dog"), states("N [ ]") + (TERMINAL,))
        with pytest.raises(NoScoreError) as ctx:
            score_parse(analyses_model, parse, DecoderConfig())
        assert ctx.value.position == 2


class TestLexicalPreference:
    """Test head features carried through the state"""

    @pytest.mark.unit
    def test_barked_prefers_dog_subjects(self, heads_corpus):
        model = train_model(heads_corpus)
        dog_subject = Transition.concrete(parse_state_notation("S(np(dog)) [ ]"), TERMINAL)
        cat_subject = Transition.concrete(parse_state_notation("S(np(cat)) [ ]"), TERMINAL)
        assert model.word["barked"][dog_subject] == 1
        assert cat_subject not in model.word["barked"]

    @pytest.mark.unit
    def test_gold_is_recovered(self, heads_corpus, exact_config):
        model = train_model(heads_corpus, WORD_ONLY)
        gold = heads_corpus.sentences[0]
        assert viterbi(model, gold.surfaces, exact_config).same_path(gold.parse)


class TestHeavyShift:
    """Test the depth penalty's preference for shifting long objects"""

    @pytest.mark.unit
    def test_crossover(self, heavy_model):
        config = DecoderConfig()
        gaps = []
        for m in range(13):
            shifted, particle_first = heavy_parses(m)
            gap = score_parse(heavy_model, particle_first, config) - score_parse(heavy_model, shifted, config)
            assert gap == pytest.approx(math.log(1 / 2) - (m + 1) * math.log(43 / 55))
            gaps.append(gap)
        crossover = next(m for m, gap in enumerate(gaps) if gap > 0)
        assert crossover == 2
        assert all(later > earlier for earlier, later in zip(gaps, gaps[1:]))

    @pytest.mark.unit
    def test_no_crossover_without_penalty(self, heavy_model):
        config = DecoderConfig(use_penalty=False)
        for m in range(4):
            shifted, particle_first = heavy_parses(m)
            gap = score_parse(heavy_model, particle_first, config) - score_parse(heavy_model, shifted, config)
            assert gap == pytest.approx(math.log(1 / 2))


class TestDecoderService:
    """Test batch decoding"""

    @pytest.mark.unit
    def test_workers_do_not_change_results(self, analyses_corpus, analyses_model):
        sentences = [s.surfaces for s in analyses_corpus]
        serial = DecoderService(analyses_model, DecoderConfig(n_best=2)).decode_many(sentences)
        threaded = DecoderService(analyses_model, DecoderConfig(n_best=2, workers=4)).decode_many(sentences)
        assert [[(p.states, p.score) for p in ps] for ps in serial] == [
            [(p.states, p.score) for p in ps] for ps in threaded
        ]

    @pytest.mark.unit
    def test_tolerant_batch(self, analyses_model):
        service = DecoderService(analyses_model, DecoderConfig(workers=2))
        empty, parsed = service.decode_many([[], ["I", "saw", "the", "cat"]], tolerant=True)
        assert empty == [] and len(parsed) == 1
        with pytest.raises(EmptySentenceError):
            service.decode_many([[], ["I", "saw", "the", "cat"]])

    @pytest.mark.unit
    def test_format(self, analyses_model):
        service = DecoderService(analyses_model, DecoderConfig(n_best=2))
        sentence = ["I", "saw", "the", "cat"]
        lines = format_parses(sentence, service.decode(sentence), ranked=True).splitlines()
        assert lines[:3] == ["# text = I saw the cat", "# rank=1", "I\tS [ ]"]
        assert lines[6].startswith("# logprob=")

    @pytest.mark.unit
    def test_format_no_parse(self):
        assert format_parses(["a", "b"], []) == "# text = a b\n# NOPARSE\n"
