import itertools

import numpy as np
import pytest

from simpeval.errors import EmptyReference
from simpeval.ngram import BleuConfig, bleu, rouge_l

from .conftest import random_token_sequence, seq


def lcs_by_enumeration(a, b):
    """Exhaustive subsequence oracle, usable up to ~12 tokens."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    for k in range(len(short), 0, -1):
        for combo in itertools.combinations(short, k):
            it = iter(long_)
            if all(tok in it for tok in combo):  # consumes `it`: order matters
                return k
    return 0


class TestBleu:
    def test_identity_scores_100(self):
        s = seq("der", "kleine", "hund", "lief", "schnell", ".")
        assert bleu(s, s).score == 100.0

    def test_canonical_clipping_case(self):
        hyp = seq(*["the"] * 7)
        ref = seq("the", "cat", "is", "on", "the", "mat")
        result = bleu(hyp, ref)
        assert result.precisions[0] == pytest.approx(2 / 7, abs=1e-12)
        assert result.score == 0.0  # no bigram overlap, no smoothing

    def test_zero_fourgram_overlap_no_smoothing(self):
        hyp = seq("a", "b", "c", "d", "e")
        ref = seq("a", "x", "c", "y", "e")
        result = bleu(hyp, ref)
        assert result.precisions[3] == 0.0
        assert result.score == 0.0

    def test_epsilon_smoothing_gives_nonzero(self):
        hyp = seq("a", "b", "c", "d", "e")
        ref = seq("a", "x", "c", "y", "e")
        result = bleu(hyp, ref, BleuConfig(smoothing_epsilon=0.1))
        assert result.score > 0.0

    def test_empty_reference_raises(self):
        with pytest.raises(EmptyReference):
            bleu(seq("a"), seq())

    def test_empty_hypothesis_degenerate(self):
        result = bleu(seq(), seq("a", "b"))
        assert result.score == 0.0
        assert result.degenerate

    def test_brevity_penalty_only_when_short(self):
        ref = seq("a", "b", "c", "d")
        assert bleu(seq("a", "b", "c", "d", "e"), ref).brevity_penalty == 1.0
        assert bleu(ref, ref).brevity_penalty == 1.0
        short = bleu(seq("a", "b"), ref)
        assert short.brevity_penalty == pytest.approx(np.exp(1 - 4 / 2), abs=1e-12)

    def test_precisions_stay_in_unit_interval(self):
        rng = np.random.default_rng(3)
        for _ in range(60):
            hyp = random_token_sequence(rng, int(rng.integers(1, 30)), 4)
            ref = random_token_sequence(rng, int(rng.integers(1, 30)), 4)
            result = bleu(hyp, ref)
            assert all(0.0 <= p <= 1.0 for p in result.precisions)

    def test_not_symmetric(self):
        hyp = seq("a", "a", "b")
        ref = seq("a", "b", "b", "c")
        config = BleuConfig(max_order=1)
        forward = bleu(hyp, ref, config).score
        backward = bleu(ref, hyp, config).score
        assert forward > 0.0 and backward > 0.0
        assert forward != backward

    def test_unit_scale(self):
        s = seq("x", "y", "z", "w")
        assert bleu(s, s, BleuConfig(scale="unit")).score == 1.0

    def test_maximum_iff_identical(self):
        hyp = seq("a", "b", "c", "d")
        near = seq("a", "b", "c", "e")
        assert bleu(hyp, hyp).score == 100.0
        assert bleu(near, hyp).score < 100.0


class TestRougeL:
    def test_identity(self):
        s = seq("so", "ist", "es", ".")
        result = rouge_l(s, s)
        assert result.score == 1.0
        assert result.lcs_length == 4

    def test_hand_case(self):
        result = rouge_l(seq("a", "b", "c", "d"), seq("a", "c", "d"))
        assert result.lcs_length == 3
        assert result.score == pytest.approx(0.8571428571428571, abs=1e-12)

    def test_empty_hypothesis(self):
        assert rouge_l(seq(), seq("a")).score == 0.0

    def test_empty_reference(self):
        assert rouge_l(seq("a"), seq()).score == 0.0

    def test_symmetric(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            a = random_token_sequence(rng, int(rng.integers(1, 20)), 4)
            b = random_token_sequence(rng, int(rng.integers(1, 20)), 4)
            assert rouge_l(a, b).score == pytest.approx(
                rouge_l(b, a).score, abs=1e-12
            )

    def test_lcs_against_enumeration_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(60):
            a = [f"t{x}" for x in rng.integers(0, 3, int(rng.integers(0, 13)))]
            b = [f"t{x}" for x in rng.integers(0, 3, int(rng.integers(0, 13)))]
            got = rouge_l(seq(*a), seq(*b)).lcs_length if a and b else 0
            assert got == lcs_by_enumeration(a, b)

    def test_maximum_iff_identical(self):
        hyp = seq("a", "b", "c")
        other = seq("a", "b", "c", "c")
        assert rouge_l(hyp, hyp).score == 1.0
        assert rouge_l(other, hyp).score < 1.0
