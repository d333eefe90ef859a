import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parentkit import _kernels
from parentkit.textcore import (
    NGramCounts,
    geometric_mean,
    get_tokenizer,
    lcs_length,
    lcs_lengths,
    ngrams,
    tokenize,
    tokenize_punct,
)

from oracles import lcs_bruteforce

tokens3 = st.lists(st.sampled_from(["a", "b", "c"]), max_size=8)


class TestTokenize:
    def test_empty(self):
        assert tokenize("") == ()

    def test_lowercase_split(self):
        assert tokenize("The cat The cat") == ("the", "cat", "the", "cat")

    def test_punctuation_stays_attached(self):
        assert tokenize("Herculaneum, Missouri") == ("herculaneum,", "missouri")

    def test_unicode_whitespace(self):
        assert tokenize("a b\tc\nd") == ("a", "b", "c", "d")

    @given(st.text())
    def test_idempotent_and_well_formed(self, text):
        toks = tokenize(text)
        assert tokenize(" ".join(toks)) == toks
        assert all(t and not any(ch.isspace() for ch in t) for t in toks)

    def test_punct_tokenizer(self):
        assert tokenize_punct("Herculaneum, Missouri") == ("herculaneum", ",", "missouri")
        assert get_tokenizer("punct") is tokenize_punct
        with pytest.raises(ValueError):
            get_tokenizer("bpe")


class TestNgrams:
    def test_bigrams(self):
        counts = ngrams(["a", "b", "a", "b"], 2)
        assert dict(counts.items()) == {("a", "b"): 2, ("b", "a"): 1}

    def test_shorter_than_order(self):
        assert len(ngrams(["a"], 2)) == 0

    def test_unigrams(self):
        assert dict(ngrams(["the", "cat"], 1).items()) == {("the",): 1, ("cat",): 1}

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            ngrams(["a"], 0)

    def test_missing_gram_counts_zero(self):
        assert ngrams(["a"], 1)[("z",)] == 0

    @given(st.lists(st.sampled_from("abcde"), max_size=20), st.integers(1, 6))
    def test_total_count_law(self, toks, n):
        counts = ngrams(toks, n)
        assert isinstance(counts, NGramCounts)
        assert counts.total() == max(0, len(toks) - n + 1)
        assert all(len(g) == n and c >= 1 for g, c in counts.items())


class TestLcs:
    def test_identity(self):
        x = ["p", "q", "p", "r"]
        assert lcs_length(x, x) == 4

    def test_derived_example(self):
        # exhaustive enumeration gives 2
        assert lcs_bruteforce(["a", "b", "c"], ["a", "x", "c"]) == 2
        assert lcs_length(["a", "b", "c"], ["a", "x", "c"]) == 2

    def test_empty(self):
        assert lcs_length(["a", "b"], []) == 0

    def test_matches_exhaustive_oracle_all_short_pairs(self):
        # every pair of length <= 4 over a 3-token alphabet, plus random longer ones
        seqs = [list(p) for k in range(5) for p in itertools.product("abc", repeat=k)]
        for a in seqs:
            for b in seqs[::7]:
                assert lcs_length(a, b) == lcs_bruteforce(a, b)

    @settings(max_examples=300)
    @given(tokens3, tokens3)
    def test_oracle_and_symmetry(self, a, b):
        n = lcs_length(a, b)
        assert n == lcs_bruteforce(a, b)
        assert n == lcs_length(b, a)
        assert n <= min(len(a), len(b))

    @given(tokens3, tokens3, st.sampled_from(["a", "b", "z"]))
    def test_shared_suffix_adds_one(self, a, b, tok):
        assert lcs_length(a + [tok], b + [tok]) == lcs_length(a, b) + 1

    def test_batch_matches_single(self):
        rng = random.Random(3)
        segs = [[rng.choice("abcd") for _ in range(rng.randint(1, 6))] for _ in range(20)]
        gen = [rng.choice("abcd") for _ in range(15)]
        assert list(lcs_lengths(segs, gen)) == [lcs_length(s, gen) for s in segs]


class TestKernels:
    """Both backends must agree with each other and with the oracle."""

    def _arrays(self, rng, n, m, k=4):
        return (np.array([rng.randrange(k) for _ in range(n)], dtype=np.int64),
                np.array([rng.randrange(k) for _ in range(m)], dtype=np.int64))

    def test_backend_selected(self):
        assert _kernels.BACKEND in ("numba", "numpy")

    @pytest.mark.skipif(not _kernels.NUMBA_AVAILABLE, reason="numba not installed")
    def test_numba_equals_numpy(self):
        rng = random.Random(11)
        for _ in range(500):
            a, b = self._arrays(rng, rng.randint(0, 15), rng.randint(0, 15))
            assert _kernels.lcs_len_numba(a, b) == _kernels.lcs_len_numpy(a, b)

    def test_numpy_against_oracle(self):
        rng = random.Random(5)
        for _ in range(300):
            a, b = self._arrays(rng, rng.randint(0, 8), rng.randint(0, 8), k=3)
            assert _kernels.lcs_len_numpy(a, b) == lcs_bruteforce(a.tolist(), b.tolist())

    @pytest.mark.parametrize("impl", ["numpy", "numba"])
    def test_many(self, impl):
        if impl == "numba" and not _kernels.NUMBA_AVAILABLE:
            pytest.skip("numba not installed")
        fn = getattr(_kernels, f"lcs_many_{impl}")
        flat = np.array([0, 1, 2, 2, 3], dtype=np.int64)
        offsets = np.array([0, 3, 5], dtype=np.int64)
        b = np.array([0, 2, 3], dtype=np.int64)
        assert fn(flat, offsets, b).tolist() == [2, 2]

    def test_env_flag_forces_numpy(self):
        import subprocess
        import sys

        out = subprocess.run(
            [sys.executable, "-c", "from parentkit import _kernels; print(_kernels.BACKEND)"],
            env={**__import__("os").environ, "PARENTKIT_BACKEND": "numpy"},
            capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == "numpy"


class TestGeometricMean:
    def test_examples(self):
        assert geometric_mean([0.25, 1.0]) == 0.5
        assert geometric_mean([0.37]) == 0.37
        assert geometric_mean([0.0, 0.9]) == 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            geometric_mean([])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            geometric_mean([1.5])

    def test_weights(self):
        assert geometric_mean([0.25, 1.0], [1, 1]) == pytest.approx(0.5, abs=1e-15)
        assert geometric_mean([0.25, 1.0], [1, 0]) == pytest.approx(0.25, abs=1e-15)

    @given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=8))
    def test_between_min_and_max(self, values):
        g = geometric_mean(values)
        assert min(values) <= g <= max(values)


def test_zero_weight_entry_is_ignored():
    assert geometric_mean([0.0, 0.81], [0, 2]) == pytest.approx(0.81, abs=1e-15)
    with pytest.raises(ValueError):
        geometric_mean([0.5], [0])
