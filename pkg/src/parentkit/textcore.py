"""String primitives: tokenisation, n-gram multisets, token-level LCS.

Tokenisation is deliberately minimal: lowercase, then split on unicode
whitespace. Punctuation stays attached to its word ("missouri," is one
token). Every score this package produces depends on this choice, so the
tokenizer is selectable by name (see :data:`TOKENIZERS`) and recorded in
reports.
"""
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import _kernels

TokenSeq = Tuple[str, ...]
NGram = Tuple[str, ...]


def tokenize(text: str) -> TokenSeq:
    """Lowercase ``text`` and split on whitespace.

    >>> tokenize("Herculaneum, Missouri")
    ('herculaneum,', 'missouri')
    """
    return tuple(text.lower().split())


_PUNCT_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)


def tokenize_punct(text: str) -> TokenSeq:
    # stricter alternative: punctuation marks become their own tokens
    return tuple(_PUNCT_RE.findall(text.lower()))


TOKENIZERS: Dict[str, Callable[[str], TokenSeq]] = {
    "whitespace": tokenize,
    "punct": tokenize_punct,
}


def get_tokenizer(name: str) -> Callable[[str], TokenSeq]:
    try:
        return TOKENIZERS[name]
    except KeyError:
        raise ValueError(
            f"unknown tokenizer {name!r}; choose from {sorted(TOKENIZERS)}"
        ) from None


@dataclass(frozen=True)
class NGramCounts:
    """Multiset of n-grams of a single order."""

    order: int
    counts: Mapping[NGram, int] = field(default_factory=dict)

    def __getitem__(self, gram: NGram) -> int:
        return self.counts.get(gram, 0)

    def __contains__(self, gram) -> bool:
        return gram in self.counts

    def __iter__(self) -> Iterator[NGram]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def items(self):
        return self.counts.items()

    def total(self) -> int:
        return sum(self.counts.values())


def ngrams(tokens: Sequence[str], n: int) -> NGramCounts:
    """Count all contiguous windows of length ``n`` (no padding)."""
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    tokens = tuple(tokens)
    counts = Counter(tokens[i:i + n] for i in range(len(tokens) - n + 1))
    return NGramCounts(n, dict(counts))


def encode(tokens: Sequence[str], vocab: Dict[str, int]) -> np.ndarray:
    """Map tokens to integer ids, growing ``vocab`` as needed."""
    ids = np.empty(len(tokens), dtype=np.int64)
    for i, tok in enumerate(tokens):
        idx = vocab.get(tok)
        if idx is None:
            idx = vocab[tok] = len(vocab)
        ids[i] = idx
    return ids


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of the longest common token subsequence of ``a`` and ``b``."""
    if not a or not b:
        return 0
    vocab: Dict[str, int] = {}
    return int(_kernels.lcs_len(encode(a, vocab), encode(b, vocab)))


def lcs_lengths(segments: Sequence[Sequence[str]], b: Sequence[str]) -> np.ndarray:
    """LCS of every sequence in ``segments`` against the same ``b``.

    One kernel call for the whole batch; used by table recall where every
    record value is matched against one generation.
    """
    vocab: Dict[str, int] = {}
    target = encode(b, vocab)
    offsets = np.zeros(len(segments) + 1, dtype=np.int64)
    for k, seg in enumerate(segments):
        offsets[k + 1] = offsets[k] + len(seg)
    flat = encode([tok for seg in segments for tok in seg], vocab)
    return _kernels.lcs_many(flat, offsets, target)


def geometric_mean(values: Sequence[float], weights: Optional[Sequence[float]] = None) -> float:
    """Geometric mean of values in [0, 1]; any zero value gives 0.

    With ``weights`` the mean is weighted (weights are renormalised).
    """
    values = list(values)
    if not values:
        raise ValueError("geometric_mean of an empty sequence")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"geometric_mean expects values in [0, 1], got {v}")
    if weights is not None:
        if len(weights) != len(values):
            raise ValueError("weights and values differ in length")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        # zero-weight entries do not take part, not even a zero value
        pairs = [(v, w) for v, w in zip(values, weights) if w > 0]
        if not pairs:
            raise ValueError("weights must sum to a positive number")
        values = [v for v, _ in pairs]
        weights = [w for _, w in pairs]
    if any(v == 0.0 for v in values):
        return 0.0
    if weights is None:
        mean = math.prod(values) ** (1.0 / len(values))
    else:
        wsum = math.fsum(weights)
        mean = math.exp(math.fsum(w * math.log(v) for v, w in zip(values, weights)) / wsum)
    # rounding can push the result a ulp outside the input range
    return min(max(mean, min(values)), max(values))
