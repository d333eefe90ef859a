"""Corpus BLEU-4 over pre-tokenised sequences (single reference)."""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import ValidationError
from .textcore import TokenSeq, geometric_mean, ngrams

MAX_ORDER = 4


@dataclass(frozen=True)
class BleuScore:
    score: float
    # None marks an order for which the corpus has no candidate n-grams
    per_n_precisions: Tuple[Optional[float], ...]
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    def as_dict(self):
        return {
            "score": self.score,
            "precisions": list(self.per_n_precisions),
            "brevity_penalty": self.brevity_penalty,
            "hyp_len": self.hyp_len,
            "ref_len": self.ref_len,
        }


def corpus_stats(pairs: Sequence[Tuple[TokenSeq, TokenSeq]], max_order: int = MAX_ORDER):
    """Clipped match counts, candidate totals and lengths, summed over the corpus."""
    matches = [0] * max_order
    totals = [0] * max_order
    hyp_len = ref_len = 0
    for gen, ref in pairs:
        hyp_len += len(gen)
        ref_len += len(ref)
        for n in range(1, max_order + 1):
            g = ngrams(gen, n)
            r = ngrams(ref, n)
            matches[n - 1] += sum(min(c, r[gram]) for gram, c in g.items())
            totals[n - 1] += g.total()
    return matches, totals, hyp_len, ref_len


def corpus_bleu(pairs: Sequence[Tuple[TokenSeq, TokenSeq]], smooth: bool = False,
                smooth_epsilon: float = 0.1, max_order: int = MAX_ORDER) -> BleuScore:
    """Corpus BLEU with clipped precisions and exponential brevity penalty.

    Orders for which no generation in the corpus is long enough are left
    out of the geometric mean. Any remaining order with zero matches gives a
    score of 0 unless ``smooth`` is on, in which case its numerator becomes
    ``smooth_epsilon``.
    """
    if not pairs:
        raise ValidationError("corpus_bleu needs at least one (generation, reference) pair")
    if not 0.0 < smooth_epsilon <= 1.0:
        raise ValidationError("smooth_epsilon must lie in (0, 1]")
    for _, ref in pairs:
        if not ref:
            raise ValidationError("corpus_bleu references must be non-empty")
    matches, totals, hyp_len, ref_len = corpus_stats(pairs, max_order)

    precisions: List[Optional[float]] = []
    for m, t in zip(matches, totals):
        if t == 0:
            precisions.append(None)
        elif m == 0 and smooth:
            precisions.append(smooth_epsilon / t)
        else:
            precisions.append(m / t)

    if hyp_len == 0:
        bp = 0.0
    elif hyp_len < ref_len:
        bp = math.exp(1.0 - ref_len / hyp_len)
    else:
        bp = 1.0

    present = [p for p in precisions if p is not None]
    if not present or bp == 0.0:
        score = 0.0
    else:
        score = 100.0 * bp * geometric_mean(present)
    return BleuScore(score, tuple(precisions), bp, hyp_len, ref_len)
