"""Slow, independent reference implementations used only by tests.

Nothing here imports the package's scoring code; every quantity is
recomputed from the raw token lists.
"""
import math
from functools import lru_cache
from itertools import combinations


def is_subsequence(sub, seq):
    it = iter(seq)
    return all(tok in it for tok in sub)


def lcs_bruteforce(a, b):
    """Largest k such that some k-subset of the shorter sequence occurs in the longer."""
    a, b = list(a), list(b)
    if len(a) > len(b):
        a, b = b, a
    for k in range(len(a), 0, -1):
        for idx in combinations(range(len(a)), k):
            if is_subsequence([a[i] for i in idx], b):
                return k
    return 0


def lcs_recursive(a, b):
    a, b = tuple(a), tuple(b)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))

    return go(0, 0)


def _grams(seq, n):
    return [tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)]


def _geo(values):
    if any(v == 0 for v in values):
        return 0.0
    return math.exp(sum(math.log(v) for v in values) / len(values))


def parent_oracle(records, reference, generation, n_max=4, lam=None):
    """records: list of (attribute_tokens, value_tokens)."""
    support = {t for attr, value in records for t in list(attr) + list(value)}

    def w(g):
        return len([t for t in g if t in support]) / len(g)

    precisions = []
    for n in range(1, n_max + 1):
        gg = _grams(generation, n)
        if not gg:
            continue
        rg = _grams(reference, n)
        total = 0.0
        for g in gg:  # one term per occurrence == weighting by #G(g)
            c_gen, c_ref = gg.count(g), rg.count(g)
            pr = min(c_gen, c_ref) / c_gen
            total += pr + (1 - pr) * w(g)
        precisions.append(total / len(gg))
    precision = _geo(precisions) if precisions else 0.0

    recalls = []
    for n in range(1, n_max + 1):
        rg = _grams(reference, n)
        gg = _grams(generation, n)
        num = den = 0.0
        for g in rg:
            c_ref, c_gen = rg.count(g), gg.count(g)
            num += min(c_ref, c_gen) / c_ref * w(g)
            den += w(g)
        if rg and den > 0:
            recalls.append(num / den)
    if recalls:
        r_ref = _geo(recalls)
    else:
        r_ref = 1.0 if list(generation) == list(reference) else 0.0

    def t_recall(seq):
        return sum(lcs_recursive(v, seq) / len(v) for _, v in records) / len(records)

    r_tab = t_recall(generation)
    if lam is None:
        lam = min(1.0, max(0.0, 1 - t_recall(reference)))
    recall = r_ref ** (1 - lam) * r_tab ** lam
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return {
        "precision": precision,
        "recall_vs_reference": r_ref,
        "recall_vs_table": r_tab,
        "lam": lam,
        "recall": recall,
        "f1": f1,
    }
