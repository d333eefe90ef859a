"""PARENT: table-aware n-gram precision, dual recall and F1.

Per instance, with generation G, reference R and table T:

* precision for order n credits each generated n-gram g with
  ``p + (1 - p) * w(g)`` where ``p = min(#G(g), #R(g)) / #G(g)`` and
  ``w(g)`` is the word-overlap entailment probability (fraction of g's
  tokens found anywhere in T). Orders are combined by geometric mean.
* reference recall is the entailment-weighted clipped recall of reference
  n-grams, combined over orders the same way.
* table recall averages ``LCS(value_k, G) / |value_k|`` over the records.
* recall is ``ref_recall ** (1 - lam) * table_recall ** lam`` where by
  default ``lam = 1 - table_recall(R, T)``: the better the reference
  already covers the table, the more weight reference recall receives.

Degenerate cases never raise: orders without n-grams (or with zero
recall denominator) are skipped, an empty generation gets precision 0,
and ``0/0`` F1 is 0.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .errors import CorpusMismatchError, ValidationError
from .table import Table, table_token_set, validate_nonempty
from .textcore import NGram, TokenSeq, geometric_mean, lcs_lengths, ngrams

DEFAULT_N_MAX = 4


@dataclass(frozen=True)
class Instance:
    id: str
    table: Table
    reference: TokenSeq
    generation: TokenSeq = ()
    target_text: str = ""


@dataclass(frozen=True)
class ParentScore:
    precision: float
    recall: float
    recall_vs_reference: float
    recall_vs_table: float
    lam: float
    f1: float
    per_n_precision: Tuple[Tuple[int, Optional[float]], ...] = ()


@dataclass(frozen=True)
class CorpusScore:
    mean_precision: float
    mean_recall: float
    mean_f1: float
    n_instances: int

    def as_dict(self) -> Dict[str, float]:
        return {
            "precision": self.mean_precision,
            "recall": self.mean_recall,
            "f1": self.mean_f1,
            "n_instances": self.n_instances,
        }


def entailment_prob(gram: NGram, table: Table, support: Optional[FrozenSet[str]] = None) -> float:
    """Word-overlap entailment: share of the n-gram's tokens present in the table."""
    if not gram:
        raise ValueError("entailment_prob needs a non-empty n-gram")
    if support is None:
        support = table_token_set(table)
    return sum(1 for tok in gram if tok in support) / len(gram)


def precision_n(gen: TokenSeq, ref: TokenSeq, table: Table, n: int,
                support: Optional[FrozenSet[str]] = None) -> Optional[float]:
    """Entailed precision of order ``n``; ``None`` when ``gen`` has no n-grams."""
    gen_counts = ngrams(gen, n)
    if not gen_counts:
        return None
    ref_counts = ngrams(ref, n)
    if support is None:
        support = table_token_set(table)
    num = []
    den = 0
    for gram, count in gen_counts.items():
        in_ref = min(count, ref_counts[gram]) / count
        credit = in_ref + (1.0 - in_ref) * entailment_prob(gram, table, support)
        credit = min(credit, 1.0)  # interpolation may round a ulp above 1
        num.append(credit * count)
        den += count
    return math.fsum(num) / den


def _reference_recall_orders(gen, ref, table, n_max, support):
    per_order = []
    for n in range(1, n_max + 1):
        ref_counts = ngrams(ref, n)
        if not ref_counts:
            continue
        gen_counts = ngrams(gen, n)
        num = []
        den = []
        for gram, count in ref_counts.items():
            w = entailment_prob(gram, table, support)
            num.append(min(count, gen_counts[gram]) * w)
            den.append(count * w)
        den_total = math.fsum(den)
        if den_total == 0.0:
            continue
        per_order.append((n, math.fsum(num) / den_total))
    return per_order


def _combine(per_order, order_weights):
    values = [v for _, v in per_order]
    weights = None
    if order_weights is not None:
        weights = [order_weights[n - 1] for n, _ in per_order]
    return geometric_mean(values, weights)


def reference_recall(gen: TokenSeq, ref: TokenSeq, table: Table, n_max: int = DEFAULT_N_MAX,
                     support: Optional[FrozenSet[str]] = None,
                     order_weights: Optional[Sequence[float]] = None) -> float:
    """Entailment-weighted recall of the reference's n-grams by the generation."""
    if support is None:
        support = table_token_set(table)
    per_order = _reference_recall_orders(gen, ref, table, n_max, support)
    if not per_order:
        return 1.0 if tuple(gen) == tuple(ref) else 0.0
    return _combine(per_order, order_weights)


def table_recall(gen: TokenSeq, table: Table) -> float:
    """Mean LCS coverage of each record value by ``gen``."""
    validate_nonempty(table)
    values = table.value_tokens()
    hits = lcs_lengths(values, gen)
    return math.fsum(int(h) / len(v) for h, v in zip(hits, values)) / len(values)


def lambda_for(instance: Instance) -> float:
    validate_nonempty(instance.table, instance.id)
    lam = 1.0 - table_recall(instance.reference, instance.table)
    return min(1.0, max(0.0, lam))


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def parent_instance(instance: Instance, n_max: int = DEFAULT_N_MAX, lam: Optional[float] = None,
                    order_weights: Optional[Sequence[float]] = None) -> ParentScore:
    """Score one instance.

    ``lam`` fixes the recall blend weight instead of deriving it from the
    reference; ``order_weights`` (length ``n_max``) replaces the uniform
    weighting of n-gram orders.
    """
    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1, got {n_max}")
    if order_weights is not None and len(order_weights) != n_max:
        raise ValidationError("order_weights must have exactly n_max entries")
    if not instance.reference:
        raise ValidationError(f"instance {instance.id!r} has an empty reference")
    validate_nonempty(instance.table, instance.id)
    if lam is not None and not 0.0 <= lam <= 1.0:
        raise ValidationError(f"lambda must lie in [0, 1], got {lam}")

    gen, ref, table = instance.generation, instance.reference, instance.table
    support = table_token_set(table)

    per_n = tuple((n, precision_n(gen, ref, table, n, support)) for n in range(1, n_max + 1))
    present = [(n, p) for n, p in per_n if p is not None]
    precision = _combine(present, order_weights) if present else 0.0

    r_ref = reference_recall(gen, ref, table, n_max, support, order_weights)
    r_tab = table_recall(gen, table)
    if lam is None:
        lam = lambda_for(instance)
    recall = (r_ref ** (1.0 - lam)) * (r_tab ** lam)

    return ParentScore(
        precision=precision,
        recall=recall,
        recall_vs_reference=r_ref,
        recall_vs_table=r_tab,
        lam=lam,
        f1=f1_score(precision, recall),
        per_n_precision=per_n,
    )


def attach_generations(instances: Sequence[Instance],
                       generations: Mapping[str, TokenSeq]) -> List[Instance]:
    """Pair every instance with its generation, checking the id sets agree."""
    seen = set()
    dupes = set()
    for inst in instances:
        if inst.id in seen:
            dupes.add(inst.id)
        seen.add(inst.id)
    if dupes:
        raise ValidationError("duplicate instance ids: " + ", ".join(sorted(dupes)))
    missing = seen - set(generations)
    extra = set(generations) - seen
    if missing or extra:
        raise CorpusMismatchError("generations do not match instances", missing, extra)
    return [replace(inst, generation=tuple(generations[inst.id])) for inst in instances]


def mean_scores(scored: Sequence[Tuple[str, ParentScore]]) -> CorpusScore:
    if not scored:
        raise ValidationError("cannot average an empty corpus")
    # reduce in id order; fsum is exactly rounded, so order cannot matter anyway
    ordered = [s for _, s in sorted(scored, key=lambda pair: pair[0])]
    k = len(ordered)
    return CorpusScore(
        mean_precision=math.fsum(s.precision for s in ordered) / k,
        mean_recall=math.fsum(s.recall for s in ordered) / k,
        mean_f1=math.fsum(s.f1 for s in ordered) / k,
        n_instances=k,
    )


def score_corpus(instances: Sequence[Instance], generations: Mapping[str, TokenSeq],
                 n_max: int = DEFAULT_N_MAX, lam: Optional[float] = None,
                 order_weights: Optional[Sequence[float]] = None,
                 workers: int = 1) -> Tuple[CorpusScore, List[ParentScore]]:
    """Corpus means plus the per-instance scores (in input order)."""
    paired = attach_generations(instances, generations)

    def one(inst):
        return parent_instance(inst, n_max=n_max, lam=lam, order_weights=order_weights)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(one, paired))
    else:
        scores = [one(inst) for inst in paired]
    corpus = mean_scores([(inst.id, s) for inst, s in zip(paired, scores)])
    return corpus, scores


def parent_corpus(instances: Sequence[Instance], generations: Mapping[str, TokenSeq],
                  n_max: int = DEFAULT_N_MAX, lam: Optional[float] = None,
                  order_weights: Optional[Sequence[float]] = None,
                  workers: int = 1) -> CorpusScore:
    return score_corpus(instances, generations, n_max, lam, order_weights, workers)[0]
