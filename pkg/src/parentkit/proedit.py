"""Progressive-edit dataset construction and its stopping rule.

Stage 0 trains on each target repeated around a separator
(``target <SEP> target``). Every later stage k takes the first part of the
stage k-1 model output and prepends it to the original target
(``first_part <SEP> target``). Iteration continues while the corpus F1 of
the first parts strictly increases.

Training and decoding happen outside this package: a stage writes a
dataset file, and the model's outputs are ingested back as a file.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import CorpusMismatchError, SeparatorCollisionError, ValidationError
from .parent import CorpusScore, Instance
from .splitrules import DEFAULT_SEP, SplitOutput, sep_bucket, split_output
from .table import linearize_table

log = logging.getLogger(__name__)


def _join(left: str, right: str, sep: str) -> str:
    for part in (left, right):
        if sep in part:
            raise SeparatorCollisionError(f"text already contains separator {sep!r}: {part!r}")
    joined = f"{left} {sep} {right}"
    # guards against a separator formed across the join boundary
    if joined.count(sep) != 1:
        raise SeparatorCollisionError(f"joining around {sep!r} creates extra separators: {joined!r}")
    return joined


def make_repeated_target(target: str, sep: str = DEFAULT_SEP) -> str:
    """``"x"`` -> ``"x <SEP> x"``."""
    return _join(target, target, sep)


def make_stage_target(first_part: str, target: str, sep: str = DEFAULT_SEP) -> str:
    return _join(first_part, target, sep)


@dataclass
class DatasetSummary:
    stage_index: int
    written: int = 0
    skipped: List[Tuple[str, str]] = field(default_factory=list)


def _target_text(inst: Instance) -> str:
    return inst.target_text or " ".join(inst.reference)


def build_stage_dataset(instances: Sequence[Instance], prev_outputs: Optional[Mapping[str, str]],
                        stage_index: int, sep: str = DEFAULT_SEP,
                        many_sep_second: str = "first") -> Tuple[List[Dict[str, str]], DatasetSummary]:
    """Rows ``{"id", "input", "target"}`` for one stage, in instance order.

    Rows whose target collides with the separator are skipped and listed in
    the summary.
    """
    if stage_index < 0:
        raise ValidationError(f"stage index must be >= 0, got {stage_index}")
    if stage_index > 0:
        if prev_outputs is None:
            raise ValidationError(f"stage {stage_index} needs the outputs of stage {stage_index - 1}")
        missing = {inst.id for inst in instances} - set(prev_outputs)
        if missing:
            raise CorpusMismatchError(f"stage {stage_index - 1} outputs are incomplete", missing=missing)

    rows = []
    summary = DatasetSummary(stage_index)
    for inst in instances:
        target = _target_text(inst)
        try:
            if stage_index == 0:
                new_target = make_repeated_target(target, sep)
            else:
                first = split_output(prev_outputs[inst.id], sep, many_sep_second).first
                new_target = make_stage_target(first, target, sep)
        except SeparatorCollisionError as exc:
            log.warning("skipping %s: %s", inst.id, exc)
            summary.skipped.append((inst.id, str(exc)))
            continue
        rows.append({"id": inst.id, "input": linearize_table(inst.table), "target": new_target})
    summary.written = len(rows)
    return rows, summary


def extract_parts(outputs: Mapping[str, str], sep: str = DEFAULT_SEP,
                  many_sep_second: str = "first") -> Tuple[Dict[str, SplitOutput], Counter]:
    """Split every output; also return a histogram keyed ``"0"``, ``"1"``, ``"many"``."""
    parts = {}
    hist = Counter()
    for key, text in outputs.items():
        parts[key] = split_output(text, sep, many_sep_second)
        hist[sep_bucket(parts[key].sep_count)] += 1
    return parts, hist


@dataclass
class PipelineStage:
    stage_index: int
    dataset_path: Optional[str] = None
    outputs_path: Optional[str] = None
    first_part_scores: Optional[CorpusScore] = None
    second_part_scores: Optional[CorpusScore] = None


@dataclass(frozen=True)
class Decision:
    proceed: bool
    reason: str

    def __bool__(self):
        return self.proceed


def check_history(history: Sequence[PipelineStage]) -> None:
    for expected, stage in enumerate(history):
        if stage.stage_index != expected:
            raise ValidationError(
                f"stage indices must run 0, 1, 2, ...; position {expected} holds stage {stage.stage_index}"
            )
        if expected > 0 and history[expected - 1].outputs_path is None:
            raise ValidationError(f"stage {expected} exists but stage {expected - 1} has no outputs")


def should_continue_f1(f1_history: Sequence[float]) -> Decision:
    """Continue while the newest first-part F1 beats the previous one strictly."""
    if not f1_history:
        raise ValidationError("no scored stage yet")
    if len(f1_history) == 1:
        return Decision(True, f"only stage 0 scored (F1 {f1_history[0]:.6f}); run stage 1")
    prev, last = f1_history[-2], f1_history[-1]
    k = len(f1_history) - 1
    if last > prev:
        return Decision(True, f"stage {k} F1 {last:.6f} > stage {k - 1} F1 {prev:.6f}; continue")
    return Decision(False, f"stage {k} F1 {last:.6f} <= stage {k - 1} F1 {prev:.6f}; stop")


def should_continue(history: Sequence[PipelineStage]) -> Decision:
    if not history:
        raise ValidationError("history has no stages")
    check_history(history)
    f1s = []
    for stage in history:
        if stage.first_part_scores is None:
            raise ValidationError(f"stage {stage.stage_index} has no first-part scores")
        f1s.append(stage.first_part_scores.mean_f1)
    return should_continue_f1(f1s)
