"""On-disk state for an iterative progressive-edit run.

Layout of a work directory::

    pipeline.json            # settings + one manifest entry per stage
    stage-0/dataset.jsonl    # {"id", "input", "target"} rows
    stage-0/outputs.jsonl    # {"id", "output"} rows, ingested from the model
    stage-1/...

Each stage entry in ``pipeline.json`` has the keys ``stage_index``,
``sep``, ``dataset``, ``outputs`` and ``scores`` (paths are relative to
the work directory).
"""
import json
import os
from typing import Dict, List, Optional

from .dataio import jsonl_text, load_instances, load_outputs, write_text
from .errors import CorpusMismatchError, InputFormatError, StageOrderError
from .parent import CorpusScore
from .proedit import Decision, PipelineStage, build_stage_dataset, extract_parts, should_continue
from .report import score_block
from .textcore import get_tokenizer

MANIFEST = "pipeline.json"


class Workspace:
    def __init__(self, workdir: str, state: Dict):
        self.workdir = workdir
        self.state = state

    # -- persistence -------------------------------------------------------
    @classmethod
    def create(cls, workdir, instances_path, sep, many_sep_second, n_max, tokenizer):
        os.makedirs(workdir, exist_ok=True)
        if os.path.exists(os.path.join(workdir, MANIFEST)):
            raise StageOrderError(f"{workdir} already holds a pipeline; refusing to re-initialise")
        state = {
            "instances": os.path.abspath(instances_path),
            "sep": sep,
            "many_sep_second": many_sep_second,
            "n_max": n_max,
            "tokenizer": tokenizer,
            "stages": [],
        }
        return cls(workdir, state)

    @classmethod
    def open(cls, workdir):
        path = os.path.join(workdir, MANIFEST)
        with open(path, encoding="utf-8") as fh:
            try:
                state = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputFormatError(f"corrupt manifest: {exc.msg}", path) from None
        return cls(workdir, state)

    def save(self):
        # full float precision here: the stopping rule compares raw F1 values
        text = json.dumps(self.state, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        write_text(os.path.join(self.workdir, MANIFEST), text)

    # -- helpers -----------------------------------------------------------
    @property
    def stages(self) -> List[Dict]:
        return self.state["stages"]

    @property
    def tokenizer(self):
        return get_tokenizer(self.state["tokenizer"])

    def instances(self):
        return load_instances(self.state["instances"], self.tokenizer)

    def path(self, rel):
        return os.path.join(self.workdir, rel)

    def stage(self, index) -> Dict:
        if not 0 <= index < len(self.stages):
            raise StageOrderError(f"stage {index} does not exist (have {len(self.stages)} stages)")
        return self.stages[index]

    # -- operations --------------------------------------------------------
    def make_dataset(self, index: Optional[int] = None):
        if index is None:
            index = len(self.stages)
        if index != len(self.stages):
            raise StageOrderError(f"next stage to build is {len(self.stages)}, not {index}")
        prev_outputs = None
        if index > 0:
            prev = self.stages[index - 1]
            if prev["outputs"] is None:
                raise StageOrderError(f"stage {index - 1} has no ingested outputs yet")
            prev_outputs = load_outputs(self.path(prev["outputs"]))
        rows, summary = build_stage_dataset(
            self.instances(), prev_outputs, index, self.state["sep"], self.state["many_sep_second"]
        )
        rel = os.path.join(f"stage-{index}", "dataset.jsonl")
        os.makedirs(self.path(f"stage-{index}"), exist_ok=True)
        write_text(self.path(rel), jsonl_text(rows))
        self.stages.append({
            "stage_index": index,
            "sep": self.state["sep"],
            "dataset": rel,
            "outputs": None,
            "scores": None,
            "skipped": [{"id": k, "reason": r} for k, r in summary.skipped],
        })
        return summary

    def ingest_outputs(self, index: int, outputs_path: str):
        entry = self.stage(index)
        if index + 1 < len(self.stages):
            raise StageOrderError(f"stage {index + 1} was already built from stage {index}'s outputs")
        outputs = load_outputs(outputs_path)
        instances = self.instances()
        ids = [inst.id for inst in instances]
        missing = set(ids) - set(outputs)
        extra = set(outputs) - set(ids)
        if missing or extra:
            raise CorpusMismatchError(f"outputs for stage {index} do not match the instances", missing, extra)
        rel = os.path.join(f"stage-{index}", "outputs.jsonl")
        write_text(self.path(rel), jsonl_text({"id": k, "output": outputs[k]} for k in ids))
        entry["outputs"] = rel
        entry["scores"] = None

    def score_stage(self, index: Optional[int] = None, lam=None, smooth_bleu=False):
        if index is None:
            index = len(self.stages) - 1
        entry = self.stage(index)
        if entry["outputs"] is None:
            raise StageOrderError(f"stage {index} has no outputs to score")
        instances = self.instances()
        outputs = load_outputs(self.path(entry["outputs"]))
        parts, hist = extract_parts(outputs, self.state["sep"], self.state["many_sep_second"])
        scores = {"sep_histogram": {k: hist.get(k, 0) for k in ("0", "1", "many")}}
        for name in ("first", "second"):
            texts = {k: getattr(p, name) for k, p in parts.items()}
            scores[name] = score_block(instances, texts, self.tokenizer, self.state["n_max"], lam, smooth_bleu)
        entry["scores"] = scores
        return scores

    def history(self) -> List[PipelineStage]:
        """Stages from 0 up to the last contiguous scored one."""
        out = []
        for entry in self.stages:
            if entry["scores"] is None:
                break
            out.append(PipelineStage(
                stage_index=entry["stage_index"],
                dataset_path=entry["dataset"],
                outputs_path=entry["outputs"],
                first_part_scores=_corpus_score(entry["scores"]["first"]["parent"]),
                second_part_scores=_corpus_score(entry["scores"]["second"]["parent"]),
            ))
        return out

    def decision(self) -> Optional[Decision]:
        hist = self.history()
        return should_continue(hist) if hist else None


def _corpus_score(d) -> CorpusScore:
    return CorpusScore(d["precision"], d["recall"], d["f1"], d["n_instances"])
