"""Corpus evaluation reports: BLEU, PARENT and mean lengths per output block."""
import math
from typing import Callable, Dict, Mapping, Optional, Sequence

from . import __version__, _kernels
from .bleu import corpus_bleu
from .dataio import FLOAT_DIGITS, dumps_report
from .parent import DEFAULT_N_MAX, Instance, score_corpus
from .proedit import extract_parts
from .splitrules import DEFAULT_SEP
from .textcore import TokenSeq, tokenize

METRIC_CONVENTIONS = {
    "entailment": "word-overlap",
    "precision_combination": "geometric-mean",
    "lambda_heuristic": "1 - table_recall(reference)",
    "bleu": "corpus, clipped, brevity-penalty, effective-order",
}


def _mean(values):
    values = list(values)
    return math.fsum(values) / len(values) if values else 0.0


def score_block(instances: Sequence[Instance], texts: Mapping[str, str],
                tokenizer: Callable[[str], TokenSeq], n_max: int, lam: Optional[float],
                smooth_bleu: bool, workers: int = 1) -> Dict:
    gens = {key: tokenizer(text) for key, text in texts.items()}
    parent, _ = score_corpus(instances, gens, n_max=n_max, lam=lam, workers=workers)
    bleu = corpus_bleu([(gens[inst.id], inst.reference) for inst in instances], smooth=smooth_bleu)
    return {
        "bleu": bleu.as_dict(),
        "parent": parent.as_dict(),
        "mean_generation_length": _mean(len(gens[inst.id]) for inst in instances),
    }


def build_report(instances: Sequence[Instance], outputs: Mapping[str, str], *,
                 sep: Optional[str] = None, n_max: int = DEFAULT_N_MAX,
                 lam: Optional[float] = None, many_sep_second: str = "first",
                 smooth_bleu: bool = False, tokenizer_name: str = "whitespace",
                 tokenizer: Callable[[str], TokenSeq] = tokenize,
                 label: str = "", workers: int = 1) -> Dict:
    """Score ``outputs`` against ``instances``.

    With ``sep`` the outputs are split first and the two parts are scored
    as separate blocks (``first`` / ``second``); otherwise one ``all`` block.
    """
    settings = {
        "tokenizer": tokenizer_name,
        "n_max": n_max,
        "lambda": "auto" if lam is None else lam,
        "sep": sep,
        "many_sep_second": many_sep_second,
        "smooth_bleu": smooth_bleu,
        **METRIC_CONVENTIONS,
    }
    report = {
        "label": label,
        "toolkit_version": __version__,
        "settings": settings,
        "n_instances": len(instances),
        "reference_length": _mean(len(inst.reference) for inst in instances),
    }
    if sep is None:
        report["blocks"] = {"all": score_block(instances, outputs, tokenizer, n_max, lam, smooth_bleu, workers)}
        return report

    parts, hist = extract_parts(outputs, sep, many_sep_second)
    report["sep_histogram"] = {k: hist.get(k, 0) for k in ("0", "1", "many")}
    report["blocks"] = {
        name: score_block(instances, {k: getattr(p, name) for k, p in parts.items()},
                          tokenizer, n_max, lam, smooth_bleu, workers)
        for name in ("first", "second")
    }
    return report


TSV_COLUMNS = ("block", "bleu", "precision", "recall", "f1", "length", "n_instances")


def render_tsv(report: Dict) -> str:
    fmt = f"{{:.{FLOAT_DIGITS}f}}"
    lines = [
        f"# label\t{report['label']}",
        "# reference_length\t" + fmt.format(report["reference_length"]),
        "\t".join(TSV_COLUMNS),
    ]
    for name in sorted(report["blocks"]):
        block = report["blocks"][name]
        lines.append("\t".join([
            name,
            fmt.format(block["bleu"]["score"]),
            fmt.format(block["parent"]["precision"]),
            fmt.format(block["parent"]["recall"]),
            fmt.format(block["parent"]["f1"]),
            fmt.format(block["mean_generation_length"]),
            str(block["parent"]["n_instances"]),
        ]))
    return "\n".join(lines) + "\n"


def render(report: Dict, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps_report(report)
    if fmt == "tsv":
        return render_tsv(report)
    raise ValueError(f"unknown report format {fmt!r}")


def version_string() -> str:
    conv = ", ".join(f"{k}={v}" for k, v in sorted(METRIC_CONVENTIONS.items()))
    return f"parentkit {__version__} (lcs backend: {_kernels.BACKEND}; {conv}; default sep {DEFAULT_SEP})"
