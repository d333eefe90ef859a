"""Command line entry point: ``parentkit score | split | pipeline ...``.

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""
import argparse
import logging
import sys

from .dataio import jsonl_text, load_instances, load_outputs, write_text
from .parent import DEFAULT_N_MAX
from .pipeline import Workspace
from .proedit import extract_parts
from .report import build_report, render, version_string
from .splitrules import DEFAULT_SEP, MANY_SEP_CHOICES
from .textcore import TOKENIZERS, get_tokenizer

log = logging.getLogger("parentkit")


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _lambda_arg(text):
    if text == "auto":
        return None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'auto' or a number in [0, 1]") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("lambda must lie in [0, 1]")
    return value


def _on_off(text):
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _emit(text, out):
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_score(args):
    tokenizer = get_tokenizer(args.tokenizer)
    instances = load_instances(args.instances, tokenizer)
    outputs = load_outputs(args.generations)
    report = build_report(
        instances, outputs,
        sep=args.sep, n_max=args.n_max, lam=args.lam,
        many_sep_second=args.many_sep_second, smooth_bleu=args.smooth_bleu,
        tokenizer_name=args.tokenizer, tokenizer=tokenizer,
        label=args.label or args.generations, workers=args.workers,
    )
    _emit(render(report, args.format), args.out)
    return 0


def cmd_split(args):
    outputs = load_outputs(args.outputs)
    parts, hist = extract_parts(outputs, args.sep, args.many_sep_second)
    rows = (
        {"id": k, "first": p.first, "second": p.second, "sep_count": p.sep_count}
        for k, p in parts.items()
    )
    _emit(jsonl_text(rows), args.out)
    print("separator counts: " + ", ".join(f"{k}={hist.get(k, 0)}" for k in ("0", "1", "many")),
          file=sys.stderr)
    return 0


def cmd_pipeline(args):
    if args.action == "init":
        ws = Workspace.create(args.workdir, args.instances, args.sep, args.many_sep_second,
                              args.n_max, args.tokenizer)
        summary = ws.make_dataset(0)
        ws.save()
        print(f"stage 0: wrote {summary.written} rows, skipped {len(summary.skipped)}")
        return 0

    ws = Workspace.open(args.workdir)
    if args.action == "make-dataset":
        summary = ws.make_dataset(args.stage)
        ws.save()
        print(f"stage {summary.stage_index}: wrote {summary.written} rows, skipped {len(summary.skipped)}")
    elif args.action == "ingest-outputs":
        ws.ingest_outputs(args.stage, args.outputs)
        ws.save()
        print(f"stage {args.stage}: outputs ingested")
    elif args.action == "score-stage":
        scores = ws.score_stage(args.stage, lam=args.lam, smooth_bleu=args.smooth_bleu)
        ws.save()
        first = scores["first"]["parent"]
        print(f"stage scored: first-part P={first['precision']:.6f} R={first['recall']:.6f} "
              f"F1={first['f1']:.6f}")
    elif args.action == "status":
        for entry in ws.stages:
            scores = entry["scores"]
            if scores is None:
                state = "outputs ingested" if entry["outputs"] else "awaiting outputs"
                print(f"stage {entry['stage_index']}: {state}")
            else:
                f, s = scores["first"]["parent"], scores["second"]["parent"]
                print(f"stage {entry['stage_index']}: first F1={f['f1']:.6f} second F1={s['f1']:.6f}")
        decision = ws.decision()
        if decision is None:
            print("decision: none (no stage scored yet)")
        else:
            print(f"decision: {'continue' if decision.proceed else 'stop'} ({decision.reason})")
    return 0


def build_parser():
    parser = _Parser(prog="parentkit", description=__doc__.splitlines()[0],
                     formatter_class=argparse.RawTextHelpFormatter)
    parser.add_argument("--version", action="version", version=version_string())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_tokenizer(p):
        p.add_argument("--tokenizer", choices=sorted(TOKENIZERS), default="whitespace")

    def add_split_opts(p, sep_default):
        p.add_argument("--sep", default=sep_default)
        p.add_argument("--many-sep-second", choices=MANY_SEP_CHOICES, default="first")

    def add_metric_opts(p):
        p.add_argument("--lambda", dest="lam", type=_lambda_arg, default=None, metavar="auto|FLOAT")
        p.add_argument("--smooth-bleu", type=_on_off, default=False, metavar="on|off")

    p = sub.add_parser("score", help="BLEU + PARENT report for a generations file")
    p.add_argument("--instances", required=True)
    p.add_argument("--generations", required=True)
    add_split_opts(p, None)
    p.add_argument("--n-max", type=_positive_int, default=DEFAULT_N_MAX)
    add_metric_opts(p)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--out")
    p.add_argument("--label")
    p.add_argument("--workers", type=_positive_int, default=1)
    add_tokenizer(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("split", help="split model outputs into first/second parts")
    p.add_argument("--outputs", required=True)
    add_split_opts(p, DEFAULT_SEP)
    p.add_argument("--out")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("pipeline", help="drive the iterative progressive-edit datasets")
    actions = p.add_subparsers(dest="action", required=True, parser_class=_Parser)

    a = actions.add_parser("init")
    a.add_argument("--instances", required=True)
    a.add_argument("--workdir", required=True)
    add_split_opts(a, DEFAULT_SEP)
    a.add_argument("--n-max", type=_positive_int, default=DEFAULT_N_MAX)
    add_tokenizer(a)

    a = actions.add_parser("make-dataset")
    a.add_argument("--workdir", required=True)
    a.add_argument("--stage", type=int)

    a = actions.add_parser("ingest-outputs")
    a.add_argument("--workdir", required=True)
    a.add_argument("--stage", type=int, required=True)
    a.add_argument("--outputs", required=True)

    a = actions.add_parser("score-stage")
    a.add_argument("--workdir", required=True)
    a.add_argument("--stage", type=int)
    add_metric_opts(a)

    a = actions.add_parser("status")
    a.add_argument("--workdir", required=True)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:  # ValidationError and friends
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
