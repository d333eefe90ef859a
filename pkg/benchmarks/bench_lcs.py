"""Compare the numba and numpy LCS backends.

    python benchmarks/bench_lcs.py                 # kernel timings
    python benchmarks/bench_lcs.py --corpus 10000  # plus end-to-end corpus scoring per backend

Corpus scoring runs in a subprocess per backend because the backend is
fixed at import time by PARENTKIT_BACKEND.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from parentkit import _kernels

CORPUS_SNIPPET = """
import time
from parentkit import _kernels
from parentkit.parent import score_corpus
from parentkit.synth import synthetic_corpus
instances, gens = synthetic_corpus({n}, seed=1)
score_corpus(instances[:10], {{i.id: gens[i.id] for i in instances[:10]}})  # warm-up, JIT
t0 = time.perf_counter()
corpus, _ = score_corpus(instances, gens)
print(_kernels.BACKEND, time.perf_counter() - t0, corpus.mean_f1)
"""


def time_kernel(fn, pairs, repeat):
    fn(*pairs[0])  # compile / warm caches
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_table(lengths, n_pairs, vocab, repeat, seed):
    rng = np.random.default_rng(seed)
    impls = {"numpy": _kernels.lcs_len_numpy}
    if _kernels.NUMBA_AVAILABLE:
        impls["numba"] = _kernels.lcs_len_numba
    print(f"{'len':>6} " + " ".join(f"{name:>14}" for name in impls) + "   (seconds per batch, best of repeats)")
    for length in lengths:
        pairs = [(rng.integers(0, vocab, length), rng.integers(0, vocab, length)) for _ in range(n_pairs)]
        for a, b in pairs[:20]:
            vals = {name: int(fn(a, b)) for name, fn in impls.items()}
            assert len(set(vals.values())) == 1, vals
        times = {name: time_kernel(fn, pairs, repeat) for name, fn in impls.items()}
        print(f"{length:>6} " + " ".join(f"{t:>14.4f}" for t in times.values()))


def corpus_table(n):
    for backend in ("numpy", "numba"):
        env = {**os.environ, "PARENTKIT_BACKEND": backend}
        out = subprocess.run([sys.executable, "-c", CORPUS_SNIPPET.format(n=n)],
                             env=env, capture_output=True, text=True, check=True)
        name, seconds, f1 = out.stdout.split()
        print(f"corpus of {n}: backend={name:<6} {float(seconds):8.3f} s  mean F1={float(f1):.6f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lengths", type=int, nargs="+", default=[8, 32, 128, 512])
    parser.add_argument("--pairs", type=int, default=200)
    parser.add_argument("--vocab", type=int, default=20)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--corpus", type=int, default=0, help="also score a synthetic corpus of this size")
    args = parser.parse_args()

    print(f"default backend: {_kernels.BACKEND}")
    kernel_table(args.lengths, args.pairs, args.vocab, args.repeat, args.seed)
    if args.corpus:
        corpus_table(args.corpus)


if __name__ == "__main__":
    main()
