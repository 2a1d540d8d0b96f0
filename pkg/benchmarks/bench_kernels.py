"""Compare the numba kernels against the pure-numpy fallback.

Workloads are the ones the oracles run: a corpus of formulas evaluated over a
bank of small transitive models, and over every small algebra. Each pair of
outputs is checked for equality before timings are reported.

    python3 benchmarks/bench_kernels.py --repeat 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from rbl import _kernels
from rbl.algebra import _all_assignments, rbas_upto
from rbl.corpus import bpl_corpus
from rbl.kripke import model_bank
from rbl.syntax import LImp, Prod, Prop


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def relational_workload(depth: int, worlds: int):
    fs = bpl_corpus(depth)
    bank = model_bank(worlds, 2)
    prog = _kernels.Program(["p", "q"])
    for f in fs:
        prog.add(f)
    op, lhs, rhs = prog.arrays()
    args = (op, lhs, rhs, bank.succ, bank.pred, bank.val, bank.full)
    label = f"relational: {len(fs)} formulas x {bank.succ.shape[0]} models ({worlds} worlds)"
    return label, args, _kernels.relational_eval_numba, _kernels.relational_eval_numpy


def algebra_workload(size: int):
    p, q = Prop("p"), Prop("q")
    extra = [Prod(p, q), LImp(p, q), Prod(LImp(q, p), p), LImp(Prod(p, q), q)]
    fs = bpl_corpus(3)[:400] + extra
    prog = _kernels.Program(["p", "q"])
    for f in fs:
        prog.add(f)
    op, lhs, rhs = prog.arrays()
    algs = [a for a in rbas_upto(size) if a.size == size]
    jobs = [(op, lhs, rhs, a.meet, a.join, a.prod, a.rimp, a.limp, a.top, a.bot, _all_assignments(a.size, 2))
            for a in algs]
    label = f"algebra: {len(fs)} formulas x {len(algs)} algebras of size {size}"

    def run(kernel):
        return [kernel(*j) for j in jobs]

    return label, run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--worlds", type=int, default=3)
    ap.add_argument("--algebra-size", type=int, default=4)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path can run")
        return

    rows = []
    label, kargs, jit, ref = relational_workload(args.depth, args.worlds)
    t0 = time.perf_counter()
    a = jit(*kargs)  # first call compiles or loads the cache
    compile_s = time.perf_counter() - t0
    assert np.array_equal(a, ref(*kargs)), "relational kernels disagree"
    rows.append((label, compile_s, _best(lambda: jit(*kargs), args.repeat), _best(lambda: ref(*kargs), args.repeat)))

    label, run = algebra_workload(args.algebra_size)
    t0 = time.perf_counter()
    a = run(_kernels.algebra_eval_numba)
    compile_s = time.perf_counter() - t0
    b = run(_kernels.algebra_eval_numpy)
    assert all(np.array_equal(x, y) for x, y in zip(a, b)), "algebra kernels disagree"
    rows.append((label, compile_s, _best(lambda: run(_kernels.algebra_eval_numba), args.repeat),
                 _best(lambda: run(_kernels.algebra_eval_numpy), args.repeat)))

    print(f"{'workload':<62} {'first call':>10} {'numba':>9} {'numpy':>9} {'speedup':>8}")
    for label, first, nb, npy in rows:
        print(f"{label:<62} {first:>9.3f}s {nb:>8.4f}s {npy:>8.4f}s {npy / nb:>7.1f}x")


if __name__ == "__main__":
    main()
