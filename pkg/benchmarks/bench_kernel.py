#!/usr/bin/env python3
"""Benchmark the enumeration kernels against each other.

The workload is the worst case for the enumerator: queries with no
countermodel, which force a full sweep of every model in the budget
(32,768 relation/valuation combinations at three worlds and two atoms).
Run after ``pip install -e .``; if the compiled extension is missing only
the pure backend is timed.

    python3 benchmarks/bench_kernel.py [--max-worlds N] [--repeat K]
"""

import argparse
import time

from modaltab.enumeration import compile_formula, frame_mask, kernel_backends
from modaltab.semantics import FrameCondition
from modaltab.syntax import desugar, parse

QUERIES = [
    ("distribution axiom, full sweep", [], "[](p -> q) -> ([]p -> []q)", frozenset()),
    ("modal tollens, full sweep", ["p -> q"], "[]~q -> []~p", frozenset()),
    (
        "necessity argument over symmetric frames",
        ["g -> []g", "<>g"],
        "g",
        frozenset({FrameCondition.SYMMETRIC}),
    ),
    (
        "necessity argument over empty frame class (early exit)",
        ["g -> []g", "<>g"],
        "g",
        frozenset(),
    ),
]


def total_models(max_worlds: int, atom_count: int) -> int:
    return sum(2 ** (n * n) * 2 ** (n * atom_count) for n in range(1, max_worlds + 1))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-worlds", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = kernel_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"budget: {args.max_worlds} worlds, best of {args.repeat} runs per query\n")

    speedups = []
    for title, premise_texts, conclusion_text, frame in QUERIES:
        premises = [desugar(parse(t)) for t in premise_texts]
        conclusion = desugar(parse(conclusion_text))
        atoms = sorted({a for f in [*premises, conclusion] for a in _atoms(f)})
        index = {a: i for i, a in enumerate(atoms)}
        codes = tuple(compile_formula(f, index) for f in premises)
        conclusion_code = compile_formula(conclusion, index)

        timings = {}
        results = {}
        for name, backend in backends.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[name] = backend.find_first(
                    args.max_worlds, len(atoms), frame_mask(frame), codes, conclusion_code
                )
                best = min(best, time.perf_counter() - t0)
            timings[name] = best

        assert len(set(map(repr, results.values()))) == 1, "backends disagree"
        print(title)
        n_models = total_models(args.max_worlds, len(atoms))
        for name, seconds in sorted(timings.items()):
            rate = n_models / seconds if seconds else float("inf")
            print(f"  {name:12s} {seconds * 1e3:9.3f} ms   ({rate / 1e6:8.2f} M models/s ceiling)")
        if "compiled" in timings:
            ratio = timings["pure-python"] / timings["compiled"]
            speedups.append(ratio)
            print(f"  speedup      {ratio:8.1f}x")
        print()

    if speedups:
        geo = 1.0
        for s in speedups:
            geo *= s
        geo **= 1.0 / len(speedups)
        print(f"geometric-mean speedup: {geo:.1f}x over {len(speedups)} queries")


def _atoms(f):
    from modaltab.syntax import atoms_of

    return atoms_of(f)


if __name__ == "__main__":
    main()
