"""Compare the compiled and pure-Python reduction kernels on a few workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs from scratch under both backends; results must agree.
"""
import argparse
import os
import time
from pathlib import Path

from buchsbaum_lab import kernel
from buchsbaum_lab.cli import parse_ideal_text
from buchsbaum_lab.core import FreeModule, PolyRing
from buchsbaum_lab.groebner import syzygy_module
from buchsbaum_lab.homological import betti_of, ext_modules
from buchsbaum_lab.modules import quotient_ring

DATA = Path(__file__).resolve().parent.parent / "data"


def _ideal_from(name):
    return parse_ideal_text((DATA / name).read_text()).generators


def w_syz_b115():
    gens = _ideal_from("b115.ideal")
    R = gens[0].ring
    K = syzygy_module([(g,) for g in gens], FreeModule(R, [0]), degrees=[g.degree() for g in gens])
    return sorted(K.source.twists)


def w_betti_b75():
    gens = _ideal_from("b75.ideal")
    return betti_of(quotient_ring(gens[0].ring, gens)).as_list()


def w_ext_b115():
    gens = _ideal_from("b115.ideal")
    A = quotient_ring(gens[0].ring, gens)
    return [sorted(E.F0.twists) for E in ext_modules(A)]


def w_betti_quadrics():
    import random
    R = PolyRing(5)
    rng = random.Random(7)
    xs = R.gens()
    gens = []
    for _ in range(5):
        f = R.zero()
        for i, a in enumerate(xs):
            for b in xs[i:]:
                if rng.random() < 0.5:
                    f = f + (a * b).scale(rng.randrange(1, R.p))
        gens.append(f)
    return betti_of(quotient_ring(R, gens)).as_list()


WORKLOADS = [("syzygies of the b115 surface ideal", w_syz_b115),
             ("Betti table of the b75 surface", w_betti_b75),
             ("Ext modules of the b115 surface", w_ext_b115),
             ("Betti table of five random quadrics in P^4", w_betti_quadrics)]


def run(fn, backend, repeat):
    os.environ["BUCHSBAUM_LAB_BACKEND"] = backend
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernel.compiled_available():
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'workload':42s} {'python':>9s} {'compiled':>9s} {'speedup':>8s}")
    for name, fn in WORKLOADS:
        tp, rp = run(fn, "python", args.repeat)
        tc, rc = run(fn, "compiled", args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:42s} {tp:9.3f} {tc:9.3f} {tp / tc:7.1f}x")
    os.environ.pop("BUCHSBAUM_LAB_BACKEND", None)


if __name__ == "__main__":
    main()
