"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

from __future__ import annotations

import argparse
import json
import random
import timeit

import numpy as np

from lconj import _pykernels, kernels
from lconj.group import dihedral, symmetric
from lconj.lattice import Lattice, lattice_m7
from lconj.verify import random_l_subgroup

try:
    from lconj import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    ("D8 / chain 4", lambda: dihedral(8), lambda: Lattice.chain([str(i) for i in range(4)])),
    ("S4 / M7", lambda: symmetric(4), lattice_m7),
    ("D24 / chain 10", lambda: dihedral(24), lambda: Lattice.chain([str(i) for i in range(10)])),
    ("S5 / chain 6", lambda: symmetric(5), lambda: Lattice.chain([str(i) for i in range(6)])),
]


def workloads(G, L, rng):
    mu = random_l_subgroup(rng, G, L)
    eta = random_l_subgroup(rng, G, L)
    eta_vals = np.minimum(eta.array, mu.array) if L.is_chain else L.meet_table[eta.array, mu.array]
    noise = np.array([rng.randrange(len(L)) for _ in G.elements()], dtype=np.intp)
    out = {
        "set_product": lambda impl: kernels.set_product(G, L, noise, eta_vals, impl=impl),
        "conjugate_by_subset": lambda impl: kernels.conjugate_by_subset(G, L, noise, eta_vals, impl=impl),
        "subgroup_closure": lambda impl: kernels.subgroup_closure(G, L, noise, impl=impl),
        "normalizer_setproduct": lambda impl: kernels.normalizer_setproduct(G, L, eta_vals, mu.array, impl=impl),
        "normalizer_conjugacy": lambda impl: kernels.normalizer_conjugacy(G, L, eta_vals, mu.array, impl=impl),
    }
    if G.order <= 8:
        # exhaustive enumeration is only feasible on tiny carriers
        bottom = np.full(G.order, L.bottom, dtype=np.intp)
        out["subgroups_between"] = lambda impl: kernels.subgroups_between(G, L, bottom, mu.array, impl=impl)
    return out


def best_of(fn, repeat: int) -> float:
    runs = timeit.repeat(fn, number=1, repeat=repeat)
    return min(runs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not built; run `pip install --no-build-isolation -e .`")

    rows = []
    for name, make_group, make_lattice in CASES:
        G, L = make_group(), make_lattice()
        for kernel, run in workloads(G, L, random.Random(args.seed)).items():
            assert np.array_equal(np.asarray(run(_pykernels)), np.asarray(run(_ckernels)))
            py = best_of(lambda: run(_pykernels), args.repeat)
            cy = best_of(lambda: run(_ckernels), args.repeat)
            rows.append({"case": name, "kernel": kernel, "python_ms": py * 1e3, "cython_ms": cy * 1e3,
                         "speedup": py / cy if cy else float("inf")})

    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'case':16} {'kernel':22} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['case']:16} {r['kernel']:22} {r['python_ms']:10.2f} {r['cython_ms']:10.3f} {r['speedup']:7.0f}x")


if __name__ == "__main__":
    main()
