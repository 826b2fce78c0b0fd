"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload is run once per backend; the best of ``--repeat`` timings is
reported along with the speedup of the compiled kernels.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import timeit

from monoreg import kernels
from monoreg.betti import FieldSpec, OracleGuard, betti_table, regularity
from monoreg.harness import CampaignConfig, Claim, run_campaign
from monoreg.monomial import RingContext, minimalize, power, Monomial


def _random_matrix(rng, rows, cols, density=0.3):
    return [[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def workloads():
    rng = random.Random(0)
    mats = [_random_matrix(rng, 60, 80) for _ in range(20)]
    ctx = RingContext(4)
    ci = minimalize([Monomial((2, 1, 0, 0)), Monomial((0, 0, 3, 0)), Monomial((0, 0, 0, 2))], ctx)
    cube = power(ci, 3)
    gens = [tuple(g) for g in cube.min_gens]
    mixed = minimalize([Monomial(rng.choices(range(3), k=5)) for _ in range(12)], RingContext(5))
    guard = OracleGuard(max_gens=64)
    gfp, q = FieldSpec.prime(32003), FieldSpec.rationals()
    small = CampaignConfig(max_vars=3, max_gens_per_ideal=2, max_exponent=3, max_power_n=3)

    return {
        "rank mod p, 20 x (60x80)": lambda: [kernels.rank_mod_p(m, 32003) for m in mats],
        "rank over Q, 20 x (60x80)": lambda: [kernels.rank_integer(m) for m in mats],
        "lcm lattice, CI cube": lambda: kernels.lcm_lattice(gens),
        "betti table GF(p), CI cube": lambda: betti_table(cube, gfp, guard),
        "betti table Q, 12 mixed gens": lambda: betti_table(mixed, q, guard),
        "regularity GF(p), CI cube": lambda: regularity(cube, gfp, guard),
        "campaign THM_2_1, 3 vars": lambda: run_campaign(small, [Claim.THM_2_1]),
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the Python fallback only", file=sys.stderr)
    previous = kernels.backend()
    rows = []
    try:
        for name, fn in workloads().items():
            row = {"workload": name}
            for b in backends:
                kernels.set_backend(b)
                row[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            if "cython" in row:
                row["speedup"] = row["python"] / row["cython"]
            rows.append(row)
    finally:
        kernels.set_backend(previous)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'workload':<32}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for row in rows:
        cells = "".join(f"{row[b] * 1e3:>10.1f}ms" for b in backends)
        speed = f"{row['speedup']:>9.1f}x" if "speedup" in row else ""
        print(f"{row['workload']:<32}{cells}{speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
