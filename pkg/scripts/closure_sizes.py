"""Closure sizes of the wedge chain against C(n, k), with generator statistics.

    python scripts/closure_sizes.py --n-max 8

For each (n, k) prints the chain size, the closure size, C(n, k), the
number of removable classes of the closure and the largest minimal
generating subset needed by any closure class.
"""

import argparse
import time
from dataclasses import dataclass
from math import comb

from mustafin.apartment import convex_closure, removable_classes
from mustafin.dimension import minimal_generating_subset
from mustafin.pluecker import wedge_chain


@dataclass
class SizeConfig:
    n_max: int = 7
    with_generators: bool = True


def run(cfg: SizeConfig):
    print(f"{'n':>3} {'k':>3} {'chain':>6} {'closure':>8} {'C(n,k)':>7} "
          f"{'removable':>9} {'max gen':>7} {'secs':>6}")
    rows = []
    for n in range(2, cfg.n_max + 1):
        for k in range(1, n):
            t0 = time.perf_counter()
            chain = wedge_chain(n, k)
            closure = convex_closure(chain)
            rem = len(removable_classes(closure))
            gen = (max(len(minimal_generating_subset(chain, c)) for c in closure)
                   if cfg.with_generators else -1)
            dt = time.perf_counter() - t0
            rows.append((n, k, len(chain), len(closure), comb(n, k), rem, gen))
            flag = "" if len(closure) == comb(n, k) else "  <-- mismatch"
            print(f"{n:>3} {k:>3} {len(chain):>6} {len(closure):>8} {comb(n, k):>7} "
                  f"{rem:>9} {gen:>7} {dt:>6.2f}{flag}", flush=True)
    return rows


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--no-generators", action="store_true",
                   help="skip the minimal generating subset search")
    a = p.parse_args()
    run(SizeConfig(a.n_max, not a.no_generators))
