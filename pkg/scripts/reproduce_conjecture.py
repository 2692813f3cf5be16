"""Run the component check over a grid of (n, k) and tabulate the outcome.

    python scripts/reproduce_conjecture.py                      # n <= 7, all k
    python scripts/reproduce_conjecture.py --n-max 10 --k 2 --jobs 4 --out reports

Writes one JSON/CSV report pair per case into --out (if given) and prints a
summary table.  Exit status is 0 iff every case verifies.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from mustafin.dimension import verify_conjecture


@dataclass
class GridConfig:
    n_min: int = 2
    n_max: int = 7
    k: int | None = None          # restrict to one k; None runs every 0 < k < n
    modes: tuple[str, ...] = ("full", "reduced")
    jobs: int = 1
    out: Path | None = None

    def cases(self):
        for n in range(self.n_min, self.n_max + 1):
            ks = [self.k] if self.k is not None else range(1, n)
            for k in ks:
                if 0 < k < n:
                    yield n, k


def main(cfg: GridConfig) -> int:
    ok = True
    print(f"{'n':>3} {'k':>3} {'mode':>8} {'classes':>8} {'checked':>8} {'verdict':>8} {'secs':>7}")
    for n, k in cfg.cases():
        for mode in cfg.modes:
            t0 = time.perf_counter()
            rep = verify_conjecture(n, k, mode, jobs=cfg.jobs)
            dt = time.perf_counter() - t0
            ok &= rep.verdict
            print(f"{n:>3} {k:>3} {mode:>8} {len(rep.records):>8} {rep.checked:>8} "
                  f"{str(rep.verdict):>8} {dt:>7.2f}", flush=True)
            if cfg.out is not None:
                cfg.out.mkdir(parents=True, exist_ok=True)
                stem = cfg.out / f"verify_{n}_{k}_{mode}"
                stem.with_suffix(".json").write_text(json.dumps(rep.to_json(), indent=1))
                stem.with_suffix(".csv").write_text(rep.to_csv())
    print("all cases verified" if ok else "SOME CASES FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--mode", choices=("full", "reduced", "both"), default="both")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path, default=None)
    a = p.parse_args()
    modes = ("full", "reduced") if a.mode == "both" else (a.mode,)
    sys.exit(main(GridConfig(a.n_min, a.n_max, a.k, modes, a.jobs, a.out)))
