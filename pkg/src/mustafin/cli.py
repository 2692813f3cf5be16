"""Batch front end.

    mustafin chain --n 5 --k 2
    mustafin closure --input chain.json
    mustafin verify --n 7 --k 3 --mode reduced --jobs 4 --out reports/7_3
    mustafin schedule --n 5 --k 2 --target mustafin --format dot
    mustafin correspondence --n 6 --k 3 --format csv
    mustafin graph --n 5 --k 2 [--poset]

Outputs go to stdout unless --out is given.  `verify` exits nonzero iff
some class fails.  Results of (n, k) commands are cached under
$MUSTAFIN_CACHE_DIR when that variable is set.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import re
import sys
import tempfile
from pathlib import Path

from . import __version__
from .apartment import LatticeSet, convex_closure, is_convex, removable_classes, std_chain
from .dimension import verify_conjecture
from .errors import MustafinError
from .pluecker import correspondence, wedge_chain
from .scheduler import (component_graph, genestier_schedule, hasse_dot,
                        mustafin_blowup_sequence, schedule_to_dot, schedule_to_json,
                        sequence_to_stages)


_SCALAR_LIST = re.compile(r"\[[^\[\]{}]*\]")


def _dumps(obj) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=1)
    return _SCALAR_LIST.sub(lambda m: json.dumps(json.loads(m.group())), text) + "\n"


class Cache:
    """Write-once result files keyed by a hash of the run parameters.

    Each entry stores its payload with a sha256 checksum; an entry whose
    checksum does not match is discarded and recomputed.
    """

    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None

    @staticmethod
    def key(**fields) -> str:
        fields["version"] = __version__
        blob = json.dumps(fields, sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, key: str) -> dict | None:
        if self.root is None:
            return None
        path = self.root / f"{key}.json"
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        except (OSError, ValueError, KeyError, TypeError):
            return None
        return payload if digest == entry.get("checksum") else None

    def put(self, key: str, payload: dict) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"checksum": digest, "payload": payload}, fh)
        os.replace(tmp, self.root / f"{key}.json")

    def fetch(self, compute, **fields) -> dict:
        key = self.key(**fields)
        hit = self.get(key)
        if hit is not None:
            return hit
        payload = compute()
        self.put(key, payload)
        return payload


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)


def _need_nk(args) -> None:
    if args.n is None or args.k is None:
        raise MustafinError(f"`{args.command}` needs --n and --k")
    if not 0 < args.k < args.n:
        raise MustafinError(f"need 0 < k < n, got n={args.n}, k={args.k}")


def run_chain(args) -> dict:
    s = std_chain(args.n) if args.k == 1 else wedge_chain(args.n, args.k)
    return {"text": _dumps(s.to_json())}


def run_closure(args) -> tuple[str, str]:
    data = json.loads(Path(args.input).read_text())
    s = LatticeSet.from_json(data)
    closure = convex_closure(s)
    stats = (f"input: {len(s)}  closure: {len(closure)}  "
             f"removable: {len(removable_classes(closure))}  "
             f"convex: {str(is_convex(s)).lower()}\n")
    return _dumps(closure.to_json()), stats


def run_verify(args) -> dict:
    report = verify_conjecture(args.n, args.k, args.mode, jobs=args.jobs)
    return {"json": _dumps(report.to_json()), "csv": report.to_csv(),
            "verdict": report.verdict}


def run_schedule(args) -> dict:
    if args.target == "genestier":
        stages = genestier_schedule(args.n, args.k)
        labels = None
    else:
        closure = convex_closure(wedge_chain(args.n, args.k))
        zero = (0,) * closure.rank
        stages = sequence_to_stages(mustafin_blowup_sequence(closure, zero))
        labels = closure.labels
    if args.format == "dot":
        return {"text": schedule_to_dot(stages, name=args.target)}
    return {"text": _dumps(schedule_to_json(stages, labels))}


def run_correspondence(args) -> dict:
    rows = correspondence(args.n, args.k)
    if args.format == "json":
        return {"text": _dumps([{"subset": list(I.elems), "exponent_vector": list(v),
                                 "schubert_dim": d} for I, v, d in rows])}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["subset", "exponent_vector", "schubert_dim"])
    for I, v, d in rows:
        w.writerow([" ".join(map(str, I.elems)), " ".join(map(str, v)), d])
    return {"text": buf.getvalue()}


def run_graph(args) -> dict:
    if args.poset:
        return {"text": hasse_dot(args.n, args.k)}
    closure = convex_closure(wedge_chain(args.n, args.k))
    return {"text": component_graph(closure).to_dot(f"components_{args.n}_{args.k}")}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mustafin", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json",)):
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", default=None, help="output path (default: stdout)")

    common(sub.add_parser("chain", help="wedge powers of the standard chain"))
    sp = sub.add_parser("closure", help="convex closure of a lattice set JSON file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out", default=None)
    sp = sub.add_parser("verify", help="check the component bijection for (n, k)")
    common(sp, ("json", "csv"))
    sp.add_argument("--mode", choices=("full", "reduced"), default="full")
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("schedule", help="blow-up schedule")
    common(sp, ("json", "dot"))
    sp.add_argument("--target", choices=("genestier", "mustafin"), default="genestier")
    common(sub.add_parser("correspondence", help="subset / lattice table"),
           ("csv", "json"))
    sp = sub.add_parser("graph", help="component graph or subset poset as DOT")
    common(sp, ("dot",))
    sp.add_argument("--poset", action="store_true", help="Hasse diagram of the subset order")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cache = Cache(os.environ.get("MUSTAFIN_CACHE_DIR"))
    try:
        if args.command == "closure":
            text, stats = run_closure(args)
            _emit(text, args.out)
            sys.stderr.write(stats)
            return 0

        _need_nk(args)
        if args.command == "verify" and args.jobs < 1:
            raise MustafinError("--jobs must be >= 1")
        runner = {"chain": run_chain, "verify": run_verify, "schedule": run_schedule,
                  "correspondence": run_correspondence, "graph": run_graph}[args.command]
        fields = dict(command=args.command, n=args.n, k=args.k, format=args.format,
                      mode=getattr(args, "mode", None), target=getattr(args, "target", None),
                      poset=getattr(args, "poset", None))
        payload = cache.fetch(lambda: runner(args), **fields)
    except (MustafinError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"mustafin: error: {exc}\n")
        return 2

    if args.command != "verify":
        _emit(payload["text"], args.out)
        return 0
    if args.out is None:
        sys.stdout.write(payload[args.format])
    else:
        stem = Path(args.out)
        if stem.suffix in (".json", ".csv"):
            stem = stem.with_suffix("")
        _emit(payload["json"], f"{stem}.json")
        _emit(payload["csv"], f"{stem}.csv")
    verdict = payload["verdict"]
    sys.stderr.write(f"n={args.n} k={args.k} mode={args.mode}: "
                     f"{'verified' if verdict else 'FAILED'}\n")
    return 0 if verdict else 1


if __name__ == "__main__":
    sys.exit(main())
