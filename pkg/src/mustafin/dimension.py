"""Dimension of the image of a component, via subset feasibility.

For a closure class L_C and a set of generators L, each generator gets a
coordinate set W_L.  The image of the component of L_C in the Mustafin
variety of the generators has dimension

    max{ h : some a in N^generators with sum(a) = h satisfies
             N - sum_{L in S} a_L > #(intersection of W_L, L in S)
             for every nonempty subset S },

where N is the number of coordinates.  Conjecture check: this maximum is
N - 1 for every class in the closure of the wedge chain.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from collections.abc import Hashable

from .apartment import (LatticeSet, Vector, chain_class, convex_closure,
                        positive_gap, span_member)
from .errors import InvalidInput, TargetNotInClosure
from .pluecker import image_index, wedge, wedge_chain

__all__ = [
    "WProfile", "WitnessVector", "ClassRecord", "ConjectureReport",
    "w_set", "feasible", "max_image_dim", "minimal_generating_subset",
    "verify_conjecture",
]

MODES = ("full", "reduced")


def w_set(lam: Vector, lam_c: Vector) -> frozenset[int]:
    """W for generator `lam`: where L_C, taken maximal inside L, has positive gap.

    This is the complement of the support of the residue image of L_C in L.
    """
    return positive_gap(lam, lam_c)


@dataclass(frozen=True)
class WProfile:
    n_coords: int
    generators: tuple[tuple[Hashable, frozenset[int]], ...]

    def __post_init__(self):
        labels = [lab for lab, _ in self.generators]
        if len(set(labels)) != len(labels):
            raise InvalidInput("generator labels must be distinct")
        for lab, w in self.generators:
            if any(not 0 <= i < self.n_coords for i in w):
                raise InvalidInput(f"W set of {lab!r} leaves [0, {self.n_coords})")

    @classmethod
    def of(cls, n_coords: int, generators) -> WProfile:
        items = generators.items() if isinstance(generators, dict) else generators
        return cls(n_coords, tuple((lab, frozenset(w)) for lab, w in items))

    @property
    def labels(self) -> list[Hashable]:
        return [lab for lab, _ in self.generators]

    def capacities(self) -> list[int]:
        """cap[S] = N - 1 - #(common W over S), indexed by nonempty bitmask S."""
        m = len(self.generators)
        sets = [w for _, w in self.generators]
        full = frozenset(range(self.n_coords))
        caps = [0] * (1 << m)
        for mask in range(1, 1 << m):
            common = full
            for j in range(m):
                if mask >> j & 1:
                    common = common & sets[j]
            caps[mask] = self.n_coords - 1 - len(common)
        return caps


@dataclass(frozen=True)
class WitnessVector:
    a: dict[Hashable, int]

    @property
    def h(self) -> int:
        return sum(self.a.values())


def satisfies(p: WProfile, a: list[int]) -> bool:
    """Check every subset constraint directly."""
    caps = p.capacities()
    for mask in range(1, len(caps)):
        if sum(x for j, x in enumerate(a) if mask >> j & 1) > caps[mask]:
            return False
    return all(x >= 0 for x in a)


def _best_vector(p: WProfile, target: int | None) -> list[int] | None:
    """Branch and bound for the largest feasible sum.

    Stops as soon as a vector with sum >= target is found.  Returns None
    when not even the zero vector is feasible.
    """
    m = len(p.generators)
    caps = p.capacities()
    if m == 0 or min(caps[1:]) < 0:
        return None
    everything = (1 << m) - 1

    # greedy start: raise each coordinate as far as the prefix constraints allow
    greedy = []
    for j in range(m):
        bit = 1 << j
        hi = min(caps[s | bit] - sum(greedy[t] for t in range(j) if s >> t & 1)
                 for s in range(bit))
        greedy.append(hi)
    best = [greedy]
    best_sum = [sum(greedy)]
    ceiling = caps[everything]
    if target is not None:
        ceiling = min(ceiling, target)
    if best_sum[0] >= ceiling:
        return greedy

    # sub[s] = sum of assigned a over bitmask s of the assigned prefix
    def search(j: int, a: list[int], sub: list[int], total: int) -> bool:
        if j == m:
            if total > best_sum[0]:
                best[0], best_sum[0] = list(a), total
            return best_sum[0] >= ceiling
        rest = everything & ~((1 << j) - 1)
        bound = total + min(caps[s | rest] - sub[s] for s in range(1 << j))
        if bound <= best_sum[0]:
            return False
        bit = 1 << j
        hi = min(caps[s | bit] - sub[s] for s in range(1 << j))
        for x in range(hi, -1, -1):
            a.append(x)
            if search(j + 1, a, sub + [v + x for v in sub], total + x):
                return True
            a.pop()
        return False

    search(0, [], [0], 0)
    return best[0]


def feasible(p: WProfile, h: int) -> WitnessVector | None:
    """A vector with sum exactly h meeting all subset constraints, if any."""
    if h < 0:
        raise InvalidInput(f"h must be nonnegative, got {h}")
    a = _best_vector(p, target=h)
    if a is None or sum(a) < h:
        return None
    # constraints only bound sums from above, so lowering entries is safe
    excess = sum(a) - h
    for j in reversed(range(len(a))):
        cut = min(excess, a[j])
        a[j] -= cut
        excess -= cut
    return WitnessVector(dict(zip(p.labels, a)))


def max_image_dim(p: WProfile) -> int:
    """Largest h with a feasible vector; -1 when no h is feasible.

    No h can exceed N - 1 (the constraint for the full generator set), so
    the search is aimed at N - 1 first.
    """
    a = _best_vector(p, target=p.n_coords - 1)
    return -1 if a is None else sum(a)


def minimal_generating_subset(chain: LatticeSet, target: Vector) -> LatticeSet:
    """Smallest subset of `chain` whose closure contains `target`.

    The zero class (wedge of the standard lattice) is always included when
    the chain has it; among subsets of equal size the lexicographically
    first is returned.
    """
    target = tuple(target)
    chain.check_class(target)
    if not span_member(chain, target):
        raise TargetNotInClosure(f"{target} is not in the closure")
    members = sorted(chain.classes)
    zero = (0,) * chain.rank
    forced = [zero] if zero in chain.classes else []
    others = [c for c in members if c not in forced]
    if target in forced:
        return chain.with_classes(forced)
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = chain.with_classes(forced + list(combo))
            if span_member(s, target):
                return s
    raise AssertionError("unreachable: the whole chain spans the target")


@dataclass(frozen=True)
class ClassRecord:
    class_id: int
    exponents: Vector
    image_index: tuple[int, ...]
    in_chain: bool
    gamma_c: tuple[int, ...]
    max_h: int
    target: int

    @property
    def passed(self) -> bool:
        return self.max_h == self.target


@dataclass(frozen=True)
class ConjectureReport:
    n: int
    k: int
    mode: str
    records: tuple[ClassRecord, ...] = field(repr=False)

    @property
    def verdict(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def checked(self) -> int:
        return sum(1 for r in self.records if not r.in_chain)

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "mode": self.mode,
            "classes": len(self.records), "checked": self.checked,
            "verdict": self.verdict,
            "records": [{
                "class_id": r.class_id,
                "exponents": list(r.exponents),
                "image_index": list(r.image_index),
                "in_chain": r.in_chain,
                "gamma_C": list(r.gamma_c),
                "max_h": r.max_h,
                "target": r.target,
                "pass": r.passed,
            } for r in self.records],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class_id", "exponents", "image_index", "gamma_C",
                    "max_h", "target", "pass"])
        for r in self.records:
            w.writerow([r.class_id, " ".join(map(str, r.exponents)),
                        " ".join(map(str, r.image_index)),
                        " ".join(map(str, r.gamma_c)),
                        r.max_h, r.target, str(r.passed).lower()])
        return buf.getvalue()


def _check_class(args) -> ClassRecord:
    n, k, mode, class_id, lam_c, chain_items = args
    chain = dict(chain_items)  # class -> chain index
    labels_chain = wedge_chain(n, k)
    if mode == "full":
        gamma = sorted(chain)
    else:
        gamma = sorted(minimal_generating_subset(labels_chain, lam_c).classes)
    n_coords = len(lam_c)
    profile = WProfile.of(n_coords, [(chain[g], w_set(g, lam_c)) for g in gamma])
    return ClassRecord(
        class_id=class_id,
        exponents=lam_c,
        image_index=image_index(lam_c, n, k).elems,
        in_chain=lam_c in chain,
        gamma_c=tuple(sorted(chain[g] for g in gamma)),
        max_h=max_image_dim(profile),
        target=n_coords - 1,
    )


def verify_conjecture(n: int, k: int, mode: str = "full", jobs: int = 1) -> ConjectureReport:
    """Check that every closure component maps onto a component.

    Classes of the wedge chain itself pass automatically but are still
    recorded (with `in_chain` set).  `mode` picks the generators: the whole
    wedge chain ("full") or a minimal subset spanning the class ("reduced").
    Records come out ordered by image index regardless of `jobs`.
    """
    if mode == "full_chain":
        mode = "full"
    if mode not in MODES:
        raise InvalidInput(f"unknown mode {mode!r}")
    if jobs < 1:
        raise InvalidInput("jobs must be >= 1")
    chain = wedge_chain(n, k)
    chain_index = {wedge(chain_class(n, i), k): i for i in range(n)}
    # order classes by image index so ids are stable
    closure = sorted(convex_closure(chain).classes, key=lambda c: image_index(c, n, k))
    items = tuple(chain_index.items())
    tasks = [(n, k, mode, cid, c, items) for cid, c in enumerate(closure)]
    if jobs == 1:
        records = [_check_class(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_check_class, tasks, chunksize=4))
    return ConjectureReport(n, k, mode, tuple(records))
