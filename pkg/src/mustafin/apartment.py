"""Homothety classes of diagonal lattices in one apartment.

A diagonal lattice <pi^m_0 e_0, ..., pi^m_{N-1} e_{N-1}> is stored as its
exponent vector (m_0, ..., m_{N-1}).  Larger exponents mean smaller lattices,
so intersection is the coordinatewise maximum and multiplying by pi^a adds a
to every coordinate.  A class is represented by the unique exponent vector
with minimum 0, i.e. the largest lattice of the class inside the standard
lattice.

All functions are pure and work on plain tuples of ints; :class:`LatticeSet`
adds the coordinate labels needed for serialisation.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Iterator
from dataclasses import dataclass

from .errors import IndexMismatch, InvalidInput, NotConvex, StartNotMember

__all__ = [
    "Vector", "LatticeSet",
    "normalize", "intersect", "scale", "contains", "spread", "positive_gap",
    "is_neighbour", "distance", "segment",
    "is_convex", "convex_closure", "tropical_span", "span_member",
    "removable_classes", "elimination_order", "std_chain", "chain_class",
]

Vector = tuple[int, ...]


def _same_length(a: Vector, b: Vector) -> None:
    if len(a) != len(b):
        raise IndexMismatch(f"vectors of length {len(a)} and {len(b)}")


def normalize(v: Iterable[int]) -> Vector:
    """Canonical representative of the class of `v` (minimum coordinate 0).

    >>> normalize((2, 3, 3))
    (0, 1, 1)
    """
    v = tuple(v)
    if not v:
        raise InvalidInput("empty exponent vector")
    m = min(v)
    return tuple(x - m for x in v)


def intersect(a: Vector, b: Vector) -> Vector:
    _same_length(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def scale(v: Vector, a: int) -> Vector:
    return tuple(x + a for x in v)


def contains(outer: Vector, inner: Vector) -> bool:
    """True iff the lattice of `inner` is a sublattice of that of `outer`."""
    _same_length(outer, inner)
    return all(i >= o for o, i in zip(outer, inner))


def positive_gap(outer: Vector, inner: Vector) -> frozenset[int]:
    """Coordinates where the maximal representative of `inner` inside `outer` is strictly smaller.

    With g = inner - outer shifted to minimum 0 this is {i : g[i] > 0}, the
    support of the kernel of the residue map from inner to outer.
    """
    _same_length(outer, inner)
    g = [y - x for x, y in zip(outer, inner)]
    m = min(g)
    return frozenset(i for i, x in enumerate(g) if x > m)


def spread(v: Vector) -> int:
    return max(v) - min(v)


def _diff(c1: Vector, c2: Vector) -> Vector:
    _same_length(c1, c2)
    return tuple(y - x for x, y in zip(c1, c2))


def is_neighbour(c1: Vector, c2: Vector) -> bool:
    # distinct classes with representatives pi*L <= L' <= L
    return spread(_diff(c1, c2)) == 1


def distance(c1: Vector, c2: Vector) -> int:
    """Graph distance between two classes in the neighbour graph."""
    return spread(_diff(c1, c2))


def segment(c1: Vector, c2: Vector) -> list[Vector]:
    """The convex closure of two classes as a chain running from c1 to c2.

    The entries are the classes of pi^a L1 cap L2; consecutive entries are
    neighbours and no other pairs are.
    """
    d = _diff(c1, c2)
    return [normalize(intersect(scale(c1, a), c2))
            for a in range(max(d), min(d) - 1, -1)]


def _pair_closure(c1: Vector, c2: Vector) -> Iterator[Vector]:
    # shifts outside [min d, max d] reproduce c1 or c2
    d = tuple(y - x for x, y in zip(c1, c2))
    for a in range(min(d), max(d) + 1):
        yield normalize(tuple(max(x + a, y) for x, y in zip(c1, c2)))


@dataclass(frozen=True)
class LatticeSet:
    """A finite set of lattice classes over a common, ordered label set."""

    labels: tuple[Hashable, ...]
    classes: frozenset[Vector]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InvalidInput("coordinate labels must be distinct")
        for c in self.classes:
            if len(c) != len(self.labels):
                raise IndexMismatch(f"class {c} has {len(c)} coordinates, "
                                    f"expected {len(self.labels)}")
            if min(c) != 0:
                raise InvalidInput(f"class {c} is not normalized")

    @classmethod
    def of(cls, vectors: Iterable[Iterable[int]],
           labels: Iterable[Hashable] | None = None) -> LatticeSet:
        """Build a set from arbitrary representatives (normalized here)."""
        classes = frozenset(normalize(v) for v in vectors)
        if labels is None:
            if not classes:
                raise InvalidInput("labels are required for an empty set")
            labels = range(len(next(iter(classes))))
        return cls(tuple(labels), classes)

    def with_classes(self, classes: Iterable[Vector]) -> LatticeSet:
        return LatticeSet(self.labels, frozenset(classes))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[Vector]:
        return iter(sorted(self.classes))

    def __len__(self) -> int:
        return len(self.classes)

    def __contains__(self, c) -> bool:
        return tuple(c) in self.classes

    def check_class(self, c: Vector) -> None:
        if len(c) != self.rank:
            raise IndexMismatch(f"class {c} does not live over {self.rank} labels")

    def to_json(self) -> dict:
        return {
            "labels": [list(x) if isinstance(x, tuple) else x for x in self.labels],
            "classes": [list(c) for c in self],
        }

    @classmethod
    def from_json(cls, data: dict) -> LatticeSet:
        """Inverse of :meth:`to_json`; rejects rows that are not normalized."""
        try:
            labels = tuple(tuple(x) if isinstance(x, list) else x
                           for x in data["labels"])
            rows = [tuple(int(x) for x in row) for row in data["classes"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed lattice set: {exc}") from exc
        return cls(labels, frozenset(rows))


def is_convex(s: LatticeSet | Iterable[Vector]) -> bool:
    classes = frozenset(s.classes if isinstance(s, LatticeSet) else s)
    for c1, c2 in itertools.combinations(classes, 2):
        if any(x not in classes for x in _pair_closure(c1, c2)):
            return False
    return True


def _closure(classes: Iterable[Vector]) -> set[Vector]:
    # pairs suffice: binary max generates all finite maxima
    result = set(classes)
    frontier = list(result)
    while frontier:
        fresh = []
        for c in frontier:
            for d in list(result):
                for x in _pair_closure(c, d):
                    if x not in result:
                        result.add(x)
                        fresh.append(x)
        frontier = fresh
    return result


def convex_closure(s: LatticeSet) -> LatticeSet:
    """Smallest convex set of classes containing `s`."""
    return s.with_classes(_closure(s.classes))


def tropical_span(s: LatticeSet) -> LatticeSet:
    """All classes max_j(a_j + v_j) over integer coefficients.

    Independent of :func:`convex_closure`: the coefficients range over a
    finite window instead of iterating pairwise intersections.  Pin the
    first coefficient to 0 and let R be the largest generator spread.  Any
    combination can be shifted so the first term touches the maximum; then
    every term that also touches it has its coefficient in [-R, R], and
    a coefficient of -R hides any term that does not.
    """
    gens = sorted(s.classes)
    if not gens:
        return s
    r = max(spread(v) for v in gens)
    window = range(-r, r + 1)
    first, rest = gens[0], gens[1:]
    out = set()
    for coeffs in itertools.product(window, repeat=len(rest)):
        w = list(first)
        for a, v in zip(coeffs, rest):
            for i, x in enumerate(v):
                if x + a > w[i]:
                    w[i] = x + a
        out.add(normalize(w))
    return s.with_classes(out)


def span_member(s: LatticeSet, c: Vector) -> bool:
    """Membership of `c` in the convex closure of `s`, by tropical projection."""
    c = tuple(c)
    s.check_class(c)
    if not s.classes:
        return False
    w = None
    for v in s.classes:
        a = min(ci - vi for ci, vi in zip(c, v))
        shifted = [vi + a for vi in v]
        w = shifted if w is None else [max(x, y) for x, y in zip(w, shifted)]
    return normalize(w) == normalize(c)


def _interior_pairs(classes: frozenset[Vector]) -> dict[Vector, list[tuple[Vector, Vector]]]:
    """For each class, the pairs of other classes whose segment passes through it."""
    hits: dict[Vector, list[tuple[Vector, Vector]]] = {c: [] for c in classes}
    for c1, c2 in itertools.combinations(sorted(classes), 2):
        for x in _pair_closure(c1, c2):
            if x != c1 and x != c2 and x in hits:
                hits[x].append((c1, c2))
    return hits


def removable_classes(s: LatticeSet) -> set[Vector]:
    """Classes whose removal keeps `s` convex; these minimally generate `s`."""
    if not is_convex(s):
        raise NotConvex("removable_classes needs a convex set")
    hits = _interior_pairs(s.classes)
    return {c for c, pairs in hits.items() if not pairs}


def elimination_order(s: LatticeSet, start: Vector) -> list[Vector]:
    """Order the classes of `s` so that every prefix is convex.

    Built by peeling removable classes other than `start` off the back,
    always taking the lexicographically smallest candidate.
    """
    start = tuple(start)
    if start not in s.classes:
        raise StartNotMember(f"{start} is not in the set")
    if not is_convex(s):
        raise NotConvex("elimination_order needs a convex set")
    hits = _interior_pairs(s.classes)
    remaining = set(s.classes)
    peeled = []
    while len(remaining) > 1:
        # removing c keeps convexity iff no surviving pair passes through c
        c = min(c for c in remaining if c != start and not any(
            x in remaining and y in remaining for x, y in hits[c]))
        remaining.remove(c)
        peeled.append(c)
    return [start] + peeled[::-1]


def std_chain(n: int) -> LatticeSet:
    """The standard lattice chain Lambda_0, ..., Lambda_{n-1} in K^n.

    Lambda_i = <pi^-1 e_0, ..., pi^-1 e_{i-1}, e_i, ..., e_{n-1}>, whose
    canonical representative is i zeros followed by n - i ones.
    """
    if n < 2:
        raise InvalidInput(f"standard chain needs n >= 2, got {n}")
    return LatticeSet.of(
        ((-1,) * i + (0,) * (n - i) for i in range(n)), labels=range(n))


def chain_class(n: int, i: int) -> Vector:
    """Canonical representative of Lambda_i in K^n."""
    if not 0 <= i < n:
        raise InvalidInput(f"chain index {i} out of range for n={n}")
    return normalize((-1,) * i + (0,) * (n - i))
