"""k-subsets of [n] as Pluecker indices.

A k-subset I names the basis vector e_I of the k-th wedge power, the linear
span V_I = <e_J : J <= I>, the Schubert cell X_I and one irreducible
component.  Subsets are ordered slotwise: {i_0 < ... } <= {j_0 < ...} iff
i_t <= j_t for every t.  Coordinates of wedge lattices are always listed in
lexicographic order of the subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .apartment import LatticeSet, Vector, normalize, std_chain
from .errors import InvalidInput, NotPrincipalDownSet, ParamMismatch

__all__ = [
    "KSubset", "PlueckerIndexing", "ksubsets", "subset_leq", "subset_min",
    "top", "bottom", "wedge", "chain_wedge_rep", "wedge_chain", "schubert_index", "shift",
    "image_index", "lattice_for_index", "schubert_dim", "correspondence",
]


@dataclass(frozen=True, order=True)
class KSubset:
    elems: tuple[int, ...]
    n: int

    def __post_init__(self):
        e = self.elems
        if not e or any(a >= b for a, b in zip(e, e[1:])) or e[0] < 0 or e[-1] >= self.n:
            raise InvalidInput(f"{e} is not an increasing subset of [{self.n}]")

    @classmethod
    def of(cls, elems, n: int) -> KSubset:
        return cls(tuple(sorted(elems)), n)

    @property
    def k(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elems)) + "}"


@dataclass(frozen=True)
class PlueckerIndexing:
    """All k-subsets of [n] in lexicographic order, with the inverse map."""
    n: int
    k: int
    subsets: tuple[KSubset, ...]
    position: dict[tuple[int, ...], int] = field(compare=False, repr=False)

    @property
    def labels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(I.elems for I in self.subsets)

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)


def _check_nk(n: int, k: int) -> None:
    if not 0 < k < n:
        raise InvalidInput(f"need 0 < k < n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def ksubsets(n: int, k: int) -> PlueckerIndexing:
    _check_nk(n, k)
    subsets = tuple(KSubset(c, n) for c in itertools.combinations(range(n), k))
    return PlueckerIndexing(n, k, subsets, {I.elems: p for p, I in enumerate(subsets)})


def _same_params(I: KSubset, J: KSubset) -> None:
    if I.n != J.n or I.k != J.k:
        raise ParamMismatch(f"{I} in ({I.n},{I.k}) vs {J} in ({J.n},{J.k})")


def subset_leq(I: KSubset, J: KSubset) -> bool:
    _same_params(I, J)
    return all(i <= j for i, j in zip(I.elems, J.elems))


def subset_min(I: KSubset, J: KSubset) -> KSubset:
    """Slotwise minimum, the meet of I and J."""
    _same_params(I, J)
    return KSubset(tuple(map(min, I.elems, J.elems)), I.n)


def top(n: int, k: int) -> KSubset:
    return KSubset(tuple(range(n - k, n)), n)


def bottom(n: int, k: int) -> KSubset:
    return KSubset(tuple(range(k)), n)


def wedge(c: Vector, k: int) -> Vector:
    """Class of the k-th wedge power of a diagonal lattice.

    The exponent at e_I is the sum of the exponents of the e_i with i in I.
    """
    n = len(c)
    _check_nk(n, k)
    return normalize(sum(c[i] for i in I) for I in itertools.combinations(range(n), k))


def chain_wedge_rep(n: int, k: int, i: int, l: int = 0) -> Vector:
    """Exponents of the representative pi^l (wedge^k Lambda_i), not normalized.

    The exponent at e_I is l - #(I & {0, ..., i-1}).
    """
    _check_nk(n, k)
    if not 0 <= i < n:
        raise InvalidInput(f"chain index {i} out of range for n={n}")
    return tuple(l - sum(1 for x in I if x < i)
                 for I in itertools.combinations(range(n), k))


def wedge_chain(n: int, k: int) -> LatticeSet:
    """The set of wedge powers of the standard chain, labelled by k-subsets."""
    _check_nk(n, k)
    chain = std_chain(n)
    return LatticeSet.of((wedge(c, k) for c in chain), labels=ksubsets(n, k).labels)


def schubert_index(n: int, k: int, i: int, l: int) -> KSubset:
    """Largest subset I with at least l elements in {0, ..., i-1}.

    {i-l, ..., i-1} together with the top k-l elements {n-k+l, ..., n-1}, or
    the top subset when the two blocks would meet.
    """
    _check_nk(n, k)
    if not (0 <= i < n and 0 <= l <= min(k, i)):
        raise InvalidInput(f"no I_i^l for i={i}, l={l} at (n,k)=({n},{k})")
    if i + k < n + l:
        return KSubset(tuple(range(i - l, i)) + tuple(range(n - k + l, n)), n)
    return top(n, k)


@lru_cache(maxsize=None)
def _schubert_family(n: int, k: int) -> tuple[tuple[int, int, KSubset], ...]:
    return tuple((i, l, schubert_index(n, k, i, l))
                 for i in range(n) for l in range(min(k, i) + 1))


def shift(I: KSubset) -> KSubset:
    """I[1]: the slotwise minimum of I_i^{l-1} over all I <= I_i^l, l >= 1.

    Returns the top subset when no such (i, l) exists.
    """
    n, k = I.n, I.k
    out = top(n, k)
    for i, l, J in _schubert_family(n, k):
        if l >= 1 and subset_leq(I, J):
            out = subset_min(out, schubert_index(n, k, i, l - 1))
    return out


def image_index(c: Vector, n: int, k: int) -> KSubset:
    """The subset I with {J : c[J] = 0} = {J : J <= I}.

    Reads off the residue image of the maximal representative inside the
    wedge of the standard lattice, which is V_I.
    """
    idx = ksubsets(n, k)
    if len(c) != len(idx):
        raise InvalidInput(f"class has {len(c)} coordinates, expected {len(idx)}")
    zeros = [J for J, x in zip(idx, c) if x == 0]
    if not zeros:
        raise NotPrincipalDownSet(f"{c} is not normalized")
    apex = KSubset(tuple(max(col) for col in zip(*(J.elems for J in zeros))), n)
    if apex.elems not in {J.elems for J in zeros} or \
            any(subset_leq(J, apex) != (x == 0) for J, x in zip(idx, c)):
        raise NotPrincipalDownSet(f"zero set of {c} is not a principal down-set")
    return apex


def lattice_for_index(I: KSubset) -> Vector:
    """The unique closure class whose image index is I.

    coords[J] is the least l with J <= I[l]; iterating the shift reaches the
    top subset, where every J qualifies.
    """
    n, k = I.n, I.k
    idx = ksubsets(n, k)
    coords = [None] * len(idx)
    level, current, t = 0, I, top(n, k)
    while True:
        for p, J in enumerate(idx):
            if coords[p] is None and subset_leq(J, current):
                coords[p] = level
        if current == t:
            break
        nxt = shift(current)
        assert nxt != current, f"shift of {current} is stuck below the top"
        current, level = nxt, level + 1
    return tuple(coords)


def schubert_dim(I: KSubset) -> int:
    return sum(e - t for t, e in enumerate(I.elems))


def correspondence(n: int, k: int) -> list[tuple[KSubset, Vector, int]]:
    """(I, lattice_for_index(I), schubert_dim(I)) for every k-subset I."""
    return [(I, lattice_for_index(I), schubert_dim(I)) for I in ksubsets(n, k)]

