"""Slow reference implementations used only by the tests.

None of these call into the code under test beyond plain data types, so
agreement with them is real evidence rather than a tautology.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache


def norm(v):
    m = min(v)
    return tuple(x - m for x in v)


def neighbours_naive(c1, c2) -> bool:
    """Some shift puts the difference in {0, 1} and the classes differ."""
    if norm(c1) == norm(c2):
        return False
    d = [y - x for x, y in zip(c1, c2)]
    return any(all(x - s in (0, 1) for x in d)
               for s in range(min(d) - 1, max(d) + 2))


def box(n: int, bound: int):
    """All normalized vectors of length n with coordinates in [0, bound]."""
    return [v for v in itertools.product(range(bound + 1), repeat=n) if min(v) == 0]


def bfs_distances(c1, bound: int) -> dict:
    """Neighbour-graph distances from c1 to every class in the box [0, bound]."""
    verts = box(len(c1), bound)
    start = norm(c1)
    seen = {start: 0}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for w in verts:
            if w not in seen and neighbours_naive(v, w):
                seen[w] = seen[v] + 1
                todo.append(w)
    return seen


def bfs_distance(c1, c2, bound: int) -> int:
    return bfs_distances(c1, bound)[norm(c2)]


def _window(classes):
    r = max((max(v) - min(v) for v in classes), default=0)
    return range(-3 * r - 3, 3 * r + 4)


def convex_wide(classes) -> bool:
    """Convexity testing every shift in a generously wide window."""
    cs = {norm(c) for c in classes}
    win = _window(cs)
    return all(norm(tuple(max(x + a, y) for x, y in zip(c1, c2))) in cs
               for c1 in cs for c2 in cs for a in win)


def closure_naive(classes) -> set:
    """Repeat full pairwise passes with a wide shift window until nothing changes."""
    cs = {norm(c) for c in classes}
    while True:
        win = _window(cs)
        new = {norm(tuple(max(x + a, y) for x, y in zip(c1, c2)))
               for c1 in cs for c2 in cs for a in win}
        if new <= cs:
            return cs
        cs |= new


def max_sum_bruteforce(n_coords: int, wsets: list[frozenset]) -> int:
    """Largest sum over all vectors in [0, N]^m meeting every subset constraint; -1 if none."""
    m = len(wsets)
    subsets = []
    for r in range(1, m + 1):
        for S in itertools.combinations(range(m), r):
            common = set(range(n_coords))
            for j in S:
                common &= wsets[j]
            subsets.append((S, len(common)))
    best = -1
    for a in itertools.product(range(n_coords + 1), repeat=m):
        if all(n_coords - sum(a[j] for j in S) > c for S, c in subsets):
            best = max(best, sum(a))
    return best


def leq(I, J) -> bool:
    return all(i <= j for i, j in zip(I, J))


@lru_cache(maxsize=None)
def poset_rank(I: tuple, n: int) -> int:
    """Length of a longest strictly increasing chain from the bottom up to I."""
    below = [J for J in itertools.combinations(range(n), len(I)) if J != I and leq(J, I)]
    return 1 + max(poset_rank(J, n) for J in below) if below else 0


def wedge_rep(n: int, k: int, i: int, l: int = 0):
    """Exponents of pi^l (wedge^k Lambda_i) by direct counting."""
    return tuple(l - len([x for x in I if x < i]) for I in itertools.combinations(range(n), k))
