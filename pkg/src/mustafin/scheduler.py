"""Blow-up schedules for the resolution candidates, as combinatorial data.

Nothing here is geometric: a schedule is an ordered list of stages, and a
center is described by the Schubert index it comes from or by the
neighbour classes and kernel coordinates that cut it out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .apartment import (LatticeSet, Vector, elimination_order, is_convex,
                        is_neighbour, positive_gap)
from .errors import InvalidInput, NotConvex
from .pluecker import KSubset, ksubsets, schubert_dim, subset_leq

__all__ = [
    "CenterDescriptor", "BlowupStage", "ComponentGraph",
    "genestier_schedule", "mustafin_blowup_sequence", "component_graph",
    "inverse_image_components", "schedule_to_json", "schedule_to_dot",
    "sequence_to_stages", "hasse_dot",
]


@dataclass(frozen=True)
class CenterDescriptor:
    """One blow-up center.

    Genestier centers carry `schubert_index`.  Centers of the convex
    sequence carry the class being added and, for each neighbour already
    present, the kernel coordinates of the residue map into that class.
    """
    schubert_index: KSubset | None = None
    removed_class: Vector | None = None
    neighbour_data: tuple[tuple[Vector, frozenset[int]], ...] = ()

    def to_json(self, labels=None) -> dict:
        if self.schubert_index is not None:
            return {"schubert_index": list(self.schubert_index.elems),
                    "dim": schubert_dim(self.schubert_index)}

        def lab(x):
            if labels is None:
                return x
            y = labels[x]
            return list(y) if isinstance(y, tuple) else y

        return {
            "removed_class": list(self.removed_class),
            "neighbours": [{"class": list(c), "kernel": [lab(x) for x in sorted(ker)]}
                           for c, ker in self.neighbour_data],
        }


@dataclass(frozen=True)
class BlowupStage:
    stage_index: int
    centers: tuple[CenterDescriptor, ...]

    def __post_init__(self):
        if self.stage_index < 1 or not self.centers:
            raise InvalidInput("stages are numbered from 1 and need a center")


@dataclass(frozen=True)
class ComponentGraph:
    vertices: tuple[Vector, ...]
    edges: tuple[tuple[Vector, Vector], ...] = field(default=())

    def to_dot(self, name: str = "components") -> str:
        ids = {v: i for i, v in enumerate(self.vertices)}
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  v{ids[v]} [label="{" ".join(map(str, v))}"];')
        for u, v in self.edges:
            lines.append(f"  v{ids[u]} -- v{ids[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def genestier_schedule(n: int, k: int) -> list[BlowupStage]:
    """Stage i blows up the Schubert varieties of dimension i - 1, 1 <= i < k(n-k)."""
    idx = ksubsets(n, k)
    stages = []
    for i in range(1, k * (n - k)):
        centers = tuple(CenterDescriptor(schubert_index=I)
                        for I in idx if schubert_dim(I) == i - 1)
        stages.append(BlowupStage(i, centers))
    return stages


def mustafin_blowup_sequence(closure: LatticeSet, start: Vector) -> list[tuple[Vector, CenterDescriptor]]:
    """Add the classes of a convex set one at a time, keeping every prefix convex.

    Each step records the neighbours of the new class among the classes
    already added and, per neighbour, the kernel coordinates of the residue
    map from the neighbour (taken maximal inside the new class) to it.
    """
    order = elimination_order(closure, start)
    steps = []
    for i in range(1, len(order)):
        lam = order[i]
        data = tuple((c, positive_gap(lam, c))
                     for c in order[:i] if is_neighbour(c, lam))
        steps.append((lam, CenterDescriptor(removed_class=lam, neighbour_data=data)))
    return steps


def component_graph(s: LatticeSet) -> ComponentGraph:
    """Components of a convex set meet exactly when their classes are neighbours."""
    if not is_convex(s):
        raise NotConvex("component_graph needs a convex set")
    verts = tuple(s)
    edges = tuple((u, v) for u, v in itertools.combinations(verts, 2) if is_neighbour(u, v))
    return ComponentGraph(verts, edges)


def inverse_image_components(I: KSubset) -> set[KSubset]:
    return {J for J in ksubsets(I.n, I.k) if subset_leq(J, I)}


def schedule_to_json(stages: list[BlowupStage], labels=None) -> dict:
    return {"stages": [{"index": st.stage_index,
                        "centers": [c.to_json(labels) for c in st.centers]}
                       for st in stages]}


def sequence_to_stages(steps: list[tuple[Vector, CenterDescriptor]]) -> list[BlowupStage]:
    """One stage per added class."""
    return [BlowupStage(i, (c,)) for i, (_, c) in enumerate(steps, start=1)]


def schedule_to_dot(stages: list[BlowupStage], name: str = "schedule") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    prev = None
    for st in stages:
        node = f"s{st.stage_index}"
        label = "; ".join(
            str(c.schubert_index) if c.schubert_index is not None
            else " ".join(map(str, c.removed_class))
            for c in st.centers)
        lines.append(f'  {node} [shape=box, label="{st.stage_index}: {label}"];')
        if prev is not None:
            lines.append(f"  {prev} -> {node};")
        prev = node
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(n: int, k: int) -> str:
    """Hasse diagram of the slotwise order on k-subsets of [n]."""
    idx = ksubsets(n, k)
    lines = [f"digraph subsets_{n}_{k} {{", "  rankdir=BT;"]
    for p, I in enumerate(idx):
        lines.append(f'  s{p} [label="{I}"];')
    # the order is graded by schubert_dim, so covers raise it by exactly one
    for (p, I), (q, J) in itertools.permutations(enumerate(idx), 2):
        if schubert_dim(J) == schubert_dim(I) + 1 and subset_leq(I, J):
            lines.append(f"  s{p} -> s{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
