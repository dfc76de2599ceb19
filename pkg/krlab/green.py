from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from .semigroup import SemigroupTable

logger = logging.getLogger(__name__)


# ---- Types ----
@dataclass(frozen=True)
class GreenData:
    """
    Green's relations of a finite semigroup, as class labels per element.

    - r_of, l_of, h_of, j_of: class label of each element (labels are 0..k-1)
    - j_leq[i, j] is True iff J-class i ≤ J-class j
    - regular / max_subgroup_order / aperiodic are indexed by J-class label
    """
    r_of: np.ndarray
    l_of: np.ndarray
    h_of: np.ndarray
    j_of: np.ndarray
    j_leq: np.ndarray
    idempotents: Tuple[int, ...]
    regular: Tuple[bool, ...]
    max_subgroup_order: Tuple[int, ...]

    @property
    def n_j(self) -> int:
        return len(self.regular)

    def classes(self, labels: np.ndarray) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(int(labels.max()) + 1 if labels.size else 0)]
        for i, lab in enumerate(labels):
            out[int(lab)].append(i)
        return out

    @property
    def r_classes(self) -> List[List[int]]:
        return self.classes(self.r_of)

    @property
    def l_classes(self) -> List[List[int]]:
        return self.classes(self.l_of)

    @property
    def h_classes(self) -> List[List[int]]:
        return self.classes(self.h_of)

    @property
    def j_classes(self) -> List[List[int]]:
        return self.classes(self.j_of)

    def aperiodic_class(self, j: int) -> bool:
        return self.max_subgroup_order[j] <= 1

    @property
    def non_aperiodic_classes(self) -> List[int]:
        return [j for j in range(self.n_j) if not self.aperiodic_class(j)]

    def maximal_classes(self) -> List[int]:
        strict = self.j_leq & ~np.eye(self.n_j, dtype=bool)
        return [j for j in range(self.n_j) if not strict[j].any()]

    def class_of(self, element: int) -> int:
        return int(self.j_of[element])


def _labels(rel: np.ndarray) -> np.ndarray:
    # rows of an equivalence relation's indicator matrix identify the classes
    _, first, inverse = np.unique(rel, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    # relabel by first occurrence so class 0 holds element 0
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[inverse]


def _relabel(labels: np.ndarray) -> np.ndarray:
    seen: dict = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        out[i] = seen.setdefault(int(lab), len(seen))
    return out


def green(table: SemigroupTable) -> GreenData:
    """
    R, L, H, J classes, the J-order and maximal subgroup orders.

    Uses reachability matrices: right[x, y] iff y ∈ xS¹, left[x, y] iff y ∈ S¹x.
    J = D in a finite semigroup, so J-classes are unions of R- and L-classes.
    """
    cay = table.cayley
    n = table.size
    ar = np.arange(n)
    right = np.zeros((n, n), dtype=bool)
    left = np.zeros((n, n), dtype=bool)
    right[ar[:, None], cay] = True
    left[ar[:, None], cay.T] = True
    right[ar, ar] = True
    left[ar, ar] = True

    r_of = _labels(right & right.T)
    l_of = _labels(left & left.T)
    h_of = _relabel(r_of * (int(l_of.max()) + 1) + l_of)

    graph = nx.Graph()
    graph.add_nodes_from(("r", int(r)) for r in np.unique(r_of))
    graph.add_nodes_from(("l", int(l)) for l in np.unique(l_of))
    graph.add_edges_from((("r", int(r_of[i])), ("l", int(l_of[i]))) for i in range(n))
    comp_of = {}
    for k, comp in enumerate(nx.connected_components(graph)):
        for node in comp:
            comp_of[node] = k
    j_of = _relabel(np.array([comp_of[("r", int(r_of[i]))] for i in range(n)], dtype=np.int64))

    n_j = int(j_of.max()) + 1 if n else 0
    reps = [int(np.flatnonzero(j_of == j)[0]) for j in range(n_j)]
    j_leq = np.zeros((n_j, n_j), dtype=bool)
    for j, y in enumerate(reps):
        principal = left[right[y]].any(axis=0)
        for i, x in enumerate(reps):
            j_leq[i, j] = principal[x]

    idem = ar[cay[ar, ar] == ar]
    regular = [False] * n_j
    max_sub = [0] * n_j
    h_size = np.bincount(h_of)
    for e in idem:
        j = int(j_of[e])
        if not regular[j]:
            regular[j] = True
            max_sub[j] = int(h_size[h_of[e]])
    logger.debug("green: %d elements, %d R, %d L, %d J classes", n, r_of.max() + 1, l_of.max() + 1, n_j)
    return GreenData(
        r_of=r_of,
        l_of=l_of,
        h_of=h_of,
        j_of=j_of,
        j_leq=j_leq,
        idempotents=tuple(int(e) for e in idem),
        regular=tuple(regular),
        max_subgroup_order=tuple(max_sub),
    )


def j_poset(gd: GreenData) -> nx.DiGraph:
    """Hasse diagram of the J-order; edges point from a class to the classes it covers."""
    order = nx.DiGraph()
    order.add_nodes_from(range(gd.n_j))
    for i in range(gd.n_j):
        for j in range(gd.n_j):
            if i != j and gd.j_leq[j, i]:
                order.add_edge(i, j)
    return nx.transitive_reduction(order)


def depth(table: SemigroupTable, gd: Optional[GreenData] = None) -> int:
    """Longest chain of non-aperiodic J-classes in the J-order (0 if none)."""
    gd = gd if gd is not None else green(table)
    nodes = gd.non_aperiodic_classes
    if not nodes:
        return 0
    chain = nx.DiGraph()
    chain.add_nodes_from(nodes)
    for i in nodes:
        for j in nodes:
            if i != j and gd.j_leq[j, i]:
                chain.add_edge(i, j)
    return int(nx.dag_longest_path_length(chain)) + 1


def green_frame(table: SemigroupTable, gd: Optional[GreenData] = None) -> pd.DataFrame:
    """One row per J-class, maximal classes first."""
    gd = gd if gd is not None else green(table)
    rows = []
    hasse = j_poset(gd)
    for j, members in enumerate(gd.j_classes):
        rows.append(
            {
                "JClass": j,
                "Size": len(members),
                "RClasses": len({int(gd.r_of[i]) for i in members}),
                "LClasses": len({int(gd.l_of[i]) for i in members}),
                "Regular": gd.regular[j],
                "MaxSubgroupOrder": gd.max_subgroup_order[j],
                "Aperiodic": gd.aperiodic_class(j),
                "Ideal": bool(all(table.is_ideal(i) for i in members)),
                "Above": int(gd.j_leq[j].sum()) - 1,
                "Covers": " ".join(str(c) for c in sorted(hasse.successors(j))),
                "Sample": table.name_of(members[0]),
            }
        )
    df = pd.DataFrame(rows)
    return df.sort_values(["Above", "JClass"], kind="mergesort").reset_index(drop=True)
