from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import Budgets, DEFAULT_BUDGETS
from .errors import CapExceeded, ElementBudgetExceeded, ValidationError
from .groups import FiniteGroup, ZeroOrElement
from .rees import LabeledPartialFunction, ReesContext

if TYPE_CHECKING:
    from .semigroup import SemigroupTable

logger = logging.getLogger(__name__)


# ---- Types ----
Entry = Optional[Tuple[int, int]]  # (index, group element) or zero


@dataclass(frozen=True)
class RowMonomial:
    """B×B matrix over G⁰ with at most one non-zero entry per row: rows[b] = (column, g)."""
    rows: Tuple[Entry, ...]

    @classmethod
    def from_lpf(cls, f: LabeledPartialFunction) -> "RowMonomial":
        return cls(rows=tuple(None if e is None else (e[1], e[0]) for e in f.edges))

    def to_lpf(self) -> LabeledPartialFunction:
        return LabeledPartialFunction(edges=tuple(None if e is None else (e[1], e[0]) for e in self.rows))

    def multiply(self, other: "RowMonomial", group: FiniteGroup) -> "RowMonomial":
        out: List[Entry] = []
        for e in self.rows:
            if e is None or other.rows[e[0]] is None:
                out.append(None)
            else:
                col, g = other.rows[e[0]]
                out.append((col, group.mul(e[1], g)))
        return RowMonomial(rows=tuple(out))


@dataclass(frozen=True)
class ColMonomial:
    """A×A matrix over G⁰ with at most one non-zero entry per column: cols[a] = (row, g)."""
    cols: Tuple[Entry, ...]

    def entry(self, row: int, col: int) -> ZeroOrElement:
        e = self.cols[col]
        if e is None or e[0] != row:
            return None
        return e[1]


@dataclass(frozen=True)
class FiberGraph:
    graph: nx.Graph

    @property
    def vertices(self) -> List[Tuple[int, int]]:
        return sorted(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
        return sorted(tuple(sorted(e)) for e in self.graph.edges)


# ---- Linked pairs ----
def _xc_column(ctx: ReesContext, x: RowMonomial, a: int) -> List[ZeroOrElement]:
    group = ctx.group
    col: List[ZeroOrElement] = []
    for e in x.rows:
        if e is None:
            col.append(None)
            continue
        c = ctx.c[e[0]][a]
        col.append(None if c is None else group.mul(e[1], c))
    return col


def _column_candidates(ctx: ReesContext, target: Sequence[ZeroOrElement]) -> List[Entry]:
    """All (a0, y) with C(b, a0)·y = target(b) for every b."""
    group = ctx.group
    first = next((b for b, v in enumerate(target) if v is not None), None)
    if first is None:
        return [None]
    found: List[Entry] = []
    for a0 in range(ctx.n_a):
        c = ctx.c[first][a0]
        if c is None:
            continue
        y = group.mul(group.inv(c), target[first])
        ok = True
        for b, t in enumerate(target):
            cb = ctx.c[b][a0]
            got = None if cb is None else group.mul(cb, y)
            if got != t:
                ok = False
                break
        if ok:
            found.append((a0, y))
    return found


def check_linked(ctx: ReesContext, x: RowMonomial, y: ColMonomial) -> bool:
    """Entry-by-entry check of CY = XC."""
    group = ctx.group
    for a in range(ctx.n_a):
        target = _xc_column(ctx, x, a)
        e = y.cols[a]
        for b in range(ctx.n_b):
            if e is None:
                got = None
            else:
                c = ctx.c[b][e[0]]
                got = None if c is None else group.mul(c, e[1])
            if got != target[b]:
                return False
    return True


def link_solve(ctx: ReesContext, x: RowMonomial) -> Optional[ColMonomial]:
    """
    The column-monomial Y with CY = XC, or None.

    Each column of Y is found independently: column a of XC must be a
    right multiple of one column of C (or zero).
    """
    cols: List[Entry] = []
    for a in range(ctx.n_a):
        cands = _column_candidates(ctx, _xc_column(ctx, x, a))
        if not cands:
            return None
        cols.append(cands[0])
    y = ColMonomial(cols=tuple(cols))
    if __debug__ and not check_linked(ctx, x, y):
        raise ValidationError("link_solve produced a matrix that is not linked")
    return y


def link_solutions(ctx: ReesContext, x: RowMonomial) -> List[ColMonomial]:
    """Every Y with CY = XC (at most one when ctx is GM)."""
    per_col = [_column_candidates(ctx, _xc_column(ctx, x, a)) for a in range(ctx.n_a)]
    return [ColMonomial(cols=tuple(c)) for c in itertools.product(*per_col)]


def in_hull(ctx: ReesContext, f: LabeledPartialFunction) -> bool:
    return link_solve(ctx, RowMonomial.from_lpf(f)) is not None


def hull_elements(ctx: ReesContext, budgets: Budgets = DEFAULT_BUDGETS) -> List[LabeledPartialFunction]:
    """Every labeled partial function on B lying in the translational hull, in lexicographic order."""
    n_b, order = ctx.n_b, ctx.group.order
    total = (order * n_b + 1) ** n_b
    if total > budgets.max_elements * 100:
        raise ElementBudgetExceeded(f"Hull enumeration would scan {total} candidates", limit=budgets.max_elements)
    choices: List[Optional[Tuple[int, int]]] = [None] + [(g, t) for t in range(n_b) for g in range(order)]
    out = []
    for edges in itertools.product(choices, repeat=n_b):
        f = LabeledPartialFunction(edges=tuple(edges))
        if in_hull(ctx, f):
            out.append(f)
    logger.debug("hull of %d points holds %d elements", n_b, len(out))
    return out


# ---- Cycle contexts ----
def make_Mk(k: int) -> List[List[int]]:
    """
    The 2k×k 0/1 matrix [cycle block ; identity block].

    Row i of the cycle block has 1 in columns i and i+1 (mod k); rows are A, columns B.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    cycle = [[1 if (j == i or j == (i + 1) % k) else 0 for j in range(k)] for i in range(k)]
    ident = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    return cycle + ident


def cycle_continuity(n: int, f: Union[Sequence[Optional[int]], dict]) -> bool:
    """
    Continuity on the n-cycle: the preimage of each vertex and each edge is
    empty, a vertex, or an edge.
    """
    if n < 3:
        raise ValueError(f"cycle_continuity needs n >= 3, got {n}")
    if isinstance(f, dict):
        f = [f.get(i) for i in range(n)]
    edges = {frozenset((i, (i + 1) % n)) for i in range(n)}

    def ok(pre: frozenset) -> bool:
        return len(pre) <= 1 or pre in edges

    for v in range(n):
        if not ok(frozenset(i for i in range(n) if f[i] == v)):
            return False
    for e in edges:
        if not ok(frozenset(i for i in range(n) if f[i] is not None and f[i] in e)):
            return False
    return True


# ---- Fibers ----
def _fibers(ctx: ReesContext, f: LabeledPartialFunction) -> Iterator[List[Tuple[int, int]]]:
    by_target: dict = {}
    for b, e in enumerate(f.edges):
        if e is not None:
            by_target.setdefault(e[1], []).append((e[0], b))
    group = ctx.group
    for sources in by_target.values():
        # fiber over (k, b2): points (k·h⁻¹, b) for every edge b -> h·b2
        for k in range(group.order):
            yield [(group.mul(k, group.inv(h)), b) for h, b in sources]


def fiber_graph(ctx: ReesContext, table: "SemigroupTable") -> FiberGraph:
    graph = nx.Graph()
    graph.add_nodes_from((g, b) for b in range(ctx.n_b) for g in range(ctx.group.order))
    for f in table.elements:
        for fiber in _fibers(ctx, f):
            if len(fiber) == 2:
                graph.add_edge(fiber[0], fiber[1])
    return FiberGraph(graph=graph)


def degree(ctx: ReesContext, table: "SemigroupTable") -> int:
    """Largest fiber over any point, for any element."""
    best = 0
    for f in table.elements:
        counts: dict = {}
        for e in f.edges:
            if e is not None:
                counts[e[1]] = counts.get(e[1], 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def anticliques(graph: Union[FiberGraph, nx.Graph], cap: int = DEFAULT_BUDGETS.anticlique_cap) -> List[Tuple]:
    """All independent vertex sets in lexicographic order (the empty set first)."""
    g = graph.graph if isinstance(graph, FiberGraph) else graph
    nodes = sorted(g.nodes)
    adj = {v: set(g.neighbors(v)) for v in nodes}
    out: List[Tuple] = []

    def walk(start: int, current: List) -> None:
        if len(out) >= cap:
            raise CapExceeded(f"More than {cap} independent sets")
        out.append(tuple(current))
        for i in range(start, len(nodes)):
            v = nodes[i]
            if any(v in adj[u] for u in current):
                continue
            current.append(v)
            walk(i + 1, current)
            current.pop()

    walk(0, [])
    return out
