from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import FormatError, RegularityError
from .groups import FiniteGroup, ZeroOrElement, g0_name, g0_parse


# ---- Types ----
Edge = Optional[Tuple[int, int]]  # (weight index, target B-index) or undefined


@dataclass(frozen=True)
class LabeledPartialFunction:
    """
    G-weighted partial map on B, i.e. a row-monomial B×B matrix over G⁰.

    edges[b] = (g, b2) encodes the edge b -> g·b2; None means b is outside the domain.
    Points of G×B are acted on from the right: (h, b)·f = (h·g, b2).
    """
    edges: Tuple[Edge, ...]

    @classmethod
    def zero(cls, size: int) -> "LabeledPartialFunction":
        return cls(edges=(None,) * size)

    @classmethod
    def identity(cls, size: int, group: FiniteGroup) -> "LabeledPartialFunction":
        return cls(edges=tuple((group.identity, b) for b in range(size)))

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def is_zero(self) -> bool:
        return all(e is None for e in self.edges)

    def domain(self) -> List[int]:
        return [b for b, e in enumerate(self.edges) if e is not None]

    def image(self) -> List[int]:
        return sorted({e[1] for e in self.edges if e is not None})

    def is_injective(self) -> bool:
        targets = [e[1] for e in self.edges if e is not None]
        return len(targets) == len(set(targets))

    def underlying(self) -> Tuple[Optional[int], ...]:
        """The partial map on B with weights forgotten."""
        return tuple(None if e is None else e[1] for e in self.edges)

    def compose(self, other: "LabeledPartialFunction", group: FiniteGroup) -> "LabeledPartialFunction":
        """Right-action product: first self, then other."""
        out: List[Edge] = []
        oe = other.edges
        for e in self.edges:
            if e is None:
                out.append(None)
                continue
            nxt = oe[e[1]]
            out.append(None if nxt is None else (group.mul(e[0], nxt[0]), nxt[1]))
        return LabeledPartialFunction(edges=tuple(out))

    def act(self, group: FiniteGroup, h: int, b: int) -> Optional[Tuple[int, int]]:
        e = self.edges[b]
        if e is None:
            return None
        return group.mul(h, e[0]), e[1]

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


@dataclass(frozen=True)
class IdealElement:
    a: int
    g: int
    b: int


@dataclass(frozen=True, eq=False)
class ReesContext:
    """
    Data (G, A, B, C) of M⁰(G, A, B, C), with C stored as a B×A matrix over G⁰.
    """
    group: FiniteGroup
    a_labels: Tuple[str, ...]
    b_labels: Tuple[str, ...]
    c: Tuple[Tuple[ZeroOrElement, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_b_index", {lab: i for i, lab in enumerate(self.b_labels)})
        object.__setattr__(self, "_a_index", {lab: i for i, lab in enumerate(self.a_labels)})

    @property
    def n_a(self) -> int:
        return len(self.a_labels)

    @property
    def n_b(self) -> int:
        return len(self.b_labels)

    def entry(self, b: int, a: int) -> ZeroOrElement:
        return self.c[b][a]

    def column(self, a: int) -> Tuple[ZeroOrElement, ...]:
        return tuple(row[a] for row in self.c)

    def b_index(self, label: str) -> int:
        key = str(label).strip()
        if key not in self._b_index:
            raise FormatError(f"Unknown B label {label!r}")
        return self._b_index[key]

    def a_index(self, label: str) -> int:
        key = str(label).strip()
        if key not in self._a_index:
            raise FormatError(f"Unknown A label {label!r}")
        return self._a_index[key]

    def has_b(self, label: str) -> bool:
        return str(label).strip() in self._b_index

    @property
    def proportional_rows(self) -> List[Tuple[int, int]]:
        return _proportional_pairs(self.group, list(self.c), left=True)

    @property
    def proportional_columns(self) -> List[Tuple[int, int]]:
        return _proportional_pairs(self.group, [self.column(a) for a in range(self.n_a)], left=False)

    @property
    def is_gm(self) -> bool:
        """No proportional rows or columns, and a non-trivial structure group."""
        if self.group.is_trivial():
            return False
        return not self.proportional_rows and not self.proportional_columns

    @property
    def has_proportional_lines(self) -> bool:
        return bool(self.proportional_rows or self.proportional_columns)

    def matrix_names(self) -> List[List[str]]:
        return [[g0_name(self.group, v) for v in row] for row in self.c]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, ReesContext):
            return NotImplemented
        return (
            self.group == other.group
            and self.a_labels == other.a_labels
            and self.b_labels == other.b_labels
            and self.c == other.c
        )

    def __hash__(self) -> int:
        return hash((self.a_labels, self.b_labels, self.c))


def _proportional_pairs(group: FiniteGroup, lines: Sequence[Sequence[ZeroOrElement]], left: bool) -> List[Tuple[int, int]]:
    # rows: line1 = g·line2; columns: line1 = line2·g
    pairs = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            u, v = lines[i], lines[j]
            if any((x is None) != (y is None) for x, y in zip(u, v)):
                continue
            k = next((t for t, x in enumerate(u) if x is not None), None)
            if k is None:
                continue
            if left:
                g = group.mul(u[k], group.inv(v[k]))
                ok = all(x is None or x == group.mul(g, y) for x, y in zip(u, v))
            else:
                g = group.mul(group.inv(v[k]), u[k])
                ok = all(x is None or x == group.mul(y, g) for x, y in zip(u, v))
            if ok:
                pairs.append((i, j))
    return pairs


def make_rees(
    group: FiniteGroup,
    a_labels: Sequence[str],
    b_labels: Sequence[str],
    c_matrix: Sequence[Sequence[object]],
    transposed: bool = False,
) -> ReesContext:
    """
    Build a validated ReesContext.

    - c_matrix is B×A, or A×B when transposed (the orientation most printed tables use)
    - entries are group element names, indices given as names, or 0 for zero
    - raises RegularityError naming the first all-zero row or column
    """
    a_labels = tuple(str(a) for a in a_labels)
    b_labels = tuple(str(b) for b in b_labels)
    if len(set(a_labels)) != len(a_labels) or len(set(b_labels)) != len(b_labels):
        raise FormatError("A and B labels must be unique")
    rows_expected, cols_expected = (len(a_labels), len(b_labels)) if transposed else (len(b_labels), len(a_labels))
    if len(c_matrix) != rows_expected:
        raise FormatError(f"Structure matrix has {len(c_matrix)} rows, expected {rows_expected}")
    parsed: List[List[ZeroOrElement]] = []
    for r, row in enumerate(c_matrix):
        if len(row) != cols_expected:
            raise FormatError(f"Structure matrix row {r} has {len(row)} entries, expected {cols_expected}")
        parsed.append([_entry(group, v) for v in row])
    if transposed:
        parsed = [list(col) for col in zip(*parsed)] if parsed else [[] for _ in b_labels]

    for b, row in enumerate(parsed):
        if all(v is None for v in row):
            raise RegularityError(f"Row {b_labels[b]!r} of the structure matrix is all zero")
    for a in range(len(a_labels)):
        if all(row[a] is None for row in parsed):
            raise RegularityError(f"Column {a_labels[a]!r} of the structure matrix is all zero")

    return ReesContext(
        group=group,
        a_labels=a_labels,
        b_labels=b_labels,
        c=tuple(tuple(row) for row in parsed),
    )


def _entry(group: FiniteGroup, value: object) -> ZeroOrElement:
    if isinstance(value, bool):
        raise FormatError(f"Bad matrix entry {value!r}")
    if isinstance(value, int):
        if value == 0:
            return None
        if value == 1:
            return group.identity
        if value == -1 and group.has("-1"):
            return group.index("-1")
        raise FormatError(f"Bad matrix entry {value!r}")
    return g0_parse(group, value)


# ---- Ideal elements ----
def ideal_action(ctx: ReesContext, e: Optional[IdealElement]) -> LabeledPartialFunction:
    """Right translation of (a, g, b) on G×B: b2 -> C(b2, a)·g·b for every b2 with C(b2, a) != 0."""
    if e is None:
        return LabeledPartialFunction.zero(ctx.n_b)
    group = ctx.group
    edges: List[Edge] = []
    for b2 in range(ctx.n_b):
        c = ctx.c[b2][e.a]
        edges.append(None if c is None else (group.mul(c, e.g), e.b))
    return LabeledPartialFunction(edges=tuple(edges))


def ideal_elements(ctx: ReesContext) -> Iterator[IdealElement]:
    for a in range(ctx.n_a):
        for g in range(ctx.group.order):
            for b in range(ctx.n_b):
                yield IdealElement(a=a, g=g, b=b)


def ideal_product(ctx: ReesContext, e: Optional[IdealElement], f: Optional[IdealElement]) -> Optional[IdealElement]:
    if e is None or f is None:
        return None
    c = ctx.c[e.b][f.a]
    if c is None:
        return None
    return IdealElement(a=e.a, g=ctx.group.prod(e.g, c, f.g), b=f.b)


def ideal_name(ctx: ReesContext, e: IdealElement) -> str:
    return f"[{ctx.a_labels[e.a]},{ctx.group.name(e.g)},{ctx.b_labels[e.b]}]"


_IDEAL_RE = re.compile(r"^\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]$")


def parse_ideal_name(ctx: ReesContext, text: str) -> IdealElement:
    m = _IDEAL_RE.match(text.strip())
    if not m:
        raise FormatError(f"Bad ideal element {text!r}; expected [a,g,b]")
    return IdealElement(a=ctx.a_index(m.group(1)), g=ctx.group.index(m.group(2)), b=ctx.b_index(m.group(3)))


# ---- Arrow notation ----
_ARROW_RE = re.compile(r"\s*(?:->|→)\s*")


def _target(ctx: ReesContext, token: str) -> Tuple[int, int]:
    group = ctx.group
    token = token.strip()
    if "*" in token:
        w, lab = token.split("*", 1)
        return group.index(w), ctx.b_index(lab)
    if ctx.has_b(token):
        return group.identity, ctx.b_index(token)
    if token.startswith("-") and ctx.has_b(token[1:]) and group.has("-1"):
        return group.index("-1"), ctx.b_index(token[1:])
    raise FormatError(f"Bad edge target {token!r}")


def parse_lpf(ctx: ReesContext, edges: Union[str, Iterable[str]]) -> LabeledPartialFunction:
    """
    Parse arrow notation into a LabeledPartialFunction.

    Edges look like "1'->1", "3'->-3" (weight -1), "2->x*4" or "3->x^2*6";
    a string is split on commas. "0" or an empty list is the zero map.
    """
    if isinstance(edges, str):
        items = [p for p in edges.split(",") if p.strip()]
    else:
        items = [str(p) for p in edges]
    out: List[Edge] = [None] * ctx.n_b
    for item in items:
        if item.strip() == "0":
            continue
        parts = _ARROW_RE.split(item.strip())
        if len(parts) != 2:
            raise FormatError(f"Bad edge {item!r}; expected source->target")
        src = ctx.b_index(parts[0])
        if out[src] is not None:
            raise FormatError(f"Two edges leave {parts[0]!r}")
        out[src] = _target(ctx, parts[1])
    return LabeledPartialFunction(edges=tuple(out))


def parse_permutation(ctx: ReesContext, text: str) -> LabeledPartialFunction:
    """
    Cycle notation with blank-separated labels, e.g. "(1' 3')" or "(1 3 5 7)(2 4 6 8)".

    Only the listed points are in the domain; write "(5)" to fix a point.
    """
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or re.sub(r"\([^()]*\)", "", text).strip():
        raise FormatError(f"Bad cycle notation {text!r}")
    g1 = ctx.group.identity
    out: List[Edge] = [None] * ctx.n_b
    seen: set = set()
    for cyc in cycles:
        pts = [ctx.b_index(t) for t in cyc.split()]
        if seen.intersection(pts) or len(set(pts)) != len(pts):
            raise FormatError(f"Cycles in {text!r} are not disjoint")
        seen.update(pts)
        for i, p in enumerate(pts):
            out[p] = (g1, pts[(i + 1) % len(pts)])
    return LabeledPartialFunction(edges=tuple(out))


def format_lpf(ctx: ReesContext, f: LabeledPartialFunction) -> str:
    group = ctx.group
    parts = []
    for b, e in enumerate(f.edges):
        if e is None:
            continue
        g, t = e
        if g == group.identity:
            tgt = ctx.b_labels[t]
        elif group.name(g) == "-1":
            tgt = f"-{ctx.b_labels[t]}"
        else:
            tgt = f"{group.name(g)}*{ctx.b_labels[t]}"
        parts.append(f"{ctx.b_labels[b]}->{tgt}")
    return ", ".join(parts) if parts else "0"


def relabel_group(ctx: ReesContext, group: FiniteGroup, lift: Dict[int, int]) -> ReesContext:
    """Same A, B, C with entries sent through lift into a new group."""
    c = tuple(tuple(None if v is None else lift[v] for v in row) for row in ctx.c)
    return ReesContext(group=group, a_labels=ctx.a_labels, b_labels=ctx.b_labels, c=c)
