from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import Budgets, DEFAULT_BUDGETS
from .errors import ElementBudgetExceeded, UnknownGenerator, ValidationError
from .groups import FiniteGroup, cyclic_group, product_group
from .rees import (
    LabeledPartialFunction,
    ReesContext,
    format_lpf,
    ideal_action,
    ideal_elements,
    ideal_name,
    relabel_group,
)

logger = logging.getLogger(__name__)


# ---- Types ----
Point = Tuple[int, int]  # (group index, B-index)


@dataclass(frozen=True, eq=False)
class SemigroupTable:
    """
    Finite semigroup of labeled partial functions over a ReesContext.

    - elements are canonical (deduplicated) and ordered deterministically
    - generator_indices / generator_names list the generating set in file order
    - cayley[i, j] is the index of elements[i]·elements[j] (right action: i first)
    - parent_indices maps a sub-table back into the table it was cut from
    """
    ctx: ReesContext
    elements: Tuple[LabeledPartialFunction, ...]
    generator_indices: Tuple[int, ...]
    generator_names: Tuple[str, ...]
    parent_indices: Optional[Tuple[int, ...]] = None
    _index: Dict[LabeledPartialFunction, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index.update({f: i for i, f in enumerate(self.elements)})
        if len(self._index) != len(self.elements):
            raise ValidationError("Semigroup elements are not distinct")

    # ---- lookup ----
    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def group(self) -> FiniteGroup:
        return self.ctx.group

    def index_of(self, f: LabeledPartialFunction) -> int:
        if f not in self._index:
            raise ValidationError(f"Element {format_lpf(self.ctx, f)} is not in the semigroup")
        return self._index[f]

    def contains(self, f: LabeledPartialFunction) -> bool:
        return f in self._index

    def generator(self, name: str) -> int:
        try:
            pos = self.generator_names.index(name)
        except ValueError:
            raise UnknownGenerator(f"Unknown generator {name!r}")
        return self.generator_indices[pos]

    def has_generator(self, name: str) -> bool:
        return name in self.generator_names

    def name_of(self, i: int) -> str:
        if i in self.generator_indices:
            return self.generator_names[self.generator_indices.index(i)]
        return format_lpf(self.ctx, self.elements[i])

    def product(self, i: int, j: int) -> int:
        return int(self.cayley[i, j])

    # ---- structure ----
    @cached_property
    def ideal_set(self) -> FrozenSet[LabeledPartialFunction]:
        return frozenset(ideal_action(self.ctx, e) for e in ideal_elements(self.ctx))

    @cached_property
    def ideal_mask(self) -> np.ndarray:
        """True on non-zero elements of the 0-minimal ideal M⁰(G, A, B, C)."""
        ideal = self.ideal_set
        return np.array([f in ideal for f in self.elements], dtype=bool)

    @cached_property
    def zero(self) -> Optional[int]:
        z = LabeledPartialFunction.zero(self.ctx.n_b)
        return self._index.get(z)

    def is_ideal(self, i: int) -> bool:
        return bool(self.ideal_mask[i]) or i == self.zero

    def idempotents(self) -> np.ndarray:
        idx = np.arange(self.size)
        return idx[self.cayley[idx, idx] == idx]

    @cached_property
    def cayley(self) -> np.ndarray:
        return _cayley_table(self)

    # ---- derived tables ----
    def subtable(self, indices: Iterable[int], names: Optional[Sequence[str]] = None) -> "SemigroupTable":
        """Closed subset as its own table; every element doubles as a generator."""
        idx = sorted(set(int(i) for i in indices))
        elems = tuple(self.elements[i] for i in idx)
        local = {p: k for k, p in enumerate(idx)}
        if idx:
            sub = self.cayley[np.ix_(idx, idx)]
            if not np.isin(sub, idx).all():
                raise ValidationError("Subset is not closed under multiplication")
        gens = tuple(range(len(idx)))
        gen_names = tuple(names) if names is not None else tuple(self.name_of(i) for i in idx)
        table = SemigroupTable(
            ctx=self.ctx,
            elements=elems,
            generator_indices=gens,
            generator_names=gen_names,
            parent_indices=tuple(idx),
        )
        if idx:
            remapped = np.vectorize(local.__getitem__, otypes=[np.int64])(sub)
            table.__dict__["cayley"] = remapped
        return table

    @classmethod
    def from_elements(
        cls,
        ctx: ReesContext,
        elements: Sequence[LabeledPartialFunction],
        generator_indices: Optional[Sequence[int]] = None,
        generator_names: Optional[Sequence[str]] = None,
    ) -> "SemigroupTable":
        if generator_indices is None:
            generator_indices = list(range(len(elements)))
        if generator_names is None:
            generator_names = [format_lpf(ctx, elements[i]) for i in generator_indices]
        return cls(
            ctx=ctx,
            elements=tuple(elements),
            generator_indices=tuple(generator_indices),
            generator_names=tuple(generator_names),
        )


# ---- Cayley table ----
def _encode(tgt: np.ndarray, wgt: np.ndarray, n_b: int, order: int) -> Optional[np.ndarray]:
    base = order * n_b + 1
    if base ** n_b >= 2 ** 62:
        return None
    enc = np.where(tgt < 0, 0, 1 + wgt * n_b + tgt).astype(np.int64)
    powers = base ** np.arange(n_b, dtype=np.int64)
    return enc @ powers


def _cayley_table(table: SemigroupTable) -> np.ndarray:
    n, n_b = table.size, table.ctx.n_b
    group = table.ctx.group
    gtab = np.asarray(group.table, dtype=np.int64)
    tgt = np.full((n, n_b), -1, dtype=np.int64)
    wgt = np.zeros((n, n_b), dtype=np.int64)
    for i, f in enumerate(table.elements):
        for b, e in enumerate(f.edges):
            if e is not None:
                wgt[i, b], tgt[i, b] = e

    codes = _encode(tgt, wgt, n_b, group.order)
    if codes is not None:
        order = np.argsort(codes, kind="stable")
        sorted_codes = codes[order]

    cay = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        t_i = tgt[i]
        defined = t_i >= 0
        cols = np.where(defined, t_i, 0)
        t_new = tgt[:, cols]
        w_new = gtab[wgt[i][None, :], wgt[:, cols]]
        undefined = (~defined)[None, :] | (t_new < 0)
        t_new = np.where(undefined, -1, t_new)
        w_new = np.where(undefined, 0, w_new)
        if codes is not None:
            pc = _encode(t_new, w_new, n_b, group.order)
            pos = np.searchsorted(sorted_codes, pc)
            pos = np.minimum(pos, n - 1)
            found = sorted_codes[pos] == pc
            if not found.all():
                j = int(np.argmin(found))
                raise ValidationError(
                    f"Table is not closed: {table.name_of(i)} · {table.name_of(j)} is missing"
                )
            cay[i] = order[pos]
        else:
            for j in range(n):
                edges = tuple(
                    None if t_new[j, b] < 0 else (int(w_new[j, b]), int(t_new[j, b])) for b in range(n_b)
                )
                key = LabeledPartialFunction(edges=edges)
                if not table.contains(key):
                    raise ValidationError(
                        f"Table is not closed: {table.name_of(i)} · {table.name_of(j)} is missing"
                    )
                cay[i, j] = table.index_of(key)
    logger.debug("Cayley table built for %d elements", n)
    return cay


# ---- Construction ----
def generate(
    ctx: ReesContext,
    extra_generators: Sequence[LabeledPartialFunction],
    include_ideal: bool = True,
    names: Optional[Sequence[str]] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
    check_hull: bool = True,
) -> SemigroupTable:
    """
    Close {ideal elements (optional)} ∪ extras under composition.

    - extras must lie in the translational hull (checked unless check_hull=False)
    - element order: breadth-first products of the extras, then the ideal in
      (a, g, b) order, then the zero
    - raises ElementBudgetExceeded past budgets.max_elements
    """
    from .hull import in_hull

    extras = list(extra_generators)
    if names is None:
        names = [f"g{i + 1}" for i in range(len(extras))]
    names = list(names)
    if len(names) != len(extras):
        raise ValueError("names and extra_generators must have the same length")
    if len(set(names)) != len(names):
        raise ValidationError(f"Generator names must be unique: {names}")

    for name, f in zip(names, extras):
        if f.size != ctx.n_b:
            raise ValidationError(f"Generator {name!r} acts on {f.size} points, context has {ctx.n_b}")
        if check_hull:
            if not in_hull(ctx, f):
                raise ValidationError(f"Generator {name!r} ({format_lpf(ctx, f)}) is not in the translational hull")
    if not check_hull and extras:
        logger.warning("hull membership of %d generators was not checked", len(extras))

    tail: List[Tuple[str, LabeledPartialFunction]] = []
    if include_ideal:
        tail = [(ideal_name(ctx, e), ideal_action(ctx, e)) for e in ideal_elements(ctx)]
        tail.append(("0", LabeledPartialFunction.zero(ctx.n_b)))
    return _closure(ctx, extras, names, budgets, tail)


def transformation_semigroup(
    ctx: ReesContext,
    generators: Sequence[LabeledPartialFunction],
    names: Sequence[str],
    budgets: Budgets = DEFAULT_BUDGETS,
) -> SemigroupTable:
    """Closure of arbitrary partial maps; no hull check, no ideal."""
    return _closure(ctx, list(generators), list(names), budgets, [])


def _closure(
    ctx: ReesContext,
    extras: List[LabeledPartialFunction],
    names: List[str],
    budgets: Budgets,
    tail: Sequence[Tuple[str, LabeledPartialFunction]],
) -> SemigroupTable:
    group = ctx.group
    limit = budgets.max_elements
    elements: List[LabeledPartialFunction] = []
    index: Dict[LabeledPartialFunction, int] = {}

    def add(f: LabeledPartialFunction) -> int:
        if f in index:
            return index[f]
        if len(elements) >= limit:
            raise ElementBudgetExceeded(f"Closure exceeded {limit} elements", limit=limit)
        index[f] = len(elements)
        elements.append(f)
        return index[f]

    gen_idx: List[int] = []
    gen_names: List[str] = []
    for name, f in zip(names, extras):
        i = add(f)
        if i in gen_idx:
            logger.debug("generator %s duplicates %s", name, gen_names[gen_idx.index(i)])
            continue
        gen_idx.append(i)
        gen_names.append(name)

    frontier = 0
    while frontier < len(elements):
        f = elements[frontier]
        frontier += 1
        for g in extras:
            add(f.compose(g, group))

    for name, f in tail:
        i = add(f)
        if f.is_zero:
            continue
        if i not in gen_idx:
            gen_idx.append(i)
            gen_names.append(name)

    logger.debug("generated %d elements from %d generators", len(elements), len(gen_idx))
    return SemigroupTable(
        ctx=ctx,
        elements=tuple(elements),
        generator_indices=tuple(gen_idx),
        generator_names=tuple(gen_names),
        _index=index,
    )


# ---- Closure helpers ----
def _close(cayley: np.ndarray, mask: np.ndarray, fresh: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    fresh = fresh & mask
    while fresh.any():
        idx = np.flatnonzero(mask)
        f = np.flatnonzero(fresh)
        prods = np.concatenate([cayley[np.ix_(f, idx)].ravel(), cayley[np.ix_(idx, f)].ravel()])
        new = np.zeros_like(mask)
        new[prods] = True
        new &= ~mask
        mask |= new
        fresh = new
    return mask


def closure_mask(table: SemigroupTable, seeds: Iterable[int]) -> np.ndarray:
    mask = np.zeros(table.size, dtype=bool)
    mask[list(seeds)] = True
    return _close(table.cayley, mask, mask.copy())


# ---- Properties ----
def omega_powers(table: SemigroupTable) -> np.ndarray:
    """Index of s^(2^k) for 2^k >= |S|; these lie on the cycle of each power sequence."""
    cay = table.cayley
    p = np.arange(table.size)
    steps = max(1, int(np.ceil(np.log2(max(table.size, 2)))) + 1)
    for _ in range(steps):
        p = cay[p, p]
    return p


def is_aperiodic(table: SemigroupTable) -> bool:
    """True iff s^n = s^(n+1) for large n, for every element s."""
    if table.size == 0:
        return True
    p = omega_powers(table)
    return bool(np.all(table.cayley[p, np.arange(table.size)] == p))


def idempotent_generated(table: SemigroupTable) -> SemigroupTable:
    mask = closure_mask(table, table.idempotents())
    return table.subtable(np.flatnonzero(mask))


def type_ii_mask(table: SemigroupTable) -> np.ndarray:
    """
    Least subsemigroup T containing the idempotents with
    xyx = x  ⇒  x·T·y ∪ y·T·x ⊆ T.
    """
    cay = table.cayley
    n = table.size
    ar = np.arange(n)
    pairs: List[Tuple[int, np.ndarray]] = []
    for x in range(n):
        ys = ar[cay[cay[x, :], x] == x]
        if ys.size:
            pairs.append((x, ys))

    mask = closure_mask(table, table.idempotents())
    processed = np.zeros(n, dtype=bool)
    rounds = 0
    while True:
        fresh = mask & ~processed
        if not fresh.any():
            break
        rounds += 1
        processed |= fresh
        f = np.flatnonzero(fresh)
        add = np.zeros(n, dtype=bool)
        for x, ys in pairs:
            xt = cay[x, f]
            add[cay[xt[:, None], ys[None, :]].ravel()] = True
            yt = cay[ys[:, None], f[None, :]]
            add[cay[yt, x].ravel()] = True
        new = add & ~mask
        if new.any():
            mask = _close(cay, mask | new, new)
    logger.debug("type II closure stabilized after %d rounds at %d elements", rounds, int(mask.sum()))
    return mask


def type_ii(table: SemigroupTable) -> SemigroupTable:
    return table.subtable(np.flatnonzero(type_ii_mask(table)))


# ---- Quotients and products ----
@dataclass(frozen=True)
class RlmImage:
    ctx: ReesContext
    table: SemigroupTable
    quotient: np.ndarray  # element index of S -> element index of RLM(S)


def rlm(ctx: ReesContext, table: SemigroupTable) -> RlmImage:
    """Induced action on B with weights forgotten, deduplicated."""
    trivial = cyclic_group(1)
    ctx_r = relabel_group(ctx, trivial, {g: 0 for g in range(ctx.group.order)})
    index: Dict[LabeledPartialFunction, int] = {}
    images: List[LabeledPartialFunction] = []
    quotient = np.empty(table.size, dtype=np.int64)
    for i, f in enumerate(table.elements):
        img = LabeledPartialFunction(edges=tuple(None if e is None else (0, e[1]) for e in f.edges))
        if img not in index:
            index[img] = len(images)
            images.append(img)
        quotient[i] = index[img]
    gen_idx: List[int] = []
    gen_names: List[str] = []
    for gi, name in zip(table.generator_indices, table.generator_names):
        q = int(quotient[gi])
        if q not in gen_idx:
            gen_idx.append(q)
            gen_names.append(name)
    image = SemigroupTable(
        ctx=ctx_r,
        elements=tuple(images),
        generator_indices=tuple(gen_idx),
        generator_names=tuple(gen_names),
        _index=index,
    )
    logger.debug("RLM image has %d elements (from %d)", image.size, table.size)
    return RlmImage(ctx=ctx_r, table=image, quotient=quotient)


def reduced_product(h: FiniteGroup, ctx: ReesContext, table: SemigroupTable) -> Tuple[ReesContext, SemigroupTable]:
    """
    H ×ᵣ S = (H × S) / (H × {0}).

    The new group is H × G, element (h, g) at index h·|G| + g; C lifts via g ↦ (1, g).
    """
    g_order = ctx.group.order
    hg = product_group([h, ctx.group])
    lift = {g: h.identity * g_order + g for g in range(g_order)}
    ctx2 = relabel_group(ctx, hg, lift)

    zero = LabeledPartialFunction.zero(ctx.n_b)
    elements: List[LabeledPartialFunction] = []
    for ih in range(h.order):
        for f in table.elements:
            if f.is_zero:
                continue
            elements.append(
                LabeledPartialFunction(
                    edges=tuple(None if e is None else (ih * g_order + e[0], e[1]) for e in f.edges)
                )
            )
    elements.append(zero)
    index = {f: i for i, f in enumerate(elements)}

    gen_idx: List[int] = []
    gen_names: List[str] = []
    for ih in range(h.order):
        for gi, name in zip(table.generator_indices, table.generator_names):
            f = table.elements[gi]
            if f.is_zero:
                continue
            lifted = LabeledPartialFunction(
                edges=tuple(None if e is None else (ih * g_order + e[0], e[1]) for e in f.edges)
            )
            gen_idx.append(index[lifted])
            gen_names.append(name if ih == h.identity else f"({h.name(ih)},{name})")
    out = SemigroupTable(
        ctx=ctx2,
        elements=tuple(elements),
        generator_indices=tuple(gen_idx),
        generator_names=tuple(gen_names),
        _index=index,
    )
    return ctx2, out


# ---- Tilson congruence ----
def points(ctx: ReesContext) -> List[Point]:
    return [(g, b) for b in range(ctx.n_b) for g in range(ctx.group.order)]


def tilson_congruence(ctx: ReesContext, table: SemigroupTable) -> List[FrozenSet[Point]]:
    """
    Partition of G×B into mutual-reachability classes under S_II ∩ I(S).

    Classes are returned sorted by their least point.
    """
    mask = type_ii_mask(table) & table.ideal_mask
    group = ctx.group
    graph = nx.DiGraph()
    graph.add_nodes_from(points(ctx))
    for i in np.flatnonzero(mask):
        f = table.elements[int(i)]
        for g, b in points(ctx):
            img = f.act(group, g, b)
            if img is not None:
                graph.add_edge((g, b), img)
    classes = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    return sorted(classes, key=lambda c: min((b, g) for g, b in c))
