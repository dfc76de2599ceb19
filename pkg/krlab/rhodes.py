from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ContextMismatch, ParseError
from .groups import FiniteGroup


# ---- Types ----
Block = Tuple[Tuple[int, int], ...]  # ((b, weight), ...) sorted by b, first weight = identity
Point = Tuple[int, int]  # (g, b) in G×B

CONTRADICTION_TEXT = "=><="


@dataclass(frozen=True, eq=False)
class RhodesLattice:
    """The lattice Rh_B(G) for a fixed group and B-label list."""
    group: FiniteGroup
    b_labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_b_index", {lab: i for i, lab in enumerate(self.b_labels)})

    @property
    def n_b(self) -> int:
        return len(self.b_labels)

    @property
    def bottom(self) -> "Spc":
        return Spc(blocks=(), lattice=self)

    @property
    def contradiction(self) -> "Spc":
        return Spc(blocks=(), contradiction=True, lattice=self)

    def point(self, b: int) -> "Spc":
        return Spc(blocks=(((b, self.group.identity),),), lattice=self)

    def make(self, blocks: Iterable[Mapping[int, int]]) -> "Spc":
        return make_spc(self, blocks)

    def b_index(self, label: str) -> int:
        if label not in self._b_index:
            raise KeyError(label)
        return self._b_index[label]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, RhodesLattice):
            return NotImplemented
        return self.b_labels == other.b_labels and self.group == other.group

    def __hash__(self) -> int:
        return hash(self.b_labels)

    def parse(self, text: str) -> "Spc":
        return parse_spc(self, text)

    def format(self, p: "Spc") -> str:
        return format_spc(p)


@dataclass(frozen=True)
class Spc:
    """
    Subset / partition / projective cross-section of B, or the contradiction.

    Bottom is the SPC with no blocks.
    """
    blocks: Tuple[Block, ...]
    contradiction: bool = False
    lattice: Optional[RhodesLattice] = field(default=None, compare=False, hash=False, repr=False)

    @property
    def is_bottom(self) -> bool:
        return not self.contradiction and not self.blocks

    @property
    def is_contradiction(self) -> bool:
        return self.contradiction

    def domain(self) -> List[int]:
        return sorted(b for blk in self.blocks for b, _ in blk)

    @property
    def n_points(self) -> int:
        return sum(len(blk) for blk in self.blocks)

    def weights(self) -> Dict[int, Tuple[int, int]]:
        """b -> (block number, weight)."""
        return {b: (k, w) for k, blk in enumerate(self.blocks) for b, w in blk}

    def __str__(self) -> str:
        return format_spc(self)


@dataclass(frozen=True)
class SetPartitionPair:
    subset: FrozenSet[Point]
    classes: FrozenSet[FrozenSet[Point]]


# ---- Normal form ----
def _normalize_block(group: FiniteGroup, block: Mapping[int, int]) -> Block:
    items = sorted(block.items())
    if not items:
        return ()
    anchor = group.inv(items[0][1])
    return tuple((b, group.mul(anchor, w)) for b, w in items)


def make_spc(lattice: RhodesLattice, blocks: Iterable[Mapping[int, int]]) -> Spc:
    """Normalize blocks (dict b -> weight); raises ValueError on overlapping domains."""
    group = lattice.group
    out = []
    seen: set = set()
    for blk in blocks:
        if not blk:
            continue
        if seen.intersection(blk):
            raise ValueError("SPC blocks must have disjoint domains")
        seen.update(blk)
        out.append(_normalize_block(group, blk))
    out.sort(key=lambda blk: blk[0][0])
    return Spc(blocks=tuple(out), lattice=lattice)


def _same_context(p: Spc, q: Spc) -> RhodesLattice:
    if p.lattice is None or q.lattice is None:
        raise ContextMismatch("SPC has no lattice attached")
    if p.lattice is not q.lattice and p.lattice != q.lattice:
        raise ContextMismatch("SPCs belong to different lattices")
    return p.lattice


# ---- Order ----
def spc_leq(p: Spc, q: Spc) -> bool:
    """Domains nest, blocks nest, cross-sections restrict up to a left factor."""
    lat = _same_context(p, q)
    if q.contradiction:
        return True
    if p.contradiction:
        return False
    group = lat.group
    qw = q.weights()
    for blk in p.blocks:
        b0, w0 = blk[0]
        if b0 not in qw:
            return False
        k, v0 = qw[b0]
        h = group.mul(w0, group.inv(v0))
        for b, w in blk[1:]:
            if b not in qw:
                return False
            kb, vb = qw[b]
            if kb != k or w != group.mul(h, vb):
                return False
    return True


def join_blocks(lat: RhodesLattice, blocks: Sequence[Mapping[int, int]]) -> Spc:
    """
    Least SPC above a family of weighted blocks (possibly overlapping).

    Overlapping blocks are rescaled at a shared point and merged; two
    different weights forced on one point give the contradiction.
    """
    group = lat.group
    merged: List[Dict[int, int]] = []
    for blk in blocks:
        cur = dict(blk)
        if not cur:
            continue
        while True:
            hit = next((i for i, m in enumerate(merged) if not m.keys().isdisjoint(cur)), None)
            if hit is None:
                break
            other = merged.pop(hit)
            shared = next(iter(other.keys() & cur.keys()))
            h = group.mul(other[shared], group.inv(cur[shared]))
            for b, w in cur.items():
                w2 = group.mul(h, w)
                if b in other:
                    if other[b] != w2:
                        return lat.contradiction
                else:
                    other[b] = w2
            cur = other
        merged.append(cur)
    return make_spc(lat, merged)


def spc_join(p: Spc, q: Spc) -> Spc:
    lat = _same_context(p, q)
    if p.contradiction or q.contradiction:
        return lat.contradiction
    return join_blocks(lat, [dict(b) for b in p.blocks] + [dict(b) for b in q.blocks])


def spc_meet(p: Spc, q: Spc) -> Spc:
    """Intersect domains; keep maximal sub-blocks on which both cross-sections agree projectively."""
    lat = _same_context(p, q)
    if p.contradiction:
        return q
    if q.contradiction:
        return p
    group = lat.group
    qw = q.weights()
    out: List[Dict[int, int]] = []
    for blk in p.blocks:
        parts: Dict[Tuple[int, int], Dict[int, int]] = {}
        for b, w in blk:
            if b not in qw:
                continue
            k, v = qw[b]
            h = group.mul(w, group.inv(v))
            parts.setdefault((k, h), {})[b] = w
        out.extend(parts.values())
    return make_spc(lat, out)


# ---- SP(G×B) ----
def rh_to_sp(p: Spc) -> SetPartitionPair:
    """All left G-translates of each block's graph {(w(b), b)}."""
    if p.contradiction:
        raise ValueError("The contradiction has no set-partition image")
    group = p.lattice.group
    classes = set()
    for blk in p.blocks:
        for g in range(group.order):
            classes.add(frozenset((group.mul(g, w), b) for b, w in blk))
    subset = frozenset(pt for c in classes for pt in c)
    return SetPartitionPair(subset=subset, classes=frozenset(classes))


def sp_to_rh(lattice: RhodesLattice, s: SetPartitionPair) -> Optional[Spc]:
    """Inverse of rh_to_sp on invariant cross-sections; None otherwise."""
    blocks = []
    seen: set = set()
    for cls in sorted(s.classes, key=lambda c: min((b, g) for g, b in c)):
        bs = [b for _, b in cls]
        if len(bs) != len(set(bs)):
            return None
        key = frozenset(bs)
        if key in seen:
            continue
        seen.add(key)
        blocks.append({b: g for g, b in cls})
    try:
        cand = make_spc(lattice, blocks)
    except ValueError:
        return None
    if rh_to_sp(cand) != s:
        return None
    return cand


# ---- Text syntax ----
_SPC_RE = re.compile(r"^\{(?P<dom>[^}]*)\}\s*(?:/\s*[<⟨](?P<wts>[^>⟩]*)[>⟩])?$")


def parse_spc(lattice: RhodesLattice, text: str) -> Spc:
    """
    Parse `{1 3 | 2 4}/<1 -1 | 1 -1>`; `=><=` is the contradiction, `{}` is Bottom.

    Weights are matched to the block's elements in printed order; a missing
    weight part means all weights are the identity.
    """
    raw = text.strip()
    if raw in {CONTRADICTION_TEXT, "⇒⇐", "contradiction"}:
        return lattice.contradiction
    if raw in {"{}", "∅", "bottom", ""}:
        return lattice.bottom
    m = _SPC_RE.match(raw)
    if not m:
        raise ParseError(f"Bad SPC syntax {text!r}", position=0)
    dom_parts = [part.split() for part in m.group("dom").split("|")]
    group = lattice.group
    if m.group("wts") is None:
        wt_parts = [[group.name(group.identity)] * len(part) for part in dom_parts]
    else:
        wt_parts = [part.split() for part in m.group("wts").split("|")]
    if len(wt_parts) != len(dom_parts):
        raise ParseError(f"SPC {text!r} has {len(dom_parts)} blocks but {len(wt_parts)} weight groups", position=m.start("wts"))
    blocks = []
    for k, (labels, weights) in enumerate(zip(dom_parts, wt_parts)):
        if len(labels) != len(weights):
            raise ParseError(f"Block {k} of {text!r} has {len(labels)} points but {len(weights)} weights", position=m.start("dom"))
        if not labels:
            raise ParseError(f"Block {k} of {text!r} is empty", position=m.start("dom"))
        blk: Dict[int, int] = {}
        for lab, w in zip(labels, weights):
            try:
                b = lattice.b_index(lab)
            except KeyError:
                raise ParseError(f"Unknown point {lab!r} in {text!r}", position=raw.find(lab))
            if not group.has(w):
                raise ParseError(f"Unknown weight {w!r} in {text!r}", position=raw.find(w, m.start("wts") or 0))
            if b in blk:
                raise ParseError(f"Point {lab!r} repeated in {text!r}", position=raw.find(lab))
            blk[b] = group.index(w)
        blocks.append(blk)
    try:
        return make_spc(lattice, blocks)
    except ValueError as exc:
        raise ParseError(f"{exc}: {text!r}", position=0)


def format_spc(p: Spc) -> str:
    if p.contradiction:
        return CONTRADICTION_TEXT
    if not p.blocks:
        return "{}"
    lat = p.lattice
    label = (lambda b: lat.b_labels[b]) if lat is not None else str
    name = (lambda w: lat.group.name(w)) if lat is not None else str
    dom = " | ".join(" ".join(label(b) for b, _ in blk) for blk in p.blocks)
    wts = " | ".join(" ".join(name(w) for _, w in blk) for blk in p.blocks)
    return f"{{{dom}}}/<{wts}>"
