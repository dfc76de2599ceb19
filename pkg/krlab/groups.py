from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .errors import FormatError, ValidationError


# ---- Types ----
# Element of G⁰: a group index, or None for the adjoined zero.
ZeroOrElement = Optional[int]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    Group given by its multiplication table over indices 0..order-1.

    - table[i, j] is the index of names[i]·names[j]
    - aliases map extra spellings (e.g. "x" in ℤ₂, "x^1") to indices
    """
    table: np.ndarray
    identity: int
    names: Tuple[str, ...]
    aliases: Dict[str, int] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        inv = [0] * len(rows)
        for i, row in enumerate(rows):
            inv[i] = row.index(self.identity)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_inv", tuple(inv))
        lookup = {n: i for i, n in enumerate(self.names)}
        for k, v in self.aliases.items():
            lookup.setdefault(k, v)
        object.__setattr__(self, "_lookup", lookup)

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def prod(self, *items: int) -> int:
        acc = self.identity
        for it in items:
            acc = self._rows[acc][it]
        return acc

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        acc = self.identity
        for _ in range(k):
            acc = self._rows[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        k, acc = 1, a
        while acc != self.identity:
            acc = self._rows[acc][a]
            k += 1
        return k

    def index(self, name: str) -> int:
        key = str(name).strip()
        if key not in self._lookup:
            raise FormatError(f"Unknown group element {name!r} in {self.label or 'group'}")
        return self._lookup[key]

    def has(self, name: str) -> bool:
        return str(name).strip() in self._lookup

    def name(self, a: int) -> str:
        return self.names[a]

    def is_trivial(self) -> bool:
        return self.order == 1

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.names, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or self.order})"


# ---- G⁰ arithmetic ----
def g0_mul(group: FiniteGroup, a: ZeroOrElement, b: ZeroOrElement) -> ZeroOrElement:
    if a is None or b is None:
        return None
    return group.mul(a, b)


def g0_name(group: FiniteGroup, a: ZeroOrElement) -> str:
    return "0" if a is None else group.name(a)


def g0_parse(group: FiniteGroup, token: Any) -> ZeroOrElement:
    text = str(token).strip()
    if text == "0":
        return None
    return group.index(text)


# ---- Constructors ----
def validate_table(table: np.ndarray) -> int:
    """
    Check a raw multiplication table and return the identity index.

    - Latin square
    - two-sided identity
    - associativity over all triples
    """
    table = np.asarray(table)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
        raise ValidationError(f"Group table must be square and non-empty, got shape {table.shape}")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise ValidationError("Group table entries must be indices 0..n-1")
    target = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), target):
            raise ValidationError(f"Group table is not a Latin square (row {i})")
        if not np.array_equal(np.sort(table[:, i]), target):
            raise ValidationError(f"Group table is not a Latin square (column {i})")

    ids = [e for e in range(n) if np.array_equal(table[e], target) and np.array_equal(table[:, e], target)]
    if not ids:
        raise ValidationError("Group table has no identity element")

    # (ab)c vs a(bc) for every triple at once
    left = table[table[:, :, None], np.arange(n)[None, None, :]]
    right = table[np.arange(n)[:, None, None], table[None, :, :]]
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise ValidationError(f"Group table is not associative at triple ({a}, {b}, {c})")
    return ids[0]


def cyclic_names(n: int) -> Tuple[str, ...]:
    if n == 2:
        return ("1", "-1")
    return tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(n))


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"Cyclic group order must be >= 1, got {n}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    names = cyclic_names(n)
    aliases: Dict[str, int] = {"x^0": 0}
    if n >= 2:
        aliases["x"] = 1
        aliases["x^1"] = 1
    if n == 2:
        aliases["g"] = 1
    for i in range(n):
        aliases.setdefault(f"x^{i}", i)
    return FiniteGroup(table=table, identity=0, names=names, aliases=aliases, label=f"Z{n}")


def product_group(parts: Sequence[FiniteGroup]) -> FiniteGroup:
    """Direct product; element (i, j) of G×H has index i·|H| + j."""
    if not parts:
        return cyclic_group(1)
    acc = parts[0]
    for nxt in parts[1:]:
        n, m = acc.order, nxt.order
        table = np.empty((n * m, n * m), dtype=int)
        for a in range(n):
            for b in range(m):
                for c in range(n):
                    for d in range(m):
                        table[a * m + b, c * m + d] = acc.mul(a, c) * m + nxt.mul(b, d)
        names = tuple(f"({acc.name(a)},{nxt.name(b)})" for a in range(n) for b in range(m))
        label = f"{acc.label or acc.order}x{nxt.label or nxt.order}"
        acc = FiniteGroup(
            table=table,
            identity=acc.identity * m + nxt.identity,
            names=names,
            label=label,
        )
    return acc


def table_group(table: Any, names: Optional[Sequence[str]] = None) -> FiniteGroup:
    arr = np.asarray(table, dtype=int)
    identity = validate_table(arr)
    if names is None:
        names = [str(i) for i in range(arr.shape[0])]
    if len(names) != arr.shape[0]:
        raise FormatError(f"Group has {arr.shape[0]} elements but {len(names)} names")
    return FiniteGroup(table=arr, identity=identity, names=tuple(str(n) for n in names), label="table")


def make_group(spec: Any) -> FiniteGroup:
    """
    Build a validated FiniteGroup from a descriptor.

    Accepted forms:
    - FiniteGroup (returned as is)
    - int n or "Zn" → cyclic group of order n; "1" → trivial group
    - "Z2xZ2" or {"product": [...]} → direct product
    - {"cyclic": n}
    - {"table": [[...]], "names": [...]}
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, bool):
        raise FormatError(f"Bad group descriptor: {spec!r}")
    if isinstance(spec, int):
        return cyclic_group(spec)
    if isinstance(spec, str):
        text = spec.strip().replace("×", "x")
        if text in {"1", "trivial"}:
            return cyclic_group(1)
        if "x" in text[1:] and text.upper().startswith("Z"):
            return product_group([make_group(p) for p in text.split("x")])
        if text[:1] in {"Z", "z"} and text[1:].isdigit():
            return cyclic_group(int(text[1:]))
        raise FormatError(f"Bad group descriptor: {spec!r}")
    if isinstance(spec, dict):
        if "cyclic" in spec:
            return cyclic_group(int(spec["cyclic"]))
        if "product" in spec:
            return product_group([make_group(p) for p in spec["product"]])
        if "table" in spec:
            return table_group(spec["table"], spec.get("names"))
    raise FormatError(f"Bad group descriptor: {spec!r}")


def group_frame(group: FiniteGroup) -> pd.DataFrame:
    """Multiplication table as a labeled DataFrame."""
    labels: List[str] = list(group.names)
    return pd.DataFrame(
        [[group.name(group.mul(a, b)) for b in range(group.order)] for a in range(group.order)],
        index=labels,
        columns=labels,
    )
