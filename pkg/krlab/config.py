from __future__ import annotations

from dataclasses import dataclass, fields, replace as dc_replace
from pathlib import Path
from typing import Any, Dict

import yaml

from .errors import FormatError


@dataclass(frozen=True)
class Budgets:
    """
    Limits shared by closure, saturation and search routines.

    - max_elements: semigroup closure size
    - max_iterations: loop / vacuum fixpoint rounds
    - word_bound: longest operator word used by the vacuum
    - max_states: reachable-state closure size
    - loop_body_bound: terms allowed inside a loop body during exploration
    - anticlique_cap: independent sets returned before giving up
    """
    max_elements: int = 200_000
    max_iterations: int = 10_000
    word_bound: int = 4
    max_states: int = 5_000
    loop_body_bound: int = 1
    anticlique_cap: int = 100_000

    def replace(self, **changes: Any) -> "Budgets":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dc_replace(self, **changes)


DEFAULT_BUDGETS = Budgets()


def budgets_from_mapping(data: Dict[str, Any]) -> Budgets:
    known = {f.name for f in fields(Budgets)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise FormatError(f"Unknown budget keys: {unknown}")
    values: Dict[str, int] = {}
    for key, val in data.items():
        try:
            values[key] = int(val)
        except (TypeError, ValueError):
            raise FormatError(f"Budget {key!r} must be an integer, got {val!r}")
        if values[key] < 1:
            raise FormatError(f"Budget {key!r} must be positive, got {val!r}")
    return Budgets(**values)


def load_budgets(path: str | Path) -> Budgets:
    """Read a YAML settings file; any subset of the Budgets fields may appear."""
    path = Path(path).expanduser().resolve()
    if not path.exists():
        raise FileNotFoundError(f"Settings file not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        data = yaml.load(fh, Loader=yaml.SafeLoader) or {}
    if not isinstance(data, dict):
        raise FormatError(f"Settings file must hold a mapping: {path}")
    return budgets_from_mapping(data.get("budgets", data))
