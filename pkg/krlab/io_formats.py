from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import yaml

from .automata import Automaton, rz
from .config import Budgets, DEFAULT_BUDGETS
from .errors import FormatError
from .groups import make_group
from .hull import make_Mk
from .rees import LabeledPartialFunction, ReesContext, format_lpf, make_rees, parse_lpf, parse_permutation
from .rhodes import RhodesLattice, Spc, format_spc, parse_spc
from .semigroup import SemigroupTable, generate
from .states import Derivation
from .verify import FlowAssignment
from .wff import Wff, wff_parse

logger = logging.getLogger(__name__)


# ---- Types ----
@dataclass(frozen=True)
class SemigroupSpec:
    name: str
    ctx: ReesContext
    generators: Tuple[Tuple[str, LabeledPartialFunction], ...]
    include_ideal: bool = True
    check_hull: bool = True

    def build(self, budgets: Budgets = DEFAULT_BUDGETS) -> SemigroupTable:
        return generate(
            self.ctx,
            [f for _, f in self.generators],
            include_ideal=self.include_ideal,
            names=[n for n, _ in self.generators],
            budgets=budgets,
            check_hull=self.check_hull,
        )


@dataclass(frozen=True)
class Script:
    start: Optional[str]
    wff: Wff


def _load_yaml(path: str | Path) -> Any:
    path = Path(path).expanduser().resolve()
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        try:
            return yaml.load(fh, Loader=yaml.SafeLoader)
        except yaml.YAMLError as exc:
            raise FormatError(f"{path.name}: not valid YAML ({exc})")


def _require(data: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in data:
        raise FormatError(f"{where}: missing key {key!r}")
    return data[key]


# ---- Semigroup description files ----
def parse_generator(ctx: ReesContext, text: Any) -> LabeledPartialFunction:
    """Cycle notation when the text starts with '(', arrow notation otherwise."""
    if isinstance(text, (list, tuple)):
        return parse_lpf(ctx, [str(t) for t in text])
    text = "" if text is None else str(text).strip()
    if text.startswith("("):
        return parse_permutation(ctx, text)
    return parse_lpf(ctx, text)


def semigroup_from_mapping(data: Mapping[str, Any], where: str = "semigroup") -> SemigroupSpec:
    """
    Build a SemigroupSpec from a parsed description.

    - group: any descriptor accepted by make_group
    - matrix: B×A rows, A×B rows with transposed: true, or "Mk:<k>"
    - generators: name -> cycle or arrow notation, in file order
    """
    if not isinstance(data, Mapping):
        raise FormatError(f"{where}: expected a mapping")
    group = make_group(_require(data, "group", where))
    matrix = _require(data, "matrix", where)
    transposed = bool(data.get("transposed", False))
    if isinstance(matrix, str):
        m = re.fullmatch(r"\s*M(?:k)?\s*:\s*(\d+)\s*", matrix)
        if not m:
            raise FormatError(f"{where}: bad matrix shorthand {matrix!r}")
        k = int(m.group(1))
        matrix = make_Mk(k)
        transposed = True
        a_default = [str(i) for i in range(1, 2 * k + 1)]
        b_default = [str(i) for i in range(1, k + 1)]
    else:
        if not isinstance(matrix, list) or not matrix or not all(isinstance(r, list) for r in matrix):
            raise FormatError(f"{where}: matrix must be a list of rows")
        n_rows, n_cols = len(matrix), len(matrix[0])
        n_a, n_b = (n_rows, n_cols) if transposed else (n_cols, n_rows)
        a_default = [f"a{i}" for i in range(1, n_a + 1)]
        b_default = [str(i) for i in range(1, n_b + 1)]
    a_labels = [str(x) for x in data.get("a_labels", a_default)]
    b_labels = [str(x) for x in data.get("b_labels", b_default)]
    ctx = make_rees(group, a_labels, b_labels, matrix, transposed=transposed)

    gens_raw = data.get("generators") or {}
    if not isinstance(gens_raw, Mapping):
        raise FormatError(f"{where}: generators must map names to actions")
    gens: List[Tuple[str, LabeledPartialFunction]] = []
    for name, text in gens_raw.items():
        try:
            gens.append((str(name), parse_generator(ctx, text)))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"{where}: generator {name!r}: {exc}")
    return SemigroupSpec(
        name=str(data.get("name", where)),
        ctx=ctx,
        generators=tuple(gens),
        include_ideal=bool(data.get("include_ideal", True)),
        check_hull=bool(data.get("check_hull", True)),
    )


def read_semigroup(path: str | Path) -> SemigroupSpec:
    path = Path(path)
    return semigroup_from_mapping(_load_yaml(path), where=path.name)


def semigroup_to_mapping(spec: SemigroupSpec) -> Dict[str, Any]:
    ctx = spec.ctx
    group = ctx.group
    return {
        "name": spec.name,
        "group": group.label or group.order,
        "a_labels": list(ctx.a_labels),
        "b_labels": list(ctx.b_labels),
        "matrix": ctx.matrix_names(),
        "generators": {n: format_lpf(ctx, f) for n, f in spec.generators},
        "include_ideal": spec.include_ideal,
    }


# ---- Flow certificates ----
_ARROW = re.compile(r"^\s*(?P<q>\S+)\s*--\s*(?P<x>\S+?)\s*-->\s*(?P<t>\S+)\s*$")


def automaton_from_mapping(data: Any, where: str = "automaton") -> Automaton:
    if isinstance(data, Mapping) and "rz" in data:
        return rz(int(data["rz"]))
    if not isinstance(data, Mapping):
        raise FormatError(f"{where}: expected a mapping")
    states = [str(q) for q in _require(data, "states", where)]
    transitions: Dict[Tuple[str, str], str] = {}
    letters: List[str] = [str(x) for x in data.get("letters", [])]
    for line in data.get("transitions", []) or []:
        m = _ARROW.match(str(line))
        if not m:
            raise FormatError(f"{where}: bad transition {line!r}; expected 'q --x--> q2'")
        key = (m.group("q"), m.group("x"))
        if key in transitions and transitions[key] != m.group("t"):
            raise FormatError(f"{where}: {key[0]} has two {key[1]}-transitions")
        transitions[key] = m.group("t")
        if m.group("x") not in letters:
            letters.append(m.group("x"))
    return Automaton(states=tuple(states), letters=tuple(letters), transitions=transitions)


def flow_from_mapping(table: SemigroupTable, data: Any, where: str = "flow") -> FlowAssignment:
    if not isinstance(data, Mapping):
        raise FormatError(f"{where}: expected a mapping")
    auto = automaton_from_mapping(_require(data, "automaton", where), where)
    covering_raw = _require(data, "covering", where)
    if not isinstance(covering_raw, Mapping):
        raise FormatError(f"{where}: covering must map letters to generator names")
    covering: Dict[str, Tuple[str, ...]] = {}
    for x, names in covering_raw.items():
        if isinstance(names, str):
            names = [names]
        covering[str(x)] = tuple(str(n) for n in (names or []))
    missing = [x for x in covering if x not in auto.letters]
    if missing:
        auto = Automaton(states=auto.states, letters=auto.letters + tuple(missing), transitions=auto.transitions)
    lat = RhodesLattice(group=table.ctx.group, b_labels=table.ctx.b_labels)
    assignment: Dict[str, Spc] = {}
    for q, text in (_require(data, "assignment", where) or {}).items():
        try:
            assignment[str(q)] = parse_spc(lat, str(text))
        except ValueError as exc:
            raise FormatError(f"{where}: state {q!r}: {exc}")
    return FlowAssignment(automaton=auto, covering=covering, assignment=assignment)


def read_flow(table: SemigroupTable, path: str | Path) -> FlowAssignment:
    path = Path(path)
    return flow_from_mapping(table, _load_yaml(path), where=path.name)


def flow_to_mapping(flow: FlowAssignment) -> Dict[str, Any]:
    auto = flow.automaton
    return {
        "automaton": {
            "states": list(auto.states),
            "letters": list(auto.letters),
            "transitions": [f"{q} --{x}--> {t}" for (q, x), t in auto.transitions.items()],
        },
        "covering": {x: list(v) for x, v in flow.covering.items()},
        "assignment": {q: format_spc(v) for q, v in flow.assignment.items()},
    }


def write_flow(flow: FlowAssignment, path: str | Path) -> Path:
    path = Path(path).expanduser().resolve()
    with path.open("w", encoding="utf-8") as fh:
        yaml.safe_dump(flow_to_mapping(flow), fh, sort_keys=False, allow_unicode=True)
    logger.info("flow certificate written to %s", path)
    return path


# ---- WFF scripts ----
def parse_script(text: str) -> Script:
    """
    Script text: optional `start: <spc>` line, `#` comments, and formula lines
    that are concatenated in order.
    """
    start: Optional[str] = None
    terms: List = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("start:"):
            start = line.split(":", 1)[1].strip()
            continue
        terms.extend(wff_parse(line))
    return Script(start=start, wff=tuple(terms))


def read_script(path: str | Path) -> Script:
    path = Path(path).expanduser().resolve()
    if not path.exists():
        raise FileNotFoundError(f"Script not found: {path}")
    return parse_script(path.read_text(encoding="utf-8"))


def format_derivation(d: Derivation) -> List[str]:
    """Human-readable chain, one line per step with vacuum merges indented."""
    lines = [f"start {d.start}"]
    if d.origin != d.start:
        lines.append(f"  V -> {d.origin}")
    for step in d.start_vacuum:
        lines.append(f"    vacuum [{step.witness}]: {step.before} -> {step.after}")
    for step in d.steps:
        lines.append(f"{step.text} -> {step.raw}")
        for v in step.vacuum:
            lines.append(f"    vacuum [{v.witness}]: {v.before} -> {v.after}")
        if step.result != step.raw:
            lines.append(f"  V -> {step.result}")
    return lines


# ---- Machine output ----
def format_machine(items: Iterable[Tuple[str, Any]]) -> str:
    """Line-oriented key=value output."""
    out = []
    for key, value in items:
        if isinstance(value, bool):
            value = "true" if value else "false"
        out.append(f"{key}={value}")
    return "\n".join(out)
