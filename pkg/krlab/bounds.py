from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from .config import Budgets, DEFAULT_BUDGETS
from .errors import FormatError, IndeterminateBounds, ValidationError
from .flows import FlowEngine
from .green import depth
from .hull import degree
from .semigroup import SemigroupTable, is_aperiodic, rlm
from .states import Derivation, replay_derivation
from .verify import FlowAssignment, verify_flow
from .automata import ts_of

logger = logging.getLogger(__name__)


# ---- Types ----
@dataclass(frozen=True)
class Justification:
    rule: str
    side: str  # "lower" or "upper"
    value: int
    citation: str
    external: bool = False

    def __str__(self) -> str:
        tag = " [external-axiom]" if self.external else ""
        op = ">=" if self.side == "lower" else "<="
        return f"c {op} {self.value} by {self.rule}{tag}: {self.citation}"


@dataclass(frozen=True)
class ComplexityInterval:
    lower: int
    upper: int
    justifications: Tuple[Justification, ...] = ()

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValidationError(f"Inconsistent complexity bounds [{self.lower}, {self.upper}]")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __str__(self) -> str:
        return f"[{self.lower},{self.upper}]"


@dataclass(frozen=True)
class Axiom:
    lower: Optional[int]
    upper: Optional[int]
    citation: str


@dataclass
class AxiomRegistry:
    """External complexity facts keyed by catalog name, e.g. "T4.rlm"."""
    entries: Dict[str, Axiom] = field(default_factory=dict)

    def get(self, name: Optional[str]) -> Optional[Axiom]:
        if name is None:
            return None
        return self.entries.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.entries


def load_axioms(path: str | Path) -> AxiomRegistry:
    path = Path(path).expanduser().resolve()
    if not path.exists():
        raise FileNotFoundError(f"Axiom file not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        data = yaml.load(fh, Loader=yaml.SafeLoader) or {}
    items = data.get("axioms", data) if isinstance(data, dict) else None
    if not isinstance(items, dict):
        raise FormatError(f"Axiom file must map names to bounds: {path}")
    out: Dict[str, Axiom] = {}
    for name, spec in items.items():
        if not isinstance(spec, dict) or "citation" not in spec:
            raise FormatError(f"Axiom {name!r} needs lower/upper and a citation")
        lo, hi = spec.get("lower"), spec.get("upper")
        if lo is None and hi is None:
            raise FormatError(f"Axiom {name!r} states no bound")
        out[str(name)] = Axiom(
            lower=None if lo is None else int(lo),
            upper=None if hi is None else int(hi),
            citation=str(spec["citation"]),
        )
    return AxiomRegistry(entries=out)


def bundled_axioms() -> AxiomRegistry:
    return load_axioms(Path(__file__).parent / "data" / "axioms.yaml")


# ---- Rule engine ----
class _Collector:
    def __init__(self) -> None:
        self.lower = 0
        self.upper: Optional[int] = None
        self.notes: List[Justification] = []

    def at_least(self, value: int, rule: str, citation: str, external: bool = False) -> None:
        if value > self.lower:
            self.lower = value
            self.notes.append(Justification(rule, "lower", value, citation, external))

    def at_most(self, value: int, rule: str, citation: str, external: bool = False) -> None:
        if self.upper is None or value < self.upper:
            self.upper = value
            self.notes.append(Justification(rule, "upper", value, citation, external))

    def interval(self) -> ComplexityInterval:
        assert self.upper is not None
        return ComplexityInterval(self.lower, self.upper, tuple(self.notes))


def _injective_outside_ideal(table: SemigroupTable) -> bool:
    return all(
        table.elements[gi].is_injective()
        for gi in table.generator_indices
        if not table.is_ideal(gi)
    )


def _flow_layer(flow: FlowAssignment, budgets: Budgets) -> int:
    ts = ts_of(flow.automaton, budgets)
    if is_aperiodic(ts):
        return 0
    return complexity_bounds(ts, budgets=budgets).upper


def complexity_bounds(
    table: SemigroupTable,
    flows: Sequence[FlowAssignment] = (),
    certificates: Sequence[Derivation] = (),
    axioms: Optional[AxiomRegistry] = None,
    name: Optional[str] = None,
    strict: bool = False,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> ComplexityInterval:
    """
    Assemble a complexity interval from rules whose hypotheses are checked here.

    - aperiodic: c = 0; otherwise c >= 1
    - depth: c <= length of the longest chain of non-aperiodic J-classes
    - inverse embedding: aperiodic ideal and partial injections elsewhere give c <= 1
    - GM reduction: RLM(S)c <= Sc <= 1 + RLM(S)c, RLM bounds computed recursively
    - a verified flow over a complexity-k automaton gives Sc <= max(k + 1, RLM upper)
    - degree: a transformation semigroup of degree n has c <= n
    - a replayed contradiction derivation gives Sc >= 2 when RLM(S)c = 1
    - axioms named "<name>" apply to this table, "<name>.rlm" to its RLM image
    """
    axioms = axioms or AxiomRegistry()
    acc = _Collector()
    ctx = table.ctx

    if is_aperiodic(table):
        acc.at_most(0, "aperiodic", "aperiodic semigroups have complexity 0")
        return acc.interval()
    acc.at_least(1, "non-aperiodic", "a non-trivial subgroup needs one group layer")
    d = depth(table)
    acc.at_most(d, "depth", "Depth Decomposition Theorem")
    deg = degree(ctx, table)
    if deg >= 1:
        acc.at_most(deg, "degree", "a transformation semigroup of degree n has complexity at most n", external=True)

    has_ideal = all(table.contains(f) for f in table.ideal_set)
    if has_ideal and ctx.group.is_trivial() and _injective_outside_ideal(table):
        acc.at_most(1, "inverse-embedding", "Fundamental Lemma of Complexity; inverse semigroups have c <= 1", external=True)

    ax = axioms.get(name)
    if ax is not None:
        if ax.lower is not None:
            acc.at_least(ax.lower, "axiom", ax.citation, external=True)
        if ax.upper is not None:
            acc.at_most(ax.upper, "axiom", ax.citation, external=True)

    if has_ideal and ctx.is_gm:
        image = rlm(ctx, table)
        sub = complexity_bounds(
            image.table,
            axioms=axioms,
            name=None if name is None else f"{name}.rlm",
            budgets=budgets,
        )
        logger.debug("RLM image (%d elements) has bounds %s", image.table.size, sub)
        acc.at_least(sub.lower, "rlm-quotient", f"RLM(S) is a quotient of S; RLM bound {sub}")
        acc.at_most(1 + sub.upper, "gm-reduction", f"Sc <= 1 + RLM(S)c; RLM bound {sub}")

        for flow in flows:
            report = verify_flow(table, flow)
            if not report.passed:
                logger.info("flow certificate rejected: %s", report.summary())
                continue
            k = _flow_layer(flow, budgets)
            acc.at_most(
                max(k + 1, sub.upper), "flow",
                f"verified flow over a complexity-{k} automaton with {len(flow.automaton.states)} states",
            )

        if certificates:
            engine = FlowEngine(table, budgets)
            for cert in certificates:
                if sub.lower == sub.upper == 1 and cert.reaches_contradiction and replay_derivation(engine, cert):
                    acc.at_least(
                        2, "contradiction",
                        f"no aperiodic flow: derivation of length {len(cert.steps)} reaches the contradiction",
                    )
                    break
                logger.info("contradiction certificate rejected")

    result = acc.interval()
    if strict and not result.exact:
        raise IndeterminateBounds(result)
    return result
