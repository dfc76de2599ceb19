from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd
import yaml

from .bounds import AxiomRegistry, ComplexityInterval, bundled_axioms, complexity_bounds
from .config import Budgets, DEFAULT_BUDGETS
from .errors import BudgetExceeded, UnknownEntry
from .flows import FlowEngine
from .green import depth, green
from .groups import FiniteGroup, ZeroOrElement, cyclic_group, make_group
from .hull import degree, fiber_graph, hull_elements, make_Mk
from .io_formats import parse_generator, read_flow, read_script
from .rees import ReesContext, make_rees
from .rhodes import parse_spc
from .semigroup import SemigroupTable, generate, reduced_product, rlm, type_ii_mask
from .states import Derivation, find_contradiction, replay_derivation, wff_trace
from .verify import FlowAssignment, FlowReport, one_point_flow_test, search_flow, verify_flow

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"


# ---- Character tables ----
def make_character_table(n: int) -> List[List[int]]:
    """C_n(k, l) = x^(k·l mod n), as element indices of cyclic_group(n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return [[(k * l) % n for l in range(n)] for k in range(n)]


def _g0_matmul(group: FiniteGroup, p: Sequence[Sequence[ZeroOrElement]], q: Sequence[Sequence[ZeroOrElement]]) -> List[List[ZeroOrElement]]:
    """Product over G⁰; every entry may have at most one non-zero term."""
    n, m, k = len(p), len(q[0]), len(q)
    out: List[List[ZeroOrElement]] = []
    for i in range(n):
        row: List[ZeroOrElement] = []
        for j in range(m):
            terms = [group.mul(p[i][t], q[t][j]) for t in range(k) if p[i][t] is not None and q[t][j] is not None]
            if len(terms) > 1:
                raise ValueError(f"Entry ({i}, {j}) has {len(terms)} non-zero terms; G⁰ has no addition")
            row.append(terms[0] if terms else None)
        out.append(row)
    return out


def verify_linkage_identity(n: int) -> bool:
    """X·C_n = C_n·Y for X the cycle shift X(i, i+1) = 1 and Y(i, i) = x^i."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    group = cyclic_group(n)
    c = make_character_table(n)
    x = [[group.identity if j == (i + 1) % n else None for j in range(n)] for i in range(n)]
    y = [[i if j == i else None for j in range(n)] for i in range(n)]
    return _g0_matmul(group, x, c) == _g0_matmul(group, c, y)


# ---- Builders ----
def _labels(prefix: str, n: int) -> List[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


def _build(
    group: FiniteGroup,
    a_labels: Sequence[str],
    b_labels: Sequence[str],
    matrix: Sequence[Sequence[Any]],
    generators: Sequence[Tuple[str, str]],
    budgets: Budgets,
    transposed: bool = True,
) -> Tuple[ReesContext, SemigroupTable]:
    ctx = make_rees(group, a_labels, b_labels, matrix, transposed=transposed)
    gens = [parse_generator(ctx, text) for _, text in generators]
    table = generate(ctx, gens, include_ideal=True, names=[n for n, _ in generators], budgets=budgets)
    return ctx, table


_FORK_B = ["1'", "3'", "1", "2", "3", "4"]
_FORK_ROWS = [
    [1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 1],
    [0, 0, 1, 0, 0, 1],
]
_FORK_GENS = [("sigma", "(1' 3')"), ("tau", "(1 2 3 4)"), ("r", "1'->1, 3'->-3")]


def build_tf(group: Optional[FiniteGroup], budgets: Budgets):
    return _build(cyclic_group(2), _labels("a", 7), _FORK_B, _FORK_ROWS, _FORK_GENS, budgets)


def build_tfa1(group: Optional[FiniteGroup], budgets: Budgets):
    return _build(cyclic_group(2), _labels("a", 7)[1:], _FORK_B, _FORK_ROWS[1:], _FORK_GENS, budgets)


def build_utv(group: Optional[FiniteGroup], budgets: Budgets):
    gens = [("sigma", "(1' 3')"), ("tau", "(1 2 3 4)"), ("t", "1'->1, 3'->3"), ("r", "1'->1, 3'->-3")]
    return _build(cyclic_group(2), _labels("a", 7)[1:], _FORK_B, _FORK_ROWS[1:], gens, budgets)


def _block_diagonal(left: List[List[int]], right: List[List[int]]) -> List[List[int]]:
    wl, wr = len(left[0]), len(right[0])
    return [row + [0] * wr for row in left] + [[0] * wl + row for row in right]


def build_birip(group: Optional[FiniteGroup], budgets: Budgets):
    rows = _block_diagonal(make_Mk(2), make_Mk(4))
    gens = [("g2", "(1' 3')"), ("a", "1->4, 2->3"), ("s", "1'->1, 3'->-3")]
    return _build(cyclic_group(2), _labels("a", len(rows)), _FORK_B, rows, gens, budgets)


def build_cbirip(group: Optional[FiniteGroup], budgets: Budgets):
    gens = [("a", "1->4, 2->3"), ("b", "(1 3)(2 4)"), ("s", "2->1, 4->-3")]
    return _build(cyclic_group(2), _labels("a", 8), _labels("", 4), make_Mk(4), gens, budgets)


_RG_B = ["1'", "3'", "1", "2", "3", "4", "1R", "2R"]


def _rg_rows() -> List[List[int]]:
    rows = [[1, 1] + [0] * 6, [1, 0] + [0] * 6, [0, 1] + [0] * 6]
    for i in range(2, 8):
        rows.append([1 if j == i else 0 for j in range(8)])
    return rows


def _build_rg(name: str, text: str, budgets: Budgets):
    gens = [
        ("a", "(1 4)(2 3)"),
        ("b", "(1 3)(2 4)"),
        ("c", "(1' 3')"),
        ("s", "1'->1, 3'->-3"),
        (name, text),
        ("xR", "1R->-2R, 2R->1R"),
    ]
    return _build(cyclic_group(2), _labels("a", 9), _RG_B, _rg_rows(), gens, budgets)


def build_rg1(group: Optional[FiniteGroup], budgets: Budgets):
    return _build_rg("r1", "1->1R, 2->2R", budgets)


def build_rg2(group: Optional[FiniteGroup], budgets: Budgets):
    return _build_rg("r2", "1->1R, 3->-2R", budgets)


def _cycle_context(group: FiniteGroup, k: int = 4) -> ReesContext:
    return make_rees(group, _labels("", 2 * k), _labels("", k), make_Mk(k), transposed=True)


_CYCLE_SEEDS = [("r13", "(1 3)"), ("c4", "(1 2 3 4)")]


def _hull_table(ctx: ReesContext, seeds: Sequence[Tuple[str, str]], budgets: Budgets) -> SemigroupTable:
    """
    The whole translational hull, generated by the seeds plus hull elements
    missing from the closure so far, highest rank first (named h1, h2, ...).
    """
    names = [n for n, _ in seeds]
    gens = [parse_generator(ctx, text) for _, text in seeds]
    table = generate(ctx, gens, include_ideal=True, names=names, budgets=budgets)
    candidates = sorted(hull_elements(ctx, budgets), key=lambda f: -len(f.domain()))
    for f in candidates:
        if f.is_zero or table.contains(f):
            continue
        gens.append(f)
        names.append(f"h{len(gens) - len(seeds)}")
        table = generate(ctx, gens, include_ideal=True, names=names, budgets=budgets)
    logger.debug("hull of %s closed with %d extra generators", ctx.group.label, len(gens) - len(seeds))
    return table


def build_t4(group: Optional[FiniteGroup], budgets: Budgets):
    """G ×ᵣ Ω(I₄): the whole hull of the trivial-group 4-cycle ideal, crossed with G."""
    group = group or cyclic_group(2)
    base = _cycle_context(cyclic_group(1))
    omega = _hull_table(base, _CYCLE_SEEDS, budgets)
    return reduced_product(group, base, omega)


def build_s4(group: Optional[FiniteGroup], budgets: Budgets):
    """Ω(I₄(G)): the whole hull of the G-weighted 4-cycle ideal."""
    group = group or cyclic_group(2)
    ctx = _cycle_context(group)
    g = 1 if group.order > 1 else group.identity
    seeds = _CYCLE_SEEDS + [("f", f"1->3, 3->{group.name(g)}*1")]
    return ctx, _hull_table(ctx, seeds, budgets)


def _build_character(odd: bool, budgets: Budgets):
    """Rows 1..3 of C₄ weight the edges of s_x, s_x2, s_x3 into the even vertices."""
    group = cyclic_group(4)
    src = ["1", "3", "5", "7"] if odd else ["1", "2", "3", "4"]
    chars = make_character_table(4)
    gens = [("a", "(1 3 5 7)(2 4 6 8)"), ("b", "8->1, 7->2")]
    for i, name in ((1, "s_x"), (2, "s_x2"), (3, "s_x3")):
        edges = []
        for k, (b, tgt) in enumerate(zip(src, ["2", "4", "6", "8"])):
            w = chars[i][k]
            edges.append(f"{b}->{tgt}" if w == group.identity else f"{b}->{group.name(w)}*{tgt}")
        gens.append((name, ", ".join(edges)))
    return _build(group, _labels("", 16), _labels("", 8), make_Mk(8), gens, budgets)


def build_s2(group: Optional[FiniteGroup], budgets: Budgets):
    return _build_character(odd=False, budgets=budgets)


def build_s2odd(group: Optional[FiniteGroup], budgets: Budgets):
    return _build_character(odd=True, budgets=budgets)


# ---- Manifest ----
@dataclass(frozen=True)
class Expectation:
    key: str
    expected: Any
    anchor: str
    mode: str = "equal"  # or "contains"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    builder: Callable[[Optional[FiniteGroup], Budgets], Tuple[ReesContext, SemigroupTable]]
    expected: Tuple[Expectation, ...]
    flow_file: Optional[str] = None
    search_states: Optional[int] = None
    script_file: Optional[str] = None
    group_override: bool = False


def _e(key: str, expected: Any, anchor: str, mode: str = "equal") -> Expectation:
    return Expectation(key=key, expected=expected, anchor=anchor, mode=mode)


CATALOG: Dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry(
            "TF", "Tall fork", build_tf,
            (
                _e("gm", True, "TF.gm"),
                _e("size", 99, "TF.size"),
                _e("j_classes", 5, "TF.j-classes"),
                _e("rlm_depth", 1, "TF.rlm-depth"),
                _e("chain", ["{1'}/<1>", "{1' 3'}/<1 1>", "{1 3}/<1 -1>", "=><="], "TF.chain"),
                _e("complexity", "[2,2]", "TF.complexity"),
            ),
        ),
        CatalogEntry(
            "TFA1", "Tall fork without its first row", build_tfa1,
            (
                _e("gm", True, "TFA1.gm"),
                _e("flow", True, "TFA1.flow"),
                _e("contradiction", False, "TFA1.no-contradiction"),
                _e("complexity", "[1,1]", "TFA1.complexity"),
            ),
            flow_file="tfa1.yaml",
        ),
        CatalogEntry(
            "UTV", "Vacuum-driven merge", build_utv,
            (
                _e("contradiction", True, "UTV.contradiction"),
                _e("vacuum_merges", "{1' | 3'}/<1 | 1> -> {1' 3'}/<1 1>", "UTV.vacuum", mode="contains"),
                _e("complexity", "[2,2]", "UTV.complexity"),
            ),
        ),
        CatalogEntry(
            "BIRIP", "Back inject", build_birip,
            (
                _e("gm", False, "BIRIP.not-gm"),
                _e("flow", True, "BIRIP.flow"),
                _e("flow_search", True, "BIRIP.search"),
            ),
            flow_file="birip.yaml",
            search_states=3,
        ),
        CatalogEntry(
            "CBIRIP", "Compact back inject", build_cbirip,
            (
                _e("gm", True, "CBIRIP.gm"),
                _e("flow", True, "CBIRIP.flow"),
                _e("flow_search", True, "CBIRIP.search"),
                _e("complexity", "[1,1]", "CBIRIP.complexity"),
            ),
            flow_file="cbirip.yaml",
            search_states=2,
        ),
        CatalogEntry(
            "RG1", "Contraption at rest", build_rg1,
            (
                _e("gm", True, "RG1.gm"),
                _e("flow", True, "RG1.flow"),
                _e("complexity", "[1,1]", "RG1.complexity"),
            ),
            flow_file="rg1.yaml",
        ),
        CatalogEntry(
            "RG2", "Contraption switched on", build_rg2,
            (
                _e("gm", True, "RG2.gm"),
                _e("contradiction", True, "RG2.contradiction"),
                _e("complexity", "[2,2]", "RG2.complexity"),
            ),
        ),
        CatalogEntry(
            "T4", "Reduced product with the 4-cycle hull", build_t4,
            (
                _e("gm", True, "T4.gm"),
                _e("one_point_flow", True, "T4.one-point"),
                _e("flow", True, "T4.trivial-flow"),
                _e("complexity", "[2,2]", "T4.complexity"),
            ),
            flow_file="t4_trivial.yaml",
            group_override=True,
        ),
        CatalogEntry(
            "S4", "Continuous partial maps of the 4-cycle", build_s4,
            (
                _e("degree", 2, "S4.degree"),
                _e("fiber_graph", "2x4-cycle", "S4.fiber-graph"),
                _e("contradiction", True, "S4.contradiction"),
                _e("one_point_flow", False, "S4.one-point"),
                _e("complexity", "[2,2]", "S4.complexity"),
            ),
            group_override=True,
        ),
        CatalogEntry(
            "S2", "Character table of Z4, as printed", build_s2,
            (
                _e("gm", True, "S2.gm"),
                _e("character_table", [["1", "1", "1", "1"], ["1", "x", "x^2", "x^3"], ["1", "x^2", "1", "x^2"], ["1", "x^3", "x^2", "x"]], "S2.character-table"),
                _e("linkage", True, "S2.linkage"),
                _e("type_ii", "[4,x^3,4]", "S2.type-ii", mode="contains"),
                _e("one_point_flow", False, "S2.one-point"),
                _e("flow", False, "S2.flow-fails"),
                _e("flow_failure", "containment@1/s_x", "S2.flow-fails"),
                _e("refutation", True, "S2.refutation"),
                _e("complexity", "[2,2]", "S2.complexity"),
            ),
            flow_file="s2_rz4.yaml",
            script_file="s2_refutation.wff",
        ),
        CatalogEntry(
            "S2odd", "Character table of Z4, odd-vertex weights", build_s2odd,
            (
                _e("gm", True, "S2odd.gm"),
                _e("flow", True, "S2odd.flow"),
                _e("complexity", "[1,1]", "S2odd.complexity"),
            ),
            flow_file="s2_rz4.yaml",
        ),
    ]
}


def catalog_names() -> List[str]:
    return list(CATALOG)


def _entry(name: str) -> CatalogEntry:
    if name not in CATALOG:
        raise UnknownEntry(f"Unknown catalog entry {name!r}; known: {', '.join(CATALOG)}")
    return CATALOG[name]


def catalog_build(
    name: str,
    group: Optional[Any] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Tuple[ReesContext, SemigroupTable, Tuple[Expectation, ...]]:
    entry = _entry(name)
    g = make_group(group) if group is not None and entry.group_override else None
    ctx, table = entry.builder(g, budgets)
    logger.info("built %s: %d elements", name, table.size)
    return ctx, table, entry.expected


def load_anchors() -> Dict[str, str]:
    with (DATA_DIR / "anchors.yaml").open("r", encoding="utf-8") as fh:
        return yaml.load(fh, Loader=yaml.SafeLoader) or {}


# ---- Running ----
EXCLUSION_STATES = 40


def _preview(values: Sequence[Any], head: int = 3) -> str:
    shown = ", ".join(repr(v) for v in list(values)[:head])
    more = ", ..." if len(values) > head else ""
    return f"[{shown}{more}] ({len(values)} total)"


def exclusion_search(
    table: SemigroupTable,
    budgets: Budgets = DEFAULT_BUDGETS,
    max_states: int = EXCLUSION_STATES,
) -> Tuple[Optional[Derivation], bool]:
    """
    Capped contradiction search for semigroups that carry a flow.

    Single-op vacuum words only; any derivation found is still genuine.
    Returns (derivation or None, whether the search ran to completion).
    """
    capped = budgets.replace(max_states=max_states, word_bound=1)
    try:
        return find_contradiction(FlowEngine(table, capped)), True
    except BudgetExceeded:
        return None, False


@dataclass(frozen=True)
class CheckRow:
    key: str
    expected: Any
    actual: Any
    ok: bool
    anchor: str
    mode: str = "equal"


@dataclass
class CatalogReport:
    name: str
    rows: List[CheckRow] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.__dict__ for r in self.rows], columns=["key", "expected", "actual", "ok", "anchor"])

    def lines(self) -> List[str]:
        out = [f"== {self.name}: {'OK' if self.passed else 'MISMATCH'}"]
        for r in self.rows:
            mark = "ok " if r.ok else "BAD"
            got = f"among {_preview(r.actual)}" if r.mode == "contains" else f"got {r.actual!r}"
            out.append(f"  [{mark}] {r.key}: expected {r.expected!r}, {got}  ({r.anchor})")
        out.extend(f"  {n}" for n in self.notes)
        return out


class _Run:
    """Lazily computed facts about one catalog semigroup."""

    def __init__(self, entry: CatalogEntry, ctx: ReesContext, table: SemigroupTable, budgets: Budgets, axioms: AxiomRegistry) -> None:
        self.entry = entry
        self.ctx = ctx
        self.table = table
        self.budgets = budgets
        self.axioms = axioms

    @cached_property
    def engine(self) -> FlowEngine:
        return FlowEngine(self.table, self.budgets)

    @cached_property
    def derivation(self) -> Optional[Derivation]:
        return find_contradiction(self.engine)

    @cached_property
    def refutation(self) -> Optional[Derivation]:
        if self.entry.script_file is None:
            return None
        script = read_script(DATA_DIR / "scripts" / self.entry.script_file)
        start = parse_spc(self.engine.lattice, script.start or "{" + self.ctx.b_labels[0] + "}")
        d = wff_trace(self.engine, script.wff, start)
        if d.reaches_contradiction and replay_derivation(self.engine, d):
            return d
        return None

    @cached_property
    def bundled_flow(self) -> Optional[FlowAssignment]:
        if self.entry.flow_file is None:
            return None
        return read_flow(self.table, DATA_DIR / "flows" / self.entry.flow_file)

    @cached_property
    def flow_report(self) -> Optional[FlowReport]:
        flow = self.bundled_flow
        return None if flow is None else verify_flow(self.table, flow)

    @cached_property
    def searched_flow(self) -> Optional[FlowAssignment]:
        if self.entry.search_states is None:
            return None
        return search_flow(self.table, self.entry.search_states, require_aperiodic=True, budgets=self.budgets)

    @cached_property
    def bounds(self) -> ComplexityInterval:
        flows = [f for f in (self.bundled_flow, self.searched_flow) if f is not None]
        certs = [d for d in (self.derivation if self._wants_derivation else None, self.refutation) if d is not None]
        return complexity_bounds(self.table, flows=flows, certificates=certs, axioms=self.axioms, name=self.entry.name, budgets=self.budgets)

    @property
    def _wants_derivation(self) -> bool:
        return any(e.key in {"contradiction", "chain", "vacuum_merges"} for e in self.entry.expected)

    def fact(self, key: str) -> Any:
        return _FACTS[key](self)


def _fiber_shape(run: _Run) -> str:
    graph = fiber_graph(run.ctx, run.table).graph
    comps = [graph.subgraph(c) for c in nx.connected_components(graph)]
    sizes = sorted({c.number_of_nodes() for c in comps})
    if len(sizes) == 1 and all(all(d == 2 for _, d in c.degree()) for c in comps):
        return f"{len(comps)}x{sizes[0]}-cycle"
    return "components " + ",".join(str(c.number_of_nodes()) for c in comps)


def _vacuum_merges(run: _Run) -> List[str]:
    d = run.derivation
    if d is None:
        return []
    return [f"{v.before} -> {v.after}" for step in d.steps for v in step.vacuum]


def _type_ii_ideal(run: _Run) -> List[str]:
    idx = [int(i) for i in (type_ii_mask(run.table) & run.table.ideal_mask).nonzero()[0]]
    return [run.table.name_of(i) for i in idx]


def _flow_failure(run: _Run) -> Optional[str]:
    r = run.flow_report
    if r is None or r.passed:
        return None
    return f"{r.condition}@{r.state}/{r.generator}"


_FACTS: Dict[str, Callable[[_Run], Any]] = {
    "gm": lambda run: run.ctx.is_gm,
    "size": lambda run: run.table.size,
    "j_classes": lambda run: green(run.table).n_j,
    "depth": lambda run: depth(run.table),
    "rlm_depth": lambda run: depth(rlm(run.ctx, run.table).table),
    "contradiction": lambda run: run.derivation is not None,
    "chain": lambda run: [] if run.derivation is None else [str(p) for p in run.derivation.chain()],
    "vacuum_merges": _vacuum_merges,
    "flow": lambda run: run.flow_report is not None and run.flow_report.passed,
    "flow_failure": _flow_failure,
    "flow_search": lambda run: run.searched_flow is not None,
    "one_point_flow": lambda run: one_point_flow_test(run.table),
    "type_ii": _type_ii_ideal,
    "degree": lambda run: degree(run.ctx, run.table),
    "fiber_graph": _fiber_shape,
    "refutation": lambda run: run.refutation is not None,
    "character_table": lambda run: [[cyclic_group(4).name(v) for v in row] for row in make_character_table(4)],
    "linkage": lambda run: verify_linkage_identity(4),
    "complexity": lambda run: str(run.bounds),
}


def catalog_run(
    name: str,
    budgets: Budgets = DEFAULT_BUDGETS,
    axioms: Optional[AxiomRegistry] = None,
    group: Optional[Any] = None,
) -> CatalogReport:
    """Build one entry and check every manifest assertion."""
    entry = _entry(name)
    ctx, table, expected = catalog_build(name, group=group, budgets=budgets)
    run = _Run(entry, ctx, table, budgets, axioms if axioms is not None else bundled_axioms())
    report = CatalogReport(name=name)
    for exp in expected:
        actual = run.fact(exp.key)
        ok = exp.expected in actual if exp.mode == "contains" else actual == exp.expected
        report.rows.append(CheckRow(exp.key, exp.expected, actual, ok, exp.anchor, exp.mode))
        logger.info("%s %s: %s", name, exp.key, "ok" if ok else "mismatch")

    has_flow = bool(run.flow_report is not None and run.flow_report.passed) or run.searched_flow is not None
    has_cert = (run._wants_derivation and run.derivation is not None) or run.refutation is not None
    if has_flow and has_cert:
        report.rows.append(CheckRow("mutual_exclusion", False, True, False, "flows.mutual-exclusion"))
    elif has_flow:
        d, exhausted = exclusion_search(run.table, budgets)
        if d is not None:
            report.rows.append(CheckRow("mutual_exclusion", False, True, False, "flows.mutual-exclusion"))
            report.notes.append("exclusion: contradiction by " + " ; ".join(s.text for s in d.steps))
        elif exhausted:
            report.notes.append("exclusion: reachable states exhausted without a contradiction")
        else:
            report.notes.append(f"exclusion: no contradiction within {EXCLUSION_STATES} states")
    if run._wants_derivation and run.derivation is not None:
        report.notes.append("derivation: " + " ; ".join(s.text for s in run.derivation.steps))
    if run.refutation is not None:
        report.notes.append("refutation: " + " ; ".join(s.text for s in run.refutation.steps))
    return report


def catalog_run_all(budgets: Budgets = DEFAULT_BUDGETS, axioms: Optional[AxiomRegistry] = None) -> List[CatalogReport]:
    return [catalog_run(name, budgets=budgets, axioms=axioms) for name in CATALOG]
