from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd

from .automata import Automaton, rz, ts_of
from .config import Budgets, DEFAULT_BUDGETS
from .errors import FormatError
from .flows import FlowEngine, block_images, image
from .rees import LabeledPartialFunction
from .rhodes import Spc, join_blocks, spc_join, spc_leq
from .semigroup import SemigroupTable, is_aperiodic, omega_powers, type_ii_mask

logger = logging.getLogger(__name__)


# ---- Types ----
@dataclass(frozen=True)
class FlowAssignment:
    """
    Automaton + covering + state values.

    covering maps each letter to generator names; "ideal" covers every ideal
    element not claimed otherwise, "ideal@<b>" the ideal elements with
    right coordinate b, and "*" every generator left over. Explicit names win
    over "ideal@<b>", then "ideal", then "*".
    """
    automaton: Automaton
    covering: Dict[str, Tuple[str, ...]] = field(hash=False)
    assignment: Dict[str, Spc] = field(hash=False)


@dataclass(frozen=True)
class FlowCheck:
    state: str
    letter: str
    generator: str
    image: str
    target: str
    ok: bool


@dataclass
class FlowReport:
    passed: bool
    condition: Optional[str] = None
    state: Optional[str] = None
    letter: Optional[str] = None
    generator: Optional[str] = None
    detail: str = ""
    checks: List[FlowCheck] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([c.__dict__ for c in self.checks], columns=["state", "letter", "generator", "image", "target", "ok"])

    def summary(self) -> str:
        if self.passed:
            return f"PASS ({len(self.checks)} checks)"
        where = f" at ({self.state}, {self.generator} via {self.letter})" if self.state is not None else ""
        return f"FAIL [{self.condition}]{where}: {self.detail}"


# ---- Covering ----
def _ideal_target(f: LabeledPartialFunction) -> int:
    """Right coordinate b of a non-zero ideal element (every edge lands on b)."""
    return next(e[1] for e in f.edges if e is not None)


def resolve_covering(table: SemigroupTable, flow: FlowAssignment) -> Dict[str, str]:
    """generator name -> letter; every generator covered exactly once."""
    ctx = table.ctx
    letters = set(flow.automaton.letters)
    explicit: Dict[str, str] = {}
    by_b: Dict[str, str] = {}
    default: Optional[str] = None
    rest: Optional[str] = None
    for x, names in flow.covering.items():
        if x not in letters:
            raise FormatError(f"Covering uses unknown letter {x!r}")
        for name in names:
            if name == "*":
                if rest is not None:
                    raise FormatError(f"'*' covered by both {rest!r} and {x!r}")
                rest = x
            elif name == "ideal":
                if default is not None:
                    raise FormatError(f"'ideal' covered by both {default!r} and {x!r}")
                default = x
            elif name.startswith("ideal@"):
                lab = name[len("ideal@"):]
                if not ctx.has_b(lab):
                    raise FormatError(f"Covering entry {name!r} names an unknown point")
                if lab in by_b:
                    raise FormatError(f"{name!r} covered by both {by_b[lab]!r} and {x!r}")
                by_b[lab] = x
            else:
                if not table.has_generator(name):
                    raise FormatError(f"Covering names unknown generator {name!r}")
                if name in explicit:
                    raise FormatError(f"Generator {name!r} covered by both {explicit[name]!r} and {x!r}")
                explicit[name] = x
    out: Dict[str, str] = {}
    for gi, name in zip(table.generator_indices, table.generator_names):
        if name in explicit:
            out[name] = explicit[name]
            continue
        if table.is_ideal(gi):
            lab = ctx.b_labels[_ideal_target(table.elements[gi])]
            x = by_b.get(lab, default)
            if x is not None:
                out[name] = x
                continue
        if rest is not None:
            out[name] = rest
            continue
        raise FormatError(f"Generator {name!r} is not covered by any letter")
    return out


# ---- Verification ----
def _fail(report: FlowReport, condition: str, detail: str, state=None, letter=None, generator=None) -> FlowReport:
    report.passed = False
    report.condition = condition
    report.detail = detail
    report.state, report.letter, report.generator = state, letter, generator
    return report


def verify_flow(table: SemigroupTable, flow: FlowAssignment) -> FlowReport:
    """
    Check a flow certificate with plain free flows (no vacuum).

    - every point lies below some state value
    - (qF)·x <= (q·x)F, undefined transitions target Bottom
    - no block collides with itself; distinct blocks land in distinct blocks
    """
    engine = FlowEngine(table)
    lat = engine.lattice
    auto = flow.automaton
    for q in auto.states:
        if q not in flow.assignment:
            raise FormatError(f"State {q!r} has no assigned value")
        if flow.assignment[q].contradiction:
            raise FormatError(f"State {q!r} is assigned the contradiction")
    cover = resolve_covering(table, flow)
    report = FlowReport(passed=True)

    for b in range(table.ctx.n_b):
        pt = lat.point(b)
        if not any(spc_leq(pt, flow.assignment[q]) for q in auto.states):
            return _fail(report, "coverage", f"point {table.ctx.b_labels[b]} lies below no state value")

    for q in auto.states:
        value = flow.assignment[q]
        for gi, name in zip(table.generator_indices, table.generator_names):
            x = cover[name]
            t = auto.step(q, x)
            target = flow.assignment[t] if t is not None else lat.bottom
            f = table.elements[gi]
            pieces = block_images(value, f)
            img = image(value, f)
            ok = not img.contradiction and all(p is not None for p in pieces) and spc_leq(img, target)
            report.checks.append(FlowCheck(q, x, name, str(img), str(target), ok))
            if any(p is None for p in pieces) or img.contradiction:
                return _fail(report, "cross-section", f"{value} · {name} = {img}", q, x, name)
            if not spc_leq(img, target):
                return _fail(report, "containment", f"{value} · {name} = {img} is not below {target}", q, x, name)
            tw = target.weights()
            hit: Dict[int, int] = {}
            for k, piece in enumerate(pieces):
                if not piece:
                    continue
                blk = tw[next(iter(piece))][0]
                if blk in hit:
                    return _fail(
                        report, "injectivity",
                        f"blocks {hit[blk]} and {k} of {value} both land in block {blk} of {target}",
                        q, x, name,
                    )
                hit[blk] = k
    logger.debug("flow verified with %d checks", len(report.checks))
    return report


# ---- Search ----
def _restricted_growth(n_b: int, n: int) -> Iterator[Tuple[int, ...]]:
    """Surjections B -> {0..n-1} up to renaming, as restricted growth strings."""
    def walk(prefix: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n_b:
            if top == n:
                yield tuple(prefix)
            return
        if n - top > n_b - len(prefix):
            return
        for v in range(min(top + 1, n)):
            prefix.append(v)
            yield from walk(prefix, max(top, v + 1))
            prefix.pop()
    if n_b == 0:
        return
    yield from walk([], 0)


def _saturate(
    engine: FlowEngine,
    table: SemigroupTable,
    automaton: Automaton,
    cover: Dict[str, str],
    seeds: Dict[str, Spc],
) -> Optional[Dict[str, Spc]]:
    values = {q: engine.vacuum(v) for q, v in seeds.items()}
    gens = list(zip(table.generator_indices, table.generator_names))
    for _ in range(engine.budgets.max_iterations):
        changed = False
        for q in automaton.states:
            for gi, name in gens:
                t = automaton.step(q, cover[name])
                if t is None:
                    continue
                img = image(values[q], table.elements[gi])
                if img.contradiction:
                    return None
                nxt = engine.vacuum(spc_join(values[t], img))
                if nxt.contradiction:
                    return None
                if nxt != values[t]:
                    values[t] = nxt
                    changed = True
        if not changed:
            return values
    return None


def search_flow(
    table: SemigroupTable,
    max_states: int,
    require_aperiodic: bool = True,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[FlowAssignment]:
    """
    Look for a flow over rz(n), n = 1..max_states.

    States own the points (one owner function per restricted growth string);
    every non-ideal generator is covered by "id" or a constant, ideal elements
    (a, g, b) by the constant of b's owner. Values start at the owned points and
    are saturated under the generator actions and the vacuum. A None result
    only means nothing was found in this family.
    """
    if max_states < 1:
        raise ValueError(f"max_states must be >= 1, got {max_states}")
    engine = FlowEngine(table, budgets)
    lat = engine.lattice
    ctx = table.ctx
    plain = [name for gi, name in zip(table.generator_indices, table.generator_names) if not table.is_ideal(gi)]
    ideal = [(gi, name) for gi, name in zip(table.generator_indices, table.generator_names) if table.is_ideal(gi)]
    logger.warning("search_flow only explores rz(n) coverings with vacuum-saturated values")
    for n in range(1, max_states + 1):
        automaton = rz(n)
        if require_aperiodic and not is_aperiodic(ts_of(automaton, budgets)):
            continue
        tried = 0
        for owner in _restricted_growth(ctx.n_b, n):
            seeds = {
                q: join_blocks(lat, [{b: lat.group.identity} for b in range(ctx.n_b) if owner[b] == k])
                for k, q in enumerate(automaton.states)
            }
            ideal_cover = {name: f"c{owner[_ideal_target(table.elements[gi])] + 1}" for gi, name in ideal}
            for choice in itertools.product(["id"] + [f"c{j}" for j in automaton.states], repeat=len(plain)):
                tried += 1
                cover = dict(zip(plain, choice))
                cover.update(ideal_cover)
                values = _saturate(engine, table, automaton, cover, seeds)
                if values is None:
                    continue
                covering: Dict[str, List[str]] = {}
                for name, x in cover.items():
                    covering.setdefault(x, []).append(name)
                flow = FlowAssignment(
                    automaton=automaton,
                    covering={x: tuple(v) for x, v in covering.items()},
                    assignment=values,
                )
                if verify_flow(table, flow).passed:
                    logger.info("flow found over rz(%d) after %d candidates", n, tried)
                    return flow
        logger.debug("no flow over rz(%d) (%d candidates)", n, tried)
    return None


def one_point_flow_test(table: SemigroupTable) -> bool:
    """True iff the type II elements of the ideal have trivial subgroups."""
    mask = type_ii_mask(table) & table.ideal_mask
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return True
    p = omega_powers(table)
    return bool(np.all(table.cayley[p[idx], idx] == p[idx]))
