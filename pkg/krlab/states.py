from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import BudgetExceeded
from .flows import FlowEngine, VacuumStep
from .rhodes import Spc
from .wff import Letter, Loop, Term, Wff, format_term

logger = logging.getLogger(__name__)


# ---- Derivations ----
@dataclass(frozen=True)
class DerivationStep:
    term: Term
    raw: Spc
    vacuum: Tuple[VacuumStep, ...]
    result: Spc

    @property
    def text(self) -> str:
        return format_term(self.term)


@dataclass(frozen=True)
class Derivation:
    """
    A replayable chain start -V-> origin -t1,V-> ... -tn,V-> final.

    Each step keeps the raw forward image, the vacuum merges made while
    evaluating it (witness word, before, after) and the normalized result.
    """
    start: Spc
    origin: Spc
    start_vacuum: Tuple[VacuumStep, ...]
    steps: Tuple[DerivationStep, ...]

    @property
    def final(self) -> Spc:
        return self.steps[-1].result if self.steps else self.origin

    @property
    def reaches_contradiction(self) -> bool:
        return self.final.contradiction

    def wff(self) -> Wff:
        return tuple(s.term for s in self.steps)

    def chain(self) -> List[Spc]:
        return [self.origin] + [s.result for s in self.steps]


def wff_eval(engine: FlowEngine, w: Wff, p: Spc) -> Spc:
    """V-conjugated evaluation; the empty formula is V itself."""
    return engine.wff_operator(w).forward(p)


def wff_trace(engine: FlowEngine, w: Wff, p: Spc) -> Derivation:
    origin, log = engine.vacuum_with_log(p)
    cur = origin
    steps: List[DerivationStep] = []
    for term in w:
        frame = engine.capture()
        raw = engine.term_operator(term).forward(cur)
        result = engine.vacuum(raw)
        vlog = engine.release(frame)
        steps.append(DerivationStep(term=term, raw=raw, vacuum=vlog, result=result))
        cur = result
    return Derivation(start=p, origin=origin, start_vacuum=log, steps=tuple(steps))


def replay_derivation(engine: FlowEngine, derivation: Derivation) -> bool:
    """Re-run every step and compare with the logged values."""
    origin = engine.vacuum(derivation.start)
    if origin != derivation.origin:
        logger.info("replay: origin %s differs from logged %s", origin, derivation.origin)
        return False
    cur = origin
    for k, step in enumerate(derivation.steps):
        raw = engine.term_operator(step.term).forward(cur)
        result = engine.vacuum(raw)
        if raw != step.raw or result != step.result:
            logger.info("replay: step %d (%s) gives %s, logged %s", k, step.text, result, step.result)
            return False
        cur = result
    return True


def derivation_script(derivation: Derivation) -> str:
    """Script text accepted by io_formats.read_script."""
    lines = [f"start: {derivation.start}"]
    lines.extend(step.text for step in derivation.steps)
    return "\n".join(lines) + "\n"


# ---- Reachable states ----
@dataclass(frozen=True)
class _Arrival:
    prev: Optional[Spc]
    term: Optional[Term]
    raw: Spc
    vacuum: Tuple[VacuumStep, ...]


@dataclass
class StateSet:
    """Reachable lattice values in discovery order, with how each was first reached."""
    engine: FlowEngine
    states: List[Spc] = field(default_factory=list)
    arrivals: Dict[Spc, _Arrival] = field(default_factory=dict)
    complete: bool = True

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, p: Spc) -> bool:
        return p in self.arrivals

    def derivation(self, target: Spc) -> Derivation:
        if target not in self.arrivals:
            raise KeyError(str(target))
        steps: List[DerivationStep] = []
        cur = target
        arr = self.arrivals[cur]
        while arr.prev is not None:
            steps.append(DerivationStep(term=arr.term, raw=arr.raw, vacuum=arr.vacuum, result=cur))
            cur = arr.prev
            arr = self.arrivals[cur]
        steps.reverse()
        return Derivation(start=arr.raw, origin=cur, start_vacuum=arr.vacuum, steps=tuple(steps))


def transition_terms(engine: FlowEngine) -> List[Term]:
    """Letters in generator order, then ideal columns, then loops."""
    terms: List[Term] = [Letter(n) for n in engine.letter_names]
    terms.extend(Letter(n) for n in engine.column_names)
    terms.extend(Loop(tuple(Letter(n) for n in body)) for body in engine.loop_bodies())
    return terms


def _explore(engine: FlowEngine, stop_at_contradiction: bool) -> StateSet:
    limit = engine.budgets.max_states
    result = StateSet(engine=engine)
    queue: deque = deque()

    def visit(p: Spc, arrival: _Arrival) -> bool:
        if p in result.arrivals:
            return False
        result.arrivals[p] = arrival
        if p.contradiction:
            return True
        result.states.append(p)
        if len(result.states) > limit:
            raise BudgetExceeded(f"More than {limit} reachable states", limit=limit)
        if p.n_points:
            queue.append(p)
        return False

    for pt in engine.points():
        origin, log = engine.vacuum_with_log(pt)
        visit(origin, _Arrival(prev=None, term=None, raw=pt, vacuum=log))

    terms = transition_terms(engine)
    while queue:
        p = queue.popleft()
        for term in terms:
            frame = engine.capture()
            raw = engine.term_operator(term).forward(p)
            q = engine.vacuum(raw)
            log = engine.release(frame)
            hit = visit(q, _Arrival(prev=p, term=term, raw=raw, vacuum=log))
            if hit and stop_at_contradiction:
                logger.debug("contradiction after %d states", len(result.states))
                return result
    logger.debug("explored %d states", len(result.states))
    return result


def states(engine: FlowEngine) -> StateSet:
    """Closure of the vacuum-normalized points under letters, columns and loops."""
    return _explore(engine, stop_at_contradiction=False)


def find_contradiction(engine: FlowEngine) -> Optional[Derivation]:
    """
    Shortest derivation from a point to the contradiction, or None when the
    reachable set is exhausted without one. BudgetExceeded means the search
    was cut off.
    """
    found = _explore(engine, stop_at_contradiction=True)
    top = engine.lattice.contradiction
    if top in found.arrivals:
        return found.derivation(top)
    return None


def refutation(engine: FlowEngine, start: Spc, w: Wff) -> Optional[Derivation]:
    """Trace of w from start when it ends in the contradiction."""
    d = wff_trace(engine, w, start)
    return d if d.reaches_contradiction else None
