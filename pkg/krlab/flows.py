from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Budgets, DEFAULT_BUDGETS
from .errors import IterationBudgetExceeded, UnknownGenerator
from .groups import FiniteGroup
from .rees import IdealElement, LabeledPartialFunction, ideal_action, ideal_name
from .rhodes import RhodesLattice, Spc, join_blocks, spc_join
from .semigroup import SemigroupTable
from .wff import Letter, Loop, Term, Wff, format_term, format_wff

logger = logging.getLogger(__name__)


# ---- Labeled partial function helpers ----
def lpf_omega(f: LabeledPartialFunction, group: FiniteGroup) -> LabeledPartialFunction:
    """The idempotent power of f."""
    powers = [f]
    seen = {f: 1}
    while True:
        nxt = powers[-1].compose(f, group)
        if nxt in seen:
            index = seen[nxt]
            period = len(powers) + 1 - index
            k = -(-index // period) * period
            return powers[k - 1]
        seen[nxt] = len(powers) + 1
        powers.append(nxt)


def image(p: Spc, f: LabeledPartialFunction) -> Spc:
    """
    Push p along f.

    Two points of one block landing on the same target must carry the same
    weight there (else contradiction); images of distinct blocks are joined.
    """
    lat = p.lattice
    if p.contradiction:
        return p
    group = lat.group
    pieces: List[Dict[int, int]] = []
    for blk in p.blocks:
        img: Dict[int, int] = {}
        for b, w in blk:
            e = f.edges[b]
            if e is None:
                continue
            w2 = group.mul(w, e[0])
            if e[1] in img and img[e[1]] != w2:
                return lat.contradiction
            img[e[1]] = w2
        if img:
            pieces.append(img)
    return join_blocks(lat, pieces)


def block_images(p: Spc, f: LabeledPartialFunction) -> List[Optional[Dict[int, int]]]:
    """Per-block images (None marks a same-block weight collision)."""
    group = p.lattice.group
    out: List[Optional[Dict[int, int]]] = []
    for blk in p.blocks:
        img: Dict[int, int] = {}
        bad = False
        for b, w in blk:
            e = f.edges[b]
            if e is None:
                continue
            w2 = group.mul(w, e[0])
            if e[1] in img and img[e[1]] != w2:
                bad = True
                break
            img[e[1]] = w2
        out.append(None if bad else img)
    return out


def pullback(p: Spc, r: Spc, tracker: LabeledPartialFunction) -> Spc:
    """p joined with the blocks of r pulled back along tracker."""
    lat = p.lattice
    group = lat.group
    rw = r.weights()
    pulled: Dict[int, Dict[int, int]] = {}
    for b in p.domain():
        e = tracker.edges[b]
        if e is None or e[1] not in rw:
            continue
        k, w = rw[e[1]]
        pulled.setdefault(k, {})[b] = group.mul(w, group.inv(e[0]))
    if not any(len(blk) > 1 for blk in pulled.values()):
        return p
    return join_blocks(lat, [dict(b) for b in p.blocks] + list(pulled.values()))


# ---- Operators ----
class FlowOperator:
    """
    Forward action Spc -> Spc on reachable states, memoized.

    tracker is a labeled partial function that the operator dominates:
    forward(p) >= image(p, tracker). Back flows pull blocks back along it.
    """

    def __init__(self, engine: "FlowEngine", name: str, tracker: LabeledPartialFunction) -> None:
        self.engine = engine
        self.name = name
        self.tracker = tracker
        self._memo: Dict[Spc, Tuple[Spc, Tuple["VacuumStep", ...]]] = {}

    def forward(self, p: Spc) -> Spc:
        if p.contradiction:
            return p
        hit = self._memo.get(p)
        if hit is None:
            self.engine._frames.append([])
            try:
                value = self._forward(p)
            finally:
                events = tuple(self.engine._frames.pop())
            hit = (value, events)
            self._memo[p] = hit
        self.engine._emit(hit[1])
        return hit[0]

    def _forward(self, p: Spc) -> Spc:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class LetterFlow(FlowOperator):
    def _forward(self, p: Spc) -> Spc:
        return image(p, self.tracker)


class ComposeFlow(FlowOperator):
    def __init__(self, engine: "FlowEngine", name: str, parts: Sequence[FlowOperator]) -> None:
        tracker = engine.identity
        for part in parts:
            tracker = tracker.compose(part.tracker, engine.group)
        super().__init__(engine, name, tracker)
        self.parts = tuple(parts)

    def _forward(self, p: Spc) -> Spc:
        for part in self.parts:
            p = part.forward(p)
            if p.contradiction:
                break
        return p


class NormalizeFlow(FlowOperator):
    """Saturation under back flows of single letters (generators and ideal columns)."""

    def __init__(self, engine: "FlowEngine") -> None:
        super().__init__(engine, "N", engine.identity)

    def _forward(self, p: Spc) -> Spc:
        return self.engine.inner_normalize(p)


class VacuumFlow(FlowOperator):
    def __init__(self, engine: "FlowEngine") -> None:
        super().__init__(engine, "V", engine.identity)

    def _forward(self, p: Spc) -> Spc:
        return self.engine.vacuum(p)


class BackFlow(FlowOperator):
    def __init__(self, engine: "FlowEngine", op: FlowOperator) -> None:
        super().__init__(engine, f"back({op.name})", engine.identity)
        self.op = op

    def _forward(self, p: Spc) -> Spc:
        return self.engine.backflow(self.op, p)


class LoopFlow(FlowOperator):
    """
    body^(w+*): start at the idempotent power of the body on p, then
    join-iterate q <- N(q ∨ body(q)) to a fixpoint.
    """

    def __init__(self, engine: "FlowEngine", name: str, body: FlowOperator) -> None:
        super().__init__(engine, name, lpf_omega(body.tracker, engine.group))
        self.body = body

    def _forward(self, p: Spc) -> Spc:
        budget = self.engine.budgets.max_iterations
        seq = [p]
        seen = {p: 0}
        while True:
            nxt = self.body.forward(seq[-1])
            if nxt.contradiction:
                return nxt
            if nxt in seen:
                index = seen[nxt]
                period = len(seq) - index
                break
            seen[nxt] = len(seq)
            seq.append(nxt)
            if len(seq) > budget:
                raise IterationBudgetExceeded(f"{self.name}: orbit longer than {budget}", limit=budget)
        k = -(-index // period) * period
        q = seq[k]
        for _ in range(budget):
            step = self.engine.inner_normalize(spc_join(q, self.body.forward(q)))
            if step == q or step.contradiction:
                return step
            q = step
        raise IterationBudgetExceeded(f"{self.name}: no fixpoint after {budget} rounds", limit=budget)


# ---- Vacuum log ----
@dataclass(frozen=True)
class VacuumStep:
    witness: str
    before: Spc
    after: Spc


@dataclass(frozen=True)
class _Partial:
    ops: Tuple[FlowOperator, ...]
    value: Spc
    tracker: LabeledPartialFunction


# ---- Engine ----
class FlowEngine:
    """
    Flow operators of one semigroup, restricted to reachable lattice values.

    - letters: non-ideal generators in file order
    - columns: one ideal element per A-column (all elements of a column
      induce the same back flow)
    - vacuum(): saturation under back flows along words of letters, columns
      and single-letter loops, up to budgets.word_bound terms
    """

    def __init__(self, table: SemigroupTable, budgets: Budgets = DEFAULT_BUDGETS) -> None:
        self.table = table
        self.ctx = table.ctx
        self.group = table.ctx.group
        self.budgets = budgets
        self.lattice = RhodesLattice(group=self.group, b_labels=self.ctx.b_labels)
        self.identity = LabeledPartialFunction.identity(self.ctx.n_b, self.group)
        self._letters: Dict[str, LetterFlow] = {}
        self.letter_names: List[str] = []
        for gi, name in zip(table.generator_indices, table.generator_names):
            if table.is_ideal(gi):
                continue
            self.letter_names.append(name)
        self.column_names: List[str] = []
        self._columns: Dict[str, LetterFlow] = {}
        if table.ideal_mask.any():
            for a in range(self.ctx.n_a):
                e = IdealElement(a=a, g=self.group.identity, b=0)
                name = ideal_name(self.ctx, e)
                self.column_names.append(name)
                self._columns[name] = LetterFlow(self, name, ideal_action(self.ctx, e))
        self.normalizer = NormalizeFlow(self)
        self.vacuum_flow = VacuumFlow(self)
        self._inner_loops: Dict[Tuple[str, ...], LoopFlow] = {}
        self._term_ops: Dict[Term, FlowOperator] = {}
        self._wff_ops: Dict[Wff, FlowOperator] = {}
        self._norm_memo: Dict[Spc, Spc] = {}
        self._vac_memo: Dict[Spc, Tuple[Spc, Tuple[VacuumStep, ...]]] = {}
        self._frames: List[List[VacuumStep]] = []
        self._alphabet: Optional[List[FlowOperator]] = None

    # ---- letters ----
    def letter(self, name: str) -> LetterFlow:
        if name in self._columns:
            return self._columns[name]
        if name not in self._letters:
            try:
                idx = self.table.generator(name)
            except UnknownGenerator:
                raise UnknownGenerator(f"Unknown generator {name!r}")
            self._letters[name] = LetterFlow(self, name, self.table.elements[idx])
        return self._letters[name]

    def single_letters(self) -> List[LetterFlow]:
        return [self.letter(n) for n in self.letter_names] + [self._columns[n] for n in self.column_names]

    def point(self, b: int) -> Spc:
        return self.lattice.point(b)

    def points(self) -> List[Spc]:
        return [self.point(b) for b in range(self.ctx.n_b)]

    # ---- back flow and normalization ----
    def backflow(self, op: FlowOperator, p: Spc) -> Spc:
        """p joined with op(p) pulled back; an image that is the contradiction forces nothing."""
        if p.contradiction or p.n_points < 2:
            return p
        r = op.forward(p)
        if r.contradiction or r.is_bottom:
            return p
        return pullback(p, r, op.tracker)

    def inner_normalize(self, p: Spc) -> Spc:
        if p.contradiction or p.n_points < 2:
            return p
        hit = self._norm_memo.get(p)
        if hit is not None:
            return hit
        q = p
        for _ in range(self.budgets.max_iterations):
            before = q
            for op in self.single_letters():
                q = self.backflow(op, q)
                if q.contradiction:
                    break
            if q == before or q.contradiction:
                self._norm_memo[p] = q
                return q
        raise IterationBudgetExceeded("normalization did not stabilize", limit=self.budgets.max_iterations)

    def inner_loop(self, body: Sequence[str]) -> LoopFlow:
        key = tuple(body)
        if key not in self._inner_loops:
            ops: List[FlowOperator] = [self.letter(n) for n in key] + [self.normalizer]
            name = format_term(Loop(tuple(Letter(n) for n in key)))
            self._inner_loops[key] = LoopFlow(self, name, ComposeFlow(self, name, ops))
        return self._inner_loops[key]

    def loop_bodies(self) -> List[Tuple[str, ...]]:
        """Words of letters up to loop_body_bound that are not proper powers."""
        out: List[Tuple[str, ...]] = []
        layer: List[Tuple[str, ...]] = [()]
        for _ in range(self.budgets.loop_body_bound):
            layer = [w + (n,) for w in layer for n in self.letter_names]
            out.extend(w for w in layer if not _is_proper_power(w))
        return out

    def alphabet(self) -> List[FlowOperator]:
        if self._alphabet is None:
            ops: List[FlowOperator] = list(self.single_letters())
            ops.extend(self.inner_loop(body) for body in self.loop_bodies())
            self._alphabet = ops
        return self._alphabet

    # ---- vacuum ----
    def vacuum(self, p: Spc) -> Spc:
        return self.vacuum_with_log(p)[0]

    def vacuum_with_log(self, p: Spc) -> Tuple[Spc, Tuple[VacuumStep, ...]]:
        if p.contradiction or p.n_points < 2:
            return p, ()
        hit = self._vac_memo.get(p)
        if hit is None:
            self._frames.append([])
            try:
                hit = self._saturate(p)
            finally:
                self._frames.pop()
            self._vac_memo[p] = hit
        self._emit(hit[1])
        return hit

    def _saturate(self, p: Spc) -> Tuple[Spc, Tuple[VacuumStep, ...]]:
        log: List[VacuumStep] = []
        q = p
        for _ in range(self.budgets.max_iterations):
            found = self._vacuum_round(q)
            if found is None:
                break
            witness, nxt = found
            log.append(VacuumStep(witness=witness, before=q, after=nxt))
            logger.debug("vacuum %s: %s -> %s", witness, q, nxt)
            q = nxt
            if q.contradiction:
                break
        else:
            raise IterationBudgetExceeded("vacuum did not stabilize", limit=self.budgets.max_iterations)
        return q, tuple(log)

    # ---- event capture ----
    def _emit(self, events: Sequence[VacuumStep]) -> None:
        if events and self._frames:
            frame = self._frames[-1]
            frame.extend(e for e in events if e not in frame)

    def capture(self) -> List[VacuumStep]:
        """Start collecting vacuum merges; pass the list back to release()."""
        frame: List[VacuumStep] = []
        self._frames.append(frame)
        return frame

    def release(self, frame: List[VacuumStep]) -> Tuple[VacuumStep, ...]:
        top = self._frames.pop()
        assert top is frame
        self._emit(top)
        return tuple(top)

    def _vacuum_round(self, q: Spc) -> Optional[Tuple[str, Spc]]:
        """Shortest word whose back flow moves q, with the moved value."""
        alphabet = self.alphabet()
        queue = deque([_Partial(ops=(), value=q, tracker=self.identity)])
        seen = {(q, self.identity)}
        while queue:
            cur = queue.popleft()
            for op in alphabet:
                if cur.ops and op is cur.ops[-1] and isinstance(op, LoopFlow):
                    continue
                value = op.forward(cur.value)
                if value.contradiction or value.is_bottom:
                    continue
                tracker = cur.tracker.compose(op.tracker, self.group)
                moved = pullback(q, value, tracker)
                if moved != q:
                    ops = cur.ops + (op,)
                    return " ".join(o.name for o in ops), moved
                if len(cur.ops) + 1 < self.budgets.word_bound and value.n_points > 1:
                    if (value, tracker) in seen:
                        continue
                    seen.add((value, tracker))
                    queue.append(_Partial(ops=cur.ops + (op,), value=value, tracker=tracker))
        return None

    # ---- well-formed formulae ----
    def term_operator(self, term: Term) -> FlowOperator:
        op = self._term_ops.get(term)
        if op is None:
            if isinstance(term, Letter):
                op = self.letter(term.name)
            else:
                body = self.wff_operator(term.body)
                op = LoopFlow(self, format_term(term), body)
            self._term_ops[term] = op
        return op

    def wff_operator(self, w: Wff) -> FlowOperator:
        """V·t1·V·t2·V…: every term conjugated by the vacuum."""
        op = self._wff_ops.get(w)
        if op is None:
            parts: List[FlowOperator] = [self.vacuum_flow]
            for term in w:
                parts.extend([self.term_operator(term), self.vacuum_flow])
            op = ComposeFlow(self, format_wff(w) or "V", parts)
            self._wff_ops[w] = op
        return op

    def free_flow(self, name: str) -> LetterFlow:
        return self.letter(name)

    def loop(self, op: FlowOperator) -> LoopFlow:
        return LoopFlow(self, f"({op.name})^(w+*)", op)


def _is_proper_power(word: Tuple[str, ...]) -> bool:
    n = len(word)
    for d in range(1, n):
        if n % d == 0 and word[:d] * (n // d) == word:
            return True
    return False


# ---- Public operations ----
def free_flow(engine: FlowEngine, x: str) -> LetterFlow:
    return engine.free_flow(x)


def loop(engine: FlowEngine, op: FlowOperator) -> LoopFlow:
    return engine.loop(op)


def backflow(engine: FlowEngine, op: FlowOperator) -> BackFlow:
    return BackFlow(engine, op)


def vacuum(engine: FlowEngine) -> VacuumFlow:
    return engine.vacuum_flow
