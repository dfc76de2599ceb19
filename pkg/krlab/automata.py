from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Budgets, DEFAULT_BUDGETS
from .errors import FormatError
from .groups import cyclic_group
from .rees import LabeledPartialFunction, ReesContext, make_rees
from .semigroup import SemigroupTable, transformation_semigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Automaton:
    """
    Deterministic partial automaton.

    - states / letters keep file order
    - transitions[(q, x)] is the unique target; missing pairs are undefined
    """
    states: Tuple[str, ...]
    letters: Tuple[str, ...]
    transitions: Dict[Tuple[str, str], str] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.states)) != len(self.states):
            raise FormatError(f"Automaton states repeat: {list(self.states)}")
        if len(set(self.letters)) != len(self.letters):
            raise FormatError(f"Automaton letters repeat: {list(self.letters)}")
        known_q, known_x = set(self.states), set(self.letters)
        for (q, x), t in self.transitions.items():
            if q not in known_q or t not in known_q:
                raise FormatError(f"Transition {q} --{x}--> {t} uses an unknown state")
            if x not in known_x:
                raise FormatError(f"Transition {q} --{x}--> {t} uses an unknown letter")

    def step(self, q: str, x: str) -> Optional[str]:
        return self.transitions.get((q, x))

    def letter_map(self, x: str) -> Dict[str, str]:
        return {q: t for (q, y), t in self.transitions.items() if y == x}


def _state_context(automaton: Automaton) -> ReesContext:
    trivial = cyclic_group(1)
    n = len(automaton.states)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return make_rees(trivial, automaton.states, automaton.states, ident)


def ts_of(automaton: Automaton, budgets: Budgets = DEFAULT_BUDGETS) -> SemigroupTable:
    """Transformation semigroup generated by the letter actions (letters become generators)."""
    ctx = _state_context(automaton)
    pos = {q: i for i, q in enumerate(automaton.states)}
    gens: List[LabeledPartialFunction] = []
    for x in automaton.letters:
        m = automaton.letter_map(x)
        gens.append(
            LabeledPartialFunction(
                edges=tuple((0, pos[m[q]]) if q in m else None for q in automaton.states)
            )
        )
    table = transformation_semigroup(ctx, gens, list(automaton.letters), budgets)
    logger.debug("ts of %d-state automaton has %d elements", len(automaton.states), table.size)
    return table


def rz(n: int) -> Automaton:
    """States 1..n; letter "id" fixes everything, letter "c<j>" sends every state to j."""
    if n < 1:
        raise ValueError(f"rz needs n >= 1, got {n}")
    states = tuple(str(i) for i in range(1, n + 1))
    letters = ("id",) + tuple(f"c{j}" for j in states)
    transitions: Dict[Tuple[str, str], str] = {}
    for q in states:
        transitions[(q, "id")] = q
        for j in states:
            transitions[(q, f"c{j}")] = j
    return Automaton(states=states, letters=letters, transitions=transitions)


def permutation_automaton(cycle: Sequence[str], letter: str = "g") -> Automaton:
    states = tuple(cycle)
    transitions = {(q, letter): states[(i + 1) % len(states)] for i, q in enumerate(states)}
    return Automaton(states=states, letters=(letter,), transitions=transitions)
