import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krlab.automata import Automaton, permutation_automaton, rz, ts_of
from krlab.errors import FormatError
from krlab.semigroup import is_aperiodic


def test_reset_automaton_sizes():
    assert ts_of(rz(2)).size == 3
    assert ts_of(rz(1)).size == 1
    assert rz(3).step("2", "c1") == "1"
    with pytest.raises(ValueError):
        rz(0)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=6))
def test_reset_automata_are_aperiodic(n):
    ts = ts_of(rz(n))
    assert is_aperiodic(ts)
    assert ts.size == (1 if n == 1 else n + 1)


def test_permutation_automaton_is_a_group():
    ts = ts_of(permutation_automaton(["x", "y", "z"]))
    assert ts.size == 3
    assert not is_aperiodic(ts)


def test_partial_transitions():
    auto = Automaton(states=("p", "q"), letters=("x",), transitions={("p", "x"): "q"})
    assert auto.step("q", "x") is None
    assert ts_of(auto).size == 2


def test_unknown_state_or_letter():
    with pytest.raises(FormatError):
        Automaton(states=("p",), letters=("x",), transitions={("p", "x"): "q"})
    with pytest.raises(FormatError):
        Automaton(states=("p",), letters=("x",), transitions={("p", "y"): "p"})
    with pytest.raises(FormatError):
        Automaton(states=("p", "p"), letters=("x",))
