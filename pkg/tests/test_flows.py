import pytest

from krlab.catalog import catalog_build
from krlab.errors import UnknownGenerator
from krlab.flows import FlowEngine, backflow, free_flow, image, loop, lpf_omega, pullback
from krlab.io_formats import read_script
from krlab.rees import LabeledPartialFunction
from krlab.rhodes import spc_leq
from krlab.states import refutation, states, transition_terms
from krlab.wff import Letter, Loop


def test_letters_and_columns(tf_engine):
    assert tf_engine.letter_names == ["sigma", "tau", "r"]
    assert len(tf_engine.column_names) == 7
    with pytest.raises(UnknownGenerator):
        tf_engine.letter("nope")


def test_omega_power_is_idempotent(tf):
    group = tf.group
    for name in ("sigma", "tau", "r"):
        f = tf.elements[tf.generator(name)]
        e = lpf_omega(f, group)
        assert e.compose(e, group) == e
    tau = tf.elements[tf.generator("tau")]
    assert lpf_omega(tau, group).domain() == [2, 3, 4, 5]


def test_image_along_a_generator(tf, tf_engine):
    lat = tf_engine.lattice
    r = tf.elements[tf.generator("r")]
    assert str(image(lat.parse("{1' 3'}/<1 1>"), r)) == "{1 3}/<1 -1>"
    assert image(lat.parse("{2}"), r).is_bottom


def test_image_collision_is_contradiction(tf_engine):
    lat = tf_engine.lattice
    squash = LabeledPartialFunction(edges=((0, 3), (1, 3), None, None, None, None))
    assert image(lat.parse("{1' 3'}/<1 1>"), squash).contradiction
    assert str(image(lat.parse("{1' | 3'}"), squash)) == "{2}/<1>"


def test_pullback_merges_preimages(tf, tf_engine):
    lat = tf_engine.lattice
    r = tf.elements[tf.generator("r")]
    p = lat.parse("{1' | 3'}")
    merged = pullback(p, lat.parse("{1 3}/<1 -1>"), r)
    assert str(merged) == "{1' 3'}/<1 1>"


def test_vacuum_merges_through_a_column(tf_engine):
    lat = tf_engine.lattice
    p = lat.parse("{1' | 3'}")
    q, log = tf_engine.vacuum_with_log(p)
    assert str(q) == "{1' 3'}/<1 1>"
    assert log and "a1" in log[0].witness
    assert spc_leq(p, q)


def test_vacuum_is_idempotent(tf_engine):
    lat = tf_engine.lattice
    for text in ("{1' | 3'}", "{1 | 3}", "{1 2}/<1 -1>"):
        q = tf_engine.vacuum(lat.parse(text))
        assert tf_engine.vacuum(q) == q


def test_tau_loop_spreads_a_point(tf_engine):
    lat = tf_engine.lattice
    loop = tf_engine.term_operator(Loop((Letter("tau"),)))
    assert str(loop.forward(lat.parse("{1}"))) == "{1 2 3 4}/<1 1 1 1>"


def test_empty_formula_is_vacuum(tf_engine):
    lat = tf_engine.lattice
    p = lat.parse("{1' | 3'}")
    assert tf_engine.wff_operator(()).forward(p) == tf_engine.vacuum(p)


def test_alphabet_contains_single_letter_loops(tf_engine):
    names = [op.name for op in tf_engine.alphabet()]
    assert "tau^(w+*)" in names
    assert len(names) == 3 + 7 + 3


def test_public_operator_constructors(tf_engine):
    lat = tf_engine.lattice
    r = free_flow(tf_engine, "r")
    assert str(r.forward(lat.parse("{1' 3'}/<1 1>"))) == "{1 3}/<1 -1>"
    column = tf_engine.letter(tf_engine.column_names[0])
    assert str(backflow(tf_engine, column).forward(lat.parse("{1' | 3'}"))) == "{1' 3'}/<1 1>"
    spread = loop(tf_engine, free_flow(tf_engine, "tau")).forward(lat.parse("{1}"))
    assert str(spread) == "{1 2 3 4}/<1 1 1 1>"


# ---- Properties on reachable states ----
@pytest.fixture(scope="module")
def tf_states(tf_engine):
    found = states(tf_engine)
    assert found.complete
    return found.states


def test_single_letters_are_monotone(tf_engine, tf_states):
    ops = tf_engine.single_letters()
    for p in tf_states:
        for q in tf_states:
            if p == q or not spc_leq(p, q):
                continue
            for op in ops:
                assert spc_leq(op.forward(p), op.forward(q)), (op.name, str(p), str(q))


def _loops(engine):
    return [engine.term_operator(t) for t in transition_terms(engine) if isinstance(t, Loop)]


def _check_idempotence(engine, reached):
    for p in reached:
        assert engine.vacuum(p) == p
        for op in _loops(engine):
            once = op.forward(p)
            assert op.forward(once) == once, (op.name, str(p))
        for term in transition_terms(engine):
            v = engine.vacuum(engine.term_operator(term).forward(p))
            assert engine.vacuum(v) == v


def test_loops_and_vacuum_are_idempotent_on_tall_fork(tf_engine, tf_states):
    _check_idempotence(tf_engine, tf_states)


@pytest.mark.slow
def test_loops_and_vacuum_are_idempotent_on_utv():
    _, table, _ = catalog_build("UTV")
    engine = FlowEngine(table)
    found = states(engine)
    assert found.complete
    _check_idempotence(engine, found.states)


@pytest.mark.slow
def test_loops_and_vacuum_are_idempotent_along_s2_refutation(data_dir):
    _, table, _ = catalog_build("S2")
    engine = FlowEngine(table)
    script = read_script(data_dir / "scripts" / "s2_refutation.wff")
    d = refutation(engine, engine.lattice.parse(script.start), script.wff)
    assert d is not None
    _check_idempotence(engine, [p for p in d.chain() if not p.contradiction])


# ---- Printed computations ----
def _chain(engine, start, steps):
    cur = engine.lattice.parse(start)
    out = []
    for step in steps:
        if step == "V":
            cur = engine.vacuum(cur)
        elif step.endswith("*"):
            cur = loop(engine, free_flow(engine, step[:-1])).forward(cur)
        else:
            cur = free_flow(engine, step).forward(cur)
        out.append(str(cur))
    return out


def test_utv_chain_merges_then_contradicts():
    _, table, _ = catalog_build("UTV")
    engine = FlowEngine(table)
    assert _chain(engine, "{1'}", ["sigma*", "V", "r", "tau*"]) == [
        "{1' | 3'}/<1 | 1>",
        "{1' 3'}/<1 1>",
        "{1 3}/<1 -1>",
        "=><=",
    ]


@pytest.mark.slow
def test_s2_free_chain_returns_to_its_start():
    _, table, _ = catalog_build("S2")
    engine = FlowEngine(table)
    assert _chain(engine, "{1}", ["a*", "b", "a*", "b"]) == [
        "{1 | 3 | 5 | 7}/<1 | 1 | 1 | 1>",
        "{2}/<1>",
        "{2 | 4 | 6 | 8}/<1 | 1 | 1 | 1>",
        "{1}/<1>",
    ]


@pytest.mark.slow
def test_s4_chain_twists_and_contradicts():
    _, table, _ = catalog_build("S4")
    engine = FlowEngine(table)
    assert _chain(engine, "{1}", ["c4*"]) == ["{1 2 3 4}/<1 1 1 1>"]
    spread = loop(engine, free_flow(engine, "r13")).forward(engine.lattice.parse("{1}"))
    assert spc_leq(engine.lattice.parse("{1 | 3}"), spread)
    assert _chain(engine, "{1 | 3}", ["V", "f", "c4*"]) == ["{1 3}/<1 1>", "{1 3}/<1 -1>", "=><="]
