import networkx as nx
import pytest

from krlab.catalog import CATALOG, catalog_build
from krlab.errors import CapExceeded
from krlab.hull import (
    RowMonomial,
    anticliques,
    check_linked,
    cycle_continuity,
    degree,
    fiber_graph,
    hull_elements,
    in_hull,
    link_solutions,
    link_solve,
    make_Mk,
)
from krlab.rees import LabeledPartialFunction, parse_lpf


def test_make_mk_shape():
    m = make_Mk(3)
    assert len(m) == 6
    assert m[0] == [1, 1, 0]
    assert m[2] == [1, 0, 1]
    assert m[3:] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(ValueError):
        make_Mk(0)


def test_link_solve_for_a_generator(tf):
    tau = tf.elements[tf.generator("tau")]
    x = RowMonomial.from_lpf(tau)
    y = link_solve(tf.ctx, x)
    assert y is not None
    assert len(y.cols) == tf.ctx.n_a
    assert check_linked(tf.ctx, x, y)


def test_weight_clash_is_outside_hull(pair_ctx):
    assert in_hull(pair_ctx, parse_lpf(pair_ctx, "1->2, 2->1"))
    assert not in_hull(pair_ctx, parse_lpf(pair_ctx, "1->1, 2->-1"))


def test_hull_elements_include_identity_and_zero(pair_ctx):
    elems = hull_elements(pair_ctx)
    assert LabeledPartialFunction.zero(2) in elems
    assert LabeledPartialFunction.identity(2, pair_ctx.group) in elems
    assert all(in_hull(pair_ctx, f) for f in elems)


def test_cycle_continuity():
    assert cycle_continuity(4, [1, 2, 3, 0])
    assert cycle_continuity(4, {0: 0, 1: 2})
    assert not cycle_continuity(4, [0, 2, 1, 3])
    with pytest.raises(ValueError):
        cycle_continuity(2, [0, 1])


def test_anticliques_of_square():
    sets = anticliques(nx.cycle_graph(4))
    assert len(sets) == 7
    assert sets[0] == ()
    assert (0, 2) in sets and (1, 3) in sets
    with pytest.raises(CapExceeded):
        anticliques(nx.cycle_graph(4), cap=3)


@pytest.mark.slow
def test_degree_two_fibers():
    ctx, table, _ = catalog_build("S4")
    assert degree(ctx, table) == 2
    graph = fiber_graph(ctx, table).graph
    assert graph.number_of_nodes() == ctx.group.order * ctx.n_b
    assert all(d == 2 for _, d in graph.degree())


def test_every_link_solution_is_linked(pair_ctx):
    x = RowMonomial.from_lpf(parse_lpf(pair_ctx, "1->2, 2->1"))
    solutions = link_solutions(pair_ctx, x)
    assert solutions
    assert link_solve(pair_ctx, x) == solutions[0]
    assert all(check_linked(pair_ctx, x, y) for y in solutions)


def _check_link_solutions(ctx, elements):
    for f in elements:
        x = RowMonomial.from_lpf(f)
        y = link_solve(ctx, x)
        assert y is not None and check_linked(ctx, x, y), f
        if ctx.is_gm:
            assert link_solutions(ctx, x) == [y]


def test_link_solutions_on_tall_fork(tf):
    _check_link_solutions(tf.ctx, tf.elements)


@pytest.mark.slow
@pytest.mark.parametrize("name", [n for n in CATALOG if n != "TF"])
def test_link_solutions_on_catalog(name):
    ctx, table, _ = catalog_build(name)
    step = max(1, table.size // 200)
    sample = [table.elements[i] for i in table.generator_indices] + list(table.elements[::step])
    _check_link_solutions(ctx, sample)
