import numpy as np
import pytest

from krlab.automata import rz, ts_of
from krlab.errors import ElementBudgetExceeded, ValidationError
from krlab.groups import cyclic_group
from krlab.hull import make_Mk
from krlab.rees import LabeledPartialFunction, make_rees, parse_lpf
from krlab.semigroup import (
    generate,
    idempotent_generated,
    is_aperiodic,
    points,
    reduced_product,
    rlm,
    tilson_congruence,
    type_ii,
    type_ii_mask,
)


def test_tall_fork_has_99_elements(tf):
    assert tf.size == 99
    assert tf.generator_names[:3] == ("sigma", "tau", "r")
    assert tf.zero is not None
    assert int(tf.ideal_mask.sum()) == 7 * 2 * 6


def test_cayley_table_matches_composition(tf):
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, tf.size, size=(50, 2)):
        f = tf.elements[i].compose(tf.elements[j], tf.group)
        assert tf.product(int(i), int(j)) == tf.index_of(f)


def test_ideal_only_semigroup(pair_table):
    assert pair_table.size == 13
    assert all(pair_table.is_ideal(i) for i in range(pair_table.size))


def test_element_budget(tf, small_budgets):
    with pytest.raises(ElementBudgetExceeded):
        generate(tf.ctx, [tf.elements[tf.generator("tau")]], budgets=small_budgets)


def test_generators_outside_hull_are_rejected(pair_ctx):
    bad = parse_lpf(pair_ctx, "1->1, 2->-1")
    with pytest.raises(ValidationError, match="translational hull"):
        generate(pair_ctx, [bad], names=["p"])
    table = generate(pair_ctx, [bad], names=["p"], check_hull=False)
    assert table.has_generator("p")


def test_duplicate_generator_names(pair_ctx):
    f = LabeledPartialFunction.identity(2, pair_ctx.group)
    with pytest.raises(ValidationError):
        generate(pair_ctx, [f, f], names=["e", "e"])


def test_aperiodicity():
    assert is_aperiodic(ts_of(rz(3)))


def test_tall_fork_is_not_aperiodic(tf):
    assert not is_aperiodic(tf)


def test_rlm_of_tall_fork(tf):
    image = rlm(tf.ctx, tf)
    assert image.table.size == 53
    assert image.ctx.group.is_trivial()
    # the quotient respects products
    for i in range(0, tf.size, 7):
        for j in range(0, tf.size, 5):
            assert image.quotient[tf.product(i, j)] == image.table.product(int(image.quotient[i]), int(image.quotient[j]))


def test_type_ii_contains_idempotents(tf):
    mask = type_ii_mask(tf)
    assert mask[tf.idempotents()].all()
    sub = type_ii(tf)
    assert sub.size == int(mask.sum())
    assert all(sub.elements[k] == tf.elements[p] for k, p in enumerate(sub.parent_indices))


def test_tilson_congruence_partitions_points(pair_table):
    classes = tilson_congruence(pair_table.ctx, pair_table)
    pts = [pt for c in classes for pt in c]
    assert len(pts) == len(set(pts)) == 2 * 2


def test_reduced_product_doubles_nonzero_elements(pair_table):
    ctx2, table2 = reduced_product(cyclic_group(3), pair_table.ctx, pair_table)
    assert ctx2.group.order == 6
    assert table2.size == 3 * (pair_table.size - 1) + 1
    assert table2.zero is not None


def test_idempotent_generated_lies_in_type_ii(tf):
    sub = idempotent_generated(tf)
    mask = type_ii_mask(tf)
    assert all(mask[p] for p in sub.parent_indices)
    assert set(tf.idempotents()) <= set(sub.parent_indices)


def test_type_ii_maps_into_type_ii_of_rlm(tf):
    image = rlm(tf.ctx, tf)
    mapped = image.quotient[type_ii_mask(tf)]
    assert type_ii_mask(image.table)[mapped].all()


# ---- Tilson congruence against every partition of G×B ----
def _set_partitions(n):
    """Restricted growth strings of length n."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(top + 2):
            yield from grow(prefix + [label], max(top, label))
    yield from grow([], -1)


def _minimal_injective_congruence(table):
    pts = points(table.ctx)
    pos = {pt: i for i, pt in enumerate(pts)}
    actions = []
    for gi in table.generator_indices:
        f = table.elements[gi]
        actions.append([(i, pos[img]) for i, (g, b) in enumerate(pts) if (img := f.act(table.group, g, b)) is not None])

    def injective_congruence(labels):
        for pairs in actions:
            on_classes = {}
            for i, j in pairs:
                if on_classes.setdefault(labels[i], labels[j]) != labels[j]:
                    return False
            if len(set(on_classes.values())) != len(on_classes):
                return False
        return True

    found = [labels for labels in _set_partitions(len(pts)) if injective_congruence(labels)]
    classes = {}
    for i, pt in enumerate(pts):
        key = tuple(labels[i] for labels in found)
        classes.setdefault(key, set()).add(pt)
    return {frozenset(c) for c in classes.values()}


def _cycle3(z2, twisted):
    rows = make_Mk(3)
    if twisted:
        rows[2] = [-1, 0, 1]
    return make_rees(z2, [f"a{i}" for i in range(6)], ["1", "2", "3"], rows, transposed=True)


def test_tilson_congruence_is_minimal_injective(z2, pair_ctx, pair_table):
    c3, twisted = _cycle3(z2, False), _cycle3(z2, True)
    tables = [
        pair_table,
        generate(pair_ctx, [parse_lpf(pair_ctx, "1->2, 2->1")], names=["s"]),
        generate(c3, [parse_lpf(c3, "1->2, 2->3, 3->1")], names=["c3"]),
        generate(twisted, [], names=[]),
    ]
    for table in tables:
        assert table.ctx.is_gm
        assert set(tilson_congruence(table.ctx, table)) == _minimal_injective_congruence(table)


@pytest.mark.slow
def test_tilson_congruence_on_weighted_cycle(z2):
    ctx = make_rees(z2, [str(i) for i in range(1, 9)], ["1", "2", "3", "4"], make_Mk(4), transposed=True)
    gens = [parse_lpf(ctx, text) for text in ("1->3, 2->4, 3->1, 4->2", "1->2, 2->3, 3->4, 4->1", "1->3, 3->-1")]
    table = generate(ctx, gens, names=["r13", "c4", "f"])
    assert set(tilson_congruence(table.ctx, table)) == _minimal_injective_congruence(table)
