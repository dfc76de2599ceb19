import pytest
from hypothesis import given, strategies as st

from krlab.errors import FormatError, RegularityError
from krlab.groups import cyclic_group
from krlab.rees import (
    IdealElement,
    LabeledPartialFunction,
    format_lpf,
    ideal_action,
    ideal_elements,
    ideal_product,
    make_rees,
    parse_lpf,
    parse_permutation,
)


def test_transposed_matrix_is_stored_b_by_a(pair_ctx):
    assert pair_ctx.n_a == 3
    assert pair_ctx.n_b == 2
    assert pair_ctx.column(0) == (0, 0)
    assert pair_ctx.entry(1, 1) is None


def test_zero_row_is_rejected(z2):
    with pytest.raises(RegularityError, match="'2'"):
        make_rees(z2, ["a"], ["1", "2"], [[1], [0]])


def test_zero_column_is_rejected(z2):
    with pytest.raises(RegularityError):
        make_rees(z2, ["a", "b"], ["1"], [[1, 0]])


def test_shape_mismatch(z2):
    with pytest.raises(FormatError):
        make_rees(z2, ["a", "b"], ["1"], [[1]])


def test_gm_needs_nontrivial_group(pair_ctx):
    assert pair_ctx.is_gm
    trivial = make_rees(cyclic_group(1), ["ab", "a", "b"], ["1", "2"], [[1, 1], [1, 0], [0, 1]], transposed=True)
    assert not trivial.is_gm


def test_proportional_rows_break_gm(z2):
    ctx = make_rees(z2, ["a", "b"], ["1", "2"], [[1, -1], [1, -1]])
    assert ctx.proportional_rows == [(0, 1)]
    assert not ctx.is_gm


def test_parse_lpf_weights(pair_ctx):
    f = parse_lpf(pair_ctx, "1->2, 2->-1")
    assert f.edges == ((0, 1), (1, 0))
    assert format_lpf(pair_ctx, f) == "1->2, 2->-1"


def test_parse_lpf_errors(pair_ctx):
    with pytest.raises(FormatError):
        parse_lpf(pair_ctx, "1->2, 1->1")
    with pytest.raises(FormatError):
        parse_lpf(pair_ctx, "1->7")
    with pytest.raises(FormatError):
        parse_lpf(pair_ctx, "1=>2")


def test_permutation_is_partial(pair_ctx):
    f = parse_permutation(pair_ctx, "(1)")
    assert f.edges == ((0, 0), None)
    swap = parse_permutation(pair_ctx, "(1 2)")
    assert swap.compose(swap, pair_ctx.group) == LabeledPartialFunction.identity(2, pair_ctx.group)


def test_permutation_rejects_overlap(pair_ctx):
    with pytest.raises(FormatError):
        parse_permutation(pair_ctx, "(1 2)(2)")


def test_ideal_action_uses_column(pair_ctx):
    f = ideal_action(pair_ctx, IdealElement(a=0, g=1, b=1))
    assert f.edges == ((1, 1), (1, 1))
    assert len(list(ideal_elements(pair_ctx))) == 3 * 2 * 2


def test_ideal_product_through_matrix(pair_ctx):
    e = IdealElement(a=1, g=0, b=1)
    f = IdealElement(a=1, g=0, b=0)
    # C(2, a) = 0
    assert ideal_product(pair_ctx, e, f) is None
    assert ideal_product(pair_ctx, e, IdealElement(a=2, g=1, b=0)) == IdealElement(a=1, g=1, b=0)


def _lpfs(n: int, order: int):
    edge = st.one_of(st.none(), st.tuples(st.integers(0, order - 1), st.integers(0, n - 1)))
    return st.lists(edge, min_size=n, max_size=n).map(lambda e: LabeledPartialFunction(edges=tuple(e)))


@given(_lpfs(3, 2), _lpfs(3, 2), _lpfs(3, 2))
def test_composition_is_associative(f, g, h):
    z2 = cyclic_group(2)
    assert f.compose(g, z2).compose(h, z2) == f.compose(g.compose(h, z2), z2)
