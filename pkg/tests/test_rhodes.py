import itertools

import pytest
from hypothesis import given, strategies as st

from krlab.errors import ContextMismatch, ParseError
from krlab.groups import cyclic_group
from krlab.rhodes import (
    RhodesLattice,
    format_spc,
    join_blocks,
    parse_spc,
    rh_to_sp,
    sp_to_rh,
    spc_join,
    spc_leq,
    spc_meet,
)


def _partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def all_spcs(lat):
    """Every element of the lattice, contradiction included."""
    out = [lat.contradiction]
    order = lat.group.order
    for r in range(lat.n_b + 1):
        for subset in itertools.combinations(range(lat.n_b), r):
            for part in _partitions(list(subset)):
                weight_choices = [itertools.product(range(order), repeat=len(blk) - 1) for blk in part]
                for ws in itertools.product(*[list(c) for c in weight_choices]):
                    blocks = []
                    for blk, w in zip(part, ws):
                        blocks.append({b: (lat.group.identity if i == 0 else w[i - 1]) for i, b in enumerate(sorted(blk))})
                    out.append(lat.make(blocks))
    return out


def sp_leq(p, q):
    if q.contradiction:
        return True
    if p.contradiction:
        return False
    sq = rh_to_sp(q).classes
    return all(any(c <= d for d in sq) for c in rh_to_sp(p).classes)


@pytest.fixture(scope="module")
def lat3():
    return RhodesLattice(group=cyclic_group(2), b_labels=("1", "2", "3"))


@pytest.fixture(scope="module")
def elements3(lat3):
    return all_spcs(lat3)


def test_lattice_size(elements3):
    assert len(elements3) == 25
    assert len(set(elements3)) == 25


def test_order_matches_set_partition_oracle(elements3):
    for p in elements3:
        for q in elements3:
            assert spc_leq(p, q) == sp_leq(p, q), (str(p), str(q))


def test_join_is_least_upper_bound(elements3):
    for p in elements3:
        for q in elements3:
            j = spc_join(p, q)
            assert spc_leq(p, j) and spc_leq(q, j)
            uppers = [r for r in elements3 if spc_leq(p, r) and spc_leq(q, r)]
            assert all(spc_leq(j, r) for r in uppers)


def test_meet_is_greatest_lower_bound(elements3):
    for p in elements3:
        for q in elements3:
            m = spc_meet(p, q)
            assert spc_leq(m, p) and spc_leq(m, q)
            lowers = [r for r in elements3 if spc_leq(r, p) and spc_leq(r, q)]
            assert all(spc_leq(r, m) for r in lowers)


def test_bottom_and_top(lat3, elements3):
    for p in elements3:
        assert spc_leq(lat3.bottom, p)
        assert spc_leq(p, lat3.contradiction)


def test_set_partition_image_inverts(lat3, elements3):
    for p in elements3:
        if p.contradiction:
            continue
        assert sp_to_rh(lat3, rh_to_sp(p)) == p


def test_parse_and_format(lat3):
    p = parse_spc(lat3, "{1 3 | 2}/<1 -1 | 1>")
    assert format_spc(p) == "{1 3 | 2}/<1 -1 | 1>"
    assert parse_spc(lat3, "{3 1}/<-1 1>") == parse_spc(lat3, "{1 3}/<1 -1>")
    assert parse_spc(lat3, "{2}") == lat3.point(1)
    assert parse_spc(lat3, "=><=").contradiction


def test_parse_errors_carry_position(lat3):
    with pytest.raises(ParseError) as info:
        parse_spc(lat3, "{1 7}")
    assert info.value.position == 3
    with pytest.raises(ParseError):
        parse_spc(lat3, "{1 1}")


def test_overlapping_blocks_merge_or_clash(lat3):
    z2 = lat3.group
    m = z2.index("-1")
    merged = join_blocks(lat3, [{0: 0, 1: 0}, {1: 0, 2: m}])
    assert str(merged) == "{1 2 3}/<1 1 -1>"
    assert join_blocks(lat3, [{0: 0, 1: 0}, {0: 0, 1: m}]).contradiction


def test_contexts_must_match(lat3):
    other = RhodesLattice(group=cyclic_group(3), b_labels=("1", "2", "3"))
    with pytest.raises(ContextMismatch):
        spc_join(lat3.point(0), other.point(0))


@given(st.data())
def test_join_laws_on_z4(data):
    lat = RhodesLattice(group=cyclic_group(4), b_labels=("1", "2", "3", "4"))
    block = st.dictionaries(st.integers(0, 3), st.integers(0, 3), min_size=1, max_size=4)
    p, q, r = (join_blocks(lat, data.draw(st.lists(block, max_size=2))) for _ in range(3))
    assert spc_join(p, q) == spc_join(q, p)
    assert spc_join(spc_join(p, q), r) == spc_join(p, spc_join(q, r))
    assert spc_join(p, p) == p
    assert spc_meet(p, spc_join(p, q)) == p
