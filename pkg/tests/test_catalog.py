import pytest

from krlab.catalog import (
    CATALOG,
    CatalogReport,
    CheckRow,
    catalog_build,
    catalog_names,
    catalog_run,
    exclusion_search,
    load_anchors,
    make_character_table,
    verify_linkage_identity,
)
from krlab.config import DEFAULT_BUDGETS
from krlab.errors import UnknownEntry
from krlab.hull import hull_elements


def test_character_table_of_z4():
    assert make_character_table(4) == [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 0, 2], [0, 3, 2, 1]]
    with pytest.raises(ValueError):
        make_character_table(0)


@pytest.mark.parametrize("n", [1, 4, 6])
def test_linkage_identity(n):
    assert verify_linkage_identity(n)


def test_names_in_manifest_order():
    assert catalog_names() == ["TF", "TFA1", "UTV", "BIRIP", "CBIRIP", "RG1", "RG2", "T4", "S4", "S2", "S2odd"]


def test_unknown_entry():
    with pytest.raises(UnknownEntry, match="known: TF"):
        catalog_build("TF2")


def test_every_expectation_has_an_anchor():
    anchors = load_anchors()
    for entry in CATALOG.values():
        for exp in entry.expected:
            assert exp.anchor in anchors, exp.anchor
    assert "flows.mutual-exclusion" in anchors


@pytest.mark.slow
def test_group_override_only_where_allowed():
    _, z2_table, _ = catalog_build("S4")
    _, z3_table, _ = catalog_build("S4", group="Z3")
    assert z3_table.group.order == 3
    assert z2_table.group.order == 2
    _, tf_table, _ = catalog_build("TF", group="Z3")
    assert tf_table.group.order == 2


def test_tall_fork_report():
    report = catalog_run("TF")
    assert report.passed, "\n".join(report.lines())
    assert report.lines()[0] == "== TF: OK"
    assert any(n.startswith("derivation:") for n in report.notes)
    assert list(report.frame()["ok"]) == [True] * len(report.rows)


@pytest.mark.slow
@pytest.mark.parametrize("name", [n for n in CATALOG if n != "TF"])
def test_catalog_entry(name):
    report = catalog_run(name)
    assert report.passed, "\n".join(report.lines())
    assert all(r.key != "mutual_exclusion" for r in report.rows)
    if any(r.key in {"flow", "flow_search"} and r.actual is True for r in report.rows):
        assert any(n.startswith("exclusion:") for n in report.notes)


def test_contains_rows_report_what_was_found():
    row = CheckRow("type_ii", "b", ["a", "b", "c", "d"], True, "S2.type-ii", "contains")
    report = CatalogReport(name="X", rows=[row])
    assert report.lines()[1] == "  [ok ] type_ii: expected 'b', among ['a', 'b', 'c', ...] (4 total)  (S2.type-ii)"


def test_exclusion_search(tf, tfa1):
    d, exhausted = exclusion_search(tf, max_states=DEFAULT_BUDGETS.max_states)
    assert exhausted
    assert d is not None and d.reaches_contradiction
    assert exclusion_search(tfa1, max_states=1) == (None, False)


@pytest.mark.slow
def test_cycle_hull_is_complete():
    ctx, table, _ = catalog_build("S4")
    elems = hull_elements(ctx)
    assert table.size == len(elems)
    assert all(table.contains(f) for f in elems)
    assert table.generator_names[:3] == ("r13", "c4", "f")
