import dataclasses

import pytest

from krlab.automata import rz, ts_of
from krlab.catalog import DATA_DIR, catalog_build
from krlab.errors import FormatError
from krlab.io_formats import read_flow
from krlab.verify import one_point_flow_test, resolve_covering, search_flow, verify_flow


@pytest.fixture(scope="module")
def tfa1_flow(tfa1):
    return read_flow(tfa1, DATA_DIR / "flows" / "tfa1.yaml")


def test_bundled_flow_passes(tfa1, tfa1_flow):
    report = verify_flow(tfa1, tfa1_flow)
    assert report.passed, report.summary()
    assert report.exit_code == 0
    assert report.summary().startswith("PASS")
    frame = report.frame()
    assert len(frame) == len(report.checks)
    assert frame["ok"].all()


def test_wrong_cross_section_fails_containment(tfa1, tfa1_flow):
    lat = tfa1_flow.assignment["q"].lattice
    bad = dataclasses.replace(tfa1_flow, assignment={**tfa1_flow.assignment, "p": lat.parse("{1' 3'}/<1 1>")})
    report = verify_flow(tfa1, bad)
    assert not report.passed
    assert report.exit_code == 1
    assert (report.condition, report.state, report.generator) == ("containment", "p", "r")


def test_missing_point_fails_coverage(tfa1, tfa1_flow):
    lat = tfa1_flow.assignment["q"].lattice
    bad = dataclasses.replace(tfa1_flow, assignment={**tfa1_flow.assignment, "p": lat.parse("{1'}")})
    report = verify_flow(tfa1, bad)
    assert report.condition == "coverage"
    assert "3'" in report.detail


def test_unassigned_state(tfa1, tfa1_flow):
    bad = dataclasses.replace(tfa1_flow, assignment={"p": tfa1_flow.assignment["p"]})
    with pytest.raises(FormatError, match="no assigned value"):
        verify_flow(tfa1, bad)


def _with_covering(flow, **covering):
    return dataclasses.replace(flow, covering={k: tuple(v) for k, v in covering.items()})


def test_wildcard_has_lowest_precedence(tfa1, tfa1_flow):
    ideal_name = next(n for n in tfa1.generator_names if n.endswith(",1']"))
    flow = _with_covering(
        tfa1_flow,
        id=["*"],
        cp=["ideal@1'", "ideal@3'"],
        cq=["r", ideal_name, "ideal"],
    )
    cover = resolve_covering(tfa1, flow)
    assert cover["sigma"] == cover["tau"] == "id"
    assert cover[ideal_name] == "cq"
    other = next(n for n in tfa1.generator_names if n.endswith(",3']"))
    assert cover[other] == "cp"


@pytest.mark.parametrize(
    "covering, message",
    [
        ({"zz": ["sigma"]}, "unknown letter"),
        ({"id": ["sigma", "nope"]}, "unknown generator"),
        ({"id": ["*"], "cp": ["*"]}, "'\\*' covered by both"),
        ({"id": ["ideal@9"]}, "unknown point"),
        ({"id": ["tau"], "cp": ["ideal"], "cq": ["r"]}, "not covered"),
    ],
)
def test_covering_errors(tfa1, tfa1_flow, covering, message):
    with pytest.raises(FormatError, match=message):
        resolve_covering(tfa1, _with_covering(tfa1_flow, **covering))


def test_search_needs_a_state(tf):
    with pytest.raises(ValueError):
        search_flow(tf, 0)


@pytest.mark.slow
def test_search_finds_a_verified_flow():
    _, table, _ = catalog_build("CBIRIP")
    flow = search_flow(table, 2)
    assert flow is not None
    assert verify_flow(table, flow).passed


def test_one_point_flow_on_aperiodic():
    assert one_point_flow_test(ts_of(rz(3)))
