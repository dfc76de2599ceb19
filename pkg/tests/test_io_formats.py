import pytest

from krlab.errors import FormatError
from krlab.io_formats import (
    automaton_from_mapping,
    format_derivation,
    format_machine,
    parse_script,
    read_flow,
    read_script,
    read_semigroup,
    semigroup_from_mapping,
    semigroup_to_mapping,
    write_flow,
)
from krlab.states import find_contradiction
from krlab.verify import verify_flow
from krlab.wff import Letter, Loop


def test_bundled_tall_fork(data_dir):
    spec = read_semigroup(data_dir / "semigroups" / "tf.yaml")
    assert spec.name == "TF"
    assert [n for n, _ in spec.generators] == ["sigma", "tau", "r"]
    assert spec.build().size == 99


def test_mk_shorthand():
    spec = semigroup_from_mapping({"group": "Z2", "matrix": "Mk:4", "generators": {"b": "(1 3)(2 4)"}})
    assert spec.ctx.n_a == 8
    assert spec.ctx.b_labels == ("1", "2", "3", "4")


@pytest.mark.parametrize(
    "data, message",
    [
        ({"matrix": [[1]]}, "missing key 'group'"),
        ({"group": "Z2", "matrix": "Mk"}, "shorthand"),
        ({"group": "Z2", "matrix": [1, 2]}, "list of rows"),
        ({"group": "Z2", "matrix": [[1]], "generators": ["x"]}, "generators must map"),
    ],
)
def test_semigroup_format_errors(data, message):
    with pytest.raises(FormatError, match=message):
        semigroup_from_mapping(data)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_semigroup(tmp_path / "nothing.yaml")


def test_bad_yaml(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("group: [Z2\n", encoding="utf-8")
    with pytest.raises(FormatError, match="not valid YAML"):
        read_semigroup(path)


def test_transition_lines():
    auto = automaton_from_mapping({"states": ["p", "q"], "transitions": ["p --x--> q", "q --y--> q"]})
    assert auto.letters == ("x", "y")
    assert auto.step("p", "x") == "q"
    with pytest.raises(FormatError, match="two"):
        automaton_from_mapping({"states": ["p", "q"], "transitions": ["p --x--> q", "p --x--> p"]})
    with pytest.raises(FormatError, match="bad transition"):
        automaton_from_mapping({"states": ["p"], "transitions": ["p -> p"]})
    assert len(automaton_from_mapping({"rz": 3}).states) == 3


def test_written_flow_reads_back(tfa1, data_dir, tmp_path):
    flow = read_flow(tfa1, data_dir / "flows" / "tfa1.yaml")
    out = write_flow(flow, tmp_path / "flow.yaml")
    again = read_flow(tfa1, out)
    assert again.assignment == flow.assignment
    assert verify_flow(tfa1, again).passed


def test_script_start_line():
    script = parse_script("# comment\nstart: {1}\na^(w+*) ; b\nb\n")
    assert script.start == "{1}"
    assert script.wff == (Loop((Letter("a"),)), Letter("b"), Letter("b"))


def test_bundled_script(data_dir):
    script = read_script(data_dir / "scripts" / "s2_refutation.wff")
    assert script.start == "{1}"
    assert script.wff[-1] == Loop((Letter("a"),))


def test_format_derivation(tf_engine):
    lines = format_derivation(find_contradiction(tf_engine))
    assert lines[0] == "start {1'}/<1>"
    assert lines[-1].endswith("=><=")


def test_machine_format():
    assert format_machine([("passed", True), ("size", 99), ("gm", False)]) == "passed=true\nsize=99\ngm=false"


def test_description_mapping_rebuilds(data_dir):
    spec = read_semigroup(data_dir / "semigroups" / "tf.yaml")
    data = semigroup_to_mapping(spec)
    assert data["group"] == "Z2"
    again = semigroup_from_mapping(data)
    assert again.ctx == spec.ctx
    assert again.generators == spec.generators
