import pytest

from krlab.cli import main


@pytest.fixture
def tf_file(data_dir):
    return str(data_dir / "semigroups" / "tf.yaml")


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("TF")
    assert "S2odd" in out


def test_build_machine_output(tf_file, capsys):
    assert main(["--format", "machine", "build", tf_file]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "elements=99" in out
    assert "gm=true" in out
    assert "generators=sigma tau r" in out[-1]


def test_depth_and_rlm(tf_file, capsys):
    assert main(["--format", "machine", "depth", tf_file]) == 0
    assert capsys.readouterr().out.strip() == "depth=2"
    assert main(["--format", "machine", "rlm", tf_file]) == 0
    assert "rlm_elements=53" in capsys.readouterr().out


def test_green_plot(tf_file, tmp_path, capsys):
    png = tmp_path / "j.png"
    assert main(["green", tf_file, "--plot", str(png)]) == 0
    assert png.exists()
    assert "JClass" in capsys.readouterr().out


def test_hull_exit_codes(tf_file, capsys):
    assert main(["--format", "machine", "hull", tf_file, "--element", "(1 2 3 4)"]) == 0
    assert "in_hull=true" in capsys.readouterr().out
    assert main(["hull", tf_file, "--element", "1'->1, 3'->3, 1->2"]) == 1


def test_contradict_writes_script(tf_file, tmp_path, capsys):
    out = tmp_path / "tf.wff"
    assert main(["--format", "machine", "contradict", tf_file, "--bounds", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "found=true" in text
    assert "complexity=[2,2]" in text
    assert out.read_text(encoding="utf-8").startswith("start: {1'}/<1>")
    assert main(["--format", "machine", "eval", tf_file, "--script", str(out)]) == 0
    assert "final==><=" in capsys.readouterr().out


def test_bounds_strict_fails_without_certificate(tf_file, capsys):
    assert main(["bounds", tf_file, "--strict"]) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_input_exits_2(tf_file, tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("group: Z2\n", encoding="utf-8")
    assert main(["build", str(bad)]) == 2
    assert main(["build", str(tmp_path / "missing.yaml")]) == 2
    assert main(["--budget", "word_bound", "build", tf_file]) == 2


def test_unknown_catalog_entry(capsys):
    assert main(["catalog", "run", "NOPE"]) == 1
    assert "Unknown catalog entry" in capsys.readouterr().err
