import pytest

from krlab.config import DEFAULT_BUDGETS, Budgets, budgets_from_mapping, load_budgets
from krlab.errors import FormatError


def test_defaults():
    assert DEFAULT_BUDGETS.max_elements == 200_000
    assert DEFAULT_BUDGETS.word_bound == 4
    assert DEFAULT_BUDGETS.loop_body_bound == 1


def test_replace_ignores_none():
    b = DEFAULT_BUDGETS.replace(word_bound=2, max_states=None)
    assert b.word_bound == 2
    assert b.max_states == DEFAULT_BUDGETS.max_states


def test_from_mapping():
    assert budgets_from_mapping({"max_states": "7"}) == Budgets(max_states=7)
    with pytest.raises(FormatError, match="Unknown"):
        budgets_from_mapping({"max_widgets": 1})
    with pytest.raises(FormatError, match="positive"):
        budgets_from_mapping({"word_bound": 0})
    with pytest.raises(FormatError, match="integer"):
        budgets_from_mapping({"word_bound": "many"})


def test_settings_file(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("budgets:\n  max_iterations: 50\n", encoding="utf-8")
    assert load_budgets(path).max_iterations == 50
    path.write_text("word_bound: 3\n", encoding="utf-8")
    assert load_budgets(path).word_bound == 3
    path.write_text("- 1\n", encoding="utf-8")
    with pytest.raises(FormatError):
        load_budgets(path)
    with pytest.raises(FileNotFoundError):
        load_budgets(tmp_path / "none.yaml")
