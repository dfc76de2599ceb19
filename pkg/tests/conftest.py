from __future__ import annotations

from pathlib import Path

import pytest

from krlab.catalog import catalog_build
from krlab.config import Budgets
from krlab.flows import FlowEngine
from krlab.groups import cyclic_group
from krlab.rees import make_rees
from krlab.semigroup import generate

DATA = Path(__file__).resolve().parents[1] / "krlab" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def tf():
    ctx, table, _ = catalog_build("TF")
    return table


@pytest.fixture(scope="session")
def tfa1():
    ctx, table, _ = catalog_build("TFA1")
    return table


@pytest.fixture(scope="session")
def tf_engine(tf):
    return FlowEngine(tf)


@pytest.fixture
def small_budgets() -> Budgets:
    return Budgets(max_elements=50, max_iterations=100, max_states=20)


@pytest.fixture(scope="session")
def pair_ctx(z2):
    """Two points joined by one column, plus one column per point."""
    return make_rees(z2, ["ab", "a", "b"], ["1", "2"], [[1, 1], [1, 0], [0, 1]], transposed=True)


@pytest.fixture(scope="session")
def pair_table(pair_ctx):
    return generate(pair_ctx, [], include_ideal=True)
