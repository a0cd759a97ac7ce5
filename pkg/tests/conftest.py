from __future__ import annotations

import pytest

from cyclicsubspace.field_tower import build_tower


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long-running tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="long-running; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def f128():
    """F_2 ⊂ F_2 ⊂ F_{2^7} with modulus x^7 + x + 1."""
    return build_tower(2, 1, 7, top_modulus=(1, 1, 0, 0, 0, 0, 0, 1))


@pytest.fixture(scope="session")
def f64():
    return build_tower(2, 1, 6)


@pytest.fixture(scope="session")
def f16():
    return build_tower(2, 1, 4)
