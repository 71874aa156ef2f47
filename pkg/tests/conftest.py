import numpy as np
import pytest

from bidisk import Series2D, build_submodule, parse_polynomial


@pytest.fixture(scope="session")
def zw_gen() -> Series2D:
    return parse_polynomial("z-w")


@pytest.fixture(scope="session")
def h2_40():
    return build_submodule([parse_polynomial("1")], 40)


@pytest.fixture(scope="session")
def zw_30(zw_gen):
    return build_submodule([zw_gen], 30)


@pytest.fixture(scope="session")
def zw_60(zw_gen):
    return build_submodule([zw_gen], 60)


@pytest.fixture(scope="session")
def zpw_30():
    return build_submodule([parse_polynomial("z"), parse_polynomial("w")], 30)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(0x5EED)
