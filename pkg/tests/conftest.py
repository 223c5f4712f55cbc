from __future__ import annotations

import pytest

from tqft_engine.hopf import double_cyclic, double_sweedler, small_quantum_sl2

# The built-in algebras are immutable after construction, so one instance per
# session is safe and keeps the suite fast.


@pytest.fixture(scope="session")
def cyclic2():
    return double_cyclic(2)


@pytest.fixture(scope="session")
def cyclic3():
    return double_cyclic(3)


@pytest.fixture(scope="session")
def sweedler16():
    return double_sweedler()


@pytest.fixture(scope="session")
def uqsl2_3():
    return small_quantum_sl2(3)
