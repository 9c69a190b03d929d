import math

import pytest

import holeburn as hb

SQRT2 = math.sqrt(2.0)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the propagation kernels once so timed tests measure the
    algorithm rather than the first-call JIT cost."""
    params = hb.SystemParams()
    schedule = hb.make_stirap(2.0, SQRT2)
    hb.propagate(hb.basis_dm(0), schedule, params)
    hb.propagate_pure(hb.basis_ket(0), schedule, params)
    cc = hb.SystemParams(omega13=5.0, cross_coupling=True)
    hb.propagate(hb.basis_dm(0), schedule, cc)
    hb.propagate_pure(hb.basis_ket(0), schedule, cc)


@pytest.fixture
def ground_dm():
    return hb.basis_dm(0)
