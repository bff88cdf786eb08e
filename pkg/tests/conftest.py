import sys

import numpy as np
import pytest

from l2interp.kernels.spec import KernelSpec, reference_kernels
from l2interp.utils.logger import Logger


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    """No spinner threads in tests; log records follow pytest's current stderr."""
    monkeypatch.setenv("DISABLE_SPINNER", "TRUE")
    Logger.set_stream(sys.stderr)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


COMPLIANT_KERNELS = reference_kernels() + [KernelSpec.optimal(n) for n in (4, 5, 6)]


def kernel_id(spec: KernelSpec) -> str:
    return spec.name
