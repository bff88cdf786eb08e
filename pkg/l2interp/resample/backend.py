from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from l2interp.kernels import build_kernel
from l2interp.kernels.spec import KernelSpec
from l2interp.lut.table import KernelTable, lut_eval


class KernelBackend(ABC):
    """Supplies kernel weights h(t) to the interpolator."""

    @property
    @abstractmethod
    def support(self) -> int:
        pass

    @property
    @abstractmethod
    def spec(self) -> Optional[KernelSpec]:
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def weights(self, offsets: np.ndarray) -> np.ndarray:
        pass


class ExactBackend(KernelBackend):
    """Closed-form kernel evaluation."""

    def __init__(self, spec: KernelSpec):
        self._spec = spec
        self._kernel = build_kernel(spec)

    @property
    def support(self):
        return self._spec.support

    @property
    def spec(self):
        return self._spec

    @property
    def name(self):
        return self._spec.name

    def weights(self, offsets):
        return self._kernel.evaluate(np.asarray(offsets, dtype=float))


class LutBackend(KernelBackend):
    """Nearest-entry lookup in a precision-K table."""

    def __init__(self, table: KernelTable):
        self.table = table

    @property
    def support(self):
        return self.table.support

    @property
    def spec(self):
        return self.table.source

    @property
    def name(self):
        return self.table.name

    def weights(self, offsets):
        return lut_eval(self.table, np.asarray(offsets, dtype=float))
