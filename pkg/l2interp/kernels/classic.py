import numpy as np

from l2interp.kernels.base_kernel import BaseKernel


class LinearKernel(BaseKernel):
    help_text = "Linear hat, h(x) = 1 - |x| (L = 1)"

    def _evaluate_inside(self, ax):
        return 1.0 - ax


class KeysKernel(BaseKernel):
    help_text = "Keys cubic convolution with parameter a (L = 2)"

    def _evaluate_inside(self, ax):
        a = self.spec.keys_a
        near = ((a + 2.0) * ax - (a + 3.0)) * ax * ax + 1.0
        far = ((a * ax - 5.0 * a) * ax + 8.0 * a) * ax - 4.0 * a
        return np.where(ax < 1.0, near, far)


class Cubic3Kernel(BaseKernel):
    help_text = "Six-point piecewise cubic (L = 3)"

    def _evaluate_inside(self, ax):
        first = ((6.0 * ax - 11.0) * ax * ax + 5.0) / 5.0
        second = (((-3.0 * ax + 16.0) * ax - 27.0) * ax + 14.0) / 5.0
        third = (((ax - 8.0) * ax + 21.0) * ax - 18.0) / 5.0
        return np.select([ax < 1.0, ax < 2.0], [first, second], default=third)
