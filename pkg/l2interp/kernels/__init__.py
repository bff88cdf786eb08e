from functools import lru_cache

from .base_kernel import BaseKernel
from .classic import Cubic3Kernel, KeysKernel, LinearKernel
from .sinc_family import OptimalKernel, TruncatedSincKernel, aliasing_term, optimal_kernel_value, sinc
from .spec import KernelSpec, reference_kernels, parse_kernel_list, parse_kernel_name

kernel_registry = {
    "linear": LinearKernel,
    "keys": KeysKernel,
    "cubic3": Cubic3Kernel,
    "optimal": OptimalKernel,
    "truncsinc": TruncatedSincKernel,
}


@lru_cache(maxsize=128)
def build_kernel(spec: KernelSpec) -> BaseKernel:
    return kernel_registry[spec.kind](spec)


def eval_kernel(spec: KernelSpec, x):
    """h(|x|) for the kernel named by ``spec``; zero outside the support."""
    return build_kernel(spec).evaluate(x)
