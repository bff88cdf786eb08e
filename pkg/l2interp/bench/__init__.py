from .colormap import error_colormap
from .phantom import PhantomSpec, generate_phantom
from .round_trip import (
    DEFAULT_CYCLES,
    RoundTripResult,
    central_disk,
    chain_passes,
    check_chain_identity,
    compare_kernels,
    round_trip,
)
