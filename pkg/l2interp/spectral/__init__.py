from .fae import (
    FaeReport,
    fae,
    fae_approx,
    fae_of_function,
    fae_table,
    half_segment_breakpoints,
    optimal_fae,
    optimal_fae_table,
    perturb_optimal_kernel,
    sinc_tail,
    zero_kernel,
)
from .fourier import PassGain, SpectrumTable, fourier_transform, peak_pass_gain, shift_response, spectrum_sweep
