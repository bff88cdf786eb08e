from .backend import ExactBackend, KernelBackend, LutBackend
from .image import DEFAULT_BOUNDARY, BoundaryPolicy, Image2D, Signal1D, resolve_indices
from .interpolate import interpolate_1d, interpolate_2d, resample_affine
from .io import read_f64, read_image, read_pgm, write_f64, write_image, write_pgm, write_ppm
from .transform import (
    AffineTransform2D,
    compose_chain,
    image_center,
    make_rotation_pythagorean,
    make_zoom,
    parse_ratio,
)
