import numpy as np

from l2interp.resample.image import Image2D


def error_colormap(error_map: Image2D, scale_max: float) -> np.ndarray:
    """
    Blue (zero error) to red (``scale_max`` and above), linear in between.
    Returns an (H, W, 3) uint8 array ready for ``write_ppm``.
    """
    if not scale_max > 0:
        raise ValueError(f"scale_max must be positive, got {scale_max}")
    t = np.clip(error_map.samples / scale_max, 0.0, 1.0)
    red = np.rint(255.0 * t).astype(np.uint8)
    rgb = np.zeros(error_map.shape + (3,), dtype=np.uint8)
    rgb[..., 0] = red
    rgb[..., 2] = 255 - red
    return rgb
