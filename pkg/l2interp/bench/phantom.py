import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from l2interp.resample.image import Image2D
from l2interp.utils.logger import Logger

# Direction components below this are treated as exactly zero.
AXIS_EPSILON = 1e-12


class PhantomSpec(BaseModel):
    """Edge phantom: bright rays from the center whose intensity decays linearly outwards."""
    model_config = ConfigDict(frozen=True)

    size: int = Field(257, ge=3)
    num_lines: int = Field(8, ge=1)
    peak_intensity: float = 255.0
    background: float = 0.0
    line_profile: Literal["hard", "antialiased"] = "hard"

    @field_validator("size")
    @classmethod
    def check_odd(cls, v: int):
        if v % 2 == 0:
            raise ValueError("phantom size must be odd so that a center pixel exists")
        return v


def _ray_length(center: float, dx: float, dy: float) -> float:
    """Distance from the center to the image border along (dx, dy)."""
    limits = [center / abs(d) for d in (dx, dy) if abs(d) > AXIS_EPSILON]
    return min(limits)


def _intensity(spec: PhantomSpec, r, r_max: float):
    return spec.background + (spec.peak_intensity - spec.background) * (1.0 - np.asarray(r) / r_max)


def generate_phantom(spec: PhantomSpec = PhantomSpec()) -> Image2D:
    size = spec.size
    center = (size - 1) / 2
    image = np.full((size, size), float(spec.background))
    # Brightest contribution wins where rays meet.
    level = np.full((size, size), -np.inf)

    for k in range(spec.num_lines):
        angle = 2.0 * math.pi * k / spec.num_lines
        dx, dy = math.cos(angle), math.sin(angle)
        r_max = _ray_length(center, dx, dy)

        if spec.line_profile == "hard":
            # DDA walk: one pixel per step along the major axis
            steps = int(math.ceil(r_max * max(abs(dx), abs(dy))))
            t = np.arange(steps + 1) / steps * r_max
            xs = np.rint(center + t * dx).astype(np.int64)
            ys = np.rint(center + t * dy).astype(np.int64)
            r = np.hypot(xs - center, ys - center)
            values = _intensity(spec, np.minimum(r, r_max), r_max)
            weights = np.ones_like(values)
        else:
            ys, xs = np.mgrid[0:size, 0:size]
            px, py = xs - center, ys - center
            along = px * dx + py * dy
            across = np.abs(px * dy - py * dx)
            mask = (along >= 0) & (along <= r_max) & (across < 1.0)
            xs, ys = xs[mask], ys[mask]
            weights = 1.0 - across[mask]
            values = _intensity(spec, along[mask], r_max)

        contribution = spec.background + weights * (values - spec.background)
        current = level[ys, xs]
        better = contribution > current
        level[ys[better], xs[better]] = contribution[better]

    drawn = np.isfinite(level)
    image[drawn] = level[drawn]
    Logger.get_logger().debug(f"Generated {size}x{size} phantom with {spec.num_lines} {spec.line_profile} rays")
    return Image2D(image)
