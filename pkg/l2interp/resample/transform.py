import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple

import numpy as np

from l2interp.errors import TransformError, UsageError

Matrix = Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)
# Integers below this magnitude are exact in a double.
_EXACT_FLOAT_LIMIT = 2 ** 53


def parse_ratio(text: str) -> Tuple[int, int]:
    """Parses ``p/q`` keeping numerator and denominator as written."""
    num, sep, den = text.strip().partition("/")
    try:
        return int(num), int(den) if sep else 1
    except ValueError:
        raise UsageError(f"Expected an integer ratio 'p/q', got '{text}'")


@dataclass(frozen=True)
class AffineTransform2D:
    """
    p -> A (p - c) + c with an exact rational matrix A and center c.
    Composition and inversion stay in rational arithmetic.
    """
    matrix: Matrix
    center: Tuple[Fraction, Fraction] = (ZERO, ZERO)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        matrix = ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))
        center = (Fraction(self.center[0]), Fraction(self.center[1]))
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "center", center)
        if self.determinant == 0:
            raise TransformError(f"singular transform matrix {self.matrix}")

    @property
    def determinant(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    @classmethod
    def identity(cls, center=(ZERO, ZERO)) -> 'AffineTransform2D':
        return cls(((ONE, ZERO), (ZERO, ONE)), center)

    def is_identity(self) -> bool:
        return self.matrix == ((ONE, ZERO), (ZERO, ONE))

    def inverse(self) -> 'AffineTransform2D':
        (a, b), (c, d) = self.matrix
        det = self.determinant
        return AffineTransform2D(((d / det, -b / det), (-c / det, a / det)), self.center)

    def compose(self, first: 'AffineTransform2D') -> 'AffineTransform2D':
        """The transform applying ``first`` and then ``self``."""
        if first.center != self.center:
            raise TransformError("only transforms sharing a center can be composed")
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = first.matrix
        return AffineTransform2D(
            ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)),
            self.center,
        )

    def apply(self, point) -> Tuple[Fraction, Fraction]:
        (a, b), (c, d) = self.matrix
        x = Fraction(point[0]) - self.center[0]
        y = Fraction(point[1]) - self.center[1]
        return a * x + b * y + self.center[0], c * x + d * y + self.center[1]

    def source_coordinates(self, width: int, height: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        For every output pixel q = (x, y), the source position A^-1 (q - c) + c.
        The rational result is converted to float once, with a single rounding.
        """
        return _source_coordinates(self, width, height)


@lru_cache(maxsize=32)
def _source_coordinates(transform: AffineTransform2D, width: int, height: int):
    (a, b), (c, d) = transform.inverse().matrix
    cx, cy = transform.center
    # x_src = a x + b y + (cx - a cx - b cy); likewise for y_src.
    terms = (a, b, cx - a * cx - b * cy, c, d, cy - c * cx - d * cy)
    denominator = math.lcm(*(t.denominator for t in terms))
    ax, bx, ox, ay, by, oy = (int(t * denominator) for t in terms)

    extent = max(width, height)
    largest = max(abs(ax) * extent + abs(bx) * extent + abs(ox), abs(ay) * extent + abs(by) * extent + abs(oy))
    if largest < _EXACT_FLOAT_LIMIT and denominator < _EXACT_FLOAT_LIMIT:
        xs = np.arange(width, dtype=np.int64)[None, :]
        ys = np.arange(height, dtype=np.int64)[:, None]
        # exact integer numerators, then one correctly rounded division
        num_x = (ax * xs + bx * ys + ox).astype(float)
        num_y = (ay * xs + by * ys + oy).astype(float)
        src_x, src_y = num_x / float(denominator), num_y / float(denominator)
    else:
        xs = np.arange(width, dtype=object)[None, :]
        ys = np.arange(height, dtype=object)[:, None]
        src_x = ((ax * xs + bx * ys + ox) / denominator).astype(float)
        src_y = ((ay * xs + by * ys + oy) / denominator).astype(float)
    src_x.setflags(write=False)
    src_y.setflags(write=False)
    return src_x, src_y


def image_center(width: int, height: int) -> Tuple[Fraction, Fraction]:
    """Pixel centers sit at integer coordinates; the center is ((W-1)/2, (H-1)/2)."""
    return Fraction(width - 1, 2), Fraction(height - 1, 2)


def make_zoom(f_num: int, f_den: int, center=(ZERO, ZERO)) -> AffineTransform2D:
    if f_num == 0 or f_den == 0:
        raise TransformError(f"zoom factor {f_num}/{f_den} must have a nonzero numerator and denominator")
    f = Fraction(f_num, f_den)
    return AffineTransform2D(((f, ZERO), (ZERO, f)), center)


def make_rotation_pythagorean(sin_num: int, hyp: int, center=(ZERO, ZERO)) -> AffineTransform2D:
    """Rotation with sin = sin_num/hyp; hyp^2 - sin_num^2 must be a perfect square."""
    if hyp <= 0 or abs(sin_num) > hyp:
        raise TransformError(f"{sin_num}/{hyp} is not a valid sine")
    rest = hyp * hyp - sin_num * sin_num
    cos_num = math.isqrt(rest)
    if cos_num * cos_num != rest:
        raise TransformError(f"({sin_num}, {hyp}) is not part of a Pythagorean triple")
    s = Fraction(sin_num, hyp)
    c = Fraction(cos_num, hyp)
    return AffineTransform2D(((c, -s), (s, c)), center)


def compose_chain(passes: Iterable[AffineTransform2D]) -> AffineTransform2D:
    """Composite of transforms applied in list order."""
    passes = list(passes)
    if not passes:
        raise TransformError("empty transform chain")
    total = passes[0]
    for step in passes[1:]:
        total = step.compose(total)
    return total
