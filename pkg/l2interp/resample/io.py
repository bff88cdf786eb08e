import struct
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from l2interp.errors import MalformedImageError
from l2interp.resample.image import Image2D
from l2interp.utils.common import write_atomic
from l2interp.utils.logger import Logger

MAX_PGM_VALUE = 65535
F64_HEADER = struct.Struct("<II")

PathLike = Union[str, Path]


def _read_header(data: bytes, count: int, path) -> Tuple[List[bytes], int]:
    """
    Reads ``count`` whitespace-separated header tokens, skipping ``#`` comments.
    Returns the tokens and the offset just past the single whitespace byte
    that ends the last token.
    """
    tokens = []
    pos = 0
    size = len(data)
    while len(tokens) < count:
        while pos < size and data[pos:pos + 1].isspace():
            pos += 1
        if pos < size and data[pos:pos + 1] == b"#":
            while pos < size and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < size and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise MalformedImageError(f"{path}: truncated header")
        tokens.append(data[start:pos])
    if pos < size:
        pos += 1
    return tokens, pos


def _header_int(token: bytes, what: str, path) -> int:
    try:
        value = int(token)
    except ValueError:
        raise MalformedImageError(f"{path}: {what} is not an integer: {token!r}")
    if value < 1:
        raise MalformedImageError(f"{path}: {what} must be positive, got {value}")
    return value


def read_pgm(path: PathLike) -> Image2D:
    """Reads a P2 (ASCII) or P5 (binary) PGM; 16-bit P5 samples are big-endian."""
    data = Path(path).read_bytes()
    tokens, offset = _read_header(data, 4, path)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise MalformedImageError(f"{path}: not a PGM file (magic {magic!r})")
    width = _header_int(tokens[1], "width", path)
    height = _header_int(tokens[2], "height", path)
    maxval = _header_int(tokens[3], "maxval", path)
    if maxval > MAX_PGM_VALUE:
        raise MalformedImageError(f"{path}: maxval {maxval} exceeds {MAX_PGM_VALUE}")
    count = width * height

    if magic == b"P5":
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        payload = data[offset:offset + count * dtype.itemsize]
        if len(payload) < count * dtype.itemsize:
            raise MalformedImageError(f"{path}: expected {count} samples, file is truncated")
        samples = np.frombuffer(payload, dtype=dtype).astype(float)
    else:
        body = data[offset:].split()
        if len(body) < count:
            raise MalformedImageError(f"{path}: expected {count} samples, found {len(body)}")
        try:
            samples = np.array([int(v) for v in body[:count]], dtype=float)
        except ValueError:
            raise MalformedImageError(f"{path}: non-integer sample in P2 body")

    if samples.size and samples.max() > maxval:
        raise MalformedImageError(f"{path}: sample exceeds maxval {maxval}")
    bits = int(maxval).bit_length()
    Logger.get_logger().debug(f"Read {path}: {magic.decode()} {width}x{height}, maxval {maxval}")
    return Image2D(samples.reshape(height, width), declared_bits=bits, maxval=maxval)


def to_pixel_values(image: Image2D, maxval: int) -> np.ndarray:
    """Rounds and clips real samples into [0, maxval]."""
    return np.clip(np.rint(image.samples), 0, maxval).astype(np.int64)


def write_pgm(path: PathLike, image: Image2D, maxval: int = None, binary: bool = True):
    if maxval is None:
        maxval = image.value_ceiling or 255
    if not 1 <= maxval <= MAX_PGM_VALUE:
        raise ValueError(f"maxval must be in [1, {MAX_PGM_VALUE}], got {maxval}")
    pixels = to_pixel_values(image, maxval)
    header = f"{'P5' if binary else 'P2'}\n{image.width} {image.height}\n{maxval}\n".encode()
    if binary:
        dtype = ">u2" if maxval > 255 else "u1"
        body = pixels.astype(dtype).tobytes()
    else:
        body = "\n".join(" ".join(str(v) for v in row) for row in pixels.tolist()).encode() + b"\n"
    write_atomic(path, header + body)


def write_ppm(path: PathLike, rgb: np.ndarray):
    """Writes an (H, W, 3) byte array as binary P6."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValueError("PPM output needs an (H, W, 3) uint8 array")
    height, width = rgb.shape[:2]
    write_atomic(path, f"P6\n{width} {height}\n255\n".encode() + rgb.tobytes())


def write_f64(path: PathLike, image: Image2D):
    """Raw real-valued image: u32 width, u32 height, then row-major little-endian doubles."""
    header = F64_HEADER.pack(image.width, image.height)
    write_atomic(path, header + image.samples.astype("<f8").tobytes())


def read_f64(path: PathLike) -> Image2D:
    data = Path(path).read_bytes()
    if len(data) < F64_HEADER.size:
        raise MalformedImageError(f"{path}: too short for an f64 header")
    width, height = F64_HEADER.unpack_from(data)
    payload = data[F64_HEADER.size:]
    if width < 1 or height < 1 or len(payload) != 8 * width * height:
        raise MalformedImageError(f"{path}: header {width}x{height} does not match {len(payload)} payload bytes")
    samples = np.frombuffer(payload, dtype="<f8").astype(float)
    return Image2D(samples.reshape(height, width))


def read_image(path: PathLike) -> Image2D:
    """Dispatches on the extension: ``.f64`` raw doubles, anything else PGM."""
    if Path(path).suffix.lower() == ".f64":
        return read_f64(path)
    return read_pgm(path)


def write_image(path: PathLike, image: Image2D, maxval: int = None):
    if Path(path).suffix.lower() == ".f64":
        write_f64(path, image)
    else:
        write_pgm(path, image, maxval=maxval)
