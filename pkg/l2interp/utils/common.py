import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np
from colorama import Fore
from pydantic import ValidationError

from l2interp.errors import UsageError
from l2interp.utils.config import (
    PASS_RETURN_CODE,
    RUNTIME_ERROR_RETURN_CODE,
    USAGE_ERROR_RETURN_CODE,
)
from l2interp.utils.logger import Logger


def clean_env_vars():
    """Removes surrounding quotes from all environment variables."""
    for key, value in os.environ.items():
        if value and (value.startswith(("'", '"')) and value.endswith(("'", '"'))):
            os.environ[key] = value[1:-1]


def format_float(value: float) -> str:
    """Fixed CSV float layout: 17 significant digits, scientific."""
    return f"{float(value):.16e}"


def write_atomic(path: Union[str, Path], data: Union[str, bytes]):
    """Write to a temporary file next to ``path`` and rename it into place."""
    path = Path(path)
    mode = "wb" if isinstance(data, (bytes, bytearray, memoryview)) else "w"
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, mode) as f:
            f.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    Logger.get_logger().debug(f"Wrote {path}")


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, (float, np.floating)):
                cells.append(format_float(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence]):
    write_atomic(path, render_csv(header, rows))


def exit_code_for(exc: BaseException) -> int:
    """Maps an exception escaping a command onto the process exit code."""
    if isinstance(exc, (UsageError, ValidationError)):
        return USAGE_ERROR_RETURN_CODE
    # ResourceLimitError, OSError and anything unexpected
    return RUNTIME_ERROR_RETURN_CODE


def handle_failure(exit_code: int) -> int:
    """Logs the outcome of a command and passes its exit code through."""
    Logger.get_logger().debug(f"handle_failure invoked: exit_code={exit_code}")
    if exit_code != PASS_RETURN_CODE:
        Logger.log_with_color('ERROR', f"Completed with non-zero exit code: {exit_code}.", Fore.RED)
    else:
        Logger.get_logger().debug("Completed successfully with exit code 0.")
    return exit_code
