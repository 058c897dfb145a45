"""Reading and writing point-sequence CSV files.

One objective vector per line, coordinates as decimal floating-point text
separated by commas, with an optional single first line starting with '#'.
The dimension is inferred from the first data row and enforced afterwards.
Floats are written with shortest round-trip repr, so identical sequences
produce byte-identical files.
"""

from __future__ import annotations

import math
import os
from typing import IO, Iterable, Sequence

import numpy as np


def format_point(point: Sequence[float]) -> str:
    return ",".join(repr(float(v)) for v in point)


def write_points(
    path_or_file: str | os.PathLike | IO[str],
    points: Iterable[Sequence[float]],
    header: str | None = None,
) -> None:
    """Write a point sequence; ``header`` (if any) becomes a '# ...' first line."""
    if hasattr(path_or_file, "write"):
        _write_points_to(path_or_file, points, header)
    else:
        with open(path_or_file, "w", encoding="ascii") as fh:
            _write_points_to(fh, points, header)


def _write_points_to(fh: IO[str], points: Iterable[Sequence[float]], header: str | None) -> None:
    if header is not None:
        fh.write(f"# {header}\n")
    for point in points:
        fh.write(format_point(point))
        fh.write("\n")


def read_points(path: str | os.PathLike) -> np.ndarray:
    """Parse a point-sequence file into an (n, m) array.

    Raises ValueError naming the offending line for malformed rows,
    inconsistent dimensions, non-finite values or rows with fewer than two
    coordinates.  An empty file yields an empty (0, 0) array.
    """
    rows: list[list[float]] = []
    m: int | None = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                if lineno == 1:
                    continue
                raise ValueError(f"{path}:{lineno}: comment lines are only allowed as the first line")
            try:
                values = [float(token) for token in text.split(",")]
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed row {text!r}") from None
            if any(not math.isfinite(v) for v in values):
                raise ValueError(f"{path}:{lineno}: non-finite coordinate in row {text!r}")
            if m is None:
                m = len(values)
                if m < 2:
                    raise ValueError(f"{path}:{lineno}: points need at least 2 objectives, got {m}")
            elif len(values) != m:
                raise ValueError(f"{path}:{lineno}: row has {len(values)} coordinates, expected {m}")
            rows.append(values)
    if not rows:
        return np.empty((0, 0), dtype=np.float64)
    return np.asarray(rows, dtype=np.float64)
