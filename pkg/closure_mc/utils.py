from pathlib import Path
from typing import Union

import numpy as np
from PIL import ImageColor

from closure_mc.exceptions import TextEncodingError


def parse_color(value) -> tuple[int, int, int]:
    """
    Normalize a colour given as '#rrggbb', a CSS colour name or an RGB triple
    """
    if isinstance(value, (tuple, list)):
        if len(value) != 3 or any(not 0 <= int(c) <= 255 for c in value):
            raise ValueError(f"colour {value!r} must be three integers in 0..255")
        return tuple(int(c) for c in value)

    try:
        rgb = ImageColor.getrgb(str(value).strip())
    except ValueError:
        raise ValueError(
            f"colour {value!r} must be in the format '#rrggbb' or a known colour name",
        )
    return tuple(rgb[:3])


def format_color(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def gather_rows(indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """
    Concatenate the CSR rows listed in `rows` without a Python loop

    Returns the column indices of every stored entry in those rows, row by row.
    """
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return np.empty(0, dtype=indices.dtype)

    starts = indptr[rows]
    lengths = indptr[rows + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)

    # offset of each row's first entry inside the output
    offsets = np.cumsum(lengths) - lengths
    positions = np.repeat(starts - offsets, lengths) + np.arange(total)
    return indices[positions]


def read_utf8(path: Union[str, Path]) -> str:
    """Read a UTF-8 text file, reporting the line of the first undecodable byte"""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data[: e.start].count(b"\n") + 1
        raise TextEncodingError(f"{path} is not valid UTF-8 text (byte {e.start})", line=line) from None
