import time
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from closure_mc.exceptions import ModelFormatError
from closure_mc.formats.ppm import ImageModel
from closure_mc.logger import logger
from closure_mc.spaces.builders import delta_pairs
from closure_mc.spaces.pointset import PointSet
from closure_mc.spaces.space import GridLabels, QuasiDiscreteSpace

COORDINATE_COLUMNS = ("column", "row", "x", "y")
COORD_PROPOSITION = "coord"


class LayeredLabels(GridLabels):
    """Pixel labels (column, row) followed by the (x, y) position of every coordinate point"""

    def __init__(self, width: int, height: int, positions: np.ndarray):
        super().__init__(width, height)
        self.positions = positions

    def __len__(self) -> int:
        return self.width * self.height + self.positions.shape[0]

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if index < 0:
            index += len(self)
        pixels = self.width * self.height
        if pixels <= index < len(self):
            return tuple(self.positions[index - pixels].tolist())
        return super().__getitem__(index)


def load_coordinates(path: Union[str, Path]) -> pd.DataFrame:
    """
    Read a coordinate table with columns column, row, x, y

    Each row places the pixel (column, row) at the position (x, y) of the
    communication layer.
    """
    try:
        table = pd.read_csv(path)
    except (OSError, ValueError) as e:
        raise ModelFormatError(f"cannot read coordinate table {path}: {e}")

    table.columns = [str(c).strip().lower() for c in table.columns]
    missing = [c for c in COORDINATE_COLUMNS if c not in table.columns]
    if missing:
        raise ModelFormatError(f"coordinate table {path} lacks the columns {missing}")

    table = table[list(COORDINATE_COLUMNS)]
    if table.isna().any().any():
        raise ModelFormatError(f"coordinate table {path} has empty cells")
    if not all(pd.api.types.is_integer_dtype(table[c]) for c in ("column", "row")):
        raise ModelFormatError(f"column and row of coordinate table {path} must be integers")
    return table


def build_multilayer_model(
    image: ImageModel,
    coordinates: pd.DataFrame,
    delta: float,
    symmetric_pos: bool = False,
) -> ImageModel:
    """
    Stack a communication layer on top of an image model

    The points are the pixels followed by one coordinate point per distinct
    (bit-equal) position of the table, in order of first appearance. Pixels
    keep their 4-adjacency, every listed pixel points to its coordinate point,
    and coordinate points at distance at most delta are linked both ways.
    Coordinate points satisfy only the proposition coord.
    """
    start = time.time()
    if COORD_PROPOSITION in image.valuation:
        raise ModelFormatError(f"the image already defines the proposition {COORD_PROPOSITION!r}")

    columns = coordinates["column"].to_numpy(dtype=np.int64)
    rows = coordinates["row"].to_numpy(dtype=np.int64)
    outside = (columns < 0) | (columns >= image.width) | (rows < 0) | (rows >= image.height)
    if outside.any():
        first = int(np.flatnonzero(outside)[0])
        raise ModelFormatError(
            f"coordinate row {first} refers to pixel ({columns[first]},{rows[first]}) "
            f"outside the {image.width}x{image.height} image",
        )

    positions = np.ascontiguousarray(coordinates[["x", "y"]].to_numpy())
    if positions.dtype == object:
        raise ModelFormatError("coordinate positions must be numbers")

    # distinct positions by their bytes, numbered by first appearance
    keys = positions.view(np.dtype((np.void, positions.dtype.itemsize * 2))).ravel()
    _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    order = np.argsort(first)
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    point_of_row = rank[inverse.ravel()]
    distinct = positions[first[order]]

    pixels = image.layer_size
    total = pixels + distinct.shape[0]

    grid = image.space.forward.tocoo()
    pos_sources = rows * image.width + columns
    pos_targets = pixels + point_of_row
    near_first, near_second = delta_pairs(distinct, delta)

    sources = [grid.row, pos_sources, pixels + near_first, pixels + near_second]
    targets = [grid.col, pos_targets, pixels + near_second, pixels + near_first]
    if symmetric_pos:
        sources.append(pos_targets)
        targets.append(pos_sources)

    space = QuasiDiscreteSpace.from_edges(
        total,
        np.concatenate(sources),
        np.concatenate(targets),
        point_labels=LayeredLabels(image.width, image.height, distinct),
    )

    valuation = {}
    for name, points in image.valuation.items():
        mask = np.zeros(total, dtype=bool)
        mask[:pixels] = points.mask[:pixels]
        valuation[name] = PointSet(mask)
    coord = np.zeros(total, dtype=bool)
    coord[pixels:] = True
    valuation[COORD_PROPOSITION] = PointSet(coord)

    model = ImageModel(space, valuation, image.pixels, image.palette)
    logger.debug(
        f"multilayer model ({pixels} pixels, {distinct.shape[0]} coordinate points, "
        f"{near_first.size} near pairs) build time: {time.time() - start}",
    )
    return model
