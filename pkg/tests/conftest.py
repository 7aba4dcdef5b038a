from pathlib import Path

import pytest

from closure_mc.formats import ImageModel, image_model_from_pixels, load_graph_model
from closure_mc.spaces import ClosureModel

from .rasters import PALETTE, pixels_from_rows, two_rings_pixels

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def ten_point_graph() -> ClosureModel:
    return load_graph_model(DATA / "ten-point.graph")


@pytest.fixture(scope="session")
def partition_left() -> ClosureModel:
    return load_graph_model(DATA / "partition-6-left.graph")


@pytest.fixture(scope="session")
def partition_right() -> ClosureModel:
    return load_graph_model(DATA / "partition-6-right.graph")


@pytest.fixture(scope="session")
def two_rings_image() -> ImageModel:
    return image_model_from_pixels(two_rings_pixels(), PALETTE)


@pytest.fixture(scope="session")
def image_from_rows():
    def build(rows: list[str]) -> ImageModel:
        return image_model_from_pixels(pixels_from_rows(rows), PALETTE)

    return build
