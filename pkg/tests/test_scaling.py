import time

import numpy as np
import pytest

from closure_mc.checker import sat
from closure_mc.formats import image_model_from_pixels
from closure_mc.logic import parse_individual, parse_spec_program

from .rasters import LEGEND, MAZE_SPEC, PALETTE

pytestmark = pytest.mark.slow


def random_raster(size: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    black = rng.random((size, size)) < 0.4
    pixels = np.full((size, size, 3), 255, dtype=np.uint8)
    pixels[black] = 0
    return pixels


def best_time(model, formula, repeat: int = 3) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        sat(model, formula)
        times.append(time.perf_counter() - start)
    return min(times)


def test_surrounded_and_propagation_scale_linearly():
    formula = parse_individual("(white S black) | (white P black)")
    small = image_model_from_pixels(random_raster(256), PALETTE)
    large = image_model_from_pixels(random_raster(512), PALETTE)

    # warm up
    sat(small, formula)

    ratio = best_time(large, formula) / best_time(small, formula)
    assert ratio <= 6


def test_nested_reach_on_a_megapixel_image():
    size = 1024
    pixels = np.full((size, size, 3), LEGEND["W"], dtype=np.uint8)
    pixels[0, :] = LEGEND["K"]
    pixels[0, size // 2] = LEGEND["G"]
    pixels[size // 2, ::64] = LEGEND["K"]
    pixels[-1, ::97] = LEGEND["B"]

    program = parse_spec_program(MAZE_SPEC + 'paint "startCanExit" #ff0000;\n')
    model = image_model_from_pixels(pixels, program.palette)

    start = time.perf_counter()
    points = sat(model, program.paints[0].formula)
    elapsed = time.perf_counter() - start

    assert elapsed <= 10
    assert len(points) == len(range(0, size, 97))
