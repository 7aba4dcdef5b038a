import time
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from PIL import Image

from closure_mc.exceptions import InvalidPointSetError, ModelFormatError
from closure_mc.formats.base import Color, ModelFormat
from closure_mc.logger import logger
from closure_mc.spaces.builders import build_grid_4adj
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.pointset import PointSet
from closure_mc.spaces.space import QuasiDiscreteSpace
from closure_mc.utils import format_color, parse_color

BLACK = (0, 0, 0)


class ImageModel(ClosureModel):
    """
    Model of a digital image

    The first width * height points are the pixels, row-major from the top
    left. Further points, if any, belong to extra layers built on top of the
    image and are never painted.
    """

    def __init__(
        self,
        space: QuasiDiscreteSpace,
        valuation: Mapping,
        pixels: np.ndarray,
        palette: Optional[Mapping[str, tuple[int, int, int]]] = None,
    ):
        super().__init__(space, valuation)
        self.pixels = pixels
        self.palette = dict(palette or {})

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def layer_size(self) -> int:
        return self.width * self.height

    def point_at(self, column: int, row: int) -> int:
        if not (0 <= column < self.width and 0 <= row < self.height):
            raise InvalidPointSetError(
                f"pixel ({column},{row}) is outside the {self.width}x{self.height} image",
            )
        return row * self.width + column

    def points_at(self, pixels: Sequence[tuple[int, int]]) -> PointSet:
        return PointSet.from_indices(self.point_count, [self.point_at(c, r) for c, r in pixels])


def read_ppm_header(data: bytes) -> tuple[str, int, int, int]:
    """Magic number, width, height and maxval of a portable pixmap"""
    tokens: list[bytes] = []
    i = 0
    while len(tokens) < 4 and i < len(data):
        c = data[i : i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            end = data.find(b"\n", i)
            i = len(data) if end == -1 else end + 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j

    if not tokens or tokens[0] not in (b"P3", b"P6"):
        found = tokens[0][:8] if tokens else b""
        raise ModelFormatError(f"not a P3 or P6 portable pixmap (magic {found!r})")
    if len(tokens) < 4:
        raise ModelFormatError("truncated portable pixmap header")

    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError:
        raise ModelFormatError(
            "portable pixmap header must give width, height and maxval as integers",
        )
    if width < 1 or height < 1:
        raise ModelFormatError(f"portable pixmap must have positive dimensions, got {width}x{height}")
    if maxval != 255:
        raise ModelFormatError(f"only maxval 255 is supported, got {maxval}")

    return tokens[0].decode(), width, height, maxval


def read_pixels(path: Union[str, Path]) -> np.ndarray:
    """RGB pixels of a P3 or P6 pixmap as a (height, width, 3) uint8 array"""
    path = Path(path)
    with open(path, "rb") as f:
        header = f.read(1024)
    _, width, height, _ = read_ppm_header(header)

    try:
        with Image.open(path) as image:
            image.load()
            pixels = np.asarray(image.convert("RGB"), dtype=np.uint8)
    except (OSError, ValueError, SyntaxError) as e:
        raise ModelFormatError(f"cannot decode {path}: {e}")

    if pixels.shape[:2] != (height, width):
        raise ModelFormatError(f"{path} decodes to {pixels.shape[1]}x{pixels.shape[0]}, header says {width}x{height}")
    return pixels


def _pack(pixels: np.ndarray) -> np.ndarray:
    flat = pixels.reshape(-1, 3).astype(np.uint32)
    return (flat[:, 0] << 16) | (flat[:, 1] << 8) | flat[:, 2]


def _pack_color(rgb: tuple[int, int, int]) -> int:
    return (rgb[0] << 16) | (rgb[1] << 8) | rgb[2]


def color_valuation(pixels: np.ndarray) -> dict[str, PointSet]:
    """One '#rrggbb' proposition per colour present in the image"""
    codes = _pack(pixels)
    colors, inverse, counts = np.unique(codes, return_inverse=True, return_counts=True)
    order = np.argsort(inverse, kind="stable")
    groups = np.split(order, np.cumsum(counts)[:-1])

    valuation = {}
    for code, group in zip(colors.tolist(), groups):
        rgb = ((code >> 16) & 0xFF, (code >> 8) & 0xFF, code & 0xFF)
        valuation[format_color(rgb)] = PointSet.from_indices(codes.size, group)
    return valuation


def image_model_from_pixels(
    pixels: np.ndarray,
    palette: Optional[Mapping[str, Color]] = None,
    masks: Optional[Mapping[str, np.ndarray]] = None,
) -> ImageModel:
    """
    Build the model of an image given as a (height, width, 3) uint8 array

    Each pixel satisfies the '#rrggbb' proposition of its colour and every
    palette name whose colour equals it exactly. A mask adds a proposition
    holding on its non-black pixels.
    """
    height, width = pixels.shape[:2]
    space = build_grid_4adj(width, height)
    codes = _pack(pixels)

    rgb_palette = {name: parse_color(color) for name, color in (palette or {}).items()}
    valuation: dict[str, PointSet] = color_valuation(pixels)
    for name, rgb in rgb_palette.items():
        valuation[name] = PointSet(codes == _pack_color(rgb))

    for name, mask_pixels in (masks or {}).items():
        if mask_pixels.shape[:2] != (height, width):
            raise ModelFormatError(
                f"mask for {name!r} is {mask_pixels.shape[1]}x{mask_pixels.shape[0]}, "
                f"the image is {width}x{height}",
            )
        layer = PointSet(_pack(mask_pixels) != _pack_color(BLACK))
        valuation[name] = valuation[name] | layer if name in valuation else layer

    return ImageModel(space, valuation, pixels, rgb_palette)


def load_image_model(
    path: Union[str, Path],
    palette: Optional[Mapping[str, Color]] = None,
    masks: Optional[Sequence[tuple[Union[str, Path], str]]] = None,
) -> ImageModel:
    start = time.time()
    pixels = read_pixels(path)
    mask_pixels = {name: read_pixels(mask_path) for mask_path, name in (masks or [])}
    model = image_model_from_pixels(pixels, palette, mask_pixels)
    logger.debug(f"image model {path} ({model.width}x{model.height}) load time: {time.time() - start}")
    return model


def render_overlay(model: ImageModel, layers: Sequence[tuple[PointSet, Color]]) -> np.ndarray:
    """Image pixels with every layer's points recoloured, later layers on top"""
    pixels = model.pixels.copy()
    flat = pixels.reshape(-1, 3)
    for points, color in layers:
        model.space._check(points)
        idx = points.indices()
        flat[idx[idx < model.layer_size]] = parse_color(color)
    return pixels


def save_overlay_image(
    model: ImageModel,
    layers: Sequence[tuple[PointSet, Color]],
    path: Union[str, Path],
):
    """Write the painted image as a binary (P6) portable pixmap"""
    pixels = render_overlay(model, layers)
    try:
        Image.fromarray(pixels).save(path, format="PPM")
    except OSError as e:
        logger.error(f"Error writing overlay image {path}: {e}")
        raise


class PpmFormat(ModelFormat):
    @staticmethod
    def recognize(header: bytes) -> bool:
        return header[:2] in (b"P3", b"P6")

    @property
    def name(self) -> str:
        return "ppm"

    def load(
        self,
        path: Union[str, Path],
        palette: Optional[Mapping[str, Color]] = None,
        masks: Optional[Sequence[tuple[Union[str, Path], str]]] = None,
    ) -> ImageModel:
        return load_image_model(path, palette, masks)
