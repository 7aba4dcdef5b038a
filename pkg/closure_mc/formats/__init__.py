from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from closure_mc.exceptions import ModelFormatError
from closure_mc.formats.base import Color, ModelFormat
from closure_mc.formats.graph import (
    GraphFormat,
    dump_graph_model,
    load_graph_model,
    parse_graph_model,
)
from closure_mc.formats.multilayer import build_multilayer_model, load_coordinates
from closure_mc.formats.ppm import (
    ImageModel,
    PpmFormat,
    image_model_from_pixels,
    load_image_model,
    read_pixels,
    save_overlay_image,
)
from closure_mc.spaces.model import ClosureModel

_format_impls = [
    PpmFormat,
    GraphFormat,
]


def register_format_impl(format_impl: type[ModelFormat], priority: int = 0):
    """
    Register a new model file format.
    :param format_impl: The format implementation to register
    :param priority: The priority of the implementation. Highest priority is 0. Default is 0.
    """
    _format_impls.insert(priority, format_impl)


def format_factory(path: Union[str, Path]) -> Optional[ModelFormat]:
    with open(path, "rb") as f:
        header = f.read(512)

    for format_impl in _format_impls:
        if format_impl.recognize(header):
            return format_impl()

    return None


def load_model(
    path: Union[str, Path],
    palette: Optional[Mapping[str, Color]] = None,
    masks: Optional[Sequence[tuple[Union[str, Path], str]]] = None,
) -> ClosureModel:
    """Load a graph or image model, recognized by the start of the file"""
    model_format = format_factory(path)
    if model_format is None:
        raise ModelFormatError(f"{path} is neither a graph file nor a P3/P6 portable pixmap")
    return model_format.load(path, palette, masks)


__all__ = [
    "GraphFormat",
    "ImageModel",
    "ModelFormat",
    "PpmFormat",
    "build_multilayer_model",
    "dump_graph_model",
    "format_factory",
    "image_model_from_pixels",
    "load_coordinates",
    "load_graph_model",
    "load_image_model",
    "load_model",
    "parse_graph_model",
    "read_pixels",
    "register_format_impl",
    "save_overlay_image",
]
