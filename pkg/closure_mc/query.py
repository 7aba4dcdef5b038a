from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from closure_mc.utils import format_color, parse_color


def validate_mask_layer(v: Any) -> Any:
    if not isinstance(v, str):
        return v

    values = v.rsplit(":", 1)
    if len(values) != 2 or not values[0] or not values[1]:
        raise ValueError("layer must be in the format 'mask.ppm:proposition'")

    return {"path": values[0], "proposition": values[1]}


def validate_multilayer(v: Any) -> Any:
    if v is None or not isinstance(v, str):
        return v

    values = v.rsplit(":", 1)
    if len(values) != 2 or not values[0]:
        raise ValueError("multilayer must be in the format 'coords.csv:delta'")

    try:
        delta = float(values[1])
    except ValueError:
        raise ValueError(
            "multilayer must be in the format 'coords.csv:delta' where delta is a valid float",
        )

    return {"coordinates": values[0], "delta": delta}


def validate_color(v: Any) -> tuple[int, int, int]:
    return parse_color(v)


class MaskLayer(BaseModel):
    """Extra proposition read from a mask image: non-black pixels satisfy it"""

    path: Path
    proposition: str = Field(..., pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")


class MultilayerOption(BaseModel):
    """Coordinate table and distance threshold of the communication layer"""

    coordinates: Path
    delta: float = Field(..., ge=0, description="Distance threshold of the communication layer")


class RunOptions(BaseModel):
    """Validated configuration of one spec run"""

    model: Path = Field(..., description="Graph text file or portable pixmap to check")
    spec: Path = Field(..., description="Spec program with let, prop, paint and ask statements")
    output: Optional[Path] = Field(
        None,
        description="Overlay image to write. Required when an image model has paint commands",
    )
    verbose: bool = Field(False, description="Log checker traces at debug level")
    layers: list[MaskLayer] = Field(
        default_factory=list,
        description="Extra propositions from mask images in the format 'mask.ppm:proposition'",
    )
    multilayer: Optional[MultilayerOption] = Field(
        None,
        description="Build a two layer model from a coordinate table in the format 'coords.csv:delta'",
    )
    symmetric_pos: bool = Field(
        False,
        description="Also link every coordinate point back to its pixels. Only valid with multilayer",
    )
    cache_bytes: int = Field(
        int(1e8),
        ge=0,
        description="Size of the satisfaction set cache shared by the commands of a run",
    )

    @field_validator("layers", mode="before")
    @classmethod
    def validate_layers(cls, v: Any) -> Any:
        if v is None:
            return []
        if isinstance(v, str):
            v = [v]
        return [validate_mask_layer(layer) for layer in v]

    @field_validator("multilayer", mode="before")
    @classmethod
    def validate_multilayer(cls, v: Any) -> Any:
        return validate_multilayer(v)

    @model_validator(mode="after")
    def validate_dependent_symmetric_pos(self) -> "RunOptions":
        if self.symmetric_pos and self.multilayer is None:
            raise ValueError("symmetric_pos is only valid together with multilayer")
        return self


class BaseDeclaration(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    line: Optional[int] = Field(None, description="Line of the statement in the spec file")


class LetDeclaration(BaseDeclaration):
    """Named, possibly parametric, formula"""

    kind: Literal["let"] = "let"
    name: str
    params: tuple[str, ...] = ()
    body: str = Field(..., description="Source text of the macro body")


class PropDeclaration(BaseDeclaration):
    """Palette entry: pixels of this colour satisfy the proposition"""

    kind: Literal["prop"] = "prop"
    name: str
    color: tuple[int, int, int]

    @field_validator("color", mode="before")
    @classmethod
    def validate_color(cls, v: Any) -> tuple[int, int, int]:
        return validate_color(v)


class PaintCommand(BaseDeclaration):
    """Colour the points satisfying an individual formula"""

    kind: Literal["paint"] = "paint"
    text: str = Field(..., description="Source text of the individual formula")
    color: tuple[int, int, int]
    formula: Any = Field(None, exclude=True, description="Core individual formula")

    @field_validator("color", mode="before")
    @classmethod
    def validate_color(cls, v: Any) -> tuple[int, int, int]:
        return validate_color(v)

    @property
    def hex_color(self) -> str:
        return format_color(self.color)


class AskCommand(BaseDeclaration):
    """Decide a collective formula on a point set, the whole space when no points are given"""

    kind: Literal["ask"] = "ask"
    text: str = Field(..., description="Source text of the collective formula")
    points: Optional[list[Union[tuple[int, int], int, str]]] = Field(
        None,
        description="(column,row) pixels for images, node ids for graphs",
    )
    formula: Any = Field(None, exclude=True, description="Core collective formula")


Declaration = Annotated[
    Union[LetDeclaration, PropDeclaration, PaintCommand, AskCommand],
    Field(discriminator="kind"),
]


class SpecProgram(BaseModel):
    """Parsed spec file, declarations in source order"""

    declarations: list[Declaration] = Field(default_factory=list)

    @property
    def palette(self) -> dict[str, tuple[int, int, int]]:
        return {d.name: d.color for d in self.declarations if isinstance(d, PropDeclaration)}

    @property
    def paints(self) -> list[PaintCommand]:
        return [d for d in self.declarations if isinstance(d, PaintCommand)]

    @property
    def asks(self) -> list[AskCommand]:
        return [d for d in self.declarations if isinstance(d, AskCommand)]

    @property
    def commands(self) -> list[Union[PaintCommand, AskCommand]]:
        return [d for d in self.declarations if isinstance(d, (PaintCommand, AskCommand))]
