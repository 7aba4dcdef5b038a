from pathlib import Path

import pytest

from closure_mc.query import (
    AskCommand,
    MaskLayer,
    PaintCommand,
    PropDeclaration,
    RunOptions,
    SpecProgram,
)


def test_run_options():
    options = RunOptions(
        model="maze.ppm",
        spec="maze.spec",
        output="out.ppm",
        layers=["exits.ppm:exit", "walls.pbm:wall"],
        multilayer="coords.csv:2.5",
        symmetric_pos=True,
    )
    assert options.model == Path("maze.ppm")
    assert options.layers == [
        MaskLayer(path="exits.ppm", proposition="exit"),
        MaskLayer(path="walls.pbm", proposition="wall"),
    ]
    assert options.multilayer.coordinates == Path("coords.csv")
    assert options.multilayer.delta == 2.5
    assert options.cache_bytes == int(1e8)

    defaults = RunOptions(model="g.graph", spec="g.spec", layers="mask.ppm:road")
    assert defaults.output is None
    assert defaults.multilayer is None
    assert defaults.layers[0].proposition == "road"

    # Fail because the layer has no proposition
    with pytest.raises(ValueError, match="layer must be in the format 'mask.ppm:proposition'"):
        RunOptions(model="m.ppm", spec="s.spec", layers=["mask.ppm"])

    # Fail because the proposition is not an identifier
    with pytest.raises(ValueError, match="String should match pattern"):
        RunOptions(model="m.ppm", spec="s.spec", layers=["mask.ppm:9lives"])

    # Fail because delta is not a number
    with pytest.raises(
        ValueError,
        match="multilayer must be in the format 'coords.csv:delta' where delta is a valid float",
    ):
        RunOptions(model="m.ppm", spec="s.spec", multilayer="coords.csv:near")

    with pytest.raises(ValueError, match="multilayer must be in the format 'coords.csv:delta'"):
        RunOptions(model="m.ppm", spec="s.spec", multilayer="coords.csv")

    # Fail because delta is negative
    with pytest.raises(ValueError, match="greater than or equal to 0"):
        RunOptions(model="m.ppm", spec="s.spec", multilayer="coords.csv:-1")

    # Fail because symmetric_pos needs a multilayer model
    with pytest.raises(ValueError, match="symmetric_pos is only valid together with multilayer"):
        RunOptions(model="m.ppm", spec="s.spec", symmetric_pos=True)

    with pytest.raises(ValueError, match="greater than or equal to 0"):
        RunOptions(model="m.ppm", spec="s.spec", cache_bytes=-1)


def test_declaration_discriminator():
    program = SpecProgram(
        declarations=[
            {"kind": "prop", "name": "wall", "color": "black"},
            {"kind": "prop", "name": "exit", "color": "#00FF00"},
            {"kind": "paint", "text": "exit", "color": "#ff0000"},
            {"kind": "ask", "text": "G exit", "points": [[1, 2], [3, 4]]},
            {"kind": "ask", "text": "G exit", "points": [7, 9]},
            {"kind": "let", "name": "door", "body": "N exit"},
        ],
    )
    assert isinstance(program.declarations[0], PropDeclaration)
    assert program.palette == {"wall": (0, 0, 0), "exit": (0, 255, 0)}

    paint = program.paints[0]
    assert isinstance(paint, PaintCommand)
    assert paint.hex_color == "#ff0000"

    first, second = program.asks
    assert isinstance(first, AskCommand)
    assert first.points == [(1, 2), (3, 4)]
    assert second.points == [7, 9]
    assert [d.kind for d in program.commands] == ["paint", "ask", "ask"]

    # Fail because the colour is unknown
    with pytest.raises(ValueError, match="must be in the format '#rrggbb' or a known colour name"):
        PropDeclaration(name="wall", color="blackish")

    with pytest.raises(ValueError, match="must be three integers in 0..255"):
        PaintCommand(text="a", color=(0, 0, 256))

    with pytest.raises(ValueError):
        SpecProgram(declarations=[{"kind": "erase", "text": "a"}])
