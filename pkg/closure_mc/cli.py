import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence, TextIO, Union

import cachey
from pydantic import ValidationError

from closure_mc.checker.cslcs import CslcsChecker
from closure_mc.checker.slcs import SlcsChecker
from closure_mc.exceptions import ClosureModelError, SpecProgramError
from closure_mc.formats import (
    ImageModel,
    build_multilayer_model,
    load_coordinates,
    load_model,
    save_overlay_image,
)
from closure_mc.logger import logger
from closure_mc.logic.program import parse_spec_program
from closure_mc.query import AskCommand, PaintCommand, RunOptions, SpecProgram
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.pointset import PointSet
from closure_mc.utils import read_utf8

EXIT_ALL_TRUE = 0
EXIT_SOME_FALSE = 1
EXIT_ERROR = 2


class RunFailed(Exception):
    """A phase of a spec run failed; the cause has been logged"""


class SpecRunner:
    """
    Run a spec program against a model

    Commands run in source order. Paint results become overlay layers for
    image models and `<paint-index> <node-id>` lines for graph models; ask
    commands print true or false.
    """

    options: RunOptions
    cache: cachey.Cache

    def __init__(self, options: RunOptions):
        self.options = options
        self.cache = cachey.Cache(options.cache_bytes)

    def run(self, stdout: TextIO) -> int:
        start = time.time()
        try:
            program = self.read_program()
            model = self.load_model(program)
            all_true = self.execute(program, model, stdout)
        except RunFailed:
            return EXIT_ERROR

        logger.debug(f"spec run time: {time.time() - start}")
        return EXIT_ALL_TRUE if all_true else EXIT_SOME_FALSE

    def read_program(self) -> SpecProgram:
        try:
            text = read_utf8(self.options.spec)
            return parse_spec_program(text)
        except (ClosureModelError, OSError) as e:
            logger.error(f"Error reading spec {self.options.spec}: {e}")
            raise RunFailed()

    def load_model(self, program: SpecProgram) -> ClosureModel:
        masks = [(layer.path, layer.proposition) for layer in self.options.layers]
        try:
            model = load_model(self.options.model, palette=program.palette, masks=masks)
        except (ClosureModelError, OSError) as e:
            logger.error(f"Error loading model {self.options.model}: {e}")
            raise RunFailed()

        if program.palette and not isinstance(model, ImageModel):
            logger.warning("prop declarations only apply to image models, ignoring them")

        if self.options.multilayer is not None:
            try:
                if not isinstance(model, ImageModel):
                    raise SpecProgramError("a multilayer model needs an image model")
                coordinates = load_coordinates(self.options.multilayer.coordinates)
                model = build_multilayer_model(
                    model,
                    coordinates,
                    self.options.multilayer.delta,
                    symmetric_pos=self.options.symmetric_pos,
                )
            except (ClosureModelError, OSError) as e:
                logger.error(f"Error building multilayer model: {e}")
                raise RunFailed()

        return model

    def resolve_points(self, model: ClosureModel, command: AskCommand) -> PointSet:
        if command.points is None:
            return model.space.full()

        if isinstance(model, ImageModel):
            if not all(isinstance(p, tuple) for p in command.points):
                raise SpecProgramError(f"line {command.line}: points of an image model are given as (column,row)")
            return model.points_at(command.points)

        if not all(isinstance(p, (int, str)) for p in command.points):
            raise SpecProgramError(f"line {command.line}: points of a graph model are given as node ids")
        index = {label: x for x, label in enumerate(model.space.point_labels)}
        missing = [p for p in command.points if p not in index]
        if missing:
            raise SpecProgramError(f"line {command.line}: unknown nodes {missing}")
        return model.space.points(index[p] for p in command.points)

    def execute(self, program: SpecProgram, model: ClosureModel, stdout: TextIO) -> bool:
        is_image = isinstance(model, ImageModel)
        if is_image and program.paints and self.options.output is None:
            logger.error("Error running spec: paint commands on an image model need an output path")
            raise RunFailed()
        if not is_image and self.options.output is not None:
            logger.warning("output path is only used for image models, ignoring it")

        individual = SlcsChecker(model, cache=self.cache)
        collective = CslcsChecker(model, individual=individual)

        layers = []
        all_true = True
        paint_index = 0
        for command in program.commands:
            try:
                match command:
                    case PaintCommand():
                        points = individual.sat(command.formula)
                        if is_image:
                            layers.append((points, command.color))
                        else:
                            labels = model.space.point_labels
                            for x in points:
                                stdout.write(f"{paint_index} {labels[x]}\n")
                        paint_index += 1
                    case AskCommand():
                        answer = collective.sat_collective(self.resolve_points(model, command), command.formula)
                        stdout.write("true\n" if answer else "false\n")
                        all_true = all_true and answer
            except ClosureModelError as e:
                logger.error(f"Error running line {command.line} ({command.text!r}): {e}")
                raise RunFailed()
            except RecursionError:
                logger.error(
                    f"Error running line {command.line} ({command.text!r}): formula is nested too deeply",
                )
                raise RunFailed()

        if is_image and self.options.output is not None:
            try:
                save_overlay_image(model, layers, self.options.output)
            except (ClosureModelError, OSError) as e:
                logger.error(f"Error writing {self.options.output}: {e}")
                raise RunFailed()

        return all_true


def decode_options(**kwargs) -> Optional[RunOptions]:
    try:
        return RunOptions(**kwargs)
    except ValidationError as e:
        logger.error(f"Error decoding options: {e}")
        return None


def run_spec(
    model: Union[str, Path],
    spec: Union[str, Path],
    output: Optional[Union[str, Path]] = None,
    layers: Sequence[str] = (),
    multilayer: Optional[str] = None,
    symmetric_pos: bool = False,
    cache_bytes: int = int(1e8),
    verbose: bool = False,
    stdout: Optional[TextIO] = None,
) -> int:
    """
    Run a spec file against a model file

    Returns 0 when every ask holds (or there is none), 1 when some ask fails
    and 2 on any error.
    """
    options = decode_options(
        model=model,
        spec=spec,
        output=output,
        layers=list(layers),
        multilayer=multilayer,
        symmetric_pos=symmetric_pos,
        cache_bytes=cache_bytes,
        verbose=verbose,
    )
    if options is None:
        return EXIT_ERROR

    return SpecRunner(options).run(stdout or sys.stdout)


def configure_logging(verbose: bool):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(levelname)s: %(message)s"))
    logger.handlers = [handler]
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="closure-mc",
        description="Spatial model checking of graphs and images",
    )
    parser.add_argument("--model", required=True, help="graph text file or P3/P6 portable pixmap")
    parser.add_argument("--spec", required=True, help="spec program with let, prop, paint and ask statements")
    parser.add_argument("--output", help="overlay image to write, required for paint commands on images")
    parser.add_argument("--verbose", action="store_true", help="log checker traces and timings")
    parser.add_argument(
        "--layers",
        action="append",
        default=[],
        metavar="MASK:PROP",
        help="extra proposition holding on the non-black pixels of a mask image, repeatable",
    )
    parser.add_argument(
        "--multilayer",
        metavar="COORDS:DELTA",
        help="add a communication layer from a column,row,x,y table linking positions within delta",
    )
    parser.add_argument(
        "--symmetric-pos",
        action="store_true",
        help="also link coordinate points back to their pixels",
    )
    parser.add_argument(
        "--cache-bytes",
        type=int,
        default=int(1e8),
        help="size of the satisfaction set cache shared by the commands",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    options = decode_options(**vars(args))
    if options is None:
        return EXIT_ERROR

    configure_logging(options.verbose)
    return SpecRunner(options).run(sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
