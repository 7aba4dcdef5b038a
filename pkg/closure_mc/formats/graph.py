import re
import time
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from closure_mc.exceptions import ModelFormatError
from closure_mc.formats.base import Color, ModelFormat
from closure_mc.logger import logger
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.space import QuasiDiscreteSpace
from closure_mc.utils import read_utf8

HEADER_RE = re.compile(r"^graph\s+(directed|symmetric)$")
NODE_RE = re.compile(r"^node\s+(-?\w+)(?:\s*\[([^\]]*)\])?$")
EDGE_RE = re.compile(r"^edge\s+(-?\w+)\s+(-?\w+)$")
INT_RE = re.compile(r"^-?\d+$")
# a '#' inside a proposition list is part of a name
COMMENT_RE = re.compile(r"(^|\s)#(?![^\[\]]*\]).*$")

NodeId = Union[int, str]


def _node_id(token: str) -> NodeId:
    return int(token) if INT_RE.match(token) else token


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = COMMENT_RE.sub("", raw).strip()
        if line:
            yield number, line


def parse_graph_model(text: str) -> ClosureModel:
    """
    Parse the graph text format

    A `graph directed` or `graph symmetric` header, then `node <id> [p1,p2]`
    and `edge <id> <id>` lines in any order, `#` starting a comment. Node ids
    are integers or identifiers. Points are numbered in declaration order and
    labelled with their id.
    """
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ModelFormatError("empty graph file, expected a 'graph directed' or 'graph symmetric' header")

    number, line = header
    match = HEADER_RE.match(line)
    if match is None:
        raise ModelFormatError(
            f"expected 'graph directed' or 'graph symmetric', got {line!r}",
            line=number,
        )
    symmetric = match.group(1) == "symmetric"

    nodes: dict[NodeId, list[str]] = {}
    node_lines: dict[NodeId, int] = {}
    edges: list[tuple[NodeId, NodeId, int]] = []
    for number, line in lines:
        if match := NODE_RE.match(line):
            node = _node_id(match.group(1))
            if node in nodes:
                raise ModelFormatError(
                    f"node {node} is already declared on line {node_lines[node]}",
                    line=number,
                )
            props = [p.strip() for p in (match.group(2) or "").split(",") if p.strip()]
            nodes[node] = props
            node_lines[node] = number
        elif match := EDGE_RE.match(line):
            edges.append((_node_id(match.group(1)), _node_id(match.group(2)), number))
        else:
            raise ModelFormatError(f"expected a node or edge line, got {line!r}", line=number)

    ids = list(nodes)
    index = {node: i for i, node in enumerate(ids)}

    sources, targets = [], []
    for a, b, number in edges:
        for end in (a, b):
            if end not in index:
                raise ModelFormatError(f"edge refers to undeclared node {end}", line=number)
        if a == b:
            logger.warning(f"line {number}: dropping self-loop on node {a}")
            continue
        sources.append(index[a])
        targets.append(index[b])

    space = QuasiDiscreteSpace.from_edges(
        len(ids),
        sources,
        targets,
        point_labels=ids,
        symmetric=symmetric,
    )

    valuation: dict[str, list[int]] = {}
    for node, props in nodes.items():
        for prop in props:
            valuation.setdefault(prop, []).append(index[node])

    return ClosureModel(space, valuation)


def load_graph_model(path: Union[str, Path]) -> ClosureModel:
    start = time.time()
    model = parse_graph_model(read_utf8(path))
    logger.debug(f"graph model {path} ({model.point_count} points) load time: {time.time() - start}")
    return model


def dump_graph_model(model: ClosureModel) -> str:
    """Serialize a model to the graph text format, nodes in point order"""
    space = model.space
    symmetric = space.is_symmetric()

    def node_id(x: int) -> NodeId:
        label = space.point_labels[x]
        return label if isinstance(label, (int, str)) else x

    props: dict[int, list[str]] = {x: [] for x in range(space.point_count)}
    for name in model.propositions:
        for x in model.valuation[name]:
            props[x].append(name)

    lines = [f"graph {'symmetric' if symmetric else 'directed'}"]
    for x in range(space.point_count):
        if props[x]:
            lines.append(f"node {node_id(x)} [{','.join(props[x])}]")
        else:
            lines.append(f"node {node_id(x)}")
    for x, y in space.edges():
        if symmetric and y < x:
            continue
        lines.append(f"edge {node_id(x)} {node_id(y)}")
    return "\n".join(lines) + "\n"


class GraphFormat(ModelFormat):
    @staticmethod
    def recognize(header: bytes) -> bool:
        text = header.decode("utf-8", errors="ignore")
        for _, line in _content_lines(text):
            return line.startswith("graph")
        return False

    @property
    def name(self) -> str:
        return "graph"

    def load(
        self,
        path: Union[str, Path],
        palette: Optional[Mapping[str, Color]] = None,
        masks: Optional[Sequence[tuple[Union[str, Path], str]]] = None,
    ) -> ClosureModel:
        if masks:
            raise ModelFormatError("mask layers can only be added to image models")
        return load_graph_model(path)
