# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""SVG rendering of colored graphs with matplotlib.

Lattice colorings are drawn one square per vertex, x to the right and y up;
three-dimensional regions get one sheet per value of the last coordinate.
Boards (rook, biclique) are drawn row i from the top, each cell labelled with
its color and hatched by vertex type. Fills come from a fixed 28-entry table
indexed by palette position, so renders of different constructions compare.
"""

import io
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Rectangle

from nonrep.colorings import ColoredGraph
from nonrep.errors import ColoringError
from nonrep.graphs import Point

logger = logging.getLogger(__name__)

FILL_TABLE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
    "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5", "#393b79",
    "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd", "#e6550d", "#31a354",
)  # fmt: skip
HATCHES = (None, "//", "..", "xx")
CELL_INCHES = 0.35


def fill_for(color_id: int) -> str:
    """Fill of a palette position; positions past the table wrap around."""
    return FILL_TABLE[color_id % len(FILL_TABLE)]


def _cell_gid(payload: Point) -> str:
    return "cell-" + "-".join(str(x) for x in payload)


def _sheets(cg: ColoredGraph) -> Dict[int, List[int]]:
    dim = len(cg.graph.payloads[0])
    layers: Dict[int, List[int]] = {}
    for v, payload in enumerate(cg.graph.payloads):
        layers.setdefault(payload[2] if dim == 3 else 0, []).append(v)
    return dict(sorted(layers.items()))


def _extent(payloads: Sequence[Point]) -> Tuple[int, int, int, int]:
    xs = [p[0] for p in payloads]
    ys = [p[1] for p in payloads]
    return min(xs), max(xs), min(ys), max(ys)


def render_svg(cg: ColoredGraph) -> str:
    """Render `cg` to SVG text; identical input gives identical output."""
    payloads = cg.graph.payloads
    if not payloads or len(payloads[0]) not in (2, 3):
        raise ColoringError("only 2D and 3D colorings can be rendered")
    board = cg.spec is not None and not cg.spec.is_lattice
    sheets = _sheets(cg)
    x0, x1, y0, y1 = _extent(payloads)
    width, height = x1 - x0 + 1, y1 - y0 + 1
    if board:
        width, height = height, width

    fig = Figure(figsize=(CELL_INCHES * width * len(sheets), CELL_INCHES * height + 0.4))
    type_hatch: Dict[str, Optional[str]] = {}
    if cg.vertex_types is not None:
        for i, vertex_type in enumerate(sorted(set(cg.vertex_types))):
            type_hatch[vertex_type] = HATCHES[i % len(HATCHES)]

    for index, (layer, vertices) in enumerate(sheets.items()):
        ax = fig.add_subplot(1, len(sheets), index + 1)
        ax.set_gid(f"sheet-{layer}")
        for v in vertices:
            payload = payloads[v]
            if board:
                col, row = payload[1] - y0, height - 1 - (payload[0] - x0)
            else:
                col, row = payload[0] - x0, payload[1] - y0
            cell = Rectangle(
                (col, row),
                1,
                1,
                facecolor=fill_for(cg.colors[v]),
                edgecolor="white",
                linewidth=0.5,
                hatch=type_hatch.get(cg.vertex_types[v]) if cg.vertex_types else None,
            )
            cell.set_gid(_cell_gid(payload))
            ax.add_patch(cell)
            if board:
                ax.text(col + 0.5, row + 0.5, cg.label(v), ha="center", va="center", fontsize=6)
        ax.set_xlim(0, width)
        ax.set_ylim(0, height)
        ax.set_aspect("equal")
        ax.set_axis_off()
        if len(sheets) > 1:
            ax.set_title(f"x3={layer}", fontsize=7)

    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "nonrep", "svg.fonttype": "none"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    logger.info("rendered %s cells on %s sheets", len(payloads), len(sheets))
    return buffer.getvalue()
