# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""File formats: words, colored graphs, verify reports and graph summaries.

Every format is a pydantic model with a `load` classmethod that turns decode
and validation failures into `DataValidationError`, and a `dump` method that
writes stable JSON (fixed key order, camelCase where the format demands it,
unset optional fields left out).
"""

import csv
import io
import json
import logging
from typing import Any, Dict, List, Optional

import pydantic
from pydantic import BaseModel, ConfigDict, Field

from nonrep.colorings import ColoredGraph, ConstructionSpec, build_graph, colorize
from nonrep.errors import ColoringError, DataValidationError, GraphError, WordError
from nonrep.graphs import LatticeRegion
from nonrep.verifier import STATUSES, PathWitness, VerifyReport
from nonrep.words import THUE_STAR_ALPHABET, Word

logger = logging.getLogger(__name__)


class FileModel(BaseModel):
    """Base file model."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    @classmethod
    def load(cls, text: str):
        """Parse and validate this model from JSON text."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            msg = f"invalid {cls.__name__} contents: expecting json. {e}"
            logger.error(msg)
            raise DataValidationError(msg) from e
        try:
            return cls.model_validate(data)
        except pydantic.ValidationError as e:
            msg = f"failed to validate {cls.__name__}: {e}"
            logger.debug(msg, exc_info=True)
            raise DataValidationError(msg) from e

    def dump(self) -> str:
        """Stable JSON text of this model."""
        data = self.model_dump(by_alias=True, exclude_none=True)
        return json.dumps(data, indent=2) + "\n"


class WordFile(FileModel):
    """Word as `{"alphabet": [...], "symbols": [...]}`."""

    alphabet: List[str]
    symbols: List[int]

    @classmethod
    def from_word(cls, word: Word) -> "WordFile":
        """File model of `word`."""
        return cls(alphabet=list(word.alphabet), symbols=list(word.symbols))

    def to_word(self) -> Word:
        """The word this file holds."""
        try:
            return Word(tuple(self.symbols), tuple(self.alphabet))
        except WordError as e:
            raise DataValidationError(f"invalid word file: {e}") from e


def load_word(text: str, alphabet: Optional[List[str]] = None) -> Word:
    """Read a word in either JSON or plain-text form.

    Plain text over a b c d that uses "d" reads as a T* window even when some
    letter is missing; any other plain text gets the sorted set of its labels
    unless `alphabet` is given.
    """
    if text.lstrip().startswith("{"):
        return WordFile.load(text).to_word()
    labels = set("".join(text.split()))
    if alphabet is None and "d" in labels and labels <= set(THUE_STAR_ALPHABET):
        alphabet = list(THUE_STAR_ALPHABET)
    try:
        return Word.parse(text, alphabet)
    except WordError as e:
        raise DataValidationError(f"invalid word text: {e}") from e


class ColoredGraphFile(FileModel):
    """Colored graph as its construction echo, palette and row-major cells.

    Each cell is the vertex payload followed by its color id.
    """

    construction: Dict[str, Any]
    offsets: Optional[List[int]] = None
    palette: List[str]
    cells: List[List[int]]

    @classmethod
    def from_colored(cls, cg: ColoredGraph) -> "ColoredGraphFile":
        """File model of `cg`; the coloring must come from a construction."""
        if cg.spec is None:
            raise ColoringError("only constructed colorings can be written")
        echo = cg.spec.echo()
        cells = [list(p) + [c] for p, c in zip(cg.graph.payloads, cg.colors)]
        return cls(
            construction=echo,
            offsets=echo.get("offsets"),
            palette=list(cg.palette),
            cells=cells,
        )

    def spec(self) -> ConstructionSpec:
        """Rebuild the construction spec from its echo."""
        echo = self.construction
        try:
            region = echo.get("region")
            offsets = self.offsets if self.offsets is not None else echo.get("offsets")
            return ConstructionSpec(
                echo["kind"],
                region=LatticeRegion.parse(region) if region is not None else None,
                n=echo.get("n"),
                offsets=tuple(offsets) if offsets is not None else None,
                base=tuple(echo["base"]) if echo.get("base") is not None else None,
            )
        except (KeyError, TypeError, ColoringError, GraphError) as e:
            msg = f"invalid construction in coloring file: {echo}"
            logger.error(msg)
            raise DataValidationError(msg) from e

    def to_colored(self) -> ColoredGraph:
        """The colored graph this file holds, with the graph rebuilt from the construction."""
        spec = self.spec()
        graph = build_graph(spec)
        colors = [-1] * graph.vertex_count
        try:
            for cell in self.cells:
                v = graph.index_of(cell[:-1])
                if colors[v] != -1:
                    raise DataValidationError(f"vertex {tuple(cell[:-1])} colored twice")
                colors[v] = cell[-1]
        except GraphError as e:
            raise DataValidationError(f"cell outside the construction: {e}") from e
        if -1 in colors:
            missing = graph.payloads[colors.index(-1)]
            raise DataValidationError(f"vertex {missing} has no color")
        types = colorize(spec).vertex_types if not spec.is_lattice else None
        try:
            return ColoredGraph(graph, tuple(colors), tuple(self.palette), spec, types)
        except ColoringError as e:
            raise DataValidationError(f"invalid coloring file: {e}") from e


def coloring_csv(cg: ColoredGraph) -> str:
    """`x,y[,z],color` rows in vertex order, color as its palette label."""
    dim = len(cg.graph.payloads[0]) if cg.graph.payloads else 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["x", "y", "z"][:dim] + ["color"])
    for v, payload in enumerate(cg.graph.payloads):
        writer.writerow(list(payload) + [cg.label(v)])
    return buffer.getvalue()


def edges_csv(cg: ColoredGraph) -> str:
    """`u,v` vertex id pairs, each edge once."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["u", "v"])
    writer.writerows(cg.graph.edges())
    return buffer.getvalue()


class GraphSummaryFile(FileModel):
    """Size and palette of a colored graph."""

    family: str
    params: Dict[str, Any]
    vertices: int
    edges: int
    palette_size: int = Field(alias="paletteSize")
    max_degree: int = Field(alias="maxDegree")

    @classmethod
    def from_colored(cls, cg: ColoredGraph) -> "GraphSummaryFile":
        """Summary of `cg`."""
        summary = cg.graph.summary()
        return cls(
            family=summary["family"],
            params=summary["params"],
            vertices=summary["vertices"],
            edges=summary["edges"],
            palette_size=cg.palette_size,
            max_degree=max(cg.graph.degrees(), default=0),
        )


class BudgetEcho(FileModel):
    """Budget block of a verify report."""

    max_len: int = Field(alias="maxLen")
    max_nodes: int = Field(alias="maxNodes")
    parallelism: int


class WitnessEcho(FileModel):
    """Witness block of a verify report: payloads and palette labels of the path."""

    k: int
    vertices: List[List[int]]
    colors: List[str]


class VerifyReportFile(FileModel):
    """Verify report; `witness` is present only when status is "witness"."""

    status: str
    construction: Dict[str, Any]
    budget: BudgetEcho
    nodes_visited: int = Field(alias="nodesVisited")
    elapsed_ms: int = Field(alias="elapsedMs")
    witness: Optional[WitnessEcho] = None

    @pydantic.field_validator("status")
    @classmethod
    def validate_status(cls, status):
        """Validate status."""
        if status not in STATUSES:
            raise ValueError(f"invalid status {status!r}; expected one of {STATUSES}")
        return status

    @pydantic.model_validator(mode="after")
    def validate_witness_presence(self):
        """A witness is present exactly when the status says so."""
        if (self.status == "witness") != (self.witness is not None):
            raise ValueError("witness must be present exactly when status is 'witness'")
        return self

    @classmethod
    def from_report(cls, report: VerifyReport) -> "VerifyReportFile":
        """File model of `report`."""
        witness = None
        if report.witness is not None:
            witness = WitnessEcho(
                k=report.witness.k,
                vertices=[list(p) for p in report.payloads],
                colors=list(report.colors),
            )
        return cls(
            status=report.status,
            construction=report.construction,
            budget=BudgetEcho.model_validate(report.budget.echo()),
            nodes_visited=report.nodes_visited,
            elapsed_ms=report.elapsed_ms,
            witness=witness,
        )

    def path_witness(self, cg: ColoredGraph) -> PathWitness:
        """The witness as vertex ids of `cg`, for re-validation."""
        if self.witness is None:
            raise DataValidationError("report carries no witness")
        try:
            ids = tuple(cg.graph.index_of(p) for p in self.witness.vertices)
        except GraphError as e:
            raise DataValidationError(f"witness vertex outside the graph: {e}") from e
        return PathWitness(ids, self.witness.k)

    def comparable(self) -> Dict[str, Any]:
        """The report without fields that vary with the worker count."""
        data = self.model_dump(by_alias=True, exclude_none=True)
        data["budget"].pop("parallelism")
        return data


class FactorEcho(FileModel):
    """Location of a square or palindrome factor."""

    start: int
    length: int
    kind: str


class WordCheckFile(FileModel):
    """Findings of `check-word`; absent factors were not found."""

    length: int
    alphabet: List[str]
    square: Optional[FactorEcho] = None
    palindrome: Optional[FactorEcho] = None
    k_max: int = Field(alias="kMax")
    counterexamples: int
    first_counterexample: Optional[List[int]] = Field(default=None, alias="firstCounterexample")
