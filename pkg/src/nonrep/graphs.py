# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Finite graphs: lattice boxes under product adjacency, rook and biclique boards.

Every graph is materialized from a networkx product and then frozen into an
indexed form: vertices are numbered in row-major order of their payloads
(lattice points or board cells) and each vertex keeps a sorted neighbor tuple.
The search code only ever touches the frozen form.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from nonrep.errors import GraphError

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]

ADJACENCIES = ("cartesian", "tensor", "strong")

_PRODUCTS = {
    "cartesian": nx.cartesian_product,
    "tensor": nx.tensor_product,
    "strong": nx.strong_product,
}


@dataclass(frozen=True)
class LatticeRegion:
    """An axis-aligned box of Z^n with inclusive bounds and an adjacency rule."""

    lo: Point
    hi: Point
    adjacency: str = "cartesian"

    def __post_init__(self):
        if not self.lo or len(self.lo) != len(self.hi):
            raise GraphError(f"bounds must have equal positive dimension: {self.lo}, {self.hi}")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise GraphError(f"empty region: lo {self.lo} exceeds hi {self.hi}")
        if self.adjacency not in ADJACENCIES:
            raise GraphError(f"unknown adjacency {self.adjacency!r}")

    @classmethod
    def parse(cls, text: str, adjacency: str = "cartesian") -> "LatticeRegion":
        """Parse `lo:hi[,lo:hi[,lo:hi]]` with inclusive bounds."""
        lo: List[int] = []
        hi: List[int] = []
        try:
            for axis in text.split(","):
                a, b = axis.split(":")
                lo.append(int(a))
                hi.append(int(b))
        except ValueError as e:
            raise GraphError(f"invalid region {text!r}: expected lo:hi[,lo:hi...]") from e
        return cls(tuple(lo), tuple(hi), adjacency)

    @property
    def dim(self) -> int:
        """Number of coordinates."""
        return len(self.lo)

    @property
    def vertex_count(self) -> int:
        """Number of lattice points."""
        return math.prod(b - a + 1 for a, b in zip(self.lo, self.hi))

    def points(self) -> Iterator[Point]:
        """All lattice points in row-major order."""
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def contains(self, point: Sequence[int]) -> bool:
        """Whether `point` lies in the region."""
        return len(point) == self.dim and all(
            a <= x <= b for a, x, b in zip(self.lo, point, self.hi)
        )

    def __str__(self) -> str:
        return ",".join(f"{a}:{b}" for a, b in zip(self.lo, self.hi))


@dataclass(frozen=True, eq=False)
class Graph:
    """A finite simple graph with payload-labelled, row-major numbered vertices."""

    family: str
    params: Dict[str, Any]
    payloads: Tuple[Point, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    _index: Dict[Point, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.payloads)})

    @property
    def vertex_count(self) -> int:
        """Number of vertices."""
        return len(self.payloads)

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def index_of(self, payload: Sequence[int]) -> int:
        """Vertex id of a payload."""
        try:
            return self._index[tuple(payload)]
        except KeyError:
            raise GraphError(f"unknown vertex {tuple(payload)}") from None

    def has_edge(self, u: int, v: int) -> bool:
        """Whether `u` and `v` are adjacent."""
        return v in self.adjacency[u]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each edge once, as (u, v) with u < v, in vertex order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degrees(self) -> List[int]:
        """Degree of every vertex, by id."""
        return [len(nbrs) for nbrs in self.adjacency]

    def summary(self) -> Dict[str, Any]:
        """Family, parameters and size."""
        return {
            "family": self.family,
            "params": self.params,
            "vertices": self.vertex_count,
            "edges": self.edge_count,
        }


def _freeze(nx_graph: nx.Graph, family: str, params: Dict[str, Any]) -> Graph:
    payloads = tuple(sorted(nx_graph.nodes))
    index = {p: i for i, p in enumerate(payloads)}
    adjacency = tuple(
        tuple(sorted(index[q] for q in nx_graph.neighbors(p) if q != p)) for p in payloads
    )
    graph = Graph(family, params, payloads, adjacency)
    logger.debug(
        "built %s graph %s: %s vertices, %s edges",
        family,
        params,
        graph.vertex_count,
        graph.edge_count,
    )
    return graph


def build_box(region: LatticeRegion) -> Graph:
    """Build the lattice box of `region` under its adjacency rule."""
    axes = [nx.path_graph(range(a, b + 1)) for a, b in zip(region.lo, region.hi)]
    product = _PRODUCTS[region.adjacency]
    nx_graph = nx.relabel_nodes(axes[0], lambda x: (x,))
    for axis in axes[1:]:
        nx_graph = nx.relabel_nodes(product(nx_graph, axis), lambda node: node[0] + (node[1],))
    params = {"region": str(region), "adjacency": region.adjacency}
    return _freeze(nx_graph, "box", params)


def same_tensor_class(point: Sequence[int], base: Sequence[int]) -> bool:
    """Whether `point` lies in the tensor component containing `base`."""
    parity = (point[0] - base[0]) % 2
    return all((x - b) % 2 == parity for x, b in zip(point, base))


def tensor_component(graph: Graph, base: Sequence[int]) -> Graph:
    """Induced subgraph of a tensor box on the component containing `base`.

    Steps of a tensor box change every coordinate by one, so the pairwise
    parity differences of the coordinates never change along a walk.
    """
    if graph.family != "box" or graph.params.get("adjacency") != "tensor":
        raise GraphError(f"tensor_component needs a tensor box, got {graph.family} {graph.params}")
    base = tuple(base)
    graph.index_of(base)
    keep = [i for i, p in enumerate(graph.payloads) if same_tensor_class(p, base)]
    remap = {old: new for new, old in enumerate(keep)}
    adjacency = tuple(
        tuple(remap[v] for v in graph.adjacency[u] if v in remap) for u in keep
    )
    params = dict(graph.params, base=list(base))
    return Graph("component", params, tuple(graph.payloads[i] for i in keep), adjacency)


def build_rook(n: int) -> Graph:
    """K_n x K_n (Cartesian) as an n-by-n board: cells attack along rows and columns."""
    if n < 2:
        raise GraphError(f"rook graph needs n >= 2, got {n}")
    nx_graph = nx.cartesian_product(nx.complete_graph(n), nx.complete_graph(n))
    return _freeze(nx_graph, "rook", {"n": n})


def build_biclique_product(n: int) -> Graph:
    """K_{n,n} x K_{n,n} (Cartesian) as a 2n-by-2n board.

    Inside each K_{n,n} the two sides are the index halves {0..n-1} and {n..2n-1}.
    """
    if n < 1:
        raise GraphError(f"biclique product needs n >= 1, got {n}")
    side = nx.complete_bipartite_graph(n, n)
    return _freeze(nx.cartesian_product(side, side), "biclique", {"n": n})


def build_path(n: int) -> Graph:
    """The path P_n."""
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return _freeze(nx.relabel_nodes(nx.path_graph(n), lambda x: (x,)), "path", {"n": n})


def build_cycle(n: int) -> Graph:
    """The cycle C_n."""
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return _freeze(nx.relabel_nodes(nx.cycle_graph(n), lambda x: (x,)), "cycle", {"n": n})


def from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """A general graph on vertices 0..n-1; used by oracle tests only."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from((i,) for i in range(n))
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
        nx_graph.add_edge((u,), (v,))
    return _freeze(nx_graph, "edges", {"n": n})


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by `vertices`, renumbered in id order."""
    keep = sorted(set(vertices))
    remap = {old: new for new, old in enumerate(keep)}
    adjacency = tuple(
        tuple(remap[v] for v in graph.adjacency[u] if v in remap) for u in keep
    )
    return Graph("induced", dict(graph.params), tuple(graph.payloads[i] for i in keep), adjacency)


def neighbors(graph: Graph, v: int) -> List[int]:
    """Sorted, duplicate-free neighbor ids of vertex `v`."""
    if not 0 <= v < graph.vertex_count:
        raise GraphError(f"unknown vertex id {v}")
    return list(graph.adjacency[v])
