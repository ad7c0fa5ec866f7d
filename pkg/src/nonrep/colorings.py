# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Constructions of non-repetitive colorings for grids, boards and bicliques.

Lattice constructions are pure color functions of a point. Each one reads one
or more "channels": an integer index into T or T*, computed from the point and
shifted by that channel's offset so that every index evaluated inside the
target region is non-negative. Offsets are part of the construction spec and
are echoed in every report.

Color labels are strings:

    diagonal        T*(X-Y)                                  "d"
    grid12-base     T*1 on even points, T*2 on odd points    "d" / "w"
    grid12          as above, odd points split by X parity   "d" / "w1" / "w2"
    strong16        (T*1(X), T*2(Y))                         "dw"
    bad-product     (T(X), T*(Y))                            "ad"
    strong(n)       (T*1(x1), ..., T*n(xn))                  "dwsh"
    tensor(n)       odd x_n: T* letter and split bits        "d/0"
                    even x_n: product over the first n-1     "d1b2"
    cart3d28        odd plane: T* letter and (x1-x2) mod 3   "d/2"
                    even plane: two projected coordinates    "d3a4"
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from nonrep.errors import ColoringError
from nonrep.graphs import (
    Graph,
    LatticeRegion,
    Point,
    build_biclique_product,
    build_box,
    build_rook,
    same_tensor_class,
    tensor_component,
)
from nonrep.tracing import trace_function
from nonrep.words import THUE_ALPHABET, THUE_STAR_ALPHABET, generate_thue, generate_thue_star

logger = logging.getLogger(__name__)

LATTICE_KINDS = (
    "diagonal",
    "grid12-base",
    "grid12",
    "strong16",
    "bad-product",
    "strong",
    "tensor",
    "cart3d28",
)
BOARD_KINDS = ("rook", "biclique")
KINDS = LATTICE_KINDS + BOARD_KINDS

# per-axis alphabets of product colorings; the T* inserted letter is always last
AXIS_ALPHABETS = (
    THUE_STAR_ALPHABET,
    ("x", "y", "z", "w"),
    ("p", "q", "r", "s"),
    ("e", "f", "g", "h"),
)

_words: Dict[str, Tuple[int, ...]] = {"thue": (), "thue-star": ()}


def _symbol(word: str, index: int) -> int:
    """Symbol id of T ("thue") or T* ("thue-star") at a non-negative index."""
    if index < 0:
        raise ColoringError(f"negative {word} index {index} after offset")
    cached = _words[word]
    if index >= len(cached):
        size = max(256, 2 * (index + 1))
        gen = generate_thue if word == "thue" else generate_thue_star
        cached = gen(size).symbols
        _words[word] = cached
    return cached[index]


def _star(index: int, alphabet: Sequence[str] = THUE_STAR_ALPHABET) -> str:
    return alphabet[_symbol("thue-star", index)]


@dataclass(frozen=True)
class _Lattice:
    dim: Optional[int]
    adjacency: str
    channels: Callable[[int], int]
    indices: Callable[[Point], Iterator[Tuple[int, int]]]
    bound: Callable[[int], int]


def _diagonal_indices(p: Point) -> Iterator[Tuple[int, int]]:
    yield 0, p[0] - p[1]


def _grid12_indices(p: Point) -> Iterator[Tuple[int, int]]:
    x, y = p
    if (x + y) % 2 == 0:
        yield 0, (x - y) // 2
    else:
        yield 1, (x + y - 1) // 2


def _axis_indices(p: Point) -> Iterator[Tuple[int, int]]:
    yield from enumerate(p)


def _tensor_indices(p: Point) -> Iterator[Tuple[int, int]]:
    if p[-1] % 2:
        yield 0, (p[-1] - 1) // 2
    else:
        for axis, x in enumerate(p[:-1]):
            yield axis + 1, x


def _cart3d_indices(p: Point) -> Iterator[Tuple[int, int]]:
    level = sum(p)
    if level % 2:
        yield 0, (level - 1) // 2
    else:
        yield 1, p[0] - level // 2
        yield 2, -p[2]


_LATTICES: Dict[str, _Lattice] = {
    "diagonal": _Lattice(2, "cartesian", lambda n: 1, _diagonal_indices, lambda n: 4),
    "grid12-base": _Lattice(2, "cartesian", lambda n: 2, _grid12_indices, lambda n: 8),
    "grid12": _Lattice(2, "cartesian", lambda n: 2, _grid12_indices, lambda n: 12),
    "strong16": _Lattice(2, "strong", lambda n: 2, _axis_indices, lambda n: 16),
    "bad-product": _Lattice(2, "strong", lambda n: 2, _axis_indices, lambda n: 12),
    "strong": _Lattice(None, "strong", lambda n: n, _axis_indices, lambda n: 4**n),
    "tensor": _Lattice(
        None, "tensor", lambda n: n, _tensor_indices, lambda n: 4 ** (n - 1) + 4 * 2 ** (n - 1)
    ),
    "cart3d28": _Lattice(3, "cartesian", lambda n: 3, _cart3d_indices, lambda n: 28),
}


@dataclass(frozen=True)
class ConstructionSpec:
    """Which coloring to build, where, and with which word offsets.

    `n` is the dimension for `strong` and `tensor` (defaults to the region's)
    and the board size for `rook` and `biclique`. `offsets` left as None are
    computed as the smallest shifts keeping every word index non-negative.
    `base` picks the tensor component; it defaults to the region's low corner.
    """

    kind: str
    region: Optional[LatticeRegion] = None
    n: Optional[int] = None
    offsets: Optional[Tuple[int, ...]] = None
    base: Optional[Point] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ColoringError(f"unknown construction {self.kind!r}; expected one of {KINDS}")
        if self.kind in BOARD_KINDS:
            self._check_board()
        else:
            self._check_lattice()

    def _check_board(self):
        if self.n is None:
            raise ColoringError(f"{self.kind} needs n")
        if self.kind == "rook" and (self.n < 4 or self.n % 2):
            raise ColoringError(f"rook construction needs even n >= 4, got {self.n}")
        if self.kind == "biclique" and self.n < 1:
            raise ColoringError(f"biclique construction needs n >= 1, got {self.n}")

    def _check_lattice(self):
        if self.region is None:
            raise ColoringError(f"{self.kind} needs a region")
        lattice = _LATTICES[self.kind]
        if self.n is None:
            object.__setattr__(self, "n", self.region.dim)
        expected = lattice.dim or self.n
        if self.region.dim != expected or self.n != expected:
            raise ColoringError(
                f"{self.kind} needs a {expected}-dimensional region, got {self.region.dim}"
            )
        if self.kind == "tensor" and self.n < 2:
            raise ColoringError("tensor construction needs n >= 2")
        if self.kind == "strong" and self.n > len(AXIS_ALPHABETS):
            raise ColoringError(f"strong construction supports n <= {len(AXIS_ALPHABETS)}")
        if self.offsets is not None and len(self.offsets) != self.channels:
            raise ColoringError(
                f"{self.kind} takes {self.channels} offsets, got {len(self.offsets)}"
            )
        if self.kind == "tensor":
            base = tuple(self.base) if self.base is not None else self.region.lo
            if not self.region.contains(base):
                raise ColoringError(f"tensor base {base} outside region {self.region}")
            object.__setattr__(self, "base", base)

    @property
    def is_lattice(self) -> bool:
        """Whether this is a lattice construction rather than a board."""
        return self.kind in LATTICE_KINDS

    @property
    def channels(self) -> int:
        """Number of word channels, and so of offsets."""
        return _LATTICES[self.kind].channels(self.n) if self.is_lattice else 0

    @property
    def adjacency(self) -> Optional[str]:
        """Product adjacency of the box a lattice construction colors."""
        return _LATTICES[self.kind].adjacency if self.is_lattice else None

    @property
    def palette_bound(self) -> int:
        """Largest palette the construction may use."""
        n = self.n or 0
        if self.kind == "rook":
            return n * n // 2
        if self.kind == "biclique":
            return 1 + n * n + (n * n // 2 if n >= 4 and n % 2 == 0 else n * n)
        return _LATTICES[self.kind].bound(n)

    def points(self) -> Iterator[Point]:
        """Lattice points the construction colors, in row-major order."""
        if self.region is None:
            return iter(())
        points = self.region.points()
        if self.kind == "tensor":
            return (p for p in points if same_tensor_class(p, self.base))
        return points

    def resolved(self) -> "ConstructionSpec":
        """This spec with offsets filled in from its region when they were left out."""
        if not self.is_lattice or self.offsets is not None:
            return self
        return ConstructionSpec(self.kind, self.region, self.n, auto_offsets(self), self.base)

    def echo(self) -> Dict[str, Any]:
        """The construction as recorded in reports and coloring files."""
        out: Dict[str, Any] = {"kind": self.kind, "n": self.n}
        if self.region is not None:
            out["region"] = str(self.region)
            out["adjacency"] = self.adjacency
        out["offsets"] = list(self.offsets) if self.offsets is not None else None
        if self.base is not None:
            out["base"] = list(self.base)
        return out


def auto_offsets(spec: ConstructionSpec) -> Tuple[int, ...]:
    """Smallest per-channel shifts making every word index in the region non-negative."""
    lowest = [0] * spec.channels
    indices = _LATTICES[spec.kind].indices
    for p in spec.points():
        for channel, index in indices(p):
            if index < lowest[channel]:
                lowest[channel] = index
    return tuple(-low for low in lowest)


def _offsets(spec: ConstructionSpec) -> Tuple[int, ...]:
    return spec.offsets if spec.offsets is not None else (0,) * spec.channels


def color_diagonal(p: Point, spec: ConstructionSpec) -> str:
    """T*(X - Y): constant along every diagonal X - Y = const."""
    (off,) = _offsets(spec)
    return _star(p[0] - p[1] + off)


def color_grid12_base(p: Point, spec: ConstructionSpec) -> str:
    """The unrefined coloring: lines X-Y=2s get T*1(s), lines X+Y=2t+1 get T*2(t)."""
    off_s, off_t = _offsets(spec)
    x, y = p
    if (x + y) % 2 == 0:
        return _star((x - y) // 2 + off_s, AXIS_ALPHABETS[0])
    return _star((x + y - 1) // 2 + off_t, AXIS_ALPHABETS[1])


def color_grid12(p: Point, spec: ConstructionSpec) -> str:
    """The 12-coloring of the grid: odd points split by the parity of X."""
    label = color_grid12_base(p, spec)
    if (p[0] + p[1]) % 2 == 0:
        return label
    return label + ("1" if p[0] % 2 else "2")


def color_strong(p: Point, spec: ConstructionSpec) -> str:
    """Product of n copies of T* over disjoint alphabets, one per axis."""
    offsets = _offsets(spec)
    return "".join(
        _star(x + off, AXIS_ALPHABETS[axis]) for axis, (x, off) in enumerate(zip(p, offsets))
    )


def color_strong16(p: Point, spec: ConstructionSpec) -> str:
    """(T*1(X), T*2(Y)): the 16-coloring of the strong grid."""
    return color_strong(p, spec)


def color_bad_product(p: Point, spec: ConstructionSpec) -> str:
    """(T(X), T*(Y)): square-free 3-coloring times palindrome-free 4-coloring."""
    off_x, off_y = _offsets(spec)
    if p[0] + off_x < 0:
        raise ColoringError(f"negative thue index {p[0] + off_x} after offset")
    return THUE_ALPHABET[_symbol("thue", p[0] + off_x)] + _star(p[1] + off_y)


def _split(x: int) -> int:
    # h(i-1) != h(i+1) for every i
    return (x // 2) % 2


def color_tensor(p: Point, spec: ConstructionSpec) -> str:
    """Layered coloring of a tensor component.

    Odd layers x_n = 2l+1 are constant T*(l), split by floor(x_i/2) mod 2 of the
    other coordinates. Even layers carry the product coloring of the first n-1
    coordinates and ignore x_n.
    """
    if spec.base is not None and not same_tensor_class(p, spec.base):
        raise ColoringError(f"point {p} outside the tensor component of {spec.base}")
    offsets = _offsets(spec)
    if p[-1] % 2:
        bits = "".join(str(_split(x)) for x in p[:-1])
        return f"{_star((p[-1] - 1) // 2 + offsets[0])}/{bits}"
    return "".join(
        f"{_star(x + off)}{axis + 1}" for axis, (x, off) in enumerate(zip(p[:-1], offsets[1:]))
    )


def color_cart3d28(p: Point, spec: ConstructionSpec) -> str:
    """The 28-coloring of the 3D grid by planes x1+x2+x3 = level.

    Odd planes take T*((level-1)/2) split by (x1-x2) mod 3. Even planes project
    along (1,1,0) to u = x1 - level/2, w = -x3 and take (T*3(u), T*4(w)).
    """
    off_level, off_u, off_w = _offsets(spec)
    level = sum(p)
    if level % 2:
        return f"{_star((level - 1) // 2 + off_level)}/{(p[0] - p[1]) % 3}"
    u = p[0] - level // 2
    w = -p[2]
    return f"{_star(u + off_u)}3{_star(w + off_w)}4"


_COLOR_FUNCTIONS: Dict[str, Callable[[Point, ConstructionSpec], str]] = {
    "diagonal": color_diagonal,
    "grid12-base": color_grid12_base,
    "grid12": color_grid12,
    "strong16": color_strong16,
    "bad-product": color_bad_product,
    "strong": color_strong,
    "tensor": color_tensor,
    "cart3d28": color_cart3d28,
}


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    """A graph with a total vertex -> color id map and its palette labels."""

    graph: Graph
    colors: Tuple[int, ...]
    palette: Tuple[str, ...]
    spec: Optional[ConstructionSpec] = None
    vertex_types: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        if len(self.colors) != self.graph.vertex_count:
            raise ColoringError(
                f"{len(self.colors)} colors for {self.graph.vertex_count} vertices"
            )
        if any(not 0 <= c < len(self.palette) for c in self.colors):
            raise ColoringError("color id outside palette")
        if self.vertex_types is not None and len(self.vertex_types) != len(self.colors):
            raise ColoringError("vertex types do not cover every vertex")

    @classmethod
    def from_labels(
        cls,
        graph: Graph,
        labels: Sequence[str],
        spec: Optional[ConstructionSpec] = None,
        vertex_types: Optional[Sequence[str]] = None,
    ) -> "ColoredGraph":
        """Number colors by first appearance in vertex order."""
        ids: Dict[str, int] = {}
        colors = tuple(ids.setdefault(label, len(ids)) for label in labels)
        types = tuple(vertex_types) if vertex_types is not None else None
        return cls(graph, colors, tuple(ids), spec, types)

    def label(self, v: int) -> str:
        """Palette label of vertex `v`."""
        return self.palette[self.colors[v]]

    @property
    def palette_size(self) -> int:
        """Number of palette entries."""
        return len(self.palette)

    def with_colors(self, colors: Sequence[int]) -> "ColoredGraph":
        """A copy with a different color map over the same palette; for corruption checks."""
        return ColoredGraph(self.graph, tuple(colors), self.palette, self.spec, self.vertex_types)


def _rook_color(i: int, j: int, n: int) -> int:
    m = n // 2
    if j < m:
        return i * m + j
    j -= m
    if i % 2:
        # yellow: copy of the left half-row directly above
        return (i - 1) * m + j
    # blue: the left half-row above (wrapping), shifted right by one
    return ((i - 1) % n) * m + (j - 1) % m


def _rook_type(i: int, j: int, n: int) -> str:
    left = j < n // 2
    return "yellow" if (i % 2 == 0) == left else "blue"


def color_rook(n: int) -> ColoredGraph:
    """The n^2/2-coloring of K_n x K_n for even n >= 4.

    The left half is colored injectively row by row. Each left half-row is
    copied into the right half of the row below; blue half-rows are copied
    with a one-step cyclic shift, and the last row wraps onto the first.
    Every color is used exactly twice.
    """
    spec = ConstructionSpec("rook", n=n)
    graph = build_rook(n)
    colors = tuple(_rook_color(i, j, n) for i, j in graph.payloads)
    types = tuple(_rook_type(i, j, n) for i, j in graph.payloads)
    palette = tuple(str(c) for c in range(n * n // 2))
    logger.info("rook coloring n=%s: %s colors", n, len(palette))
    return ColoredGraph(graph, colors, palette, spec, types)


def _quadrant(i: int, j: int, n: int) -> str:
    return ("U" if i < n else "L") + ("L" if j < n else "R")


def color_biclique(n: int) -> ColoredGraph:
    """The coloring of K_{n,n} x K_{n,n}.

    UL and LR get color 0, LL gets n^2 fresh colors, UR gets the rook pattern
    on a fresh palette when n is even and at least 4, else n^2 fresh colors.
    """
    spec = ConstructionSpec("biclique", n=n)
    graph = build_biclique_product(n)
    patterned = n >= 4 and n % 2 == 0
    if not patterned:
        logger.warning("biclique n=%s: no rook pattern for this n, using fresh colors", n)
    colors: List[int] = []
    for i, j in graph.payloads:
        quadrant = _quadrant(i, j, n)
        if quadrant in ("UL", "LR"):
            colors.append(0)
        elif quadrant == "LL":
            colors.append(1 + (i - n) * n + j)
        elif patterned:
            colors.append(1 + n * n + _rook_color(i, j - n, n))
        else:
            colors.append(1 + n * n + i * n + (j - n))
    palette = tuple(str(c) for c in range(spec.palette_bound))
    types = tuple(_quadrant(i, j, n) for i, j in graph.payloads)
    logger.info("biclique coloring n=%s: %s colors", n, len(palette))
    return ColoredGraph(graph, tuple(colors), palette, spec, types)


def build_graph(spec: ConstructionSpec) -> Graph:
    """The graph a construction colors."""
    if spec.kind == "rook":
        return build_rook(spec.n)
    if spec.kind == "biclique":
        return build_biclique_product(spec.n)
    region = LatticeRegion(spec.region.lo, spec.region.hi, spec.adjacency)
    graph = build_box(region)
    if spec.kind == "tensor":
        return tensor_component(graph, spec.base)
    return graph


@trace_function
def colorize(spec: ConstructionSpec) -> ColoredGraph:
    """Materialize a construction on its graph."""
    if spec.kind == "rook":
        return color_rook(spec.n)
    if spec.kind == "biclique":
        return color_biclique(spec.n)
    spec = spec.resolved()
    graph = build_graph(spec)
    color = _COLOR_FUNCTIONS[spec.kind]
    colored = ColoredGraph.from_labels(graph, [color(p, spec) for p in graph.payloads], spec)
    if colored.palette_size > spec.palette_bound:
        raise ColoringError(
            f"{spec.kind} used {colored.palette_size} colors, bound is {spec.palette_bound}"
        )
    logger.info(
        "%s on %s: %s vertices, %s colors, offsets %s",
        spec.kind,
        spec.region,
        graph.vertex_count,
        colored.palette_size,
        spec.offsets,
    )
    return colored
