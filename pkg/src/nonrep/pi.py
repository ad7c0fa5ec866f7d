# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Exact Thue number of tiny graphs by backtracking."""

import logging
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from nonrep.errors import VerifierError
from nonrep.graphs import Graph
from nonrep.tracing import get_current_span, trace_function

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PiResult:
    """Smallest non-repetitive palette within `max_colors`, or `exceeds`.

    `certificate` maps every vertex id to a color in 0..value-1.
    """

    value: Optional[int]
    certificate: Optional[Tuple[int, ...]]
    max_colors: int

    @property
    def exceeds(self) -> bool:
        """Whether no coloring exists within the cap."""
        return self.value is None


def _search_order(graph: Graph) -> List[int]:
    # every vertex after the first of its component has an earlier neighbor
    order: List[int] = []
    seen = [False] * graph.vertex_count
    for root in range(graph.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in graph.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    return order


def _arms(graph: Graph, colored: Sequence[bool], v: int) -> List[Tuple[int, ...]]:
    """Every simple path starting at `v` inside the colored vertices, `(v,)` included."""
    arms: List[Tuple[int, ...]] = []
    stack = [(v,)]
    while stack:
        arm = stack.pop()
        arms.append(arm)
        for w in graph.adjacency[arm[-1]]:
            if colored[w] and w not in arm:
                stack.append(arm + (w,))
    return arms


def _is_square(word: Sequence[int]) -> bool:
    half = len(word) // 2
    return len(word) % 2 == 0 and word[:half] == word[half:]


def _creates_repetition(graph: Graph, colors: List[int], colored: List[bool], v: int) -> bool:
    """Whether some path through the newest vertex `v` is now repetitive."""
    arms = _arms(graph, colored, v)
    for left in arms:
        used = set(left)
        for right in arms:
            if (len(left) + len(right)) % 2 == 0 or used.intersection(right[1:]):
                continue
            path = left[::-1] + right[1:]
            if _is_square([colors[u] for u in path]):
                return True
    return False


def _colorable(graph: Graph, order: List[int], palette: int) -> Optional[Tuple[int, ...]]:
    n = graph.vertex_count
    colors = [-1] * n
    colored = [False] * n

    def place(depth: int, used: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        colored[v] = True
        # canonical introduction: a fresh color is always the next unused one
        for c in range(min(used + 1, palette)):
            colors[v] = c
            if not _creates_repetition(graph, colors, colored, v):
                if place(depth + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        colored[v] = False
        return False

    if place(0, 0):
        return tuple(colors)
    return None


@trace_function
def exact_pi(graph: Graph, max_colors: int) -> PiResult:
    """Smallest c <= max_colors admitting a coloring with no repetitive path."""
    if max_colors < 1:
        raise VerifierError(f"max_colors must be at least 1, got {max_colors}")
    if graph.vertex_count > 16:
        logger.warning("exact_pi on %s vertices may not finish", graph.vertex_count)
    order = _search_order(graph)
    result = PiResult(None, None, max_colors)
    for palette in range(1, max_colors + 1):
        certificate = _colorable(graph, order, palette)
        if certificate is not None:
            result = PiResult(palette, certificate, max_colors)
            break
        logger.debug("no non-repetitive %s-coloring", palette)
    if result.exceeds:
        logger.info("pi exceeds %s", max_colors)
    else:
        logger.info("pi = %s, certificate %s", result.value, result.certificate)
    span = get_current_span()
    if span:
        span.set_attribute("nonrep.pi", result.value or -1)
    return result
