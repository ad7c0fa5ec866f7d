# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Exhaustive search for repetitive paths, and structural checks of colorings.

A path v1..v2k is repetitive when color(v_i) == color(v_{k+i}) for every i,
i.e. when its color word is a square. `find_repetitive_path` enumerates every
simple path of at most 2*k_max vertices from every start vertex by depth-first
search, testing the whole current word after each extension with a rolling
hash and confirming matches symbol by symbol.

Start vertices are independent tasks. With parallelism above one they are
spread over a process pool whose initializer hands each child process the
graph and coloring; on one worker they are passed to the search directly.
Every search owns its stack and hash state.
"""

import logging
import multiprocessing
import time
from collections import defaultdict
from contextlib import closing
from dataclasses import dataclass, field
from typing import Dict, Generator, Iterable, List, Optional, Sequence, Tuple, Union

from nonrep.colorings import ColoredGraph
from nonrep.config import SearchBudget
from nonrep.errors import VerifierError
from nonrep.graphs import Point
from nonrep.hashing import PathHash
from nonrep.tracing import get_current_span, trace_function
from nonrep.words import Word

logger = logging.getLogger(__name__)

PASS = "pass"
WITNESS = "witness"
BUDGET_EXHAUSTED = "budget-exhausted"
STATUSES = (PASS, WITNESS, BUDGET_EXHAUSTED)


@dataclass(frozen=True)
class PathWitness:
    """A repetitive path: 2k vertex ids whose two halves carry the same colors."""

    vertices: Tuple[int, ...]
    k: int


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of re-validating a witness; falsy when the witness is rejected."""

    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one path search.

    `payloads` and `colors` describe the witness path in graph terms (lattice
    points or board cells, palette labels) and are empty without a witness.
    """

    status: str
    nodes_visited: int
    elapsed_ms: int
    budget: SearchBudget
    construction: Dict = field(default_factory=dict)
    witness: Optional[PathWitness] = None
    payloads: Tuple[Point, ...] = ()
    colors: Tuple[str, ...] = ()


@dataclass(frozen=True)
class LazyWalk:
    """A lazy walk of 2k positions (word indices or vertex ids)."""

    positions: Tuple[int, ...]
    k: int

    @property
    def halves(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """First and second half of the walk."""
        return self.positions[: self.k], self.positions[self.k :]


@dataclass(frozen=True)
class EdgeTypeViolation:
    """Ordered edge occurrences with equal colors but different endpoint types."""

    colors: Tuple[str, str]
    occurrences: Tuple[Tuple[int, int, str, str], ...]


@dataclass(frozen=True)
class _StartResult:
    start: int
    path: Optional[Tuple[int, ...]]
    nodes: int
    complete: bool


_Adjacency = Tuple[Tuple[int, ...], ...]

# set by the pool initializer, read only inside pool child processes
_worker_graph: Tuple[_Adjacency, Tuple[int, ...]] = ((), ())


def _init_worker(adjacency: _Adjacency, colors: Tuple[int, ...]) -> None:
    global _worker_graph
    _worker_graph = (adjacency, colors)


def _worker_search(task: Tuple[int, int, int]) -> _StartResult:
    adjacency, colors = _worker_graph
    return _search(adjacency, colors, task)


def _search(
    adjacency: _Adjacency, colors: Sequence[int], task: Tuple[int, int, int]
) -> _StartResult:
    """Shortest, then lexicographically smallest, repetitive path from one start.

    Neighbors are tried in increasing id order, so among paths of equal length
    the first one reached is the lexicographically smallest. Once a witness is
    found only strictly shorter paths are explored. At most `cap` nodes are
    visited, the start included.
    """
    start, k_max, cap = task
    if cap < 1:
        return _StartResult(start, None, 0, False)
    limit = 2 * k_max
    path = [start]
    on_path = {start}
    hashes = PathHash(limit)
    hashes.push(colors[start])
    cursors = [0]
    nodes = 1
    best: Optional[Tuple[int, ...]] = None
    while cursors:
        nbrs = adjacency[path[-1]]
        i = cursors[-1]
        if len(path) < limit:
            while i < len(nbrs) and nbrs[i] in on_path:
                i += 1
        else:
            i = len(nbrs)
        if i == len(nbrs):
            cursors.pop()
            on_path.discard(path.pop())
            hashes.pop()
            continue
        if nodes >= cap:
            return _StartResult(start, best, nodes, False)
        cursors[-1] = i + 1
        v = nbrs[i]
        path.append(v)
        on_path.add(v)
        hashes.push(colors[v])
        cursors.append(0)
        nodes += 1
        if hashes.halves_match():
            half = len(path) // 2
            if all(colors[a] == colors[b] for a, b in zip(path[:half], path[half:])):
                best = tuple(path)
                limit = len(path) - 2
                if limit < 2:
                    break
    return _StartResult(start, best, nodes, True)


def _results(cg: ColoredGraph, budget: SearchBudget) -> Generator[_StartResult, None, None]:
    starts = range(cg.graph.vertex_count)
    workers = min(budget.parallelism, len(starts))
    adjacency, colors = cg.graph.adjacency, cg.colors
    if workers <= 1:
        remaining = budget.max_nodes
        for start in starts:
            result = _search(adjacency, colors, (start, budget.k_max, remaining))
            remaining -= result.nodes
            yield result
        return
    tasks = [(start, budget.k_max, budget.max_nodes) for start in starts]
    logger.debug("searching %s starts on %s workers", len(tasks), workers)
    with multiprocessing.Pool(
        workers, initializer=_init_worker, initargs=(adjacency, colors)
    ) as pool:
        if budget.deterministic:
            yield from pool.imap(_worker_search, tasks)
        else:
            yield from pool.imap_unordered(_worker_search, tasks)


@trace_function
def find_repetitive_path(
    cg: ColoredGraph, budget: SearchBudget, construction: Optional[Dict] = None
) -> VerifyReport:
    """Search `cg` for a repetitive path of at most 2*k_max vertices.

    On one worker each start is capped at what is left of `budget.max_nodes`,
    so the run never visits more than `max_nodes` nodes. On a pool every start
    is capped at `max_nodes` and results are counted against the same cap
    cumulatively. In deterministic mode results are consumed in start order
    and the reported witness is the smallest by (length, start, vertex
    sequence) among the consumed starts, so a run that is not cut short by the
    budget does not depend on the worker count. Otherwise the first witness
    any worker reports wins.
    """
    started = time.monotonic()
    if construction is None:
        construction = cg.spec.echo() if cg.spec is not None else {}
    total = 0
    best: Optional[Tuple[int, ...]] = None
    exhausted = False
    with closing(_results(cg, budget)) as results:
        for result in results:
            total += result.nodes
            if result.path is not None:
                if best is None or (len(result.path), result.path) < (len(best), best):
                    best = result.path
                if not budget.deterministic or len(best) == 2:
                    break
            if not result.complete or total > budget.max_nodes:
                exhausted = True
                break

    if best is not None:
        status = WITNESS
    elif exhausted:
        status = BUDGET_EXHAUSTED
        logger.warning("budget exhausted after %s nodes; no verdict", total)
    else:
        status = PASS
    elapsed = 0 if budget.deterministic else int((time.monotonic() - started) * 1000)

    witness = PathWitness(best, len(best) // 2) if best is not None else None
    payloads: Tuple[Point, ...] = ()
    colors: Tuple[str, ...] = ()
    if witness is not None:
        payloads = tuple(cg.graph.payloads[v] for v in witness.vertices)
        colors = tuple(cg.label(v) for v in witness.vertices)
        logger.info("witness k=%s: %s colored %s", witness.k, payloads, colors)
    logger.info("verify %s: %s nodes visited", status, total)

    span = get_current_span()
    if span:
        span.set_attribute("nonrep.status", status)
        span.set_attribute("nonrep.nodes_visited", total)
    return VerifyReport(status, total, elapsed, budget, construction, witness, payloads, colors)


def validate_witness(cg: ColoredGraph, witness: PathWitness) -> WitnessCheck:
    """Re-check a witness from scratch, independently of the search."""
    vertices = witness.vertices
    if witness.k < 1 or len(vertices) != 2 * witness.k:
        return WitnessCheck(False, "wrong-length")
    if any(not 0 <= v < cg.graph.vertex_count for v in vertices):
        return WitnessCheck(False, "unknown-vertex")
    if len(set(vertices)) != len(vertices):
        return WitnessCheck(False, "repeated-vertex")
    if any(not cg.graph.has_edge(u, v) for u, v in zip(vertices, vertices[1:])):
        return WitnessCheck(False, "not-adjacent")
    k = witness.k
    if any(cg.colors[vertices[i]] != cg.colors[vertices[k + i]] for i in range(k)):
        return WitnessCheck(False, "colors-differ")
    return WitnessCheck(True, "ok")


def _rigidity_from(
    p: List[int],
    q: List[int],
    steps: Sequence[Tuple[int, ...]],
    reach: Sequence[frozenset],
    colors: Sequence[int],
    k_max: int,
    found: List[LazyWalk],
    limit: Optional[int],
) -> bool:
    # p and q advance in lockstep with matching colors; q[0] must follow p[-1]
    if q[0] in reach[p[-1]] and p != q:
        found.append(LazyWalk(tuple(p) + tuple(q), len(p)))
        if limit is not None and len(found) >= limit:
            return True
    if len(p) == k_max:
        return False
    for a in steps[p[-1]]:
        for b in steps[q[-1]]:
            if colors[a] != colors[b]:
                continue
            p.append(a)
            q.append(b)
            stop = _rigidity_from(p, q, steps, reach, colors, k_max, found, limit)
            p.pop()
            q.pop()
            if stop:
                return True
    return False


@trace_function
def check_lazy_walk_rigidity(
    source: Union[Word, ColoredGraph], k_max: int, limit: Optional[int] = None
) -> List[LazyWalk]:
    """Repetitive lazy walks whose two halves visit different positions.

    A lazy walk may stay in place at any step. For a word the positions are
    indices and steps move by -1, 0 or +1; for a colored graph steps follow an
    edge or stay. A walk of 2k positions is repetitive when both halves carry
    the same colors. Walks whose halves are the same position sequence are
    expected; any other repetitive walk is returned as a counterexample.
    Stops after `limit` counterexamples when given.
    """
    if k_max < 1:
        raise VerifierError(f"k_max must be at least 1, got {k_max}")
    if isinstance(source, Word):
        size = len(source)
        if size < 2 * k_max + 1:
            raise VerifierError(f"window of {size} symbols is too small for k_max={k_max}")
        colors: Sequence[int] = source.symbols
        steps = tuple(
            tuple(j for j in (i - 1, i, i + 1) if 0 <= j < size) for i in range(size)
        )
    else:
        colors = source.colors
        steps = tuple((v,) + nbrs for v, nbrs in enumerate(source.graph.adjacency))
    reach = tuple(frozenset(s) for s in steps)

    by_color: Dict[int, List[int]] = defaultdict(list)
    for position, color in enumerate(colors):
        by_color[color].append(position)

    found: List[LazyWalk] = []
    for p0 in range(len(colors)):
        for q0 in by_color[colors[p0]]:
            if _rigidity_from([p0], [q0], steps, reach, colors, k_max, found, limit):
                return found
    if found:
        logger.info("lazy-walk rigidity: %s counterexamples up to k=%s", len(found), k_max)
    return found


def _ordered_edges(cg: ColoredGraph) -> Iterable[Tuple[int, int]]:
    for u, v in cg.graph.edges():
        yield u, v
        yield v, u


def check_edge_pair_types(cg: ColoredGraph) -> List[EdgeTypeViolation]:
    """Ordered edges sharing a color pair must share their endpoint type pair."""
    if cg.vertex_types is None:
        raise VerifierError("coloring carries no vertex types")
    types = cg.vertex_types
    groups: Dict[Tuple[int, int], List[Tuple[int, int]]] = defaultdict(list)
    for u, v in _ordered_edges(cg):
        groups[(cg.colors[u], cg.colors[v])].append((u, v))
    violations = []
    for (cu, cv), edges in sorted(groups.items()):
        if len({(types[u], types[v]) for u, v in edges}) > 1:
            occurrences = tuple((u, v, types[u], types[v]) for u, v in sorted(edges))
            violations.append(
                EdgeTypeViolation((cg.palette[cu], cg.palette[cv]), occurrences)
            )
    return violations


def check_zero_alternation(cg: ColoredGraph) -> bool:
    """Whether every edge has exactly one endpoint colored "0"."""
    zero = [cg.label(v) == "0" for v in range(cg.graph.vertex_count)]
    return all(zero[u] != zero[v] for u, v in cg.graph.edges())
