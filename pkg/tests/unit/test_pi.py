# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

import itertools
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from nonrep.colorings import ColoredGraph
from nonrep.config import SearchBudget
from nonrep.errors import VerifierError
from nonrep.graphs import (
    LatticeRegion,
    build_box,
    build_cycle,
    build_path,
    from_edges,
    induced_subgraph,
)
from nonrep.pi import exact_pi
from nonrep.verifier import PASS, find_repetitive_path


def is_nonrepetitive(graph, certificate):
    cg = ColoredGraph.from_labels(graph, [str(c) for c in certificate])
    k_max = max(1, graph.vertex_count // 2)
    budget = SearchBudget(k_max=k_max, parallelism=1, deterministic=True)
    return find_repetitive_path(cg, budget).status == PASS


class TestExactPi(unittest.TestCase):
    def test_paths(self):
        self.assertEqual(exact_pi(build_path(1), 4).value, 1)
        self.assertEqual(exact_pi(build_path(2), 4).value, 2)
        self.assertEqual(exact_pi(build_path(3), 4).value, 2)
        self.assertEqual(exact_pi(build_path(4), 4).value, 3)

    def test_long_path_needs_three(self):
        # every binary word of length 4 contains a square
        self.assertEqual(exact_pi(build_path(7), 4).value, 3)

    def test_cycles(self):
        self.assertEqual(exact_pi(build_cycle(4), 5).value, 3)
        self.assertEqual(exact_pi(build_cycle(3), 5).value, 3)
        self.assertEqual(exact_pi(build_cycle(5), 5).value, 4)

    def test_certificates_are_nonrepetitive(self):
        for graph in (build_path(6), build_cycle(5), build_box(LatticeRegion((0, 0), (1, 2)))):
            result = exact_pi(graph, 5)
            self.assertEqual(len(result.certificate), graph.vertex_count)
            self.assertEqual(set(result.certificate), set(range(result.value)))
            self.assertTrue(is_nonrepetitive(graph, result.certificate))

    def test_minimality_against_brute_force(self):
        graph = build_cycle(5)
        result = exact_pi(graph, 5)
        for colors in itertools.product(range(result.value - 1), repeat=graph.vertex_count):
            self.assertFalse(is_nonrepetitive(graph, colors))

    def test_exceeds(self):
        result = exact_pi(build_path(4), 2)
        self.assertTrue(result.exceeds)
        self.assertIsNone(result.value)
        self.assertIsNone(result.certificate)
        self.assertEqual(result.max_colors, 2)

    def test_disconnected_graph(self):
        graph = from_edges(5, [(0, 1), (2, 3)])
        self.assertEqual(exact_pi(graph, 3).value, 2)

    def test_max_colors(self):
        with self.assertRaises(VerifierError):
            exact_pi(build_path(2), 0)


SMALL_GRAPHS = (
    build_cycle(5),
    build_path(7),
    build_box(LatticeRegion((0, 0), (1, 2))),
    from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]),
)


class TestMonotonicity(unittest.TestCase):
    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_induced_subgraphs_need_no_more_colors(self, data):
        graph = data.draw(st.sampled_from(SMALL_GRAPHS))
        keep = data.draw(st.sets(st.integers(0, graph.vertex_count - 1), min_size=1))
        sub = induced_subgraph(graph, keep)
        bound = graph.vertex_count
        self.assertLessEqual(exact_pi(sub, bound).value, exact_pi(graph, bound).value)
