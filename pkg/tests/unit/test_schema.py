# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

import json
import unittest

from nonrep.colorings import ConstructionSpec, color_rook, colorize
from nonrep.config import SearchBudget
from nonrep.errors import DataValidationError
from nonrep.graphs import LatticeRegion
from nonrep.schema import (
    ColoredGraphFile,
    GraphSummaryFile,
    VerifyReportFile,
    WordCheckFile,
    WordFile,
    coloring_csv,
    edges_csv,
    load_word,
)
from nonrep.verifier import find_repetitive_path, validate_witness
from nonrep.words import generate_thue_star


def lattice(kind, region):
    return colorize(ConstructionSpec(kind, LatticeRegion.parse(region)))


class TestWordFiles(unittest.TestCase):
    def test_json(self):
        text = WordFile.from_word(generate_thue_star(6)).dump()
        expected = {"alphabet": list("abcd"), "symbols": [3, 1, 2, 3, 0, 2]}
        self.assertEqual(json.loads(text), expected)
        self.assertEqual(str(load_word(text)), "dbcdac")

    def test_text(self):
        self.assertEqual(str(load_word("abcab\n")), "abcab")

    def test_text_window_reads_as_four_letter_word(self):
        word = load_word("dbcbd")
        self.assertEqual(word.alphabet, ("a", "b", "c", "d"))
        self.assertEqual(word.symbols, (3, 1, 2, 1, 3))
        self.assertEqual(load_word("abcab").alphabet, ("a", "b", "c"))
        self.assertEqual(load_word("dbd", ["b", "d", "x"]).alphabet, ("b", "d", "x"))

    def test_invalid(self):
        for text in ('{"alphabet": ["a"], "symbols": [1]}', '{"alphabet": ["a"]', "{}"):
            with self.assertRaises(DataValidationError, msg=text):
                load_word(text)


class TestColoredGraphFile(unittest.TestCase):
    def test_lattice_reload(self):
        cg = lattice("grid12", "0:5,0:5")
        loaded = ColoredGraphFile.load(ColoredGraphFile.from_colored(cg).dump()).to_colored()
        self.assertEqual(loaded.colors, cg.colors)
        self.assertEqual(loaded.palette, cg.palette)
        self.assertEqual(loaded.spec, cg.spec)
        self.assertEqual(loaded.graph.adjacency, cg.graph.adjacency)

    def test_board_reload_keeps_types(self):
        cg = color_rook(4)
        loaded = ColoredGraphFile.load(ColoredGraphFile.from_colored(cg).dump()).to_colored()
        self.assertEqual(loaded.vertex_types, cg.vertex_types)

    def test_file_layout(self):
        data = json.loads(ColoredGraphFile.from_colored(lattice("diagonal", "0:1,0:1")).dump())
        self.assertEqual(list(data), ["construction", "offsets", "palette", "cells"])
        self.assertEqual(data["offsets"], [1])
        self.assertEqual(data["cells"][0][:2], [0, 0])

    def test_missing_and_duplicate_cells(self):
        data = json.loads(ColoredGraphFile.from_colored(lattice("diagonal", "0:1,0:1")).dump())
        dropped = dict(data, cells=data["cells"][1:])
        doubled = dict(data, cells=data["cells"] + data["cells"][:1])
        outside = dict(data, cells=data["cells"][1:] + [[9, 9, 0]])
        for broken in (dropped, doubled, outside):
            with self.assertRaises(DataValidationError):
                ColoredGraphFile.load(json.dumps(broken)).to_colored()

    def test_bad_construction(self):
        data = json.loads(ColoredGraphFile.from_colored(lattice("diagonal", "0:1,0:1")).dump())
        data["construction"]["kind"] = "hexagonal"
        with self.assertRaises(DataValidationError):
            ColoredGraphFile.load(json.dumps(data)).to_colored()


class TestCsv(unittest.TestCase):
    def test_coloring_csv(self):
        rows = coloring_csv(lattice("grid12", "0:1,0:1")).splitlines()
        self.assertEqual(rows[0], "x,y,color")
        self.assertEqual(len(rows), 5)
        self.assertTrue(rows[1].startswith("0,0,"))

    def test_three_dimensional_header(self):
        rows = coloring_csv(lattice("cart3d28", "0:1,0:1,0:1")).splitlines()
        self.assertEqual(rows[0], "x,y,z,color")

    def test_edges_csv(self):
        rows = edges_csv(lattice("diagonal", "0:1,0:1")).splitlines()
        self.assertEqual(rows, ["u,v", "0,1", "0,2", "1,3", "2,3"])


class TestReports(unittest.TestCase):
    def test_witness_report(self):
        cg = lattice("grid12-base", "0:7,0:7")
        report = find_repetitive_path(
            cg, SearchBudget(k_max=2, parallelism=1, deterministic=True)
        )
        text = VerifyReportFile.from_report(report).dump()
        data = json.loads(text)
        self.assertEqual(data["status"], "witness")
        self.assertEqual(data["budget"], {"maxLen": 4, "maxNodes": 10**9, "parallelism": 1})
        self.assertEqual(data["elapsedMs"], 0)
        self.assertEqual(data["witness"]["vertices"], [[0, 0], [0, 1], [1, 1], [1, 0]])
        self.assertEqual(data["witness"]["colors"], ["d", "w", "d", "w"])

        loaded = VerifyReportFile.load(text)
        self.assertTrue(validate_witness(cg, loaded.path_witness(cg)))
        self.assertNotIn("parallelism", loaded.comparable()["budget"])

    def test_pass_report_has_no_witness(self):
        cg = lattice("grid12", "0:3,0:3")
        report = find_repetitive_path(cg, SearchBudget(k_max=2, parallelism=1))
        data = json.loads(VerifyReportFile.from_report(report).dump())
        self.assertEqual(data["status"], "pass")
        self.assertNotIn("witness", data)

    def test_status_and_witness_agree(self):
        base = {
            "construction": {},
            "budget": {"maxLen": 4, "maxNodes": 10, "parallelism": 1},
            "nodesVisited": 1,
            "elapsedMs": 0,
        }
        for data in (dict(base, status="witness"), dict(base, status="maybe")):
            with self.assertRaises(DataValidationError):
                VerifyReportFile.load(json.dumps(data))

    def test_graph_summary(self):
        data = json.loads(GraphSummaryFile.from_colored(color_rook(4)).dump())
        self.assertEqual(data["family"], "rook")
        self.assertEqual(data["vertices"], 16)
        self.assertEqual(data["edges"], 48)
        self.assertEqual(data["paletteSize"], 8)
        self.assertEqual(data["maxDegree"], 6)

    def test_word_check_aliases(self):
        data = json.loads(
            WordCheckFile(
                length=4, alphabet=["a"], k_max=1, counterexamples=0, first_counterexample=None
            ).dump()
        )
        self.assertEqual(data, {"length": 4, "alphabet": ["a"], "kMax": 1, "counterexamples": 0})
