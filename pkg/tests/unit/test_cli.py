# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

import contextlib
import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from nonrep.cli import EXIT_EXHAUSTED, EXIT_FOUND, EXIT_OK, EXIT_USAGE, main, parse_graph
from nonrep.errors import NonrepError
from nonrep.schema import VerifyReportFile


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)
        env = patch.dict("os.environ", {"NONREP_PARALLELISM": "1", "NONREP_LOG_LEVEL": "ERROR"})
        env.start()
        self.addCleanup(env.stop)

    def run_cli(self, *argv):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            code = main(list(argv))
        return code, stdout.getvalue()

    def path(self, name):
        return self.dir / name


class TestGenWord(CliTestCase):
    def test_text(self):
        code, out = self.run_cli("gen-word", "--kind", "thue-star", "--length", "9")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "dbcdacdba\n")

    def test_json_file(self):
        out = self.path("t.json")
        code, _ = self.run_cli(
            "gen-word", "--kind", "thue", "--length", "6", "--format", "json", "--out", str(out)
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out.read_text())["symbols"], [0, 1, 2, 0, 2, 1])

    def test_bad_length(self):
        code, _ = self.run_cli("gen-word", "--kind", "thue", "--length", "0")
        self.assertEqual(code, EXIT_USAGE)


class TestColor(CliTestCase):
    def test_json_and_extras(self):
        out, summary, edges = self.path("g.json"), self.path("s.json"), self.path("e.csv")
        code, stdout = self.run_cli(
            "color",
            "--construction", "grid12",
            "--region", "0:11,0:11",
            "--out", str(out),
            "--summary", str(summary),
            "--edges", str(edges),
        )  # fmt: skip
        self.assertEqual(code, EXIT_OK)
        self.assertIn("palette 12", stdout)
        data = json.loads(out.read_text())
        self.assertEqual(len(data["cells"]), 144)
        self.assertEqual(data["construction"]["offsets"], [5, 0])
        self.assertEqual(json.loads(summary.read_text())["paletteSize"], 12)
        self.assertEqual(len(edges.read_text().splitlines()), 1 + 2 * 12 * 11)

    def test_csv(self):
        code, out = self.run_cli(
            "color", "--construction", "diagonal", "--region", "0:1,0:1", "--format", "csv"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines()[0], "x,y,color")

    def test_board(self):
        out = self.path("rook.json")
        code, _ = self.run_cli("color", "--construction", "rook", "--n", "6", "--out", str(out))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out.read_text())["palette"]), 18)

    def test_usage_errors(self):
        cases = (
            ("color", "--construction", "grid12"),
            ("color", "--construction", "rook", "--n", "5"),
            ("color", "--construction", "grid12", "--region", "0-11"),
            ("color", "--construction", "hexagonal", "--region", "0:1,0:1"),
            ("color", "--construction", "diagonal", "--region", "0:1,0:1", "--offsets", "x"),
            (),
        )
        for argv in cases:
            with contextlib.redirect_stderr(io.StringIO()):
                code, _ = self.run_cli(*argv)
            self.assertEqual(code, EXIT_USAGE, argv)


class TestVerify(CliTestCase):
    def verify(self, *argv):
        out = self.path("report.json")
        code, _ = self.run_cli("verify", "--out", str(out), "--deterministic", *argv)
        return code, VerifyReportFile.load(out.read_text())

    def test_witness(self):
        code, report = self.verify(
            "--construction", "grid12-base", "--region", "0:7,0:7", "--max-len", "4"
        )
        self.assertEqual(code, EXIT_FOUND)
        self.assertEqual(report.witness.vertices, [[0, 0], [0, 1], [1, 1], [1, 0]])
        self.assertEqual(report.budget.max_len, 4)

    def test_pass(self):
        code, report = self.verify(
            "--construction", "grid12", "--region", "0:5,0:5", "--max-len", "6"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report.status, "pass")

    def test_exhausted(self):
        code, report = self.verify(
            "--construction", "grid12", "--region", "0:5,0:5", "--max-len", "6",
            "--max-nodes", "50",
        )  # fmt: skip
        self.assertEqual(code, EXIT_EXHAUSTED)
        self.assertEqual(report.status, "budget-exhausted")

    def test_odd_max_len_rounds_down(self):
        _, report = self.verify(
            "--construction", "grid12", "--region", "0:3,0:3", "--max-len", "5"
        )
        self.assertEqual(report.budget.max_len, 4)

    def test_max_len_too_small(self):
        code, _ = self.run_cli(
            "verify", "--construction", "grid12", "--region", "0:3,0:3", "--max-len", "1"
        )
        self.assertEqual(code, EXIT_USAGE)

    def test_from_coloring_file(self):
        colored = self.path("rook.json")
        self.run_cli("color", "--construction", "rook", "--n", "4", "--out", str(colored))
        code, report = self.verify("--file", str(colored), "--max-len", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report.construction["kind"], "rook")

    def test_corrupted_coloring_file(self):
        colored = self.path("rook.json")
        self.run_cli("color", "--construction", "rook", "--n", "4", "--out", str(colored))
        data = json.loads(colored.read_text())
        cells = {tuple(cell[:2]): cell for cell in data["cells"]}
        cells[(0, 2)][2], cells[(1, 2)][2] = cells[(1, 2)][2], cells[(0, 2)][2]
        colored.write_text(json.dumps(data))
        code, report = self.verify("--file", str(colored), "--max-len", "4")
        self.assertEqual(code, EXIT_FOUND)
        self.assertEqual(report.status, "witness")

    def test_archive(self):
        archive = self.dir / "witnesses"
        code, _ = self.verify(
            "--construction", "grid12-base", "--region", "0:7,0:7", "--max-len", "4",
            "--archive", str(archive),
        )  # fmt: skip
        self.assertEqual(code, EXIT_FOUND)
        (path,) = archive.glob("grid12-base-*.json")
        self.assertEqual(VerifyReportFile.load(path.read_text()).status, "witness")

    def test_reports_identical_across_worker_counts(self):
        reports = []
        for workers in ("1", "2"):
            out = self.path(f"report-{workers}.json")
            self.run_cli(
                "verify", "--construction", "grid12-base", "--region", "0:7,0:7",
                "--max-len", "6", "--deterministic", "--parallelism", workers, "--out", str(out),
            )  # fmt: skip
            reports.append(VerifyReportFile.load(out.read_text()).comparable())
        self.assertEqual(reports[0], reports[1])

    def test_run_file(self):
        run = self.path("run.yaml")
        run.write_text('construction: grid12\nregion: "0:3,0:3"\nbudget:\n  k_max: 2\n')
        code, report = self.verify("--config", str(run))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report.budget.max_len, 4)

    def test_bad_file(self):
        broken = self.path("broken.json")
        broken.write_text("{")
        with contextlib.redirect_stderr(io.StringIO()):
            code, _ = self.run_cli("verify", "--file", str(broken))
        self.assertEqual(code, EXIT_USAGE)


class TestCheckWord(CliTestCase):
    def check(self, *argv):
        out = self.path("check.json")
        code, _ = self.run_cli("check-word", "--out", str(out), *argv)
        return code, json.loads(out.read_text())

    def test_thue_star_is_clean(self):
        code, data = self.check("--kind", "thue-star", "--length", "60", "--k-max", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertNotIn("square", data)
        self.assertNotIn("palindrome", data)
        self.assertEqual(data["counterexamples"], 0)

    def test_thue_has_palindromes_but_no_squares(self):
        code, data = self.check("--kind", "thue", "--length", "60")
        self.assertEqual(code, EXIT_OK)
        self.assertNotIn("square", data)
        self.assertEqual(data["palindrome"], {"start": 0, "length": 7, "kind": "palindrome"})
        self.assertGreater(data["counterexamples"], 0)

    def test_square_in_file(self):
        word = self.path("w.txt")
        word.write_text("abcbcd\n")
        code, data = self.check("--file", str(word))
        self.assertEqual(code, EXIT_FOUND)
        self.assertEqual(data["square"], {"start": 1, "length": 4, "kind": "square"})

    def test_text_window_missing_a_letter_keeps_four_labels(self):
        word = self.path("window.txt")
        word.write_text("dbcbd\n")
        code, data = self.check("--file", str(word))
        self.assertEqual(code, EXIT_FOUND)
        self.assertEqual(data["alphabet"], ["a", "b", "c", "d"])
        self.assertEqual(data["palindrome"]["start"], 0)

    def test_explicit_alphabet(self):
        word = self.path("w.txt")
        word.write_text("abc\n")
        code, data = self.check("--file", str(word), "--alphabet", "abcz")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data["alphabet"], ["a", "b", "c", "z"])

    def test_needs_input(self):
        code, _ = self.run_cli("check-word", "--kind", "thue")
        self.assertEqual(code, EXIT_USAGE)


class TestPi(CliTestCase):
    def test_path(self):
        code, out = self.run_cli("pi", "--graph", "path:4")
        self.assertEqual(code, EXIT_OK)
        value, certificate = out.splitlines()
        self.assertEqual(value, "3")
        self.assertEqual(len(certificate.split()), 4)

    def test_exceeds(self):
        code, out = self.run_cli("pi", "--graph", "cycle:5", "--max-colors", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "exceeds 3\n")

    def test_parse_graph(self):
        self.assertEqual(parse_graph("grid:2x3").vertex_count, 6)
        self.assertEqual(parse_graph("rook:3").vertex_count, 9)
        self.assertEqual(parse_graph("biclique:1").vertex_count, 4)
        for text in ("hex:3", "grid:2", "path:x", "path"):
            with self.assertRaises(NonrepError, msg=text):
                parse_graph(text)

    def test_bad_graph(self):
        code, _ = self.run_cli("pi", "--graph", "hex:3")
        self.assertEqual(code, EXIT_USAGE)


class TestRender(CliTestCase):
    def test_render_file(self):
        colored, svg = self.path("g.json"), self.path("g.svg")
        self.run_cli(
            "color", "--construction", "grid12", "--region", "0:5,0:5", "--out", str(colored)
        )
        code, _ = self.run_cli("render", "--file", str(colored), "--out", str(svg))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(svg.read_text().count('id="cell-'), 36)
