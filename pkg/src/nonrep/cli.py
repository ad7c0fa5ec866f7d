# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Command-line front end.

Exit codes are shared by every command: 0 pass, 1 witness or finding,
2 usage or input error, 3 budget exhausted.
"""

import argparse
import hashlib
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from nonrep.colorings import KINDS, ColoredGraph, colorize
from nonrep.config import RunConfig
from nonrep.errors import DataValidationError, NonrepError, VerifierError
from nonrep.graphs import (
    Graph,
    LatticeRegion,
    build_biclique_product,
    build_box,
    build_cycle,
    build_path,
    build_rook,
)
from nonrep.pi import exact_pi
from nonrep.render import render_svg
from nonrep.schema import (
    ColoredGraphFile,
    FactorEcho,
    GraphSummaryFile,
    VerifyReportFile,
    WordCheckFile,
    WordFile,
    coloring_csv,
    edges_csv,
    load_word,
)
from nonrep.tracing import setup_tracing, shutdown_tracing
from nonrep.verifier import (
    BUDGET_EXHAUSTED,
    WITNESS,
    check_lazy_walk_rigidity,
    find_repetitive_path,
    validate_witness,
)
from nonrep.words import find_palindrome, find_square, generate_thue, generate_thue_star

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3

WORD_KINDS = {"thue": generate_thue, "thue-star": generate_thue_star}
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        msg = f"expected comma-separated integers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from None


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    logger.info("wrote %s", out)


def _read(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise DataValidationError(f"cannot read {path}: {e}") from e


def cmd_gen_word(config: RunConfig, args: argparse.Namespace) -> int:
    """Write a prefix of T or T* as text or JSON."""
    if args.length < 1:
        raise NonrepError(f"--length must be at least 1, got {args.length}")
    word = WORD_KINDS[args.kind](args.length)
    if config.format == "json":
        _emit(WordFile.from_word(word).dump(), config.out)
    else:
        _emit(f"{word}\n", config.out)
    return EXIT_OK


def cmd_color(config: RunConfig, args: argparse.Namespace) -> int:
    """Materialize a construction and write it as JSON or CSV."""
    cg = colorize(config.construction_spec())
    if config.format == "csv":
        _emit(coloring_csv(cg), config.out)
    else:
        _emit(ColoredGraphFile.from_colored(cg).dump(), config.out)
    if args.summary is not None:
        _emit(GraphSummaryFile.from_colored(cg).dump(), args.summary)
    if args.edges is not None:
        _emit(edges_csv(cg), args.edges)
    print(f"palette {cg.palette_size}", file=sys.stderr if config.out is None else sys.stdout)
    return EXIT_OK


def _load_colored(path: Path) -> ColoredGraph:
    return ColoredGraphFile.load(_read(path)).to_colored()


def _archive(report_text: str, kind: str, directory: Path) -> Path:
    digest = hashlib.sha256(report_text.encode()).hexdigest()[:16]
    path = directory / f"{kind}-{digest}.json"
    directory.mkdir(parents=True, exist_ok=True)
    path.write_text(report_text)
    logger.info("archived witness report to %s", path)
    return path


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    """Search a coloring for a repetitive path and write the report."""
    if args.file is not None:
        cg = _load_colored(args.file)
    else:
        cg = colorize(config.construction_spec())
    report = find_repetitive_path(cg, config.budget)
    if report.witness is not None:
        check = validate_witness(cg, report.witness)
        if not check:
            raise VerifierError(f"search emitted an invalid witness: {check.reason}")
    text = VerifyReportFile.from_report(report).dump()
    _emit(text, config.out)
    if report.status == WITNESS:
        if args.archive is not None:
            _archive(text, report.construction.get("kind", "graph"), args.archive)
        return EXIT_FOUND
    if report.status == BUDGET_EXHAUSTED:
        return EXIT_EXHAUSTED
    return EXIT_OK


def cmd_check_word(config: RunConfig, args: argparse.Namespace) -> int:
    """Report squares, palindromes and lazy-walk counterexamples of a word."""
    if args.file is not None:
        alphabet = list(args.alphabet) if args.alphabet else None
        word = load_word(_read(args.file), alphabet)
    else:
        if args.kind is None or args.length is None or args.length < 1:
            raise NonrepError("check-word needs --file, or --kind with --length >= 1")
        word = WORD_KINDS[args.kind](args.length)
    square = find_square(word)
    palindrome = find_palindrome(word) if len(word) >= 2 else None
    k_max = min(config.budget.k_max, (len(word) - 1) // 2)
    walks = check_lazy_walk_rigidity(word, k_max) if k_max >= 1 else []
    result = WordCheckFile(
        length=len(word),
        alphabet=list(word.alphabet),
        square=FactorEcho(**square.to_dict()) if square else None,
        palindrome=FactorEcho(**palindrome.to_dict()) if palindrome else None,
        k_max=max(k_max, 0),
        counterexamples=len(walks),
        first_counterexample=list(walks[0].positions) if walks else None,
    )
    _emit(result.dump(), config.out)
    clean = square is None
    if len(word.alphabet) == 4:
        clean = clean and palindrome is None and not walks
    return EXIT_OK if clean else EXIT_FOUND


def parse_graph(text: str) -> Graph:
    """Graph from `path:N`, `cycle:N`, `grid:RxC`, `rook:N` or `biclique:N`."""
    family, _, size = text.partition(":")
    try:
        if family == "grid":
            rows, cols = (int(x) for x in size.split("x"))
            return build_box(LatticeRegion((0, 0), (rows - 1, cols - 1)))
        builders = {
            "path": build_path,
            "cycle": build_cycle,
            "rook": build_rook,
            "biclique": build_biclique_product,
        }
        return builders[family](int(size))
    except (KeyError, ValueError):
        raise NonrepError(
            f"invalid graph {text!r}; expected path:N, cycle:N, grid:RxC, rook:N or biclique:N"
        ) from None


def cmd_pi(config: RunConfig, args: argparse.Namespace) -> int:
    """Print the exact Thue number of a tiny graph with a certificate coloring."""
    graph = parse_graph(args.graph)
    result = exact_pi(graph, args.max_colors)
    if result.exceeds:
        _emit(f"exceeds {result.max_colors}\n", config.out)
        return EXIT_OK
    certificate = " ".join(str(c) for c in result.certificate or ())
    _emit(f"{result.value}\n{certificate}\n", config.out)
    return EXIT_OK


def cmd_render(config: RunConfig, args: argparse.Namespace) -> int:
    """Render a coloring file to SVG."""
    cg = _load_colored(args.file)
    _emit(render_svg(cg), config.out)
    return EXIT_OK


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="YAML run file")
    parser.add_argument("--log-level", dest="log_level", help="logging level (default INFO)")
    parser.add_argument("--tracing-endpoint", dest="tracing_endpoint", help="OTLP/HTTP base url")
    parser.add_argument("--out", type=Path, help="output file (default stdout)")


def _construction(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--construction", choices=KINDS)
    parser.add_argument("--region", help="lo:hi[,lo:hi[,lo:hi]], inclusive")
    parser.add_argument("--n", type=int, help="dimension (strong, tensor) or board size")
    parser.add_argument("--offsets", type=_int_list, help="per-channel word index shifts")
    parser.add_argument("--base", type=_int_list, help="tensor component base point")


def build_parser() -> argparse.ArgumentParser:
    """The `nonrep` argument parser."""
    parser = argparse.ArgumentParser(
        prog="nonrep", description="Non-repetitive colorings of grids and boards."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen-word", help="generate a prefix of T or T*")
    _common(gen)
    gen.add_argument("--kind", choices=sorted(WORD_KINDS), required=True)
    gen.add_argument("--length", type=int, required=True)
    gen.add_argument("--format", choices=("text", "json"))
    gen.set_defaults(handler=cmd_gen_word)

    color = commands.add_parser("color", help="materialize a coloring")
    _common(color)
    _construction(color)
    color.add_argument("--format", choices=("json", "csv"))
    color.add_argument("--summary", type=Path, help="also write the graph summary JSON")
    color.add_argument("--edges", type=Path, help="also write the edge list CSV")
    color.set_defaults(handler=cmd_color)

    verify = commands.add_parser("verify", help="search a coloring for a repetitive path")
    _common(verify)
    _construction(verify)
    verify.add_argument("--file", type=Path, help="coloring JSON written by `color`")
    verify.add_argument("--max-len", dest="max_len", type=int, help="longest path, 2*k_max")
    verify.add_argument("--max-nodes", dest="max_nodes", type=int)
    verify.add_argument("--parallelism", type=int)
    verify.add_argument("--deterministic", action="store_true", default=None)
    verify.add_argument("--archive", type=Path, help="keep witness reports in this directory")
    verify.set_defaults(handler=cmd_verify)

    check = commands.add_parser("check-word", help="look for squares and palindromes")
    _common(check)
    check.add_argument("--kind", choices=sorted(WORD_KINDS))
    check.add_argument("--length", type=int)
    check.add_argument("--file", type=Path, help="word as text or JSON")
    check.add_argument("--alphabet", help="labels of a text word in order, e.g. abcd")
    check.add_argument("--k-max", dest="k_max", type=int, default=3)
    check.set_defaults(handler=cmd_check_word)

    pi = commands.add_parser("pi", help="exact Thue number of a tiny graph")
    _common(pi)
    pi.add_argument("--graph", required=True, help="path:N, cycle:N, grid:RxC, rook:N, biclique:N")
    pi.add_argument("--max-colors", dest="max_colors", type=int, default=6)
    pi.set_defaults(handler=cmd_pi)

    render = commands.add_parser("render", help="render a coloring file to SVG")
    _common(render)
    render.add_argument("--file", type=Path, required=True)
    render.set_defaults(handler=cmd_render)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    keys = (
        "command",
        "construction",
        "n",
        "region",
        "offsets",
        "base",
        "out",
        "format",
        "log_level",
        "tracing_endpoint",
        "max_nodes",
        "parallelism",
        "deterministic",
        "k_max",
    )
    overrides = {key: getattr(args, key, None) for key in keys}
    max_len = getattr(args, "max_len", None)
    if max_len is not None:
        if max_len < 2:
            raise NonrepError(f"--max-len must be at least 2, got {max_len}")
        overrides["k_max"] = max_len // 2
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = RunConfig.resolve(args.config, _overrides(args))
    except NonrepError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    logging.basicConfig(level=config.log_level, format=LOG_FORMAT, stream=sys.stderr)

    provider = None
    try:
        provider = setup_tracing(config.tracing_endpoint)
        return args.handler(config, args)
    except NonrepError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    finally:
        shutdown_tracing(provider)


if __name__ == "__main__":
    sys.exit(main())
