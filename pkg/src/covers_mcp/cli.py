"""
Command-line surface for covers-mcp.

Usage:
    covers-mcp-cli covers FILE                      # progressions and flattened lengths
    covers-mcp-cli covers --text abaababa --oracle  # cross-check against the naive oracle
    covers-mcp-cli cover-array FILE --query 10
    covers-mcp-cli cover-array FILE --all --stats
    covers-mcp-cli fib 7 [--query 17] [--check]
    covers-mcp-cli adversary 10 --driver random-queries
    covers-mcp-cli bench --sizes 14 15 16 17

Shared flags, before or after the subcommand: --json, --sigma N, --seed S,
--record, and --force-c N (only with COVERS_MCP_TEST_MODE=1).

Exit codes: 0 ok, 1 usage, 2 I/O, 3 oracle mismatch.
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from . import __version__, service

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_MISMATCH = 0, 1, 2, 3
_EXIT_BY_KIND = {"usage": EXIT_USAGE, "io": EXIT_IO, "oracle_mismatch": EXIT_MISMATCH}


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _shared(top_level: bool) -> argparse.ArgumentParser:
    """Flags accepted before and after the subcommand; only the top level sets defaults."""

    def default(value: Any) -> Any:
        return value if top_level else argparse.SUPPRESS

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--json",
        action="store_true",
        default=default(False),
        help="emit JSON instead of plain text",
    )
    shared.add_argument(
        "--sigma", type=int, default=default(None), help="alphabet size (default: inferred)"
    )
    shared.add_argument("--seed", type=int, default=default(0), help="seed for randomized commands")
    shared.add_argument(
        "--record",
        action="store_true",
        default=default(False),
        help="store the report in the data path",
    )
    shared.add_argument("--force-c", type=int, default=default(None), help=argparse.SUPPRESS)
    return shared


def _add_input(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("file", nargs="?", default=None, help="input file (bytes)")
    sub.add_argument("--text", default=None, help="inline text instead of a file")
    sub.add_argument(
        "--oracle", action="store_true", help="cross-check against the reference algorithm"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="covers-mcp-cli",
        description="String covers of bit-packed texts",
        parents=[_shared(top_level=True)],
    )
    parser.add_argument("--version", "-V", action="version", version=f"covers-mcp {__version__}")
    shared = _shared(top_level=False)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subs.add_parser("covers", parents=[shared], help="all covers of a text")
    _add_input(p)
    p.add_argument("--workers", type=int, default=1, help="threads for the border groups")

    p = subs.add_parser("cover-array", parents=[shared], help="shortest cover of prefixes")
    _add_input(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--query", type=int, help="prefix length")
    group.add_argument("--all", action="store_true", help="every prefix")
    p.add_argument("--stats", action="store_true", help="index size against the space bound")

    p = subs.add_parser("fib", parents=[shared], help="Fibonacci cover array")
    p.add_argument("m", type=int)
    p.add_argument("--query", type=int, default=None)
    p.add_argument("--check", action="store_true", help="structural report on Fib_m")

    p = subs.add_parser("adversary", parents=[shared], help="lower-bound adversary experiment")
    p.add_argument("k", type=int)
    p.add_argument("--driver", default="random-queries")

    p = subs.add_parser("bench", parents=[shared], help="counted benchmark over n = 2^e")
    p.add_argument("--sizes", type=int, nargs="+", default=None, metavar="E", help="exponents e")
    p.add_argument("--family", default="random-periodic")
    return parser


def _input_kwargs(args: argparse.Namespace) -> Dict[str, Any]:
    return {"path": args.file, "text": args.text, "sigma": args.sigma}


def _emit(result: Dict[str, Any], as_json: bool, plain: List[str]) -> int:
    if not result.get("success"):
        if as_json:
            print(json.dumps(result, indent=2))
        print(f"covers-mcp-cli: error: {result.get('error')}", file=sys.stderr)
        return _EXIT_BY_KIND.get(result.get("error_kind", ""), EXIT_USAGE)
    if as_json:
        print(json.dumps(result, indent=2))
    else:
        for line in plain:
            print(line)
    return EXIT_OK


def cmd_covers(args: argparse.Namespace) -> int:
    result = service.compute_covers(
        **_input_kwargs(args), force_c=args.force_c, oracle=args.oracle,
        workers=args.workers, record=args.record,
    )
    plain = [f"{p['start']} {p['diff']} {p['count']}" for p in result.get("progressions", [])]
    plain.append(str(result.get("lengths")))
    return _emit(result, args.json, plain)


def cmd_cover_array(args: argparse.Namespace) -> int:
    result = service.cover_array_query(
        **_input_kwargs(args), query=args.query, all_values=args.all,
        stats=args.stats, oracle=args.oracle,
    )
    if "values" in result:
        plain = [" ".join(str(v) for v in result["values"])]
    else:
        plain = [str(result.get("value"))]
    plain += [f"{key}: {value}" for key, value in result.get("stats", {}).items()]
    return _emit(result, args.json, plain)


def cmd_fib(args: argparse.Namespace) -> int:
    result = service.fibonacci_cover_array(args.m, args.query, args.check, args.record)
    if "values" in result:
        plain = [" ".join(str(v) for v in result["values"])]
    else:
        plain = [str(result.get("value"))]
    plain += [f"{key}: {value}" for key, value in result.get("corollary", {}).items()]
    return _emit(result, args.json, plain)


def cmd_adversary(args: argparse.Namespace) -> int:
    result = service.run_adversary_experiment(args.k, args.driver, args.seed, args.record)
    status = _emit(result, True, [])
    if status == EXIT_OK and not result.get("ok"):
        return EXIT_MISMATCH
    return status


def cmd_bench(args: argparse.Namespace) -> int:
    result = service.run_benchmark(
        args.sizes, sigma=args.sigma or 2, seed=args.seed, family=args.family, record=args.record
    )
    plain = ["n c short_word_ops long_query_units short_ratio long_ratio"]
    for row in result.get("rows", []):
        ratios = " ".join(
            f"{row[key]:.2f}" if key in row else "-" for key in ("short_ratio", "long_ratio")
        )
        counts = f"{row['n']} {row['c']} {row['short_word_ops']} {row['long_query_units']}"
        plain.append(f"{counts} {ratios}")
    if "scaling" in result:
        plain.append(f"scaling ok: {result['scaling']['ok']}")
        plain += result["scaling"]["violations"]
    return _emit(result, args.json, plain)


COMMANDS = {
    "covers": cmd_covers,
    "cover-array": cmd_cover_array,
    "fib": cmd_fib,
    "adversary": cmd_adversary,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
