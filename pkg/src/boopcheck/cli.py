"""Command-line entry point.

Exit codes: 0 when no error-level diagnostics were found (and the warning
budget, if any, was respected), 1 when a checked file has errors or too
many warnings, 2 for usage errors, unreadable configuration, or G001.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .checker import check_file, phase_statuses
from .config import ConfigError, RuleConfig, load_config_file, resolve_config
from .document import SectionKind
from .report import render_human, render_json

USAGE_EXIT = 2


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boopcheck",
        description="Check BOOP (Blueprint, Operations, Code, Proof) submissions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check one or more submission files")
    check.add_argument("files", nargs="+", metavar="FILE")
    check.add_argument("--config", metavar="PATH", help="config file (overrides discovery)")
    check.add_argument("--format", choices=("human", "json"), default="human")
    check.add_argument(
        "--max-warnings",
        type=int,
        default=None,
        metavar="N",
        help="fail (exit 1) when a file has more than N warnings",
    )

    sections = sub.add_parser("sections", help="report which phases are present")
    sections.add_argument("file", metavar="FILE")

    sub.add_parser("lsp", help="run the language server on stdin/stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_arg_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT

    if args.command == "check":
        return _run_check(args)
    if args.command == "sections":
        return _run_sections(args)
    if args.command == "lsp":
        from .lsp import LspServer

        return LspServer().serve()
    return USAGE_EXIT


def _config_for(args, path: str) -> RuleConfig:
    if args.config:
        return load_config_file(args.config)
    return resolve_config(path)


def _run_check(args) -> int:
    exit_code = 0
    for file in args.files:
        try:
            config = _config_for(args, file)
        except ConfigError as exc:
            print(f"boopcheck: {exc}", file=sys.stderr)
            return USAGE_EXIT

        result = check_file(file, config)
        if args.format == "json":
            print(render_json(result))
        else:
            try:
                source = Path(file).read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError):
                source = ""
            print(render_human(result, source), end="")

        failed = result.error_count > 0 or (
            args.max_warnings is not None and result.warn_count > args.max_warnings
        )
        exit_code = max(exit_code, 1 if failed else 0)
    return exit_code


def _run_sections(args) -> int:
    try:
        source = Path(args.file).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"boopcheck: cannot read '{args.file}': {exc}", file=sys.stderr)
        return 1
    print(render_phase_statuses(phase_statuses(source)), end="")
    return 0


def render_phase_statuses(statuses: dict[str, str]) -> str:
    """Canonical text for a phase-status map; shared with the LSP tests."""
    return "".join(f"{kind.label}: {statuses[kind.label]}\n" for kind in SectionKind)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
