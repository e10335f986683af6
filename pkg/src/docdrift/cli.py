"""Command-line interface: ``docdrift scan`` and ``docdrift ci``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path

from .errors import DocDriftError, IoError, NotARepository
from .matching import Classification
from .pipeline import ScanConfig, prepare_output_dir, scan
from .reporting import write_outputs
from .repo import open_repo

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_OUTDATED = 2

log = logging.getLogger("docdrift")


def exit_code(error: bool, outdated: int, fail_on_outdated: bool) -> int:
    if error:
        return EXIT_ERROR
    if fail_on_outdated and outdated > 0:
        return EXIT_OUTDATED
    return EXIT_OK


def run_scan(config: ScanConfig) -> int:
    """Scan, write the four output files and print a one-line summary."""
    try:
        report = scan(config)
        write_outputs(report, prepare_output_dir(config.output_dir))
    except (DocDriftError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code(True, 0, config.fail_on_outdated)
    outdated = report.count(Classification.OUTDATED)
    excluded = report.count(Classification.EXCLUDED)
    print(f"{len(report.rows)} references, {outdated} outdated, {excluded} excluded")
    return exit_code(False, outdated, config.fail_on_outdated)


def run_ci(
    environ: Mapping[str, str] | None = None,
    root: str | os.PathLike[str] = ".",
    workers: int = 1,
) -> int:
    """Scan the checkout layout used by the pull-request workflow.

    Expects ``repo/`` under ``root`` and optionally ``wiki/``; writes into
    ``output/``. Findings never change the exit status.
    """
    environ = os.environ if environ is None else environ
    root = Path(root)
    repo_dir = root / "repo"
    if not repo_dir.is_dir():
        print(f"error: {repo_dir} is missing", file=sys.stderr)
        return EXIT_ERROR
    wiki_dir = root / "wiki"
    wiki_path = None
    if wiki_dir.is_dir():
        try:
            open_repo(wiki_dir)
            wiki_path = wiki_dir
        except (NotARepository, IoError):
            log.warning("%s is not a git repository; skipping wiki pages", wiki_dir)
    config = ScanConfig(
        repo_path=repo_dir,
        wiki_path=wiki_path,
        output_dir=root / "output",
        workers=workers,
        repo_slug=environ.get("GITHUB_REPOSITORY") or None,
        run_id=environ.get("GITHUB_RUN_ID") or None,
    )
    return run_scan(config)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="docdrift",
        description="Detect outdated code-element references in README and wiki pages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="scan a repository and write reports")
    p_scan.add_argument("--repo", required=True, help="path to the git repository")
    p_scan.add_argument("--wiki", help="path to a wiki checkout")
    p_scan.add_argument("--current", default="HEAD", help="revision to evaluate (default: HEAD)")
    p_scan.add_argument("--out", default="output", help="output directory (default: output)")
    p_scan.add_argument("--exclude-file", help="read exclusions from this file instead of .DOCER_exclude")
    p_scan.add_argument("--workers", type=_positive_int, default=1)
    p_scan.add_argument(
        "--fail-on-outdated", action="store_true", help="exit 2 when outdated references are found"
    )

    p_ci = sub.add_parser("ci", help="scan ./repo (and ./wiki) as laid out by the workflow")
    p_ci.add_argument("--workers", type=_positive_int, default=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    if args.command == "ci":
        return run_ci(workers=args.workers)
    return run_scan(
        ScanConfig(
            repo_path=args.repo,
            wiki_path=args.wiki,
            current_revspec=args.current,
            output_dir=args.out,
            exclude_file_override=args.exclude_file,
            workers=args.workers,
            fail_on_outdated=args.fail_on_outdated,
        )
    )
