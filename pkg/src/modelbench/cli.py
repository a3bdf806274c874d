"""Command line interface: batch execution of pipeline stages.

Exit codes: 0 success, 1 stage error, 2 usage error.  Stage summaries go
to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BenchmarkError
from .pipeline import STAGES, effective_output_path, run_stage
from .profile import load_profile


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modelbench",
        description="Benchmark model datasets: scan, parse, measure, report.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for stage in (*STAGES, "run"):
        help_text = "execute all pipeline stages in order" if stage == "run" else f"execute the {stage} stage"
        p = sub.add_parser(stage, help=help_text)
        p.add_argument("--profile", required=True, help="path to the benchmark profile JSON")
        p.add_argument("--out", default=None, help="override the output directory (flag > MODELBENCH_OUT > profile)")

    serve = sub.add_parser("serve", help="start the HTTP API and web UI")
    serve.add_argument("--profiles", default=".", help="directory holding benchmark profile files")
    serve.add_argument("--bind", default="127.0.0.1:8080", help="bind address (host:port)")
    return parser


def _print_summary(summary: dict) -> None:
    stage = summary.pop("stage", "?")
    parts = []
    for key, value in summary.items():
        if isinstance(value, dict):
            inner = ", ".join(f"{k}={v:.1f}" if isinstance(v, float) else f"{k}={v}" for k, v in sorted(value.items()))
            parts.append(f"{key}[{inner}]")
        else:
            parts.append(f"{key}={value}")
    print(f"{stage}: " + " ".join(parts))


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        from .api import serve

        host, _, port = args.bind.rpartition(":")
        try:
            serve(args.profiles, host or "127.0.0.1", int(port))
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        return 0

    try:
        profile = load_profile(args.profile)
        out = effective_output_path(profile, args.out)
        stages = STAGES if args.command == "run" else (args.command,)
        for stage in stages:
            _print_summary(run_stage(stage, profile, out))
    except (BenchmarkError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
