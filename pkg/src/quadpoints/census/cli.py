"""Command line entry point: ``quadpoints-census <command> [options]``.

Exit status is 0 on success, 1 when a reference value check fails or a
generated point does not verify, and 2 on bad input.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from ..covers import CoverFileError
from .commands import COMMANDS, RunConfig

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


def parse_real(text: str) -> float:
    """A float, optionally written as ``log N`` or ``log(N)``."""
    s = text.strip()
    try:
        if s.startswith("log"):
            arg = s[3:].strip().strip("()")
            return math.log(float(Fraction(arg)))
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc


def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from exc


def parse_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v.strip()) for v in text.split(",") if v.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of rationals, got {text!r}") from exc


def _common(p: argparse.ArgumentParser, fmt: str):
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes (default 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised checks (default 0)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default=fmt)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadpoints-census",
                                 description="Height audits and example reproductions for cyclic covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="height/discriminant audit of a double cover")
    p.add_argument("--cover", required=True, help="cover definition (JSON)")
    p.add_argument("--height-bound", type=parse_real, required=True, help="e.g. 1.1 or 'log 3'")
    p.add_argument("--epsilon", type=parse_real, default=0.01)
    _common(p, "csv")

    p = sub.add_parser("verify-examples", help="recompute the reference values of the examples")
    p.add_argument("--n-range", type=parse_range, default=(2, 20), help="F_n family range A..B")
    p.add_argument("--corrupt", action="append", default=[], metavar="CHECK_ID",
                   help="test mode: perturb the value computed for CHECK_ID")
    _common(p, "json")

    p = sub.add_parser("generate-points", help="lift fibre points to the double cover")
    p.add_argument("--m", type=int, choices=(2, 4), default=4)
    p.add_argument("--t-values", type=parse_list, default=parse_list("2,3,5,7,10"))
    p.add_argument("--sections", type=int, default=None,
                   help="multiples n <= N of the section (m=4, default 5) or conic parameters 0..N-1 (m=2, default 3)")
    _common(p, "csv")

    p = sub.add_parser("thresholds", help="threshold and residue degree table")
    p.add_argument("--r-range", type=parse_range, default=(1, 3))
    p.add_argument("--d-range", type=parse_range, default=(1, 3))
    p.add_argument("--e-range", type=parse_range, default=(2, 3))
    _common(p, "csv")

    p = sub.add_parser("enumerate", help="points of P^1 or P^2 of bounded height")
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--field", dest="field_type", choices=("rational", "quadratic"), default="rational")
    p.add_argument("--height-bound", type=parse_real, required=True)
    _common(p, "csv")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if v is not None}
    if "corrupt" in kw:
        kw["corrupt"] = tuple(kw["corrupt"])
    return RunConfig(**kw)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)  # exits with status 2 on usage errors
    try:
        cfg = config_from_args(ns)
        report = COMMANDS[cfg.command](cfg)
        text = report.render(cfg.format)
    except (CoverFileError, ValueError) as exc:
        print(f"quadpoints-census: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.out:
        Path(cfg.out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
