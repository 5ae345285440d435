"""``qball`` command line entry point."""
from __future__ import annotations

import argparse
import logging
import sys

from .suites import DEFAULT_TOL, SUITES, ConfigError, SuiteConfig, run_suite, thread_count

log = logging.getLogger("qball")


def _tol_pair(text: str):
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {key!r} is not a number: {val!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qball",
        description="Run verification suites for the quantum matrix ball and write a JSON report.")
    ap.add_argument("suites", nargs="+", metavar="SUITE",
                    help="one or more of: " + ", ".join(SUITES) + ", all")
    ap.add_argument("--n", type=int, default=2, help="matrix size n (default 2)")
    ap.add_argument("--q", type=float, default=0.5, help="deformation parameter in (0,1)")
    ap.add_argument("--trunc", type=int, default=None, metavar="N",
                    help="truncation N per slot (default: chosen per suite)")
    ap.add_argument("--safe-degree", type=int, default=None)
    ap.add_argument("--degree", type=int, default=None, help="sample or check degree")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--tol", type=_tol_pair, action="append", default=[], metavar="KEY=VALUE",
                    help="override a tolerance; keys: " + ", ".join(DEFAULT_TOL))
    ap.add_argument("--out", default=None, help="write the JSON report here")
    ap.add_argument("--json", action="store_true", help="print the full JSON report")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def config_from_args(args) -> SuiteConfig:
    return SuiteConfig(suites=tuple(args.suites), n=args.n, q=args.q, N=args.trunc,
                       safe_degree=args.safe_degree, degree=args.degree, seed=args.seed,
                       samples=args.samples, tolerances=dict(args.tol), out=args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = config_from_args(args).validate()
        thread_count()
    except ConfigError as exc:
        print(f"qball: configuration error: {exc}", file=sys.stderr)
        return 2
    report = run_suite(cfg)
    if args.json:
        print(report.dumps())
    else:
        for c in report.checks:
            mark = "ok  " if c.passed else "FAIL"
            print(f"{mark} {c.name:<48} residual={c.residual:.3e} tol={c.tol:.1e}")
            if c.detail and (args.verbose or not c.passed):
                print(f"     {c.detail}")
        print(report.summary())
    if cfg.out:
        log.info("report written to %s", cfg.out)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
