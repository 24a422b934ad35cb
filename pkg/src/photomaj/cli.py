"""``photomaj`` command line.

Exit status: 0 on success, 2 for usage or parse errors, 3 when a numerical
truncation fails to converge.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .dist import DEFAULT_EPS
from .errors import ConvergenceError, PhotomajError
from .figures import figure_help, run_figure
from .majorize import DEFAULT_TOL
from .report import run_classify, run_compare, run_dist, run_entropy, run_sample
from .statespec import parse_state_spec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3

STATE_HELP = (
    "state grammar: coherent(M) | thermal(M) | number(N) | squeezed(R=..,r=..) | "
    "squeezed_target(mean=..,var=..[,branch=strong|weak]) | mix(XI;SPEC;SPEC)"
)


def _common(p):
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="truncation tolerance (default 1e-12)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="partial-sum equality tolerance (default 1e-10)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None, help="write here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="photomaj",
        description="Majorization analysis of photon-number statistics.",
        epilog=STATE_HELP,
    )
    parser.add_argument("--version", action="version", version=f"photomaj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="photon-number distribution and moments of a state", epilog=STATE_HELP)
    p.add_argument("state")
    _common(p)

    p = sub.add_parser("compare", help="majorization verdict between two states", epilog=STATE_HELP)
    p.add_argument("state_a")
    p.add_argument("state_b")
    _common(p)

    p = sub.add_parser("classify", help="Poissonian or clustering classification", epilog=STATE_HELP)
    p.add_argument("state")
    p.add_argument("--criterion", choices=("poisson", "clustering"), default="poisson")
    _common(p)

    p = sub.add_parser("entropy", help="Renyi/Tsallis/Shannon entropies", epilog=STATE_HELP)
    p.add_argument("state")
    p.add_argument("--family", choices=("renyi", "tsallis", "shannon"), default="renyi")
    p.add_argument("--q", type=float, action="append", help="entropic index (repeatable)")
    p.add_argument("--bits", action="store_true", help="report in bits instead of nats")
    _common(p)

    p = sub.add_parser(
        "figure",
        help="curve data for one of the predefined figures",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="figure ids:\n" + figure_help(),
    )
    p.add_argument("id", type=int)
    _common(p)

    p = sub.add_parser("sample", help="Monte-Carlo beam-splitter counts", epilog=STATE_HELP)
    p.add_argument("state")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    _common(p)
    return parser


def _dispatch(args):
    if args.command == "dist":
        return run_dist(parse_state_spec(args.state), args.eps)
    if args.command == "compare":
        return run_compare(parse_state_spec(args.state_a), parse_state_spec(args.state_b), args.tol, args.eps)
    if args.command == "classify":
        return run_classify(parse_state_spec(args.state), args.criterion, args.tol, args.eps)
    if args.command == "entropy":
        qs = args.q or [0.5, 1.0, 2.0]
        return run_entropy(parse_state_spec(args.state), args.family, qs, args.eps, args.bits)
    if args.command == "figure":
        return run_figure(args.id, args.eps)
    if args.command == "sample":
        return run_sample(parse_state_spec(args.state), args.samples, args.seed, args.eps, args.workers)
    raise AssertionError(args.command)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = _dispatch(args)
    except ConvergenceError as exc:
        print(f"photomaj: convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except PhotomajError as exc:
        print(f"photomaj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = doc.render(args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
