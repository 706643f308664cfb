"""Command-line front end: ``barycenter-rooms <synth|cluster|factor|eval|bary> ...``.

Every subcommand goes through the addon actions; a non-2xx response exits
with status 1 and its message on standard error.
"""
import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger

from .actions.base import ActionResponse, resolve_config
from .addon import BarycenterRoomsAddon
from .core.errors import BarycenterError
from .storage import load_csv, read_gaussians
from .tools.registry import DEFAULT_ALGORITHMS

FAMILIES = ("expansion", "dilation", "line", "arc", "branches")
LABEL_HEADER = "label"


def _label_column(value: str):
    """0-based index (negatives count from the end) or a header name."""
    stripped = value.lstrip("-")
    return int(value) if stripped.isdigit() else value


def _default_label_column(path: str, has_header: Optional[bool]):
    if has_header is False or not Path(path).is_file():
        return None
    with open(path, newline="", encoding="utf-8") as handle:
        first = next(csv.reader(handle), [])
    return LABEL_HEADER if LABEL_HEADER in (cell.strip() for cell in first) else None


def _load(args, labels: bool = True):
    label_column = args.label_column
    if label_column is None and labels:
        label_column = _default_label_column(args.input, args.header)
    return load_csv(args.input, has_header=args.header, label_column=label_column)


def _add_input(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--in", dest="input", required=required, help="Input CSV")
    parser.add_argument(
        "--header",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Force or forbid a header line (sniffed by default)",
    )
    parser.add_argument(
        "--label-column",
        type=_label_column,
        default=None,
        help=f"Label column by name or 0-based index (default: a '{LABEL_HEADER}' header column)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barycenter-rooms",
        description="Wasserstein-barycenter clustering and affine factor discovery.",
    )
    parser.add_argument("--log-level", default=None, help="loguru level of the stderr sink (default WARNING)")
    parser.add_argument("--config", default=None, help="Addon configuration JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="Generate a benchmark data set")
    synth.add_argument("family", choices=FAMILIES)
    synth.add_argument("--t", type=float, default=0.0, help="Expansion / dilation parameter")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--n", type=int, default=None, help="Samples (line, arc) or points per branch")
    synth.add_argument("--noise", type=float, default=None, help="Noise std of the curve families")
    synth.add_argument("--out", required=True, help="Output CSV")

    clus = sub.add_parser("cluster", help="Cluster a CSV data set")
    clus.add_argument("--algo", required=True, choices=sorted(DEFAULT_ALGORITHMS))
    clus.add_argument("--k", type=int, required=True)
    clus.add_argument("--restarts", type=int, default=None)
    clus.add_argument("--seed", type=int, default=None)
    clus.add_argument("--workers", type=int, default=None, help="Threads running restarts")
    clus.add_argument("--max-iters", type=int, default=None)
    clus.add_argument("--update-rate", type=float, default=None)
    clus.add_argument("--fuzzy-exponent", type=float, default=None)
    clus.add_argument("--cov-reg", type=float, default=None)
    clus.add_argument("--std-reg", type=float, default=None)
    clus.add_argument("--dissimilarity", choices=("euclidean", "pairwise"), default=None)
    clus.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=None)
    _add_input(clus)
    clus.add_argument("--out", default=None, help="RunRecord JSON")

    fact = sub.add_parser("factor", help="Affine factor discovery and principal curve export")
    fact.add_argument("--alpha", type=float, default=None)
    fact.add_argument("--eta", type=float, default=None)
    fact.add_argument("--iters", type=int, default=None)
    fact.add_argument("--seed", type=int, default=None)
    fact.add_argument("--init", choices=("random", "pc1"), default=None)
    fact.add_argument("--curve-points", type=int, default=None)
    fact.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=False)
    _add_input(fact)
    fact.add_argument("--curve", default=None, help="Principal curve CSV")
    fact.add_argument("--out", default=None, help="Final latent state JSON")

    ev = sub.add_parser("eval", help="Correctness rate of a run against true labels")
    ev.add_argument("--run", required=True, help="RunRecord JSON")
    ev.add_argument("--truth", dest="input", required=True, help="Labeled CSV")
    ev.add_argument("--header", action=argparse.BooleanOptionalAction, default=None)
    ev.add_argument("--label-column", type=_label_column, default=None)

    bary = sub.add_parser("bary", help="Barycenter of Gaussians given as JSON")
    bary.add_argument("--in", dest="input", required=True, help="JSON list of {weight, mean, cov}")
    bary.add_argument("--maps", action="store_true", help="Include the optimal affine maps")
    bary.add_argument("--out", default=None, help="Output JSON")
    return parser


def _configure_logging(level: str):
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


def _synth(addon: BarycenterRoomsAddon, args) -> ActionResponse:
    response = addon.synthesize(args.family, t=args.t, seed=args.seed, n=args.n, noise=args.noise, out=args.out)
    if response.ok:
        print(f"{response.output.n_samples} samples written to {response.output.path}")
    return response


def _cluster(addon: BarycenterRoomsAddon, args) -> ActionResponse:
    overrides = {
        "workers": args.workers,
        "max_iters": args.max_iters,
        "update_rate": args.update_rate,
        "fuzzy_exponent": args.fuzzy_exponent,
        "cov_reg": args.cov_reg,
        "std_reg": args.std_reg,
        "dissimilarity": args.dissimilarity,
    }
    response = addon.cluster(
        _load(args),
        args.algo,
        args.k,
        restarts=args.restarts,
        seed=args.seed,
        normalize=args.normalize,
        out=args.out,
        **overrides,
    )
    if response.ok:
        record = response.output.record
        details = f"restart {record.restart}, {record.iterations} iterations"
        if record.normalized:
            details += ", normalized"
        line = f"{record.algorithm}: objective {record.objective!r} ({details})"
        if response.output.correctness is not None:
            line += f", correctness {response.output.correctness!r}"
        print(line)
    return response


def _factor(addon: BarycenterRoomsAddon, args) -> ActionResponse:
    response = addon.factor(
        _load(args),
        alpha=args.alpha,
        eta=args.eta,
        iters=args.iters,
        seed=args.seed,
        init=args.init,
        curve_points=args.curve_points,
        normalize=args.normalize,
        curve_out=args.curve,
        state_out=args.out,
    )
    if response.ok:
        print(f"sigma {response.output.result.sigma!r}")
    return response


def _eval(addon: BarycenterRoomsAddon, args) -> ActionResponse:
    truth = _load(args)
    if not hasattr(truth, "labels"):
        raise ValueError(f"{args.input} has no label column; pass --label-column")
    response = addon.evaluate(args.run, truth)
    if response.ok:
        print(repr(response.output.correctness))
    return response


def _bary(addon: BarycenterRoomsAddon, args) -> ActionResponse:
    response = addon.barycenter(read_gaussians(args.input), maps=args.maps, out=args.out)
    if response.ok:
        output = response.output
        print(
            f"sigma_y {output.std!r}, transport cost {output.transport_cost!r}, "
            f"pairwise cost {output.pairwise_cost!r}"
        )
        if not args.out:
            print(output.model_dump_json(indent=2))
    return response


COMMANDS = {"synth": _synth, "cluster": _cluster, "factor": _factor, "eval": _eval, "bary": _bary}


def run_command(argv: Sequence[str]) -> int:
    """Parse ``argv``, run one subcommand, return the exit status."""
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1

    addon = BarycenterRoomsAddon()
    try:
        if args.config:
            payload = json.loads(Path(args.config).read_text(encoding="utf-8"))
            if not addon.loadAddonConfig(payload):
                print(f"error: invalid configuration in {args.config}", file=sys.stderr)
                return 1
        config = resolve_config(addon.config)
        _configure_logging(args.log_level or config.log_level)
        response = COMMANDS[args.command](addon, args)
    except (BarycenterError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    if not response.ok:
        print(f"error: {response.message}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
