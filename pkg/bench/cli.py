"""
a1gm command line.

Usage:
    # Rank-1 factors of a CSV with missing cells:
    python -m bench.cli factorize --input data.csv --out factors.json

    # A1GM vs KL-WNMF on a CSV:
    python -m bench.cli compare --input data.csv --trials 5 --seed 0

    # Synthetic sweep (corner-missing, three sizes):
    python -m bench.cli bench --synthetic corner --size 500,1000,2000

    # Information-geometry checks of the A1GM output:
    python -m bench.cli verify --input data.csv

Exit codes: 0 ok, 2 input error, 3 too many missing values, 4 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from constants import (  # noqa: E402
    CORNER_MISSING_FRAC,
    ETA_TOL,
    EXIT_INFEASIBLE_MASK,
    EXIT_INPUT_ERROR,
    EXIT_NUMERIC_FAILURE,
    EXIT_OK,
    GRID_MISSING_FRAC,
    LOG_LEVEL,
    LOG_LEVELS,
    MISSING_TOKENS,
    RESULTS_DIR,
    TRIALS,
)
from baselines.config import IterativeConfig  # noqa: E402
from bench.compare import run_compare  # noqa: E402
from bench.datasets import gen_corner_missing, gen_grid_missing, load_csv  # noqa: E402
from factorization.errors import (  # noqa: E402
    A1GMError,
    DivergenceUndefinedError,
    InfeasibleMaskError,
    NumericFailureError,
)
from factorization.grid import a1gm  # noqa: E402
from factorization.matrix import MatrixTriple  # noqa: E402
from factorization.nmmf import reconstruct  # noqa: E402
from infogeo.poset import check_simultaneous_rank1, conservation_check, model_from_triple  # noqa: E402

logger = logging.getLogger(__name__)

GENERATORS = {"corner": gen_corner_missing, "grid": gen_grid_missing}
DEFAULT_FRAC = {"corner": CORNER_MISSING_FRAC, "grid": GRID_MISSING_FRAC}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, InfeasibleMaskError):
        return EXIT_INFEASIBLE_MASK
    if isinstance(exc, (NumericFailureError, DivergenceUndefinedError)):
        return EXIT_NUMERIC_FAILURE
    return EXIT_INPUT_ERROR


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of sizes: {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"sizes must be positive: {text!r}")
    return sizes


def _tokens(args) -> frozenset:
    return MISSING_TOKENS | frozenset(args.missing_token or ())


def _iterative_config(args) -> IterativeConfig:
    cfg = IterativeConfig.default()
    overrides = {k: getattr(args, k) for k in ("tol", "max_iter", "seed") if getattr(args, k, None) is not None}
    return replace(cfg, **overrides)


def _emit(payload, out: str | None) -> None:
    """JSON to stdout, or to --out (relative paths land in RESULTS_DIR)."""
    text = json.dumps(payload, indent=2)
    if out:
        target = Path(RESULTS_DIR) / out
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text + "\n")
        print(f"[a1gm] wrote {target}", file=sys.stderr)
    else:
        print(text)


# === Subcommands ===

def cmd_factorize(args) -> dict:
    ds = load_csv(args.input, _tokens(args), args.delimiter)
    res = a1gm(ds.Phi, ds.T)
    return {
        "dataset": ds.name,
        "shape": list(ds.shape),
        "c": res.c.tolist(),
        "d": res.d.tolist(),
        "masked_cost": res.masked_cost,
        "expanded_cost": res.expanded_cost,
        "increase_rate": res.increase_rate,
        "n_missing": res.n_missing,
        "n_missing_expanded": res.n_missing_expanded,
    }


def cmd_compare(args) -> dict:
    ds = load_csv(args.input, _tokens(args), args.delimiter)
    print(f"[compare] {ds.name}: {ds.shape[0]}x{ds.shape[1]}, {ds.n_missing} missing", file=sys.stderr)
    return run_compare(ds, _iterative_config(args), args.trials).to_dict()


def cmd_bench(args):
    generate = GENERATORS[args.synthetic]
    frac = DEFAULT_FRAC[args.synthetic] if args.frac is None else args.frac
    cfg = _iterative_config(args)
    reports = []
    for n in args.size:
        ds = generate(n, frac, cfg.seed)
        report = run_compare(ds, cfg, args.trials)
        print(
            f"[bench] n={n}: relative error {report.relative_error:.6g}, "
            f"relative runtime {report.relative_runtime:.4g}",
            file=sys.stderr,
        )
        reports.append(report.to_dict())
    return reports[0] if len(reports) == 1 else reports


def verify_result(Phi, T, tol: float = ETA_TOL) -> dict:
    """Oracle checks of the A1GM output: rank-1 structure and conservation."""
    res = a1gm(Phi, T)
    projected = MatrixTriple(*reconstruct(res.factors))
    model_in = model_from_triple(res.triple)
    model_out = model_from_triple(projected)
    report = check_simultaneous_rank1(model_out, tol, tol)
    return {
        **report.to_dict(),
        "conservation_ok": conservation_check(model_in, model_out),
        "input_max_violation": check_simultaneous_rank1(model_in, tol, tol).max_violation,
        "increase_rate": res.increase_rate,
    }


def cmd_verify(args) -> dict:
    ds = load_csv(args.input, _tokens(args), args.delimiter)
    result = verify_result(ds.Phi, ds.T, args.tol)
    print(
        f"[verify] {ds.name}: max two-body theta {result['max_theta']:.3g}, "
        f"max eta gap {result['max_eta']:.3g}",
        file=sys.stderr,
    )
    return {"dataset": ds.name, **result}


# === Parser ===

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="CSV file without header")
    p.add_argument("--missing-token", action="append", metavar="T",
                   help="extra token marking a missing cell (repeatable)")
    p.add_argument("--delimiter", default=",")


def _add_iterative(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=int, default=TRIALS)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="a1gm", description="Rank-1 NMF with missing values")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", help="A1GM factors of a CSV matrix")
    _add_input(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("compare", help="A1GM vs KL-WNMF on a CSV matrix")
    _add_input(p)
    _add_iterative(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="A1GM vs KL-WNMF on synthetic matrices")
    p.add_argument("--synthetic", choices=sorted(GENERATORS), required=True)
    p.add_argument("--size", type=_sizes, required=True, help="size or comma-separated sizes")
    p.add_argument("--frac", type=float, default=None)
    _add_iterative(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check the A1GM output against the log-linear model")
    _add_input(p)
    p.add_argument("--tol", type=float, default=ETA_TOL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        # A1GM_LOG_LEVEL defaults bypass argparse choices
        logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
        payload = args.func(args)
    except (A1GMError, ValueError, OSError) as e:
        code = exit_code_for(e)
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"[a1gm] error: {e}", file=sys.stderr)
        return code
    _emit(payload, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
