"""The latinbox command line."""
from __future__ import annotations
import argparse
import json
import logging
import os
import sys

from dotenv import load_dotenv

from latinbox.arrays import Array3D, DimensionError, FormatError, sample_binomial, sample_green_blue, sample_process
from latinbox.enumeration import SizeGuardError, count_latin_boxes, count_rectangles_exact
from latinbox.finders import StagedParams, find_block_recursive, find_exact, find_plane_matching, find_staged
from latinbox.labcli.Config import FIELD_NAMES, FINDERS, load_config
from latinbox.labcli.experiments import ExperimentFailure, run_experiment
from latinbox.labcli.plots import PLOT_KINDS, SchemaError, emit_plot
from latinbox.matching import PermanentCapExceeded
from latinbox.utils import ConfigError, ParameterError

INVALID_CONFIG = 2
EXPERIMENT_FAILED = 3

def setup_logger(verbose: bool) -> logging.Logger:
    logger = logging.getLogger("latinbox")
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    if not logger.handlers:
        logger.addHandler(logging.StreamHandler(sys.stdout))
    return logger

def _overrides(args: argparse.Namespace) -> dict:
    return {key: value for key, value in vars(args).items() if key in FIELD_NAMES and value is not None}

def _add_finder_options(parser: argparse.ArgumentParser):
    parser.add_argument("--finder", choices=FINDERS, help="Latin box finder, exact by default")
    parser.add_argument("--node-cap", type=int, help="Node cap of the exact finder")
    parser.add_argument("--retries", type=int, help="Retries of every staged finder stage")
    parser.add_argument("--delta", type=float, help="Slack of the plane finder's abort rule")
    parser.add_argument("--abort-check", action="store_const", const=True, help="Enable the plane finder's abort rule")
    parser.add_argument("--uniform", choices=("exact", "fast"), help="Perfect matching sampler of the plane finder")

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latinbox",
        description="Sample random 0-1 arrays, search them for Latin boxes and run threshold experiments"
    )
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--trials", type=int, help="Trials per grid point")
    parser.add_argument("--threads", type=int, help="Worker threads")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--config", help="JSON config file, keys as in labcli/example_config.json")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log every trial")
    sub = parser.add_subparsers(dest="command", required=True)

    sample = sub.add_parser("sample", help="Draw a random array and write it")
    sample.add_argument("model", choices=("binomial", "process", "greenblue"))
    sample.add_argument("output", help="Output file, .json for the debug form, binary otherwise")
    sample.add_argument("--dims", type=int, nargs=3, metavar=("M", "N", "K"), help="Binomial dimensions")
    sample.add_argument("-n", type=int, help="Side of the process and green-blue models")
    sample.add_argument("-m", type=int, help="Symbols of the process and green-blue models")
    sample.add_argument("-p", type=float, help="Density")
    sample.add_argument("-t", type=int, help="Process prefix length, the shaft hitting time by default")

    find = sub.add_parser("find", help="Search an array file for a Latin box")
    find.add_argument("input", help="Array file written by sample")
    find.add_argument("--mode", choices=("first", "count_all"), default="first")
    _add_finder_options(find)

    sweep = sub.add_parser("sweep", help="Containment rate over a grid of densities")
    sweep.add_argument("--shape", choices=("rectangle", "box", "cube"))
    sweep.add_argument("-n", type=int)
    sweep.add_argument("--eps", type=float)
    sweep.add_argument("--p-grid", help="Comma separated densities")
    sweep.add_argument("--record-timings", action="store_const", const=True)
    _add_finder_options(sweep)
    sweep.set_defaults(kind="sweep")

    hitting = sub.add_parser("hitting", help="Hitting times of the array process")
    hitting.add_argument("--shape", choices=("box", "cube"))
    hitting.add_argument("-n", type=int)
    hitting.add_argument("--eps", type=float)
    hitting.add_argument("--node-cap", type=int)
    hitting.add_argument("--size-guard", type=int)
    hitting.add_argument("--record-timings", action="store_const", const=True)
    hitting.set_defaults(kind="hitting")

    qval = sub.add_parser("qval", help="Monte Carlo check of the small containment polynomials")
    qval.add_argument("--n0", type=int)
    qval.add_argument("--p-grid", help="Comma separated densities")
    qval.set_defaults(kind="qval")

    pack = sub.add_parser("pack", help="Greedy triangle packing trajectories")
    pack.add_argument("--n-list", help="Comma separated sides")
    pack.add_argument("--seeds", type=int, help="Seeds per side")
    pack.add_argument("--horizon", type=int, help="Steps, n^2 by default")
    pack.add_argument("--record-every", type=int)
    pack.add_argument("--band", type=float)
    pack.add_argument("--record-timings", action="store_const", const=True)
    pack.set_defaults(kind="pack")

    count = sub.add_parser("count", help="Exact Latin box and rectangle counts")
    group = count.add_mutually_exclusive_group(required=True)
    group.add_argument("--dims", type=int, nargs=3, metavar=("M", "N", "K"))
    group.add_argument("--rectangle", type=int, nargs=2, metavar=("M", "N"))

    plot = sub.add_parser("plot", help="SVG chart of a sweep or trajectory csv")
    plot.add_argument("csv")
    plot.add_argument("--kind", choices=tuple(PLOT_KINDS), required=True)
    plot.add_argument("--output", help="SVG path, next to the csv by default")
    plot.add_argument("-n", type=int, help="Side of a trajectory, read from the csv by default")

    return parser

def cmd_sample(args, logger: logging.Logger) -> int:
    seed = load_config(args.config, {"seed": args.seed}).seed

    if args.model == "binomial":
        if not args.dims or args.p is None:
            raise ConfigError("binomial sampling needs --dims and -p")
        M = sample_binomial(*args.dims, args.p, seed)
    elif args.model == "process":
        if not args.n or not args.m:
            raise ConfigError("process sampling needs -n and -m")
        process = sample_process(args.n, args.m, seed)
        t = args.t if args.t is not None else process.shaftHittingTime()
        M = process.prefix(t)
        logger.info(f"prefix at t={t}, tau_shaft={process.shaftHittingTime()}")
    else:
        if not args.n or not args.m or args.p is None:
            raise ConfigError("green-blue sampling needs -n, -m and -p")
        colored = sample_green_blue(args.n, args.m, args.p, seed)
        M = colored.combined()
        logger.info(f"green ones {colored.green.ones}, blue ones {colored.blue.ones}")

    M.dump(args.output)
    logger.info(f"wrote {M!r} to {args.output}")
    return 0

def cmd_find(args, logger: logging.Logger) -> int:
    cfg = load_config(args.config, _overrides(args))
    M = Array3D.load(args.input)

    if cfg.finder == "exact":
        outcome = find_exact(M, mode=args.mode, node_cap=cfg.node_cap)
    elif cfg.finder == "block":
        outcome = find_block_recursive(M)
    elif cfg.finder == "plane":
        outcome = find_plane_matching(M, delta=cfg.delta, abort_check=cfg.abort_check, uniform=cfg.uniform,
                                      seed=cfg.seed, logger=logger)
    else:
        params = StagedParams.fromShape(M.n, M.k / M.n - 1, cfg.retries) if M.k > M.n else None
        outcome = find_staged(M, params, cfg.seed, logger)

    data = outcome.toJson()
    print(json.dumps(data, sort_keys=True))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "find.json"), "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, sort_keys=True)
    return 0

def cmd_experiment(args, logger: logging.Logger) -> int:
    cfg = load_config(args.config, _overrides(args))
    summary = run_experiment(cfg, logger)

    if cfg.kind == "sweep":
        emit_plot(os.path.join(cfg.out, "sweep.csv"), "curve")
    logger.info(f"results in {cfg.out}")
    logger.debug(json.dumps(summary, sort_keys=True))
    return 0

def cmd_count(args, logger: logging.Logger) -> int:
    if args.dims:
        print(count_latin_boxes(*args.dims))
    else:
        print(count_rectangles_exact(*args.rectangle))
    return 0

def cmd_plot(args, logger: logging.Logger) -> int:
    path = emit_plot(args.csv, args.kind, args.output, args.n)
    logger.info(f"wrote {path}")
    return 0

COMMANDS = {
    "sample": cmd_sample,
    "find": cmd_find,
    "sweep": cmd_experiment,
    "hitting": cmd_experiment,
    "qval": cmd_experiment,
    "pack": cmd_experiment,
    "count": cmd_count,
    "plot": cmd_plot,
}

def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    logger = setup_logger(args.verbose)

    try:
        return COMMANDS[args.command](args, logger)
    except (ConfigError, ParameterError, DimensionError, FormatError, SchemaError, SizeGuardError,
            PermanentCapExceeded, OSError) as e:
        logger.error(f"invalid configuration: {e}")
        return INVALID_CONFIG
    except ExperimentFailure as e:
        logger.error(f"experiment failed: {e}")
        return EXPERIMENT_FAILED

def run():
    sys.exit(main())

if __name__ == "__main__":
    run()
