"""Monte Carlo campaigns. Every campaign writes its table, trial records,
summary and log into cfg.out; identical configs give identical files."""
from __future__ import annotations
from logging import Logger, LoggerAdapter, getLogger
import math

import numpy as np

from latinbox.arrays import ArrayProcess, ColoredArray, Array3D, sample_binomial, sample_process, validate_latin_box
from latinbox.enumeration import SizeGuardError, q_small, square_masks, threshold_scale
from latinbox.enumeration.containment import MAX_ORDER
from latinbox.finders import (FinderOutcome, FinderStatus, StagedParams, find_block_recursive, find_exact,
                              find_plane_matching, find_staged)
from latinbox.labcli.Config import ExperimentConfig
from latinbox.labcli.ResultWriter import ResultWriter
from latinbox.labcli.TrialPool import TrialPool, trial_jobs
from latinbox.labcli.TrialRecord import TrialRecord
from latinbox.labcli.stats import (binomial_sigma, chernoff_alpha, logistic_fit, monotone_violations, wilson_interval,
                                   z_score)
from latinbox.packing import deviation_report, process_pack
from latinbox.utils import ConfigError, LatinBoxError, ParameterError, RunLogger, Seed, derive_seed, make_rng

SWEEP_COLUMNS = ("p", "successes", "trials", "phat", "lo", "hi")
HITTING_COLUMNS = ("trial", "seed", "tau_shaft", "tau_box", "equal", "valid", "probes")
QVAL_COLUMNS = ("p", "successes", "trials", "phat", "q_exact", "sigma", "z", "chernoff_alpha", "flagged")
PACK_COLUMNS = ("n", "seed_index", "seed", "sup_deg_dev", "sup_codeg_dev", "samples", "within_band")

CHERNOFF_LEVEL = 1e-3
QVAL_CHUNK = 10_000

class ExperimentFailure(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

class ExperimentLogger(LoggerAdapter):
    def __init__(self, logger, extra=None):
        super().__init__(logger, extra)

    def process(self, msg, kwargs):
        return f"[Experiment] {msg}", kwargs

class _Campaign:
    """Output directory, pool and recording logger shared by one campaign."""
    def __init__(self, cfg: ExperimentConfig, logger: Logger | None):
        base = logger or getLogger("latinbox")
        self.cfg = cfg
        self.run_logger = RunLogger(base)
        self.log = ExperimentLogger(self.run_logger)
        self.writer = ResultWriter(cfg.out, base)
        self.pool = TrialPool(cfg.threads, base)
        # workers log to the console only, the recorded log is written in trial order
        self.worker_logger = base

    def finish(self, summary: dict) -> dict:
        self.writer.writeJson("summary.json", summary)
        self.writer.writeLog(self.run_logger)
        return summary

def _finite(value: float) -> float | None:
    return None if value is None or math.isnan(value) else value

# threshold sweeps

def check_finder_shape(cfg: ExperimentConfig):
    m, n, k = cfg.shapeDims()
    if cfg.finder == "block" and not m == n == k:
        raise ConfigError("the block finder needs the cube shape")
    if cfg.finder == "plane" and k != n:
        raise ConfigError("the plane finder needs the rectangle or cube shape")
    if cfg.finder == "staged" and k <= n:
        raise ConfigError("the staged finder needs the box shape")

def run_finder(cfg: ExperimentConfig, M: Array3D, seed: Seed = None, logger: Logger | None = None) -> FinderOutcome:
    rng = make_rng(seed)
    if cfg.finder == "exact":
        return find_exact(M, node_cap=cfg.node_cap)
    if cfg.finder == "block":
        return find_block_recursive(M)
    if cfg.finder == "plane":
        return find_plane_matching(M, delta=cfg.delta, abort_check=cfg.abort_check, uniform=cfg.uniform, seed=rng,
                                   logger=logger)

    if not M.nonEmptyShafts().all():
        return FinderOutcome(FinderStatus.EXHAUSTED, stats={"empty_shaft": True})
    params = StagedParams.fromShape(M.n, cfg.eps, cfg.retries)
    return find_staged(ColoredArray.fromGreen(M), params, rng, logger)

def sweep_trial(cfg: ExperimentConfig, p: float, seed: int, logger: Logger | None = None) -> dict:
    rng = make_rng(seed)
    M = sample_binomial(*cfg.shapeDims(), p, rng)
    outcome = run_finder(cfg, M, rng, logger)

    if outcome.success and not validate_latin_box(outcome.result, M, proper=True):
        raise RuntimeError(f"{cfg.finder} finder returned an invalid Latin box for seed {seed}")

    result = {"status": outcome.status.value, "success": outcome.success}
    if outcome.stage is not None:
        result["stage"] = outcome.stage
    retries = outcome.stats.get("b2_retries", 0) + outcome.stats.get("final_retries", 0)
    if retries:
        result["retries"] = retries
    return result

def run_threshold_sweep(cfg: ExperimentConfig, logger: Logger | None = None) -> dict:
    """Containment rate of the finder over the p grid, with Wilson intervals and
    a monotone logistic estimate of p50. Indeterminate trials are excluded from
    the rates and counted."""
    if not cfg.p_grid:
        raise ConfigError("the p grid is empty")
    check_finder_shape(cfg)
    campaign = _Campaign(cfg, logger)
    log = campaign.log

    rows = []
    records: list[TrialRecord] = []
    for gi, p in enumerate(cfg.p_grid):
        jobs = trial_jobs(derive_seed(cfg.seed, gi), cfg.trials, {"p": p})
        batch = campaign.pool.run(jobs, lambda seed, params: sweep_trial(cfg, params["p"], seed, campaign.worker_logger))

        valid = [r for r in batch if r.outcome["status"] != FinderStatus.INDETERMINATE.value]
        if len(valid) < len(batch):
            log.warning(f"p={p}: {len(batch) - len(valid)} trials hit the node cap and are excluded")
        for record in batch:
            if record.outcome.get("retries"):
                log.warning(f"p={p} trial {record.index}: staged finder retried {record.outcome['retries']} times")

        successes = sum(1 for r in valid if r.outcome["success"])
        if valid:
            lo, hi = wilson_interval(successes, len(valid))
            phat = successes / len(valid)
        else:
            phat = lo = hi = math.nan
        rows.append({"p": p, "successes": successes, "trials": len(valid), "phat": phat, "lo": lo, "hi": hi})
        records.extend(batch)
        log.info(f"p={p}: {successes}/{len(valid)}")

    usable = [row for row in rows if row["trials"]]
    if not usable:
        raise ExperimentFailure("every trial of the sweep was indeterminate")

    fit = logistic_fit([r["p"] for r in usable], [r["successes"] for r in usable], [r["trials"] for r in usable])
    violations = monotone_violations(usable)
    for a, b in violations:
        log.warning(f"containment rate drops between p={a} and p={b} beyond 3 sigma")

    scale = threshold_scale(cfg.n, cfg.eps, cfg.shape) if cfg.n > 1 else None
    summary = {
        "kind": "sweep",
        "seed": cfg.seed,
        "shape": cfg.shape,
        "dims": list(cfg.shapeDims()),
        "finder": cfg.finder,
        # a constructive finder failing proves nothing
        "one_sided": cfg.finder != "exact",
        "sampler_constant": cfg.sampler_constant if cfg.finder == "plane" else None,
        "fit": fit.toJson(),
        "threshold_scale": scale,
        "p50_over_scale": _finite(fit.p50 / scale) if scale else None,
        "monotone_violations": [list(v) for v in violations],
        "invalid": sum(cfg.trials - row["trials"] for row in rows),
        "config": cfg.toJson()
    }

    campaign.writer.writeCsv("sweep.csv", SWEEP_COLUMNS, rows)
    campaign.writer.writeJsonl("trials.jsonl", records, cfg.record_timings)
    return campaign.finish(summary)

# hitting times

class _Indeterminate(Exception):
    def __init__(self, t: int):
        super().__init__(f"node cap reached at t={t}")
        self.t = t

def _contains(process: ArrayProcess, t: int, node_cap: int | None) -> bool:
    outcome = find_exact(process.prefix(t), node_cap=node_cap)
    if outcome.status is FinderStatus.INDETERMINATE:
        raise _Indeterminate(t)
    return outcome.success

def tau_box_search(process: ArrayProcess, node_cap: int | None = None) -> tuple[int, int]:
    """(tau_box, probes). Containment is monotone in t and needs every shaft to
    be hit, so the search starts at tau_shaft: one probe there settles the
    usual case, otherwise bisection over (tau_shaft, n^2 m]."""
    lo = process.shaftHittingTime()
    probes = 1
    if _contains(process, lo, node_cap):
        return lo, probes

    hi = process.steps
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probes += 1
        if _contains(process, mid, node_cap):
            hi = mid
        else:
            lo = mid
    return hi, probes

def tau_box_linear(process: ArrayProcess, node_cap: int | None = None) -> int:
    """First t with M_t supporting a Latin box, by scanning every t."""
    for t in range(process.steps + 1):
        if _contains(process, t, node_cap):
            return t
    raise RuntimeError("the full array must support a Latin box")

def hitting_trial(cfg: ExperimentConfig, seed: int) -> dict:
    _, n, m = cfg.shapeDims()
    process = sample_process(n, m, seed)
    tau_shaft = process.shaftHittingTime()

    try:
        tau_box, probes = tau_box_search(process, cfg.node_cap)
    except _Indeterminate as e:
        return {"valid": False, "tau_shaft": tau_shaft, "tau_box": None, "equal": None, "indeterminate_at": e.t}

    return {"valid": True, "tau_shaft": tau_shaft, "tau_box": tau_box, "equal": tau_box == tau_shaft, "probes": probes}

def run_hitting_time(cfg: ExperimentConfig, logger: Logger | None = None) -> dict:
    """tau_shaft and tau_box on cfg.trials array processes of shape n x n x m,
    m = ceil((1+eps) n) for the box shape and m = n for the cube."""
    if cfg.shape == "rectangle":
        raise ConfigError("hitting times need the box or cube shape")
    if cfg.n > cfg.size_guard:
        raise SizeGuardError(f"hitting times probe find_exact and are limited to n <= {cfg.size_guard}")
    campaign = _Campaign(cfg, logger)
    log = campaign.log

    records = campaign.pool.run(trial_jobs(cfg.seed, cfg.trials), lambda seed, _: hitting_trial(cfg, seed))

    rows = []
    for record in records:
        outcome = record.outcome
        if not outcome["valid"]:
            log.warning(f"trial {record.index}: oracle indeterminate at t={outcome['indeterminate_at']}, excluded")
        elif outcome["tau_shaft"] > outcome["tau_box"]:
            log.error(f"trial {record.index}: tau_shaft {outcome['tau_shaft']} after tau_box {outcome['tau_box']}")
        rows.append({"trial": record.index, "seed": record.seed, "tau_shaft": outcome["tau_shaft"],
                     "tau_box": outcome["tau_box"], "equal": outcome["equal"], "valid": outcome["valid"],
                     "probes": outcome.get("probes")})

    valid = [r for r in records if r.outcome["valid"]]
    if not valid:
        raise ExperimentFailure("every hitting time trial was indeterminate")

    equal = sum(1 for r in valid if r.outcome["equal"])
    summary = {
        "kind": "hitting",
        "seed": cfg.seed,
        "n": cfg.n,
        "m": cfg.shapeDims()[2],
        "valid": len(valid),
        "invalid": len(records) - len(valid),
        "equal": equal,
        "equality_rate": equal / len(valid),
        "order_violations": sum(1 for r in valid if r.outcome["tau_shaft"] > r.outcome["tau_box"]),
        "config": cfg.toJson()
    }
    log.info(f"tau_box = tau_shaft in {equal} of {len(valid)} valid trials")

    campaign.writer.writeCsv("hitting.csv", HITTING_COLUMNS, rows)
    campaign.writer.writeJsonl("trials.jsonl", records, cfg.record_timings)
    return campaign.finish(summary)

# q validation

def _mask_cells(n0: int) -> np.ndarray:
    size = n0 ** 3
    return np.array([[mask >> b & 1 for b in range(size)] for mask in square_masks(n0)], dtype=bool)

def containment_successes(n0: int, p: float, trials: int, seed: Seed = None) -> int:
    """Number of binomial n0 x n0 x n0 arrays out of trials that contain an order
    n0 Latin square, checked against every square at once."""
    masks = _mask_cells(n0)
    rng = make_rng(seed)
    successes = 0
    for start in range(0, trials, QVAL_CHUNK):
        size = min(QVAL_CHUNK, trials - start)
        cells = rng.random((size, n0 ** 3)) < p
        contained = (cells[:, None, :] | ~masks[None, :, :]).all(axis=2).any(axis=1)
        successes += int(contained.sum())
    return successes

def run_q_validation(cfg: ExperimentConfig, logger: Logger | None = None) -> dict:
    """Empirical containment probability of order n0 squares against the exact
    polynomial q_n0, with z-scores and the Chernoff relative deviation at
    level 1e-3. A row is flagged when its relative deviation exceeds that
    Chernoff alpha."""
    if not 1 <= cfg.n0 <= MAX_ORDER:
        raise ParameterError(f"q validation needs 1 <= n0 <= {MAX_ORDER}, got {cfg.n0}")
    if not cfg.p_grid:
        raise ConfigError("the p grid is empty")
    campaign = _Campaign(cfg, logger)
    log = campaign.log
    q = q_small(cfg.n0)

    rows = []
    for gi, p in enumerate(cfg.p_grid):
        successes = containment_successes(cfg.n0, p, cfg.trials, derive_seed(cfg.seed, gi))
        phat = successes / cfg.trials
        q_exact = float(q(p))
        alpha = chernoff_alpha(cfg.trials, q_exact, CHERNOFF_LEVEL)
        if q_exact > 0:
            deviation = abs(phat - q_exact) / q_exact
        else:
            deviation = 0.0 if phat == 0 else math.inf
        z = z_score(phat, q_exact, cfg.trials)
        if abs(z) > 3:
            log.warning(f"p={p}: empirical {phat} is {z:.2f} sigma from q={q_exact}")

        rows.append({"p": p, "successes": successes, "trials": cfg.trials, "phat": phat, "q_exact": q_exact,
                     "sigma": binomial_sigma(q_exact, cfg.trials), "z": z, "chernoff_alpha": alpha,
                     "flagged": deviation > alpha})

    summary = {
        "kind": "qval",
        "seed": cfg.seed,
        "n0": cfg.n0,
        "max_abs_z": max(abs(row["z"]) for row in rows),
        "flagged": sum(1 for row in rows if row["flagged"]),
        "polynomial": q.toJson(),
        "config": cfg.toJson()
    }
    campaign.writer.writeCsv("qval.csv", QVAL_COLUMNS, rows)
    return campaign.finish(summary)

# packing trajectories

def pack_trial(n: int, horizon: int | None, record_every: int | None, seed: int) -> dict:
    trajectory = process_pack(n, horizon, record_every, seed)
    report = deviation_report(trajectory, n)
    return {"report": report.toJson(), "trajectory": trajectory}

def run_packing_campaign(cfg: ExperimentConfig, logger: Logger | None = None) -> dict:
    """cfg.seeds packing processes for every n of cfg.n_list. Seed index s uses
    the same derived seed for every n, so the largest and smallest n form
    matched pairs for the trend check."""
    campaign = _Campaign(cfg, logger)
    log = campaign.log

    jobs = []
    for ni, n in enumerate(cfg.n_list):
        for s in range(cfg.seeds):
            jobs.append((ni * cfg.seeds + s, derive_seed(cfg.seed, s), {"n": n, "seed_index": s}))

    records = campaign.pool.run(jobs, lambda seed, params: pack_trial(params["n"], cfg.horizon, cfg.record_every, seed))

    rows = []
    deviations: dict[tuple[int, int], float] = {}
    for record in records:
        n, s = record.params["n"], record.params["seed_index"]
        trajectory = record.outcome.pop("trajectory")
        trajectory.toCsv(campaign.writer.path(f"trajectory_n{n}_s{s}.csv"))

        report = record.outcome["report"]
        within = report["sup_deg_dev"] <= cfg.band and report["sup_codeg_dev"] <= cfg.band
        record.outcome["within_band"] = within
        if not within:
            log.warning(f"n={n} seed {s}: deviation {report['sup_deg_dev']:.4f}/{report['sup_codeg_dev']:.4f} outside {cfg.band}")

        deviations[(n, s)] = max(report["sup_deg_dev"], report["sup_codeg_dev"])
        rows.append({"n": n, "seed_index": s, "seed": record.seed, "sup_deg_dev": report["sup_deg_dev"],
                     "sup_codeg_dev": report["sup_codeg_dev"], "samples": report["samples"], "within_band": within})

    per_n = []
    for n in cfg.n_list:
        mine = [row for row in rows if row["n"] == n]
        per_n.append({
            "n": n,
            "max_sup_deg_dev": max(row["sup_deg_dev"] for row in mine),
            "max_sup_codeg_dev": max(row["sup_codeg_dev"] for row in mine),
            "within_band": sum(1 for row in mine if row["within_band"]),
            "seeds": len(mine)
        })

    trend = None
    small, large = min(cfg.n_list), max(cfg.n_list)
    if small != large:
        shrank = sum(1 for s in range(cfg.seeds) if deviations[(large, s)] <= deviations[(small, s)])
        trend = {"small": small, "large": large, "shrank": shrank, "pairs": cfg.seeds, "fraction": shrank / cfg.seeds}

    summary = {"kind": "pack", "seed": cfg.seed, "band": cfg.band, "per_n": per_n, "trend": trend, "config": cfg.toJson()}
    campaign.writer.writeCsv("pack.csv", PACK_COLUMNS, rows)
    campaign.writer.writeJsonl("trials.jsonl", records, cfg.record_timings)
    return campaign.finish(summary)

RUNNERS = {
    "sweep": run_threshold_sweep,
    "hitting": run_hitting_time,
    "qval": run_q_validation,
    "pack": run_packing_campaign,
}

def run_experiment(cfg: ExperimentConfig, logger: Logger | None = None) -> dict:
    return RUNNERS[cfg.kind](cfg, logger)

def replay_trial(cfg: ExperimentConfig, record: TrialRecord) -> dict:
    """Recomputes the outcome of a recorded sweep, hitting or packing trial."""
    if cfg.kind == "sweep":
        return sweep_trial(cfg, record.params["p"], record.seed)
    if cfg.kind == "hitting":
        return hitting_trial(cfg, record.seed)
    if cfg.kind == "pack":
        outcome = pack_trial(record.params["n"], cfg.horizon, cfg.record_every, record.seed)
        outcome.pop("trajectory")
        return outcome
    raise ParameterError(f"{cfg.kind} keeps no trial records")
