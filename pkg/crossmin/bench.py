"""
Benchmark matrix: instances x configs x permutation seeds.

Each instance gets one ``Initialization`` shared by all of its runs. Runs are
independent and dispatched with joblib; results come back in matrix order.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from .graph import Graph
from .heuristics import Initialization, run
from .models import CSV_COLUMNS, AggregateRecord, HeuristicConfig, RunRecord

logger = logging.getLogger(__name__)


def run_seed(master_seed: int, index: int) -> int:
    """Seed of permutation ``index`` under ``master_seed``."""
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1, dtype=np.uint64)[0])


def _run_one(instance: str, g: Graph, init: Initialization, cfg: HeuristicConfig) -> RunRecord:
    try:
        return run(cfg, g, init, instance=instance)
    except Exception as exc:
        logger.warning("%s %s seed=%d failed: %s", instance, cfg.name, cfg.seed, exc)
        return RunRecord(instance=instance, config=cfg.name, seed=cfg.seed, error=f"{type(exc).__name__}: {exc}")


def run_matrix(
    instances: list[tuple[str, Graph]],
    configs: list[HeuristicConfig],
    k_permutations: int,
    parallelism: int = 1,
    master_seed: int = 0,
    subgraph_seed: int | None = None,
) -> list[RunRecord]:
    """One record per (instance, config, permutation), in that order."""
    if k_permutations < 1:
        raise ValueError("k_permutations must be at least 1")
    inits = {name: Initialization.compute(g, subgraph_seed) for name, g in instances}
    seeds = [run_seed(master_seed, i) for i in range(k_permutations)]
    jobs = [
        (name, g, inits[name], cfg.with_seed(seed))
        for name, g in instances
        for cfg in configs
        for seed in seeds
    ]
    logger.info("running %d jobs on %d workers", len(jobs), parallelism)
    return Parallel(n_jobs=parallelism)(delayed(_run_one)(*job) for job in jobs)


def records_frame(records: list[RunRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([r.model_dump() for r in records], columns=CSV_COLUMNS)
    frame["crossings"] = frame["crossings"].astype("Int64")
    return frame


def aggregate(records: list[RunRecord]) -> list[AggregateRecord]:
    """BEST, mean and relative improvement per (instance, config) over successful runs."""
    frame = records_frame([r for r in records if r.ok])
    if frame.empty:
        return []
    grouped = (
        frame.groupby(["instance", "config"], sort=True)["crossings"]
        .agg(permutations="count", best="min", mean="mean")
        .reset_index()
    )
    result = []
    for row in grouped.itertuples(index=False):
        mean = float(row.mean)
        result.append(
            AggregateRecord(
                instance=row.instance,
                config=row.config,
                permutations=int(row.permutations),
                best=int(row.best),
                mean=mean,
                relative_improvement=1.0 if mean == 0 else float(row.best) / mean,
            )
        )
    return result


def best_overall(records: list[RunRecord]) -> dict[str, int]:
    """BEST per instance over every config and seed."""
    frame = records_frame([r for r in records if r.ok])
    if frame.empty:
        return {}
    return {name: int(value) for name, value in frame.groupby("instance")["crossings"].min().items()}


def emit_csv(
    rows: list[RunRecord] | list[AggregateRecord],
    path: str | Path,
    columns: list[str] = CSV_COLUMNS,
) -> None:
    """Write run records (``CSV_COLUMNS``) or aggregates (``AGGREGATE_COLUMNS``) as CSV."""
    frame = pd.DataFrame([r.model_dump() for r in rows], columns=columns)
    if "crossings" in frame:
        frame["crossings"] = frame["crossings"].astype("Int64")
    keys = ["instance", "config", "seed"] if "seed" in columns else ["instance", "config"]
    frame = frame.sort_values(keys, kind="stable")
    frame.to_csv(path, index=False, lineterminator="\n")


def read_records(path: str | Path) -> list[RunRecord]:
    frame = pd.read_csv(
        path,
        dtype={"instance": str, "config": str},
        keep_default_na=False,
        na_values={"crossings": [""]},
    )
    frame["crossings"] = frame["crossings"].astype("Int64")
    records = []
    for row in frame.to_dict(orient="records"):
        values = {key: int(row[key]) for key in ("seed", "time_us", "alpha_removed", "beta_removed", "sweeps")}
        crossings = row["crossings"]
        values["crossings"] = None if pd.isna(crossings) else int(crossings)
        # files written before the error column existed
        values["error"] = str(row.get("error", "")) or None
        records.append(RunRecord(instance=row["instance"], config=row["config"], **values))
    return records
