"""Benchmark protocol: generate minimal targets, run each learner, report CSV.

Each (size, instance) pair gets its own derived seed and its own teacher per
algorithm, so sessions are independent and the whole run is reproducible.
Rows are written in (size, instance, algorithm) order regardless of how the
work is scheduled.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, fields
from typing import Iterable, Optional

from .equivalence import equivalent, isomorphic, minimize
from .generator import GenConfig, default_alphabet, derive_seed, gen_random_minimal_wdba
from .learner import learn
from .mp import mp_learn
from .teacher import Teacher

ALGORITHMS = ("table", "tree", "mp")

CSV_HEADER = (
    "size,instance,seed,algorithm,eq_count,mq_count,total_queries,"
    "learned_states,target_states,equivalent,wall_ms"
)


@dataclass
class BenchRecord:
    size: int
    instance: int
    seed: int
    algorithm: str
    eq_count: int
    mq_count: int
    total_queries: int
    learned_states: int
    target_states: int
    equivalent: bool
    wall_ms: int

    def csv_row(self) -> str:
        return ",".join(
            str(int(v)) if isinstance(v, bool) else str(v)
            for v in (getattr(self, f.name) for f in fields(self))
        )


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...]
    per_size: int
    algorithms: tuple[str, ...] = ALGORITHMS
    alphabet_size: int = 2
    scc_min: int = 2
    scc_max: int = 10
    seed: int = 0
    measure_time: bool = True  # off: wall_ms = 0, which makes the CSV byte-reproducible


def parse_sizes(spec: str) -> tuple[int, ...]:
    """LO:HI:STEP, or a comma-separated list of sizes."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("size range must be LO:HI:STEP")
        lo, hi, step = (int(p) for p in parts)
        if step <= 0 or lo < 1 or hi < lo:
            raise ValueError("invalid size range")
        return tuple(range(lo, hi + 1, step))
    return tuple(int(p) for p in spec.split(","))


def run_instance(cfg: BenchConfig, size: int, instance: int) -> list[BenchRecord]:
    """Generate one target and run every configured algorithm on it."""
    inst_seed = derive_seed(cfg.seed, size, instance)
    sigma = default_alphabet(cfg.alphabet_size)
    target = gen_random_minimal_wdba(
        GenConfig(size, cfg.alphabet_size, cfg.scc_min, cfg.scc_max, inst_seed), sigma
    )
    records = []
    for algorithm in cfg.algorithms:
        teacher = Teacher(target)
        started = time.perf_counter()
        if algorithm == "mp":
            result = mp_learn(teacher)
        else:
            result = learn(teacher, backend=algorithm)
        wall_ms = int((time.perf_counter() - started) * 1000) if cfg.measure_time else 0
        learned = result.automaton
        ok = equivalent(learned, target)
        if not ok:
            raise RuntimeError(
                f"{algorithm} learned a non-equivalent automaton "
                f"(size={size}, instance={instance}, seed={inst_seed})"
            )
        if algorithm in ("table", "tree") and not isomorphic(learned, minimize(target)):
            raise RuntimeError(
                f"{algorithm} result is not canonical "
                f"(size={size}, instance={instance}, seed={inst_seed})"
            )
        records.append(BenchRecord(
            size=size,
            instance=instance,
            seed=inst_seed,
            algorithm=algorithm,
            eq_count=result.eq_count,
            mq_count=result.mq_count,
            total_queries=result.eq_count + result.mq_count,
            learned_states=learned.state_count,
            target_states=target.state_count,
            equivalent=ok,
            wall_ms=wall_ms,
        ))
    return records


def run_benchmark(cfg: BenchConfig, jobs: int = 1,
                  progress: Optional[callable] = None) -> list[BenchRecord]:
    tasks = [(size, inst) for size in cfg.sizes for inst in range(cfg.per_size)]
    results: dict[tuple[int, int], list[BenchRecord]] = {}
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            async_results = {
                task: pool.apply_async(run_instance, (cfg, *task)) for task in tasks
            }
            for i, task in enumerate(tasks):
                results[task] = async_results[task].get()
                if progress:
                    progress(i + 1, len(tasks))
    else:
        for i, task in enumerate(tasks):
            results[task] = run_instance(cfg, *task)
            if progress:
                progress(i + 1, len(tasks))
    records = []
    for task in tasks:  # deterministic output order
        records.extend(results[task])
    return records


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for r in records:
        out.write(r.csv_row() + "\n")
    return out.getvalue()


def summarize(records: list[BenchRecord]) -> list[dict]:
    """Per-(size, algorithm) means in the layout of the published tables."""
    keys = sorted({(r.size, r.algorithm) for r in records}, key=lambda t: (t[0], ALGORITHMS.index(t[1]) if t[1] in ALGORITHMS else 99))
    rows = []
    for size, algorithm in keys:
        group = [r for r in records if r.size == size and r.algorithm == algorithm]
        rows.append({
            "size": size,
            "algorithm": algorithm,
            "mean_eq": sum(r.eq_count for r in group) / len(group),
            "mean_mq": sum(r.mq_count for r in group) / len(group),
            "mean_total": sum(r.total_queries for r in group) / len(group),
            "mean_wall_ms": sum(r.wall_ms for r in group) / len(group),
        })
    return rows


def summary_to_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=["size", "algorithm", "mean_eq", "mean_mq", "mean_total", "mean_wall_ms"])
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.2f}" if isinstance(v, float) else v) for k, v in row.items()})
    return out.getvalue()
