"""Solver dispatch, file-level verification and the benchmark harness."""

from __future__ import annotations

import csv
import io as _io
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .cesd import GuardExceeded
from .geometry import Tolerance, smallest_stabbing_disk
from .graphs import PlaneGraph, edge_stats
from .io import Instance, SolutionFile, generate, to_float_point
from .solvers import GuaranteeWarning, exact_min_stab, grid_cover, ipgd_approx
from .verify import VerifyResult, verify_stabbing

ALGORITHMS = ("exact", "approx-endpoints", "approx-midpoints", "grid")
EXACT_MAX_EDGES = 48
BENCH_HEADER = ["instance", "n", "m", "d_min", "d_max", "mu", "R", "algorithm", "count", "opt", "ratio", "ms"]


def thread_cap(default: int = 1) -> int:
    """Parallelism limit from ``SEGSTAB_THREADS`` (at least 1)."""
    raw = os.environ.get("SEGSTAB_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def float_graph(g: PlaneGraph) -> PlaneGraph:
    return PlaneGraph(tuple(to_float_point(p) for p in g.vertices), g.edges)


def default_tol(g: PlaneGraph) -> Tolerance:
    return Tolerance.for_points([to_float_point(p) for p in g.vertices])


def solve(instance: Instance, algorithm: str = "exact", r: Optional[float] = None,
          lam: Optional[float] = None, tol: Optional[float] = None,
          exact_max_edges: int = EXACT_MAX_EDGES) -> SolutionFile:
    g = float_graph(instance.graph)
    radius = float(instance.r if r is None else r)
    t = Tolerance(tol) if tol is not None else default_tol(g)
    start = time.perf_counter()
    if algorithm == "exact":
        if len(g.edges) > exact_max_edges:
            raise GuardExceeded(f"{len(g.edges)} edges exceeds the exact guard of {exact_max_edges}")
        sol = exact_min_stab(g, radius, tol=t)
    elif algorithm in ("approx-endpoints", "approx-midpoints"):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", GuaranteeWarning)
            sol = ipgd_approx(g, radius, anchor=algorithm.split("-")[1], lam=lam)
    elif algorithm == "grid":
        sol = grid_cover(g, radius, tol=t)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    ms = (time.perf_counter() - start) * 1000.0
    stats = {"count": sol.count, "ms": round(ms, 3)}
    stats.update({k: v for k, v in sol.meta.items() if isinstance(v, (int, float))})
    return SolutionFile(sol.centers, radius, sol.algorithm, sol.certificate, stats)


def verify_solution(instance: Instance, solution: SolutionFile, tol: Optional[float] = None) -> VerifyResult:
    """Exact check at radius ``r + tol`` (tol defaults to 1e-9 of the bounding-box diagonal)."""
    eps = tol if tol is not None else default_tol(instance.graph).eps
    return verify_stabbing(instance.graph.vertices, instance.graph.edges, solution.centers,
                           solution.r, eps, solution.certificate)


# ---------------------------------------------------------------------------
# Benchmarks
# ---------------------------------------------------------------------------


@dataclass
class BenchConfig:
    classes: Sequence[str] = ("delaunay",)
    sizes: Sequence[int] = (16, 32, 64)
    seeds: Sequence[int] = (0,)
    distribution: str = "unit-square"
    algorithms: Sequence[str] = ("approx-endpoints", "approx-midpoints", "grid")
    exact_max_edges: int = 12
    r: Optional[float] = None
    lam: Optional[float] = None

    @classmethod
    def from_dict(cls, doc: Dict) -> "BenchConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown bench keys: {sorted(unknown)}")
        return cls(**doc)


@dataclass
class BenchRecord:
    instance: str
    n: int
    m: int
    d_min: float
    d_max: float
    mu: float
    R: float
    algorithm: str
    count: int
    opt: Optional[int]
    ratio: Optional[float]
    ms: float

    def row(self) -> List[str]:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return f"{v:.6g}"
            return str(v)
        return [fmt(getattr(self, k)) for k in BENCH_HEADER]


def _bench_one(cfg: BenchConfig, kind: str, n: int, seed: int) -> List[BenchRecord]:
    inst = generate(kind, n, cfg.distribution, seed, r=cfg.r)
    g = inst.graph
    s = edge_stats(g)
    _, big_r = smallest_stabbing_disk(g.segments)
    name = f"{kind}-{cfg.distribution}-n{n}-s{seed}"
    opt = None
    records = []
    if len(g.edges) <= cfg.exact_max_edges:
        sol = solve(inst, "exact")
        opt = sol.stats["count"]
        records.append(BenchRecord(name, len(g.vertices), len(g.edges), s.d_min, s.d_max, s.mu, big_r,
                                   "exact", opt, opt, 1.0, sol.stats["ms"]))
    for alg in cfg.algorithms:
        if alg == "exact":
            continue
        sol = solve(inst, alg, lam=cfg.lam)
        ratio = sol.stats["count"] / opt if opt else None
        records.append(BenchRecord(name, len(g.vertices), len(g.edges), s.d_min, s.d_max, s.mu, big_r,
                                   alg, sol.stats["count"], opt, ratio, sol.stats["ms"]))
    return records


def bench(cfg: BenchConfig, sink=None, threads: Optional[int] = None) -> List[BenchRecord]:
    """Run every (class, size, seed) job and write CSV rows in job order.

    Jobs may run concurrently (``SEGSTAB_THREADS``); rows still go through
    one writer in submission order.
    """
    jobs = [(kind, n, seed) for kind in cfg.classes for n in sorted(cfg.sizes) for seed in cfg.seeds]
    workers = thread_cap() if threads is None else min(max(1, threads), thread_cap(max(1, threads)))
    writer = csv.writer(sink, lineterminator="\n") if sink is not None else None
    if writer:
        writer.writerow(BENCH_HEADER)
    out: List[BenchRecord] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_bench_one, cfg, *job) for job in jobs]
        for fut in futures:
            for rec in fut.result():
                out.append(rec)
                if writer:
                    writer.writerow(rec.row())
    return out


def bench_csv(cfg: BenchConfig, threads: Optional[int] = None) -> str:
    buf = _io.StringIO()
    bench(cfg, buf, threads)
    return buf.getvalue()
