"""Median wall-clock timing of the closed form against the steering-vector oracle."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .array_model import ArrayConfig, PhaseModel, UserLocation
from .resolution import delta_closed_form, delta_oracle

__all__ = ["BenchRow", "bench_pair", "bench", "format_table"]


@dataclass(frozen=True)
class BenchRow:
    M: int
    N: int
    t: int
    closed_form_s: float
    oracle_s: float

    @property
    def ratio(self) -> float:
        return self.oracle_s / self.closed_form_s


def bench_pair(cfg: ArrayConfig, seed: int = 0) -> tuple[UserLocation, UserLocation]:
    """Reproducible random user pair inside the near field of ``cfg``."""
    rng = np.random.default_rng(seed)
    r_hi = max(cfg.rayleigh_distance, 1.0)
    users = []
    for _ in range(2):
        r = rng.uniform(0.5, r_hi)
        theta, phi = rng.uniform(0.05, math.pi - 0.05, size=2)
        users.append(UserLocation(float(r), float(theta), float(phi)))
    return users[0], users[1]


def _median_time(fn, reps: int) -> float:
    fn()  # warm-up
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench(sizes: list[tuple[int, int]], reps: int = 20, seed: int = 0) -> list[BenchRow]:
    if not sizes:
        raise ValueError("sizes must be non-empty")
    if reps < 1:
        raise ValueError("reps must be positive")
    rows = []
    for M, N in sizes:
        cfg = ArrayConfig(M, N)
        u1, u2 = bench_pair(cfg, seed)
        cf = _median_time(lambda: delta_closed_form(cfg, u1, u2), reps)
        orc = _median_time(lambda: delta_oracle(cfg, u1, u2, PhaseModel.FRESNEL), reps)
        rows.append(BenchRow(M, N, cfg.t, cf, orc))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'M':>5} {'N':>5} {'t':>9} {'closed_form_ms':>15} {'oracle_ms':>11} {'ratio':>8}"]
    for r in rows:
        lines.append(f"{r.M:>5} {r.N:>5} {r.t:>9} {r.closed_form_s * 1e3:>15.4f} "
                     f"{r.oracle_s * 1e3:>11.3f} {r.ratio:>8.1f}")
    return "\n".join(lines)
