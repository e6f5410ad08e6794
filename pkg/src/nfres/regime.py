"""Asymptotic bounds and threshold conditions for the resolution.

Three regimes are distinguished: near-orthogonal beams (delta close to 0,
users separable), near-degenerate beams (delta close to 1, users share a
beam) and everything in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .array_model import ArrayConfig, UserLocation
from .resolution import delta_closed_form, pair_params

__all__ = [
    "Regime",
    "RegimeReport",
    "remark1_bound",
    "angle_domain_bound",
    "distance_threshold",
    "beta_threshold_upa",
    "beta_threshold_ula",
    "classify",
    "DELTA_LO",
    "DELTA_HI",
]

DELTA_LO = 0.1
DELTA_HI = 0.9
ZERO_TOL = 1e-12


class Regime(str, Enum):
    NEAR_ORTHOGONAL = "near_orthogonal"
    NEAR_DEGENERATE = "near_degenerate"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class RegimeReport:
    delta: float
    remark1_bound: float | None
    distance_threshold_m: float
    threshold_margin_m: float
    beta: float
    beta_threshold: float
    beta_threshold_reachable: bool
    equal_angles: bool
    classification: Regime


def angle_domain_bound(a: float, b: float, M: int, N: int) -> float | None:
    """Upper bound on delta when both linear coefficients are non-zero.

    Returns ``None`` when ``a`` or ``b`` vanishes (within 1e-12); the bound is
    not defined there.
    """
    if abs(a) < ZERO_TOL or abs(b) < ZERO_TOL:
        return None
    t = (2 * M + 1) * (2 * N + 1)
    sb2 = math.sin(math.pi * b) ** 2
    sa2 = math.sin(math.pi * a) ** 2
    return (1 + 2 * M + 2 * N) / t + max(
        2 * M * (2 * M + 1) / (t * t * sb2),
        2 * N * (2 * N + 1) / (t * t * sa2),
    )


def remark1_bound(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation) -> float | None:
    p = pair_params(cfg, u1, u2)
    return angle_domain_bound(p.a, p.b, cfg.M, cfg.N)


def _angle_max(M: int, N: int, theta: float, phi: float) -> float:
    sp2 = math.sin(phi) ** 2
    g = 1.0 - math.cos(theta) ** 2 * sp2
    return max(M * (M + 1) * sp2, N * (N + 1) * g)


def distance_threshold(cfg: ArrayConfig, theta: float, phi: float) -> float:
    """Range beyond which two users at a common angle are nearly indistinguishable.

    Equals ``pi * lam * max(...)`` at half-wavelength spacing; for general
    spacing the prefactor is ``4 pi d^2 / lam``.
    """
    return 4.0 * math.pi * cfg.d ** 2 / cfg.lam * _angle_max(cfg.M, cfg.N, theta, phi)


def beta_threshold_upa(M: int, N: int, theta: float, phi: float,
                       asymptotic: bool = False) -> float:
    """Normalised-range threshold ``beta = r / d_Ray`` for the planar array.

    The finite form is :func:`distance_threshold` divided by the Rayleigh
    distance.  ``asymptotic=True`` gives the large-array limit for fixed
    aspect ratio ``l = N / M``.
    """
    if asymptotic:
        if M == 0:
            raise ValueError("asymptotic UPA threshold needs M >= 1; use beta_threshold_ula")
        l2 = (N / M) ** 2
        sp2 = math.sin(phi) ** 2
        g = 1.0 - math.cos(theta) ** 2 * sp2
        return math.pi / 2 * max(l2 * sp2, g) / (l2 + 1)
    if M == 0 and N == 0:
        raise ValueError("threshold undefined for a single element")
    return math.pi / (2 * (M * M + N * N)) * _angle_max(M, N, theta, phi)


def beta_threshold_ula(theta: float) -> float:
    return math.pi * math.sin(theta) ** 2 / 2


def classify(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation,
             lo: float = DELTA_LO, hi: float = DELTA_HI) -> RegimeReport:
    """Closed-form delta together with the applicable bounds and thresholds.

    Thresholds assume a common angle; when the angles differ they are
    evaluated at the angles of the nearer user and ``equal_angles`` is False.
    """
    if not 0 <= lo < hi <= 1:
        raise ValueError(f"need 0 <= lo < hi <= 1, got lo={lo}, hi={hi}")
    delta = delta_closed_form(cfg, u1, u2).delta
    near = u1 if u1.r <= u2.r else u2
    r_min = near.r
    thr = distance_threshold(cfg, near.theta, near.phi)
    d_ray = cfg.rayleigh_distance
    beta = r_min / d_ray if d_ray > 0 else math.inf
    if cfg.M == 0 and cfg.N == 0:
        beta_thr = 0.0
    elif cfg.M == 0:
        beta_thr = beta_threshold_ula(near.theta)
    else:
        beta_thr = beta_threshold_upa(cfg.M, cfg.N, near.theta, near.phi)
    if delta <= lo:
        regime = Regime.NEAR_ORTHOGONAL
    elif delta >= hi:
        regime = Regime.NEAR_DEGENERATE
    else:
        regime = Regime.INTERMEDIATE
    return RegimeReport(
        delta=delta,
        remark1_bound=remark1_bound(cfg, u1, u2),
        distance_threshold_m=thr,
        threshold_margin_m=r_min - thr,
        beta=beta,
        beta_threshold=beta_thr,
        beta_threshold_reachable=beta_thr <= 1.0,
        equal_angles=(u1.theta == u2.theta and u1.phi == u2.phi),
        classification=regime,
    )
