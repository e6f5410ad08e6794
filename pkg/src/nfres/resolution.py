"""Resolution of near-field beamforming, ``delta = |b1^H b2|^2``.

Three independent routes are provided:

* :func:`delta_oracle` builds both steering vectors and takes the inner product
  (O(t), exact or Fresnel phases);
* :func:`delta_sum_oracle` evaluates the quadratic-phase double sum
  ``|sum_m sum_n exp(2j pi f(m, n))|^2 / t^2`` with
  ``f(m, n) = -a m - b n + c m^2 + z n^2`` directly (O(M N));
* :func:`delta_closed_form` / :func:`delta_ula` use the Dirichlet-kernel
  closed form, O(M + N) kernel evaluations.

Under the Fresnel phase model the three agree to rounding error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .array_model import ArrayConfig, PhaseModel, UserLocation, steering_vector

__all__ = [
    "ContractError",
    "Method",
    "PairParams",
    "ResolutionResult",
    "pair_params",
    "phi_kernel",
    "delta_from_params",
    "delta_closed_form",
    "delta_ula",
    "delta_oracle",
    "delta_sum_oracle",
    "compute_delta",
    "check_ula",
    "SING_EPS",
    "BEYOND_RAYLEIGH",
]

SING_EPS = 1e-6
RANGE_SLACK = 1e-9
NEG_SLACK = 1e-12
ULA_PHI_TOL = 1e-12

BEYOND_RAYLEIGH = "beyond_rayleigh"
OUT_OF_RANGE = "out_of_range"


class ContractError(ValueError):
    """Raised when a method's preconditions do not hold for the given inputs."""


class Method(str, Enum):
    ORACLE_EXACT = "oracle_exact"
    ORACLE_FRESNEL = "oracle_fresnel"
    SUM_ORACLE = "sum_oracle"
    CLOSED_FORM = "closed_form"
    CLOSED_FORM_ULA = "closed_form_ula"


@dataclass(frozen=True)
class PairParams:
    """Linear (``a``, ``b``) and quadratic (``c``, ``z``) phase coefficients of a user pair.

    ``a``/``c`` act on the vertical index ``m``, ``b``/``z`` on the horizontal
    index ``n``.
    """

    a: float
    b: float
    c: float
    z: float

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.z == 0


@dataclass(frozen=True)
class ResolutionResult:
    delta: float
    raw: float
    method: Method
    cfg: ArrayConfig
    u1: UserLocation
    u2: UserLocation
    warnings: tuple[str, ...] = field(default=())


def pair_params(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation) -> PairParams:
    """Phase coefficients for general spacing ``d``.

    The linear terms scale with ``d/lam`` and the quadratic ones with
    ``d^2/(2 lam)``; at ``d = lam/2`` these are 1/2 and ``lam/8``.
    """
    lin = cfg.d / cfg.lam
    quad = cfg.d * cfg.d / (2.0 * cfg.lam)
    ctsp1 = math.cos(u1.theta) * math.sin(u1.phi)
    ctsp2 = math.cos(u2.theta) * math.sin(u2.phi)
    a = lin * (math.cos(u1.phi) - math.cos(u2.phi))
    b = lin * (ctsp1 - ctsp2)
    c = quad * (math.sin(u1.phi) ** 2 / u1.r - math.sin(u2.phi) ** 2 / u2.r)
    z = quad * ((1.0 - ctsp1 * ctsp1) / u1.r - (1.0 - ctsp2 * ctsp2) / u2.r)
    return PairParams(a, b, c, z)


# Kernel terms are evaluated in extended precision: for well-separated users the
# O(N) oscillating terms (each up to ~2N in size) cancel down to a tiny delta,
# and double-precision phase rounding alone would cost ~1e-7 relative accuracy.
_LD = np.longdouble
_TWO_PI = 2 * _LD("3.14159265358979323846264338327950288")


def _dirichlet_sum(x: float, y: int, length: int):
    if x == 0.0:
        return _LD(length)
    j = np.arange(length, dtype=_LD)
    return np.sum(np.cos(_TWO_PI * _LD(x) * y * (2 * j - (length - 1))))


def _phi_terms(x: float, K: int) -> np.ndarray:
    """Kernel values ``Phi(x, y, K)`` for ``y = 1 .. 2K`` (extended precision)."""
    y = np.arange(1, 2 * K + 1, dtype=_LD)
    length = 2 * K - y + 1
    arg = _TWO_PI * _LD(x) * y
    den = np.sin(arg)
    singular = np.abs(den) < SING_EPS
    out = np.empty_like(y)
    ok = ~singular
    out[ok] = np.sin(arg[ok] * length[ok]) / den[ok]
    for i in np.flatnonzero(singular):
        out[i] = _dirichlet_sum(x, int(y[i]), int(length[i]))
    return out


def phi_kernel(x: float, y: int, K: int) -> float:
    """Dirichlet-type kernel ``sin(2pi x y L) / sin(2pi x y)`` with ``L = 2K - y + 1``.

    Where ``|sin(2pi x y)| < SING_EPS`` the equivalent finite cosine sum
    ``sum_{j<L} cos(2pi x y (2j - L + 1))`` is evaluated instead, which also
    gives the correct limit at the removable singularities.
    """
    if K < 1 or not 1 <= y <= 2 * K:
        raise ValueError(f"phi_kernel needs K >= 1 and 1 <= y <= 2K, got y={y}, K={K}")
    length = 2 * K - y + 1
    arg = _TWO_PI * _LD(x) * y
    den = np.sin(arg)
    if abs(den) < SING_EPS:
        return float(_dirichlet_sum(x, y, length))
    return float(np.sin(arg * length) / den)


def _kernel_sum(x: float, w: float, K: int):
    # sum_{y=1}^{2K} Phi(x, y, K) cos(2 pi w y)
    if K == 0:
        return _LD(0)
    y = np.arange(1, 2 * K + 1, dtype=_LD)
    terms = _phi_terms(x, K) * np.cos(_TWO_PI * _LD(w) * y)
    return _exact_sum(terms)


def _exact_sum(values) -> np.longdouble:
    """Sum extended-precision values with a single final rounding.

    Each value splits exactly into two doubles; ``math.fsum`` returns the
    correctly rounded total and a second pass recovers the residual.
    """
    v = np.asarray(values, dtype=_LD)
    hi = v.astype(np.float64)
    parts = np.concatenate([hi, (v - hi).astype(np.float64)]).tolist()
    total = math.fsum(parts)
    parts.append(-total)
    return _LD(total) + _LD(math.fsum(parts))


def delta_from_params(params: PairParams, M: int, N: int) -> float:
    """Closed-form resolution (unclamped) from the phase coefficients."""
    t = _LD((2 * M + 1) * (2 * N + 1))
    i2 = 2 * (2 * M + 1) * _kernel_sum(params.z, params.b, N)
    i3 = 2 * (2 * N + 1) * _kernel_sum(params.c, params.a, M)
    return float(_exact_sum([t, i2, i3, i2 * i3 / t]) / (t * t))


def delta_sum_oracle(params: PairParams, M: int, N: int) -> float:
    """Brute-force double sum over all ``(m, n)``; no use of separability."""
    if M < 0 or N < 0:
        raise ValueError("M and N must be non-negative")
    m = np.arange(-M, M + 1, dtype=float)[:, None]
    n = np.arange(-N, N + 1, dtype=float)[None, :]
    f = -params.a * m - params.b * n + params.c * m * m + params.z * n * n
    s = np.exp(2j * np.pi * f).sum()
    t = (2 * M + 1) * (2 * N + 1)
    return float(s.real ** 2 + s.imag ** 2) / (t * t)


def _warnings(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation) -> list[str]:
    out = []
    if max(u1.r, u2.r) > cfg.rayleigh_distance:
        out.append(BEYOND_RAYLEIGH)
    return out


def _result(raw: float, method: Method, cfg, u1, u2) -> ResolutionResult:
    warns = _warnings(cfg, u1, u2)
    delta = raw
    if -NEG_SLACK <= raw < 0.0:
        delta = 0.0
    elif 1.0 < raw <= 1.0 + RANGE_SLACK:
        delta = 1.0
    elif not 0.0 <= raw <= 1.0:
        warns.append(OUT_OF_RANGE)
    return ResolutionResult(delta, raw, method, cfg, u1, u2, tuple(warns))


def delta_closed_form(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation) -> ResolutionResult:
    raw = delta_from_params(pair_params(cfg, u1, u2), cfg.M, cfg.N)
    return _result(raw, Method.CLOSED_FORM, cfg, u1, u2)


def check_ula(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation) -> None:
    if cfg.M != 0:
        raise ContractError(f"ULA closed form needs M = 0, got M={cfg.M}")
    for u in (u1, u2):
        if abs(u.phi - math.pi / 2) > ULA_PHI_TOL:
            raise ContractError(f"ULA closed form needs phi = pi/2, got phi={u.phi!r}")


def delta_ula(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation) -> ResolutionResult:
    """Linear-array specialisation (``M = 0``, both users at ``phi = pi/2``)."""
    check_ula(cfg, u1, u2)
    p = pair_params(cfg, u1, u2)
    L = _LD(2 * cfg.N + 1)
    raw = float(1 / L + 2 / (L * L) * _kernel_sum(p.z, p.b, cfg.N))
    return _result(raw, Method.CLOSED_FORM_ULA, cfg, u1, u2)


def delta_oracle(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation,
                 phase_model: PhaseModel | str = PhaseModel.FRESNEL) -> ResolutionResult:
    phase_model = PhaseModel(phase_model)
    b1 = steering_vector(cfg, u1, phase_model)
    b2 = steering_vector(cfg, u2, phase_model)
    ip = b1.inner(b2)
    raw = ip.real ** 2 + ip.imag ** 2
    method = Method.ORACLE_EXACT if phase_model is PhaseModel.EXACT else Method.ORACLE_FRESNEL
    return _result(raw, method, cfg, u1, u2)


def compute_delta(cfg: ArrayConfig, u1: UserLocation, u2: UserLocation,
                  method: Method | str = Method.CLOSED_FORM) -> ResolutionResult:
    """Dispatch on a method tag; ``"ula"`` is accepted for ``closed_form_ula``."""
    if method == "ula":
        method = Method.CLOSED_FORM_ULA
    method = Method(method)
    if method is Method.CLOSED_FORM:
        return delta_closed_form(cfg, u1, u2)
    if method is Method.CLOSED_FORM_ULA:
        return delta_ula(cfg, u1, u2)
    if method is Method.ORACLE_EXACT:
        return delta_oracle(cfg, u1, u2, PhaseModel.EXACT)
    if method is Method.ORACLE_FRESNEL:
        return delta_oracle(cfg, u1, u2, PhaseModel.FRESNEL)
    raw = delta_sum_oracle(pair_params(cfg, u1, u2), cfg.M, cfg.N)
    return _result(raw, Method.SUM_ORACLE, cfg, u1, u2)
