"""Array geometry, user coordinates and near-field steering vectors.

Elements of the planar array sit at ``(n*d, 0, m*d)`` for ``-M <= m <= M`` and
``-N <= n <= N``.  Users are given in spherical coordinates ``(r, theta, phi)``
mapped to Cartesian as ``(r cos(theta) sin(phi), r sin(theta) sin(phi),
r cos(phi))``; this is the mapping whose first-order expansion reproduces the
Fresnel distance used throughout the package.

Flattened vectors are ordered with ``m`` as the outer index and ``n`` as the
inner one, i.e. entry ``(m + M) * (2N + 1) + (n + N)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ArrayConfig",
    "UserLocation",
    "PhaseModel",
    "SteeringVector",
    "element_position",
    "user_cartesian",
    "exact_distance",
    "fresnel_distance",
    "steering_vector",
    "channel_gain",
    "rayleigh_distance",
]


class PhaseModel(str, Enum):
    EXACT = "exact"
    FRESNEL = "fresnel"


@dataclass(frozen=True)
class ArrayConfig:
    """Uniform planar array with ``(2M+1) x (2N+1)`` elements.

    ``M`` is the vertical half-extent (z axis), ``N`` the horizontal one
    (x axis).  A ULA is ``M = 0``.  ``d`` defaults to half a wavelength.
    """

    M: int
    N: int
    lam: float = 0.01
    d: float | None = None

    def __post_init__(self):
        for name in ("M", "N"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"wavelength must be positive, got {self.lam!r}")
        if self.d is None:
            object.__setattr__(self, "d", self.lam / 2)
        if not (self.d > 0 and math.isfinite(self.d)):
            raise ValueError(f"element spacing must be positive, got {self.d!r}")
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "d", float(self.d))

    @property
    def t(self) -> int:
        """Number of elements."""
        return (2 * self.M + 1) * (2 * self.N + 1)

    @property
    def rayleigh_distance(self) -> float:
        return rayleigh_distance(self)

    @property
    def is_ula(self) -> bool:
        return self.M == 0

    def check_index(self, m: int, n: int) -> None:
        if not (-self.M <= m <= self.M and -self.N <= n <= self.N):
            raise IndexError(
                f"element ({m}, {n}) outside array with M={self.M}, N={self.N}")


@dataclass(frozen=True)
class UserLocation:
    """User position relative to the array centre: range in meters, angles in radians."""

    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive and finite, got {self.r!r}")
        if not 0 < self.theta < math.pi:
            raise ValueError(f"theta must lie in (0, pi), got {self.theta!r}")
        if not 0 < self.phi < math.pi:
            raise ValueError(f"phi must lie in (0, pi), got {self.phi!r}")
        for name in ("r", "theta", "phi"):
            object.__setattr__(self, name, float(getattr(self, name)))


@dataclass(frozen=True, eq=False)
class SteeringVector:
    """Unit-norm array response; ``entries`` has length ``t`` in (m outer, n inner) order."""

    entries: np.ndarray
    phase_model: PhaseModel

    def __len__(self) -> int:
        return len(self.entries)

    def inner(self, other: "SteeringVector") -> complex:
        """Return ``self^H other``."""
        return complex(np.vdot(self.entries, other.entries))


def element_position(cfg: ArrayConfig, m: int, n: int) -> np.ndarray:
    cfg.check_index(m, n)
    return np.array([n * cfg.d, 0.0, m * cfg.d])


def user_cartesian(u: UserLocation) -> np.ndarray:
    st, ct = math.sin(u.theta), math.cos(u.theta)
    sp, cp = math.sin(u.phi), math.cos(u.phi)
    return np.array([u.r * ct * sp, u.r * st * sp, u.r * cp])


def _grid(cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray]:
    m = np.repeat(np.arange(-cfg.M, cfg.M + 1, dtype=float), 2 * cfg.N + 1)
    n = np.tile(np.arange(-cfg.N, cfg.N + 1, dtype=float), 2 * cfg.M + 1)
    return m, n


def _exact_offset(cfg: ArrayConfig, u: UserLocation, m, n):
    # ||u - s|| - r = (|s|^2 - 2 s.u) / (||u - s|| + r); avoids cancellation at large r
    x, y, zc = user_cartesian(u)
    sx = np.asarray(n, dtype=float) * cfg.d
    sz = np.asarray(m, dtype=float) * cfg.d
    dist = np.sqrt((x - sx) ** 2 + y ** 2 + (zc - sz) ** 2)
    return (sx * sx + sz * sz - 2.0 * (sx * x + sz * zc)) / (dist + u.r)


def _fresnel_offset(cfg: ArrayConfig, u: UserLocation, m, n):
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    d = cfg.d
    ctsp = math.cos(u.theta) * math.sin(u.phi)
    sp2 = math.sin(u.phi) ** 2
    return (-n * d * ctsp + n * n * d * d * (1.0 - ctsp * ctsp) / (2.0 * u.r)
            - m * d * math.cos(u.phi) + m * m * d * d * sp2 / (2.0 * u.r))


def exact_distance(cfg: ArrayConfig, u: UserLocation, m: int, n: int) -> float:
    """Euclidean distance from element ``(m, n)`` to the user."""
    cfg.check_index(m, n)
    return u.r + float(_exact_offset(cfg, u, m, n))


def fresnel_distance(cfg: ArrayConfig, u: UserLocation, m: int, n: int) -> float:
    """Second-order (Fresnel) approximation of :func:`exact_distance`."""
    cfg.check_index(m, n)
    return u.r + float(_fresnel_offset(cfg, u, m, n))


def steering_vector(cfg: ArrayConfig, u: UserLocation,
                    phase_model: PhaseModel | str = PhaseModel.FRESNEL) -> SteeringVector:
    """Build the normalised response ``exp(-j 2pi/lam (dist - r)) / sqrt(t)``.

    Parameters
    ----------
    cfg : ArrayConfig
    u : UserLocation
    phase_model : {"exact", "fresnel"}
        Distance model used for the per-element phase.
    """
    phase_model = PhaseModel(phase_model)
    m, n = _grid(cfg)
    if phase_model is PhaseModel.EXACT:
        offset = _exact_offset(cfg, u, m, n)
    else:
        offset = _fresnel_offset(cfg, u, m, n)
    entries = np.exp(-1j * (2.0 * np.pi / cfg.lam) * offset) / math.sqrt(cfg.t)
    return SteeringVector(entries, phase_model)


def channel_gain(cfg: ArrayConfig, u: UserLocation) -> float:
    return math.sqrt(cfg.t) * cfg.lam / (4.0 * math.pi * u.r)


def rayleigh_distance(cfg: ArrayConfig) -> float:
    if cfg.d == cfg.lam / 2:
        return 2.0 * cfg.lam * (cfg.M ** 2 + cfg.N ** 2)
    return 8.0 * cfg.d ** 2 * (cfg.M ** 2 + cfg.N ** 2) / cfg.lam
