"""Minkowski-space linear algebra with the (+ - - -) metric, c = 1.

Everything here is immutable: four-vectors, future-pointing unit time-like
normals, hyperplanes ``{x : eta.x = tau}`` and sub-luminal 3-velocities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AxisNotNormalized,
    EmptyInput,
    HyperplanesNotParallel,
    InvalidEta,
    VelocityNotSubluminal,
)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

#: largest admitted speed; anything closer to 1 is treated as luminal
MAX_SPEED = 1.0 - 1e-12

DEFAULT_RANK_TOL = 1e-9


@dataclass(frozen=True)
class FourVector:
    """Contravariant 4-vector ``(t, x, y, z)``."""

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("t", "x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"non-finite component {name}={value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, arr) -> "FourVector":
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {arr.shape}")
        return cls(*arr.tolist())

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z])

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() + _arr(other))

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() - _arr(other))

    def __mul__(self, k: float) -> "FourVector":
        return FourVector.from_array(self.as_array() * float(k))

    __rmul__ = __mul__

    def __neg__(self) -> "FourVector":
        return self * -1.0


@dataclass(frozen=True)
class UnitTimelike:
    """Future-pointing unit time-like vector, the normal of a no-decay hyperplane."""

    vec: FourVector

    def __post_init__(self):
        v = self.vec
        if not isinstance(v, FourVector):
            v = FourVector.from_array(v)
            object.__setattr__(self, "vec", v)
        if v.t <= 0.0:
            raise InvalidEta(f"eta must be future-pointing, got t={v.t}")
        norm2 = lorentz_inner(v, v)
        # cancellation in t^2 - |x|^2 grows with t^2
        if abs(norm2 - 1.0) > 1e-12 * max(1.0, v.t * v.t):
            raise InvalidEta(f"eta must have unit Minkowski norm, got eta.eta={norm2!r}")

    @classmethod
    def from_vector(cls, v) -> "UnitTimelike":
        """Normalize any future-pointing time-like vector."""
        v = _arr(v)
        norm2 = float(v @ METRIC @ v)
        if norm2 <= 0.0 or v[0] <= 0.0:
            raise InvalidEta("vector is not future-pointing time-like")
        return cls(FourVector.from_array(v / math.sqrt(norm2)))

    @property
    def t(self) -> float:
        return self.vec.t

    @property
    def spatial(self) -> np.ndarray:
        return self.vec.spatial

    def as_array(self) -> np.ndarray:
        return self.vec.as_array()


@dataclass(frozen=True)
class Hyperplane:
    """The space-like plane ``{x : normal.x = tau}``."""

    normal: UnitTimelike
    tau: float

    def __post_init__(self):
        tau = float(self.tau)
        if not math.isfinite(tau):
            raise ValueError("tau must be finite")
        object.__setattr__(self, "tau", tau)

    def contains(self, x: FourVector, tol: float = 1e-10) -> bool:
        return abs(lorentz_inner(self.normal, x) - self.tau) <= tol


@dataclass(frozen=True)
class Velocity3:
    """Dimensionless 3-velocity, strictly below light speed."""

    ux: float = 0.0
    uy: float = 0.0
    uz: float = 0.0

    def __post_init__(self):
        comps = [float(self.ux), float(self.uy), float(self.uz)]
        if not all(math.isfinite(c) for c in comps):
            raise ValueError("velocity components must be finite")
        for name, c in zip(("ux", "uy", "uz"), comps):
            object.__setattr__(self, name, c)
        if math.sqrt(sum(c * c for c in comps)) > MAX_SPEED:
            raise VelocityNotSubluminal(f"|u| = {self.speed!r} is not below 1")

    @classmethod
    def from_array(cls, arr) -> "Velocity3":
        ux, uy, uz = np.asarray(arr, dtype=float).tolist()
        return cls(ux, uy, uz)

    def as_array(self) -> np.ndarray:
        return np.array([self.ux, self.uy, self.uz])

    @property
    def speed(self) -> float:
        return math.sqrt(self.ux ** 2 + self.uy ** 2 + self.uz ** 2)


def _arr(v) -> np.ndarray:
    if isinstance(v, UnitTimelike):
        return v.as_array()
    if isinstance(v, FourVector):
        return v.as_array()
    return np.asarray(v, dtype=float)


def lorentz_inner(a, b) -> float:
    """Minkowski product ``a.t*b.t - a.x*b.x - a.y*b.y - a.z*b.z``."""
    a = _arr(a)
    b = _arr(b)
    return float(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])


REST = UnitTimelike(FourVector(1.0, 0.0, 0.0, 0.0))


def eta_from_velocity(u: Velocity3) -> UnitTimelike:
    """Unit normal ``(1, u) / sqrt(1 - u^2)`` of the no-decay hyperplane of velocity ``u``."""
    if not isinstance(u, Velocity3):
        u = Velocity3.from_array(u)
    gamma = 1.0 / math.sqrt(1.0 - u.speed ** 2)
    return UnitTimelike(FourVector(gamma, gamma * u.ux, gamma * u.uy, gamma * u.uz))


def velocity_from_eta(eta: UnitTimelike) -> Velocity3:
    return Velocity3.from_array(eta.spatial / eta.t)


def boost(rapidity_axis: Sequence[float], rapidity: float, v):
    """Pure Lorentz boost of ``v`` along a unit 3-direction.

    Takes the rest vector ``(1, 0, 0, 0)`` to ``(cosh r, sinh r * n)``.
    A ``UnitTimelike`` input comes back as a ``UnitTimelike``.
    """
    n = np.asarray(rapidity_axis, dtype=float)
    if n.shape != (3,) or abs(float(np.linalg.norm(n)) - 1.0) > 1e-12:
        raise AxisNotNormalized(f"boost axis must be a unit 3-vector, got {n!r}")
    arr = _arr(v)
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    t, xs = arr[0], arr[1:]
    n_dot_x = float(n @ xs)
    out = np.empty(4)
    out[0] = ch * t + sh * n_dot_x
    out[1:] = xs + ((ch - 1.0) * n_dot_x + sh * t) * n
    if isinstance(v, UnitTimelike):
        return UnitTimelike(FourVector.from_array(out))
    return FourVector.from_array(out)


def boost_from_rest(eta: UnitTimelike, v):
    """Apply the pure boost that carries ``(1, 0, 0, 0)`` onto ``eta``."""
    spatial = eta.spatial
    norm = float(np.linalg.norm(spatial))
    if norm == 0.0:
        return v
    return boost(spatial / norm, math.asinh(norm), v)


def time_gap_between_parallel(h1: Hyperplane, h2: Hyperplane) -> float:
    """Coordinate-time shift carrying points of ``h1`` onto the parallel plane ``h2``."""
    diff = np.max(np.abs(h1.normal.as_array() - h2.normal.as_array()))
    if diff > 1e-10:
        raise HyperplanesNotParallel(f"normals differ by {diff:.3g}")
    return (h2.tau - h1.tau) / h1.normal.t


def project_spacelike(p, eta: UnitTimelike) -> FourVector:
    """Remove the component of ``p`` along ``eta``: ``p - eta (eta.p)``."""
    p_arr = _arr(p)
    e = eta.as_array()
    return FourVector.from_array(p_arr - e * lorentz_inner(e, p_arr))


def svd_rank(matrix: np.ndarray, tol: float = DEFAULT_RANK_TOL):
    """Rank of ``matrix`` from singular values above ``tol`` times the largest.

    Returns ``(rank, singular_values, u, vh)`` of the full SVD.
    """
    u, s, vh = np.linalg.svd(matrix, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        return 0, s, u, vh
    rank = int(np.count_nonzero(s > tol * s[0]))
    return rank, s, u, vh


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec) > 1e-12 * np.max(np.abs(vec))))
    return -vec if vec[k] < 0 else vec


def orthogonal_spacelike_family(etas, tol: float = DEFAULT_RANK_TOL):
    """Space-like directions Lorentz-orthogonal to every vector in ``etas``.

    The complement is the null space of the metric-lowered rows, which keeps
    the SVD Euclidean. The returned basis is orthonormal under ``-g``.

    Returns
    -------
    rank : int
        Dimension of the span of ``etas``.
    basis : list of FourVector
        ``4 - rank`` space-like vectors spanning the complement.
    """
    etas = list(etas)
    if not etas:
        raise EmptyInput("need at least one time-like vector")
    rows = np.array([_arr(e) for e in etas])
    rank, _, _, _ = svd_rank(rows, tol)
    _, _, _, vh = svd_rank(rows @ METRIC, tol)
    candidates = vh[rank:]

    basis = []
    for c in candidates:
        w = c.copy()
        for b in basis:
            # -g is positive definite on the complement of a time-like span
            w = w - (-(b @ METRIC @ w)) * b
        w = w / math.sqrt(-(w @ METRIC @ w))
        basis.append(w)
    return rank, [FourVector.from_array(_canonical_sign(b)) for b in basis]
