"""Survival amplitudes, lifetimes and velocity expectations of unstable quantons.

Notation: ``s = -p.p >= 0`` is the squared space-like momentum of an SLM
eigenstate, so each spectral mass ``mu`` evolves with energy
``E = sqrt(mu^2 + s)`` along the normal ``eta`` of its no-decay hyperplane.
``p = 0`` is the velocity eigenstate whose velocity is fixed by ``eta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .errors import (
    InvalidParameters,
    SpacelikeMomentumRequired,
    SupportTouchesZeroMass,
    TailNotDecaying,
)
from .minkowski import (
    FourVector,
    UnitTimelike,
    Velocity3,
    boost_from_rest,
    eta_from_velocity,
    lorentz_inner,
)
from .spectra import SpectralDensity

CLOSED_FORM = "ClosedForm"
NUMERIC_TAU = "NumericTau"

#: tau samples evaluated per block in the uniform-grid amplitude kernel
_BLOCK = 512
#: refuse lifetime integrations needing more tau samples than this
MAX_TAU_SAMPLES = 4_000_000


@dataclass(frozen=True)
class SlmLabel:
    """Label ``(p, eta)`` of a space-like momentum eigenstate, ``eta.p = 0``."""

    eta: UnitTimelike
    p: FourVector
    alpha: str = ""

    def __post_init__(self):
        if not isinstance(self.p, FourVector):
            object.__setattr__(self, "p", FourVector.from_array(self.p))
        scale = max(1.0, float(np.max(np.abs(self.p.as_array()))) * self.eta.t)
        if abs(lorentz_inner(self.eta, self.p)) > 1e-10 * scale:
            raise SpacelikeMomentumRequired("p must be Lorentz-orthogonal to eta")
        if lorentz_inner(self.p, self.p) > 1e-10 * scale:
            raise SpacelikeMomentumRequired("p must be space-like or zero")

    @classmethod
    def from_rest_momentum(cls, eta: UnitTimelike, q: Sequence[float],
                           alpha: str = "") -> "SlmLabel":
        """Label whose momentum is the 3-vector ``q`` in the frame where ``eta`` is at rest."""
        p = boost_from_rest(eta, FourVector(0.0, *q))
        p = p - eta.vec * lorentz_inner(eta, p)  # clean rounding along eta
        return cls(eta, p, alpha)

    @property
    def s(self) -> float:
        return max(-lorentz_inner(self.p, self.p), 0.0)


@dataclass(frozen=True, eq=False)
class SurvivalCurve:
    times: np.ndarray
    amplitudes: np.ndarray
    probabilities: np.ndarray


@dataclass(frozen=True)
class LifetimeResult:
    value: float
    method: str
    tail_bound: float = 0.0
    tau_max: float | None = field(default=None, compare=False)


def _check(s: float, hbar: float) -> None:
    if not s >= 0:
        raise SpacelikeMomentumRequired(f"s = -p.p must be >= 0, got {s!r}")
    if not hbar > 0:
        raise InvalidParameters("hbar must be positive")


def survival_amplitude(d: SpectralDensity, s: float, tau: float, hbar: float = 1.0) -> complex:
    """Overlap of an SLM eigenstate with itself after evolving ``tau`` along eta.

    ``I(tau) = integral sigma(mu) exp(-i sqrt(mu^2 + s) tau / hbar) dmu``.
    """
    _check(s, hbar)
    phase = d.energies(s) * (tau / hbar)
    return complex(np.sum((d.weights * d.values) * np.exp(-1j * phase)))


def _amplitudes(d: SpectralDensity, s: float, taus: np.ndarray, hbar: float) -> np.ndarray:
    coef = d.weights * d.values
    energies = d.energies(s) / hbar
    out = np.empty(taus.shape, dtype=complex)
    for start in range(0, taus.size, _BLOCK):
        chunk = taus[start:start + _BLOCK]
        out[start:start + _BLOCK] = np.exp(-1j * np.outer(chunk, energies)) @ coef
    return out


def _uniform_amplitudes(d, s, tau0, dtau, n, hbar) -> np.ndarray:
    """``I`` on ``tau0 + k*dtau``; each block is an exact phase shift of one kernel."""
    coef = d.weights * d.values
    energies = d.energies(s) / hbar
    kernel = np.exp(-1j * np.outer(energies, dtau * np.arange(_BLOCK)))
    out = np.empty(n, dtype=complex)
    for start in range(0, n, _BLOCK):
        m = min(_BLOCK, n - start)
        shifted = coef * np.exp(-1j * energies * (tau0 + start * dtau))
        out[start:start + m] = shifted @ kernel[:, :m]
    return out


def survival_curve(d: SpectralDensity, s: float, taus, hbar: float = 1.0) -> SurvivalCurve:
    _check(s, hbar)
    taus = np.asarray(taus, dtype=float).ravel()
    amps = _amplitudes(d, s, taus, hbar)
    return SurvivalCurve(taus, amps, np.abs(amps) ** 2)


def lifetime_closed_form(d: SpectralDensity, s: float, hbar: float = 1.0) -> LifetimeResult:
    """Lifetime from the spectral integral ``pi hbar int sigma^2 sqrt(mu^2+s)/mu``."""
    _check(s, hbar)
    if d.mu_min <= 0.0:
        raise SupportTouchesZeroMass("spectral support reaches mu = 0")
    if d.sharp:
        raise TailNotDecaying("a sharp mass spectrum never decays")
    integrand = d.values ** 2 * d.energies(s) / d.nodes
    value = math.pi * hbar * float(np.sum(d.weights * integrand))
    return LifetimeResult(value, CLOSED_FORM)


def _energy_spread(d: SpectralDensity, s: float) -> float:
    """Interquartile range of the energy distribution, a robust width."""
    energies = d.energies(s)
    order = np.argsort(energies)
    cdf = np.cumsum((d.weights * d.values)[order])
    q1, q3 = np.interp([0.25, 0.75], cdf / cdf[-1], energies[order])
    return float(q3 - q1)


def _segment_integral(probs: np.ndarray, dtau: float) -> float:
    # Simpson needs an even number of intervals; the caller guarantees it
    return float(simpson(probs, dx=dtau))


def lifetime_numeric(d: SpectralDensity, s: float, hbar: float = 1.0,
                     rel_tol: float = 1e-4) -> LifetimeResult:
    """Integrate ``|I(tau)|^2`` over tau directly.

    The tau step is ``hbar / (10 E_max)``. The window starts at eight inverse
    energy widths and doubles until an exponential fitted to the last tenth
    of the window leaves a tail below ``rel_tol`` of the accumulated area and
    the previous window's extrapolated total agrees with the new area.
    """
    _check(s, hbar)
    if not 0 < rel_tol <= 0.1:
        raise InvalidParameters("rel_tol must lie in (0, 0.1]")
    if d.sharp:
        raise TailNotDecaying("a sharp mass spectrum never decays")
    e_max = float(np.max(d.energies(s)))
    dtau = hbar / (10.0 * e_max)
    spread = _energy_spread(d, s)
    if not spread > 0:
        raise TailNotDecaying("energy distribution has no spread")

    n_total = 2 * math.ceil(4.0 * hbar / spread / dtau)  # even interval count
    done = 0
    total = 0.0
    previous = math.inf
    probs = np.empty(0)
    while True:
        if n_total > MAX_TAU_SAMPLES:
            raise TailNotDecaying(
                f"survival probability not integrable within {MAX_TAU_SAMPLES} samples")
        new = _uniform_amplitudes(d, s, done * dtau, dtau, n_total - done + 1, hbar)
        seg = np.abs(new) ** 2
        total += _segment_integral(seg, dtau)
        probs = np.concatenate([probs[:-1], seg]) if probs.size else seg
        done = n_total

        n_fit = max(n_total // 10, 8)
        tail_taus = dtau * np.arange(n_total - n_fit, n_total + 1)
        tail_p = probs[-(n_fit + 1):]
        # nothing left above rounding, whatever the shape of the tail
        bound = float(np.max(tail_p)) * tail_taus[-1]
        if np.any(tail_p <= 0) or bound < 1e-3 * rel_tol * total:
            return LifetimeResult(total, NUMERIC_TAU, bound, n_total * dtau)
        slope, intercept = np.polyfit(tail_taus, np.log(tail_p), 1)
        if slope >= 0:
            raise TailNotDecaying("survival probability is not decaying at the window edge")
        tail = math.exp(intercept + slope * tail_taus[-1]) / -slope
        # the previous window's extrapolation must have predicted this area,
        # otherwise the tail is not exponential (e.g. a mass threshold)
        predicted = abs(total - previous) < rel_tol * total
        if tail < rel_tol * total and predicted:
            return LifetimeResult(total, NUMERIC_TAU, tail, n_total * dtau)
        previous = total + tail
        n_total *= 2


def shirokov_time(tau0: float, u: Velocity3) -> float:
    """Coordinate-time lifetime ``tau0 sqrt(1 - u^2)`` of a velocity eigenstate."""
    if not tau0 > 0:
        raise InvalidParameters("tau0 must be positive")
    eta = eta_from_velocity(u)
    return tau0 / eta.t


def velocity_eigenstate_survival(d: SpectralDensity, u: Velocity3, t: float,
                                 hbar: float = 1.0) -> complex:
    """Survival amplitude after coordinate time ``t`` for sharp velocity ``u``.

    Time evolution by ``t`` equals evolution along eta by ``eta0 * t``.
    """
    eta0 = eta_from_velocity(u).t
    return survival_amplitude(d, 0.0, eta0 * t, hbar)


def velocity_eigenstate_curve(d: SpectralDensity, u: Velocity3, times,
                              hbar: float = 1.0) -> SurvivalCurve:
    eta0 = eta_from_velocity(u).t
    times = np.asarray(times, dtype=float).ravel()
    curve = survival_curve(d, 0.0, eta0 * times, hbar)
    return SurvivalCurve(times, curve.amplitudes, curve.probabilities)


def velocity_eigenstate_half_life(d: SpectralDensity, u: Velocity3,
                                  hbar: float = 1.0, level: float = 0.5) -> float:
    """Coordinate time at which the survival probability first reaches ``level``.

    The curve is scanned in blocks on a step of a quarter of the fastest
    phase period; the crossing is then refined by Brent's method on the
    scalar amplitude.
    """
    eta0 = eta_from_velocity(u).t
    step = hbar / (4.0 * float(np.max(d.energies(0.0))) * eta0)
    t_max = 64.0 * hbar / max(_energy_spread(d, 0.0), 1e-300) / eta0
    prev_t, t0 = 0.0, 0.0
    while t0 <= t_max:
        times = t0 + step * np.arange(_BLOCK)
        probs = velocity_eigenstate_curve(d, u, times, hbar).probabilities
        below = np.nonzero(probs <= level)[0]
        if below.size:
            k = int(below[0])
            if k == 0 and t0 == 0.0:
                return 0.0
            lo = times[k - 1] if k else prev_t
            return brentq(lambda t: abs(velocity_eigenstate_survival(d, u, t, hbar)) ** 2 - level,
                          lo, times[k], xtol=1e-14, rtol=4 * np.finfo(float).eps)
        prev_t = times[-1]
        t0 = prev_t + step
    raise TailNotDecaying(f"survival probability stays above {level} up to t = {t_max}")


def mean_inverse_energy(d: SpectralDensity, s: float) -> float:
    """Spectral mean of ``1 / sqrt(mu^2 + s)``."""
    if not s >= 0:
        raise SpacelikeMomentumRequired(f"s must be >= 0, got {s!r}")
    return float(np.sum(d.weights * d.values / d.energies(s)))


def velocity_expectation_and_spread(d: SpectralDensity, label: SlmLabel):
    """Mean and root-variance of the hyperplane velocity ``K(eta) / (eta.P)``.

    On an SLM eigenstate ``K(eta)`` is sharp at ``p`` while ``eta.P`` is
    distributed as ``sqrt(mu^2 + s)``, so the velocity is ``p / E``.
    """
    s = label.s
    m1 = mean_inverse_energy(d, s)
    m2 = float(np.sum(d.weights * d.values / (d.nodes ** 2 + s)))
    var = s * (m2 - m1 * m1)
    spread = math.sqrt(var) if var > 0 else 0.0
    return label.p * m1, spread


def instantaneous_velocity_expectation(d: SpectralDensity, label: SlmLabel) -> Velocity3:
    """Spectral mean of the instantaneous 3-velocity ``P / P0``.

    Per mass, ``P = p + eta E`` with ``E = sqrt(mu^2 + s)``.
    """
    energies = d.energies(label.s)
    p0, p_vec = label.p.t, label.p.spatial
    eta0, eta_vec = label.eta.t, label.eta.spatial
    velocity = (p_vec[None, :] + energies[:, None] * eta_vec[None, :]) \
        / (p0 + eta0 * energies)[:, None]
    return Velocity3.from_array((d.weights * d.values) @ velocity)
