"""Mass spectral densities on composite Gauss-Legendre grids.

A density is stored as its values on quadrature nodes, normalized so the
grid rule integrates it to one. Panel edges follow the inverse CDF of a
mixture of the density itself and a uniform density, which packs nodes into
the resonance peak while keeping the wings resolved for oscillatory use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np
from scipy.special import erf

from .errors import (
    InvalidParameters,
    NegativeDensity,
    NegativeMass,
    NonMonotoneGrid,
)

PANEL_ORDER = 16
DEFAULT_NODES = 4096
#: fraction of panels placed by the density's own CDF; the rest are uniform
PEAK_FRACTION = 0.5
#: lower support edge for built-in families, as a fraction of M
MASS_FLOOR = 1e-3
#: widths below this fraction of M are treated as a sharp mass
SHARP_WIDTH = 1e-12

BREIT_WIGNER = "breit_wigner"
GAUSSIAN = "gaussian"
TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    """Normalized mass distribution sampled on a quadrature grid.

    ``values[i]`` is the density at ``nodes[i]``; ``weights`` are the
    quadrature weights, so ``sum(weights * values * f(nodes))`` is the
    expectation of ``f``. A sharp density has a single node of weight 1.
    """

    kind: str
    params: Mapping[str, float]
    mu_min: float
    mu_max: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    alpha: str = ""
    sharp: bool = False
    _shape: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    _scale: float = field(default=1.0, repr=False)

    def __post_init__(self):
        if self.mu_min < 0:
            raise NegativeMass(f"mu_min = {self.mu_min} is negative")
        if np.any(self.values < 0):
            raise NegativeDensity("density is negative on the grid")
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))
        for name in ("nodes", "weights", "values"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def pdf(self, mu) -> np.ndarray:
        """Normalized density at arbitrary masses, zero outside the support."""
        if self._shape is None:
            raise InvalidParameters("a sharp density has no pointwise value")
        mu = np.asarray(mu, dtype=float)
        inside = (mu >= self.mu_min) & (mu <= self.mu_max)
        return np.where(inside, self._scale * self._shape(mu), 0.0)

    @property
    def total(self) -> float:
        return float(np.sum(self.weights * self.values))

    @property
    def mean(self) -> float:
        return expectation(self, lambda mu: mu)

    @property
    def std(self) -> float:
        m = self.mean
        return math.sqrt(max(expectation(self, lambda mu: (mu - m) ** 2), 0.0))

    def square_integral(self) -> float:
        """The integral of the squared density, which sets the rest lifetime."""
        if self.sharp:
            return math.inf
        return float(np.sum(self.weights * self.values ** 2))

    def energies(self, s: float) -> np.ndarray:
        """Energies ``sqrt(mu^2 + s)`` on the nodes for squared SLM ``s``."""
        return np.sqrt(self.nodes ** 2 + s)


def normalize(d: SpectralDensity) -> SpectralDensity:
    total = d.total
    if not total > 0:
        raise InvalidParameters("density integrates to zero")
    return replace(d, values=d.values / total, _scale=d._scale / total)


def expectation(d: SpectralDensity, f: Callable[[np.ndarray], np.ndarray]) -> float:
    """Integral of ``sigma(mu) f(mu)`` by the stored quadrature rule."""
    vals = np.broadcast_to(np.asarray(f(d.nodes), dtype=float), d.nodes.shape)
    return float(np.sum(d.weights * d.values * vals))


def gauss_legendre_grid(edges: np.ndarray, order: int = PANEL_ORDER):
    """Composite Gauss-Legendre nodes and weights over consecutive panels."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.asarray(edges, dtype=float)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    return (mid + half * x).ravel(), (half * w).ravel()


def _mixture_edges(cdf, a: float, b: float, n_panels: int,
                   frac: float = PEAK_FRACTION) -> np.ndarray:
    """Invert ``frac*CDF + (1-frac)*uniform`` on [a, b] by vectorized bisection."""
    ca, cb = cdf(a), cdf(b)

    def mixture(mu):
        return frac * (cdf(mu) - ca) / (cb - ca) + (1.0 - frac) * (mu - a) / (b - a)

    targets = np.linspace(0.0, 1.0, n_panels + 1)[1:-1]
    lo = np.full_like(targets, a)
    hi = np.full_like(targets, b)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        below = mixture(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return np.concatenate([[a], 0.5 * (lo + hi), [b]])


def _grade_lower_edge(edges: np.ndarray) -> np.ndarray:
    """Split the first panel geometrically toward mu = 0.

    Integrands carrying ``1/mu`` vary on the scale of ``mu_min`` itself, which
    can be far below the first panel width.
    """
    a, b = edges[0], edges[1]
    if a <= 0 or b <= 2 * a:
        return edges
    n_split = int(math.ceil(math.log2((b - a) / a)))
    inner = a + a * (2.0 ** np.arange(n_split)) * ((b - a) / (a * 2.0 ** n_split))
    return np.concatenate([[a], inner[inner > a], edges[1:]])


def _n_panels(n_nodes: int) -> int:
    return max(2, -(-int(n_nodes) // PANEL_ORDER))


def _sharp(kind: str, params: dict, M: float, alpha: str) -> SpectralDensity:
    return SpectralDensity(kind, params, M, M, np.array([M]), np.array([1.0]),
                           np.array([1.0]), alpha=alpha, sharp=True)


def _build(kind, params, shape, cdf, a, b, n_nodes, alpha) -> SpectralDensity:
    n_panels = _n_panels(n_nodes)
    edges = _grade_lower_edge(_mixture_edges(cdf, a, b, n_panels))
    extra = edges.size - 1 - n_panels
    if extra > 0 and n_panels - extra >= 2:
        # keep the node budget: grading panels come out of the mixture panels
        edges = _grade_lower_edge(_mixture_edges(cdf, a, b, n_panels - extra))
    nodes, weights = gauss_legendre_grid(edges)
    d = SpectralDensity(kind, params, a, b, nodes, weights, shape(nodes),
                        alpha=alpha, _shape=shape)
    return normalize(d)


def _support(M: float, half_width: float) -> tuple[float, float]:
    return max(M - half_width, MASS_FLOOR * M), M + half_width


def make_breit_wigner(M: float, Gamma: float, support_sigmas: float = 200.0,
                      n_nodes: int = DEFAULT_NODES, alpha: str = "") -> SpectralDensity:
    """Lorentzian resonance of full width ``Gamma`` at mass ``M``.

    The support is ``M -/+ support_sigmas * Gamma``, with the lower edge
    lifted to ``MASS_FLOOR * M`` so the mass spectrum stays positive.
    """
    if not (M > 0 and Gamma > 0 and support_sigmas > 0):
        raise InvalidParameters("Breit-Wigner needs M > 0, Gamma > 0, support > 0")
    if n_nodes < 32:
        raise InvalidParameters("Breit-Wigner needs at least 32 nodes")
    params = {"M": float(M), "Gamma": float(Gamma), "support_sigmas": float(support_sigmas)}
    if Gamma < SHARP_WIDTH * M:
        return _sharp(BREIT_WIGNER, params, M, alpha)
    hw = 0.5 * Gamma

    def shape(mu):
        return (hw / math.pi) / ((mu - M) ** 2 + hw * hw)

    def cdf(mu):
        return np.arctan((mu - M) / hw) / math.pi

    a, b = _support(M, support_sigmas * Gamma)
    return _build(BREIT_WIGNER, params, shape, cdf, a, b, n_nodes, alpha)


def make_gaussian(M: float, width: float, support_sigmas: float = 10.0,
                  n_nodes: int = DEFAULT_NODES, alpha: str = "") -> SpectralDensity:
    """Truncated normal mass distribution with standard deviation ``width``."""
    if not (M > 0 and width > 0 and support_sigmas > 0):
        raise InvalidParameters("Gaussian needs M > 0, width > 0, support > 0")
    if n_nodes < 32:
        raise InvalidParameters("Gaussian needs at least 32 nodes")
    params = {"M": float(M), "width": float(width), "support_sigmas": float(support_sigmas)}
    if width < SHARP_WIDTH * M:
        return _sharp(GAUSSIAN, params, M, alpha)

    def shape(mu):
        return np.exp(-0.5 * ((mu - M) / width) ** 2) / (width * math.sqrt(2 * math.pi))

    def cdf(mu):
        return 0.5 * erf((mu - M) / (width * math.sqrt(2.0)))

    a, b = _support(M, support_sigmas * width)
    return _build(GAUSSIAN, params, shape, cdf, a, b, n_nodes, alpha)


def make_tabulated(nodes, n_nodes: int = DEFAULT_NODES, alpha: str = "") -> SpectralDensity:
    """Linear interpolant through ``(mu, sigma)`` pairs, renormalized.

    Every table point is a panel edge, so the rule is exact on each linear
    piece; extra panels go to the intervals carrying the most mass.
    """
    table = np.asarray(nodes, dtype=float)
    if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] < 2:
        raise InvalidParameters("tabulated density needs at least 2 (mu, sigma) rows")
    mu, sig = table[:, 0], table[:, 1]
    if not np.all(np.isfinite(table)):
        raise InvalidParameters("tabulated density contains non-finite values")
    if np.any(np.diff(mu) <= 0):
        raise NonMonotoneGrid("mu must be strictly increasing")
    if np.any(mu < 0):
        raise NegativeMass("tabulated masses must be non-negative")
    if np.any(sig < 0):
        raise NegativeDensity("tabulated density must be non-negative")
    mu.flags.writeable = False
    sig.flags.writeable = False

    def shape(x):
        return np.interp(x, mu, sig)

    lengths = np.diff(mu)
    mass = 0.5 * (sig[1:] + sig[:-1]) * lengths
    total_mass = mass.sum()
    if not total_mass > 0:
        raise InvalidParameters("tabulated density integrates to zero")
    share = PEAK_FRACTION * mass / total_mass + (1 - PEAK_FRACTION) * lengths / lengths.sum()
    counts = np.maximum(1, np.round(share * _n_panels(n_nodes))).astype(int)
    edges = np.concatenate(
        [np.linspace(lo, hi, k, endpoint=False) for lo, hi, k in zip(mu[:-1], mu[1:], counts)]
        + [mu[-1:]]
    )
    q_nodes, q_weights = gauss_legendre_grid(edges)
    d = SpectralDensity(TABULATED, {"n_rows": float(len(mu))}, float(mu[0]), float(mu[-1]),
                        q_nodes, q_weights, shape(q_nodes), alpha=alpha, _shape=shape)
    return normalize(d)


def load_tabulated(path, n_nodes: int = DEFAULT_NODES, alpha: str = "") -> SpectralDensity:
    """Read a two-column ``mu sigma`` text file; ``#`` starts a comment."""
    table = np.loadtxt(path, comments="#", ndmin=2)
    return make_tabulated(table, n_nodes=n_nodes, alpha=alpha)
