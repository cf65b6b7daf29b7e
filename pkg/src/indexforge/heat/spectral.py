"""Flat-torus spectral oracles: heat-trace fits, Landau levels and scaling.

Everything here is floating point; the exact side lives in
:mod:`indexforge.heat.parametrix`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, exp, log, pi, sqrt

import numpy as np

__all__ = [
    "schrodinger_torus_trace",
    "HeatFit",
    "fit_heat_expansion",
    "fit_schrodinger_coefficients",
    "landau_levels",
    "torus_spectral_supertrace",
    "torus_spectral_trace",
    "DivergenceFit",
    "fit_divergent_terms",
    "free_dirac_spectrum",
    "landau_dirac_spectrum",
    "heat_trace",
    "ScalingReport",
    "scaling_check",
]

TAIL = 1e-12
DEFAULT_T_GRID = tuple(float(t) for t in np.geomspace(0.05, 20.0, 25))


def _theta_cutoff(t: float, spacing: float = 1.0) -> int:
    """Smallest ``K`` with ``sum_{|k| > K} exp(-t (spacing k)^2) < TAIL``."""
    return int(ceil(sqrt(-log(TAIL * 1e-3) / (t * spacing**2)))) + 1


def schrodinger_torus_trace(t: float, V: float, n: int, L: float = 2 * pi) -> float:
    """``tr exp(-t(-Delta + V))`` on the flat torus ``(R/L Z)^n`` with constant ``V``."""
    if t <= 0:
        raise ValueError("t must be positive")
    spacing = 2 * pi / L
    K = _theta_cutoff(t, spacing)
    k = np.arange(-K, K + 1)
    theta = float(np.exp(-t * (spacing * k) ** 2).sum())
    return exp(-t * V) * theta**n


@dataclass(frozen=True)
class HeatFit:
    """Least-squares coefficients of ``t^{(k - n)/2}``, ``k = 0..kmax`` (per unit volume)."""

    n: int
    coefficients: tuple
    residual: float
    t_grid: tuple = field(repr=False, default=())

    def phi(self, k: int) -> float:
        return self.coefficients[k]

    def normalized(self, k: int) -> float:
        """``Phi_k`` in units of ``(4 pi)^{-n/2}``."""
        return self.coefficients[k] * (4 * pi) ** (self.n / 2)


def fit_heat_expansion(ts, values, n: int, kmax: int = 12, volume: float = 1.0) -> HeatFit:
    """Fit ``values(t) / volume ~ sum_k Phi_k t^{(k - n)/2}`` by least squares.

    The columns are rescaled by the largest ``t`` before solving, which keeps
    the half-integer power basis well conditioned on short grids.
    """
    ts = np.asarray(ts, dtype=float)
    y = np.asarray(values, dtype=float) / volume * ts ** (n / 2)
    tmax = float(ts.max())
    X = np.stack([(ts / tmax) ** (k / 2) for k in range(kmax + 1)], axis=1)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    coef = coef / np.array([tmax ** (k / 2) for k in range(kmax + 1)])
    resid = float(np.max(np.abs(X @ (coef * [tmax ** (k / 2) for k in range(kmax + 1)]) - y)))
    return HeatFit(n, tuple(float(c) for c in coef), resid, tuple(ts))


def fit_schrodinger_coefficients(V: float, n: int, kmax: int = 12, points: int = 80) -> HeatFit:
    """Fit the small-``t`` expansion of the torus trace of ``-Delta + V``.

    The grid ``t in [tmax/40, tmax]`` with ``tmax = 0.05 / max(1, |V|)``
    keeps the Poisson-summation corrections (``~exp(-pi^2/t)``) far below
    the fitting error.
    """
    tmax = 0.05 / max(1.0, abs(V))
    ts = np.linspace(tmax / 40, tmax, points)
    L = 2 * pi
    values = [schrodinger_torus_trace(float(t), V, n, L) for t in ts]
    return fit_heat_expansion(ts, values, n, kmax, volume=L**n)


# ---------------------------------------------------------------------------
# twisted torus Dirac operator

def landau_levels(c: int, t_min: float, area: float = 2 * pi):
    """Nonzero eigenvalues of ``D^2`` and the number of levels kept.

    Levels are ``(4 pi |c| / area) k`` (``2|c|k`` at the default area), each
    with multiplicity ``|c|`` on both chiralities; the kept range makes the
    dropped tail below ``1e-12`` at ``t_min``.
    """
    c = abs(int(c))
    if c == 0:
        return np.zeros(0), 0
    gap = 4 * pi * c / area
    q = exp(-gap * t_min)
    # c * q^{K+1} / (1 - q) < TAIL
    K = max(1, int(ceil((log(TAIL * (1 - q) / c)) / log(q))))
    return gap * np.arange(1, K + 1), K


def torus_spectral_trace(c: int, t: float, area: float = 2 * pi) -> tuple[float, float]:
    """``(tr_+ , tr_-)`` of ``exp(-t D^2)`` on the two chiral halves.

    For ``c = 0`` the free spectrum (periodic spin structure, unit torus
    scaled to ``area``) is used.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    c = int(c)
    if c == 0:
        # each chiral half carries the Laplacian spectrum |k|^2 once
        mod = _lattice_moduli(sqrt(area), (0.0, 0.0), t)
        half = float(np.exp(-t * mod**2).sum())
        return half, half
    levels, _ = landau_levels(c, t, area)
    m = abs(c)
    excited = m * float(np.exp(-t * levels).sum())
    zero = float(m)
    return (zero + excited, excited) if c > 0 else (excited, zero + excited)


def torus_spectral_supertrace(c: int, t: float, area: float = 2 * pi) -> float:
    """``str exp(-t (D^xi)^2)`` for the flat-torus Dirac operator with flux ``c``.

    Zero modes sit on the positive half for ``c > 0`` and on the negative
    half for ``c < 0``; nonzero levels cancel between the halves.
    """
    plus, minus = torus_spectral_trace(c, t, area)
    return plus - minus


@dataclass(frozen=True)
class DivergenceFit:
    """Fit ``str(t) ~ sum_k w_k t^{(k - 2)/2}``: ``w_0``, ``w_1`` are the divergent terms."""

    c: int
    coefficients: tuple
    max_deviation: float

    @property
    def divergent(self) -> tuple[float, float]:
        return self.coefficients[0], self.coefficients[1]

    @property
    def constant(self) -> float:
        return self.coefficients[2]


def fit_divergent_terms(c: int, t_grid=DEFAULT_T_GRID, kmax: int = 4, area: float = 2 * pi) -> DivergenceFit:
    """Least-squares fit of the supertrace on ``t^{-1}, t^{-1/2}, 1, t^{1/2}, ...``.

    The basis is cut to ``len(t_grid)`` functions when the grid is short;
    at least three times are needed to separate the two divergent terms
    from the constant.
    """
    ts = np.asarray(t_grid, dtype=float)
    if ts.size < 3:
        raise ValueError("the divergence fit needs at least three times")
    kmax = min(kmax, ts.size - 1)
    y = np.array([torus_spectral_supertrace(c, float(t), area) for t in ts])
    X = np.stack([ts ** ((k - 2) / 2) for k in range(kmax + 1)], axis=1)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return DivergenceFit(int(c), tuple(float(v) for v in coef), float(np.max(np.abs(y - c))))


# ---------------------------------------------------------------------------
# homogeneity

def _lattice_moduli(L: float, shift, t_min: float) -> np.ndarray:
    """``2 pi |k + shift| / L`` over the lattice, cut where ``exp(-t_min lambda^2) < 1e-16``."""
    if L <= 0:
        raise ValueError("L must be positive")
    K = int(ceil(L / (2 * pi) * sqrt(37 / t_min))) + 2
    k = np.arange(-K, K + 1, dtype=float)
    k1, k2 = np.meshgrid(k + shift[0], k + shift[1], indexing="ij")
    return 2 * pi / L * np.sqrt(k1**2 + k2**2).ravel()


def free_dirac_spectrum(L: float, shift=(0.0, 0.0), t_min: float = 0.05) -> np.ndarray:
    """Eigenvalues ``+-2 pi |k + shift| / L`` of the Dirac operator on ``R^2 / L Z^2``."""
    mod = _lattice_moduli(L, shift, t_min)
    return np.sort(np.concatenate([mod, -mod]))


def landau_dirac_spectrum(c: int, area: float, t_min: float = 0.05) -> np.ndarray:
    """Eigenvalues of ``D`` (with signs) for flux ``c`` on a torus of the given area."""
    levels, _ = landau_levels(c, t_min, area)
    m = abs(int(c))
    ev = np.sqrt(levels)
    return np.sort(np.concatenate([np.zeros(m), np.repeat(ev, m), -np.repeat(ev, m)]))


def heat_trace(eigenvalues: np.ndarray, t: float) -> float:
    return float(np.exp(-t * np.asarray(eigenvalues) ** 2).sum())


@dataclass(frozen=True)
class ScalingReport:
    scale: float
    model: str
    eigenvalue_deviation: float
    trace_deviation: float

    def ok(self, tol: float = 1e-10) -> bool:
        return self.eigenvalue_deviation < tol and self.trace_deviation < tol


def scaling_check(scale: float, model: str = "free", t_grid=DEFAULT_T_GRID, flux: int = 1,
                  L: float = 2 * pi, shift=(0.5, 0.5)) -> ScalingReport:
    """Compare spectra and heat traces of ``g`` and ``scale^2 g`` on a flat torus.

    The spectrum for ``scale^2 g`` is recomputed from the rescaled lattice
    (side ``scale * L``), not derived from the original one. Reported are
    the largest relative deviations of ``scale * lambda' = lambda`` and of
    ``tr exp(-t D'^2) = tr exp(-(t / scale^2) D^2)`` over ``t_grid``.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    t_grid = np.asarray(t_grid, dtype=float)
    t_min = float(t_grid.min())
    # the base spectrum is probed at t / scale^2, the scaled one at t
    if model == "free":
        base = free_dirac_spectrum(L, shift, t_min / scale**2)
        scaled = free_dirac_spectrum(scale * L, shift, t_min)
    elif model == "landau":
        base = landau_dirac_spectrum(flux, L * L, t_min / scale**2)
        scaled = landau_dirac_spectrum(flux, (scale * L) ** 2, t_min)
    else:
        raise ValueError(f"unknown model {model!r} (expected 'free' or 'landau')")
    # compare the common part of both truncated spectra
    m = min(len(base), len(scaled))
    b = np.sort(np.abs(base))[:m]
    s = np.sort(np.abs(scaled))[:m] * scale
    ev_dev = float(np.max(np.abs(s - b) / np.maximum(1.0, np.abs(b)))) if m else 0.0
    tr_dev = 0.0
    for t in t_grid:
        lhs = heat_trace(scaled, float(t))
        rhs = heat_trace(base, float(t) / scale**2)
        tr_dev = max(tr_dev, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return ScalingReport(float(scale), model, ev_dev, tr_dev)
