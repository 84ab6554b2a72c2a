"""Theta-weighted implicit finite differences for the non-stationary problem.

In time remaining t = T - tau the rate solves

    de/dt + rho*(f - mu) de/df - (sigma^2/2) d2e/df2 + e/alpha = f/alpha

on the band with e(0, f) = 0 and zero-slope (smooth pasting) edges. Writing
the right-hand operator L e = (sigma^2/2) e_ff - rho*(f-mu) e_f - e/alpha and
source s = f/alpha, each step solves

    (I - theta*dt*L) e_{n+1} = (I + (1-theta)*dt*L) e_n + dt*s

with one tridiagonal system per step. The advection term uses central
differences (the cell Peclet number is far below one here) and the Neumann
edges use mirror ghost nodes folded into the boundary rows, keeping the
scheme second order in f.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InstabilityError, ParameterError, SingularSystemError
from .model import Band, ModelParams

# Probe fractions for the self-convergence diagnostics. Off-center in f:
# the symmetric solution is odd, so the midpoint carries no signal.
_PROBE_T_FRACTIONS = (0.5, 0.75, 1.0)
_PROBE_F_FRACTIONS = (0.30, 0.65, 0.85)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid: nf spatial nodes, nt time steps, theta time weighting."""

    nf: int = 401
    nt: int = 3000
    theta: float = 0.5

    def __post_init__(self):
        if self.nf < 3:
            raise ParameterError(f"nf must be at least 3, got {self.nf}")
        if self.nt < 1:
            raise ParameterError(f"nt must be at least 1, got {self.nt}")
        if not 0.0 <= self.theta <= 1.0:
            raise ParameterError(f"theta must lie in [0, 1], got {self.theta}")


@dataclass(frozen=True)
class Surface:
    """Discrete solution e(t, f); values[k, i] at time-remaining t_axis[k], f_axis[i]."""

    t_axis: np.ndarray
    f_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for arr in (self.t_axis, self.f_axis, self.values):
            arr.setflags(write=False)


def _operator_diagonals(params: ModelParams, band: Band, nf: int):
    """Tridiagonal representation of L with mirror-ghost Neumann rows."""
    f = np.linspace(band.f_lo, band.f_hi, nf)
    df = (band.f_hi - band.f_lo) / (nf - 1)
    diff = 0.5 * params.sigma**2 / df**2
    adv = params.rho * (f - params.mu) / (2.0 * df)

    lower = np.zeros(nf)
    main = np.full(nf, -params.sigma**2 / df**2 - 1.0 / params.alpha)
    upper = np.zeros(nf)
    lower[1:-1] = diff + adv[1:-1]
    upper[1:-1] = diff - adv[1:-1]
    # Mirror ghost: e_{-1} = e_1 kills the advection difference at the edge
    # and doubles the one-sided diffusion neighbour.
    upper[0] = 2.0 * diff
    lower[-1] = 2.0 * diff
    return f, df, lower, main, upper


def solve_nonstationary(params: ModelParams, band: Band, grid: GridSpec) -> Surface:
    """March the theta scheme from e(0, f) = 0 over nt steps of T/nt years."""
    f, _, lower, main, upper = _operator_diagonals(params, band, grid.nf)
    dt = params.horizon / grid.nt
    theta = grid.theta
    source = f / params.alpha

    # Banded form of I - theta*dt*L for scipy.linalg.solve_banded.
    ab = np.zeros((3, grid.nf))
    ab[0, 1:] = -theta * dt * upper[:-1]
    ab[1, :] = 1.0 - theta * dt * main
    ab[2, :-1] = -theta * dt * lower[1:]

    w = (1.0 - theta) * dt
    values = np.zeros((grid.nt + 1, grid.nf))
    u = values[0].copy()
    with np.errstate(over="ignore", invalid="ignore"):  # blowup is reported as an error below
        for n in range(grid.nt):
            rhs = u + w * (main * u) + dt * source
            rhs[:-1] += w * upper[:-1] * u[1:]
            rhs[1:] += w * lower[1:] * u[:-1]
            if not np.all(np.isfinite(rhs)):
                raise InstabilityError(f"non-finite values at step {n + 1} (t = {(n + 1) * dt:g})")
            try:
                u = scipy.linalg.solve_banded((1, 1), ab, rhs)
            except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
                raise SingularSystemError(f"tridiagonal solve failed at step {n + 1}") from exc
            if not np.all(np.isfinite(u)):
                raise InstabilityError(f"non-finite values at step {n + 1} (t = {(n + 1) * dt:g})")
            values[n + 1] = u

    t = np.linspace(0.0, params.horizon, grid.nt + 1)
    return Surface(t, f, values)


@dataclass(frozen=True)
class Slice:
    """One time section of a surface; t is the grid node actually used."""

    t: float
    f: np.ndarray
    e: np.ndarray

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.f.tolist(), self.e.tolist()))


def slice_at(surface: Surface, t: float) -> Slice:
    """Nearest-time-node section (no interpolation; the node's t is reported)."""
    t_max = surface.t_axis[-1]
    if not 0.0 <= t <= t_max:
        raise ParameterError(f"t={t} outside [0, {t_max}]")
    k = int(np.argmin(np.abs(surface.t_axis - t)))
    return Slice(float(surface.t_axis[k]), surface.f_axis, surface.values[k])


@dataclass(frozen=True)
class BoundaryPaths:
    """Rate at the band edges for every time node."""

    t: np.ndarray
    e_lower: np.ndarray
    e_upper: np.ndarray

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.t.tolist(), self.e_lower.tolist(), self.e_upper.tolist()))


def boundary_paths(surface: Surface) -> BoundaryPaths:
    """e(t, f_lo) and e(t, f_hi) along the whole time axis."""
    return BoundaryPaths(surface.t_axis, surface.values[:, 0], surface.values[:, -1])


def edge_slopes(surface: Surface) -> tuple[np.ndarray, np.ndarray]:
    """Second-order one-sided df-slopes at both edges, one value per time node.

    Diagnostic for the discrete smooth-pasting property: both arrays shrink
    as O(df^2) under refinement.
    """
    v = surface.values
    df = surface.f_axis[1] - surface.f_axis[0]
    at_lo = (-3.0 * v[:, 0] + 4.0 * v[:, 1] - v[:, 2]) / (2.0 * df)
    at_hi = (3.0 * v[:, -1] - 4.0 * v[:, -2] + v[:, -3]) / (2.0 * df)
    return at_lo, at_hi


def _probe_values(surface: Surface, t_idx: np.ndarray, f_idx: np.ndarray) -> np.ndarray:
    return surface.values[np.ix_(t_idx, f_idx)].ravel()


def convergence_order(params: ModelParams, band: Band, base: GridSpec) -> tuple[float, float]:
    """Observed self-convergence orders (spatial, temporal) by Richardson ratios.

    Spatial: solve on nf, 2nf-1, 4nf-3 nodes at fixed nt; temporal: nt, 2nt,
    4nt steps at fixed nf. Probes sit on shared coarse-grid nodes, and the
    order is log2 of the ratio of RMS probe differences. Non-monotone
    refinement raises with the three probe values.
    """
    t_idx = np.array([round(fr * base.nt) for fr in _PROBE_T_FRACTIONS], dtype=int)
    f_idx = np.array([round(fr * (base.nf - 1)) for fr in _PROBE_F_FRACTIONS], dtype=int)

    def order_from(surfaces, idx_scales) -> float:
        probes = [
            _probe_values(s, t_idx * kt, f_idx * kf) for s, (kt, kf) in zip(surfaces, idx_scales)
        ]
        d1 = np.sqrt(np.mean((probes[0] - probes[1]) ** 2))
        d2 = np.sqrt(np.mean((probes[1] - probes[2]) ** 2))
        if not d2 < d1:
            raise InstabilityError(
                f"refinement not monotone at probes: coarse-mid {d1:.3e}, mid-fine {d2:.3e}; "
                f"probe values {[p.tolist() for p in probes]}"
            )
        return float(np.log2(d1 / d2))

    spatial = [
        solve_nonstationary(params, band, GridSpec(nf, base.nt, base.theta))
        for nf in (base.nf, 2 * base.nf - 1, 4 * base.nf - 3)
    ]
    order_f = order_from(spatial, [(1, 1), (1, 2), (1, 4)])

    temporal = [
        solve_nonstationary(params, band, GridSpec(base.nf, nt, base.theta))
        for nt in (base.nt, 2 * base.nt, 4 * base.nt)
    ]
    order_t = order_from(temporal, [(1, 1), (2, 1), (4, 1)])

    return order_f, order_t
