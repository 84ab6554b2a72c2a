"""Closed-form stationary solution, band calibration, and the BM reference.

The stationary two-point problem

    (alpha*sigma^2/2) e'' - alpha*rho*(f - mu) e' - e = -f,   e'(f_lo) = e'(f_hi) = 0

has the general solution

    e(f) = c1*M(a1, 1/2, z) + c2*(sqrt(rho)*(mu - f)/sigma)*M(a2, 3/2, z)
           + (alpha*rho*mu + f)/(1 + alpha*rho),
    z = rho*(mu - f)^2 / sigma^2,
    a1 = 1/(2*alpha*rho),  a2 = (1 + alpha*rho)/(2*alpha*rho),

where M is the Kummer function. In the symmetric case (mu = 0, f_lo = -f_hi)
oddness forces c1 = 0 and (c2, f_hi) solve the value and smooth-pasting
conditions at the upper edge; `calibrate_symmetric` solves that 2x2 system by
damped Newton with the analytic Jacobian. `calibrate_bm` provides the
rho -> 0 (regulated Brownian motion) reference in closed form.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import CalibrationError, ParameterError
from .kummer import KummerArgs, kummer_m
from .model import Band, BmStationaryCoefficients, ModelParams, StationaryCoefficients

_NEWTON_TOL = 1e-12
_NEWTON_MAX_ITER = 100


def _require_mean_reverting(params: ModelParams) -> None:
    if params.rho == 0:
        raise ParameterError(
            "rho = 0 has no Kummer representation (a1 diverges); "
            "use the Brownian-motion reference (calibrate_bm / eval_stationary_bm)"
        )


def _kummer_abc(params: ModelParams) -> tuple[float, float]:
    # a-parameters of the two homogeneous terms; b's are fixed at 1/2 and 3/2.
    a1 = 1.0 / (2.0 * params.alpha * params.rho)
    a2 = (1.0 + params.alpha * params.rho) / (2.0 * params.alpha * params.rho)
    return a1, a2


def _homogeneous_terms(params: ModelParams, f: float) -> tuple[float, float]:
    """Values of the two homogeneous solutions h1, h2 at f."""
    a1, a2 = _kummer_abc(params)
    u = params.mu - f
    z = params.rho * u * u / params.sigma**2
    h1 = kummer_m(KummerArgs(a1, 0.5, z))
    h2 = (math.sqrt(params.rho) * u / params.sigma) * kummer_m(KummerArgs(a2, 1.5, z))
    return h1, h2


def _homogeneous_slopes(params: ModelParams, f: float) -> tuple[float, float]:
    """df-derivatives of h1, h2 (chain rule through z(f) = rho*(mu-f)^2/sigma^2)."""
    a1, a2 = _kummer_abc(params)
    rho, sigma = params.rho, params.sigma
    u = params.mu - f
    z = rho * u * u / sigma**2
    m2 = kummer_m(KummerArgs(a2, 1.5, z))
    m1p = (a1 / 0.5) * kummer_m(KummerArgs(a1 + 1.0, 1.5, z))
    m2p = (a2 / 1.5) * kummer_m(KummerArgs(a2 + 1.0, 2.5, z))
    h1p = -(2.0 * rho * u / sigma**2) * m1p
    h2p = -((math.sqrt(rho) / sigma) * m2 + (2.0 * rho**1.5 * u * u / sigma**3) * m2p)
    return h1p, h2p


def _homogeneous_curvatures(params: ModelParams, f: float) -> tuple[float, float]:
    """Second df-derivatives of h1, h2 (the derivative identity applied twice)."""
    a1, a2 = _kummer_abc(params)
    rho, sigma = params.rho, params.sigma
    u = params.mu - f
    z = rho * u * u / sigma**2
    m1p = (a1 / 0.5) * kummer_m(KummerArgs(a1 + 1.0, 1.5, z))
    m1pp = (a1 * (a1 + 1.0) / (0.5 * 1.5)) * kummer_m(KummerArgs(a1 + 2.0, 2.5, z))
    m2p = (a2 / 1.5) * kummer_m(KummerArgs(a2 + 1.0, 2.5, z))
    m2pp = (a2 * (a2 + 1.0) / (1.5 * 2.5)) * kummer_m(KummerArgs(a2 + 2.0, 3.5, z))
    h1pp = (4.0 * rho**2 * u * u / sigma**4) * m1pp + (2.0 * rho / sigma**2) * m1p
    h2pp = (6.0 * rho**1.5 * u / sigma**3) * m2p + (4.0 * rho**2.5 * u**3 / sigma**5) * m2pp
    return h1pp, h2pp


def eval_stationary(params: ModelParams, coefs: StationaryCoefficients, f: float) -> float:
    """Stationary exchange rate e(f) for given integration constants."""
    _require_mean_reverting(params)
    h1, h2 = _homogeneous_terms(params, f)
    particular = (params.alpha * params.rho * params.mu + f) / (1.0 + params.alpha * params.rho)
    return coefs.c1 * h1 + coefs.c2 * h2 + particular


def eval_stationary_slope(params: ModelParams, coefs: StationaryCoefficients, f: float) -> float:
    """Analytic de/df of the stationary solution."""
    _require_mean_reverting(params)
    h1p, h2p = _homogeneous_slopes(params, f)
    return coefs.c1 * h1p + coefs.c2 * h2p + 1.0 / (1.0 + params.alpha * params.rho)


def eval_stationary_curvature(params: ModelParams, coefs: StationaryCoefficients, f: float) -> float:
    """Analytic d2e/df2 of the stationary solution."""
    _require_mean_reverting(params)
    h1pp, h2pp = _homogeneous_curvatures(params, f)
    return coefs.c1 * h1pp + coefs.c2 * h2pp


def stationary_ode_residual(
    params: ModelParams,
    coefs: StationaryCoefficients,
    f_grid: Sequence[float],
) -> np.ndarray:
    """Residual (alpha*sigma^2/2) e'' - alpha*rho*(f-mu) e' - e + f on a grid.

    Zero (to roundoff) for any coefficients, because every member of the
    solution family satisfies the stationary equation; the check guards the
    analytic-derivative plumbing rather than the calibration.
    """
    _require_mean_reverting(params)
    a, r, s2 = params.alpha, params.rho, params.sigma**2
    out = np.empty(len(f_grid))
    for i, f in enumerate(f_grid):
        e = eval_stationary(params, coefs, f)
        ep = eval_stationary_slope(params, coefs, f)
        epp = eval_stationary_curvature(params, coefs, f)
        out[i] = 0.5 * a * s2 * epp - a * r * (f - params.mu) * ep - e + f
    return out


def calibrate_symmetric(
    params: ModelParams, e_bar: float
) -> tuple[StationaryCoefficients, Band]:
    """Solve (c2, f_bar) so that e(f_bar) = e_bar and e'(f_bar) = 0.

    Symmetric case only (mu = 0): c1 = 0 and the band is [-f_bar, f_bar] in
    the fundamental, [-e_bar, e_bar] in the rate. Damped Newton on the 2x2
    system with the analytic Jacobian; the step is halved until the residual
    norm decreases (and f_bar stays positive). Initial guess: the free-float
    preimage f_bar = (1 + alpha*rho)*e_bar with c2 = 0.
    """
    _require_mean_reverting(params)
    if params.mu != 0:
        raise ParameterError("calibrate_symmetric requires mu = 0 (symmetric case)")
    if not e_bar > 0:
        raise ParameterError(f"e_bar must be positive, got {e_bar}")

    def residuals(c2: float, f_bar: float) -> np.ndarray:
        coefs = StationaryCoefficients(0.0, c2)
        return np.array(
            [
                eval_stationary(params, coefs, f_bar) - e_bar,
                eval_stationary_slope(params, coefs, f_bar),
            ]
        )

    c2 = 0.0
    f_bar = (1.0 + params.alpha * params.rho) * e_bar
    res = residuals(c2, f_bar)
    norm = np.max(np.abs(res))

    for _ in range(_NEWTON_MAX_ITER):
        if norm < _NEWTON_TOL:
            coefs = StationaryCoefficients(0.0, c2)
            band = Band(-f_bar, f_bar, -e_bar, e_bar)
            return coefs, band

        coefs = StationaryCoefficients(0.0, c2)
        _, h2 = _homogeneous_terms(params, f_bar)
        _, h2p = _homogeneous_slopes(params, f_bar)
        jac = np.array(
            [
                [h2, eval_stationary_slope(params, coefs, f_bar)],
                [h2p, eval_stationary_curvature(params, coefs, f_bar)],
            ]
        )
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError as exc:
            raise CalibrationError(f"singular Jacobian at (c2={c2}, f_bar={f_bar})", res) from exc

        # Damping: halve until the residual norm drops and f_bar stays positive.
        lam = 1.0
        while True:
            c2_new, f_new = c2 + lam * step[0], f_bar + lam * step[1]
            if f_new > 0:
                res_new = residuals(c2_new, f_new)
                norm_new = np.max(np.abs(res_new))
                if norm_new < norm:
                    break
            lam *= 0.5
            if lam < 1e-12:
                raise CalibrationError(
                    "Newton stalled (no descent direction); "
                    f"e_bar={e_bar} may admit no smooth-pasting solution",
                    res,
                )
        c2, f_bar, res, norm = c2_new, f_new, res_new, norm_new

    raise CalibrationError(
        f"calibration did not converge in {_NEWTON_MAX_ITER} iterations "
        f"(residuals {res[0]:.3e}, {res[1]:.3e}); e_bar={e_bar} may admit no "
        "smooth-pasting solution",
        res,
    )


def calibrate_bm(alpha: float, sigma: float, e_bar: float) -> tuple[BmStationaryCoefficients, Band]:
    """Brownian-motion reference band: e(f) = f + a*(e^{lf} - e^{-lf}).

    Smooth pasting fixes a = -1/(2l*cosh(l*f_bar)) and f_bar as the unique
    positive root of f_bar - tanh(l*f_bar)/l = e_bar, l = sqrt(2/(alpha*sigma^2)).
    """
    if not (alpha > 0 and sigma > 0 and e_bar > 0):
        raise ParameterError(
            f"alpha, sigma, e_bar must all be positive, got ({alpha}, {sigma}, {e_bar})"
        )
    lam = math.sqrt(2.0 / (alpha * sigma**2))

    def gap(f_bar: float) -> float:
        return f_bar - math.tanh(lam * f_bar) / lam - e_bar

    # gap(0) = -e_bar < 0 and gap(e_bar + 1/lam) > 0: guaranteed bracket.
    try:
        f_bar = brentq(gap, 0.0, e_bar + 1.0 / lam, xtol=1e-16, rtol=8.9e-16)
    except ValueError as exc:
        raise CalibrationError(f"no smooth-pasting root for e_bar={e_bar}") from exc
    a_coef = -1.0 / (2.0 * lam * math.cosh(lam * f_bar))
    coefs = BmStationaryCoefficients(a_coef, lam)
    return coefs, Band(-f_bar, f_bar, -e_bar, e_bar)


def eval_stationary_bm(coefs: BmStationaryCoefficients, f: float) -> float:
    """Brownian-motion stationary rate f + a*(e^{lf} - e^{-lf})."""
    return f + coefs.a_coef * (math.exp(coefs.lam * f) - math.exp(-coefs.lam * f))


def eval_stationary_bm_slope(coefs: BmStationaryCoefficients, f: float) -> float:
    """Slope of the Brownian-motion stationary rate."""
    return 1.0 + coefs.a_coef * coefs.lam * (math.exp(coefs.lam * f) + math.exp(-coefs.lam * f))
