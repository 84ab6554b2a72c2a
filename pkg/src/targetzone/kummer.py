"""Confluent hypergeometric Kummer function M(a, b, z) and its z-derivative.

Evaluation is by the Taylor series sum_{n>=0} (a)_n z^n / ((b)_n n!) with a
relative stopping rule. The model only ever needs small arguments
(z = rho*(mu-f)^2/sigma^2 of order one), where the series is short and
well conditioned; no large-|z| asymptotic branch is provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, ParameterError

DEFAULT_TOL = 1e-12
MAX_TERMS = 500

# The series is cheap at this model's argument sizes, so summation always
# continues to machine convergence; tol only ever tightens the stop.
_MACHINE_REL = 2.0**-52


@dataclass(frozen=True)
class KummerArgs:
    """Parameters (a, b) and argument z of M(a, b, z)."""

    a: float
    b: float
    z: float


def _check_b(b: float) -> None:
    # Poles of M in b sit at 0, -1, -2, ...
    if b <= 0 and b == math.floor(b):
        raise ParameterError(f"b={b} is a pole of M(a, b, z) (zero or negative integer)")


def kummer_m(args: KummerArgs, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> float:
    """Evaluate M(a, b, z) by direct series summation.

    Terminates once two consecutive terms are negligible relative to the
    running partial sum (two, so that an incidentally zero term cannot stop
    an alternating series early); the truncation error is then below ``tol``
    relative to the sum. Raises ConvergenceError if ``max_terms`` terms are
    not enough.
    """
    _check_b(args.b)
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")

    a, b, z = args.a, args.b, args.z
    rel_stop = min(tol, _MACHINE_REL)
    term = 1.0
    total = 1.0
    small_streak = 0
    for n in range(max_terms):
        term *= (a + n) * z / ((b + n) * (n + 1))
        total += term
        if abs(term) <= rel_stop * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    raise ConvergenceError(
        f"Kummer series for (a={a}, b={b}, z={z}) did not converge in {max_terms} terms"
    )


def kummer_m_dz(args: KummerArgs, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> float:
    """dM/dz via the exact identity dM(a,b,z)/dz = (a/b) * M(a+1, b+1, z)."""
    _check_b(args.b)
    shifted = KummerArgs(args.a + 1.0, args.b + 1.0, args.z)
    return (args.a / args.b) * kummer_m(shifted, tol=tol, max_terms=max_terms)
