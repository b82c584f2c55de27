"""Generalized exponential integral E_n(x) = int_1^inf exp(-x u) u^-n du."""

from __future__ import annotations

import math

from .errors import ContractError

EULER_GAMMA = 0.57721566490153286061
_EPS = 1e-16
_MAX_ITER = 500
_TINY = 1e-300


def _continued_fraction(n: int, x: float) -> float | None:
    # modified Lentz on the even form of the continued fraction
    b = x + n
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (n - 1 + i)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) <= _EPS:
            return h * math.exp(-x)
    return None


def _series(n: int, x: float) -> float | None:
    nm1 = n - 1
    ans = 1.0 / nm1
    fact = 1.0
    for i in range(1, _MAX_ITER + 1):
        fact *= -x / i
        if i != nm1:
            delta = -fact / (i - nm1)
        else:
            psi = -EULER_GAMMA + math.fsum(1.0 / k for k in range(1, nm1 + 1))
            delta = fact * (-math.log(x) + psi)
        ans += delta
        if abs(delta) < abs(ans) * _EPS:
            return ans
    return None


def _quadrature(n: int, x: float) -> float:
    # u = 1/v maps [1, inf) onto (0, 1]
    from scipy.integrate import quad

    val, _ = quad(lambda v: math.exp(-x / v) * v ** (n - 2) if v > 0 else 0.0,
                  0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=500)
    return val


def expint_en(n: int, x: float) -> float:
    """E_n(x) for integer n >= 2 and real x >= 0.

    Exact 1/(n-1) at x = 0, power series for 0 < x < 1, continued fraction
    for x >= 1. Falls back to quadrature if an expansion fails to converge.
    """
    if n < 2 or int(n) != n:
        raise ContractError(f"E_n needs integer n >= 2, got {n!r}")
    if x < 0 or math.isnan(x):
        raise ContractError(f"E_n needs x >= 0, got {x!r}")
    n = int(n)
    if x == 0:
        return 1.0 / (n - 1)
    val = _series(n, x) if x < 1.0 else _continued_fraction(n, x)
    if val is None:
        val = _quadrature(n, x)
    return val
