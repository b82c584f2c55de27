"""Independent numerical check of the moment closed forms.

Each piece's iterated radial integral is reduced to one improper integral,
mapped onto (0, 1] and integrated adaptively on [delta, 1]. The cut-off
piece (0, delta) is bounded analytically. Convergence is decided by probing
the mapped integrand's power-law exponent at the singular end, not by the
closed-form predicates in :mod:`moments`.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import BudgetExceeded, ContractError
from .lattice import DomainSpec, _spec
from .moments import Divergent, _Divergent

DEFAULT_BUDGET = 10_000
_PROBES = (1e-2, 1e-3)


class Region(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


class QuadratureResult(NamedTuple):
    value: float
    abs_error: float
    tail_bound: float
    subdivisions: int


def _x_log_integrand(s: int, t: int, v: float) -> float:
    # u = log r1, v = 1/u:  int_0^1 exp((s - t)/v) v^t dv
    return (s - t) / v + t * math.log(v)


def _x_integrand(s: int, t: int):
    def f(v):
        return math.exp(_x_log_integrand(s, t, v)) if v > 0 else 0.0
    return f


def _y_log_integrand(s: int, t: int, m: int, v: float) -> float:
    # r2 = 2/v; inner r1-integral done exactly:
    # r2^(t+1) [(1/r2 + r2^-m)^n - (1/r2 - r2^-m)^n] / n,  n = s + 2
    n = s + 2
    log_r = math.log(2.0 / v)
    eps = math.exp((1 - m) * log_r)
    diff = math.expm1(n * math.log1p(eps)) - math.expm1(n * math.log1p(-eps))
    if diff <= 0.0:
        return -math.inf
    return (t + 1 - n) * log_r + math.log(diff) - math.log(n) + math.log(2.0) - 2 * math.log(v)


def _y_integrand(s: int, t: int, m: int):
    def f(v):
        if v <= 0:
            return 0.0
        lv = _y_log_integrand(s, t, m, v)
        return math.exp(lv) if lv > -math.inf else 0.0
    return f


def tail_exponent(log_integrand) -> float:
    """Estimated q in f(v) ~ v^q as v -> 0+ from two probe points."""
    v1, v2 = _PROBES
    l1, l2 = log_integrand(v1), log_integrand(v2)
    if l2 == -math.inf:
        return math.inf
    return (l1 - l2) / (math.log(v1) - math.log(v2))


def _converges(q: float) -> bool:
    # integrable at 0 iff q > -1; exponents here are integers or +-inf
    return q > -0.5


def _adaptive(f, lo: float, hi: float, rel_tol: float, budget: int) -> tuple[float, float, int]:
    val, err, info = quad(f, lo, hi, epsabs=0.0, epsrel=0.25 * rel_tol, limit=budget, full_output=1)[:3]
    return val, err, info["last"]


def integrate_region(idx, spec: DomainSpec | int, region: Region | str, rel_tol: float = 1e-10,
                     budget: int = DEFAULT_BUDGET) -> QuadratureResult | _Divergent:
    """Normalized moment of one piece by certified adaptive quadrature."""
    if not (1e-14 < rel_tol < 1e-2):
        raise ContractError(f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol}")
    spec = _spec(spec)
    s, t = int(idx[0]), int(idx[1])
    region = Region(region)

    if region is Region.Z:
        a, ea, na = _adaptive(lambda r: r ** (s + 1), 0.0, math.e, rel_tol, budget)
        b, eb, nb = _adaptive(lambda r: r ** (t + 1), 0.0, 2.0, rel_tol, budget)
        val = a * b
        err = ea * b + eb * a
        if err > rel_tol * val:
            raise BudgetExceeded(f"Z-piece quadrature for ({s},{t}) not certified")
        return QuadratureResult(val, err, 0.0, na + nb)

    if region is Region.X:
        log_f = lambda v: _x_log_integrand(s, t, v)  # noqa: E731
        f = _x_integrand(s, t)
        scale = 1.0 / (t + 2)
    else:
        log_f = lambda v: _y_log_integrand(s, t, spec.m, v)  # noqa: E731
        f = _y_integrand(s, t, spec.m)
        scale = 1.0

    q = tail_exponent(log_f)
    if not _converges(q):
        return Divergent

    # shrink the cut-off until the analytic bound on (0, delta) is negligible
    delta = 1e-3
    main, err, used = _adaptive(f, delta, 1.0, rel_tol, budget)
    tail = _tail_bound(region, s, t, spec.m, delta)
    while tail > 0.1 * rel_tol * main and delta > 1e-300:
        extra, e2, n2 = _adaptive(f, delta * 1e-3, delta, rel_tol, budget)
        main += extra
        err += e2
        used += n2
        delta *= 1e-3
        tail = _tail_bound(region, s, t, spec.m, delta)
    if used >= budget or err + tail > rel_tol * main:
        raise BudgetExceeded(
            f"{region.value}-piece quadrature for ({s},{t}), m={spec.m}: "
            f"error {err + tail:.3g} after {used} subdivisions")
    return QuadratureResult(scale * main, scale * err, scale * tail, used)


def _tail_bound(region: Region, s: int, t: int, m: int, delta: float) -> float:
    if region is Region.X:
        # exp(-(t-s)/v) v^t is nondecreasing on (0, 1] when s <= t
        lv = _x_log_integrand(s, t, delta)
        return delta * math.exp(lv) if lv > -700 else 0.0
    # Y: for r2 >= R, integrand <= 2 (1 + R^(1-m))^(s+1) r2^(t-s-m)
    big_r = 2.0 / delta
    p = s + m - 1 - t
    log_b = (math.log(2.0) + (s + 1) * math.log1p(big_r ** (1 - m))
             - p * math.log(big_r) - math.log(p))
    return math.exp(log_b) if log_b > -700 else 0.0


def quadrature_oracle(idx, spec: DomainSpec | int, region: Region | str, rel_tol: float = 1e-10,
                      budget: int = DEFAULT_BUDGET) -> float | _Divergent:
    """Normalized piece moment (float) or ``Divergent``; see :func:`integrate_region`."""
    res = integrate_region(idx, spec, region, rel_tol, budget)
    return res if res is Divergent else res.value


def moment_by_quadrature(s: int, t: int, spec: DomainSpec | int, rel_tol: float = 1e-10,
                         budget: int = DEFAULT_BUDGET) -> float | _Divergent:
    """Normalized total mu_X + mu_Y + mu_Z by quadrature alone."""
    parts = [quadrature_oracle((s, t), spec, reg, rel_tol, budget) for reg in Region]
    if any(p is Divergent for p in parts):
        return Divergent
    return float(np.sum(parts))
