"""Mixed radial moments M(s, t) = int_{Omega_m} |z1|^s |z2|^t dV.

Omega_m is the union of three Reinhardt pieces, written in absolute space
(r1, r2) = (|z1|, |z2|):

    X   : r1 > e,  r2 < 1 / (r1 log r1)
    Y_m : r2 > 2,  |r1 - 1/r2| < r2^-m
    Z   : r1 <= e, r2 <= 2

After the angular integrations every piece contributes 4 pi^2 times a
normalized radial integral mu(s, t):

    mu_Z = e^(s+2) 2^(t+2) / ((s+2)(t+2))
    mu_X = E_{t+2}(t-s) / (t+2)                          (finite iff s <= t)
    mu_Y = 2/(s+2) sum_{j odd} C(s+2, j) 2^(t-s+j(1-m)) / (s-t+j(m-1))
                                                         (finite iff t < s+m-1)

The three contributions are summed as they stand; the pieces meet only on
sets of measure zero. The squared norm of z^a is c_a^2 = M(2 a1, 2 a2).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

from .errors import ContractError, WindowTooSmall
from .expint import expint_en
from .lattice import DomainSpec, _spec, lattice_window, member

FOUR_PI_SQ = 4.0 * math.pi ** 2
_ULP = sys.float_info.epsilon

# relative accuracy guaranteed for expint_en
EXPINT_REL_ERROR = 1e-12

FINITE = "Finite"
DIVERGENT = "Divergent"


class _Divergent:
    """Marker returned in place of a number when an integral diverges."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Divergent"

    def __bool__(self):
        return False


Divergent = _Divergent()


class MomentIndex(NamedTuple):
    s: int
    t: int


class ExactForm(NamedTuple):
    """value = rational * e**e_power * 2**two_power (normalized, without 4 pi^2)."""

    rational: Fraction
    e_power: int = 0
    two_power: int = 0

    def to_json(self) -> dict:
        q = self.rational
        return {"rational": f"{q.numerator}/{q.denominator}",
                "e_power": self.e_power, "two_power": self.two_power}

    def __float__(self) -> float:
        return float(self.rational) * math.ldexp(math.exp(self.e_power), self.two_power)


@dataclass(frozen=True)
class MomentValue:
    """A moment M(s, t) on Omega_m. Parts are in the same (unnormalized) units as ``total``."""

    m: int
    s: int
    t: int
    status: str
    total: float | None
    x_part: float | None
    y_part: float | None
    z_part: float
    abs_error_bound: float
    exact_forms: dict = field(default_factory=dict, compare=False)

    @property
    def finite(self) -> bool:
        return self.status == FINITE

    def to_json(self, parts: bool = True, exact: bool = False) -> dict:
        out = {"m": self.m, "s": self.s, "t": self.t, "status": self.status,
               "total": self.total, "abs_error_bound": self.abs_error_bound,
               "normalization": "4*pi^2"}
        if parts:
            out["parts"] = {"x_part": self.x_part, "y_part": self.y_part, "z_part": self.z_part}
        if exact:
            out["exact_forms"] = {k: (v.to_json() if v is not None else None)
                                  for k, v in self.exact_forms.items()}
        return out


def _check_index(s: int, t: int) -> tuple[int, int]:
    if s < 0 or t < 0 or int(s) != s or int(t) != t:
        raise ContractError(f"moment indices must be nonnegative integers, got ({s},{t})")
    return int(s), int(t)


def x_converges(s: int, t: int) -> bool:
    # int_e^inf x^-p (log x)^-k dx converges iff p > 1, or p == 1 and k > 1;
    # here p = t - s + 1 and k = t + 2 >= 2
    p, k = t - s + 1, t + 2
    return p > 1 or (p == 1 and k > 1)


def y_converges(s: int, t: int, m: int) -> bool:
    return t < s + m - 1


def mu_z_exact(s: int, t: int) -> ExactForm:
    s, t = _check_index(s, t)
    return ExactForm(Fraction(1, (s + 2) * (t + 2)), s + 2, t + 2)


def mu_z(s: int, t: int) -> float:
    s, t = _check_index(s, t)
    return math.ldexp(math.exp(s + 2), t + 2) / ((s + 2) * (t + 2))


def mu_x(s: int, t: int, spec: DomainSpec | int | None = None) -> float | _Divergent:
    """Normalized X-piece moment; the piece does not depend on m."""
    s, t = _check_index(s, t)
    if not x_converges(s, t):
        return Divergent
    return expint_en(t + 2, float(t - s)) / (t + 2)


def mu_x_exact(s: int, t: int) -> ExactForm | None:
    """Closed rational form, available only on the s == t boundary where E_n(0) = 1/(n-1)."""
    if s != t:
        return None
    return ExactForm(Fraction(1, (t + 1) * (t + 2)))


def mu_y_exact(s: int, t: int, spec: DomainSpec | int) -> Fraction | _Divergent:
    """Exact dyadic-rational value of the normalized Y_m moment."""
    m = _spec(spec).m
    s, t = _check_index(s, t)
    if not y_converges(s, t, m):
        return Divergent
    n = s + 2
    total = Fraction(0)
    for j in range(1, n + 1, 2):
        denom = s - t + j * (m - 1)
        # every odd j >= 1 has denom >= the j = 1 one, which is positive here
        total += Fraction(comb(n, j)) * Fraction(2) ** (t - s + j * (1 - m)) / denom
    return Fraction(2, n) * total


def mu_y(s: int, t: int, spec: DomainSpec | int) -> float | _Divergent:
    q = mu_y_exact(s, t, spec)
    return q if q is Divergent else float(q)


_CACHE: dict[tuple[int, int, int], MomentValue] = {}


def _compute(m: int, s: int, t: int) -> MomentValue:
    zq = mu_z_exact(s, t)
    z = mu_z(s, t)
    x = mu_x(s, t)
    yq = mu_y_exact(s, t, m)
    exact = {"z_part": zq, "x_part": mu_x_exact(s, t) if x is not Divergent else None,
             "y_part": ExactForm(yq) if yq is not Divergent else None}
    z_part = FOUR_PI_SQ * z
    err = 4 * _ULP * z_part
    x_part = y_part = None
    if x is not Divergent:
        x_part = FOUR_PI_SQ * x
        err += (EXPINT_REL_ERROR + 4 * _ULP) * x_part
    if yq is not Divergent:
        y_part = FOUR_PI_SQ * float(yq)
        err += 4 * _ULP * y_part
    if x_part is None or y_part is None:
        return MomentValue(m, s, t, DIVERGENT, None, x_part, y_part, z_part, 0.0, exact)
    total = x_part + y_part + z_part
    err += 2 * _ULP * total
    return MomentValue(m, s, t, FINITE, total, x_part, y_part, z_part, err, exact)


def moment(s: int, t: int, spec: DomainSpec | int) -> MomentValue:
    """M(s, t) on Omega_m, memoized per (m, s, t)."""
    m = _spec(spec).m
    s, t = _check_index(s, t)
    key = (m, s, t)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    # setdefault keeps whichever value was stored first
    return _CACHE.setdefault(key, _compute(m, s, t))


def is_finite(s: int, t: int, spec: DomainSpec | int) -> bool:
    m = _spec(spec).m
    return x_converges(s, t) and y_converges(s, t, m)


def norm_sq(idx: tuple[int, int], spec: DomainSpec | int) -> float:
    """c_a^2 for a member of R_m."""
    mv = moment(2 * idx[0], 2 * idx[1], spec)
    if not mv.finite:
        raise ContractError(f"z^{tuple(idx)} is not square integrable on Omega_{_spec(spec).m}")
    return mv.total


# -- boundedness constant --------------------------------------------------

def _xy_over_z(a1: int, a2: int, m: int) -> float:
    """(mu_X + mu_Y)(2a1+2, 2a2) / mu_Z(2a1, 2a2), exactly evaluated."""
    s, t = 2 * a1 + 2, 2 * a2
    return (mu_x(s, t) + mu_y(s, t, m)) / mu_z(2 * a1, 2 * a2)


def _xy_over_z_majorant(a1: int, a2: int, m: int) -> float:
    """Analytic upper bound for ``_xy_over_z``, nonincreasing along each diagonal.

    Uses E_n(x) <= 1/(n-1) and (A+B)^n - (A-B)^n <= 2nB(A+B)^(n-1).
    """
    s0, t = 2 * a1, 2 * a2
    s = s0 + 2
    log_z = (s0 + 2) + (t + 2) * math.log(2) - math.log((s0 + 2) * (t + 2))
    x_bound = 1.0 / ((t + 1) * (t + 2))
    log_y = (math.log(2) + (s + 1) * math.log1p(2.0 ** (1 - m))
             + (t - s - m + 1) * math.log(2) - math.log(s + m - 1 - t))
    return x_bound * math.exp(-log_z) + math.exp(log_y - log_z)


def ratio(idx: tuple[int, int], spec: DomainSpec | int) -> float:
    """c^2_(a1+1, a2) / c^2_(a1+2, a2), the coefficient of T_phi on monomials."""
    a1, a2 = idx
    return moment(2 * a1 + 2, 2 * a2, spec).total / moment(2 * a1 + 4, 2 * a2, spec).total


def bound_constant(spec: DomainSpec | int, window: int | None = None) -> float:
    """A constant C with c^2_(a1+1,a2) / c^2_(a1+2,a2) <= C over all of R_m.

    C = sup (mu_X + mu_Y)(numerator) / mu_Z(a1, a2) + e^2. The numerator's
    polydisc part over that of z^a is e^2 (a1+1)/(a1+2) <= e^2 and mu_Z of the
    denominator dominates mu_Z(2a1, 2a2). The sup is taken exactly inside the
    window and through a decreasing majorant beyond it.
    """
    spec = _spec(spec)
    m = spec.m
    if window is None:
        window = 4 * m
    if window < 2 * spec.r:
        raise WindowTooSmall(f"window {window} < 2r = {2 * spec.r}")
    sup = 0.0
    for a1, a2 in lattice_window(spec, window):
        if member(spec, (a1 + 2, a2)):
            sup = max(sup, _xy_over_z(a1, a2, m))
    # first points past the window on each diagonal that admits a shift by 2
    for d in range(2, spec.max_offset + 1):
        a2 = window + 1
        a1 = a2 - d
        sup = max(sup, _xy_over_z_majorant(a1, a2, m))
    return sup + math.e ** 2


def clear_cache() -> None:
    _CACHE.clear()
