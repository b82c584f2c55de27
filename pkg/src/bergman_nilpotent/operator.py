"""Toeplitz operators with quasi-homogeneous monomial symbols as weighted shifts.

A symbol u = z1^a conj(z1)^-b z2^c conj(z2)^-d sends the orthonormal basis
vector e_alpha = z^alpha / c_alpha to a multiple of e_gamma with

    gamma = (alpha1 + a + b, alpha2 + c + d),

since the angular integrals kill every other basis vector. The multiple is

    w(alpha) = M(2(alpha1 + a), 2(alpha2 + c)) / (c_alpha c_gamma).

For phi = z1 / conj(z1), (a, b, c, d) = (1, 1, 0, 0), which moves alpha1 by 2.
A negative b or d means a power of conj(z) in the numerator (a backward shift).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from .errors import ContractError, PointOutsideSupportedRegion, UndefinedWeightError
from .lattice import DomainSpec, MultiIndex, _spec, diagonal_major, lattice_window, member
from .moments import moment, norm_sq


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


Undefined = _Undefined()


@dataclass(frozen=True)
class Symbol:
    """Exponents of u = z1^a conj(z1)^-b z2^c conj(z2)^-d."""

    a: int
    b: int
    c: int = 0
    d: int = 0

    def __post_init__(self):
        if self.a < 0 or self.c < 0:
            raise ContractError("holomorphic exponents a, c must be nonnegative")

    @property
    def shift(self) -> tuple[int, int]:
        return (self.a + self.b, self.c + self.d)

    @property
    def radial_degree(self) -> tuple[int, int]:
        return (self.a - self.b, self.c - self.d)

    @property
    def is_forward(self) -> bool:
        return self.b >= 0 and self.d >= 0

    def __str__(self) -> str:
        num, den = [], []

        def power(base, k):
            return base if k == 1 else f"{base}^{k}"

        for var, hol, anti in (("z1", self.a, self.b), ("z2", self.c, self.d)):
            if hol:
                num.append(power(var, hol))
            if anti > 0:
                den.append(power(f"conj({var})", anti))
            elif anti < 0:
                num.append(power(f"conj({var})", -anti))
        text = "*".join(num) or "1"
        return f"{text}/{'*'.join(den)}" if den else text

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


PHI = Symbol(1, 1, 0, 0)


class CoefficientVector(Mapping):
    """Finitely supported coefficients over the basis {z^g / c_g : g in R_m}."""

    def __init__(self, spec: DomainSpec | int, entries: Mapping | Iterable = ()):
        self.spec = _spec(spec)
        data: dict[MultiIndex, complex] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, val in items:
            idx = MultiIndex(*key)
            if not member(self.spec, idx):
                raise ContractError(f"{idx} is not in R_{self.spec.m}")
            if val != 0:
                data[idx] = data.get(idx, 0) + val
        self._data = {k: v for k, v in data.items() if v != 0}

    @classmethod
    def basis(cls, spec, idx, coeff=1.0) -> CoefficientVector:
        return cls(spec, {tuple(idx): coeff})

    def __getitem__(self, key):
        return self._data.get(MultiIndex(*key), 0.0)

    def __contains__(self, key):
        return MultiIndex(*key) in self._data

    def __iter__(self):
        return iter(sorted(self._data))

    def __len__(self):
        return len(self._data)

    def __add__(self, other: CoefficientVector) -> CoefficientVector:
        merged = dict(self._data)
        for k, v in other._data.items():
            merged[k] = merged.get(k, 0) + v
        return CoefficientVector(self.spec, merged)

    def __mul__(self, scalar) -> CoefficientVector:
        return CoefficientVector(self.spec, {k: scalar * v for k, v in self._data.items()})

    __rmul__ = __mul__

    def norm_sq(self) -> float:
        return math.fsum(abs(v) ** 2 for v in self._data.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def is_zero(self) -> bool:
        return not self._data

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in sorted(self._data.items()))
        return f"CoefficientVector(m={self.spec.m}, {{{body}}})"


class ShiftOperator:
    """T_u on A^2(Omega_m) for a monomial symbol u."""

    def __init__(self, spec: DomainSpec | int, symbol: Symbol = PHI):
        self.spec = _spec(spec)
        self.symbol = symbol

    def __repr__(self):
        return f"ShiftOperator(m={self.spec.m}, symbol={self.symbol})"

    @property
    def factors(self) -> tuple[ShiftOperator, ...]:
        return (self,)

    def _require_member(self, alpha) -> MultiIndex:
        alpha = MultiIndex(*alpha)
        if not member(self.spec, alpha):
            raise ContractError(f"{alpha} is not in R_{self.spec.m}")
        return alpha

    def target(self, alpha) -> MultiIndex | None:
        alpha = self._require_member(alpha)
        p, q = self.symbol.shift
        gamma = (alpha.a1 + p, alpha.a2 + q)
        return MultiIndex(*gamma) if member(self.spec, gamma) else None

    def weight(self, alpha):
        """Coefficient w with T_u e_alpha = w e_target, None, or ``Undefined``."""
        gamma = self.target(alpha)
        if gamma is None:
            return None
        a1, a2 = alpha
        s_star = 2 * (a1 + self.symbol.a)
        t_star = 2 * (a2 + self.symbol.c)
        if s_star < 0 or t_star < 0:
            return Undefined
        num = moment(s_star, t_star, self.spec)
        if not num.finite:
            return Undefined
        return num.total / math.sqrt(norm_sq(alpha, self.spec) * norm_sq(gamma, self.spec))

    def monomial_coefficient(self, alpha) -> float | None:
        """Coefficient of z^gamma in T_u(z^alpha), i.e. in the unnormalized monomial basis."""
        gamma = self.target(alpha)
        if gamma is None:
            return None
        w = self.weight(alpha)
        if w is Undefined:
            raise UndefinedWeightError([alpha])
        return w * math.sqrt(norm_sq(alpha, self.spec) / norm_sq(gamma, self.spec))

    def apply_basis(self, alpha) -> tuple[MultiIndex, float] | None:
        w = self.weight(alpha)
        if w is None:
            return None
        if w is Undefined:
            raise UndefinedWeightError([alpha])
        return self.target(alpha), w

    def apply(self, v: CoefficientVector) -> CoefficientVector:
        out: dict[MultiIndex, complex] = {}
        bad = []
        for alpha, coeff in v.items():
            w = self.weight(alpha)
            if w is None:
                continue
            if w is Undefined:
                bad.append(alpha)
                continue
            gamma = self.target(alpha)
            out[gamma] = out.get(gamma, 0) + w * coeff
        if bad:
            raise UndefinedWeightError(bad)
        return CoefficientVector(self.spec, out)

    def power_apply(self, k: int, v: CoefficientVector) -> CoefficientVector:
        if k < 1:
            raise ContractError("power must be >= 1")
        for _ in range(k):
            v = self.apply(v)
            if v.is_zero():
                break
        return v

    def __matmul__(self, other) -> CompositeOperator:
        return compose(self, other)


class CompositeOperator:
    """Product of shift operators; ``factors`` are applied right to left."""

    def __init__(self, factors: Iterable[ShiftOperator]):
        flat = []
        for f in factors:
            flat.extend(f.factors)
        if not flat:
            raise ContractError("empty composition")
        specs = {f.spec for f in flat}
        if len(specs) != 1:
            raise ContractError("all factors must act on the same domain")
        self.spec = flat[0].spec
        self.factors = tuple(flat)

    def __repr__(self):
        inner = " . ".join(str(f.symbol) for f in self.factors)
        return f"CompositeOperator(m={self.spec.m}, {inner})"

    @property
    def shift(self) -> tuple[int, int]:
        return (sum(f.symbol.shift[0] for f in self.factors),
                sum(f.symbol.shift[1] for f in self.factors))

    def apply_basis(self, alpha) -> tuple[MultiIndex, float] | None:
        idx = MultiIndex(*alpha)
        coeff = 1.0
        for f in reversed(self.factors):
            step = f.apply_basis(idx)
            if step is None:
                return None
            idx, w = step
            coeff *= w
        return idx, coeff

    def apply(self, v: CoefficientVector) -> CoefficientVector:
        for f in reversed(self.factors):
            v = f.apply(v)
        return v

    def diagonal_exits(self) -> list[dict]:
        """For each diagonal of R_m, where the composite's offset path leaves the lattice.

        Far enough along a diagonal every component stays nonnegative, so
        whether the composite kills that diagonal depends only on offsets.
        """
        rows = []
        top = self.spec.max_offset
        for d in range(top + 1):
            path = [d]
            exit_step = None
            offset = d
            for step, f in enumerate(reversed(self.factors), start=1):
                p, q = f.symbol.shift
                offset += q - p
                path.append(offset)
                if not 0 <= offset <= top:
                    exit_step = step
                    break
            rows.append({"offset": d, "path": path, "exit_step": exit_step})
        return rows

    @property
    def is_zero(self) -> bool:
        return all(row["exit_step"] is not None for row in self.diagonal_exits())


def compose(op1, op2) -> CompositeOperator:
    """op1 after op2."""
    return CompositeOperator([op1, op2])


def power(op: ShiftOperator, k: int) -> CompositeOperator:
    if k < 1:
        raise ContractError("power must be >= 1")
    return CompositeOperator([op] * k)


@dataclass(frozen=True)
class TruncatedMatrix:
    """Compression of an operator to the span of a finite window of basis vectors."""

    window: tuple[MultiIndex, ...]
    matrix: sp.csr_matrix
    m: int
    symbol: Symbol | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def pattern(self) -> sp.csr_matrix:
        pat = self.matrix.copy()
        pat.data = np.ones_like(pat.data, dtype=np.int64)
        return pat.astype(np.int64)

    def index_of(self, idx) -> int:
        return self.window.index(MultiIndex(*idx))


def truncated_matrix(op, n: int, order: str = "diagonal-major") -> TruncatedMatrix:
    """Matrix of ``op`` on lattice_window(n); images leaving the window are dropped."""
    if n < 0:
        raise ContractError("window size must be nonnegative")
    pts = lattice_window(op.spec, n)
    window = tuple(diagonal_major(pts) if order == "diagonal-major" else pts)
    pos = {idx: i for i, idx in enumerate(window)}
    rows, cols, vals = [], [], []
    bad = []
    for j, alpha in enumerate(window):
        try:
            img = op.apply_basis(alpha)
        except UndefinedWeightError:
            bad.append(alpha)
            continue
        if img is None:
            continue
        gamma, w = img
        i = pos.get(gamma)
        if i is not None:
            rows.append(i)
            cols.append(j)
            vals.append(w)
    if bad:
        raise UndefinedWeightError(bad)
    size = len(window)
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(size, size), dtype=float)
    symbol = op.symbol if isinstance(op, ShiftOperator) else None
    return TruncatedMatrix(window, mat, op.spec.m, symbol)


def pattern_power_nnz(tm: TruncatedMatrix, d: int) -> int:
    """Number of structurally nonzero entries of the d-th power of the sparsity pattern."""
    pat = tm.pattern()
    acc = pat
    for _ in range(d - 1):
        acc = acc @ pat
        acc.eliminate_zeros()
    return acc.nnz


def operator_norm_estimate(op: ShiftOperator, n: int) -> float:
    """Largest weight over basis vectors in lattice_window(n).

    Targets are distinct for distinct sources, so this is the operator norm of
    the weighted shift restricted to the window.
    """
    best = 0.0
    bad = []
    for alpha in lattice_window(op.spec, n):
        w = op.weight(alpha)
        if w is None:
            continue
        if w is Undefined:
            bad.append(alpha)
            continue
        best = max(best, w)
    if bad:
        raise UndefinedWeightError(bad)
    return best


def kernel_partial_sum(spec: DomainSpec | int, z, w, n: int) -> complex:
    """Sum over lattice_window(n) of z^g conj(w^g) / c_g^2."""
    spec = _spec(spec)
    for pt in (z, w):
        if abs(pt[0]) > math.e or abs(pt[1]) > 2.0:
            raise PointOutsideSupportedRegion(f"{pt} lies outside |z1| <= e, |z2| <= 2")
    z1, z2 = complex(z[0]), complex(z[1])
    w1, w2 = complex(w[0]).conjugate(), complex(w[1]).conjugate()
    total = 0j
    for g1, g2 in lattice_window(spec, n):
        total += (z1 * w1) ** g1 * (z2 * w2) ** g2 / norm_sq((g1, g2), spec)
    return total


def monomial_to_basis(spec, coeffs: Mapping) -> CoefficientVector:
    """Convert {alpha: coefficient of z^alpha} into orthonormal-basis coordinates."""
    spec = _spec(spec)
    return CoefficientVector(spec, {k: v * math.sqrt(norm_sq(k, spec)) for k, v in coeffs.items()})


def evaluate(v: CoefficientVector, z) -> complex:
    """Value at the point z of the function with coefficient vector v."""
    z1, z2 = complex(z[0]), complex(z[1])
    return sum(c * z1 ** a1 * z2 ** a2 / math.sqrt(norm_sq((a1, a2), v.spec))
               for (a1, a2), c in v.items())


__all__ = [
    "PHI", "CoefficientVector", "CompositeOperator", "ShiftOperator", "Symbol",
    "TruncatedMatrix", "Undefined", "compose", "evaluate", "kernel_partial_sum",
    "monomial_to_basis", "operator_norm_estimate", "pattern_power_nnz", "power",
    "truncated_matrix",
]
