"""Exponent lattice R_m of monomials that are square integrable on Omega_m.

A monomial z1^a1 z2^a2 has finite norm on Omega_m exactly when

    a2 >= a1   and   a1 > a2 - (m - 1)/2,

so membership only depends on the offset ``a2 - a1``, which ranges over
``0 .. r - 1`` (``r`` diagonals). Everything here uses integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ContractError


class MultiIndex(NamedTuple):
    a1: int
    a2: int

    @property
    def offset(self) -> int:
        return self.a2 - self.a1

    def __str__(self) -> str:
        return f"({self.a1},{self.a2})"


def multi_index(a1: int, a2: int) -> MultiIndex:
    if a1 < 0 or a2 < 0:
        raise ContractError(f"multi-index components must be nonnegative, got ({a1},{a2})")
    return MultiIndex(int(a1), int(a2))


@dataclass(frozen=True)
class DomainSpec:
    """The parameter ``m`` of Omega_m together with its lattice constants."""

    m: int
    r: int = field(init=False)
    max_offset: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ContractError(f"m must be an integer >= 2, got {self.m!r}")
        r = self.m // 2 if self.m % 2 == 0 else (self.m - 1) // 2
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "max_offset", r - 1)


def _spec(spec: DomainSpec | int) -> DomainSpec:
    return spec if isinstance(spec, DomainSpec) else DomainSpec(spec)


def member(spec: DomainSpec | int, idx: tuple[int, int]) -> bool:
    """True iff z^idx lies in the Bergman space of Omega_m."""
    m = _spec(spec).m
    a1, a2 = idx
    if a1 < 0 or a2 < 0:
        return False
    return a2 >= a1 and 2 * a1 + m - 1 > 2 * a2


def diagonal_count(spec: DomainSpec | int) -> int:
    return _spec(spec).r


def shift_stays(spec: DomainSpec | int, idx: tuple[int, int], s: int) -> bool:
    """Whether moving ``idx`` right by ``s`` along the a1 axis stays in R_m."""
    spec = _spec(spec)
    if s < 0:
        raise ContractError("shift must be nonnegative")
    if not member(spec, idx):
        raise ContractError(f"{tuple(idx)} is not in R_{spec.m}")
    return member(spec, (idx[0] + s, idx[1]))


def lattice_window(spec: DomainSpec | int, n: int) -> list[MultiIndex]:
    """Members of R_m inside [0, n]^2 in lexicographic order."""
    spec = _spec(spec)
    if n < 0:
        raise ContractError("window size must be nonnegative")
    out = []
    for a1 in range(n + 1):
        for a2 in range(a1, min(n, a1 + spec.max_offset) + 1):
            out.append(MultiIndex(a1, a2))
    return out


def diagonal_major(indices) -> list[MultiIndex]:
    """Sort by offset ``a2 - a1`` first, then by ``a1``."""
    return sorted((MultiIndex(*i) for i in indices), key=lambda i: (i.a2 - i.a1, i.a1))


def nilpotency_degree_lattice(spec: DomainSpec | int, step: int = 2) -> int:
    """Smallest k with every point of R_m pushed out of the lattice by k shifts of ``step``.

    A shift along a1 lowers the offset by ``step`` and R_m is closed under
    raising a1 as long as the offset stays >= 0, so the worst case is the top
    diagonal (offset r - 1) and the answer is ceil(r / step).
    """
    spec = _spec(spec)
    if step < 1:
        raise ContractError("step must be >= 1")
    return max(1, -(-spec.r // step))


def nilpotency_degree_bruteforce(spec: DomainSpec | int, step: int = 2, n: int | None = None) -> int:
    """Same quantity, found by shifting every point of a finite window."""
    spec = _spec(spec)
    if n is None:
        n = 4 * spec.m
    points = lattice_window(spec, n)
    k = 1
    while any(member(spec, (a1 + k * step, a2)) for a1, a2 in points):
        k += 1
    return k
