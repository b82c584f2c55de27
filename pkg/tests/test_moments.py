import itertools
import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from bergman_nilpotent.errors import WindowTooSmall
from bergman_nilpotent.lattice import lattice_window, member
from bergman_nilpotent.moments import (
    DIVERGENT,
    FINITE,
    FOUR_PI_SQ,
    Divergent,
    _xy_over_z,
    _xy_over_z_majorant,
    bound_constant,
    clear_cache,
    moment,
    mu_x,
    mu_y,
    mu_y_exact,
    mu_z,
    mu_z_exact,
    ratio,
)
from bergman_nilpotent.quadrature import quadrature_oracle

E = math.e


def test_mu_z_examples():
    assert mu_z(0, 0) == pytest.approx(E ** 2, rel=1e-15)
    assert mu_z(2, 0) == pytest.approx(E ** 4 / 2, rel=1e-15)
    assert mu_z(0, 2) == pytest.approx(2 * E ** 2, rel=1e-15)


def test_mu_z_against_direct_polydisc_integral():
    # int_0^e int_0^2 r1^(s+1) r2^(t+1) dr2 dr1 by 2-D quadrature
    for s, t in [(0, 2), (3, 1), (5, 7)]:
        val, _ = integrate.dblquad(lambda r2, r1: r1 ** (s + 1) * r2 ** (t + 1), 0, E, 0, 2,
                                   epsabs=0, epsrel=1e-13)
        assert mu_z(s, t) == pytest.approx(val, rel=1e-12)


def test_mu_z_exact_form():
    q = mu_z_exact(2, 4)
    assert q.rational == Fraction(1, 24)
    assert (q.e_power, q.two_power) == (4, 6)
    assert q.to_json() == {"rational": "1/24", "e_power": 4, "two_power": 6}
    assert float(q) == pytest.approx(mu_z(2, 4), rel=1e-15)


def test_mu_x_examples():
    # antiderivative -1/log r of 1/(r log^2 r) gives 1 on [e, inf); divide by t + 2 = 2
    assert mu_x(0, 0) == 0.5
    assert mu_x(2, 0) is Divergent
    # E_4(2)/4 with E_4(2) from 30-digit quadrature
    assert mu_x(0, 2) == pytest.approx(0.0250228412136603018396798830109 / 4, rel=1e-12)
    assert mu_x(0, 2) == pytest.approx(0.00625571030341507545991997075273, rel=1e-12)


def test_mu_y_examples():
    assert mu_y_exact(0, 0, 6) == Fraction(1, 80)
    # 30-digit nested quadrature of the Y_6 integral
    assert mu_y(2, 2, 6) == pytest.approx(0.0125040690104166666666666666667, rel=1e-12)
    assert mu_y(3, 5, 4) == pytest.approx(1.00446804172325882167470271871, rel=1e-12)
    assert mu_y(4, 2, 3) is not Divergent
    assert mu_y(0, 4, 5) is Divergent


def test_mu_y_is_dyadic_rational():
    q = mu_y_exact(6, 9, 7)
    assert isinstance(q, Fraction)
    # denominators come only from 2-powers, s+2 and the (s - t + j(m-1)) factors
    assert q > 0


def test_moment_examples():
    mv = moment(0, 0, 6)
    assert mv.status == FINITE
    assert mv.total == pytest.approx(FOUR_PI_SQ * (0.5 + 1 / 80 + E ** 2), rel=1e-14)
    assert mv.total == pytest.approx(311.940931397841636064435074151, rel=1e-14)
    assert abs(mv.total - (mv.x_part + mv.y_part + mv.z_part)) <= mv.abs_error_bound
    for m in (2, 6, 9, 17):
        assert moment(2, 0, m).status == DIVERGENT


def test_exact_forms_serialize():
    mv = moment(0, 0, 6)
    doc = mv.to_json(exact=True)
    assert doc["exact_forms"]["y_part"] == {"rational": "1/80", "e_power": 0, "two_power": 0}
    assert doc["exact_forms"]["x_part"]["rational"] == "1/2"
    assert moment(0, 2, 6).exact_forms["x_part"] is None


@pytest.mark.parametrize("m", range(2, 17))
def test_finiteness_matches_lattice(m):
    for a1, a2 in itertools.product(range(21), repeat=2):
        assert moment(2 * a1, 2 * a2, m).finite == member(m, (a1, a2))


@pytest.mark.parametrize("m", [2, 5, 6, 9])
def test_closed_forms_match_quadrature(m):
    for s, t in itertools.product(range(0, 16, 3), range(0, 16, 2)):
        for region, closed in (("X", mu_x(s, t)), ("Y", mu_y(s, t, m)), ("Z", mu_z(s, t))):
            q = quadrature_oracle((s, t), m, region, rel_tol=1e-10)
            if closed is Divergent:
                assert q is Divergent
            else:
                assert q == pytest.approx(closed, rel=1e-8)


def _finite_grid(m, top=40):
    return [(s, t) for s in range(top + 1) for t in range(top + 1) if moment(s, t, m).finite]


@pytest.mark.parametrize("m", [2, 6, 9, 16])
def test_log_convexity(m):
    for s, t in _finite_grid(m, 30):
        a, b, c = (moment(s + k, t, m) for k in (0, 2, 4))
        if a.finite and b.finite and c.finite:
            assert b.total ** 2 <= a.total * c.total * (1 + 1e-12)


@settings(max_examples=150)
@given(st.integers(2, 20), st.integers(0, 30), st.integers(0, 30))
def test_y_part_shrinks_with_m(m, s, t):
    if t < s:
        return
    big, small = mu_y(s, t, m + 2), mu_y(s, t, m)
    if big is Divergent or small is Divergent:
        return
    assert big <= small


def test_bound_constant_examples():
    c6 = bound_constant(6)
    assert c6 >= E ** 2
    c9 = bound_constant(9, 20)
    for n in (20, 40):
        for a1, a2 in lattice_window(9, n):
            if member(9, (a1 + 2, a2)):
                assert ratio((a1, a2), 9) <= c9


@pytest.mark.parametrize("m", [6, 7, 9, 12, 16])
def test_bound_constant_covers_larger_window(m):
    c = bound_constant(m, 2 * (m // 2))
    for a1, a2 in lattice_window(m, 4 * m):
        if member(m, (a1 + 2, a2)):
            assert ratio((a1, a2), m) <= c


def test_bound_constant_window_too_small():
    with pytest.raises(WindowTooSmall):
        bound_constant(9, 7)


@pytest.mark.parametrize("m", [6, 9, 12])
def test_tail_majorant_dominates_and_decreases(m):
    top = m // 2 - 1 if m % 2 == 0 else (m - 1) // 2 - 1
    for d in range(2, top + 1):
        prev = math.inf
        for a1 in range(0, 40):
            a2 = a1 + d
            exact, bound = _xy_over_z(a1, a2, m), _xy_over_z_majorant(a1, a2, m)
            assert exact <= bound
            assert bound <= prev
            prev = bound


def test_memo_is_first_writer_wins_and_deterministic():
    clear_cache()
    results = []

    def work():
        results.append(moment(10, 14, 11))

    threads = [threading.Thread(target=work) for _ in range(16)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    first = moment(10, 14, 11)
    assert all(r == first for r in results)
    assert moment(10, 14, 11) is first
