import math

import pytest

from bergman_nilpotent.errors import ContractError
from bergman_nilpotent.moments import bound_constant
from bergman_nilpotent.operator import PHI, CompositeOperator, ShiftOperator, Symbol, truncated_matrix
from bergman_nilpotent.verify import (
    degree_scan,
    forward_symbols,
    matrix_nilpotency_index,
    verify_proposition,
    zero_product_search,
)


@pytest.mark.parametrize("m, degree, claim, agree", [
    (9, 2, 2, True),
    (6, 2, 1, False),
    (12, 3, 3, True),
])
def test_verify_proposition_examples(m, degree, claim, agree):
    rep = verify_proposition(m)
    assert (rep.degree_lattice, rep.degree_floor_m_over_4, rep.degrees_agree) == (degree, claim, agree)
    assert rep.passed
    assert rep.nonzero_witness is not None
    assert len(rep.rank_witnesses) >= rep.window / 2


def test_verify_degenerate_domain():
    rep = verify_proposition(5, 8)
    assert rep.degree_lattice == 1
    assert rep.nonzero_witness is None
    assert rep.norm_bound == 0.0
    assert rep.passed


def test_verify_window_precondition():
    with pytest.raises(ContractError):
        verify_proposition(9, 15)


@pytest.mark.parametrize("m", range(6, 17))
def test_report_invariants(m):
    rep = verify_proposition(m)
    assert rep.norm_bound <= math.sqrt(bound_constant(m))
    assert rep.norm_bound <= 1 + 1e-12
    assert len(set(rep.rank_witnesses)) == len(rep.rank_witnesses)
    assert (rep.nonzero_witness is not None) == (rep.degree_lattice >= 2)
    assert rep.degree_lattice == matrix_nilpotency_index(m, 4 * m)


def test_report_json_shape():
    doc = verify_proposition(9).to_json()
    assert doc["nonzero_witness"] == [0, 2]
    assert doc["degree_floor_m_over_4"] == 2
    assert set(doc["checks"]) == {"i_nonzero", "ii_infinite_rank", "iii_bounded", "iv_power_confirms_degree"}


def test_degree_scan_examples():
    rows = degree_scan(8, 9)
    assert [(r.degree_lattice, r.agree) for r in rows] == [(2, True), (2, True)]
    rows = degree_scan(10, 11)
    assert [(r.degree_lattice, r.floor_m_over_4, r.agree) for r in rows] == [(3, 2, False)] * 2
    assert {r.degree_lattice for r in degree_scan(2, 5)} == {1}
    with pytest.raises(ContractError):
        degree_scan(5, 65)


def test_forward_symbols():
    syms = forward_symbols(2)
    assert syms == [Symbol(1, 0), Symbol(0, 1), Symbol(2, 0), Symbol(1, 1), Symbol(0, 2)]


def test_zero_product_search_m9():
    certs = zero_product_search(9)
    pairs = {(c.u, c.v) for c in certs}
    assert (PHI, PHI) in pairs
    # r = 4: each factor advances less than r, together at least r
    assert (Symbol(1, 0), Symbol(3, 0)) in pairs
    for c in certs:
        assert c.u.shift[0] < 4 and c.v.shift[0] < 4
        assert c.u.shift[0] + c.v.shift[0] >= 4
        assert c.recheck()
        assert all(row["exit_step"] is not None for row in c.exit_proof)
        assert [row["offset"] for row in c.exit_proof] == [0, 1, 2, 3]


def test_zero_product_search_m6_matrices_vanish():
    certs = zero_product_search(6, max_degree=3)
    assert certs
    for c in certs:
        comp = CompositeOperator([ShiftOperator(6, c.u), ShiftOperator(6, c.v)])
        assert truncated_matrix(comp, 12).matrix.nnz == 0


def test_certificate_recheck_detects_forgery():
    cert = zero_product_search(12)[0]
    cert.v = Symbol(1, 0)
    assert not cert.recheck()
