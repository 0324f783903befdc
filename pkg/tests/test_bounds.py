"""Group orders, exact product estimates, and inequality certificates."""

import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from e1forge.bounds import (
    BoundsError,
    certify,
    certify_all,
    eval_poly,
    gl_order,
    group_order,
    gu_order,
    load_registry,
    mg,
    odd_part,
    order_estimate_check,
    parse_expression,
    parse_range,
    replay_witness,
)


def test_odd_part():
    assert odd_part(1) == 1
    assert odd_part(96) == 3
    assert odd_part(181440) == 2835


def test_gl_small_orders():
    assert gl_order(2, 2) == 6
    assert gl_order(2, 4) == 180
    assert gl_order(3, 2) == 168
    assert gl_order(3, 4) == 181440


def test_gu_small_orders():
    assert gu_order(2, 2) == 18
    assert gu_order(2, 4) == 300
    assert gu_order(3, 2) == 648


def test_projective_unitary_order():
    assert group_order("PGU", 3, 4).value == 62400
    assert group_order("PGL", 3, 4).value == 181440 // 3
    assert group_order("SU", 3, 2).value == 648 // 3


def test_group_order_rejects_bad_input():
    with pytest.raises(BoundsError):
        group_order("GL", 2, 6)
    with pytest.raises(BoundsError):
        group_order("GO", 2, 4)


def test_order_estimate_grid():
    for a in range(2, 65):
        for m in range(2, 21):
            assert order_estimate_check(a, m)


def test_order_estimate_rational_base():
    assert order_estimate_check(Fraction(5, 2), 6)


def test_mg_table():
    assert mg("E6", 2).value == 2**48
    assert mg("PSL", 16, d=3).value == 62401
    assert mg("PSL", 4, d=3).value == 4**4
    assert mg("PSL", 4, d=3, epsilon=-1).value == 4**4 + 4**3
    assert mg("PSL", 8, d=5).value == 8**15
    assert mg("PO8+", 4).value == 4**14 + 4**12
    with pytest.raises(BoundsError):
        mg("PSL", 4, d=4)


def test_expression_parser():
    assert parse_expression("q^2") == {(2, 0): 1}
    assert parse_expression("3q^26+12q^24") == {(26, 0): 3, (24, 0): 12}
    assert parse_expression("2f(q+1)^2") == {(2, 1): 2, (1, 1): 4, (0, 1): 2}
    assert parse_expression("q^3-2q^2") == {(3, 0): 1, (2, 0): -2}
    assert parse_expression("(6f-1)^2") == {(0, 2): 36, (0, 1): -12, (0, 0): 1}


@given(st.integers(min_value=1, max_value=40))
@settings(max_examples=50)
def test_eval_poly_matches_direct(f):
    q = 2**f
    poly = parse_expression("q^3(q-1) - 7f + 2")
    assert eval_poly(poly, f) == q**3 * (q - 1) - 7 * f + 2


def test_certify_finite_range():
    cert = certify("t", "q^2", ">", "q", 1, 10)
    assert cert.status == "verified"
    cert = certify("t", "q", ">", "q^2", 1, 10)
    assert cert.status == "failed"


def test_certify_tail_with_witness():
    cert = certify("t", "q^2", ">", "64q", 7, None)
    assert cert.status == "verified"
    assert "f0" in cert.witness
    assert replay_witness(cert)


def test_certify_tail_unprovable():
    # equal leading terms: the difference has no dominating term
    cert = certify("t", "q^2", ">", "q^2-1", 1, None)
    assert cert.status in ("verified", "tail-unproved")
    cert = certify("t", "q", ">", "q^2", 1, None)
    assert cert.status in ("failed", "tail-unproved")


def test_replay_rejects_tampered_witness():
    cert = certify("t", "q^3", ">", "5q^2+fq", 3, None)
    assert cert.status == "verified" and replay_witness(cert)
    bad = type(cert)(
        cert.id, "q^3", ">", "5q^2+fq+q^3", cert.range_start, None,
        cert.status, cert.witness, cert.anchor,
    )
    assert not replay_witness(bad)


def test_parse_range():
    assert parse_range("7..19") == (7, 19)
    assert parse_range("21+") == (21, None)
    with pytest.raises(BoundsError):
        parse_range("7")


def test_registry_all_entries_verify():
    certs = certify_all()
    assert len(certs) >= 15
    for cert in certs:
        assert cert.status == "verified", cert.id
        if cert.range_end is None:
            assert replay_witness(cert), cert.id


def test_group_order_ceilings():
    # |GL_d(q)| <= q^{d^2}; |GU_d(q)| <= q^{d^2+1/2} for q >= 4 (squared to
    # stay exact) and <= q^{d^2+2} for q = 2
    for q in (2, 4, 8):
        for d in range(1, 13):
            assert gl_order(d, q) <= q ** (d * d)
            gu = gu_order(d, q)
            # the uniform rational ceiling (1 - 1/q - 1/q^2)^{-1} q^{d^2}
            assert gu * (q * q - q - 1) <= q ** (d * d + 2)
            if q >= 4:
                assert gu**2 <= q ** (2 * d * d + 1)
            else:
                assert gu <= q ** (d * d + 2)


def test_registry_contains_required_entries():
    ids = {e[0] for e in load_registry()}
    assert "psu3-deg-gap" in ids  # the 7..19 finite window
    assert "psu3-tail" in ids  # the integerized f >= 21 tail
    assert "e6-class321-bulk" in ids
