import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from shift_square import ShiftInstance, verify_witness, witness_family
from square_products import (SquareProductCertificate, enumerate_square_products,
                             is_square_product, scan_square_products, square_product_bound)


def test_no_square_product_for_k_1():
    assert enumerate_square_products(1) == []


def test_k_3_has_single_value():
    (cert,) = enumerate_square_products(3)
    assert (cert.a, cert.b, cert.c, cert.t) == (1, 1, 1, 2)
    assert cert.root == 2


def test_k_9_values_and_certificates():
    certs = enumerate_square_products(9)
    assert [c.a for c in certs] == [3, 16]
    three, sixteen = certs
    assert (three.b, three.c, three.t, three.root) == (1, 3, 2, 6)
    assert (sixteen.b, sixteen.c, sixteen.t, sixteen.root) == (4, 1, 5, 20)


@pytest.mark.parametrize("a, k, root", [(1, 3, 2), (1, 1, None), (16, 9, 20)])
def test_is_square_product_examples(a, k, root):
    assert is_square_product(a, k) == root


@pytest.mark.parametrize("k", range(1, 101))
def test_enumeration_matches_scan_up_to_bound(k):
    bound = square_product_bound(k)
    certs = enumerate_square_products(k)
    assert all(c.a <= bound for c in certs)
    assert [c.a for c in certs] == scan_square_products(k, max(bound, 3000))
    for c in certs:
        assert c.verify()


def test_k_3_scan_to_a_million():
    assert scan_square_products(3, 10 ** 6) == [1]


@settings(deadline=None)
@given(st.integers(min_value=1, max_value=10 ** 6))
def test_certificates_verify_for_large_k(k):
    certs = enumerate_square_products(k)
    assert [c.a for c in certs] == sorted({c.a for c in certs})
    for c in certs:
        assert c.verify()
        assert c.a * (c.a + k) == c.root ** 2


def test_tampered_certificate_does_not_verify():
    cert = SquareProductCertificate(a=16, b=4, c=1, t=5, ell=9, k=9)
    assert cert.verify()
    assert not SquareProductCertificate(a=16, b=2, c=4, t=5, ell=9, k=9).verify()
    assert cert.as_dict() == {'a': 16, 'b': 4, 'c': 1, 't': 5, 'ell': 9, 'k': 9, 'root': 20}


def test_rejects_non_positive_k():
    with pytest.raises(ValueError):
        enumerate_square_products(0)
    with pytest.raises(ValueError):
        square_product_bound(0)


def test_non_enumerated_values_have_a_witness_family():
    for k in range(1, 101):
        enumerated = {c.a for c in enumerate_square_products(k)}
        for a in range(1, 1001):
            inst = ShiftInstance(a, k)
            assert inst.is_square == (a in enumerated)
            if a not in enumerated:
                assert verify_witness(inst, next(witness_family(inst)))


@pytest.mark.slow
@pytest.mark.parametrize("k", range(1, 101))
def test_enumeration_matches_scan_to_a_million(k):
    assert [c.a for c in enumerate_square_products(k)] == scan_square_products(k, 10 ** 6)
