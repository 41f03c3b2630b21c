import pytest
import hypothesis.strategies as st
from hypothesis import example, given, settings

from core_arith import (divisors, gcd, iroot, is_perfect_square, isqrt, squarefree_decompose,
                        squarefree_divisors)


def _trial_factor(n):
    factors = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _is_squarefree(n):
    return all(e == 1 for e in _trial_factor(n).values())


def _euclid(a, b):
    while b:
        a, b = b, a % b
    return a


@pytest.mark.parametrize("n, root", [(0, 0), (1, 1), (49, 7), (50, 7), (10 ** 40 + 1, 10 ** 20)])
def test_isqrt_examples(n, root):
    assert isqrt(n) == root
    assert isinstance(isqrt(n), int)


def test_isqrt_exhaustive_to_a_million():
    r = 0
    for n in range(10 ** 6 + 1):
        if (r + 1) * (r + 1) <= n:
            r += 1
        assert isqrt(n) == r


@given(st.integers(min_value=0, max_value=10 ** 200))
@example(10 ** 40 - 1)
def test_isqrt_brackets_n(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@pytest.mark.parametrize("n, root", [(4, 2), (2, None), (400, 20), (0, 0), (1, 1)])
def test_is_perfect_square_examples(n, root):
    assert is_perfect_square(n) == root


@given(st.integers(min_value=1, max_value=10 ** 30))
def test_is_perfect_square_of_square(r):
    assert is_perfect_square(r * r) == r
    # r² < r² + 1 < (r+1)²
    assert is_perfect_square(r * r + 1) is None


@given(st.integers(min_value=0, max_value=10 ** 12), st.integers(min_value=1, max_value=6))
def test_iroot_brackets_n(n, m):
    r, exact = iroot(n, m)
    assert r ** m <= n < (r + 1) ** m
    assert exact == (r ** m == n)


def test_iroot_exact_cube():
    assert iroot(343, 3) == (7, True)
    assert iroot(344, 3) == (7, False)


@pytest.mark.parametrize("n, decomposition", [(1, (1, 1)), (12, (2, 3)), (16, (4, 1)), (72, (6, 2))])
def test_squarefree_decompose_examples(n, decomposition):
    assert squarefree_decompose(n) == decomposition


def test_squarefree_decompose_exhaustive_to_1e5():
    limit = 10 ** 5
    smallest = list(range(limit + 1))
    for p in range(2, isqrt(limit) + 1):
        if smallest[p] == p:
            for q in range(p * p, limit + 1, p):
                if smallest[q] == q:
                    smallest[q] = p
    for n in range(1, limit + 1):
        b = c = 1
        m = n
        while m > 1:
            p, e = smallest[m], 0
            while m % p == 0:
                m //= p
                e += 1
            b *= p ** (e // 2)
            c *= p ** (e % 2)
        assert squarefree_decompose(n) == (b, c)


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_squarefree_decompose_matches_trial_division(n):
    b, c = squarefree_decompose(n)
    assert b * b * c == n
    assert _is_squarefree(c)


def test_squarefree_decompose_rejects_zero():
    with pytest.raises(ValueError):
        squarefree_decompose(0)


@pytest.mark.parametrize("n, expected", [(1, [1]), (9, [1, 3, 9]), (12, [1, 2, 3, 4, 6, 12])])
def test_divisors_examples(n, expected):
    assert divisors(n) == expected


@given(st.integers(min_value=1, max_value=5000))
def test_divisors_match_trial_division(n):
    assert divisors(n) == [q for q in range(1, n + 1) if n % q == 0]


@given(st.integers(min_value=1, max_value=5000))
def test_squarefree_divisors_are_the_squarefree_subset(n):
    assert squarefree_divisors(n) == [q for q in divisors(n) if _is_squarefree(q)]


@pytest.mark.parametrize("a, b, g", [(2, 4, 2), (1, 97, 1), (12, 9, 3), (0, 5, 5)])
def test_gcd_examples(a, b, g):
    assert gcd(a, b) == g


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=10 ** 18), st.integers(min_value=1, max_value=10 ** 18))
def test_gcd_matches_euclid(a, b):
    assert gcd(a, b) == _euclid(a, b)


def test_gcd_rejects_double_zero():
    with pytest.raises(ValueError):
        gcd(0, 0)
