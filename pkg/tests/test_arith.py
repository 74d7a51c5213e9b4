import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cl2tower.arith import (
    NotFundamentalError,
    factor_discriminant,
    factorint,
    field_discriminant,
    fundamental_discriminants,
    hilbert_symbol,
    is_fundamental,
    is_prime,
    jacobi,
    kronecker,
    legendre_euler,
    squarefree_part,
)


def test_is_prime_small():
    primes = [n for n in range(2, 200) if is_prime(n)]
    assert primes[:10] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes) == 46


@given(st.integers(min_value=2, max_value=10**12))
@settings(max_examples=200, deadline=None)
def test_factorint_product(n):
    f = factorint(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=10**4).map(lambda k: 2 * k + 1))
@settings(max_examples=300, deadline=None)
def test_jacobi_multiplicative_in_modulus(a, n):
    m = 3
    assert jacobi(a, n * m) == jacobi(a, n) * jacobi(a, m)


def test_kronecker_euler_small():
    for p in (3, 5, 7, 11, 13, 101):
        for a in range(-30, 30):
            assert kronecker(a, p) == legendre_euler(a, p)


def test_kronecker_at_two():
    # (d/2) = 0 for even d, +1 for d = 1 mod 8, -1 for d = 5 mod 8
    assert kronecker(17, 2) == 1
    assert kronecker(5, 2) == -1
    assert kronecker(-3, 2) == -1
    assert kronecker(-7, 2) == 1
    assert kronecker(12, 2) == 0


def test_fundamental_discriminants():
    assert is_fundamental(-4) and is_fundamental(-8) and is_fundamental(-3) and is_fundamental(5)
    assert not is_fundamental(-12 * 4) and not is_fundamental(-10) and not is_fundamental(1)
    neg = fundamental_discriminants(-30, -1)
    assert set(neg) == {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24}


def test_field_discriminant():
    assert field_discriminant(5) == 5
    assert field_discriminant(3) == 12
    assert field_discriminant(-1) == -4
    assert field_discriminant(-12) == -3
    assert squarefree_part(-12) == -3


def test_factor_discriminant():
    f = factor_discriminant(-660)
    assert sorted(f.values) == [-11, -4, -3, 5]
    assert math.prod(f.values) == -660
    with pytest.raises(NotFundamentalError):
        factor_discriminant(-10)


def test_hilbert_known_values():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 0) == -1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(3, 7, 2) == -1
    assert hilbert_symbol(-1, 2, 2) == 1
    assert hilbert_symbol(5, 5, 5) == 1


def _places(a, b):
    ps = {2} | set(factorint(abs(a))) | set(factorint(abs(b)))
    return [0] + sorted(ps)


@given(st.integers(-5000, 5000).filter(bool), st.integers(-5000, 5000).filter(bool))
@settings(max_examples=300, deadline=None)
def test_hilbert_product_formula(a, b):
    assert math.prod(hilbert_symbol(a, b, p) for p in _places(a, b)) == 1


@given(st.integers(-500, 500).filter(bool), st.integers(-500, 500).filter(bool), st.sampled_from([0, 2, 3, 5, 7, 11]))
@settings(max_examples=300, deadline=None)
def test_hilbert_symmetric_and_bilinear(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    assert hilbert_symbol(a, b * 7, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, 7, p)
