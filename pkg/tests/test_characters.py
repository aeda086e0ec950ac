from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superzeta import characters as ch
from superzeta.errors import CharacterError

FUNDAMENTAL = [D for D in range(-200, 201) if abs(D) > 1 and ch.is_fundamental_discriminant(D)]


def _legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def test_fundamental_discriminants():
    assert ch.is_fundamental_discriminant(-4)
    assert ch.is_fundamental_discriminant(-3)
    assert ch.is_fundamental_discriminant(5)
    assert ch.is_fundamental_discriminant(8)
    assert ch.is_fundamental_discriminant(-8)
    assert ch.is_fundamental_discriminant(12)
    for D in (-1, 2, 3, 4, 9, -12 * 4, 16, 6, -7 * 4):
        assert not ch.is_fundamental_discriminant(D)


def test_examples():
    chi = ch.kronecker_character(-4)
    assert (chi.modulus, chi.values, chi.parity) == (4, (0, 1, 0, -1), 1)
    chi = ch.kronecker_character(-3)
    assert (chi.modulus, chi(1), chi(2), chi.parity) == (3, 1, -1, 1)
    chi = ch.kronecker_character(5)
    assert chi.values == (0, 1, -1, -1, 1) and chi.parity == 0


@pytest.mark.parametrize("p", [5, 13, 17, 29, 37, 41])
def test_legendre_oracle_for_primes(p):
    # D = p with p = 1 mod 4 prime
    chi = ch.kronecker_character(p)
    assert all(chi(n) == (_legendre(n, p) if n % p else 0) for n in range(p))


def test_rejects_non_fundamental():
    for D in (1, -1, 0, 12 * 4, 9, 6):
        with pytest.raises(CharacterError):
            ch.kronecker_character(D)


@pytest.mark.parametrize("D", FUNDAMENTAL)
def test_all_small_characters_validate(D):
    chi = ch.kronecker_character(D)
    cert = ch.validate(chi)
    assert cert.passed, cert.failures
    assert abs(cert.gauss_sum - 1) < 1e-10
    assert chi.parity == (1 - (1 if D > 0 else -1)) // 2


@given(st.sampled_from(FUNDAMENTAL), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_multiplicative_and_periodic(D, m, n):
    chi = ch.kronecker_character(D)
    assert chi(m * n) == chi(m) * chi(n)
    assert chi(m + chi.modulus) == chi(m)
    assert (chi(m) == 0) == (gcd(m, chi.modulus) > 1)


def test_validate_reports_failures():
    bad = ch.RealPrimitiveCharacter(4, (0, 1, 1, -1), 1, -4)
    cert = ch.validate(bad)
    assert not cert.passed
    assert any(f.startswith("zero-on-noncoprime") for f in cert.failures)
    wrong_parity = ch.RealPrimitiveCharacter(4, (0, 1, 0, -1), 0, -4)
    assert any(f.startswith("parity") for f in ch.validate(wrong_parity).failures)
