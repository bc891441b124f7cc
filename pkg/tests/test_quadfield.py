import pytest

from hmvol.arith import factor
from hmvol.quadfield import EpsKind, PrimeClass, classify_prime, make_field

PRIMES = [p for p in range(2, 50) if all(p % q for q in range(2, p))]


def test_make_field_examples():
    f = make_field(3)
    assert (f.D, f.eps_kind, f.norm_eps, f.trace_eps) == (-3, EpsKind.HALF_INTEGRAL, 1, 1)
    f = make_field(5)
    assert (f.D, f.eps_kind, f.norm_eps, f.trace_eps) == (-20, EpsKind.INTEGRAL, 5, 0)
    f = make_field(15)
    assert (f.D, f.eps_kind, f.norm_eps) == (-15, EpsKind.HALF_INTEGRAL, 4)


def test_gaussian_field_accepted():
    f = make_field(1)
    assert (f.D, f.f, f.norm_eps, f.trace_eps) == (-4, 4, 1, 0)


def test_rejects_bad_d():
    for d in [0, -3, 2, 4, 8, 9, 45, 75]:
        with pytest.raises(ValueError):
            make_field(d)


def test_conductor_is_abs_discriminant():
    for d in [1, 3, 5, 7, 11, 13, 15]:
        f = make_field(d)
        assert f.f == -f.D > 0


def test_minimal_polynomial_discriminant():
    for d in [1, 3, 5, 7, 11, 13, 15, 23, 35]:
        f = make_field(d)
        assert f.trace_eps**2 - 4 * f.norm_eps == f.D


def test_classify_examples():
    assert classify_prime(make_field(3), 3) is PrimeClass.RAMIFIED
    assert classify_prime(make_field(3), 2) is PrimeClass.INERT
    assert classify_prime(make_field(7), 2) is PrimeClass.SPLIT


def test_ramified_exactly_at_divisors_of_discriminant():
    for d in [1, 3, 5, 7, 11, 13, 15, 23]:
        field = make_field(d)
        ram = {p for p in PRIMES if classify_prime(field, p) is PrimeClass.RAMIFIED}
        assert ram == {p for p in PRIMES if field.f % p == 0}


def test_classify_rejects_composite():
    with pytest.raises(ValueError):
        classify_prime(make_field(3), 6)


def test_factorization_of_d_feeds_ramified_set():
    field = make_field(15)
    assert set(factor(field.d).primes()) == {3, 5}
