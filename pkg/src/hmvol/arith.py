"""Exact integer and rational arithmetic: factorization, Kronecker symbols,
Bernoulli numbers and polynomials.

Everything is pure Python over ``int`` and ``fractions.Fraction``, so all
values are arbitrary precision and all equalities are exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

Rational = Fraction


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as a strictly increasing tuple of (prime, exponent)."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.pairs]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.pairs):
            raise ValueError("exponents must be positive")

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)


def factor(n: int) -> Factorization:
    """Factor a positive integer by trial division (inputs are desk scale)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}: need a positive integer")
    pairs = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        pairs.append((m, 1))
    return Factorization(tuple(pairs))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor(n).pairs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def is_fundamental_discriminant(D: int) -> bool:
    """True for negative fundamental discriminants (the only ones used here)."""
    if D >= 0:
        return False
    if D % 4 == 1:
        return is_squarefree(-D)
    if D % 4 == 0:
        q = D // 4
        return q % 4 in (2, 3) and is_squarefree(-q)
    return False


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker(D: int, m: int) -> int:
    """Kronecker symbol (D/m) for a fundamental discriminant D and m >= 1.

    Completely multiplicative in m; (D/2) follows the mod 8 rule and
    (D/p) = 0 exactly when p divides D.
    """
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant of an imaginary quadratic field")
    if m < 1:
        raise ValueError(f"kronecker symbol defined here for m >= 1 only, got {m}")
    out = 1
    for p, e in factor(m).pairs:
        if p == 2:
            if D % 2 == 0:
                return 0
            s = 1 if D % 8 in (1, 7) else -1
        else:
            s = legendre_symbol(D, p)
        if s == 0:
            return 0
        out *= s**e
    return out


# Bernoulli numbers, B1 = -1/2 convention.  The memo table only ever grows
# and entries are immutable, so concurrent reads after initialization are safe.
_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number via the defining recurrence, exact."""
    if k < 0:
        raise ValueError("bernoulli index must be nonnegative")
    if k >= len(_BERNOULLI):
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI) <= k:
                j = len(_BERNOULLI)
                acc = sum(comb(j + 1, i) * _BERNOULLI[i] for i in range(j))
                _BERNOULLI.append(Fraction(-acc, j + 1))
    return _BERNOULLI[k]


def bernoulli_poly(k: int, x) -> Fraction:
    """Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j x^(k-j) at a rational x."""
    if k < 0:
        raise ValueError("bernoulli_poly index must be nonnegative")
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))
