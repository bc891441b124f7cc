"""Closed-form local volumes tau_p for the forms diag(1,...,1,-1) and
diag(1,...,1,-2), the [U:SU] index values, and the symbolic assembly of
tau_infinity from the Tamagawa-number-one identity.

tau_infinity is always assembled from the Euler product, never transcribed:
unramified factors collapse into zeta(even i) and L(odd i) for i = 2..n+1,
and every prime with a non-generic local factor contributes the exact
rational correction euler_local(p)/tau_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factor, is_prime, legendre_symbol
from .expressions import VolumeExpression
from .quadfield import FieldData, chi


@dataclass(frozen=True)
class LocalDensity:
    p: int
    lattice: str
    value: Fraction


def index_u_su(field: FieldData, p: int, k: int, lattice: str = "L") -> int:
    """[U(.,O/p^k O) : SU(.,O/p^k O)]: 2p^k ramified, p^k(1 - chi(p)/p)
    unramified; for the lattice M at p = 2 the values are 2^(k+2) ramified and
    2^(k+1)(1 - chi(2)/2) unramified."""
    if k < 1:
        raise ValueError("k must be >= 1")
    c = chi(field, p)
    if lattice == "M" and p == 2:
        return 2 ** (k + 2) if c == 0 else 2**k * (2 - c)
    if c == 0:
        return 2 * p**k
    return p ** (k - 1) * (p - c)


def _eps_char(n: int, p: int, twisted: bool) -> int:
    """The symbol ((-1)^((n+3)/2) / p), with the argument doubled for M (odd n only)."""
    a = (-1) ** ((n + 3) // 2)
    if twisted:
        a *= 2
    return legendre_symbol(a, p)


def _even_product(p: int, upto: int) -> Fraction:
    out = Fraction(1)
    for i in range(1, upto + 1):
        out *= 1 - Fraction(1, p ** (2 * i))
    return out


def tau_p(lattice: str, n: int, field: FieldData, p: int) -> LocalDensity:
    """Closed-form local volume, dispatching on prime class and parity of n."""
    if lattice not in ("L", "M"):
        raise ValueError(f"lattice must be 'L' or 'M', got {lattice!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    c = chi(field, p)
    if c != 0:
        if lattice == "M" and p == 2:
            # det M = -2 is not a unit at 2, shortening the generic product
            val = Fraction(1)
            for i in range(1, n + 1):
                val *= 1 - Fraction(c**i, 2**i)
            return LocalDensity(p, lattice, val)
        val = Fraction(1)
        for i in range(2, n + 2):
            val *= 1 - Fraction(c**i, p**i)
        return LocalDensity(p, lattice, val)
    if p == 2:
        if lattice == "L" or n % 2 == 1:
            val = Fraction(1, 2**n) * _even_product(2, n // 2)
        else:
            val = Fraction(1, 2**n) * _even_product(2, (n - 2) // 2)
        return LocalDensity(p, lattice, val)
    # odd ramified p
    if n % 2 == 0:
        val = _even_product(p, n // 2)
    else:
        eps = _eps_char(n, p, twisted=(lattice == "M"))
        val = (1 - Fraction(eps, p ** ((n + 1) // 2))) * _even_product(p, (n - 1) // 2)
    return LocalDensity(p, lattice, val)


def _euler_local(field: FieldData, n: int, p: int) -> Fraction:
    """Product of the Euler factors at p of the zeta(even)/L(odd) string for
    arguments 2..n+1."""
    c = chi(field, p)
    out = Fraction(1)
    for i in range(2, n + 2):
        if i % 2 == 0:
            out *= 1 - Fraction(1, p**i)
        else:
            out *= 1 - Fraction(c, p**i)
    return out


def special_primes(lattice: str, field: FieldData) -> tuple[int, ...]:
    """Primes whose local factor differs from the generic unramified product."""
    ps = set(factor(field.f).primes())
    if lattice == "M":
        ps.add(2)
    return tuple(sorted(ps))


def tau_infinity(lattice: str, n: int, field: FieldData) -> VolumeExpression:
    """1/prod_p tau_p as a symbolic volume: zeta(even i), L(odd i) for
    i in [2, n+1], with all non-generic local factors folded into the exact
    rational coefficient."""
    zeta_args = tuple(i for i in range(2, n + 2) if i % 2 == 0)
    l_args = tuple(i for i in range(3, n + 2) if i % 2 == 1)
    coeff = Fraction(1)
    for p in special_primes(lattice, field):
        coeff *= _euler_local(field, n, p) / tau_p(lattice, n, field, p).value
    return VolumeExpression(coeff=coeff, zeta_args=zeta_args, l_args=l_args)
