"""Exact integer arithmetic and the Collatz step maps.

Everything here works on Python ints, so there is no overflow regime and
no floating point anywhere in the threshold comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def t_step(x: int) -> int:
    """One step of T: x/2 for even x, (3x+1)/2 for odd x."""
    if x % 2 == 0:
        return x // 2
    return (3 * x + 1) // 2


def t_orbit(x: int, steps: int) -> list[int]:
    """Return ``[x, T(x), ..., T^steps(x)]``."""
    out = [x]
    for _ in range(steps):
        x = t_step(x)
        out.append(x)
    return out


def e_step(x: int) -> int:
    """The conjugate map E = P T P^-1 with P(x) = x + 1.

    E(x) = 3x/2 for even x and (x+1)/2 for odd x.
    """
    if x % 2 == 0:
        return 3 * x // 2
    return (x + 1) // 2


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division. Moduli here are desk-scale."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def mult_order(a: int, modulus: int) -> int:
    """Multiplicative order of ``a`` modulo ``modulus``.

    The order modulo 1 is taken to be 1. Raises ``ValueError`` when ``a``
    is not a unit.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if modulus == 1:
        return 1
    a %= modulus
    if gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not invertible modulo {modulus}")
    order = euler_phi(modulus)
    for p in factorize(order):
        while order % p == 0 and pow(a, order // p, modulus) == 1:
            order //= p
    return order


def split_modulus(d: int) -> tuple[int, int, int]:
    """Write d = 2^n * 3^m * b with gcd(b, 6) = 1 and return (n, m, b)."""
    if d < 1:
        raise ValueError("modulus must be positive")
    n = m = 0
    while d % 2 == 0:
        d //= 2
        n += 1
    while d % 3 == 0:
        d //= 3
        m += 1
    return n, m, d


@dataclass(frozen=True)
class RedFraction:
    """The fraction r/n of red (odd) steps along a path."""

    red_count: int
    total_count: int

    def __post_init__(self):
        if self.total_count < 1:
            raise ValueError("total_count must be positive")
        if not 0 <= self.red_count <= self.total_count:
            raise ValueError("red_count must lie in [0, total_count]")

    def mediant(self, other: RedFraction) -> RedFraction:
        """Concatenating two closed walks adds numerators and denominators."""
        return RedFraction(self.red_count + other.red_count,
                           self.total_count + other.total_count)

    def as_fraction(self) -> Fraction:
        return Fraction(self.red_count, self.total_count)

    def __str__(self):
        return f"{self.red_count}/{self.total_count}"


def log_ratio_base(m: int | None = None) -> Fraction:
    """The base 3 (``m is None``) or 3 + 1/m of the threshold ln2/ln(base)."""
    if m is None:
        return Fraction(3)
    if m < 1:
        raise ValueError("m must be a positive integer")
    return Fraction(3 * m + 1, m)


def cmp_log_ratio(f: RedFraction, base: Fraction | int = 3) -> int:
    """Compare r/n with ln(2)/ln(base) exactly.

    Returns -1, 0 or 1 as r/n is less than, equal to or greater than the
    threshold. With base = p/q > 1 the test r*ln(base) <> n*ln(2) becomes
    p^r <> 2^n * q^r, which is decided in integers.
    """
    base = Fraction(base)
    if base <= 1:
        raise ValueError("base must exceed 1")
    p, q = base.numerator, base.denominator
    r, n = f.red_count, f.total_count
    lhs = p ** r
    rhs = (1 << n) * q ** r
    return (lhs > rhs) - (lhs < rhs)
