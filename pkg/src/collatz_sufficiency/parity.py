"""Parity vectors at finite 2-adic precision.

A residue x mod 2^n determines the first n parities of its T-orbit and
vice versa. On top of that bijection sit the bit complement V, the
window-sum maps M_k (M_2 is the discrete derivative D) and the induced
residue maps Omega = Phi o V o Phi^-1 and H_{M_k} = Phi o M_k o Phi^-1.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

from .arith import t_step

Bits = tuple[int, ...]


def _check_bits(bits: Sequence[int]) -> Bits:
    bits = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("parity bits must be 0 or 1")
    return bits


def parity_vector(x: int, n: int) -> Bits:
    """First ``n`` parities of the T-orbit of ``x``.

    Only ``x mod 2^n`` matters, so any integer (including 0 and negative
    representatives) is reduced to its canonical residue first.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    y = x % (1 << n) if n else 0
    out = []
    for _ in range(n):
        out.append(y & 1)
        y = t_step(y) if y else 0
    return tuple(out)


def phi_mod(bits: Sequence[int]) -> int:
    """The unique x mod 2^n whose first n T-parities are ``bits``.

    Lifting: if x is right mod 2^j and c = 3^(ones so far), then
    T^j(x + 2^j) = T^j(x) + c, so bit j is fixed by choosing between the
    two lifts.
    """
    bits = _check_bits(bits)
    x = 0
    y = 0  # T^j(x)
    c = 1  # 3^(number of ones among the first j bits)
    for j, b in enumerate(bits):
        if (y & 1) != b:
            x += 1 << j
            y += c
        if b:
            y = (3 * y + 1) // 2
            c *= 3
        else:
            y //= 2
    return x


def bit_complement(bits: Sequence[int]) -> Bits:
    return tuple(1 - b for b in _check_bits(bits))


def mk_map(bits: Sequence[int], k: int) -> Bits:
    """Window sums mod 2: m_i = a_i + ... + a_{i+k-1}. The output is k-1 shorter."""
    bits = _check_bits(bits)
    if k < 2:
        raise ValueError("window must be at least 2")
    if len(bits) < k:
        raise ValueError(f"need at least {k} bits, got {len(bits)}")
    return tuple(sum(bits[i:i + k]) & 1 for i in range(len(bits) - k + 1))


def discrete_derivative(bits: Sequence[int]) -> Bits:
    return mk_map(bits, 2)


def omega_mod(x: int, n: int) -> int:
    """The autoconjugacy Omega reduced mod 2^n."""
    if n < 1:
        raise ValueError("n must be positive")
    return phi_mod(bit_complement(parity_vector(x, n)))


def h_mk_mod(x: int, n: int, k: int) -> int:
    """H_{M_k}: residues mod 2^(n+k-1) onto residues mod 2^n."""
    if n < 1:
        raise ValueError("n must be positive")
    return phi_mod(mk_map(parity_vector(x, n + k - 1), k))


@dataclass(frozen=True)
class ResidueMap2n:
    """A map Z/2^source -> Z/2^target stored as a lookup table."""

    source_exponent: int
    target_exponent: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.source_exponent:
            raise ValueError("table must cover every source residue")
        top = 1 << self.target_exponent
        if any(not 0 <= v < top for v in self.table):
            raise ValueError("table value out of range")

    def __call__(self, x: int) -> int:
        return self.table[x % len(self.table)]

    def preimage(self, targets: Iterable[int]) -> list[int]:
        wanted = {t % (1 << self.target_exponent) for t in targets}
        return [x for x, v in enumerate(self.table) if v in wanted]

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x, v in enumerate(self.table):
            out.setdefault(v, []).append(x)
        return out

    def is_permutation(self) -> bool:
        return (self.source_exponent == self.target_exponent
                and len(set(self.table)) == len(self.table))

    def is_involution(self) -> bool:
        return self.is_permutation() and all(
            self.table[v] == x for x, v in enumerate(self.table))

    def write_csv(self, stream: TextIO) -> None:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["input", "output"])
        for x, v in enumerate(self.table):
            w.writerow([x, v])


@lru_cache(maxsize=64)
def omega_table(n: int) -> ResidueMap2n:
    return ResidueMap2n(n, n, tuple(omega_mod(x, n) for x in range(1 << n)))


@lru_cache(maxsize=64)
def h_table(n: int, k: int) -> ResidueMap2n:
    """Table of H_{M_k} from Z/2^(n+k-1) onto Z/2^n."""
    src = n + k - 1
    return ResidueMap2n(src, n, tuple(h_mk_mod(x, n, k) for x in range(1 << src)))


def h_preimage(residues: Iterable[int], n: int, k: int) -> list[int]:
    """Residues mod 2^(n+k-1) that H_{M_k} sends into ``residues`` mod 2^n."""
    return h_table(n, k).preimage(residues)
