"""The group generated by the two branches of T acting on residues mod b.

For b coprime to 6 both branches are invertible affine maps mod b, so they
generate a finite subgroup of AGL(1, b). Elements are stored as
(scale, shift) pairs meaning x -> scale*x + shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod

import numpy as np

from .arith import euler_phi, factorize, mult_order

DEFAULT_CLOSURE_BUDGET = 1000


def _check_modulus(b: int) -> None:
    if b < 1:
        raise ValueError("modulus must be positive")
    if gcd(b, 6) != 1:
        raise ValueError(f"modulus {b} shares a factor with 6")


@dataclass(frozen=True)
class AffineMap:
    scale: int
    shift: int
    modulus: int

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "scale", self.scale % m)
        object.__setattr__(self, "shift", self.shift % m)
        if gcd(self.scale, m) != 1:
            raise ValueError(f"scale {self.scale} is not a unit mod {m}")

    def __call__(self, x: int) -> int:
        return (self.scale * x + self.shift) % self.modulus

    def compose(self, other: AffineMap) -> AffineMap:
        """self after other."""
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        return AffineMap(self.scale * other.scale,
                         self.scale * other.shift + self.shift, self.modulus)

    __matmul__ = compose

    def inverse(self) -> AffineMap:
        inv = pow(self.scale, -1, self.modulus)
        return AffineMap(inv, -inv * self.shift, self.modulus)

    def power(self, k: int) -> AffineMap:
        base = self if k >= 0 else self.inverse()
        out = AffineMap.identity(self.modulus)
        for _ in range(abs(k)):
            out = base @ out
        return out

    def is_identity(self) -> bool:
        return self.scale == 1 % self.modulus and self.shift == 0

    def order(self) -> int:
        """Smallest k >= 1 with self^k the identity, by repeated composition."""
        g = self
        k = 1
        while not g.is_identity():
            g = self @ g
            k += 1
        return k

    @classmethod
    def identity(cls, b: int) -> AffineMap:
        return cls(1, 0, b)


def half(b: int) -> int:
    return pow(2, -1, b) if b > 1 else 0


def t0_map(b: int) -> AffineMap:
    return AffineMap(half(b), 0, b)


def t1_map(b: int) -> AffineMap:
    h = half(b)
    return AffineMap(3 * h, h, b)


def e0_map(b: int) -> AffineMap:
    return AffineMap(3 * half(b), 0, b)


def e1_map(b: int) -> AffineMap:
    h = half(b)
    return AffineMap(h, h, b)


def translation(b: int, d: int = 1) -> AffineMap:
    return AffineMap(1, d, b)


@dataclass(frozen=True)
class GroupStructure:
    """Predicted structure of the group mod b from orders of 2 and 3.

    ``order`` is b times the product of lcm(s_i, t_i) over prime powers.
    ``multiplier_order`` is the size of the subgroup of units generated by
    2 and 3 mod b; b times it is the true group order, and it can be
    smaller than the product when the prime-power parts are not independent.
    """

    b: int
    factors: tuple[tuple[int, int], ...]
    s: tuple[int, ...]
    t: tuple[int, ...]
    a: tuple[int, ...]
    order: int
    multiplier_order: int

    @property
    def exact_order(self) -> int:
        return self.b * self.multiplier_order

    @property
    def formula_matches(self) -> bool:
        return self.order == self.exact_order

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "factors": [{"p": p, "e": e} for p, e in self.factors],
            "s": list(self.s),
            "t": list(self.t),
            "a": list(self.a),
            "order": self.order,
            "multiplier_order": self.multiplier_order,
            "exact_order": self.exact_order,
            "formula_matches": self.formula_matches,
        }


def unit_subgroup_order(gens, b: int) -> int:
    """Size of the subgroup of (Z/bZ)* generated by ``gens``."""
    seen = {1 % b}
    frontier = [1 % b]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % b
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def gb_structure(b: int) -> GroupStructure:
    _check_modulus(b)
    factors = tuple(sorted(factorize(b).items()))
    s, t, a = [], [], []
    for p, e in factors:
        q = p ** e
        s.append(mult_order(2, q))
        t.append(mult_order(3, q))
        a.append(lcm(s[-1], t[-1]))
    return GroupStructure(
        b=b, factors=factors, s=tuple(s), t=tuple(t), a=tuple(a),
        order=b * prod(a),
        multiplier_order=unit_subgroup_order((2, 3), b),
    )


@dataclass(frozen=True, eq=False)
class Closure:
    """Closed element set, stored as sorted codes scale*b + shift."""

    b: int
    codes: np.ndarray

    @property
    def order(self) -> int:
        return int(self.codes.size)

    @property
    def elements(self) -> list[tuple[int, int]]:
        return [(int(x // self.b), int(x % self.b)) for x in self.codes]

    def __contains__(self, g: AffineMap) -> bool:
        code = g.scale * self.b + g.shift
        i = np.searchsorted(self.codes, code)
        return bool(i < self.codes.size and self.codes[i] == code)

    def orbit(self, x: int) -> set[int]:
        c, d = np.divmod(self.codes, self.b)
        return set(np.unique((c * x + d) % self.b).tolist())

    def translations(self) -> list[int]:
        c, d = np.divmod(self.codes, self.b)
        return d[c == 1 % self.b].tolist()


def affine_closure(b: int, budget: int = DEFAULT_CLOSURE_BUDGET) -> Closure:
    """All elements generated by the two branches and their inverses.

    Breadth-first over element codes scale*b + shift; each level multiplies
    the whole frontier by every generator at once.
    """
    _check_modulus(b)
    if b > budget:
        raise ValueError(f"modulus {b} exceeds the closure budget {budget}")
    if b == 1:
        return Closure(1, np.zeros(1, dtype=np.int64))
    gens = [t0_map(b), t1_map(b)]
    gens += [g.inverse() for g in gens]
    seen = np.zeros(b * b, dtype=bool)
    stamp = np.zeros(b * b, dtype=np.int64)
    start = 1 * b + 0
    seen[start] = True
    frontier = np.array([start], dtype=np.int64)
    while frontier.size:
        c, d = np.divmod(frontier, b)
        cand = np.concatenate([((g.scale * c) % b) * b + (g.scale * d + g.shift) % b
                               for g in gens])
        cand = cand[~seen[cand]]
        # drop repeats without sorting: keep the last writer of each code
        pos = np.arange(cand.size)
        stamp[cand] = pos
        cand = cand[stamp[cand] == pos]
        seen[cand] = True
        frontier = cand
    return Closure(b, np.flatnonzero(seen))


def generator_orders(b: int) -> tuple[int, int]:
    """Orders of the halving and odd branches in the group mod b."""
    _check_modulus(b)
    if b == 1:
        return 1, 1
    return mult_order(2, b), mult_order(3 * half(b) % b, b)


def p_identity_word(b: int) -> AffineMap:
    """T0^-2 T1 T0 T1^-1 T0, rightmost applied first."""
    t0, t1 = t0_map(b), t1_map(b)
    return t0.power(-2) @ t1 @ t0 @ t1.inverse() @ t0


def e_identity_word(b: int) -> AffineMap:
    """E1^-2 E0 E1 E0^-1 E1, rightmost applied first."""
    e0, e1 = e0_map(b), e1_map(b)
    return e1.power(-2) @ e0 @ e1 @ e0.inverse() @ e1


def verify_p_identity(b: int) -> bool:
    _check_modulus(b)
    p = translation(b)
    return p_identity_word(b) == p and e_identity_word(b) == p


def phi_bound_holds(st: GroupStructure) -> bool:
    """Each a_i divides phi(p_i^e_i) and the order divides b*phi(b)."""
    ok = all(euler_phi(p ** e) % a == 0 for (p, e), a in zip(st.factors, st.a))
    return ok and (st.b * euler_phi(st.b)) % st.order == 0
