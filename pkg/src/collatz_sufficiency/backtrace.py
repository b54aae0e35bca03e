"""Running T backwards: feasible vectors, level sets and greedy back tracing.

A feasible vector s = (s_0, ..., s_k) encodes the composition

    T0^-s_0 . T1^-1 . T0^-s_1 . ... . T1^-1 . T0^-s_k

applied right to left, where T0^-1(y) = 2y and T1^-1(y) = (2y - 1)/3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Iterable, Sequence

from .arith import mult_order, split_modulus, t_step
from .group import AffineMap

DEFAULT_MAX_LENGTH = 8


@dataclass(frozen=True)
class FeasibleVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ValueError("a feasible vector has at least one entry")
        if any(e < 0 for e in entries):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @property
    def length(self) -> int:
        """Number of odd-branch steps."""
        return len(self.entries) - 1

    @property
    def norm(self) -> int:
        return self.length + sum(self.entries)

    def parity_steps(self) -> tuple[int, ...]:
        """Step bits in the order the inverses are applied: 0 per doubling, 1 per odd step."""
        out: list[int] = []
        for i in range(len(self.entries) - 1, -1, -1):
            out.extend([0] * self.entries[i])
            if i:
                out.append(1)
        return tuple(out)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def as_vector(s) -> FeasibleVector:
    return s if isinstance(s, FeasibleVector) else FeasibleVector(tuple(s))


@dataclass(frozen=True)
class BacktraceOutcome:
    admissible: bool
    value: int | None = None
    # index i of the odd step that failed (the one between s_{i-1} and s_i)
    failed_at: int | None = None
    offending: int | None = None

    def to_dict(self) -> dict:
        return {"admissible": self.admissible, "value": self.value,
                "failed_at": self.failed_at, "offending": self.offending}


def eval_backtrace(x: int, s) -> BacktraceOutcome:
    if x < 1:
        raise ValueError("x must be a positive integer")
    s = as_vector(s)
    y = x
    for i in range(s.length, -1, -1):
        y <<= s.entries[i]
        if i:
            if y % 3 != 2:
                return BacktraceOutcome(False, failed_at=i, offending=y)
            y = (2 * y - 1) // 3
    return BacktraceOutcome(True, value=y)


def admissible_class(s) -> int:
    """The residue a mod 3^l(s) with s admissible for x exactly when x = a mod 3^l(s)."""
    s = as_vector(s)
    m = s.length
    if m < 1:
        raise ValueError("need a vector of length at least 1")
    mod = 3 ** m
    hits = [r for r in range(1, mod + 1) if eval_backtrace(r, s).admissible]
    if len(hits) != 1:
        raise AssertionError(f"{len(hits)} admissible classes for {s}")
    return hits[0] % mod


def backtrace_affine(s, b: int) -> AffineMap:
    """The map x -> v_s(x) reduced mod b, for b coprime to 6."""
    if gcd(b, 6) != 1:
        raise ValueError("modulus must be coprime to 6")
    s = as_vector(s)
    third = pow(3, -1, b) if b > 1 else 0
    double = AffineMap(2, 0, b)
    odd = AffineMap(2 * third, -third, b)
    out = AffineMap.identity(b)
    for i in range(s.length, -1, -1):
        out = double.power(s.entries[i]) @ out
        if i:
            out = odd @ out
    return out


def increment_vector(b: int) -> FeasibleVector:
    """Vector of length f whose back-tracing map is x -> x + 1 mod b.

    Here e and f are the orders of 2 and 3/2 mod b.
    """
    if gcd(b, 6) != 1 or b <= 1:
        raise ValueError("need b > 1 coprime to 6")
    e = mult_order(2, b)
    f = mult_order(3 * pow(2, -1, b) % b, b)
    return FeasibleVector((2,) + (0,) * (f - 2) + (e - 1, e - 1))


def level_set(x: int, k: int, coprime_to_3: bool = False) -> set[int]:
    """All positive y with T^k(y) = x."""
    if x < 1 or k < 0:
        raise ValueError("need x >= 1 and k >= 0")
    level = {x}
    for _ in range(k):
        nxt = set()
        for y in level:
            nxt.add(2 * y)
            if y % 3 == 2:
                nxt.add((2 * y - 1) // 3)
        level = nxt
    if coprime_to_3:
        level = {y for y in level if y % 3}
    return level


@dataclass
class GreedyTrace:
    """Greedy back-tracing values a_0 = x, a_1, ... and their parities."""

    start: int
    values: list[int] = field(default_factory=list)

    @property
    def bits(self) -> list[int]:
        return [v & 1 for v in self.values]

    @property
    def step_bits(self) -> list[int]:
        """Parities of a_1, a_2, ...: 1 exactly when the odd branch was inverted."""
        return [v & 1 for v in self.values[1:]]


def _greedy_next(a: int) -> int:
    if a % 3 == 2:
        z = (2 * a - 1) // 3
        if z % 3:
            return z
    return 2 * a


def greedy_backtrace(x: int, steps: int) -> GreedyTrace:
    """Invert the odd branch whenever that gives an integer prime to 3, else double.

    Each step is checked against the mod 9 form of the rule and against T.
    """
    if x < 1:
        raise ValueError("x must be a positive integer")
    values = [x]
    a = x
    for _ in range(steps):
        nxt = _greedy_next(a)
        if (nxt & 1) != (a % 9 in (2, 8)):
            raise AssertionError(f"mod 9 rule disagrees at {a}")
        if t_step(nxt) != a:
            raise AssertionError(f"T({nxt}) != {a}")
        values.append(nxt)
        a = nxt
    return GreedyTrace(x, values)


def longest_zero_run(bits: Sequence[int]) -> int:
    best = run = 0
    for b in bits:
        run = run + 1 if b == 0 else 0
        best = max(best, run)
    return best


def min_ones_fraction_at_ones(bits: Sequence[int]):
    """Smallest ones/length over prefixes that end in a 1 (None if no ones)."""
    from fractions import Fraction
    best = None
    ones = 0
    for i, b in enumerate(bits, 1):
        if b:
            ones += 1
            f = Fraction(ones, i)
            if best is None or f < best:
                best = f
    return best


def ones_upper_bound_holds(values: Sequence[int]) -> bool:
    """From the smallest value onward, r odd steps among k keep 3^r <= 2^(k+1)."""
    n0 = min(range(len(values)), key=values.__getitem__)
    lhs, rhs = 1, 2
    for v in values[n0 + 1:]:
        rhs <<= 1
        if v & 1:
            lhs *= 3
        if lhs > rhs:
            return False
    return True


@dataclass(frozen=True)
class BacktraceSearch:
    x: int
    target: int
    modulus: int
    vector: FeasibleVector | None
    value: int | None
    bound: int
    bound_kind: str
    max_length: int

    @property
    def found(self) -> bool:
        return self.vector is not None

    @property
    def length(self) -> int | None:
        return None if self.vector is None else self.vector.length

    @property
    def within_bound(self) -> bool | None:
        return None if self.vector is None else self.vector.length <= self.bound

    def to_dict(self) -> dict:
        return {
            "x": self.x, "target": self.target, "modulus": self.modulus,
            "vector": None if self.vector is None else list(self.vector.entries),
            "value": self.value, "length": self.length,
            "bound": self.bound, "bound_kind": self.bound_kind,
            "within_bound": self.within_bound, "max_length": self.max_length,
        }


def two_is_primitive_root(d: int) -> bool:
    """True when d = p^r for an odd prime p and 2 generates the units mod d."""
    from .arith import euler_phi, factorize
    fs = factorize(d)
    if len(fs) != 1 or 2 in fs:
        return False
    return mult_order(2, d) == euler_phi(d)


def length_bound(d: int) -> tuple[int, str]:
    """The applicable upper bound on the shortest vector length for modulus d."""
    if d < 1:
        raise ValueError("modulus must be positive")
    n, m, b = split_modulus(d)
    f = mult_order(3 * pow(2, -1, b) % b, b) if b > 1 else 1
    if two_is_primitive_root(d):
        return 1, "primitive-root"
    if n == 0 and m == 0:
        return (b - 1) * f, "coprime-to-6"
    return 2 * (b - 1) * f + n + 1, "general"


def _double_closure(entries: dict[int, tuple], mod: int) -> dict[int, tuple]:
    """Residues reachable by doubling; each maps to (entry residue, doublings)."""
    reached = {r: (r, 0) for r in entries}
    frontier = list(entries)
    k = 0
    while frontier:
        k += 1
        nxt = []
        for r in frontier:
            y = 2 * r % mod
            if y not in reached:
                reached[y] = (reached[r][0], k)
                nxt.append(y)
        frontier = nxt
    return reached


def _search_levels(x: int, d: int, length: int):
    """Residue layers for vectors with exactly ``length`` odd steps.

    Layer j holds residues mod K*3^(c+length-j), with d | K*3^c, together
    with back-pointers. Returns the list of closures, outermost last.
    """
    n, m, b = split_modulus(d)
    base = (1 << n) * b * 3 ** max(m, 1)
    mod = base * 3 ** length
    layers = []
    entries = {x % mod: None}
    for j in range(length + 1):
        closure = _double_closure(entries, mod)
        layers.append((mod, entries, closure))
        if j == length:
            break
        nxt_mod = mod // 3
        nxt: dict[int, tuple] = {}
        for r in closure:
            if r % 3 == 2:
                z = (2 * r - 1) // 3 % nxt_mod
                if z not in nxt:
                    nxt[z] = r
        entries, mod = nxt, nxt_mod
    return layers


def _reconstruct(layers, final: int) -> FeasibleVector:
    entries_out = []
    r = final
    for j in range(len(layers) - 1, -1, -1):
        mod, entries, closure = layers[j]
        entry, k = closure[r]
        entries_out.append(k)
        if j:
            r = entries[entry]
    return FeasibleVector(tuple(entries_out))


def shortest_backtraces(x: int, d: int, targets: Iterable[int] | None = None,
                        max_length: int = DEFAULT_MAX_LENGTH) -> dict[int, FeasibleVector]:
    """Shortest vectors s with v_s(x) = a mod d and v_s(x) prime to 3, per target a.

    Works on residues only: the values reached with a given number of odd
    steps are tracked modulo just enough to decide the final class, so the
    search is exact. Targets not reached within ``max_length`` odd steps
    are absent from the result.
    """
    if x < 1 or d < 1:
        raise ValueError("need x >= 1 and d >= 1")
    want = set(range(d)) if targets is None else {a % d for a in targets}
    found: dict[int, FeasibleVector] = {}
    for length in range(max_length + 1):
        if not want:
            break
        layers = _search_levels(x, d, length)
        _, _, closure = layers[-1]
        for r in sorted(closure):
            a = r % d
            if a in want and r % 3:
                found[a] = _reconstruct(layers, r)
                want.discard(a)
    return found


def find_backtrace_to_class(x: int, a: int, d: int,
                            max_length: int = DEFAULT_MAX_LENGTH) -> BacktraceSearch:
    if x < 1:
        raise ValueError("x must be a positive integer")
    if d < 2:
        raise ValueError("modulus must be at least 2")
    bound, kind = length_bound(d)
    hit = shortest_backtraces(x, d, [a], max_length).get(a % d)
    value = None
    if hit is not None:
        out = eval_backtrace(x, hit)
        if not out.admissible or out.value % d != a % d or out.value % 3 == 0:
            raise AssertionError(f"search produced a bad vector {hit}")
        value = out.value
    return BacktraceSearch(x=x, target=a % d, modulus=d, vector=hit, value=value,
                           bound=bound, bound_kind=kind, max_length=max_length)


class ParityClass(str, Enum):
    EVENTUALLY_ZERO = "eventually-zero-consistent"
    PERIODIC = "periodic-witness"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class ParityClassification:
    kind: ParityClass
    values: tuple[int, ...]
    period: int | None = None


def backtrace_by_parity(x: int, bits: Sequence[int]) -> list[int]:
    """Values a_0 = x, a_1, ... following a back-tracing parity vector.

    Bit i is the parity of a_i, so bit 0 must be the parity of x. Raises
    ValueError if some 1 cannot be realised.
    """
    if x < 1:
        raise ValueError("x must be a positive integer")
    bits = list(bits)
    if not bits:
        return [x]
    if bits[0] != x & 1:
        raise ValueError(f"bit 0 is {bits[0]} but {x} has parity {x & 1}")
    values = [x]
    a = x
    for i, b in enumerate(bits[1:], 1):
        if b not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        if b:
            if a % 3 != 2:
                raise ValueError(f"inadmissible at position {i}: {a} is not 2 mod 3")
            a = (2 * a - 1) // 3
        else:
            a = 2 * a
        values.append(a)
    return values


def classify_parity_vector(bits: Sequence[int], x: int) -> ParityClassification:
    """Three-valued reading of a finite back-tracing parity prefix.

    periodic-witness: the values come back to x and the prefix repeats with
    that period, so x lies on a T-cycle.
    eventually-zero-consistent: the last value is divisible by 3, so only
    doublings can follow.
    undetermined: anything else; irrationality is never concluded from a
    finite prefix.
    """
    values = backtrace_by_parity(x, bits)
    for p in range(1, len(values)):
        if values[p] == x:
            bits = list(bits)
            if all(bits[i] == bits[i % p] for i in range(len(bits))):
                return ParityClassification(ParityClass.PERIODIC, tuple(values), p)
            break
    if values[-1] % 3 == 0:
        return ParityClassification(ParityClass.EVENTUALLY_ZERO, tuple(values))
    return ParityClassification(ParityClass.UNDETERMINED, tuple(values))
