"""Graph criteria certifying that a union of residue classes is sufficient.

Both criteria start from the same pipeline: build the pruned graph for
the modulus, delete the chosen residues, then delete every edge that lies
on no cycle. The strong criterion asks whether what remains is a disjoint
union of short cycles; the red-fraction criteria compare the share of red
edges on each simple cycle with ln2/ln3.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .arith import RedFraction, cmp_log_ratio, log_ratio_base, t_step
from .gamma import (
    DEFAULT_CYCLE_BUDGET,
    ColoredDigraph,
    CycleReport,
    build_pruned_gamma,
    delete_nodes,
    is_disjoint_cycle_union,
    prune_acyclic_edges,
    reverse,
    simple_cycles,
    weak_components,
)
from .tables import format_residue_set

CRITERIA = ("strong", "forward", "backward", "cycle")


@dataclass(frozen=True)
class CycleBoundConstants:
    """Externally verified facts the criteria rely on.

    ``max_cycle_period``: no nontrivial T-cycle has period below this.
    ``verified_min``: every integer below this is known to reach 1.
    """

    max_cycle_period: int = 630_138_897
    verified_min: int = 2 ** 60

    def __post_init__(self):
        if self.max_cycle_period < 1 or self.verified_min < 1:
            raise ValueError("bounds must be positive")


DEFAULT_CONSTANTS = CycleBoundConstants()


@dataclass(frozen=True)
class ComponentSummary:
    nodes: tuple[int, ...]
    cycle_count: int
    min_red_fraction: RedFraction | None
    max_red_fraction: RedFraction | None
    all_above_log_ratio: bool
    all_below_cycle_bound: bool
    # the component is one simple cycle and nothing else
    single_cycle: bool = False

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "cycle_count": self.cycle_count,
            "single_cycle": self.single_cycle,
            "min_red_fraction": str(self.min_red_fraction) if self.min_red_fraction else None,
            "max_red_fraction": str(self.max_red_fraction) if self.max_red_fraction else None,
            "all_above_log_ratio": self.all_above_log_ratio,
            "all_below_cycle_bound": self.all_below_cycle_bound,
        }


@dataclass(frozen=True)
class Certificate:
    graph: ColoredDigraph
    cycles: CycleReport | None = None
    components: tuple[ComponentSummary, ...] = ()
    max_cycle_length: int | None = None
    # verdicts when single-cycle components are not set aside
    all_cycles_forward: bool | None = None
    all_cycles_backward: bool | None = None

    def to_dict(self) -> dict:
        out = {"pruned_graph": self.graph.to_dict()}
        if self.max_cycle_length is not None:
            out["max_cycle_length"] = self.max_cycle_length
        if self.all_cycles_forward is not None:
            out["all_cycles_forward"] = self.all_cycles_forward
            out["all_cycles_backward"] = self.all_cycles_backward
        if self.cycles is not None:
            out["cycles"] = self.cycles.to_dict()
        if self.components:
            out["components"] = [c.to_dict() for c in self.components]
        return out


@dataclass(frozen=True)
class SufficiencyVerdict:
    """Outcome of one criterion run on ``removed mod modulus``.

    ``forward``, ``backward`` and ``cycle`` are None when the cycle budget
    ran out before the answer was known; ``undetermined`` names those.
    """

    modulus: int
    removed: tuple[int, ...]
    method: str
    strong: bool | None
    forward: bool | None
    backward: bool | None
    cycle: bool | None
    certificate: Certificate
    undetermined: frozenset[str] = field(default_factory=frozenset)

    @property
    def label(self) -> str:
        return format_residue_set(self.removed, self.modulus)

    def passes(self, criterion: str) -> bool | None:
        if criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {criterion!r}")
        return getattr(self, criterion)

    def to_dict(self, with_certificate: bool = True) -> dict:
        out = {
            "set": self.label,
            "modulus": self.modulus,
            "residues": list(self.removed),
            "method": self.method,
            "strong": self.strong,
            "forward": self.forward,
            "backward": self.backward,
            "cycle": self.cycle,
            "undetermined": sorted(self.undetermined),
        }
        if with_certificate:
            out["certificate"] = self.certificate.to_dict()
        return out


def normalize_residues(d: int, removed: Iterable[int]) -> tuple[int, ...]:
    """Validate a residue set against the pruned graph for ``d``."""
    if d < 1:
        raise ValueError("modulus must be positive")
    removed = tuple(sorted(set(int(r) for r in removed)))
    if not removed:
        raise ValueError("the residue set must be nonempty")
    bad = [r for r in removed if not 0 <= r < d]
    if bad:
        raise ValueError(f"residues {bad} are not in [0, {d})")
    if d % 3 == 0:
        div3 = [r for r in removed if r % 3 == 0]
        if div3:
            raise ValueError(
                f"residues {div3} are divisible by 3; the pruned graph mod {d} "
                "has no such nodes")
    return removed


def pruned_remainder(d: int, removed: Iterable[int]) -> ColoredDigraph:
    """Delete ``removed`` from the pruned graph, then every edge off all cycles."""
    removed = normalize_residues(d, removed)
    return prune_acyclic_edges(delete_nodes(build_pruned_gamma(d), removed))


def check_strong(d: int, removed: Iterable[int],
                 constants: CycleBoundConstants = DEFAULT_CONSTANTS) -> SufficiencyVerdict:
    """Disjoint-union-of-cycles criterion.

    Forward and backward sufficiency follow from the union shape alone
    (the reversed graph has the same shape); cycle sufficiency further
    needs every cycle shorter than the known minimal nontrivial period.
    """
    removed = normalize_residues(d, removed)
    g2 = pruned_remainder(d, removed)
    union, longest = is_disjoint_cycle_union(g2)
    union_rev, longest_rev = is_disjoint_cycle_union(reverse(g2))
    forward = union
    backward = union_rev
    cycle = union and longest < constants.max_cycle_period
    longest = max(longest, longest_rev)
    return SufficiencyVerdict(
        modulus=d, removed=removed, method="strong",
        strong=forward and backward and cycle,
        forward=forward, backward=backward, cycle=cycle,
        certificate=Certificate(graph=g2, max_cycle_length=longest if union else None),
    )


def _summarize(comp: Iterable[int], fractions: Sequence[RedFraction],
               cycle_base, single: bool = False) -> ComponentSummary:
    above = all(cmp_log_ratio(f) > 0 for f in fractions)
    below = all(cmp_log_ratio(f, cycle_base) < 0 for f in fractions)
    key = lambda f: f.as_fraction()
    return ComponentSummary(
        nodes=tuple(sorted(comp)),
        cycle_count=len(fractions),
        min_red_fraction=min(fractions, key=key) if fractions else None,
        max_red_fraction=max(fractions, key=key) if fractions else None,
        all_above_log_ratio=above,
        all_below_cycle_bound=below,
        single_cycle=single,
    )


def check_red_fraction(d: int, removed: Iterable[int],
                       constants: CycleBoundConstants = DEFAULT_CONSTANTS,
                       budget: int = DEFAULT_CYCLE_BUDGET) -> SufficiencyVerdict:
    """Red-fraction criteria over the simple cycles of the pruned remainder.

    forward:  every simple cycle has red fraction < ln2/ln3
    backward: every simple cycle has red fraction > ln2/ln3
    cycle:    in each component the cycles are all > ln2/ln3 or all
              < ln2/ln(3 + 1/m), m = ``constants.verified_min``

    For forward and backward, components consisting of exactly one simple
    cycle are set aside. A path that stays in such a component forever
    has an eventually periodic parity vector, which no divergent orbit and
    no irrational back-tracing vector has. This covers the black loop at
    0, the red loop at d-1 and images of the negative cycles. The verdicts
    without this step are kept in the certificate.

    All comparisons are exact. If enumeration hits ``budget`` every
    criterion is reported undetermined.
    """
    removed = normalize_residues(d, removed)
    g2 = pruned_remainder(d, removed)
    report = simple_cycles(g2, budget=budget)
    cycle_base = log_ratio_base(constants.verified_min)

    by_node: dict[int, int] = {}
    comps = weak_components(g2)
    for i, comp in enumerate(comps):
        for v in comp:
            by_node[v] = i
    per_comp: list[list[RedFraction]] = [[] for _ in comps]
    for c in report.cycles:
        per_comp[by_node[c.nodes[0]]].append(c.red_fraction)
    # every edge of g2 lies inside one component
    edge_count = [0] * len(comps)
    for u, _, _ in g2.edges:
        edge_count[by_node[u]] += 1
    summaries = tuple(
        _summarize(comp, fr, cycle_base, single=edge_count[i] == len(comp))
        for i, (comp, fr) in enumerate(zip(comps, per_comp)) if fr)

    if not report.complete:
        return SufficiencyVerdict(
            modulus=d, removed=removed, method="fractions",
            strong=None, forward=None, backward=None, cycle=None,
            certificate=Certificate(graph=g2, cycles=report, components=summaries),
            undetermined=frozenset(CRITERIA),
        )
    fractions = report.red_fractions()
    literal_forward = all(cmp_log_ratio(f) < 0 for f in fractions)
    literal_backward = all(cmp_log_ratio(f) > 0 for f in fractions)
    kept = [by_node[c.nodes[0]] for c in report.cycles]
    single = {i for i, comp in enumerate(comps) if edge_count[i] == len(comp)}
    mixed = [f for i, f in zip(kept, fractions) if i not in single]
    forward = all(cmp_log_ratio(f) < 0 for f in mixed)
    backward = all(cmp_log_ratio(f) > 0 for f in mixed)
    cycle = all(s.all_above_log_ratio or s.all_below_cycle_bound for s in summaries)
    return SufficiencyVerdict(
        modulus=d, removed=removed, method="fractions",
        strong=forward and backward and cycle,
        forward=forward, backward=backward, cycle=cycle,
        certificate=Certificate(graph=g2, cycles=report, components=summaries,
                                max_cycle_length=report.max_length,
                                all_cycles_forward=literal_forward,
                                all_cycles_backward=literal_backward),
    )


def check(d: int, removed: Iterable[int], criterion: str,
          constants: CycleBoundConstants = DEFAULT_CONSTANTS,
          budget: int = DEFAULT_CYCLE_BUDGET) -> SufficiencyVerdict:
    """Run the criterion that certifies ``criterion`` for the given set.

    "strong" uses the disjoint-cycle test; the other three use the
    red-fraction tests.
    """
    if criterion == "strong":
        return check_strong(d, removed, constants)
    if criterion in ("forward", "backward", "cycle", "fractions"):
        return check_red_fraction(d, removed, constants, budget)
    raise ValueError(f"unknown criterion {criterion!r}")


def eligible_residues(d: int) -> list[int]:
    """Residues that are nodes of the pruned graph mod d."""
    if d % 3:
        return list(range(d))
    return [r for r in range(d) if r % 3]


def _evaluate(args):
    d, subset, criterion, constants, budget = args
    return check(d, subset, criterion, constants, budget)


def default_threads() -> int:
    return max(1, int(os.environ.get("COLLATZ_THREADS", "1")))


def search(d: int, k: int, criterion: str, threads: int | None = None,
           constants: CycleBoundConstants = DEFAULT_CONSTANTS,
           budget: int = DEFAULT_CYCLE_BUDGET,
           include_failures: bool = False) -> list[SufficiencyVerdict]:
    """Evaluate every k-subset of eligible residues mod d.

    Subsets are visited in lexicographic order and results come back in
    that order whatever the worker count. By default only subsets passing
    ``criterion`` are returned.
    """
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}")
    threads = threads or default_threads()
    jobs = [(d, subset, criterion, constants, budget)
            for subset in combinations(eligible_residues(d), k)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(_evaluate, jobs, chunksize=16))
    else:
        verdicts = [_evaluate(j) for j in jobs]
    if include_failures:
        return verdicts
    return [v for v in verdicts if v.passes(criterion)]


def sparse_sufficient_set(a: int, d: int, f: Callable[[int], int],
                          count: int) -> list[int]:
    """First ``count`` members of {2^f(n) (a + dn) : n >= 0}.

    Each member is checked to reach a + dn after exactly f(n) steps of T.
    """
    if a < 1 or d < 1:
        raise ValueError("a and d must be positive integers")
    out = []
    for n in range(count):
        base = a + d * n
        e = f(n)
        if e < 0:
            raise ValueError("f must take nonnegative values")
        y = (1 << e) * base
        z = y
        for _ in range(e):
            z = t_step(z)
        if z != base:
            raise AssertionError(f"{y} does not reach {base} in {e} steps")
        out.append(y)
    return out


def orbit_misses(limit: int, a: int = 2, d: int = 9, start: int = 1) -> list[int]:
    """Integers in [start, limit] whose T-orbit reaches 1 before any value = a mod d.

    All orbits are advanced together as one int64 array; an orbit leaves
    the array when it hits the class or comes back to 1.
    """
    import numpy as np

    if start < 1 or limit < start:
        raise ValueError("need 1 <= start <= limit")
    xs = np.arange(start, limit + 1, dtype=np.int64)
    y = xs.copy()
    misses = []
    first = True
    ceiling = np.int64(1) << 61
    while y.size:
        hit = y % d == a
        back = (y == 1) & ~hit & (not first)
        misses.extend(xs[back].tolist())
        keep = ~(hit | back)
        xs, y = xs[keep], y[keep]
        odd = (y & 1).astype(bool)
        y = np.where(odd, (3 * y + 1) >> 1, y >> 1)
        if y.size and y.max() >= ceiling:
            raise OverflowError("orbit values left the int64 range")
        first = False
    return sorted(misses)
