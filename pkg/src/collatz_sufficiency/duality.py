"""Colour duality and folding of the mod 2^n graphs.

The involution Omega on residues mod 2^n swaps the two branches of T, so
relabelling by it turns every black edge red and every red edge black.
The window-sum maps H_k send residues mod 2^(n+k-1) onto residues mod 2^n
and carry edges to edges, which folds the larger graph onto the smaller.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gamma import (
    BLACK,
    RED,
    Color,
    ColoredDigraph,
    Cycle,
    build_gamma,
    color_dual,
    induced_subgraph,
    relabel,
)
from .parity import h_preimage, h_table, omega_table
from .sufficiency import (
    DEFAULT_CONSTANTS,
    CycleBoundConstants,
    SufficiencyVerdict,
    check_strong,
)

DEFAULT_SEARCH_BUDGET = 10 ** 6


def power_of_two_exponent(d: int) -> int | None:
    if d >= 1 and d & (d - 1) == 0:
        return d.bit_length() - 1
    return None


@dataclass(frozen=True)
class DualityWitness:
    modulus: int
    permutation: tuple[int, ...]
    verified: bool

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "permutation": list(self.permutation),
                "verified": self.verified}


@dataclass(frozen=True)
class DualityResult:
    modulus: int
    witness: DualityWitness | None
    # True when the search budget ran out before an answer
    undetermined: bool = False
    method: str = "omega"
    nodes_visited: int = 0

    @property
    def self_dual(self) -> bool | None:
        if self.undetermined:
            return None
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "self_dual": self.self_dual,
            "method": self.method,
            "nodes_visited": self.nodes_visited,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def is_color_reversing(g: ColoredDigraph, mapping: Sequence[int] | dict) -> bool:
    """Does relabelling g by ``mapping`` give its colour dual?"""
    if not isinstance(mapping, dict):
        mapping = dict(enumerate(mapping))
    return relabel(g, mapping) == color_dual(g)


def omega_witness(n: int) -> DualityWitness:
    d = 1 << n
    perm = omega_table(n).table
    return DualityWitness(d, tuple(perm), is_color_reversing(build_gamma(d), perm))


def _refine(g: ColoredDigraph, initial: dict[int, object]) -> dict[int, int]:
    """Colour refinement on a coloured digraph until the partition is stable."""
    label = dict(initial)
    classes = len(set(label.values()))
    while True:
        sig = {}
        for v in g.nodes:
            outs = sorted((c.value, label[w]) for w, c in g.out_edges.get(v, ()))
            ins = sorted((c.value, label[u]) for u, c in g.in_edges.get(v, ()))
            sig[v] = (label[v], tuple(outs), tuple(ins))
        names = {s: i for i, s in enumerate(sorted(set(sig.values()), key=repr))}
        new = {v: names[sig[v]] for v in g.nodes}
        if len(names) == classes:
            return new
        label, classes = new, len(names)


def _disjoint_union(g: ColoredDigraph, h: ColoredDigraph) -> tuple[ColoredDigraph, int]:
    shift = max(g.nodes, default=-1) + 1
    nodes = set(g.nodes) | {v + shift for v in h.nodes}
    edges = set(g.edges) | {(u + shift, v + shift, c) for u, v, c in h.edges}
    return ColoredDigraph(g.modulus, frozenset(nodes), frozenset(edges)), shift


def _loop_distance(g: ColoredDigraph) -> dict[int, int]:
    """Forward distance from each node to the nearest self-loop (-1 if none)."""
    loops = [v for v in g.nodes if any(w == v for w, _ in g.out_edges.get(v, ()))]
    dist = {v: 0 for v in loops}
    frontier = loops
    while frontier:
        nxt = []
        for v in frontier:
            for u, _ in g.in_edges.get(v, ()):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return {v: dist.get(v, -1) for v in g.nodes}


def find_color_reversing_isomorphism(g: ColoredDigraph,
                                     budget: int = DEFAULT_SEARCH_BUDGET):
    """Backtracking search for a bijection sending g onto its colour dual.

    Candidates are restricted by colour refinement run jointly on g and its
    dual, seeded with the distance to the nearest self-loop. Returns
    (mapping or None, exhausted budget?, nodes visited).
    """
    dual = color_dual(g)
    union, shift = _disjoint_union(g, dual)
    dist = _loop_distance(union)
    labels = _refine(union, dist)
    left = Counter(labels[v] for v in g.nodes)
    right = Counter(labels[v + shift] for v in dual.nodes)
    if left != right:
        return None, False, 0

    cands = {v: [w for w in sorted(dual.nodes) if labels[w + shift] == labels[v]]
             for v in g.nodes}
    order = sorted(g.nodes, key=lambda v: (len(cands[v]), v))
    g_out = {v: {w: c for w, c in g.out_edges.get(v, ())} for v in g.nodes}
    d_out = {v: {w: c for w, c in dual.out_edges.get(v, ())} for v in dual.nodes}
    # parallel edges of two colours between one pair are folded into a set
    g_pair = Counter((u, v) for u, v, _ in g.edges)
    d_pair = Counter((u, v) for u, v, _ in dual.edges)
    g_edges, d_edges = g.edges, dual.edges

    mapping: dict[int, int] = {}
    used: set[int] = set()
    visited = 0

    def consistent(v: int, w: int) -> bool:
        for u, mu in mapping.items():
            for a, b, ma, mb in ((u, v, mu, w), (v, u, w, mu)):
                if g_pair[(a, b)] != d_pair[(ma, mb)]:
                    return False
                for c in (BLACK, RED):
                    if ((a, b, c) in g_edges) != ((ma, mb, c) in d_edges):
                        return False
        if g_pair[(v, v)] != d_pair[(w, w)]:
            return False
        return all(((v, v, c) in g_edges) == ((w, w, c) in d_edges) for c in (BLACK, RED))

    def extend(i: int) -> bool:
        nonlocal visited
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w in used:
                continue
            visited += 1
            if visited > budget:
                raise _Budget
            if consistent(v, w):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    try:
        ok = extend(0)
    except _Budget:
        return None, True, visited
    return (dict(mapping) if ok else None), False, visited


class _Budget(Exception):
    pass


def check_self_color_dual(d: int, budget: int = DEFAULT_SEARCH_BUDGET,
                          search: bool = False) -> DualityResult:
    """Is the mod d graph isomorphic to itself with colours swapped?

    Powers of two are settled by the Omega witness; other moduli (or any
    modulus with ``search=True``) by exhaustive backtracking.
    """
    if d < 2:
        raise ValueError("modulus must be at least 2")
    n = power_of_two_exponent(d)
    if n is not None and not search:
        w = omega_witness(n)
        return DualityResult(d, w if w.verified else None, method="omega")
    g = build_gamma(d)
    mapping, exhausted, visited = find_color_reversing_isomorphism(g, budget)
    if exhausted:
        return DualityResult(d, None, undetermined=True, method="search",
                             nodes_visited=visited)
    witness = None
    if mapping is not None:
        perm = tuple(mapping[v] for v in range(d))
        witness = DualityWitness(d, perm, is_color_reversing(g, perm))
    return DualityResult(d, witness, method="search", nodes_visited=visited)


@dataclass(frozen=True)
class FoldReport:
    """Folding of the graph mod 2^source onto the graph mod 2^target by H_window.

    ``arrows_match``: H maps the source edges exactly onto the target edges.
    ``colors_match``: each image edge is red exactly when the first
    ``window`` colours along the source path from its tail sum to 1.
    ``fiber_bijections``: between fibres joined by an arrow, the arrows
    form a perfect matching.
    ``two_path_shifted``: (window 2) a 2-path x -> z -> y gives the edge
    H(x) -> H(z), black iff both colours agree.
    ``two_path_endpoints``: (window 2) the same rule read as H(x) -> H(y).
    """

    source_exponent: int
    target_exponent: int
    window: int
    arrows_match: bool
    colors_match: bool
    fiber_bijections: bool
    fibers: dict[int, tuple[int, ...]] = field(default_factory=dict)
    two_path_shifted: bool | None = None
    two_path_endpoints: bool | None = None

    @property
    def verified(self) -> bool:
        ok = self.arrows_match and self.colors_match and self.fiber_bijections
        if self.two_path_shifted is not None:
            ok = ok and self.two_path_shifted
        return ok

    def to_dict(self) -> dict:
        return {
            "source_modulus": 1 << self.source_exponent,
            "target_modulus": 1 << self.target_exponent,
            "window": self.window,
            "verified": self.verified,
            "arrows_match": self.arrows_match,
            "colors_match": self.colors_match,
            "fiber_bijections": self.fiber_bijections,
            "two_path_shifted": self.two_path_shifted,
            "two_path_endpoints": self.two_path_endpoints,
            "fibers": {str(k): list(v) for k, v in sorted(self.fibers.items())},
        }


def _path_colors(g: ColoredDigraph, x: int, length: int) -> list[int]:
    """Colours along the unique forward path of ``length`` edges (mod 2^n graphs).

    Every node of the mod 2^n graph has out-edges of a single colour, set
    by its parity, so the colour sequence does not depend on the branch.
    """
    out = []
    frontier = {x}
    for _ in range(length):
        colors = {c for v in frontier for _, c in g.out_edges[v]}
        if len(colors) != 1:
            raise AssertionError("colour sequence is not determined")
        out.append(1 if colors.pop() is RED else 0)
        frontier = {w for v in frontier for w, _ in g.out_edges[v]}
    return out


def verify_fold(n: int, k: int = 2) -> FoldReport:
    """Check that H_k folds the graph mod 2^n onto the graph mod 2^(n-k+1)."""
    if k < 2:
        raise ValueError("window must be at least 2")
    target = n - k + 1
    if target < 1:
        raise ValueError(f"need n >= k (got n={n}, k={k})")
    h = h_table(target, k)
    src = build_gamma(1 << n)
    tgt = build_gamma(1 << target)

    images = {(h(u), h(v), c) for u, v, c in src.edges}
    arrows_match = {(a, b) for a, b, _ in images} == {(a, b) for a, b, _ in tgt.edges}
    colors_match = True
    for u, v, _ in src.edges:
        want = RED if sum(_path_colors(src, u, k)) % 2 else BLACK
        if (h(u), h(v), want) not in tgt.edges:
            colors_match = False
            break

    fibers = {y: tuple(xs) for y, xs in h.fibers().items()}
    bijections = True
    for a, b, _ in tgt.edges:
        pairs = [(u, v) for u in fibers[a] for v, _ in src.out_edges[u] if h(v) == b]
        tails = Counter(u for u, _ in pairs)
        heads = Counter(v for _, v in pairs)
        if (len(pairs) != len(fibers[a]) or set(tails) != set(fibers[a])
                or any(c != 1 for c in tails.values())
                or any(c != 1 for c in heads.values())):
            bijections = False
            break

    shifted = endpoints = None
    if k == 2:
        tgt_edges = set(tgt.edges)
        by_shift, by_end = set(), set()
        for x in src.nodes:
            for z, c1 in src.out_edges[x]:
                for y, c2 in src.out_edges[z]:
                    col = BLACK if c1 == c2 else RED
                    by_shift.add((h(x), h(z), col))
                    by_end.add((h(x), h(y), col))
        shifted = by_shift == tgt_edges
        endpoints = by_end == tgt_edges
    return FoldReport(n, target, k, arrows_match, colors_match, bijections,
                      fibers, shifted, endpoints)


def fold_residues(residues: Iterable[int], n: int, k: int) -> list[int]:
    """Images mod 2^n of residues mod 2^(n+k-1)."""
    h = h_table(n, k)
    return sorted({h(r) for r in residues})


@dataclass(frozen=True)
class UnfoldResult:
    source: SufficiencyVerdict
    verdict: SufficiencyVerdict
    window: int
    longest_cycle: int

    def to_dict(self) -> dict:
        return {
            "input": self.source.label,
            "window": self.window,
            "longest_cycle": self.longest_cycle,
            "output": self.verdict.to_dict(),
        }


def unfold_sufficient_set(residues: Iterable[int], n: int, k: int = 2,
                          constants: CycleBoundConstants = DEFAULT_CONSTANTS) -> UnfoldResult:
    """Lift a strongly sufficient set mod 2^n to its H_k preimage mod 2^(n+k-1).

    The lifted set is re-certified, not taken on trust.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    d = 1 << n
    before = check_strong(d, residues, constants)
    if not before.strong:
        failing = [c for c in ("forward", "backward", "cycle") if not before.passes(c)]
        raise ValueError(f"{before.label} fails the strong criterion ({', '.join(failing)})")
    q = before.certificate.max_cycle_length or 0
    # lifted cycles can be k times longer and must stay below the period bound
    if k * q >= constants.max_cycle_period:
        raise ValueError(f"window {k} times longest cycle {q} reaches "
                         f"{constants.max_cycle_period}")
    lifted = h_preimage(before.removed, n, k) if k > 1 else list(before.removed)
    after = check_strong(d << (k - 1), lifted, constants)
    if not after.strong:
        raise AssertionError(f"lifted set {after.label} fails the strong criterion")
    return UnfoldResult(before, after, k, q)


@dataclass(frozen=True)
class FiberCycles:
    base_length: int
    cycles: tuple[Cycle, ...]
    fiber_bijections: bool

    @property
    def node_count(self) -> int:
        return sum(c.length for c in self.cycles)


def _single_cycle_order(g: ColoredDigraph) -> list[int] | None:
    """Nodes of g in cycle order if g is exactly one directed cycle."""
    if not g.nodes:
        return None
    if any(g.out_degree(v) != 1 or g.in_degree(v) != 1 for v in g.nodes):
        return None
    start = min(g.nodes)
    order = [start]
    v = g.successors(start)[0]
    while v != start:
        order.append(v)
        v = g.successors(v)[0]
    return order if len(order) == len(g.nodes) else None


def fiber_cycle_structure(nodes: Iterable[int], n: int, k: int) -> FiberCycles:
    """Decompose the preimage of a cycle of the mod 2^n graph into cycles."""
    nodes = sorted(set(nodes))
    d = 1 << n
    base = induced_subgraph(build_gamma(d), nodes)
    order = _single_cycle_order(base)
    if order is None:
        raise ValueError(f"{nodes} do not induce a single cycle mod {d}")
    h = h_table(n, k)
    lifted_nodes = h.preimage(nodes)
    big = induced_subgraph(build_gamma(d << (k - 1)), lifted_nodes)

    fibers = h.fibers()
    bijections = True
    for i, x in enumerate(order):
        y = order[(i + 1) % len(order)]
        pairs = [(u, v) for u in fibers[x] for v in big.successors(u) if h(v) == y]
        if (sorted(u for u, _ in pairs) != sorted(fibers[x])
                or sorted(v for _, v in pairs) != sorted(fibers[y])):
            bijections = False

    cycles = []
    seen: set[int] = set()
    for start in sorted(big.nodes):
        if start in seen:
            continue
        walk, colors = [start], []
        v = start
        while True:
            outs = big.out_edges.get(v, ())
            if len(outs) != 1:
                raise AssertionError(f"node {v} has {len(outs)} arrows inside the preimage")
            w, c = outs[0]
            colors.append(c)
            if w == start:
                break
            if w in seen or w in walk:
                raise AssertionError("preimage is not a union of disjoint cycles")
            walk.append(w)
            v = w
        seen.update(walk)
        cycles.append(Cycle(tuple(walk), tuple(colors)))
    return FiberCycles(len(order), tuple(cycles), bijections)


def folded_dot(n: int, k: int = 2) -> str:
    """DOT for the target graph of a fold, each node labelled with its fibre."""
    rep = verify_fold(n, k)
    tgt = build_gamma(1 << rep.target_exponent)
    labels = {y: f"{y} [{','.join(map(str, xs))}]" for y, xs in rep.fibers.items()}
    return tgt.to_dot(name=f"fold_{1 << n}_to_{1 << rep.target_exponent}", labels=labels)
