"""The modular Collatz digraphs Gamma_d and the graph algorithms on them.

Nodes are residues mod d. A black edge r -> s records some even x = r
(mod d) with x/2 = s (mod d); a red edge records some odd x = r with
(3x+1)/2 = s.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping

from .arith import RedFraction


class Color(str, Enum):
    BLACK = "black"
    RED = "red"

    def dual(self) -> Color:
        return Color.RED if self is Color.BLACK else Color.BLACK


BLACK, RED = Color.BLACK, Color.RED

Edge = tuple[int, int, Color]


@dataclass(frozen=True)
class ColoredDigraph:
    """Immutable two-colored digraph on a subset of Z/dZ."""

    modulus: int
    nodes: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(
            (u, v, Color(c)) for u, v, c in self.edges))
        for u, v, _ in self.edges:
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge {u}->{v} leaves the node set")

    @cached_property
    def out_edges(self) -> Mapping[int, tuple[tuple[int, Color], ...]]:
        out = defaultdict(list)
        for u, v, c in self.edges:
            out[u].append((v, c))
        return {u: tuple(sorted(out.get(u, ()))) for u in self.nodes}

    @cached_property
    def in_edges(self) -> Mapping[int, tuple[tuple[int, Color], ...]]:
        inc = defaultdict(list)
        for u, v, c in self.edges:
            inc[v].append((u, c))
        return {v: tuple(sorted(inc.get(v, ()))) for v in self.nodes}

    def successors(self, u: int) -> list[int]:
        return sorted({v for v, _ in self.out_edges[u]})

    def predecessors(self, v: int) -> list[int]:
        return sorted({u for u, _ in self.in_edges[v]})

    def out_degree(self, u: int, color: Color | None = None) -> int:
        return sum(1 for _, c in self.out_edges[u] if color is None or c == color)

    def in_degree(self, v: int, color: Color | None = None) -> int:
        return sum(1 for _, c in self.in_edges[v] if color is None or c == color)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (e[0], e[1], e[2].value))

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "nodes": sorted(self.nodes),
            "edges": [{"from": u, "to": v, "color": c.value}
                      for u, v, c in self.sorted_edges()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> ColoredDigraph:
        return cls(int(data["modulus"]), frozenset(data["nodes"]),
                   frozenset((e["from"], e["to"], Color(e["color"]))
                             for e in data["edges"]))

    def to_dot(self, name: str | None = None,
               labels: Mapping[int, str] | None = None) -> str:
        """Graphviz source; black edges solid, red edges red and dashed."""
        name = name or f"Gamma_{self.modulus}"
        lines = [f'digraph "{name}" {{']
        for u in sorted(self.nodes):
            label = labels.get(u, str(u)) if labels else str(u)
            lines.append(f'  {u} [label="{label}"];')
        for u, v, c in self.sorted_edges():
            if c is RED:
                lines.append(f"  {u} -> {v} [color=red, style=dashed];")
            else:
                lines.append(f"  {u} -> {v} [color=black, style=solid];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_gamma(d: int) -> ColoredDigraph:
    """Gamma_d built from the closed-form edge rule."""
    if d < 1:
        raise ValueError("modulus must be positive")
    edges: set[Edge] = set()
    if d % 2:
        inv2 = pow(2, -1, d) if d > 1 else 0
        for r in range(d):
            edges.add((r, r * inv2 % d, BLACK))
            edges.add((r, (3 * r + 1) * inv2 % d, RED))
    else:
        half = d // 2
        for r in range(d):
            if r % 2 == 0:
                s = r // 2
                edges.add((r, s, BLACK))
                edges.add((r, (s + half) % d, BLACK))
            else:
                s = (3 * r + 1) // 2 % d
                edges.add((r, s, RED))
                edges.add((r, (s + half) % d, RED))
    return ColoredDigraph(d, frozenset(range(d)), frozenset(edges))


def induced_subgraph(g: ColoredDigraph, keep: Iterable[int]) -> ColoredDigraph:
    keep = frozenset(keep)
    return ColoredDigraph(g.modulus, keep, frozenset(
        e for e in g.edges if e[0] in keep and e[1] in keep))


def prune(g: ColoredDigraph) -> ColoredDigraph:
    """Drop residues divisible by 3 when 3 divides the modulus."""
    if g.modulus % 3:
        return g
    return induced_subgraph(g, (v for v in g.nodes if v % 3))


def build_pruned_gamma(d: int) -> ColoredDigraph:
    return prune(build_gamma(d))


def delete_nodes(g: ColoredDigraph, removed: Iterable[int]) -> ColoredDigraph:
    removed = set(removed)
    unknown = removed - g.nodes
    if unknown:
        raise ValueError(f"residues {sorted(unknown)} are not nodes of the graph")
    return induced_subgraph(g, g.nodes - removed)


def _tarjan(succ: Mapping[int, Iterable[int]]) -> list[frozenset[int]]:
    """Tarjan's algorithm on an adjacency map, iterative to avoid recursion limits."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 0
    for root in sorted(succ):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.add(w)
                        if w == v:
                            break
                    comps.append(frozenset(comp))
    return comps


def strongly_connected_components(g: ColoredDigraph) -> list[frozenset[int]]:
    return _tarjan({u: g.successors(u) for u in g.nodes})


def prune_acyclic_edges(g: ColoredDigraph) -> ColoredDigraph:
    """Keep exactly the edges lying on some cycle.

    An edge u -> v is on a cycle iff u and v share a strongly connected
    component. Nodes are kept even when they lose all their edges.
    """
    comp_of = {}
    for i, comp in enumerate(strongly_connected_components(g)):
        for v in comp:
            comp_of[v] = i
    return ColoredDigraph(g.modulus, g.nodes, frozenset(
        e for e in g.edges if comp_of[e[0]] == comp_of[e[1]]))


def reverse(g: ColoredDigraph) -> ColoredDigraph:
    return ColoredDigraph(g.modulus, g.nodes,
                          frozenset((v, u, c) for u, v, c in g.edges))


def color_dual(g: ColoredDigraph) -> ColoredDigraph:
    return ColoredDigraph(g.modulus, g.nodes,
                          frozenset((u, v, c.dual()) for u, v, c in g.edges))


def relabel(g: ColoredDigraph, mapping: Mapping[int, int]) -> ColoredDigraph:
    """Rename node u to mapping[u]. The mapping must be a bijection on the nodes."""
    images = {mapping[u] for u in g.nodes if u in mapping}
    if len(images) != len(g.nodes) or images != set(g.nodes):
        raise ValueError("relabeling must be a bijection on the node set")
    return ColoredDigraph(g.modulus, g.nodes, frozenset(
        (mapping[u], mapping[v], c) for u, v, c in g.edges))


def weak_components(g: ColoredDigraph) -> list[frozenset[int]]:
    """Weakly connected components, ordered by smallest member."""
    parent = {v: v for v in g.nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v, _ in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups = defaultdict(set)
    for v in g.nodes:
        groups[find(v)].add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def is_disjoint_cycle_union(g: ColoredDigraph) -> tuple[bool, int]:
    """Is ``g`` a disjoint union of cycles and isolated vertices?

    Returns the verdict and the length of the longest cycle (0 if none).
    Self-loops count as cycles of length 1.
    """
    for v in g.nodes:
        if len(g.out_edges[v]) > 1 or len(g.in_edges[v]) > 1:
            return False, 0
    nxt = {u: v for u, v, _ in g.edges}
    seen: set[int] = set()
    longest = 0
    for start in sorted(nxt):
        if start in seen:
            continue
        length, v = 0, start
        while v not in seen:
            seen.add(v)
            if v not in nxt:
                # a path that dead-ends: some edge is off every cycle
                return False, 0
            v = nxt[v]
            length += 1
        if v != start:
            return False, 0
        longest = max(longest, length)
    return True, longest


@dataclass(frozen=True)
class Cycle:
    """A simple cycle as its node sequence and the colors of its edges."""

    nodes: tuple[int, ...]
    colors: tuple[Color, ...]

    @property
    def length(self) -> int:
        return len(self.nodes)

    @property
    def red_fraction(self) -> RedFraction:
        return RedFraction(sum(c is RED for c in self.colors), len(self.colors))


@dataclass(frozen=True)
class CycleReport:
    cycles: tuple[Cycle, ...]
    complete: bool
    budget: int

    @property
    def max_length(self) -> int:
        return max((c.length for c in self.cycles), default=0)

    def red_fractions(self) -> list[RedFraction]:
        return [c.red_fraction for c in self.cycles]

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "budget": self.budget,
            "count": len(self.cycles),
            "max_length": self.max_length,
            "cycles": [{"nodes": list(c.nodes),
                        "colors": [x.value for x in c.colors],
                        "red_fraction": str(c.red_fraction)} for c in self.cycles],
        }


DEFAULT_CYCLE_BUDGET = 10 ** 6


def _elementary_cycles(succ: Mapping[int, list[int]]):
    """Johnson's enumeration of elementary cycles on a plain adjacency map.

    Yields node lists; each cycle starts at its smallest node.
    """
    for v in sorted(succ):
        if v in succ[v]:
            yield [v]
    adj = {v: [w for w in succ[v] if w != v] for v in succ}
    work = [c for c in _tarjan(adj) if len(c) > 1]
    work.sort(key=min, reverse=True)
    while work:
        comp = work.pop()
        s = min(comp)
        sub = {v: [w for w in adj[v] if w in comp] for v in comp}
        yield from _circuits_through(s, sub)
        rest = comp - {s}
        sub = {v: [w for w in sub[v] if w in rest] for v in rest}
        more = [c for c in _tarjan(sub) if len(c) > 1]
        work.extend(sorted(more, key=min, reverse=True))


def _circuits_through(s: int, sub: Mapping[int, list[int]]):
    blocked = {s}
    closed: set[int] = set()
    bmap: dict[int, set[int]] = defaultdict(set)
    path = [s]
    stack = [(s, list(reversed(sub[s])))]
    while stack:
        v, nbrs = stack[-1]
        if nbrs:
            w = nbrs.pop()
            if w == s:
                yield list(path)
                closed.update(path)
            elif w not in blocked:
                path.append(w)
                stack.append((w, list(reversed(sub[w]))))
                closed.discard(w)
                blocked.add(w)
                continue
        if not nbrs:
            if v in closed:
                todo = [v]
                while todo:
                    u = todo.pop()
                    if u in blocked:
                        blocked.discard(u)
                        todo.extend(bmap.pop(u, ()))
            else:
                for w in sub[v]:
                    bmap[w].add(v)
            stack.pop()
            path.pop()


def simple_cycles(g: ColoredDigraph, budget: int = DEFAULT_CYCLE_BUDGET) -> CycleReport:
    """Enumerate every simple cycle of ``g`` with its edge colors.

    Parallel edges of different colors give distinct cycles. Enumeration
    stops after ``budget`` cycles and the report is then marked incomplete.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    succ = {u: g.successors(u) for u in g.nodes}
    colors_between = defaultdict(list)
    for u, v, c in g.edges:
        colors_between[u, v].append(c)
    for key in colors_between:
        colors_between[key].sort(key=lambda c: c.value)
    found: list[Cycle] = []
    for nodes in _elementary_cycles(succ):
        steps = [colors_between[nodes[i], nodes[(i + 1) % len(nodes)]]
                 for i in range(len(nodes))]
        for colors in product(*steps):
            if len(found) >= budget:
                return CycleReport(tuple(found), False, budget)
            found.append(Cycle(tuple(nodes), tuple(colors)))
    found.sort(key=lambda c: (c.length, c.nodes, [x.value for x in c.colors]))
    return CycleReport(tuple(found), True, budget)
