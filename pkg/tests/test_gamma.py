import json
import random
from itertools import product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from collatz_sufficiency.arith import RedFraction, t_step
from collatz_sufficiency.gamma import (
    BLACK,
    RED,
    Color,
    ColoredDigraph,
    build_gamma,
    build_pruned_gamma,
    color_dual,
    delete_nodes,
    is_disjoint_cycle_union,
    prune_acyclic_edges,
    relabel,
    reverse,
    simple_cycles,
    strongly_connected_components,
    weak_components,
)


def scanned_gamma(d):
    """Edges read off actual integers: x mod d -> T(x) mod d, coloured by parity."""
    edges = set()
    for x in range(1, 4 * d + 1):
        edges.add((x % d, t_step(x) % d, RED if x & 1 else BLACK))
    return edges


@pytest.mark.parametrize("d", range(1, 201))
def test_closed_form_matches_integer_scan(d):
    assert set(build_gamma(d).edges) == scanned_gamma(d)


@pytest.mark.parametrize("d", [2, 4, 8, 10, 16, 20, 50])
def test_even_modulus_degrees(d):
    g = build_gamma(d)
    for v in g.nodes:
        color = BLACK if v % 2 == 0 else RED
        assert g.out_degree(v, color) == 2
        assert g.out_degree(v, color.dual()) == 0
        assert g.in_degree(v) == 2


@pytest.mark.parametrize("d", [5, 7, 11, 25, 35])
def test_odd_modulus_degrees(d):
    g = build_gamma(d)
    for v in g.nodes:
        assert g.out_degree(v, BLACK) == 1 and g.out_degree(v, RED) == 1
        assert g.in_degree(v, BLACK) == 1 and g.in_degree(v, RED) == 1


@pytest.mark.parametrize("d", [3, 9, 27])
def test_red_edges_land_on_two_mod_three(d):
    # 2y = 3x + 1 forces y = 2 mod 3
    g = build_gamma(d)
    assert all(v % 3 == 2 for _, v, c in g.edges if c is RED)


def test_pruned_graph_drops_multiples_of_three():
    g = build_pruned_gamma(9)
    assert sorted(g.nodes) == [1, 2, 4, 5, 7, 8]
    assert build_pruned_gamma(8) == build_gamma(8)


def test_every_graph_has_the_two_fixed_point_loops():
    for d in range(2, 60):
        g = build_gamma(d)
        assert (0, 0, BLACK) in g.edges
        assert (d - 1, d - 1, RED) in g.edges


def test_delete_unknown_node():
    with pytest.raises(ValueError):
        delete_nodes(build_pruned_gamma(9), [3])


def random_graph(rng, n, m):
    nodes = frozenset(range(n))
    edges = frozenset((rng.randrange(n), rng.randrange(n), rng.choice([BLACK, RED]))
                      for _ in range(m))
    return ColoredDigraph(0, nodes, edges)


def nx_expanded_cycles(g):
    """Simple cycles via networkx, expanded over parallel colours."""
    h = nx.DiGraph()
    h.add_nodes_from(g.nodes)
    colors = {}
    for u, v, c in g.edges:
        h.add_edge(u, v)
        colors.setdefault((u, v), []).append(c)
    out = set()
    for cyc in nx.simple_cycles(h):
        k = cyc.index(min(cyc))
        cyc = cyc[k:] + cyc[:k]
        pairs = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
        for combo in product(*(colors[p] for p in pairs)):
            out.add((tuple(cyc), combo))
    return out


def test_cycles_and_components_match_networkx():
    rng = random.Random(7)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 9), rng.randint(0, 20))
        ours = {(c.nodes, c.colors) for c in simple_cycles(g).cycles}
        assert ours == nx_expanded_cycles(g)
        h = nx.DiGraph()
        h.add_nodes_from(g.nodes)
        h.add_edges_from((u, v) for u, v, _ in g.edges)
        assert set(strongly_connected_components(g)) == {
            frozenset(c) for c in nx.strongly_connected_components(h)}


def test_cycle_budget_marks_report_incomplete():
    rep = simple_cycles(build_gamma(16), budget=3)
    assert not rep.complete and len(rep.cycles) == 3
    assert simple_cycles(build_gamma(16)).complete


def test_single_red_loop():
    g = ColoredDigraph(0, frozenset([0]), frozenset([(0, 0, RED)]))
    rep = simple_cycles(g)
    assert len(rep.cycles) == 1
    assert rep.cycles[0].red_fraction == RedFraction(1, 1)


def test_prune_keeps_cycle_edges_and_self_loops():
    g = ColoredDigraph(0, frozenset(range(4)), frozenset([
        (0, 1, BLACK), (1, 0, RED), (1, 2, BLACK), (3, 3, RED)]))
    p = prune_acyclic_edges(g)
    assert set(p.edges) == {(0, 1, BLACK), (1, 0, RED), (3, 3, RED)}
    assert p.nodes == g.nodes


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 40), st.data())
def test_weak_components_of_pruned_graph_are_strong(d, data):
    nodes = sorted(build_pruned_gamma(d).nodes)
    removed = data.draw(st.sets(st.sampled_from(nodes), max_size=3))
    g = prune_acyclic_edges(delete_nodes(build_pruned_gamma(d), removed))
    # isolated nodes are their own components either way
    assert set(weak_components(g)) == set(strongly_connected_components(g))


def test_disjoint_cycle_union():
    ok = ColoredDigraph(0, frozenset(range(5)), frozenset([
        (0, 1, BLACK), (1, 0, RED), (2, 2, RED)]))
    assert is_disjoint_cycle_union(ok) == (True, 2)
    bad = ColoredDigraph(0, frozenset(range(3)), frozenset([
        (0, 1, BLACK), (1, 0, RED), (1, 2, BLACK), (2, 1, RED)]))
    assert is_disjoint_cycle_union(bad)[0] is False


def test_transforms():
    g = build_gamma(8)
    assert reverse(reverse(g)) == g
    assert color_dual(color_dual(g)) == g
    assert relabel(g, {v: v for v in g.nodes}) == g
    with pytest.raises(ValueError):
        relabel(g, {v: 0 for v in g.nodes})


def test_json_round_trip():
    g = build_pruned_gamma(27)
    data = json.loads(g.to_json())
    assert ColoredDigraph.from_dict(data) == g
    assert data["edges"][0].keys() == {"from", "to", "color"}


def test_dot_styles():
    dot = build_gamma(8).to_dot()
    assert "[color=red, style=dashed]" in dot
    assert "[color=black, style=solid]" in dot
    assert dot.startswith('digraph "Gamma_8" {')


def test_color_enum():
    assert Color("red") is RED and RED.dual() is BLACK


def test_gamma_two():
    g = build_gamma(2)
    assert set(g.edges) == {(0, 0, BLACK), (0, 1, BLACK), (1, 0, RED), (1, 1, RED)}


def test_gamma_27_pruned_size():
    assert len(build_pruned_gamma(27).nodes) == 18
    assert build_pruned_gamma(7) == build_gamma(7)


def test_path_has_no_cycle_edges():
    g = ColoredDigraph(0, frozenset("abc"), frozenset([("a", "b", BLACK), ("b", "c", RED)]))
    assert not prune_acyclic_edges(g).edges


@pytest.mark.parametrize("d", [9, 16, 27, 35, 64])
def test_prune_is_idempotent(d):
    g = prune_acyclic_edges(build_pruned_gamma(d))
    assert prune_acyclic_edges(g) == g


def test_sixteen_minus_one_three_has_two_components():
    g = prune_acyclic_edges(delete_nodes(build_gamma(16), [1, 3]))
    nontrivial = [c for c in weak_components(g) if any(u in c for u, _, _ in g.edges)]
    assert len(nontrivial) == 2
    assert {0, 15} <= set().union(*nontrivial)
    assert not any(0 in c and 15 in c for c in nontrivial)


def test_nine_minus_two_is_cycle_union():
    g = prune_acyclic_edges(delete_nodes(build_pruned_gamma(9), [2]))
    assert is_disjoint_cycle_union(g)[0]
    assert len(g.nodes) == 5


def test_empty_graph_components():
    assert weak_components(ColoredDigraph(0, frozenset(), frozenset())) == []


def _color_cycles(g, color):
    nxt = {}
    for u, v, c in g.edges:
        if c is color:
            assert u not in nxt
            nxt[u] = v
    seen, lengths = set(), []
    for v in nxt:
        if v in seen:
            continue
        n, w = 0, v
        while w not in seen:
            seen.add(w)
            w = nxt[w]
            n += 1
        assert w == v
        lengths.append(n)
    return lengths


@pytest.mark.parametrize("d", [5, 7, 11, 13, 25, 35, 49, 77, 91, 125])
def test_coprime_to_six_structure(d):
    from collatz_sufficiency.arith import mult_order
    g = build_gamma(d)
    o2 = mult_order(2, d)
    o32 = mult_order(3 * pow(2, -1, d) % d, d)
    assert all(o2 % n == 0 for n in _color_cycles(g, BLACK))
    assert all(o32 % n == 0 for n in _color_cycles(g, RED))
    assert (0, 0, BLACK) in g.edges and (d - 1, d - 1, RED) in g.edges


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_power_of_three_red_tree(m):
    d = 3 ** m
    g = build_gamma(d)
    red = {u: v for u, v, c in g.edges if c is RED}
    root = d - 1
    assert red[root] == root

    def depth(v):
        n = 0
        while v != root:
            v = red[v]
            n += 1
            assert n <= d
        return n

    leaves = [v for v in g.nodes if g.in_degree(v, RED) == 0]
    assert min(depth(v) for v in leaves) == m
    assert all(depth(v) < d for v in g.nodes)


@pytest.mark.parametrize("d", [d for d in range(2, 201) if d % 3])
def test_in_degree_one_each_when_coprime_to_three(d):
    g = build_gamma(d)
    for v in g.nodes:
        assert g.in_degree(v, BLACK) >= 1 and g.in_degree(v, RED) >= 1
        if d % 2:
            assert g.in_degree(v, BLACK) == 1 and g.in_degree(v, RED) == 1


def test_omega_relabel_gives_color_dual():
    from collatz_sufficiency.parity import omega_table
    for n in range(1, 8):
        g = build_gamma(2 ** n)
        perm = dict(enumerate(omega_table(n).table))
        assert relabel(g, perm) == color_dual(g)
