import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarsplit.multigraph import (
    DeadEdgeError,
    DeadVertexError,
    GraphError,
    Label,
    Multigraph,
)


def build(n):
    g = Multigraph()
    return g, [g.add_vertex() for _ in range(n)]


def test_single_edge_degrees():
    g, (a, b) = build(2)
    g.add_edge(a, b)
    assert g.degree(a) == 1
    assert g.degree(b) == 1


def test_loop_counts_twice():
    g, (a,) = build(1)
    g.add_edge(a, a)
    assert g.degree(a) == 2
    assert [w for _, w in g.neighbors(a)] == [a, a]


def test_parallel_edges_are_distinct():
    g, (a, b) = build(2)
    e1 = g.add_edge(a, b)
    e2 = g.add_edge(a, b)
    assert e1 != e2
    assert g.degree(a) == 2
    assert sorted(e for e, _ in g.neighbors(a)) == [e1, e2]


def test_neighbors_star():
    g, vs = build(4)
    c = vs[0]
    for leaf in vs[1:]:
        g.add_edge(c, leaf)
    got = sorted(w for _, w in g.neighbors(c))
    assert got == sorted(vs[1:])


def test_neighbors_parallel_yields_twice():
    g, (a, b) = build(2)
    e1 = g.add_edge(a, b)
    e2 = g.add_edge(a, b)
    got = sorted(g.neighbors(a))
    assert got == [(e1, b), (e2, b)]


def test_contract_path():
    # a-b-c, contract ab: merged vertex adjacent to c only
    g, (a, b, c) = build(3)
    ab = g.add_edge(a, b)
    g.add_edge(b, c)
    m = g.contract(ab)
    assert m in (a, b)
    assert g.degree(m) == 1
    assert [w for _, w in g.neighbors(m)] == [c]
    assert g.degree(c) == 1
    assert [w for _, w in g.neighbors(c)] == [m]


def test_contract_triangle_makes_parallel_pair():
    g, (a, b, c) = build(3)
    ab = g.add_edge(a, b)
    g.add_edge(b, c)
    g.add_edge(a, c)
    m = g.contract(ab)
    assert g.degree(m) == 2
    assert [w for _, w in g.neighbors(m)] == [c, c]
    assert g.degree(c) == 2


def test_contract_parallel_pair_leaves_loop():
    g, (a, b) = build(2)
    e1 = g.add_edge(a, b)
    e2 = g.add_edge(a, b)
    m = g.contract(e1)
    # the surviving copy of the contracted edge becomes a retained loop
    assert g.degree(m) == 2
    assert [w for _, w in g.neighbors(m)] == [m, m]
    assert g.edge_alive(e2)
    assert not g.edge_alive(e1)


def test_contract_loop_deletes_it():
    g, (a, b) = build(2)
    loop = g.add_edge(a, a)
    g.add_edge(a, b)
    assert g.contract(loop) == a
    assert g.degree(a) == 1
    assert not g.edge_alive(loop)


def test_contract_survivor_is_higher_degree_side():
    g, vs = build(5)
    hub = vs[0]
    for leaf in vs[1:]:
        g.add_edge(hub, leaf)
    e = g.add_edge(vs[1], hub)  # endpointA = vs[1], lower degree
    assert g.contract(e) == hub
    assert g.merged_into(vs[1]) == hub


def test_contract_tie_keeps_first_endpoint():
    g, (a, b) = build(2)
    e = g.add_edge(a, b)
    assert g.contract(e) == a


def test_dead_vertex_and_edge_errors():
    g, (a, b, c) = build(3)
    ab = g.add_edge(a, b)
    g.add_edge(b, c)
    m = g.contract(ab)
    dead = a + b - m
    with pytest.raises(DeadVertexError):
        g.degree(dead)
    with pytest.raises(DeadVertexError):
        list(g.neighbors(dead))
    with pytest.raises(DeadVertexError):
        g.add_edge(dead, c)
    with pytest.raises(DeadEdgeError):
        g.contract(ab)
    with pytest.raises(GraphError):
        g.degree(99)


def test_fresh_metadata_defaults():
    g, (a,) = build(1)
    meta = g.get_meta(a)
    assert meta.adj is False
    assert meta.in_worklist is False
    assert meta.opposing == 0
    assert meta.label is Label.NONE


def test_set_meta_roundtrip():
    g, (a,) = build(1)
    g.set_meta(a, "label", Label.QUAD)
    assert g.get_meta(a).label is Label.QUAD
    g.set_meta(a, "opposing", 3)
    assert g.get_meta(a).opposing == 3
    with pytest.raises(GraphError):
        g.set_meta(a, "opposing", -1)
    with pytest.raises(GraphError):
        g.set_meta(a, "bogus", 1)


def test_neighbors_exhausts_in_degree_steps():
    g, (a, b) = build(2)
    g.add_edge(a, b)
    g.add_edge(a, a)
    g.add_edge(a, b)
    assert g.degree(a) == 4
    assert len(list(g.neighbors(a))) == 4


def test_degree_conservation_after_contract():
    # merged degree is d(u) + d(v) - 2 regardless of parallel e-copies,
    # because retained copies become loops which still count twice
    rng = random.Random(7)
    for _ in range(50):
        g, vs = build(6)
        edges = []
        for _ in range(12):
            u, v = rng.choice(vs), rng.choice(vs)
            edges.append(g.add_edge(u, v))
        non_loops = [e for e in edges if len(set(g.endpoints(e))) == 2]
        if not non_loops:
            continue
        e = rng.choice(non_loops)
        u, v = g.endpoints(e)
        du, dv = g.degree(u), g.degree(v)
        m = g.contract(e)
        assert g.degree(m) == du + dv - 2
        # brute recount from the incidence structure
        recount = sum(2 if a == b == m else 1
                      for a, b in (g.endpoints(x) for x in g.live_edges())
                      if m in (a, b))
        assert recount == g.degree(m)


def test_reattach_work_is_min_degree_side():
    g, (a, b, c, d) = build(4)
    for leaf in (b, c):
        g.add_edge(a, leaf)
    e = g.add_edge(a, d)
    du, dd = g.degree(a), g.degree(d)
    before = g.reattach_work
    g.contract(e)
    assert g.last_contract_work == min(du, dd) - 1  # e itself is dropped first
    assert g.reattach_work - before == g.last_contract_work


def test_small_into_large_total_work_bound():
    # contract a random spanning sequence; total work must be O(m log m)
    for seed in range(10):
        rng = random.Random(seed)
        n = 60
        g, vs = build(n)
        edges = []
        for i in range(1, n):
            edges.append(g.add_edge(rng.randrange(i), i))
        for _ in range(2 * n):
            u, v = rng.randrange(n), rng.randrange(n)
            edges.append(g.add_edge(u, v))
        m = len(edges)
        for e in edges:
            if g.edge_alive(e):
                g.contract(e)
        assert g.reattach_work <= 2 * m * (math.log2(m) + 2)


# ---------------------------------------------------------------------------
# randomized differential test against a naive edge-list model
# ---------------------------------------------------------------------------


class NaiveModel:
    """Edge-list reference: vertices are resolved through a merge map."""

    def __init__(self):
        self.edges = {}  # id -> (u, v) or None
        self.parent = []
        self.alive = []

    def add_vertex(self):
        self.parent.append(-1)
        self.alive.append(True)
        return len(self.parent) - 1

    def add_edge(self, u, v, eid):
        self.edges[eid] = (u, v)

    def resolve(self, v):
        while self.parent[v] >= 0:
            v = self.parent[v]
        return v

    def degree(self, x):
        d = 0
        for pair in self.edges.values():
            if pair is None:
                continue
            u, v = (self.resolve(w) for w in pair)
            if u == x and v == x:
                d += 2
            elif x in (u, v):
                d += 1
        return d

    def contract(self, eid, survivor):
        u, v = (self.resolve(w) for w in self.edges[eid])
        self.edges[eid] = None
        if u == v:
            return u
        loser = u + v - survivor
        self.parent[loser] = survivor
        self.alive[loser] = False
        return survivor

    def neighbor_multiset(self, x):
        out = []
        for pair in self.edges.values():
            if pair is None:
                continue
            u, v = (self.resolve(w) for w in pair)
            if u == x and v == x:
                out += [x, x]
            elif u == x:
                out.append(v)
            elif v == x:
                out.append(u)
        return sorted(out)


@pytest.mark.parametrize("chunk", range(20))
def test_differential_random_interleavings(chunk):
    # 1000 seeds total, 50 per chunk
    for seed in range(chunk * 50, chunk * 50 + 50):
        rng = random.Random(seed)
        g = Multigraph()
        model = NaiveModel()
        live = []
        for _ in range(rng.randint(2, 20)):
            v = g.add_vertex()
            assert model.add_vertex() == v
            live.append(v)
        live_edges = []
        for _ in range(rng.randint(0, 60)):
            u, v = rng.choice(live), rng.choice(live)
            e = g.add_edge(u, v)
            model.add_edge(u, v, e)
            live_edges.append(e)
        for _ in range(rng.randint(0, 25)):
            op = rng.random()
            if op < 0.5 and live_edges:
                e = live_edges.pop(rng.randrange(len(live_edges)))
                if not g.edge_alive(e):
                    continue
                s = g.contract(e)
                assert model.contract(e, s) == s
                live = [v for v in live if g.vertex_alive(v)]
            elif op < 0.8 and len(live) >= 2:
                u, v = rng.choice(live), rng.choice(live)
                e = g.add_edge(u, v)
                model.add_edge(u, v, e)
                live_edges.append(e)
            elif live:
                x = rng.choice(live)
                assert sorted(w for _, w in g.neighbors(x)) == model.neighbor_multiset(x)
        for x in live:
            assert g.degree(x) == model.degree(x)
            assert sorted(w for _, w in g.neighbors(x)) == model.neighbor_multiset(x)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_contract_chain_keeps_edge_count_consistent(data):
    n = data.draw(st.integers(min_value=2, max_value=12))
    g = Multigraph()
    vs = [g.add_vertex() for _ in range(n)]
    pairs = data.draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            min_size=1,
            max_size=30,
        )
    )
    edges = [g.add_edge(vs[u], vs[v]) for u, v in pairs]
    order = data.draw(st.permutations(edges))
    for e in order:
        if g.edge_alive(e):
            g.contract(e)
            # invariant: sum of live degrees == 2 * live edge count
            total = sum(g.degree(v) for v in g.live_vertices())
            assert total == 2 * sum(1 for _ in g.live_edges())
