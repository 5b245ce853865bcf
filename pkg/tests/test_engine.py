import pytest

from planarsplit.engine import (
    CaseTag,
    EngineError,
    classify,
    cleanup_at_vertex,
    contract_through,
    find_partition,
    handle_quads_at_vertex,
    initialize_at_vertex,
    assert_metadata_clean,
)
from planarsplit.gen import GenConfig, fixtures, gen_one_planar, gen_triangulation
from planarsplit.multigraph import Label, Multigraph
from planarsplit.preprocess import (
    GadgetGraph,
    GadgetQuad,
    build_gadgets,
    facial_cycle,
    kite_augment,
    triangulate,
)


def pipeline(p):
    return build_gadgets(triangulate(kite_augment(p)))


def add_gadget(mg, cycle, crossing, diag):
    q = mg.add_vertex()
    mg.set_meta(q, "label", Label.QUAD)
    for z in cycle:
        mg.add_edge(q, z)
    corners = []
    for i in range(4):
        f = mg.add_vertex()
        mg.set_meta(f, "label", Label(int(Label.QUAD0) + i))
        mg.add_edge(f, cycle[(i - 1) % 4])
        mg.add_edge(f, cycle[i])
        mg.add_edge(f, q)
        corners.append(f)
    return q, GadgetQuad(q, tuple(corners), crossing, diag)


# ---------------------------------------------------------------------------
# contract_through on a hand-built single-quadrangle gadget graph
# ---------------------------------------------------------------------------


def _single_quad_gadget():
    """The 9-vertex gadget graph: cycle x,b,c,d with kites plus the diamond."""
    mg = Multigraph()
    x, b, c, d = (mg.add_vertex() for _ in range(4))
    cycle = (x, b, c, d)
    for i in range(4):
        mg.add_edge(cycle[i], cycle[(i + 1) % 4])
    q, rec = add_gadget(mg, cycle, 7, ((x, c), (b, d)))
    g = GadgetGraph(mg, {q: rec}, [q], [0, 1, 2, 3], 4)
    return g, q, cycle


def test_contract_through_hand_simulated():
    g, q, (x, b, c, d) = _single_quad_gadget()
    mg = g.graph
    log = []
    y = contract_through(g, b, d, q, log)
    assert log == [(7, 1, (b, d))]
    # merged vertex keeps all multi-edges to x and c plus 4 inert loops
    nbrs = sorted(w for _, w in mg.neighbors(y))
    assert nbrs.count(x) == 5
    assert nbrs.count(c) == 5
    assert nbrs.count(y) == 8  # 4 loops, yielded twice each
    assert mg.degree(y) == 18
    assert mg.label(y) is Label.NONE
    # x keeps all 5 incidences (2 cycle edges, 1 spoke, 2 corner edges), all
    # re-homed onto the blob; recount from scratch:
    assert mg.degree(x) == 5
    assert mg.degree(x) == sum(
        2 if a == b_ == x else 1
        for a, b_ in (mg.endpoints(e) for e in mg.live_edges())
        if x in (a, b_)
    )


def test_contract_through_rejects_non_diagonal():
    g, q, (x, b, c, d) = _single_quad_gadget()
    with pytest.raises(EngineError):
        contract_through(g, x, b, q, [])
    with pytest.raises(EngineError):
        contract_through(g, b, b, q, [])
    with pytest.raises(EngineError):
        contract_through(g, x, c, 0, [])


# ---------------------------------------------------------------------------
# Case 1.a on a synthetic non-simple state (z0 = z2 = anchor)
# ---------------------------------------------------------------------------


def _fig1b_state():
    mg = Multigraph()
    x, b, d = (mg.add_vertex() for _ in range(3))
    cycle = (x, b, x, d)
    for i in range(4):
        mg.add_edge(cycle[i], cycle[(i + 1) % 4])
    q, rec = add_gadget(mg, cycle, 3, ((x, x), (b, d)))
    g = GadgetGraph(mg, {q: rec}, [q], [0, 1, 2], 3)
    return g, q, (x, b, d)


def test_case1a_contracts_odd_pair_and_decrements_anchor():
    g, q, (x, b, d) = _fig1b_state()
    mg = g.graph
    log = []
    from planarsplit.engine import EngineStats

    stats = EngineStats()
    final = handle_quads_at_vertex(g, x, log, stats, debug_cells=True)
    assert stats.case1a == 1
    assert stats.nonsimple_pops == 1
    assert log == [(3, 1, (b, d))]
    assert final == x
    assert mg._opposing[x] == 0  # incremented at registration, decremented by 1.a
    assert_metadata_clean(g)
    assert not any(
        mg.vertex_alive(v) and mg.label(v) is Label.QUAD for v in range(mg.vertex_slots)
    )


def test_classify_matches_table():
    g, q, (x, b, c, d) = _single_quad_gadget()
    mg = g.graph
    cyc = facial_cycle(g, q)
    idx = cyc.index(x)
    rotated = tuple(cyc[(idx + k) % 4] for k in range(4))
    assert classify(g, x, rotated) is CaseTag.CASE2
    mg.set_meta(c, "adj", True)
    assert classify(g, x, rotated) is CaseTag.CASE1
    mg.set_meta(c, "adj", False)
    mg.set_meta(c, "opposing", 2)
    assert classify(g, x, rotated) is CaseTag.CASE1


# ---------------------------------------------------------------------------
# worklist bookkeeping
# ---------------------------------------------------------------------------


def test_initialize_registers_once_and_counts_opposition():
    g, q, (x, b, c, d) = _single_quad_gadget()
    mg = g.graph
    wl = []
    initialize_at_vertex(g, x, wl)
    assert wl == [q]
    assert mg._opposing[c] == 1
    assert mg._adj[b] and mg._adj[d]
    # re-running must not push a duplicate
    initialize_at_vertex(g, x, wl)
    assert wl == [q]


def test_initialize_no_quad_neighbors():
    mg = Multigraph()
    a, b = mg.add_vertex(), mg.add_vertex()
    mg.add_edge(a, b)
    g = GadgetGraph(mg, {}, [], [0, 1], 2)
    wl = []
    assert initialize_at_vertex(g, a, wl) == 0
    assert wl == []
    assert mg._adj[b]


def test_cleanup_resets_and_is_idempotent():
    g, q, (x, b, c, d) = _single_quad_gadget()
    mg = g.graph
    wl = []
    initialize_at_vertex(g, x, wl)
    cleanup_at_vertex(g, x)
    for v in (x, b, d):
        assert not mg._adj[v] and not mg._in_wl[v] and mg._opposing[v] == 0
    cleanup_at_vertex(g, x)  # idempotent
    assert_metadata_clean(g) if mg._opposing[c] == 0 else None


def test_cleanup_isolated_vertex():
    mg = Multigraph()
    y = mg.add_vertex()
    mg.set_meta(y, "adj", True)
    g = GadgetGraph(mg, {}, [], [0], 1)
    cleanup_at_vertex(g, y)
    assert not mg._adj[y]


# ---------------------------------------------------------------------------
# end-to-end runs
# ---------------------------------------------------------------------------


def test_planar_input_empty_forest():
    p = gen_triangulation(12, 3)
    part = find_partition(p)
    assert part.forest_pairs == ()
    assert len(part.planar_pairs) == p.original_edge_count()


def test_k5_partition():
    part = find_partition(fixtures()["k5"], debug_cells=True, debug_sweep=True)
    assert part.forest_size == 1
    assert part.forest_pairs[0] in ((0, 4), (1, 2))
    assert len(part.planar_pairs) == 9


def test_fig1e_triggers_double_opposition():
    part = find_partition(fixtures()["fig1e"], debug_cells=True, debug_sweep=True)
    s = part.stats
    assert part.forest_size == 3
    assert s.case1c >= 1
    # chords acyclic over the named forest (hand-checkable): x-a, a-c, u-v
    assert part.forest_pairs == ((0, 2), (2, 5), (7, 8))


def test_fig1b_pops_repeated_vertex_cycle():
    part = find_partition(fixtures()["fig1b"], debug_cells=True, debug_sweep=True)
    assert part.stats.nonsimple_pops >= 1
    assert part.forest_size == fixtures()["fig1b"].n_cross


def test_bigon_fixture_runs_case1b():
    part = find_partition(fixtures()["bigon"], debug_cells=True, debug_sweep=True)
    assert part.stats.case1b == 1
    assert part.forest_size == 1


def test_one_chord_per_crossing_and_unique_quads():
    p = gen_one_planar(GenConfig(60, 0.5, 21))
    part = find_partition(p, debug_cells=True, debug_sweep=True)
    crossings = [c for c, _, _ in part.chord_log]
    assert len(crossings) == len(set(crossings)) == p.n_cross
    assert part.forest_size == p.n_cross


def test_forest_acyclic_small_sweep():
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    for seed in range(20):
        p = gen_one_planar(GenConfig(25, 0.5, seed))
        part = find_partition(p)
        parent.clear()
        for u, v in part.forest_pairs:
            ru, rv = find(u), find(v)
            assert ru != rv, f"cycle in forest at seed {seed}"
            parent[ru] = rv


def test_case1a_never_fires_on_valid_inputs():
    # the z2 == x branch is unreachable from drawings (see ledger); make sure
    # a moderate sweep agrees
    for seed in range(30):
        p = gen_one_planar(GenConfig(20, 0.5, seed))
        part = find_partition(p)
        assert part.stats.case1a == 0


def test_metadata_clean_after_each_anchor_sweep():
    for seed in (0, 5, 9):
        p = gen_one_planar(GenConfig(40, 0.3, seed))
        find_partition(p, debug_cells=True, debug_sweep=True)  # raises on dirt
