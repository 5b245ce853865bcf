"""Quadrangle-contraction engine: one chord per crossing, forming a forest.

Anchored at a vertex x, every quadrangle incident to x is destroyed by
contracting one of its opposing pairs through the face.  Per-vertex scratch
metadata (adj / in_worklist / opposing) makes the case decision O(1): the
pair ⟨z1, z3⟩ is contracted exactly when z2 coincides with x, is adjacent to
x, or opposes x in a second registered quadrangle; otherwise x and z2 merge.
The contracted diagonal's original edge is recorded for the forest side of
the partition.
"""

from __future__ import annotations

import gc
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum

from .drawing import Planarization
from .multigraph import Label
from .preprocess import (
    GadgetGraph,
    _augment_links,
    build_gadgets,
    facial_cycle,
    triangulate,
)


@contextmanager
def _gc_paused():
    """Pause the cyclic collector during allocation-heavy graph phases.

    The data built here is acyclic (flat int lists), so collection passes
    only add quadratic-feeling overhead while the heap grows.
    """
    was_enabled = gc.isenabled()
    if was_enabled:
        gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


_QUAD = int(Label.QUAD)
_QUAD0 = int(Label.QUAD0)
_NONE = int(Label.NONE)


class EngineError(RuntimeError):
    """Internal invariant violation while contracting quadrangles."""


class CaseTag(Enum):
    CASE1 = 1
    CASE2 = 2


@dataclass
class EngineStats:
    case1a: int = 0
    case1b: int = 0
    case1c: int = 0
    case2: int = 0
    nonsimple_pops: int = 0
    anchors: int = 0
    worklist_pushes: int = 0
    contractions: int = 0
    reattach_work: int = 0


class PlanarForestPartition:
    """Edge partition of the input graph: a planar part and a forest.

    Pair tuples are materialized lazily from the edge table; everything else
    is precomputed.
    """

    __slots__ = (
        "forest_ids",
        "planar_ids",
        "chord_log",
        "stats",
        "_edges",
        "_forest_pairs",
        "_planar_pairs",
    )

    def __init__(
        self,
        forest_ids: frozenset[int],
        planar_ids: frozenset[int],
        chord_log: tuple,
        stats: EngineStats | None = None,
        edges=None,
        forest_pairs: tuple | None = None,
        planar_pairs: tuple | None = None,
    ) -> None:
        self.forest_ids = forest_ids
        self.planar_ids = planar_ids
        self.chord_log = chord_log
        self.stats = stats if stats is not None else EngineStats()
        self._edges = edges
        self._forest_pairs = forest_pairs
        self._planar_pairs = planar_pairs

    def _pairs(self, ids) -> tuple[tuple[int, int], ...]:
        edges = self._edges
        return tuple(sorted((edges[i].u, edges[i].v) for i in ids))

    @property
    def forest_pairs(self) -> tuple[tuple[int, int], ...]:
        if self._forest_pairs is None:
            self._forest_pairs = self._pairs(self.forest_ids)
        return self._forest_pairs

    @property
    def planar_pairs(self) -> tuple[tuple[int, int], ...]:
        if self._planar_pairs is None:
            self._planar_pairs = self._pairs(self.planar_ids)
        return self._planar_pairs

    @property
    def forest_size(self) -> int:
        return len(self.forest_ids)


def classify(g: GadgetGraph, x: int, cycle: tuple[int, int, int, int]) -> CaseTag:
    """Decide which opposing pair of the quadrangle gets contracted.

    ``cycle`` must already be rotated so that cycle[0] == x.
    """
    z2 = cycle[2]
    mg = g.graph
    if z2 == x or mg._adj[z2] or mg._opposing[z2] >= 2:
        return CaseTag.CASE1
    return CaseTag.CASE2


def contract_through(
    g: GadgetGraph,
    u: int,
    v: int,
    f: int,
    chord_log: list,
    cycle: tuple[int, int, int, int] | None = None,
) -> int:
    """Contract opposing vertices u, v through quadrangle vertex f.

    Records the original crossed edge realized by the {u, v} diagonal, then
    collapses f's whole gadget together with u and v into one vertex, whose
    id is returned (labels removed).  Loops created along the way stay on the
    destroyed gadget and are inert.
    """
    mg = g.graph
    if mg._label[f] != _QUAD:
        raise EngineError(f"vertex {f} is not a quadrangle vertex")
    if u == v:
        raise EngineError(f"cannot contract {u} with itself through {f}")
    if cycle is None:
        cycle = facial_cycle(g, f)
    pair = {u, v}
    if pair == {cycle[0], cycle[2]}:
        parity = 0
    elif pair == {cycle[1], cycle[3]}:
        parity = 1
    else:
        raise EngineError(
            f"{{{u}, {v}}} is not an opposing pair of quadrangle {f} "
            f"(cycle {cycle})"
        )
    rec = g.quads[f]
    chord_log.append((rec.crossing, parity, rec.diag_pairs[parity]))

    eu = mg._eu
    ev = mg._ev
    label = mg._label
    targets = []
    for e in mg._inc[f]:
        if eu[e] < 0:
            continue
        w = eu[e] + ev[e] - f
        if w == u or w == v or label[w] >= _QUAD0:
            targets.append(e)
    if len(targets) != 6:
        raise EngineError(
            f"quadrangle {f}: expected 6 gadget edges to contract, "
            f"found {len(targets)}"
        )
    y = f
    for e in targets:
        if eu[e] < 0:
            continue
        y = mg.contract(e)
    label[y] = _NONE
    return y


def initialize_at_vertex(g: GadgetGraph, y: int, worklist: list[int]) -> int:
    """Mark y's neighbors adjacent and enqueue its unseen quadrangles.

    Each newly registered quadrangle's opposite-of-y vertex gets its opposing
    counter bumped.  Returns the number of quadrangles pushed.
    """
    mg = g.graph
    eu = mg._eu
    ev = mg._ev
    adj = mg._adj
    in_wl = mg._in_wl
    opposing = mg._opposing
    label = mg._label
    pushed = 0
    for e in mg._inc[y]:
        if eu[e] < 0:
            continue
        v = eu[e] + ev[e] - y
        adj[v] = True
        if label[v] == _QUAD and not in_wl[v]:
            in_wl[v] = True
            worklist.append(v)
            pushed += 1
            cyc = facial_cycle(g, v)
            idx = cyc.index(y)
            opposing[cyc[(idx + 2) % 4]] += 1
    return pushed


def cleanup_at_vertex(g: GadgetGraph, y: int) -> None:
    """Reset scratch metadata on y and all its neighbors."""
    mg = g.graph
    eu = mg._eu
    ev = mg._ev
    adj = mg._adj
    in_wl = mg._in_wl
    opposing = mg._opposing
    for e in mg._inc[y]:
        if eu[e] < 0:
            continue
        v = eu[e] + ev[e] - y
        adj[v] = False
        in_wl[v] = False
        opposing[v] = 0
    adj[y] = False
    in_wl[y] = False
    opposing[y] = 0


def handle_quads_at_vertex(
    g: GadgetGraph,
    x: int,
    chord_log: list,
    stats: EngineStats | None = None,
    debug_cells: bool = False,
) -> int:
    """Destroy every quadrangle incident to x (Case 1/Case 2 worklist loop).

    Returns the final merged anchor vertex.  Afterwards no quadrangle is
    incident to it and all scratch metadata is clean again.
    """
    mg = g.graph
    adj = mg._adj
    opposing = mg._opposing
    worklist: list[int] = []
    initialize_at_vertex(g, x, worklist)
    if stats is not None:
        stats.worklist_pushes += len(worklist)
    head = 0
    while head < len(worklist):
        f = worklist[head]
        head += 1
        cyc = facial_cycle(g, f)
        idx = cyc.index(x)
        z1 = cyc[(idx + 1) % 4]
        z2 = cyc[(idx + 2) % 4]
        z3 = cyc[(idx + 3) % 4]
        if stats is not None and (z1 == z3 or z2 == x):
            stats.nonsimple_pops += 1
        if z2 == x or adj[z2] or opposing[z2] >= 2:
            if stats is not None:
                if z2 == x:
                    stats.case1a += 1
                elif adj[z2]:
                    stats.case1b += 1
                else:
                    stats.case1c += 1
            if debug_cells:
                _assert_case1_cells(g, x, z1, z2, z3, f)
            o1 = opposing[z1]
            o3 = opposing[z3]
            v = contract_through(g, z1, z3, f, chord_log, cycle=cyc)
            adj[v] = True
            opposing[v] = o1 + o3
            if debug_cells and opposing[z2] <= 0:
                raise EngineError(
                    f"opposing counter of {z2} would go negative at {f}"
                )
            opposing[z2] -= 1
        else:
            if stats is not None:
                stats.case2 += 1
            if debug_cells:
                _assert_case2_cells(g, x, z2)
            before = len(worklist)
            initialize_at_vertex(g, z2, worklist)
            if stats is not None:
                stats.worklist_pushes += len(worklist) - before
            x = contract_through(g, x, z2, f, chord_log, cycle=cyc)
    cleanup_at_vertex(g, x)
    return x


def _edge_between(g: GadgetGraph, a: int, b: int) -> bool:
    mg = g.graph
    eu = mg._eu
    ev = mg._ev
    inc_a = mg._inc[a]
    inc_b = mg._inc[b]
    side, other = (inc_a, b) if len(inc_a) <= len(inc_b) else (inc_b, a)
    base = a + b - other
    for e in side:
        if eu[e] >= 0 and eu[e] + ev[e] - base == other:
            return True
    return False


def _coopposing_quads(g: GadgetGraph, a: int, b: int, skip: int) -> list[int]:
    """Live quadrangles other than ``skip`` in which a and b oppose."""
    mg = g.graph
    eu = mg._eu
    ev = mg._ev
    label = mg._label
    inc_a = mg._inc[a]
    inc_b = mg._inc[b]
    side, base = (inc_a, a) if len(inc_a) <= len(inc_b) else (inc_b, b)
    out = []
    for e in side:
        if eu[e] < 0:
            continue
        w = eu[e] + ev[e] - base
        if w == skip or label[w] != _QUAD or w in out:
            continue
        cyc = facial_cycle(g, w)
        if {cyc[0], cyc[2]} == {a, b} or {cyc[1], cyc[3]} == {a, b}:
            out.append(w)
    return out


def _assert_case1_cells(g, x, z1, z2, z3, f) -> None:
    # Table rows marked impossible for any Case-1 column
    if z1 == z3:
        raise EngineError(
            f"impossible cell at {f}: z1 == z3 == {z1} while Case 1 applies"
        )
    if _edge_between(g, z1, z3):
        raise EngineError(
            f"impossible cell at {f}: z1={z1} and z3={z3} are adjacent"
        )
    for other in _coopposing_quads(g, z1, z3, f):
        cyc = facial_cycle(g, other)
        if {cyc[0], cyc[2]} != {x, z2} and {cyc[1], cyc[3]} != {x, z2}:
            raise EngineError(
                f"impossible cell at {f}: z1,z3 co-oppose in {other} "
                f"which does not also carry the x,z2 pair"
            )


def _assert_case2_cells(g, x, z2) -> None:
    mg = g.graph
    if _edge_between(g, x, z2):
        raise EngineError(
            f"adjacency flag out of sync: {x} and {z2} share an edge"
        )
    if mg._opposing[z2] != 1:
        raise EngineError(
            f"Case 2 with opposing[{z2}] == {mg._opposing[z2]} (expected 1)"
        )


def assert_metadata_clean(g: GadgetGraph) -> None:
    """Debug sweep: every live vertex must have pristine scratch metadata."""
    mg = g.graph
    for v in mg.live_vertices():
        if mg._adj[v] or mg._in_wl[v] or mg._opposing[v]:
            raise EngineError(
                f"stale metadata on vertex {v}: adj={mg._adj[v]} "
                f"in_worklist={mg._in_wl[v]} opposing={mg._opposing[v]}"
            )


def find_partition(
    p: Planarization,
    debug_cells: bool = False,
    debug_sweep: bool = False,
    timings: dict | None = None,
) -> PlanarForestPartition:
    """Compute the planar + forest edge partition of a validated drawing.

    Preprocesses the drawing, then repeatedly anchors at a neighbor of the
    lowest surviving quadrangle vertex and destroys all quadrangles around
    it.  The recorded chords (one original crossed edge per crossing) form
    the forest; everything else is the planar part.  Pass a dict as
    ``timings`` to receive per-phase wall times.
    """
    from time import perf_counter

    with _gc_paused():
        t0 = perf_counter()
        edges, pairs = p.original_edges()
        skel = triangulate(_augment_links(p))
        g = build_gadgets(skel)
        del skel  # quad records and link arrays are dead weight from here on
        t1 = perf_counter()
    if timings is not None:
        timings["augment"] = t1 - t0
    mg = g.graph
    label = mg._label
    stats = EngineStats()
    chord_log: list[tuple[int, int, tuple[int, int]]] = []
    qi = 0
    order = g.quad_order
    with _gc_paused():
        while qi < len(order):
            f = order[qi]
            # a destroyed quadrangle's id may live on as the merged vertex,
            # so survivorship is judged by the label, which never comes back
            if not mg.vertex_alive(f) or label[f] != _QUAD:
                qi += 1
                continue
            anchor = min(w for _, w in mg.neighbors(f) if label[w] == _NONE)
            x = handle_quads_at_vertex(g, anchor, chord_log, stats, debug_cells)
            stats.anchors += 1
            for _, w in mg.neighbors(x):
                if label[w] == _QUAD:
                    raise EngineError(
                        f"quadrangle {w} survived anchor {x}'s pass"
                    )
            if debug_sweep:
                assert_metadata_clean(g)
    stats.contractions = mg.contraction_count
    stats.reattach_work = mg.reattach_work
    if timings is not None:
        timings["engine"] = perf_counter() - t1

    # endpoints in `edges` are normalized (u < v); key pairs as packed ints
    npack = p.n_vertices
    by_pair = {}
    for e in edges:
        by_pair[e.u * npack + e.v] = e.index
    forest_ids = set()
    for crossing, parity, pair in chord_log:
        a, b = pair
        if a > b:
            a, b = b, a
        idx = by_pair.get(a * npack + b, -1)
        if idx < 0:
            raise EngineError(f"recorded chord {pair} is not an input edge")
        forest_ids.add(idx)
    planar_ids = frozenset(range(len(edges))) - forest_ids
    return PlanarForestPartition(
        forest_ids=frozenset(forest_ids),
        planar_ids=planar_ids,
        chord_log=tuple(chord_log),
        stats=stats,
        edges=edges,
    )
