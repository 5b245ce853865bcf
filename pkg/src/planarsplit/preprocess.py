"""Build the gadget graph the partition engine runs on.

Pipeline: augment the drawing so every crossing sits inside its kite
(`kite_augment`), drop the crossing pairs and triangulate every leftover
non-quadrangle face (`triangulate`), then stellate each quadrangle with a
labeled diamond gadget (`build_gadgets`).  After preprocessing, the engine
works purely on the multigraph: `facial_cycle` recovers a quadrangle's
boundary tuple from the gadget labels alone, so no embedding is consulted
once contractions begin.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from .drawing import Planarization
from .multigraph import Label, Multigraph


class PreprocessError(RuntimeError):
    """The drawing violates an invariant the pipeline relies on."""


_QUAD_INT = int(Label.QUAD)


@dataclass
class QuadRecord:
    """A quadrangle face of the skeleton and its crossing-pair payload."""

    crossing: int  # crossing vertex id in the input drawing
    cycle: tuple[int, int, int, int]  # boundary vertices (multigraph ids)
    # original crossed edges as plan-vertex pairs, keyed by diagonal parity:
    # diag_pairs[0] joins cycle[0]/cycle[2], diag_pairs[1] joins cycle[1]/[3]
    diag_pairs: tuple[tuple[int, int], tuple[int, int]]
    walk: tuple[int, int, int, int]  # face walk (multigraph half-edges)


@dataclass
class Skeleton:
    """Crossing-free triangulated skeleton plus its quadrangle records.

    The rotation system over multigraph half-edges is kept as linked cyclic
    lists (``rot_nxt``/``rot_prv`` per half-edge, ``rot_first`` per vertex)
    purely so the gadget insertion can stay embedded for the Euler check.
    """

    graph: Multigraph
    rot_nxt: list[int]
    rot_prv: list[int]
    rot_first: list[int]
    quads: list[QuadRecord]
    plan_of_mg: list[int]  # multigraph vertex id -> drawing vertex id
    mg_of_plan: list[int]  # drawing vertex id -> multigraph id (-1: crossing)
    n_real: int
    chords_added: int


@dataclass
class GadgetQuad:
    quad_vertex: int
    corners: tuple[int, int, int, int]  # labeled QUAD0..QUAD3
    crossing: int
    diag_pairs: tuple[tuple[int, int], tuple[int, int]]


@dataclass
class GadgetGraph:
    """Skeleton with one labeled diamond gadget per quadrangle."""

    graph: Multigraph
    quads: dict[int, GadgetQuad]  # quad vertex id -> record
    quad_order: list[int]  # quad vertex ids, ascending
    plan_of_mg: list[int]
    n_real: int


# ---------------------------------------------------------------------------
# kite augmentation
# ---------------------------------------------------------------------------


class _AugmentedLinks:
    """Kite-augmented drawing as linked rotations (internal fused path)."""

    __slots__ = ("n_vertices", "eu", "ev", "nxt", "prv", "first", "crossings",
                 "cross_rot")

    def __init__(self, n_vertices, eu, ev, nxt, prv, first, crossings, cross_rot):
        self.n_vertices = n_vertices
        self.eu = eu
        self.ev = ev
        self.nxt = nxt
        self.prv = prv
        self.first = first
        self.crossings = crossings
        self.cross_rot = cross_rot  # crossing vertex -> its 4 half-edges


def _augment_links(p: Planarization) -> _AugmentedLinks:
    eu = array("l", p.eu)
    ev = array("l", p.ev)
    # linked cyclic rotations: O(1) insertion
    nxt = array("l", [-1]) * (2 * len(eu))
    prv = array("l", [-1]) * (2 * len(eu))
    first = array("l", [-1]) * p.n_vertices
    for v, r in enumerate(p.rot):
        if not r:
            continue
        first[v] = r[0]
        k = len(r)
        for i, h in enumerate(r):
            nxt[h] = r[(i + 1) % k]
            prv[h] = r[(i - 1) % k]

    cross_rot = {x: tuple(p.rot[x]) for x in p.crossings}
    for x in sorted(p.crossings):
        spokes = cross_rot[x]
        for i in range(4):
            ei = spokes[i]
            ej = spokes[(i + 1) & 3]
            a = ev[ei >> 1] if ei & 1 == 0 else eu[ei >> 1]
            b = ev[ej >> 1] if ej & 1 == 0 else eu[ej >> 1]
            if a == b:
                raise PreprocessError(
                    f"crossing {x}: corner endpoints coincide (invalid drawing)"
                )
            w = nxt[ej ^ 1]  # next half-edge in the face after ej
            hw = ev[w >> 1] if w & 1 == 0 else eu[w >> 1]
            if hw == a and nxt[w ^ 1] == (ei ^ 1):
                continue  # corner face already the triangle (a, x, b)
            e = len(eu)
            eu.append(a)
            ev.append(b)
            nxt.extend((-1, -1))
            prv.extend((-1, -1))
            # close the corner: a's half right before twin(ei), b's right
            # after twin(ej); this splits the corner face into the triangle
            # (a, x, b) and the remainder
            ha, hb = 2 * e, 2 * e + 1
            ref = ei ^ 1
            q = prv[ref]
            nxt[q] = ha
            prv[ha] = q
            nxt[ha] = ref
            prv[ref] = ha
            ref = ej ^ 1
            q = nxt[ref]
            nxt[ref] = hb
            prv[hb] = ref
            nxt[hb] = q
            prv[q] = hb
    return _AugmentedLinks(
        p.n_vertices, eu, ev, nxt, prv, first, p.crossings, cross_rot
    )


def kite_augment(p: Planarization, validate: bool = True) -> Planarization:
    """Ensure every crossing corner is closed off by a boundary edge.

    For each crossing with rotation ⟨z0, z1, z2, z3⟩, each corner face
    (z_i, crossing, z_{i+1}) is cut down to a triangle by inserting the edge
    z_i z_{i+1} inside it when missing.  Corners whose face is already that
    triangle are left alone, so an edge is only duplicated when two different
    corner regions each need their own copy (multigraph output).

    The result is correct by construction; ``validate`` re-checks it anyway.
    The spherical Euler check runs again on the finished gadget graph either
    way, so internal callers skip this one.
    """
    links = _augment_links(p)
    nxt = links.nxt
    rot: list[list[int]] = []
    for v in range(p.n_vertices):
        h0 = links.first[v]
        if h0 < 0:
            rot.append([])
            continue
        row = [h0]
        h = nxt[h0]
        while h != h0:
            row.append(h)
            h = nxt[h]
        rot.append(row)
    return Planarization(
        rot, links.eu, links.ev, set(p.crossings), strict=False,
        validate=validate,
    )


# ---------------------------------------------------------------------------
# skeleton and triangulation
# ---------------------------------------------------------------------------


def triangulate(p: Planarization | _AugmentedLinks) -> Skeleton:
    """Drop crossing pairs and chord every non-quadrangle face to triangles.

    Requires a kite-augmented drawing.  The quadrangle left behind by each
    crossing is identified and recorded (with its crossing pair keyed by
    diagonal); every other face of degree >= 4 is fanned into triangles by
    greedy distance-2 chords.
    """
    if isinstance(p, Planarization):
        links = _AugmentedLinks(
            p.n_vertices,
            array("l", p.eu),
            array("l", p.ev),
            None, None, None,
            p.crossings,
            {x: tuple(p.rot[x]) for x in p.crossings},
        )
        n_edges = p.n_edges
        plan_rot = p.rot

        def vertex_rot(v: int):
            return plan_rot[v]

    else:
        links = p
        n_edges = len(links.eu)
        l_first = links.first
        l_nxt = links.nxt

        def vertex_rot(v: int):
            h0 = l_first[v]
            if h0 < 0:
                return ()
            row = [h0]
            h = l_nxt[h0]
            while h != h0:
                row.append(h)
                h = l_nxt[h]
            return row

    crossings = links.crossings
    n_vertices = links.n_vertices
    p_eu = links.eu
    p_ev = links.ev
    is_cross = bytearray(n_vertices)
    for x in crossings:
        is_cross[x] = 1
    plan_of_mg: list[int] = []
    mg_of_plan: list[int] = [-1] * n_vertices
    mg = Multigraph()
    for v in range(n_vertices):
        if not is_cross[v]:
            mg_of_plan[v] = mg.add_vertex()
            plan_of_mg.append(v)
    n_real = len(plan_of_mg)

    # skeleton edges: every drawing edge not incident to a crossing
    me_of_pe = array("l", [-1]) * n_edges
    for e in range(n_edges):
        u, v = p_eu[e], p_ev[e]
        if is_cross[u] or is_cross[v]:
            continue
        me_of_pe[e] = mg.add_edge(mg_of_plan[u], mg_of_plan[v])

    nxt = array("l", [-1]) * (2 * mg.edge_slots)
    prv = array("l", [-1]) * (2 * mg.edge_slots)
    first = array("l", [-1]) * n_real
    for v in range(n_vertices):
        if is_cross[v]:
            continue
        row = []
        for h in vertex_rot(v):
            me = me_of_pe[h >> 1]
            if me >= 0:
                row.append(2 * me + (h & 1))
        if row:
            mv = mg_of_plan[v]
            first[mv] = row[0]
            k = len(row)
            for i, h in enumerate(row):
                nxt[h] = row[(i + 1) % k]
                prv[h] = row[(i - 1) % k]

    eu = mg._eu
    ev = mg._ev

    def tail(h: int) -> int:
        return eu[h >> 1] if h & 1 == 0 else ev[h >> 1]

    # face scan (next half-edge in a face walk is nxt[h ^ 1]); only degrees
    # are kept, plus an anchor for each face that still needs chording
    face_of = array("l", [-1]) * (2 * mg.edge_slots)
    fdeg = array("l")
    big: list[int] = []  # anchor half-edge of each face of degree >= 4
    n_faces = 0
    for h0 in range(2 * mg.edge_slots):
        if face_of[h0] >= 0 or nxt[h0] < 0:
            continue
        fid = n_faces
        n_faces += 1
        d = 0
        h = h0
        while face_of[h] < 0:
            face_of[h] = fid
            d += 1
            h = nxt[h ^ 1]
        fdeg.append(d)
        if d >= 4:
            big.append(h0)

    # locate each crossing's quadrangle via its corner-0 kite half-edge
    quad_face: dict[int, int] = {}  # face id -> crossing
    seeds: list[tuple[int, int]] = []  # (crossing, anchor half-edge in mg)
    for x in sorted(crossings):
        spokes = links.cross_rot[x]
        if isinstance(p, Planarization):
            w = p.next_in_face(spokes[1])  # third side of corner-0's triangle
        else:
            w = links.nxt[spokes[1] ^ 1]
        me = me_of_pe[w >> 1]
        if me < 0:
            raise PreprocessError(
                f"crossing {x}: kite edge missing (drawing not augmented?)"
            )
        mh = 2 * me + (w & 1)
        fid = face_of[mh]
        if fdeg[fid] != 4:
            raise PreprocessError(
                f"crossing {x}: residual face has degree {fdeg[fid]}, "
                "expected a quadrangle"
            )
        if fid in quad_face:
            raise PreprocessError(
                f"crossings {quad_face[fid]} and {x} map to one face"
            )
        quad_face[fid] = x
        seeds.append((x, mh))

    def insert_before(ref: int, h: int) -> None:
        q = prv[ref]
        nxt[q] = h
        prv[h] = q
        nxt[h] = ref
        prv[ref] = h

    # chord every non-quadrangle face down to triangles
    chords = 0
    for h0 in big:
        if face_of[h0] in quad_face:
            continue
        cur = [h0]
        h = nxt[h0 ^ 1]
        while h != h0:
            cur.append(h)
            h = nxt[h ^ 1]
        while len(cur) > 3:
            d = len(cur)
            corners = [tail(h) for h in cur]
            pick = -1
            for i in range(d):
                if corners[i] != corners[(i + 2) % d]:
                    pick = i
                    break
            if pick < 0:
                raise PreprocessError(
                    f"face of degree {d} has no distance-2 chord with "
                    f"distinct endpoints: corners {corners}"
                )
            cur = cur[pick:] + cur[:pick]
            vi = tail(cur[0])
            vk = tail(cur[2])
            me = mg.add_edge(vi, vk)
            nxt.extend((-1, -1))
            prv.extend((-1, -1))
            c0, c1 = 2 * me, 2 * me + 1
            insert_before(cur[0], c0)
            insert_before(cur[2], c1)
            cur = [c0] + cur[2:]
            chords += 1

    # quadrangle records, anchored at the corner-0 kite half-edge
    quads: list[QuadRecord] = []
    for x, mh in seeds:
        walk = [mh]
        h = nxt[mh ^ 1]
        while h != mh:
            walk.append(h)
            h = nxt[h ^ 1]
        cycle = tuple(tail(h) for h in walk)
        r = links.cross_rot[x]
        pa = (
            p_ev[r[0] >> 1] if r[0] & 1 == 0 else p_eu[r[0] >> 1],
            p_ev[r[2] >> 1] if r[2] & 1 == 0 else p_eu[r[2] >> 1],
        )
        pb = (
            p_ev[r[1] >> 1] if r[1] & 1 == 0 else p_eu[r[1] >> 1],
            p_ev[r[3] >> 1] if r[3] & 1 == 0 else p_eu[r[3] >> 1],
        )
        set02 = {plan_of_mg[cycle[0]], plan_of_mg[cycle[2]]}
        if set02 == set(pa):
            diag = (pa, pb)
        elif set02 == set(pb):
            diag = (pb, pa)
        else:
            raise PreprocessError(
                f"crossing {x}: quadrangle corners {cycle} do not match "
                "the crossing pair"
            )
        quads.append(QuadRecord(x, cycle, diag, tuple(walk)))

    return Skeleton(
        mg, nxt, prv, first, quads, plan_of_mg, mg_of_plan, n_real, chords
    )


# ---------------------------------------------------------------------------
# diamond gadgets
# ---------------------------------------------------------------------------


def build_gadgets(s: Skeleton, check: bool = True) -> GadgetGraph:
    """Insert one diamond gadget per quadrangle of the skeleton.

    Each quadrangle gains a QUAD-labeled stellation vertex plus four corner
    vertices labeled QUAD0..QUAD3, where corner i is adjacent to exactly
    {z_{i-1}, z_i, quad}.  With ``check`` the finished graph is verified to
    be loopless and spherical (V - E + F = 2) via the rotation system.
    """
    mg = s.graph
    nxt = s.rot_nxt
    prv = s.rot_prv
    quad_lbl = int(Label.QUAD)
    corner_lbls = (3, 4, 5, 2)  # label for the corner placed in triangle T_k
    eu = mg._eu
    ev = mg._ev
    inc = mg._inc
    deg = mg._deg

    def stellate(walk, center):
        # inlined fast path of _stellate (endpoints known alive)
        inc_c = inc[center]
        spokes = []
        for h in walk:
            vk = eu[h >> 1] if h & 1 == 0 else ev[h >> 1]
            e = len(eu)
            eu.append(vk)
            ev.append(center)
            inc[vk].append(e)
            inc_c.append(e)
            deg[vk] += 1
            nxt.extend((-1, -1))
            prv.extend((-1, -1))
            sp = 2 * e
            spokes.append(sp)
            pq = prv[h]
            nxt[pq] = sp
            prv[sp] = pq
            nxt[sp] = h
            prv[h] = sp
        k = len(spokes)
        deg[center] += k
        ring = [sp ^ 1 for sp in reversed(spokes)]
        for i in range(k):
            h = ring[i]
            nxt[h] = ring[(i + 1) % k]
            prv[h] = ring[(i - 1) % k]
        return spokes

    label = mg._label  # grows in place; binding stays valid
    quads: dict[int, GadgetQuad] = {}
    order: list[int] = []
    for rec in s.quads:
        q = mg.add_vertex()
        label[q] = quad_lbl
        walk = rec.walk
        spokes = stellate(walk, q)
        # the quad face splits into triangles T_k = (z_k, z_{k+1}, q) with
        # walk [h_k, s_{k+1}, twin(s_k)]; corner vertex QUAD_{k+1} goes in T_k
        corners: list[int] = [0, 0, 0, 0]
        for k in range(4):
            fv = mg.add_vertex()
            label[fv] = corner_lbls[k]
            corners[(k + 1) & 3] = fv
            stellate((walk[k], spokes[(k + 1) & 3], spokes[k] ^ 1), fv)
        quads[q] = GadgetQuad(q, tuple(corners), rec.crossing, rec.diag_pairs)
        order.append(q)

    if check:
        _check_spherical(mg, nxt)
    return GadgetGraph(mg, quads, order, s.plan_of_mg, s.n_real)


def _check_spherical(mg: Multigraph, nxt: list[int]) -> None:
    eu = mg._eu
    n_edges = 0
    for e in mg.live_edges():
        if eu[e] == mg._ev[e]:
            raise PreprocessError(f"gadget graph has a loop (edge {e})")
        n_edges += 1
    seen = bytearray(len(nxt))
    faces = 0
    for h0 in range(len(nxt)):
        if seen[h0] or nxt[h0] < 0:
            continue
        faces += 1
        h = h0
        while not seen[h]:
            seen[h] = 1
            h = nxt[h ^ 1]
    covered = sum(seen)
    n_vertices = sum(1 for _ in mg.live_vertices())
    if covered != 2 * n_edges or n_vertices - n_edges + faces != 2:
        raise PreprocessError(
            f"gadget graph fails the Euler check: V-E+F = "
            f"{n_vertices}-{n_edges}+{faces}"
        )


# ---------------------------------------------------------------------------
# facial-cycle reconstruction
# ---------------------------------------------------------------------------


def facial_cycle(g: GadgetGraph, f: int) -> tuple[int, int, int, int]:
    """Recover ⟨z0, z1, z2, z3⟩ for quadrangle vertex ``f`` from its gadget.

    Works in O(1): the corner vertices are found among neighbors(f) by their
    labels; z_i is the shared neighbor of corners i and i+1 besides f.  When
    the quadrangle is non-simple (one opposing pair merged), exactly two of
    the intersections have size 3 and the repeated vertex is resolved by
    subtracting the opposite intersection.
    """
    mg = g.graph
    label = mg._label
    if label[f] != _QUAD_INT or not mg._alive[f]:
        raise PreprocessError(f"vertex {f} is not a quadrangle vertex")
    eu = mg._eu
    ev = mg._ev
    inc = mg._inc
    c0 = c1 = c2 = c3 = -1
    for e in inc[f]:
        a = eu[e]
        if a < 0:
            continue
        w = a + ev[e] - f
        lbl = label[w]
        if lbl == 2:
            c0 = w
        elif lbl == 3:
            c1 = w
        elif lbl == 4:
            c2 = w
        elif lbl == 5:
            c3 = w
    if c0 < 0 or c1 < 0 or c2 < 0 or c3 < 0:
        raise PreprocessError(f"quadrangle {f}: corrupted gadget corners")
    # neighbor vertex sets of the degree-3 corners (deduplicated by hand)
    nbr = []
    for c in (c0, c1, c2, c3):
        x = y = zz = -1
        for e in inc[c]:
            a = eu[e]
            if a < 0:
                continue
            w = a + ev[e] - c
            if w == x or w == y or w == zz:
                continue
            if x < 0:
                x = w
            elif y < 0:
                y = w
            else:
                zz = w
        nbr.append((x, y, zz))
    z = [-1, -1, -1, -1]
    inter = []
    for i in range(4):
        a = nbr[i]
        b = nbr[(i + 1) & 3]
        common = [w for w in a if w >= 0 and (w == b[0] or w == b[1] or w == b[2])]
        inter.append(common)
        if len(common) == 2:
            z[i] = common[0] + common[1] - f
    for i in range(4):
        common = inter[i]
        if len(common) == 3:
            other = inter[(i + 2) & 3]
            rest = [w for w in common if w not in other]
            if len(rest) != 1:
                raise PreprocessError(
                    f"quadrangle {f}: ambiguous corner intersection {common}"
                )
            z[i] = rest[0]
    if z[0] < 0 or z[1] < 0 or z[2] < 0 or z[3] < 0:
        raise PreprocessError(f"quadrangle {f}: corrupted gadget (cycle {z})")
    return (z[0], z[1], z[2], z[3])
