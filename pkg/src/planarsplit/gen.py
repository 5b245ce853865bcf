"""Deterministic instance generators and named fixtures.

Randomness comes from a pinned SplitMix64 stream so identical configs give
byte-identical drawings on every platform.  Triangulations grow by
stellating uniformly random faces; crossings are then inserted by picking an
edge whose two triangular faces have distinct, non-adjacent, real apexes and
drawing the apex-apex edge across it.
"""

from __future__ import annotations

import gc
from array import array
from contextlib import contextmanager
from dataclasses import dataclass

from .drawing import Planarization, parse_drawing

_MASK = (1 << 64) - 1


@contextmanager
def _gc_paused():
    was_enabled = gc.isenabled()
    if was_enabled:
        gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


class SplitMix64:
    """Pinned 64-bit generator (splitmix64); see tests for frozen vectors."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        return self.next_u64() % n


@dataclass(frozen=True)
class GenConfig:
    n: int
    crossing_fraction: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("need at least 3 vertices")
        if not 0.0 <= self.crossing_fraction <= 1.0:
            raise ValueError("crossing_fraction must be within [0, 1]")


class _DrawingState:
    """Mutable rotation system with linked cyclic rotations (O(1) inserts).

    All faces stay triangles throughout both generator phases, so the face
    table is one flat typed array of half-edge triples.
    """

    __slots__ = ("n", "eu", "ev", "nxt", "prv", "first", "faces", "fidx", "crossings")

    def __init__(self) -> None:
        self.n = 0
        self.eu = array("l")
        self.ev = array("l")
        self.nxt = array("l")  # clockwise successor per half-edge
        self.prv = array("l")
        self.first = array("l")  # an arbitrary half-edge per vertex
        self.faces = array("l")  # flat triples of half-edges
        self.fidx = array("l")  # face index per half-edge (crossing phase)
        self.crossings: set[int] = set()

    def add_vertex(self) -> int:
        self.first.append(-1)
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int) -> int:
        e = len(self.eu)
        self.eu.append(u)
        self.ev.append(v)
        self.nxt.extend((-1, -1))
        self.prv.extend((-1, -1))
        return e

    def insert_before(self, ref: int, h: int) -> None:
        p = self.prv[ref]
        self.nxt[p] = h
        self.prv[h] = p
        self.nxt[h] = ref
        self.prv[ref] = h

    def replace(self, old: int, new: int, vertex: int) -> None:
        p, q = self.prv[old], self.nxt[old]
        if p == old:  # singleton rotation
            self.nxt[new] = new
            self.prv[new] = new
        else:
            self.nxt[p] = new
            self.prv[new] = p
            self.nxt[new] = q
            self.prv[q] = new
        if self.first[vertex] == old:
            self.first[vertex] = new

    def link_cycle(self, hs: list[int], vertex: int) -> None:
        k = len(hs)
        for i, h in enumerate(hs):
            self.nxt[h] = hs[(i + 1) % k]
            self.prv[h] = hs[(i - 1) % k]
        self.first[vertex] = hs[0]

    def finish(self, strict: bool = True) -> Planarization:
        rot: list[list[int]] = []
        nxt = self.nxt
        for v in range(self.n):
            h0 = self.first[v]
            if h0 < 0:
                rot.append([])
                continue
            row = [h0]
            h = nxt[h0]
            while h != h0:
                row.append(h)
                h = nxt[h]
            rot.append(row)
        return Planarization(rot, self.eu, self.ev, self.crossings, strict)


def _triangle_state() -> _DrawingState:
    st = _DrawingState()
    for _ in range(3):
        st.add_vertex()
    e01 = st.add_edge(0, 1)
    e12 = st.add_edge(1, 2)
    e20 = st.add_edge(2, 0)
    st.link_cycle([2 * e01, 2 * e20 + 1], 0)
    st.link_cycle([2 * e12, 2 * e01 + 1], 1)
    st.link_cycle([2 * e20, 2 * e12 + 1], 2)
    st.faces.extend(
        (2 * e01, 2 * e12, 2 * e20, 2 * e01 + 1, 2 * e20 + 1, 2 * e12 + 1)
    )
    return st


def _grow_triangulation(st: _DrawingState, n: int, rng: SplitMix64) -> None:
    eu = st.eu
    ev = st.ev
    nxt = st.nxt
    prv = st.prv
    faces = st.faces
    first = st.first
    randrange = rng.randrange
    while st.n < n:
        w = st.n
        st.n += 1
        first.append(-1)
        fi = randrange(len(faces) // 3) * 3
        ha = faces[fi]
        hb = faces[fi + 1]
        hc = faces[fi + 2]
        e = len(eu)
        sa, sb, sc = 2 * e, 2 * e + 2, 2 * e + 4
        for h, sp in ((ha, sa), (hb, sb), (hc, sc)):
            vk = eu[h >> 1] if h & 1 == 0 else ev[h >> 1]
            eu.append(vk)
            ev.append(w)
            nxt.extend((-1, -1))
            prv.extend((-1, -1))
            q = prv[h]
            nxt[q] = sp
            prv[sp] = q
            nxt[sp] = h
            prv[h] = sp
        ta, tb, tc = sa ^ 1, sb ^ 1, sc ^ 1
        nxt[tc] = tb
        nxt[tb] = ta
        nxt[ta] = tc
        prv[tb] = tc
        prv[ta] = tb
        prv[tc] = ta
        first[w] = tc
        faces[fi] = ha
        faces[fi + 1] = sb
        faces[fi + 2] = ta
        faces.extend((hb, sc, tb, hc, sa, tc))


def gen_triangulation(n: int, seed: int) -> Planarization:
    """Random maximal planar drawing: repeated stellation of random faces."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    with _gc_paused():
        st = _triangle_state()
        _grow_triangulation(st, n, SplitMix64(seed))
        return st.finish()


def _rotate_triple(faces, base: int, anchor: int) -> tuple[int, int, int]:
    a, b, c = faces[base], faces[base + 1], faces[base + 2]
    if a == anchor:
        return a, b, c
    if b == anchor:
        return b, c, a
    return c, a, b


def _insert_crossing(st: _DrawingState, e: int, w1: int, w2: int) -> None:
    """Draw edge w1-w2 across edge e; e's id becomes its first half."""
    faces = st.faces
    fidx = st.fidx
    u, v = st.eu[e], st.ev[e]
    x = st.add_vertex()
    st.crossings.add(x)
    fa = fidx[2 * e]
    fb = fidx[2 * e + 1]
    _, h_vw1, h_w1u = _rotate_triple(faces, fa, 2 * e)
    _, h_uw2, h_w2v = _rotate_triple(faces, fb, 2 * e + 1)
    st.ev[e] = x
    e2 = st.add_edge(x, v)
    e3 = st.add_edge(w1, x)
    e4 = st.add_edge(x, w2)
    fidx.extend((0, 0, 0, 0, 0, 0))
    # v's slot for the old half now carries the new (x, v) half
    st.replace(2 * e + 1, 2 * e2 + 1, v)
    st.insert_before(h_w1u, 2 * e3)
    st.insert_before(h_w2v, 2 * e4 + 1)
    st.link_cycle([2 * e + 1, 2 * e3 + 1, 2 * e2, 2 * e4], x)
    fc = len(faces)
    fd = fc + 3
    faces[fa] = 2 * e
    faces[fa + 1] = 2 * e3 + 1
    faces[fa + 2] = h_w1u
    faces[fb] = 2 * e2
    faces[fb + 1] = h_vw1
    faces[fb + 2] = 2 * e3
    faces.extend((2 * e2 + 1, 2 * e4, h_w2v, 2 * e + 1, h_uw2, 2 * e4 + 1))
    for h in (2 * e, 2 * e3 + 1, h_w1u):
        fidx[h] = fa
    for h in (2 * e2, h_vw1, 2 * e3):
        fidx[h] = fb
    for h in (2 * e2 + 1, 2 * e4, h_w2v):
        fidx[h] = fc
    for h in (2 * e + 1, h_uw2, 2 * e4 + 1):
        fidx[h] = fd


def gen_one_planar(cfg: GenConfig) -> Planarization:
    """Random 1-planar drawing with roughly cfg.crossing_fraction crossings.

    The target crossing count is floor(fraction * (3n - 6)); insertion stops
    early once no eligible edge remains, so the fraction is silently capped.
    """
    rng = SplitMix64(cfg.seed)
    with _gc_paused():
        st = _triangle_state()
        _grow_triangulation(st, cfg.n, rng)
        m0 = len(st.eu)
        target = int(cfg.crossing_fraction * m0)
        if target:
            eu = st.eu
            ev = st.ev
            faces = st.faces
            fidx = array("l")
            fidx.frombytes(bytes(fidx.itemsize * 2 * m0))  # zeros per half-edge
            st.fidx = fidx  # grown by _insert_crossing
            for base in range(0, len(faces), 3):
                fidx[faces[base]] = base
                fidx[faces[base + 1]] = base
                fidx[faces[base + 2]] = base
            # vertex pairs packed as min*K+max; K bounds the final id range
            k_pack = cfg.n + target + 1
            pair_set = set()
            for e in range(m0):
                a, b = eu[e], ev[e]
                pair_set.add(a * k_pack + b if a < b else b * k_pack + a)
            n_tri = st.n
            pool = list(range(m0))
            done = 0
            while done < target and pool:
                i = rng.randrange(len(pool))
                e = pool[i]
                pool[i] = pool[-1]
                pool.pop()
                u, v = eu[e], ev[e]
                w1 = w2 = -1
                ok = True
                base = fidx[2 * e]
                for j in (base, base + 1, base + 2):
                    h = faces[j]
                    c = eu[h >> 1] if h & 1 == 0 else ev[h >> 1]
                    if c >= n_tri:  # crossing vertex in a corner
                        ok = False
                        break
                    if c != u and c != v:
                        w1 = c
                if ok:
                    base = fidx[2 * e + 1]
                    for j in (base, base + 1, base + 2):
                        h = faces[j]
                        c = eu[h >> 1] if h & 1 == 0 else ev[h >> 1]
                        if c >= n_tri:
                            ok = False
                            break
                        if c != u and c != v:
                            w2 = c
                if not ok or w1 == w2:
                    continue
                key = w1 * k_pack + w2 if w1 < w2 else w2 * k_pack + w1
                if key in pair_set:
                    continue
                pair_set.add(key)
                _insert_crossing(st, e, w1, w2)
                done += 1
        return st.finish()


# ---------------------------------------------------------------------------
# embedding builder for hand-made fixtures
# ---------------------------------------------------------------------------


def embedding_from_faces(
    n: int,
    faces: list[list[int]],
    crossings: set[int],
    strict: bool = True,
) -> Planarization:
    """Build a drawing from its face list (simple graphs only).

    Faces are vertex cycles; orientations are aligned automatically (each
    undirected edge must be used by exactly two face sides).  Rotations are
    recovered from the corner successor maps.
    """
    use: dict[tuple[int, int], int] = {}
    for fi, face in enumerate(faces):
        for k in range(len(face)):
            a, b = face[k], face[(k + 1) % len(face)]
            if a == b:
                raise ValueError("degenerate face edge")
            key = (min(a, b), max(a, b))
            use[key] = use.get(key, 0) + 1
    if any(c != 2 for c in use.values()):
        bad = [k for k, c in use.items() if c != 2]
        raise ValueError(f"edges not used exactly twice: {bad[:4]}")

    # orient faces consistently: each directed edge exactly once
    oriented: list[list[int] | None] = [None] * len(faces)
    by_edge: dict[tuple[int, int], list[int]] = {}
    for fi, face in enumerate(faces):
        for k in range(len(face)):
            a, b = face[k], face[(k + 1) % len(face)]
            by_edge.setdefault((min(a, b), max(a, b)), []).append(fi)
    oriented[0] = list(faces[0])
    stack = [0]
    done = {0}
    while stack:
        fi = stack.pop()
        face = oriented[fi]
        dirs = {(face[k], face[(k + 1) % len(face)]) for k in range(len(face))}
        for k in range(len(face)):
            a, b = face[k], face[(k + 1) % len(face)]
            for fj in by_edge[(min(a, b), max(a, b))]:
                if fj == fi or fj in done:
                    continue
                other = list(faces[fj])
                odirs = {
                    (other[t], other[(t + 1) % len(other)])
                    for t in range(len(other))
                }
                if (a, b) in odirs:
                    other.reverse()
                    odirs = {
                        (other[t], other[(t + 1) % len(other)])
                        for t in range(len(other))
                    }
                if (b, a) not in odirs:
                    raise ValueError(f"face {fj} does not share edge {a}-{b}")
                oriented[fj] = other
                done.add(fj)
                stack.append(fj)
    if len(done) != len(faces):
        raise ValueError("face set is not connected")

    # check global consistency and build corner successor maps
    succ: dict[tuple[int, int], tuple[int, int]] = {}
    for face in oriented:
        assert face is not None
        for k in range(len(face)):
            u, v, w = face[k], face[(k + 1) % len(face)], face[(k + 2) % len(face)]
            if (v, u) in succ:
                raise ValueError(f"inconsistent orientation at edge {u}-{v}")
            succ[(v, u)] = (v, w)

    eu: list[int] = []
    ev: list[int] = []
    edge_of: dict[tuple[int, int], int] = {}
    for (a, b) in use:
        edge_of[(a, b)] = len(eu)
        eu.append(a)
        ev.append(b)

    def half(a: int, b: int) -> int:
        e = edge_of[(min(a, b), max(a, b))]
        return 2 * e if eu[e] == a else 2 * e + 1

    rot: list[list[int]] = [[] for _ in range(n)]
    outgoing: dict[int, set[int]] = {v: set() for v in range(n)}
    for (v, u) in succ:
        outgoing[v].add(u)
    for v in range(n):
        if not outgoing[v]:
            continue
        start = min(outgoing[v])
        cur = start
        row = []
        while True:
            row.append(half(v, cur))
            cur = succ[(v, cur)][1]
            if cur == start:
                break
        if len(row) != len(outgoing[v]):
            raise ValueError(f"rotation at {v} is not a single cycle")
        rot[v] = row
    return Planarization(rot, eu, ev, crossings, strict=strict)


# ---------------------------------------------------------------------------
# named fixtures
# ---------------------------------------------------------------------------

# K5 drawn with one crossing: edge 0-4 crosses edge 1-2 at vertex 5.
K5_TEXT = """\
n 6
crossings 5
rot 0: 2 5 1 3
rot 1: 3 0 5 4
rot 2: 4 5 0 3
rot 3: 4 2 0 1
rot 4: 1 5 2 3
rot 5: 2 4 1 0
"""

# Three crossings arranged so that two quadrangles come to share their
# opposing pair mid-run: processing contracts through one of them under the
# double-opposition rule (the configuration the engine's Case 1.c handles).
# Vertices: 0..8 real, 9/10/11 crossings for 0-2 x 1-3, 2-5 x 4-6, 0-5 x 7-8.
FIG1E_TEXT = """\
n 12
crossings 9 10 11
rot 0: 8 11 7 3 9 1
rot 1: 0 9 2 4 5 8
rot 2: 10 4 1 9 3 6
rot 3: 2 9 0 7 5 6
rot 4: 1 2 10 5
rot 5: 1 4 10 6 3 7 11 8
rot 6: 5 10 2 3
rot 7: 5 3 0 11
rot 8: 5 11 0 1
rot 9: 2 1 0 3
rot 10: 5 4 2 6
rot 11: 5 7 0 8
"""

# Synthetic post-augmentation stage: a crossing quadrangle plus a parallel
# copy of one kite edge, so the skeleton carries a bigon face.  The parallel
# pair makes the underlying graph a multigraph, hence strict=False.
BIGON_TEXT = """\
n 5
crossings 4
rot 0: 1.1 1.0 4 3
rot 1: 2 4 0.0 0.1
rot 2: 3 4 1
rot 3: 2 0 4
rot 4: 2 3 0 1
"""

# Generated instance whose deterministic run pops a quadrangle with a
# repeated boundary vertex (two opposing corners already merged), the shape
# that exercises the non-simple facial-cycle reconstruction end to end.
# Found by instrumented search over generator seeds; see tests.
FIG1B_RECIPE = GenConfig(10, 0.3, 9)


def fixtures() -> dict[str, Planarization]:
    """Named drawings used across the test-suite and acceptance checks."""
    return {
        "k5": parse_drawing(K5_TEXT),
        "fig1e": parse_drawing(FIG1E_TEXT),
        "bigon": parse_drawing(BIGON_TEXT, strict=False),
        "fig1b": gen_one_planar(FIG1B_RECIPE),
    }
