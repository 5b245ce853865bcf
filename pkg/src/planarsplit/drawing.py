"""Planarized 1-planar drawings given as rotation systems.

A drawing is stored as its planarization: a plane multigraph where every
former crossing point is a marked degree-4 vertex.  Rotations are clockwise
lists of half-edges; half-edge ``2*e + s`` sits at endpoint ``s`` of edge
``e`` and its twin is ``2*e + (1-s)``.

Face traversal follows the standard next-corner rule: after arriving at a
vertex, leave through the half-edge that follows the twin in the rotation.

The ``.1pl`` file format (UTF-8, line oriented)::

    # comment and blank lines are ignored
    n <num_vertices_of_planarization>
    crossings <space-separated vertex ids>     (may be empty)
    rot <v>: <u1> <u2> ... <uk>

One ``rot`` line per vertex, clockwise neighbor list.  Parallel edges are
disambiguated as ``u.j`` where ``j`` is a 0-based multiplicity index; the
entry for edge ``(u, v, j)`` must appear in both rotations.  Vertex ids must
be ``0 .. n-1``.  Loops are not representable (the pipeline never makes any).
"""

from __future__ import annotations

from dataclasses import dataclass


class DrawingError(ValueError):
    """Invalid drawing file or rotation system."""


@dataclass(slots=True)
class FaceWalk:
    """One face as the cyclic sequence of half-edges walked along it."""

    halfedges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.halfedges)


@dataclass(slots=True)
class CrossingPair:
    """The two original edges that meet at one crossing vertex."""

    crossing: int
    edge_a: int  # original-edge id for the rotation-(0,2) diagonal
    edge_b: int  # original-edge id for the rotation-(1,3) diagonal


@dataclass(slots=True)
class OriginalEdge:
    """An edge of the underlying graph G, with its planarization support."""

    index: int
    u: int
    v: int
    crossing: int  # crossing vertex id, or -1 for a plain edge
    plan_edges: tuple[int, ...]  # supporting planarization edge ids

    @property
    def pair(self) -> frozenset[int]:
        return frozenset((self.u, self.v))


class Planarization:
    """Validated, immutable planarized drawing.

    ``strict`` validation additionally requires the underlying original graph
    to be simple and to satisfy the 1-planar edge bound m <= 4n - 8; internal
    pipeline stages (after augmentation) are multigraphs and use the
    structural checks only.
    """

    def __init__(
        self,
        rotations: list[list[int]],
        edge_u: list[int],
        edge_v: list[int],
        crossings: set[int],
        strict: bool = True,
        validate: bool = True,
    ) -> None:
        self.rot: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self.eu: tuple[int, ...] = tuple(edge_u)
        self.ev: tuple[int, ...] = tuple(edge_v)
        self.crossings: frozenset[int] = frozenset(crossings)
        self.n_vertices = len(self.rot)
        self.n_edges = len(self.eu)
        self.n_cross = len(self.crossings)
        self.n_real = self.n_vertices - self.n_cross
        self._pos: list[int] = [0] * (2 * self.n_edges)
        for v, r in enumerate(self.rot):
            for i, h in enumerate(r):
                self._pos[h] = i
        self._faces: list[FaceWalk] | None = None
        self._orig: tuple[tuple[OriginalEdge, ...], tuple[CrossingPair, ...]] | None = None
        if validate:
            self._validate(strict)

    # ------------------------------------------------------------------
    # half-edge primitives
    # ------------------------------------------------------------------

    def tail(self, h: int) -> int:
        e, s = divmod(h, 2)
        return self.eu[e] if s == 0 else self.ev[e]

    def head(self, h: int) -> int:
        e, s = divmod(h, 2)
        return self.ev[e] if s == 0 else self.eu[e]

    def next_in_face(self, h: int) -> int:
        t = h ^ 1
        v = self.tail(t)
        r = self.rot[v]
        return r[(self._pos[t] + 1) % len(r)]

    # ------------------------------------------------------------------
    # faces
    # ------------------------------------------------------------------

    def faces(self) -> list[FaceWalk]:
        if self._faces is None:
            # next half-edge of a face: rotation successor of the twin,
            # precomputed as one flat permutation for speed
            eu = self.eu
            ev = self.ev
            pos = self._pos
            rot = self.rot
            nxt = [0] * (2 * self.n_edges)
            for h in range(2 * self.n_edges):
                t = h ^ 1
                v = eu[t >> 1] if t & 1 == 0 else ev[t >> 1]
                r = rot[v]
                i = pos[t] + 1
                nxt[h] = r[i] if i < len(r) else r[0]
            seen = bytearray(2 * self.n_edges)
            out = []
            for h0 in range(2 * self.n_edges):
                if seen[h0]:
                    continue
                walk = []
                h = h0
                while not seen[h]:
                    seen[h] = 1
                    walk.append(h)
                    h = nxt[h]
                if h != h0:
                    raise DrawingError("rotation system is not face-consistent")
                out.append(FaceWalk(tuple(walk)))
            self._faces = out
        return self._faces

    def face_vertices(self, walk: FaceWalk) -> tuple[int, ...]:
        return tuple(self.tail(h) for h in walk.halfedges)

    # ------------------------------------------------------------------
    # original graph reconstruction
    # ------------------------------------------------------------------

    def original_edges(self) -> tuple[tuple[OriginalEdge, ...], tuple[CrossingPair, ...]]:
        """Rebuild E(G): plain edges plus one edge per crossed half-pair.

        Endpoints are normalized so that ``u < v``.
        """
        if self._orig is not None:
            return self._orig
        edges: list[OriginalEdge] = []
        pairs: list[CrossingPair] = []
        is_cross = self.crossings
        for e in range(self.n_edges):
            u, v = self.eu[e], self.ev[e]
            if u not in is_cross and v not in is_cross:
                if u > v:
                    u, v = v, u
                edges.append(OriginalEdge(len(edges), u, v, -1, (e,)))
        for x in sorted(is_cross):
            r = self.rot[x]
            ids = []
            for i in (0, 1):
                h1, h2 = r[i], r[i + 2]
                a, b = self.head(h1), self.head(h2)
                if a > b:
                    a, b = b, a
                edges.append(
                    OriginalEdge(len(edges), a, b, x, (h1 // 2, h2 // 2))
                )
                ids.append(len(edges) - 1)
            pairs.append(CrossingPair(x, ids[0], ids[1]))
        self._orig = (tuple(edges), tuple(pairs))
        return self._orig

    def crossing_pair_endpoints(self) -> list[tuple[int, tuple[int, int], tuple[int, int]]]:
        """Per crossing (ascending): the two crossed edges' endpoint pairs.

        Cheap accessor: unlike :meth:`original_edges` this builds no edge
        table, just the diagonal endpoints read off each crossing rotation.
        """
        out = []
        for x in sorted(self.crossings):
            r = self.rot[x]
            out.append(
                (x, (self.head(r[0]), self.head(r[2])),
                 (self.head(r[1]), self.head(r[3])))
            )
        return out

    def original_edge_count(self) -> int:
        return len(self.original_edges()[0])

    # ------------------------------------------------------------------
    # validation
    # ------------------------------------------------------------------

    def _validate(self, strict: bool) -> None:
        n = self.n_vertices
        eu = self.eu
        ev = self.ev
        rot = self.rot
        cross = self.crossings
        # structural sanity of the rotation table
        seen_h = bytearray(2 * self.n_edges)
        listed = 0
        for v, r in enumerate(rot):
            for h in r:
                t = eu[h >> 1] if h & 1 == 0 else ev[h >> 1]
                if t != v:
                    raise DrawingError(f"half-edge {h} listed at wrong vertex {v}")
                if seen_h[h]:
                    raise DrawingError(
                        "inconsistent rotation: each half-edge must appear once"
                    )
                seen_h[h] = 1
                listed += 1
        if listed != 2 * self.n_edges:
            raise DrawingError("inconsistent rotation: missing half-edges")
        for e in range(self.n_edges):
            if eu[e] == ev[e]:
                raise DrawingError(f"loop edge {e} is not supported")
        for x in cross:
            if not (0 <= x < n):
                raise DrawingError(f"unknown crossing vertex {x}")
        # crossing-local checks
        for x in sorted(cross):
            r = rot[x]
            if len(r) != 4:
                raise DrawingError(
                    f"crossing degree: vertex {x} has degree {len(r)}, expected 4"
                )
            nbrs = [self.head(h) for h in r]
            for w in nbrs:
                if w in cross:
                    raise DrawingError(f"adjacent crossing vertices {x} and {w}")
            if len(set(nbrs)) != 4:
                raise DrawingError(
                    f"crossing rotation at {x} does not alternate two distinct edges"
                )
        if strict:
            # the 1-planar edge bound, checked before the embedding checks so
            # that over-dense inputs are rejected with the right diagnostic
            plain = 0
            for e in range(self.n_edges):
                if eu[e] not in cross and ev[e] not in cross:
                    plain += 1
            m = plain + 2 * len(cross)
            if self.n_real >= 3 and m > 4 * self.n_real - 8:
                raise DrawingError(
                    f"edge bound violated: m={m} > 4n-8={4 * self.n_real - 8}"
                )
        # connectivity
        if n > 0:
            seen = bytearray(n)
            stack = [0]
            seen[0] = 1
            cnt = 1
            while stack:
                v = stack.pop()
                for h in rot[v]:
                    w = eu[h >> 1] if h & 1 else ev[h >> 1]
                    if not seen[w]:
                        seen[w] = 1
                        cnt += 1
                        stack.append(w)
            if cnt != n:
                raise DrawingError("drawing is disconnected")
        # spherical embedding; an edgeless (single-vertex) drawing has one face
        f = len(self.faces()) if self.n_edges else 1
        if n - self.n_edges + f != 2:
            raise DrawingError(
                f"Euler check failed: V-E+F = {n}-{self.n_edges}+{f} != 2"
            )
        if strict:
            # the underlying original graph must be simple
            pairs: set[int] = set()
            for e in range(self.n_edges):
                u, v = eu[e], ev[e]
                if u in cross or v in cross:
                    continue
                key = u * n + v if u < v else v * n + u
                if key in pairs:
                    raise DrawingError(
                        f"original graph not simple: duplicate edge {u}-{v}"
                    )
                pairs.add(key)
            for x in sorted(cross):
                r = rot[x]
                for i in (0, 1):
                    a = self.head(r[i])
                    b = self.head(r[i + 2])
                    if a == b:
                        raise DrawingError("original graph has a loop")
                    key = a * n + b if a < b else b * n + a
                    if key in pairs:
                        raise DrawingError(
                            f"original graph not simple: duplicate edge {a}-{b}"
                        )
                    pairs.add(key)

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def serialize(self) -> str:
        # assign multiplicity indices per unordered vertex pair in edge order
        mult: dict[tuple[int, int], int] = {}
        jindex: list[int] = []
        for e in range(self.n_edges):
            key = (min(self.eu[e], self.ev[e]), max(self.eu[e], self.ev[e]))
            j = mult.get(key, 0)
            mult[key] = j + 1
            jindex.append(j)
        lines = [f"n {self.n_vertices}"]
        lines.append("crossings" + "".join(f" {x}" for x in sorted(self.crossings)))
        for v in range(self.n_vertices):
            ent = []
            for h in self.rot[v]:
                e = h // 2
                w = self.head(h)
                j = jindex[e]
                ent.append(str(w) if j == 0 and mult[(min(v, w), max(v, w))] == 1
                           else f"{w}.{j}")
            lines.append(f"rot {v}:" + "".join(" " + s for s in ent))
        return "\n".join(lines) + "\n"


def parse_drawing(text: str, strict: bool = True) -> Planarization:
    """Parse a ``.1pl`` file into a validated :class:`Planarization`."""
    n = -1
    crossings: set[int] = set()
    rot_entries: dict[int, list[tuple[int, int]]] = {}
    seen_cross_line = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "n":
            if n >= 0:
                raise DrawingError(f"line {lineno}: duplicate n line")
            try:
                n = int(parts[1])
            except (IndexError, ValueError):
                raise DrawingError(f"line {lineno}: malformed n line") from None
            if n < 0:
                raise DrawingError(f"line {lineno}: negative vertex count")
        elif kind == "crossings":
            if seen_cross_line:
                raise DrawingError(f"line {lineno}: duplicate crossings line")
            seen_cross_line = True
            try:
                crossings = {int(t) for t in parts[1:]}
            except ValueError:
                raise DrawingError(f"line {lineno}: malformed crossings line") from None
        elif kind == "rot":
            if n < 0:
                raise DrawingError(f"line {lineno}: rot line before n line")
            if len(parts) < 2 or not parts[1].endswith(":"):
                raise DrawingError(f"line {lineno}: malformed rot line")
            try:
                v = int(parts[1][:-1])
            except ValueError:
                raise DrawingError(f"line {lineno}: malformed rot vertex id") from None
            if not (0 <= v < n):
                raise DrawingError(f"line {lineno}: vertex id {v} out of range")
            if v in rot_entries:
                raise DrawingError(f"line {lineno}: duplicate rot line for vertex {v}")
            entries = []
            for col, tok in enumerate(parts[2:], start=3):
                if "." in tok:
                    a, _, b = tok.partition(".")
                    try:
                        w, j = int(a), int(b)
                    except ValueError:
                        raise DrawingError(
                            f"line {lineno} entry {col}: malformed token {tok!r}"
                        ) from None
                else:
                    try:
                        w, j = int(tok), 0
                    except ValueError:
                        raise DrawingError(
                            f"line {lineno} entry {col}: malformed token {tok!r}"
                        ) from None
                if not (0 <= w < n):
                    raise DrawingError(
                        f"line {lineno} entry {col}: vertex id {w} out of range"
                    )
                if w == v:
                    raise DrawingError(f"line {lineno}: loop at vertex {v}")
                entries.append((w, j))
            rot_entries[v] = entries
        else:
            raise DrawingError(f"line {lineno}: unknown directive {kind!r}")
    if n < 0:
        raise DrawingError("missing n line")
    missing = [v for v in range(n) if v not in rot_entries]
    if missing:
        raise DrawingError(f"missing rot line for vertex {missing[0]}")
    for x in crossings:
        if not (0 <= x < n):
            raise DrawingError(f"crossing vertex {x} out of range")

    # match (u, v, j) entries across the two rotations
    edge_of: dict[tuple[int, int, int], int] = {}
    eu: list[int] = []
    ev: list[int] = []
    sides_seen: list[int] = []
    rotations: list[list[int]] = []
    for v in range(n):
        row = []
        for (w, j) in rot_entries[v]:
            key = (min(v, w), max(v, w), j)
            e = edge_of.get(key)
            if e is None:
                e = len(eu)
                edge_of[key] = e
                eu.append(v)
                ev.append(w)
                sides_seen.append(1)
                row.append(2 * e)
            else:
                if sides_seen[e] != 1 or v != ev[e] or w != eu[e]:
                    raise DrawingError(
                        f"edge {min(v, w)}-{max(v, w)}.{j} listed more than twice"
                    )
                sides_seen[e] = 2
                row.append(2 * e + 1)
        rotations.append(row)
    for (a, b, j), e in edge_of.items():
        if sides_seen[e] != 2:
            raise DrawingError(
                f"edge {a}-{b}.{j} appears at vertex {eu[e]} but not at {ev[e]}"
            )
    return Planarization(rotations, eu, ev, crossings, strict=strict)
