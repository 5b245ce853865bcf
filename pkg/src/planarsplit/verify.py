"""Independent validation of partitions, plus a brute-force oracle.

The verifier never trusts the engine's bookkeeping: it reconstructs the
augmented skeleton from the input drawing, checks the forest with a
disjoint-set union, and witnesses planarity of the planar part by pruning
the forest's half-edges out of the drawing and re-traversing the faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .drawing import Planarization
from .engine import PlanarForestPartition
from .preprocess import Skeleton, _augment_links, triangulate


class PartitionFormatError(ValueError):
    """The supplied partition references unknown or missing edges."""


class DisjointSet:
    """Union-find over dense integer ids with path halving."""

    __slots__ = ("parent", "rank")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


@dataclass
class VerificationReport:
    one_chord_per_crossing: bool
    forest_acyclic: bool
    no_adjacent_path: bool
    planar_part_planar: bool
    edge_bound_ok: bool
    details: dict[str, object] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return (
            self.one_chord_per_crossing
            and self.forest_acyclic
            and self.no_adjacent_path
            and self.planar_part_planar
            and self.edge_bound_ok
        )

    _CHECKS = (
        "one_chord_per_crossing",
        "forest_acyclic",
        "no_adjacent_path",
        "planar_part_planar",
        "edge_bound_ok",
    )

    def failing(self) -> list[str]:
        return [name for name in self._CHECKS if not getattr(self, name)]

    def to_text(self) -> str:
        lines = []
        for name in self._CHECKS:
            ok = getattr(self, name)
            line = f"{name}: {'PASS' if ok else 'FAIL'}"
            if not ok and name in self.details:
                line += f" ({self.details[name]})"
            lines.append(line)
        lines.append(f"overall: {'PASS' if self.all_ok else 'FAIL'}")
        return "\n".join(lines)

    def to_kv(self) -> str:
        lines = [f"{name}={int(getattr(self, name))}" for name in self._CHECKS]
        lines.append(f"overall={int(self.all_ok)}")
        return "\n".join(lines)


def partition_from_pairs(
    p: Planarization,
    forest_pairs: list[tuple[int, int]],
    planar_pairs: list[tuple[int, int]],
) -> PlanarForestPartition:
    """Assemble a partition object from endpoint pairs (for `verify` replays).

    Every pair must name an input edge, and together the two lists must cover
    each input edge exactly once.
    """
    edges, _pairs = p.original_edges()
    by_pair = {frozenset((e.u, e.v)): e.index for e in edges}
    seen: set[int] = set()
    sides: list[set[int]] = [set(), set()]
    for side, pairs in enumerate((forest_pairs, planar_pairs)):
        for u, v in pairs:
            key = frozenset((u, v))
            if key not in by_pair:
                raise PartitionFormatError(f"unknown edge {u}-{v}")
            i = by_pair[key]
            if i in seen:
                raise PartitionFormatError(f"edge {u}-{v} listed twice")
            seen.add(i)
            sides[side].add(i)
    if len(seen) != len(edges):
        raise PartitionFormatError(
            f"partition covers {len(seen)} of {len(edges)} edges"
        )
    ordered = lambda e: (min(e.u, e.v), max(e.u, e.v))
    return PlanarForestPartition(
        forest_ids=frozenset(sides[0]),
        planar_ids=frozenset(sides[1]),
        forest_pairs=tuple(sorted(ordered(edges[i]) for i in sides[0])),
        planar_pairs=tuple(sorted(ordered(edges[i]) for i in sides[1])),
        chord_log=(),
    )


def verify_partition(
    p: Planarization, part: PlanarForestPartition
) -> VerificationReport:
    """Run all five partition checks against the input drawing."""
    from .engine import _gc_paused

    with _gc_paused():
        return _verify_partition(p, part)


def _verify_partition(
    p: Planarization, part: PlanarForestPartition
) -> VerificationReport:
    edges, pairs = p.original_edges()
    n_edges = len(edges)
    for i in part.forest_ids | part.planar_ids:
        if not (0 <= i < n_edges):
            raise PartitionFormatError(f"unknown edge id {i}")
    details: dict[str, object] = {}

    # (a) exactly one forest edge per crossing pair, none elsewhere
    crossing_members = set()
    ok_a = True
    for cp in pairs:
        crossing_members.update((cp.edge_a, cp.edge_b))
        picked = (cp.edge_a in part.forest_ids) + (cp.edge_b in part.forest_ids)
        if picked != 1:
            ok_a = False
            details.setdefault(
                "one_chord_per_crossing",
                f"crossing {cp.crossing} has {picked} forest edges",
            )
    strays = part.forest_ids - crossing_members
    if strays:
        ok_a = False
        e = edges[min(strays)]
        details.setdefault(
            "one_chord_per_crossing", f"uncrossed forest edge {e.u}-{e.v}"
        )

    # (b) forest acyclic
    dsu = DisjointSet(p.n_vertices)
    ok_b = True
    for i in sorted(part.forest_ids):
        e = edges[i]
        if not dsu.union(e.u, e.v):
            ok_b = False
            details.setdefault("forest_acyclic", f"cycle closed by {e.u}-{e.v}")
            break

    # (c) no forest path between endpoints of any augmented-skeleton edge
    ok_c = True
    if ok_b:
        skel = triangulate(_augment_links(p))
        mg = skel.graph
        for e in mg.live_edges():
            u, v = mg.endpoints(e)
            pu, pv = skel.plan_of_mg[u], skel.plan_of_mg[v]
            if dsu.find(pu) == dsu.find(pv):
                ok_c = False
                details.setdefault(
                    "no_adjacent_path",
                    f"skeleton edge {pu}-{pv} joined through the forest",
                )
                break
    else:
        ok_c = False
        details.setdefault("no_adjacent_path", "skipped: forest has a cycle")

    # (d) planar part planar, witnessed by the pruned drawing
    removed: set[int] = set()
    for i in part.forest_ids:
        removed.update(edges[i].plan_edges)
    ok_d = True
    for x in sorted(p.crossings):
        left = sum(1 for h in p.rot[x] if h // 2 not in removed)
        if left == 4:
            ok_d = False
            details.setdefault(
                "planar_part_planar",
                f"crossing {x} keeps both diagonals in the planar part",
            )
    if ok_d:
        ok_d = _pruned_drawing_spherical(p, removed, details)

    # (e) the 1-planar edge bound on the input
    m = len(edges)
    ok_e = p.n_real < 3 or m <= 4 * p.n_real - 8
    if not ok_e:
        details.setdefault(
            "edge_bound_ok", f"m={m} exceeds 4n-8={4 * p.n_real - 8}"
        )

    return VerificationReport(ok_a, ok_b, ok_c, ok_d, ok_e, details)


def _pruned_drawing_spherical(
    p: Planarization, removed: set[int], details: dict
) -> bool:
    rot = [[h for h in r if h // 2 not in removed] for r in p.rot]
    pos: dict[int, int] = {}
    for r in rot:
        for i, h in enumerate(r):
            pos[h] = i

    def tail(h: int) -> int:
        e, s = divmod(h, 2)
        return p.eu[e] if s == 0 else p.ev[e]

    # connected components over surviving edges
    comp = [-1] * p.n_vertices
    n_comp = 0
    for v0 in range(p.n_vertices):
        if comp[v0] >= 0:
            continue
        comp[v0] = n_comp
        stack = [v0]
        while stack:
            v = stack.pop()
            for h in rot[v]:
                w = tail(h ^ 1)
                if comp[w] < 0:
                    comp[w] = n_comp
                    stack.append(w)
        n_comp += 1

    verts = [0] * n_comp
    for v in range(p.n_vertices):
        verts[comp[v]] += 1
    edge_cnt = [0] * n_comp
    for e in range(p.n_edges):
        if e not in removed:
            edge_cnt[comp[p.eu[e]]] += 1
    face_cnt = [0] * n_comp
    seen: set[int] = set()
    for v in range(p.n_vertices):
        for h0 in rot[v]:
            if h0 in seen:
                continue
            face_cnt[comp[v]] += 1
            h = h0
            while h not in seen:
                seen.add(h)
                t = h ^ 1
                w = tail(t)
                r = rot[w]
                h = r[(pos[t] + 1) % len(r)]
    for c in range(n_comp):
        if edge_cnt[c] == 0:
            continue  # isolated vertex: trivially fine
        if verts[c] - edge_cnt[c] + face_cnt[c] != 2:
            details.setdefault(
                "planar_part_planar",
                f"component {c}: V-E+F = {verts[c]}-{edge_cnt[c]}+{face_cnt[c]}",
            )
            return False
    return True


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def oracle_chord_sets(s: Skeleton) -> list[frozenset[tuple[int, int]]]:
    """Enumerate every valid way to chord one diagonal per quadrangle.

    A choice is valid when the chords are acyclic and never connect the two
    endpoints of any skeleton edge.  Exponential by design; refuses more
    than 20 quadrangles.
    """
    q = len(s.quads)
    if q > 20:
        raise ValueError(f"oracle limited to 20 quadrangles, got {q}")
    options = []
    for rec in s.quads:
        a = tuple(sorted(rec.diag_pairs[0]))
        b = tuple(sorted(rec.diag_pairs[1]))
        options.append((a, b))
    mg = s.graph
    skel_pairs = []
    for e in mg.live_edges():
        u, v = mg.endpoints(e)
        skel_pairs.append((s.plan_of_mg[u], s.plan_of_mg[v]))
    n = max((max(u, v) for u, v in skel_pairs), default=0) + 1
    for opts in options:
        for u, v in opts:
            n = max(n, u + 1, v + 1)

    out: list[frozenset[tuple[int, int]]] = []
    for mask in range(1 << q):
        dsu = DisjointSet(n)
        ok = True
        chords = []
        for i in range(q):
            pair = options[i][(mask >> i) & 1]
            chords.append(pair)
            if not dsu.union(pair[0], pair[1]):
                ok = False
                break
        if not ok:
            continue
        for u, v in skel_pairs:
            if dsu.find(u) == dsu.find(v):
                ok = False
                break
        if ok:
            out.append(frozenset(chords))
    return out
