"""Dynamic loopless-tolerant multigraph with incidence lists and contraction.

Vertices and edges are small integers that are never reused within one graph's
lifetime.  Contraction merges the smaller-degree endpoint into the larger one
(re-attaching the smaller incidence list), so any sequence of contractions on
a graph with m edges costs O(m log m) re-attachment work in total.

Incidence lists use lazy deletion: a contracted or deleted edge keeps its slot
until the list is next compacted.  ``degree`` always reports the live count,
with loops counted twice.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator


class GraphError(Exception):
    """Structural misuse of the multigraph API."""


class DeadVertexError(GraphError):
    """A vertex id was used after the vertex was contracted away."""


class DeadEdgeError(GraphError):
    """An edge id was used after the edge was deleted."""


class Label(IntEnum):
    NONE = 0
    QUAD = 1
    QUAD0 = 2
    QUAD1 = 3
    QUAD2 = 4
    QUAD3 = 5


#: Labels marking the four gadget corner vertices.
CORNER_LABELS = (Label.QUAD0, Label.QUAD1, Label.QUAD2, Label.QUAD3)


@dataclass
class VertexMeta:
    """Snapshot of the per-vertex scratch metadata."""

    adj: bool
    in_worklist: bool
    opposing: int
    label: Label


_META_FIELDS = ("adj", "in_worklist", "opposing", "label")


class Multigraph:
    """Mutable multigraph; parallel edges and loops are permitted.

    A loop contributes 2 to its endpoint's degree and appears twice in the
    incidence list.  Contracting edge ``e = (u, v)`` merges the endpoints,
    keeps every other incident edge, and turns the remaining parallel copies
    of ``e`` into loops on the merged vertex (they are retained, not deleted).
    """

    __slots__ = (
        "_inc",
        "_deg",
        "_eu",
        "_ev",
        "_alive",
        "_merged_into",
        "_adj",
        "_in_wl",
        "_opposing",
        "_label",
        "reattach_work",
        "contraction_count",
        "last_contract_work",
    )

    def __init__(self) -> None:
        # typed arrays keep multi-million-entry tables off the object heap
        self._inc: list[list[int]] = []
        self._deg = array("l")
        self._eu = array("l")
        self._ev = array("l")
        self._alive = bytearray()
        self._merged_into = array("l")
        # scratch metadata, maintained manually by callers
        self._adj = bytearray()
        self._in_wl = bytearray()
        self._opposing = array("l")
        self._label = bytearray()
        # cost accounting for the small-into-large analysis
        self.reattach_work = 0
        self.contraction_count = 0
        self.last_contract_work = 0

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    def add_vertex(self) -> int:
        v = len(self._inc)
        self._inc.append([])
        self._deg.append(0)
        self._alive.append(1)
        self._merged_into.append(-1)
        self._adj.append(0)
        self._in_wl.append(0)
        self._opposing.append(0)
        self._label.append(0)
        return v

    def add_edge(self, u: int, v: int) -> int:
        alive = self._alive
        try:
            ok = alive[u] and alive[v] and u >= 0 and v >= 0
        except IndexError:
            ok = False
        if not ok:
            self._check_vertex(u)
            self._check_vertex(v)
        e = len(self._eu)
        self._eu.append(u)
        self._ev.append(v)
        deg = self._deg
        if u == v:
            inc = self._inc[u]
            inc.append(e)
            inc.append(e)
            deg[u] += 2
        else:
            self._inc[u].append(e)
            self._inc[v].append(e)
            deg[u] += 1
            deg[v] += 1
        return e

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    @property
    def vertex_slots(self) -> int:
        """Number of vertex ids ever created (alive or dead)."""
        return len(self._inc)

    @property
    def edge_slots(self) -> int:
        return len(self._eu)

    def vertex_alive(self, v: int) -> bool:
        return bool(0 <= v < len(self._alive) and self._alive[v])

    def edge_alive(self, e: int) -> bool:
        return 0 <= e < len(self._eu) and self._eu[e] >= 0

    def merged_into(self, v: int) -> int:
        """Surviving vertex a dead vertex was absorbed by (-1 if alive)."""
        return self._merged_into[v]

    def find_surviving(self, v: int) -> int:
        """Follow the merge chain from ``v`` to the current survivor."""
        while self._merged_into[v] >= 0:
            v = self._merged_into[v]
        return v

    def live_vertices(self) -> Iterator[int]:
        alive = self._alive
        return (v for v in range(len(alive)) if alive[v])

    def live_edges(self) -> Iterator[int]:
        eu = self._eu
        return (e for e in range(len(eu)) if eu[e] >= 0)

    def degree(self, x: int) -> int:
        self._check_vertex(x)
        return self._deg[x]

    def endpoints(self, e: int) -> tuple[int, int]:
        self._check_edge(e)
        return self._eu[e], self._ev[e]

    def neighbors(self, x: int) -> Iterator[tuple[int, int]]:
        """Yield ``(edge, other_endpoint)`` for every live incident edge.

        Parallel edges repeat the endpoint with distinct edge ids; a loop is
        yielded twice with ``other_endpoint == x``.  No ordering guarantee.
        """
        self._check_vertex(x)
        eu = self._eu
        ev = self._ev
        for e in self._inc[x]:
            u = eu[e]
            if u >= 0:
                yield e, u + ev[e] - x

    # ------------------------------------------------------------------
    # metadata
    # ------------------------------------------------------------------

    def get_meta(self, x: int) -> VertexMeta:
        self._check_vertex(x)
        return VertexMeta(
            adj=bool(self._adj[x]),
            in_worklist=bool(self._in_wl[x]),
            opposing=self._opposing[x],
            label=Label(self._label[x]),
        )

    def set_meta(self, x: int, field: str, value) -> None:
        self._check_vertex(x)
        if field == "adj":
            self._adj[x] = bool(value)
        elif field == "in_worklist":
            self._in_wl[x] = bool(value)
        elif field == "opposing":
            if value < 0:
                raise GraphError("opposing counter must stay non-negative")
            self._opposing[x] = int(value)
        elif field == "label":
            self._label[x] = Label(value)
        else:
            raise GraphError(f"unknown metadata field {field!r}")

    def label(self, x: int) -> Label:
        self._check_vertex(x)
        return Label(self._label[x])

    # ------------------------------------------------------------------
    # contraction
    # ------------------------------------------------------------------

    def contract(self, e: int) -> int:
        """Contract edge ``e`` and return the surviving vertex.

        The higher-degree endpoint survives (ties keep the first endpoint).
        The survivor's metadata is retained, the absorbed vertex's discarded.
        Contracting a loop deletes it and returns its endpoint.  Runtime is
        O(min(d(u), d(v))) plus amortized compaction.
        """
        self._check_edge(e)
        eu = self._eu
        ev = self._ev
        deg = self._deg
        u = eu[e]
        v = ev[e]
        if u == v:
            eu[e] = -1
            ev[e] = -1
            deg[u] -= 2
            self.last_contract_work = 0
            self.contraction_count += 1
            self._maybe_compact(u)
            return u
        if deg[u] >= deg[v]:
            s, t = u, v
        else:
            s, t = v, u
        # drop e itself, then re-attach the smaller side
        eu[e] = -1
        ev[e] = -1
        deg[s] -= 1
        deg[t] -= 1
        work = deg[t]
        inc_s = self._inc[s]
        append = inc_s.append
        for g in self._inc[t]:
            if eu[g] < 0:
                continue
            if eu[g] == t:
                eu[g] = s
            elif ev[g] == t:
                ev[g] = s
            append(g)
        deg[s] += work
        deg[t] = 0
        self._inc[t] = []
        self._alive[t] = False
        self._merged_into[t] = s
        self.last_contract_work = work
        self.reattach_work += work
        self.contraction_count += 1
        if len(inc_s) > 2 * deg[s] + 8:
            self._inc[s] = [g for g in inc_s if eu[g] >= 0]
        return s

    def _maybe_compact(self, v: int) -> None:
        inc = self._inc[v]
        if len(inc) > 2 * self._deg[v] + 8:
            eu = self._eu
            self._inc[v] = [g for g in inc if eu[g] >= 0]

    # ------------------------------------------------------------------
    # internal
    # ------------------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < len(self._alive)):
            raise GraphError(f"unknown vertex id {v}")
        if not self._alive[v]:
            raise DeadVertexError(
                f"vertex {v} was contracted into {self._merged_into[v]}"
            )

    def _check_edge(self, e: int) -> None:
        if not (0 <= e < len(self._eu)):
            raise GraphError(f"unknown edge id {e}")
        if self._eu[e] < 0:
            raise DeadEdgeError(f"edge {e} is deleted")
