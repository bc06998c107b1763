"""Multigraphs and small dense-subgraph extraction.

A subgraph is "dense" here when it has strictly more edges than vertices.
Two constructive procedures find such subgraphs of logarithmic size: one for
multigraphs of minimum degree 3 (BFS lollipops, one contraction step), one
for multigraphs satisfying the density bound h·|E| >= (h+1)·|V| (reduce,
contract degree-2 chains, then reuse the first procedure).  An exhaustive
checker serves as the reference implementation for both.
"""
from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .util import CapExceededError

logger = logging.getLogger(__name__)

EXHAUSTIVE_GUARD = 20


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; loops (u, u) and parallel edges allowed.
    A loop contributes 2 to its vertex's degree."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree(self, v: int) -> int:
        return sum(2 if (u, w) == (v, v) else (u == v) + (w == v) for u, w in self.edges)


def induced_edge_count(g: Multigraph, x: frozenset[int] | set[int]) -> int:
    """Number of edges (loops included) with both endpoints in x."""
    return sum(1 for u, v in g.edges if u in x and v in x)


def is_connected_induced(g: Multigraph, x: frozenset[int] | set[int]) -> bool:
    """True iff the subgraph induced on x is connected (loops irrelevant)."""
    if not x:
        return True
    adj: dict[int, set[int]] = {v: set() for v in x}
    for u, v in g.edges:
        if u in x and v in x and u != v:
            adj[u].add(v)
            adj[v].add(u)
    start = min(x)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(x)


def _lollipop(n: int, edges: list[tuple[int, int]], root: int) -> frozenset[int] | None:
    """BFS from root; return the union of the tree paths to some vertex u
    with at most one child and to the far end of a non-tree edge at u.

    The returned set Y always induces at least |Y| edges.  Scanning u in
    (distance, id) order keeps both the result and its size bound
    deterministic.  Returns None when no such u exists (possible only for a
    root of degree < 3 in an otherwise min-degree-3 graph).
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid, (a, b) in enumerate(edges):
        adj[a].append((b, eid))
        if a != b:
            adj[b].append((a, eid))
    for lst in adj:
        lst.sort()

    parent = {root: None}
    dist = {root: 0}
    tree_eids: set[int] = set()
    children = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w, eid in adj[u]:
            if w not in parent:
                parent[w] = u
                dist[w] = dist[u] + 1
                children[w] = 0
                children[u] += 1
                tree_eids.add(eid)
                queue.append(w)

    def path_to_root(x: int) -> set[int]:
        out = set()
        while x is not None:
            out.add(x)
            x = parent[x]
        return out

    for u in sorted(parent, key=lambda v: (dist[v], v)):
        if children[u] > 1:
            continue
        spare = None
        for w, eid in adj[u]:
            if eid not in tree_eids:
                spare = (w, eid)
                break
        if spare is None:
            continue
        w = spare[0]
        y = path_to_root(u) | path_to_root(w)
        bound = 2 * math.log2(n) if n > 1 else 1
        if len(y) > bound:
            logger.warning(
                "lollipop from %d has %d vertices, above 2*log2(%d) = %.2f",
                root, len(y), n, bound,
            )
        return frozenset(y)
    return None


def find_dense_subgraph_min_deg3(g: Multigraph, v: int) -> frozenset[int]:
    """In a multigraph of minimum degree 3, find X containing v such that
    G[X] is connected and has strictly more edges than vertices, with
    |X| <= 4*log2(n) - 1 for n >= 2.

    First BFS lollipop from v; if it induces exactly |Y| edges, contract Y to
    a single vertex (dropping Y-internal edges) and take a second lollipop
    from the contracted vertex; the union of both is strictly dense.
    """
    n = g.vertex_count
    if not (0 <= v < n):
        raise ValueError(f"start vertex {v} out of range")
    for u, d in enumerate(g.degrees()):
        if d < 3:
            raise ValueError(f"vertex {u} has degree {d} < 3")

    edges = list(g.edges)
    y1 = _lollipop(n, edges, v)
    if y1 is None:
        raise RuntimeError("internal: no low-child vertex with a spare edge")
    if induced_edge_count(g, y1) > len(y1):
        x = y1
    else:
        # contract y1 to a fresh vertex; keep original ids for the rest
        keep = sorted(u for u in range(n) if u not in y1)
        idmap = {u: i for i, u in enumerate(keep)}
        y_new = len(keep)
        edges2: list[tuple[int, int]] = []
        for a, b in edges:
            ina, inb = a in y1, b in y1
            if ina and inb:
                continue
            edges2.append((y_new if ina else idmap[a], y_new if inb else idmap[b]))
        y2 = _lollipop(y_new + 1, edges2, y_new)
        if y2 is None:
            raise RuntimeError("internal: contracted lollipop not found")
        x = y1 | frozenset(keep[u] for u in y2 if u != y_new)

    if not (v in x and is_connected_induced(g, x) and induced_edge_count(g, x) > len(x)):
        raise RuntimeError("internal: dense-subgraph postcondition failed")
    if n >= 2 and len(x) > 4 * math.log2(n) - 1 + 1e-9:
        raise RuntimeError(f"internal: |X| = {len(x)} above 4*log2({n}) - 1")
    return x


def find_dense_subgraph(g: Multigraph, h: int) -> frozenset[int]:
    """In a multigraph with h·|E| >= (h+1)·|V|, find X inducing strictly
    more edges than vertices, |X| < 4·h·log2(n).

    Procedure: repeatedly delete low-degree vertices, single-loop vertices,
    cycle components and degree-2 chains of >= h vertices (all preserve the
    density bound); contract the surviving short chains to single edges,
    which leaves minimum degree 3; extract a dense subgraph there and
    re-expand the chains behind its edges.
    """
    if h < 1:
        raise ValueError("h must be a positive integer")
    n = g.vertex_count
    if h * len(g.edges) < (h + 1) * n:
        raise ValueError(
            f"density precondition fails: {h}*{len(g.edges)} < {h + 1}*{n}"
        )

    active = set(range(n))
    alive = set(range(len(g.edges)))

    def degree_of(v: int) -> int:
        d = 0
        for eid in alive:
            a, b = g.edges[eid]
            d += 2 if a == b == v else (a == v) + (b == v)
        return d

    def incident(v: int) -> list[int]:
        return [eid for eid in alive if v in g.edges[eid]]

    def loops_at(v: int) -> list[int]:
        return [eid for eid in alive if g.edges[eid] == (v, v)]

    def is_chain_vertex(v: int) -> bool:
        return degree_of(v) == 2 and not loops_at(v)

    def delete_vertices(vs: set[int]) -> None:
        for v in vs:
            active.discard(v)
        for eid in list(alive):
            a, b = g.edges[eid]
            if a in vs or b in vs:
                alive.discard(eid)

    changed = True
    while changed:
        changed = False
        for v in sorted(active):
            if degree_of(v) <= 1:
                delete_vertices({v})
                changed = True
                break
            if degree_of(v) == 2 and loops_at(v):
                delete_vertices({v})
                changed = True
                break
        if changed:
            continue
        # all degrees >= 2 now; hunt long chains and pure-cycle components
        chain_verts = {v for v in active if is_chain_vertex(v)}
        seen: set[int] = set()
        for v in sorted(chain_verts):
            if v in seen:
                continue
            comp, ends = _trace_chain(g, alive, chain_verts, v)
            seen |= set(comp)
            if ends is None or len(comp) >= h:
                delete_vertices(set(comp))
                changed = True
                break

    if not active:
        raise RuntimeError("internal: reduction emptied the graph")

    # contract surviving chains (each < h interior vertices) to single edges
    chain_verts = {v for v in active if is_chain_vertex(v)}
    core = sorted(active - chain_verts)
    idmap = {v: i for i, v in enumerate(core)}
    edges2: list[tuple[int, int]] = []
    interiors: list[list[int]] = []
    consumed: set[int] = set()
    seen = set()
    for v in sorted(chain_verts):
        if v in seen:
            continue
        comp, ends = _trace_chain(g, alive, chain_verts, v)
        assert ends is not None
        seen |= set(comp)
        (x, eids) = ends
        consumed |= set(eids)
        edges2.append((idmap[x[0]], idmap[x[1]]))
        interiors.append(comp)
    for eid in sorted(alive - consumed):
        a, b = g.edges[eid]
        if a in idmap and b in idmap:
            edges2.append((idmap[a], idmap[b]))
            interiors.append([])

    core_graph = Multigraph(vertex_count=len(core), edges=tuple(edges2))
    x_core = find_dense_subgraph_min_deg3(core_graph, 0)
    m = len(x_core)
    chosen = [
        i
        for i, (a, b) in enumerate(core_graph.edges)
        if a in x_core and b in x_core
    ]
    chosen.sort(key=lambda i: (core_graph.edges[i], i))
    chosen = chosen[: m + 1]

    x = {core[u] for u in x_core}
    for i in chosen:
        x.update(interiors[i])

    if induced_edge_count(g, x) <= len(x):
        raise RuntimeError("internal: expanded subgraph not dense")
    if n >= 2 and len(x) >= 4 * h * math.log2(n) - 1e-9:
        raise RuntimeError(f"internal: |X| = {len(x)} not below 4*{h}*log2({n})")
    return frozenset(x)


def _trace_chain(
    g: Multigraph,
    alive: set[int],
    chain_verts: set[int],
    start: int,
):
    """Walk the maximal degree-2 chain through `start`.

    Returns (component, ends) where component is the list of chain vertices
    and ends is ((x, y), edge_ids) for the two attachment endpoints and every
    edge on the chain, or None when the walk closes a pure cycle.
    """
    incidence: dict[int, list[int]] = {}
    for eid in alive:
        a, b = g.edges[eid]
        for v in (a, b):
            if v in chain_verts:
                incidence.setdefault(v, []).append(eid)

    comp = [start]
    ends: list[int] = []
    eids: set[int] = set()
    for direction in (0, 1):
        cur = start
        prev_eid = None
        while True:
            nxt = [e for e in incidence[cur] if e != prev_eid]
            if prev_eid is None:
                nxt = [incidence[cur][direction]]
            eid = nxt[0]
            eids.add(eid)
            a, b = g.edges[eid]
            other = b if a == cur else a
            if other not in chain_verts:
                ends.append(other)
                break
            if other == start:
                return comp, None  # closed a cycle of chain vertices
            comp.append(other)
            cur = other
            prev_eid = eid
    return comp, ((ends[0], ends[1]) if ends[0] <= ends[1] else (ends[1], ends[0]), eids)


def has_small_dense_subgraph(g: Multigraph, size_bound: int) -> bool:
    """Exhaustive reference check: does any X with |X| <= size_bound induce
    strictly more edges than vertices?  Guarded to small graphs."""
    n = g.vertex_count
    if n > EXHAUSTIVE_GUARD:
        raise CapExceededError(
            f"{n} vertices exceeds exhaustive guard {EXHAUSTIVE_GUARD}"
        )
    for size in range(1, min(size_bound, n) + 1):
        for subset in combinations(range(n), size):
            x = set(subset)
            if induced_edge_count(g, x) > size:
                return True
    return False
