"""Colored-graph toolkit: chordality, chordless cycles, minimal separators.

All searches are deterministic. Vertices are ranked by their position in
the graph's sorted vertex order; maximum-cardinality search breaks ties
toward the lowest id, and cycle searches report the shortest chordless
cycle, lexicographically smallest in canonical orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InternalContradiction, TooLarge
from .pig import ColoredGraph, Vertex

LARGEST_CYCLE_VERTEX_BOUND = 12
SEPARATOR_VERTEX_BOUND = 15

Adjacency = Sequence[frozenset[int]]


@dataclass(frozen=True)
class Cycle:
    """A chordless cycle, closed implicitly, in canonical orientation."""

    vertices: tuple[Vertex, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.vertices)


@dataclass(frozen=True)
class Separator:
    """A minimal vertex separator for the (u, v) pair it was computed for."""

    vertices: frozenset[Vertex]
    pair: tuple[Vertex, Vertex]


# -- maximum-cardinality search ------------------------------------------


def _mcs_order(adj: Adjacency) -> list[int]:
    """Visit order of maximum-cardinality search, ties to the lowest id."""
    n = len(adj)
    weight = [0] * n
    visited = [False] * n
    order = []
    for _ in range(n):
        best = -1
        for v in range(n):
            if not visited[v] and (best == -1 or weight[v] > weight[best]):
                best = v
        order.append(best)
        visited[best] = True
        for w in adj[best]:
            if not visited[w]:
                weight[w] += 1
    return order


def _is_chordal(adj: Adjacency) -> bool:
    """Chordal iff the reverse MCS order is a perfect elimination ordering,
    i.e. every vertex's earlier-visited neighbors form a clique."""
    order = _mcs_order(adj)
    pos = [0] * len(adj)
    for i, v in enumerate(order):
        pos[v] = i
    for i, v in enumerate(order):
        earlier = [w for w in adj[v] if pos[w] < i]
        for a in range(len(earlier)):
            for b in range(a + 1, len(earlier)):
                if earlier[b] not in adj[earlier[a]]:
                    return False
    return True


def is_chordal(graph: ColoredGraph) -> bool:
    """True iff the graph (all edge tags unified) has no chordless cycle."""
    return _is_chordal(graph.adjacency)


# -- chordless cycle search ------------------------------------------------


def _cycles_of_length(adj: Adjacency, length: int) -> Iterator[tuple[int, ...]]:
    """All chordless cycles of exactly ``length`` vertices, each reported
    once: smallest vertex first, second vertex smaller than last."""
    n = len(adj)
    for start in range(n):
        path = [start]
        in_path = {start}

        def extend() -> Iterator[tuple[int, ...]]:
            last = path[-1]
            if len(path) == length - 1:
                for w in sorted(adj[last]):
                    if w <= start or w in in_path or start not in adj[w]:
                        continue
                    if path[1] >= w:
                        continue
                    if any(w in adj[p] for p in path[1:-1]):
                        continue
                    yield tuple(path) + (w,)
                return
            for w in sorted(adj[last]):
                if w <= start or w in in_path:
                    continue
                # only the closing vertex may touch the start; interior
                # vertices may touch nothing on the path but their parent
                if len(path) >= 2 and start in adj[w]:
                    continue
                if any(w in adj[p] for p in path[1:-1]):
                    continue
                path.append(w)
                in_path.add(w)
                yield from extend()
                path.pop()
                in_path.remove(w)

        yield from extend()


def _shortest_chordless_cycle(adj: Adjacency) -> tuple[int, ...] | None:
    for length in range(4, len(adj) + 1):
        found = list(_cycles_of_length(adj, length))
        if found:
            return min(found)
    return None


def _check_cycle(adj: Adjacency, cycle: Sequence[int]):
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        raise InternalContradiction(f"malformed cycle {cycle}")
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = cycle[j] in adj[cycle[i]]
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                raise InternalContradiction(
                    f"cycle {cycle} violates chordlessness at ({cycle[i]}, {cycle[j]})"
                )


def _as_cycle(graph: ColoredGraph, ids: Sequence[int]) -> Cycle:
    return Cycle(vertices=tuple(graph.vertices[i] for i in ids))


def find_chordless_cycle(graph: ColoredGraph) -> Cycle | None:
    """Some chordless cycle of length >= 4, or None if the graph is chordal.

    The result is the shortest such cycle, tie-broken lexicographically,
    and is rechecked against the adjacency before being returned.
    """
    ids = _shortest_chordless_cycle(graph.adjacency)
    if ids is None:
        return None
    _check_cycle(graph.adjacency, ids)
    return _as_cycle(graph, ids)


def largest_chordless_cycle(
    graph: ColoredGraph, max_vertices: int = LARGEST_CYCLE_VERTEX_BOUND
) -> Cycle | None:
    """A maximum-length chordless cycle by exhaustive enumeration.

    Only intended for small graphs (three-character subgraphs); refuses
    inputs above ``max_vertices``.
    """
    n = graph.vertex_count
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds bound {max_vertices}")
    for length in range(n, 3, -1):
        found = list(_cycles_of_length(graph.adjacency, length))
        if found:
            ids = min(found)
            _check_cycle(graph.adjacency, ids)
            return _as_cycle(graph, ids)
    return None


# -- minimal separators -----------------------------------------------------


def _component_of(adj: Adjacency, source: int, removed: frozenset[int]) -> frozenset[int]:
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def _neighborhood(adj: Adjacency, group: Iterable[int]) -> frozenset[int]:
    group = set(group)
    out = set()
    for v in group:
        out |= adj[v]
    return frozenset(out - group)


def _connected_sets(adj: Adjacency, source: int, forbidden: frozenset[int]) -> Iterator[frozenset[int]]:
    """All connected vertex sets containing ``source`` and avoiding
    ``forbidden``, each exactly once (include/exclude frontier expansion)."""

    def rec(component: set[int], excluded: set[int]) -> Iterator[frozenset[int]]:
        frontier = _neighborhood(adj, component) - excluded - forbidden
        if not frontier:
            yield frozenset(component)
            return
        w = min(frontier)
        component.add(w)
        yield from rec(component, excluded)
        component.remove(w)
        excluded.add(w)
        yield from rec(component, excluded)
        excluded.remove(w)

    yield from rec({source}, set())


def _iter_minimal_separators_ids(
    adj: Adjacency, u: int, v: int
) -> Iterator[frozenset[int]]:
    """All minimal u,v-separators, deduplicated, in search order.

    Every minimal separator S equals the close neighborhood N(C) of the
    component C of u in G - S, so expanding connected sets around u and
    keeping the neighborhoods that are also full on the v side is a
    complete enumeration.
    """
    if v in adj[u]:
        return
    forbidden = frozenset({v}) | adj[v]
    seen = set()
    for comp in _connected_sets(adj, u, forbidden):
        sep = _neighborhood(adj, comp)
        if sep in seen:
            continue
        seen.add(sep)
        comp_v = _component_of(adj, v, sep)
        if _neighborhood(adj, comp_v) == sep:
            yield sep


def minimal_separators_between(
    graph: ColoredGraph,
    u: Vertex,
    v: Vertex,
    max_vertices: int = SEPARATOR_VERTEX_BOUND,
) -> list[Separator]:
    """All minimal u,v-separators, sorted; empty for adjacent pairs."""
    if graph.vertex_count > max_vertices:
        raise TooLarge(
            f"{graph.vertex_count} vertices exceeds separator bound {max_vertices}"
        )
    ui, vi = graph.vertex_id(u), graph.vertex_id(v)
    seps = sorted(
        _iter_minimal_separators_ids(graph.adjacency, ui, vi), key=sorted
    )
    return [
        Separator(
            vertices=frozenset(graph.vertices[i] for i in sep),
            pair=(u, v),
        )
        for sep in seps
    ]


def minimal_separators(
    graph: ColoredGraph, max_vertices: int = SEPARATOR_VERTEX_BOUND
) -> list[Separator]:
    """Minimal separators for every non-adjacent vertex pair."""
    if graph.vertex_count > max_vertices:
        raise TooLarge(
            f"{graph.vertex_count} vertices exceeds separator bound {max_vertices}"
        )
    out = []
    for ui in range(graph.vertex_count):
        for vi in range(ui + 1, graph.vertex_count):
            if graph.has_edge(ui, vi):
                continue
            out.extend(
                minimal_separators_between(
                    graph, graph.vertices[ui], graph.vertices[vi], max_vertices
                )
            )
    return out


def is_legal_separator(sep: Separator | Iterable[Vertex]) -> bool:
    """True iff no two separator vertices are states of the same character."""
    vertices = sep.vertices if isinstance(sep, Separator) else tuple(sep)
    chars = [c for c, _ in vertices]
    return len(chars) == len(set(chars))
