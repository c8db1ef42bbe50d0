"""Brute-force perfect phylogeny decision by proper-triangulation search.

Independent of the three-state pipeline and valid for any number of
states: branch over every legal chord of the shortest chordless cycle,
prune branches whose cycle admits no legal chord, and memoize visited
fill-edge sets. Exponential by design; size-gated and budgeted so it
reports TooLarge rather than answering wrong.
"""

from __future__ import annotations

from collections import OrderedDict

from . import pig
from .chordal import _check_cycle, _is_chordal, _shortest_chordless_cycle
from .errors import InternalContradiction, TooLarge
from .matrix import CharacterMatrix

VERTEX_BOUND = 25
DEFAULT_NODE_BUDGET = 500_000
DEFAULT_MEMO_BUDGET = 200_000


def brute_pp(
    matrix: CharacterMatrix,
    max_vertices: int = VERTEX_BOUND,
    node_budget: int = DEFAULT_NODE_BUDGET,
    memo_budget: int = DEFAULT_MEMO_BUDGET,
) -> bool:
    """True iff the partition intersection graph has a proper triangulation,
    equivalently iff the matrix admits a perfect phylogeny."""
    graph = pig.build(matrix)
    n = graph.vertex_count
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds oracle bound {max_vertices}")
    colors = graph.colors
    adj = [set(s) for s in graph.adjacency]

    memo: OrderedDict[frozenset, None] = OrderedDict()
    expanded = 0

    def search(fill: frozenset) -> bool:
        nonlocal expanded
        if fill in memo:
            memo.move_to_end(fill)
            return False
        memo[fill] = None
        if len(memo) > memo_budget:
            memo.popitem(last=False)
        expanded += 1
        if expanded > node_budget:
            raise TooLarge(
                f"oracle search budget exhausted after {expanded} states "
                f"({n} vertices, {len(fill)} chords deep)"
            )
        ids = _shortest_chordless_cycle(adj)
        if ids is None:
            # self-check the final supergraph before reporting success
            if not _is_chordal(adj):
                raise InternalContradiction("oracle search reached a non-chordal leaf")
            if any(
                colors[u] == colors[v] for u, v in fill
            ):
                raise InternalContradiction("oracle added a monochromatic chord")
            return True
        _check_cycle(adj, ids)
        k = len(ids)
        chords = sorted(
            (min(ids[a], ids[b]), max(ids[a], ids[b]))
            for a in range(k)
            for b in range(a + 2, k)
            if not (a == 0 and b == k - 1)
            if colors[ids[a]] != colors[ids[b]]
        )
        for u, v in chords:
            adj[u].add(v)
            adj[v].add(u)
            hit = search(fill | {(u, v)})
            adj[u].discard(v)
            adj[v].discard(u)
            if hit:
                return True
        return False

    return search(frozenset())
