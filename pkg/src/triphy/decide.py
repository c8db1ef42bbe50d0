"""Decision pipeline for perfect phylogeny on at-most-three-state data.

The test is hierarchical: pairs of characters must induce acyclic
partition intersection graphs; triples must triangulate through a loop
that only ever fills four-cycles carrying two uniquely colored
nonadjacent vertices; and the whole graph, after collecting every forced
triple chord (F-edges) and chording the remaining four-color chordless
four-cycles (F'-edges), must come out chordal. A failure at the pair or
triple stage yields a witness subset of at most three characters; success
yields an explicit tree.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import pig
from .chordal import (
    SEPARATOR_VERTEX_BOUND,
    Cycle,
    _cycles_of_length,
    _is_chordal,
    _iter_minimal_separators_ids,
    _shortest_chordless_cycle,
    find_chordless_cycle,
    is_legal_separator,
)
from .errors import (
    InternalContradiction,
    NonterminatingFill,
    StateBound,
    TooLarge,
)
from .matrix import CharacterMatrix, restrict
from .pig import ColoredGraph, Vertex
from .tree import PhyloTree, build_tree, verify_tree

TWO_COLOR_CYCLE = "two_color_cycle"
THREE_STATES_ON_CYCLE = "three_states_on_cycle"
FIVE_CYCLE = "five_cycle"
BAD_FOUR_CYCLE = "bad_four_cycle"

TREE = "tree"
WITNESS = "witness"


@dataclass(frozen=True)
class TripleOutcome:
    """Result of triangulating one character triple.

    Compatible outcomes carry the chords forced while filling; otherwise
    ``reason`` names the violated structure and ``cycle`` is the
    offending chordless cycle (``pair`` identifies the two characters of
    a two-color cycle).
    """

    compatible: bool
    f_edges: tuple[tuple[Vertex, Vertex], ...] = ()
    reason: str | None = None
    cycle: Cycle | None = None
    pair: tuple[int, int] | None = None


@dataclass(frozen=True)
class Verdict:
    """Either a perfect phylogeny with its triangulated graph, or a
    witness subset of at most three characters with its classified
    obstruction pattern."""

    kind: str
    tree: PhyloTree | None = None
    graph: ColoredGraph | None = None
    f_edges: tuple[tuple[Vertex, Vertex], ...] = ()
    fprime_edges: tuple[tuple[Vertex, Vertex], ...] = ()
    witness: tuple[int, ...] | None = None
    pattern: object | None = None

    @property
    def is_tree(self) -> bool:
        return self.kind == TREE


def _require_states(matrix: CharacterMatrix, chars) -> None:
    for c in chars:
        if matrix.state_count(c) > 3:
            raise StateBound(
                f"character {c} has {matrix.state_count(c)} states; the test covers r <= 3"
            )


def _is_forest(graph: ColoredGraph) -> bool:
    n = graph.vertex_count
    edges = len(graph.edge_tags)
    seen = [False] * n
    components = 0
    for s in range(n):
        if seen[s]:
            continue
        components += 1
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            for w in graph.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return edges == n - components


def pair_test(matrix: CharacterMatrix, i: int, j: int) -> bool:
    """True iff the partition intersection graph of characters i, j is
    acyclic; for binary characters this is exactly the four-gamete test."""
    _require_states(matrix, (i, j))
    return _is_forest(pig.build(matrix, (i, j)))


def pair_cycle(matrix: CharacterMatrix, i: int, j: int) -> Cycle | None:
    """A chordless cycle witnessing a pair failure, None if the pair passes."""
    return find_chordless_cycle(pig.build(matrix, (i, j)))


def _qualifying_positions(colors, ids: tuple[int, ...]) -> tuple[int, int] | None:
    """Positions of the two uniquely colored, nonadjacent vertices of a
    fillable four-cycle, or None if the cycle does not qualify."""
    counts: dict[int, int] = {}
    for v in ids:
        counts[colors[v]] = counts.get(colors[v], 0) + 1
    unique = [t for t, v in enumerate(ids) if counts[colors[v]] == 1]
    if len(unique) == 2 and unique[1] - unique[0] == 2:
        return unique[0], unique[1]
    return None


def _unique_chord(adj, colors, ids: tuple[int, ...]) -> tuple[int, int]:
    pos = _qualifying_positions(colors, ids)
    if pos is None:
        raise InternalContradiction(f"cycle {ids} has no unique legal chord")
    return ids[pos[0]], ids[pos[1]]


def _triple_scan(adj, colors) -> tuple[str, tuple[int, ...] | None]:
    """One triangulation step: every chordless cycle must be a four-cycle
    with two uniquely colored nonadjacent vertices.

    Returns ("bad", cycle) for the smallest cycle violating that shape,
    ("fill", cycle) for the smallest fillable four-cycle when no cycle
    violates it, or ("done", None) when the graph is chordal.
    """
    fill = None
    for length in range(4, len(adj) + 1):
        cycles = sorted(_cycles_of_length(adj, length))
        if length == 4:
            for ids in cycles:
                if _qualifying_positions(colors, ids) is None:
                    return "bad", ids
                if fill is None:
                    fill = ids
        elif cycles:
            return "bad", cycles[0]
    if fill is not None:
        return "fill", fill
    return "done", None


def _classify_bad_cycle(
    colors: tuple[int, ...], state_counts, ids: tuple[int, ...], graph: ColoredGraph
) -> tuple[str, tuple[int, int] | None]:
    cycle_colors = [colors[v] for v in ids]
    distinct = sorted(set(cycle_colors))
    if len(distinct) == 2:
        return TWO_COLOR_CYCLE, (distinct[0], distinct[1])
    for c in distinct:
        states_on_cycle = {graph.vertices[v][1] for v in ids if colors[v] == c}
        if len(states_on_cycle) == state_counts[c] == 3:
            return THREE_STATES_ON_CYCLE, None
    if len(ids) >= 5:
        return FIVE_CYCLE, None
    return BAD_FOUR_CYCLE, None


def triple_test(
    matrix: CharacterMatrix,
    i: int,
    j: int,
    k: int,
    trace: list | None = None,
) -> TripleOutcome:
    """Triangulate the graph of characters {i, j, k} by repeatedly filling
    chordless cycles.

    Only a four-cycle with exactly two uniquely colored, nonadjacent
    vertices admits a legal chord, and that chord is unique; any other
    chordless cycle proves the triple incompatible. A failing pair
    short-circuits with the two-color cycle as evidence.
    """
    chars = (i, j, k)
    _require_states(matrix, chars)
    for a, b in combinations(chars, 2):
        if not pair_test(matrix, a, b):
            cyc = pair_cycle(matrix, a, b)
            if trace is not None:
                trace.append(("triple", chars, cyc, TWO_COLOR_CYCLE))
            return TripleOutcome(
                compatible=False,
                reason=TWO_COLOR_CYCLE,
                cycle=cyc,
                pair=(a, b) if a < b else (b, a),
            )

    graph = pig.build(matrix, chars)
    colors = graph.colors
    state_counts = {c: matrix.state_count(c) for c in chars}
    adj = [set(s) for s in graph.adjacency]
    legal_nonedges = sum(
        1
        for u in range(len(adj))
        for v in range(u + 1, len(adj))
        if colors[u] != colors[v] and v not in adj[u]
    )
    chords: list[tuple[Vertex, Vertex]] = []
    for _ in range(legal_nonedges + 1):
        kind, ids = _triple_scan(adj, colors)
        if kind == "done":
            return TripleOutcome(compatible=True, f_edges=tuple(chords))
        cyc = Cycle(vertices=tuple(graph.vertices[v] for v in ids))
        if kind == "fill":
            u, v = _unique_chord(adj, colors, ids)
            adj[u].add(v)
            adj[v].add(u)
            chords.append((graph.vertices[u], graph.vertices[v]))
            if trace is not None:
                trace.append(("triple", chars, cyc, "fill"))
            continue
        reason, bad_pair = _classify_bad_cycle(colors, state_counts, ids, graph)
        if trace is not None:
            trace.append(("triple", chars, cyc, reason))
        return TripleOutcome(compatible=False, reason=reason, cycle=cyc, pair=bad_pair)
    raise NonterminatingFill(
        f"triple {chars} exceeded {legal_nonedges} fill iterations"
    )


def _active_characters(matrix: CharacterMatrix) -> list[int]:
    # single-state characters are vacuously compatible with everything
    return [c for c in range(matrix.char_count) if matrix.state_count(c) >= 2]


def _witness_verdict(matrix: CharacterMatrix, subset: tuple[int, ...]) -> Verdict:
    from . import witness as witness_mod

    pattern = witness_mod.classify(restrict(matrix, subset))
    return Verdict(kind=WITNESS, witness=subset, pattern=pattern)


def full_test(
    matrix: CharacterMatrix, threads: int = 1, trace: list | None = None
) -> Verdict:
    """Decide perfect phylogeny existence for the whole matrix.

    Pairs are tested before triples and subsets are scanned in
    lexicographic order, so the reported witness is the smallest failing
    subset regardless of how the subset tests are scheduled.
    """
    _require_states(matrix, range(matrix.char_count))
    if trace is not None:
        threads = 1
    active = _active_characters(matrix)

    pairs = list(combinations(active, 2))
    if threads > 1 and pairs:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: pair_test(matrix, *p), pairs))
        for subset, ok in zip(pairs, results):
            if not ok:
                return _witness_verdict(matrix, subset)
    else:
        for subset in pairs:
            if not pair_test(matrix, *subset):
                return _witness_verdict(matrix, subset)

    triples = list(combinations(active, 3))
    outcomes: list[TripleOutcome] = []
    if threads > 1 and triples:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda t: triple_test(matrix, *t), triples))
        for subset, outcome in zip(triples, outcomes):
            if not outcome.compatible:
                return _witness_verdict(matrix, subset)
    else:
        for subset in triples:
            outcome = triple_test(matrix, *subset, trace=trace)
            if not outcome.compatible:
                return _witness_verdict(matrix, subset)
            outcomes.append(outcome)

    graph = pig.build(matrix)
    adj = [set(s) for s in graph.adjacency]
    colors = graph.colors

    f_pairs: list[tuple[int, int]] = []
    seen_f = set()
    for outcome in outcomes:
        for u, v in outcome.f_edges:
            ui, vi = graph.vertex_id(u), graph.vertex_id(v)
            key = (ui, vi) if ui < vi else (vi, ui)
            if key in seen_f:
                continue
            if key in graph.edge_tags:
                raise InternalContradiction(f"forced chord {u}-{v} is already an E-edge")
            seen_f.add(key)
            f_pairs.append(key)
            adj[key[0]].add(key[1])
            adj[key[1]].add(key[0])

    # remaining chordless cycles must be E-cycles of length four on four
    # distinct colors; chord both nonadjacent pairs atomically
    fprime_pairs: list[tuple[int, int]] = []
    while True:
        ids = _shortest_chordless_cycle(adj)
        if ids is None:
            break
        cyc = Cycle(vertices=tuple(graph.vertices[v] for v in ids))
        edge_ids = [
            (ids[t], ids[(t + 1) % len(ids)]) for t in range(len(ids))
        ]
        for a, b in edge_ids:
            key = (a, b) if a < b else (b, a)
            if key not in graph.edge_tags:
                raise InternalContradiction(
                    f"chordless cycle {cyc.vertices} uses a non-E edge after triple fills"
                )
        if len(ids) != 4 or len({colors[v] for v in ids}) != 4:
            raise InternalContradiction(
                f"chordless E-cycle {cyc.vertices} is not a four-color four-cycle"
            )
        if trace is not None:
            trace.append(("fprime", None, cyc, "fill"))
        for a, b in ((ids[0], ids[2]), (ids[1], ids[3])):
            key = (a, b) if a < b else (b, a)
            fprime_pairs.append(key)
            adj[a].add(b)
            adj[b].add(a)

    if not _is_chordal(adj):
        raise InternalContradiction("triangulated graph failed the chordality recheck")

    def as_vertices(key):
        return graph.vertices[key[0]], graph.vertices[key[1]]

    f_edges = tuple(as_vertices(k) for k in sorted(f_pairs))
    fprime_edges = tuple(as_vertices(k) for k in sorted(fprime_pairs))
    filled = graph
    if f_edges:
        filled = filled.add_fill_edges(f_edges, pig.F_EDGE)
    if fprime_edges:
        filled = filled.add_fill_edges(fprime_edges, pig.FPRIME_EDGE)
    if not filled.is_proper():
        raise InternalContradiction("triangulated graph failed the properness recheck")

    phylo = build_tree(filled, matrix)
    if not verify_tree(phylo, matrix):
        raise InternalContradiction("constructed tree failed verification")
    return Verdict(
        kind=TREE,
        tree=phylo,
        graph=filled,
        f_edges=f_edges,
        fprime_edges=fprime_edges,
    )


def separator_check(
    matrix: CharacterMatrix, max_vertices: int = SEPARATOR_VERTEX_BOUND
) -> bool:
    """Cross-check: a perfect phylogeny exists iff every character pair is
    acyclic and every monochromatic vertex pair has a legal minimal
    separator. Size-gated; raises TooLarge beyond the bound."""
    _require_states(matrix, range(matrix.char_count))
    graph = pig.build(matrix)
    if graph.vertex_count > max_vertices:
        raise TooLarge(
            f"{graph.vertex_count} vertices exceeds separator bound {max_vertices}"
        )
    for i, j in combinations(_active_characters(matrix), 2):
        if not pair_test(matrix, i, j):
            return False
    adj = graph.adjacency
    for c in range(matrix.char_count):
        for s, t in combinations(range(matrix.state_count(c)), 2):
            u = graph.vertex_id((c, s))
            v = graph.vertex_id((c, t))
            found = False
            for sep in _iter_minimal_separators_ids(adj, u, v):
                if is_legal_separator(graph.vertices[x] for x in sep):
                    found = True
                    break
            if not found:
                return False
    return True
