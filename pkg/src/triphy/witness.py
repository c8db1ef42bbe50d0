"""Minimal obstruction analysis and character removal.

Witness submatrices are canonicalized over every relabeling (character
permutations crossed with per-character state permutations, rows sorted
and deduplicated) and classified by the largest chordless cycle of their
partition intersection graph: a two-color cycle, a forced four-cycle, or
one of the three five-cycle patterns distinguished by which cycle edges
share a witness state of the uniquely appearing character.

Incompatibility across a whole matrix is summarized as a hypergraph on
characters whose edges are the failing pairs and the minimally failing
triples; removing a minimum hitting set of that hypergraph is exactly
the character removal problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable

from . import decide, pig
from .chordal import largest_chordless_cycle
from .errors import EmptyMember, NotAnObstruction, SizeMismatch
from .matrix import CharacterMatrix, restrict

TWO_COLOR = "two_color_cycle"
FOUR_CYCLE_FORCED = "four_cycle_forced"
FIVE_CYCLE_CASE_I = "five_cycle_case_i"
FIVE_CYCLE_CASE_II = "five_cycle_case_ii"
FIVE_CYCLE_CASE_III = "five_cycle_case_iii"
UNCLASSIFIED = "unclassified"

PATTERN_KINDS = (
    TWO_COLOR,
    FOUR_CYCLE_FORCED,
    FIVE_CYCLE_CASE_I,
    FIVE_CYCLE_CASE_II,
    FIVE_CYCLE_CASE_III,
)


@dataclass(frozen=True)
class ObstructionPattern:
    kind: str
    canonical_rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ConflictHypergraph:
    """Characters as vertices; incompatible pairs and minimally
    incompatible triples as hyperedges."""

    vertices: tuple[int, ...]
    edges2: tuple[tuple[int, int], ...]
    edges3: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class HittingInstance:
    ground: tuple[int, ...]
    members: tuple[frozenset[int], ...]
    budget: int


@dataclass(frozen=True)
class HittingSolution:
    chosen: tuple[int, ...]


def canonical_rows(matrix: CharacterMatrix) -> tuple[tuple[int, ...], ...]:
    """Lexicographic minimum over all relabelings, rows sorted, duplicates
    dropped. Only meant for witness submatrices (m <= 3, r <= 3)."""
    m = matrix.char_count
    base = [tuple(row) for row in matrix.rows]
    state_ranges = [range(matrix.state_count(c)) for c in range(m)]
    best = None
    for char_perm in permutations(range(m)):
        cols = [matrix.column(char_perm[j]) for j in range(m)]
        r_per_col = [len(set(col)) for col in cols]
        for state_perm in product(*(permutations(range(r)) for r in r_per_col)):
            relabeled = sorted(
                {
                    tuple(state_perm[j][cols[j][t]] for j in range(m))
                    for t in range(len(base))
                }
            )
            candidate = tuple(relabeled)
            if best is None or candidate < best:
                best = candidate
    return best


def _is_compatible(matrix: CharacterMatrix) -> bool:
    active = [c for c in range(matrix.char_count) if matrix.state_count(c) >= 2]
    for i, j in combinations(active, 2):
        if not decide.pair_test(matrix, i, j):
            return False
    for i, j, k in combinations(active, 3):
        if not decide.triple_test(matrix, i, j, k).compatible:
            return False
    return True


def _five_cycle_case(matrix: CharacterMatrix, cycle) -> str:
    """Discriminate the five-cycle cases by the witness states of the
    uniquely appearing character on the three edges not incident to it."""
    colors = cycle.colors
    counts = {c: colors.count(c) for c in set(colors)}
    unique_chars = [c for c, n in counts.items() if n == 1]
    if len(unique_chars) != 1:
        return UNCLASSIFIED
    a = unique_chars[0]
    pos = colors.index(a)
    ring = cycle.vertices[pos:] + cycle.vertices[:pos]
    graph = pig.build(matrix)
    far_edges = [(ring[1], ring[2]), (ring[2], ring[3]), (ring[3], ring[4])]
    witness_states = []
    for u, v in far_edges:
        rows = graph.witnesses(graph.vertex_id(u), graph.vertex_id(v))
        witness_states.append({matrix.rows[t][a] for t in rows})
    w1, w2, w3 = witness_states
    if w1 & w2 & w3:
        return FIVE_CYCLE_CASE_III
    if w1 & w3:
        return FIVE_CYCLE_CASE_II
    if (w1 & w2) or (w2 & w3):
        return FIVE_CYCLE_CASE_I
    return UNCLASSIFIED


def classify(submatrix: CharacterMatrix) -> ObstructionPattern:
    """Classify a failing witness submatrix into the obstruction catalog.

    The pattern kind is computed on the canonical form, so the result is
    invariant under relabeling and idempotent.
    """
    if submatrix.char_count > 3:
        raise SizeMismatch("obstruction witnesses have at most 3 characters")
    if submatrix.max_states > 3:
        raise SizeMismatch("obstruction witnesses have at most 3 states per character")
    canon_rows = canonical_rows(submatrix)
    # construct verbatim: canonical rows are dense as sets but not
    # necessarily in first-appearance order, which from_rows would impose
    canon = CharacterMatrix(
        rows=canon_rows,
        state_tokens=tuple(
            tuple(str(s) for s in range(len({row[c] for row in canon_rows})))
            for c in range(len(canon_rows[0]))
        ),
    )
    if _is_compatible(canon):
        raise NotAnObstruction("submatrix admits a perfect phylogeny")

    active = [c for c in range(canon.char_count) if canon.state_count(c) >= 2]
    for i, j in combinations(active, 2):
        if not decide.pair_test(canon, i, j):
            return ObstructionPattern(kind=TWO_COLOR, canonical_rows=canon_rows)

    cycle = largest_chordless_cycle(pig.build(canon))
    if cycle is None:
        return ObstructionPattern(kind=UNCLASSIFIED, canonical_rows=canon_rows)
    if len(cycle) == 4:
        return ObstructionPattern(kind=FOUR_CYCLE_FORCED, canonical_rows=canon_rows)
    if len(cycle) == 5:
        return ObstructionPattern(
            kind=_five_cycle_case(canon, cycle), canonical_rows=canon_rows
        )
    return ObstructionPattern(kind=UNCLASSIFIED, canonical_rows=canon_rows)


def conflict_hypergraph(matrix: CharacterMatrix) -> ConflictHypergraph:
    """Failing pairs (E2) and minimally failing triples (E3): triples whose
    three sub-pairs all pass. No hyperedge contains another."""
    decide._require_states(matrix, range(matrix.char_count))
    active = decide._active_characters(matrix)
    edges2 = [
        (i, j) for i, j in combinations(active, 2) if not decide.pair_test(matrix, i, j)
    ]
    bad_pairs = set(edges2)
    edges3 = []
    for i, j, k in combinations(active, 3):
        if {(i, j), (i, k), (j, k)} & bad_pairs:
            continue
        if not decide.triple_test(matrix, i, j, k).compatible:
            edges3.append((i, j, k))
    for triple in edges3:
        if any(set(pair) <= set(triple) for pair in edges2):
            raise SizeMismatch("conflict hypergraph is not an antichain")
    return ConflictHypergraph(
        vertices=tuple(range(matrix.char_count)),
        edges2=tuple(edges2),
        edges3=tuple(edges3),
    )


def hypergraph_json(graph: ConflictHypergraph) -> dict:
    return {
        "vertices": list(graph.vertices),
        "edges2": [list(e) for e in graph.edges2],
        "edges3": [list(e) for e in graph.edges3],
    }


def hit3(instance: HittingInstance) -> HittingSolution | None:
    """Minimum hitting set of a family of <=3-element subsets, if one of
    size at most the budget exists; ties broken lexicographically.

    Depth-bounded branching on the elements of an unhit member, with
    singleton forcing and superset pruning.
    """
    ground = set(instance.ground)
    members = []
    for member in instance.members:
        fs = frozenset(member)
        if not fs:
            raise EmptyMember("hitting set members must be non-empty")
        if len(fs) > 3:
            raise SizeMismatch(f"member {sorted(fs)} has more than 3 elements")
        if not fs <= ground:
            raise SizeMismatch(f"member {sorted(fs)} not within the ground set")
        members.append(fs)
    members = sorted(set(members), key=sorted)
    members = [
        m for m in members if not any(other < m for other in members if other != m)
    ]
    if instance.budget < 0:
        raise SizeMismatch("budget must be non-negative")

    def search(unhit: list[frozenset[int]], chosen: set[int], depth: int, found: set):
        while True:
            singles = [m for m in unhit if len(m) == 1]
            if not singles:
                break
            forced = {next(iter(m)) for m in singles}
            if len(chosen) + len(forced) > depth:
                return
            chosen = chosen | forced
            unhit = [m for m in unhit if not m & forced]
        if not unhit:
            found.add(frozenset(chosen))
            return
        if len(chosen) >= depth:
            return
        member = min(unhit, key=sorted)
        for x in sorted(member):
            search(
                [m for m in unhit if x not in m],
                chosen | {x},
                depth,
                found,
            )

    for size in range(instance.budget + 1):
        found: set = set()
        search(members, set(), size, found)
        if found:
            best = min(found, key=lambda s: (len(s), sorted(s)))
            return HittingSolution(chosen=tuple(sorted(best)))
    return None


def character_removal(matrix: CharacterMatrix, k: int) -> tuple[int, ...] | None:
    """Smallest set of at most k characters whose removal leaves a matrix
    with a perfect phylogeny, or None if k characters do not suffice."""
    hypergraph = conflict_hypergraph(matrix)
    members = tuple(
        frozenset(e) for e in list(hypergraph.edges2) + list(hypergraph.edges3)
    )
    instance = HittingInstance(
        ground=hypergraph.vertices, members=members, budget=k
    )
    solution = hit3(instance)
    if solution is None:
        return None
    return solution.chosen


def removal_complement(matrix: CharacterMatrix, removed: Iterable[int]) -> CharacterMatrix:
    """Restriction of the matrix to the characters not removed."""
    removed = set(removed)
    keep = [c for c in range(matrix.char_count) if c not in removed]
    return restrict(matrix, keep)
