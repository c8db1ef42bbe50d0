import itertools
import random

import pytest

from conftest import CASE_I_ROWS, CASE_III_ROWS, CHORDLESS4_ROWS
from triphy import (
    build_pig,
    colored_graph,
    find_chordless_cycle,
    from_rows,
    is_chordal,
    is_legal_separator,
    largest_chordless_cycle,
    minimal_separators,
    minimal_separators_between,
    parse_matrix,
)
from triphy.chordal import Separator
from triphy.errors import TooLarge


def ring(n):
    """Cycle graph on n vertices, one color per vertex."""
    vertices = [(i, 0) for i in range(n)]
    edges = [((i, 0), ((i + 1) % n, 0)) for i in range(n)]
    return colored_graph(vertices, e_edges=edges)


# -- independent oracles ------------------------------------------------------


def brute_chordless_cycles(graph):
    """Every induced cycle of length >= 4 via subset enumeration."""
    n = graph.vertex_count
    adj = graph.adjacency
    found = []
    for size in range(4, n + 1):
        for subset in itertools.combinations(range(n), size):
            degrees = [len(adj[v] & set(subset)) for v in subset]
            if any(d != 2 for d in degrees):
                continue
            seen = {subset[0]}
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w in subset and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                found.append(frozenset(subset))
    return found


def brute_minimal_separators(graph, u, v):
    """Subset enumeration: S separates u from v and no proper subset does."""
    adj = graph.adjacency
    ui, vi = graph.vertex_id(u), graph.vertex_id(v)

    def disconnected(removed):
        if ui in removed or vi in removed:
            return False
        seen = {ui}
        stack = [ui]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in removed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return vi not in seen

    others = [x for x in range(graph.vertex_count) if x not in (ui, vi)]
    out = []
    for size in range(len(others) + 1):
        for subset in itertools.combinations(others, size):
            s = frozenset(subset)
            if not disconnected(s):
                continue
            if any(disconnected(s - {x}) for x in s):
                continue
            out.append(frozenset(graph.vertices[x] for x in s))
    return out


def random_colored_graphs(seed, count, max_vertices=12):
    """Arbitrary graphs, one color per vertex so every edge is legal."""
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        n = rng.randint(1, max_vertices)
        vertices = [(i, 0) for i in range(n)]
        edges = [
            ((i, 0), (j, 0))
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < rng.choice((0.15, 0.3, 0.5))
        ]
        graphs.append(colored_graph(vertices, e_edges=edges))
    return graphs


# -- chordality ---------------------------------------------------------------


def test_triangle_is_chordal():
    g = colored_graph(
        vertices=[(0, 0), (1, 0), (2, 0)],
        e_edges=[((0, 0), (1, 0)), ((1, 0), (2, 0)), ((0, 0), (2, 0))],
    )
    assert is_chordal(g)


def test_four_cycle_not_chordal():
    g = build_pig(parse_matrix("0,0\n0,1\n1,0\n1,1"))
    assert not is_chordal(g)


def test_fan_triangulated_c5():
    g = ring(5)
    g = g.add_fill_edge((0, 0), (2, 0), "F").add_fill_edge((0, 0), (3, 0), "F")
    assert is_chordal(g)


def test_chordality_matches_brute_force():
    for g in random_colored_graphs(5150, 150):
        holes = brute_chordless_cycles(g)
        assert is_chordal(g) == (not holes)
        assert (find_chordless_cycle(g) is None) == (not holes)


# -- chordless cycle search ---------------------------------------------------


def test_find_cycle_on_chordal_graph():
    g = colored_graph(vertices=[(0, 0), (1, 0)], e_edges=[((0, 0), (1, 0))])
    assert find_chordless_cycle(g) is None
    assert largest_chordless_cycle(g) is None


def test_find_cycle_four_gametes():
    g = build_pig(parse_matrix("0,0\n0,1\n1,0\n1,1"))
    cycle = find_chordless_cycle(g)
    assert len(cycle) == 4
    assert set(cycle.colors) == {0, 1}
    assert largest_chordless_cycle(g).vertices == cycle.vertices


def test_find_cycle_reports_shortest_lex_smallest():
    for g in random_colored_graphs(777, 120):
        cycle = find_chordless_cycle(g)
        holes = brute_chordless_cycles(g)
        if cycle is None:
            assert not holes
            continue
        shortest = min(len(h) for h in holes)
        assert len(cycle) == shortest
        assert frozenset(g.vertex_id(v) for v in cycle.vertices) in holes


def test_find_cycle_four_distinct_colors_instance():
    g = build_pig(from_rows(CHORDLESS4_ROWS))
    cycle = find_chordless_cycle(g)
    assert len(cycle) == 4
    assert len(set(cycle.colors)) == 4


def test_largest_cycle_case_iii_is_five():
    g = build_pig(from_rows(CASE_III_ROWS))
    assert len(largest_chordless_cycle(g)) == 5


def test_largest_cycle_matches_brute_force():
    for g in random_colored_graphs(31337, 100, max_vertices=9):
        holes = brute_chordless_cycles(g)
        largest = largest_chordless_cycle(g)
        if largest is None:
            assert not holes
        else:
            assert len(largest) == max(len(h) for h in holes)


def test_largest_cycle_size_gate():
    g = ring(13)
    with pytest.raises(TooLarge):
        largest_chordless_cycle(g)
    assert len(largest_chordless_cycle(g, max_vertices=13)) == 13


# -- minimal separators -------------------------------------------------------


def test_separator_path():
    g = build_pig(from_rows([(0, 0), (1, 0)]))  # path a0 - b0 - a1
    seps = minimal_separators_between(g, (0, 0), (0, 1))
    assert [sorted(s.vertices) for s in seps] == [[(1, 0)]]
    assert is_legal_separator(seps[0])


def test_separator_four_cycle():
    g = build_pig(parse_matrix("0,0\n0,1\n1,0\n1,1"))
    seps = minimal_separators_between(g, (0, 0), (0, 1))
    assert [sorted(s.vertices) for s in seps] == [[(1, 0), (1, 1)]]
    assert not is_legal_separator(seps[0])  # two states of character 1


def test_separator_disconnected_pair_is_empty_set():
    g = build_pig(from_rows([(0, 0), (1, 1)]))
    seps = minimal_separators_between(g, (0, 0), (0, 1))
    assert [set(s.vertices) for s in seps] == [set()]
    assert is_legal_separator(seps[0])


def test_first_obstruction_all_separators_illegal():
    # monochromatic pair of the five-cycle obstruction: every minimal
    # separator picks up two states of one character
    m = from_rows(CASE_I_ROWS)
    g = build_pig(m)
    # original labels c0, c1 densify to states 1, 2 of character 2
    seps = minimal_separators_between(g, (2, 1), (2, 2))
    assert seps
    for sep in seps:
        assert not is_legal_separator(sep)


def test_separators_match_brute_force():
    for g in random_colored_graphs(99, 60, max_vertices=8):
        for ui, vi in itertools.combinations(range(g.vertex_count), 2):
            if g.has_edge(ui, vi):
                continue
            u, v = g.vertices[ui], g.vertices[vi]
            expected = sorted(brute_minimal_separators(g, u, v), key=sorted)
            got = sorted((s.vertices for s in minimal_separators_between(g, u, v)), key=sorted)
            assert got == expected


def test_separators_self_verify():
    for g in random_colored_graphs(4321, 40, max_vertices=9):
        for sep in minimal_separators(g):
            u, v = sep.pair
            removed = frozenset(g.vertex_id(x) for x in sep.vertices)
            assert _separates(g, removed, u, v)
            for x in removed:
                assert not _separates(g, removed - {x}, u, v)


def _separates(g, removed, u, v):
    ui, vi = g.vertex_id(u), g.vertex_id(v)
    if ui in removed or vi in removed:
        return False
    seen = {ui}
    stack = [ui]
    while stack:
        x = stack.pop()
        for y in g.adjacency[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return vi not in seen


def test_separator_size_gate():
    g = ring(16)
    with pytest.raises(TooLarge):
        minimal_separators(g)
    with pytest.raises(TooLarge):
        minimal_separators_between(g, (0, 0), (2, 0))


def test_legal_separator_basics():
    assert is_legal_separator(Separator(vertices=frozenset(), pair=((0, 0), (0, 1))))
    assert is_legal_separator([(1, 0)])
    assert not is_legal_separator([(0, 2), (1, 1), (0, 0)])
