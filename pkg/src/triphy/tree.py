"""Build a perfect phylogeny from a properly triangulated partition
intersection graph, and verify candidate trees against the definition:
every input row labels exactly one leaf, every node carries a complete
species, and each character state induces a connected subtree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import chordal
from .errors import InternalContradiction, NotChordal, NotProper
from .matrix import CharacterMatrix
from .pig import ColoredGraph


@dataclass(frozen=True)
class PhyloTree:
    """Undirected tree; nodes [0, clique_count) come from maximal cliques,
    the rest are leaves, one per input row in row order."""

    species: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    row_to_leaf: tuple[int, ...]
    clique_count: int
    root: int

    @property
    def node_count(self) -> int:
        return len(self.species)


def _maximal_cliques(graph: ColoredGraph) -> list[tuple[int, ...]]:
    """Maximal cliques of a chordal graph via the MCS candidate sets."""
    adj = graph.adjacency
    order = chordal._mcs_order(adj)
    pos = [0] * len(adj)
    for i, v in enumerate(order):
        pos[v] = i
    candidates = set()
    for i, v in enumerate(order):
        clique = tuple(sorted([v] + [w for w in adj[v] if pos[w] < i]))
        candidates.add(clique)
    cliques = [
        c
        for c in candidates
        if not any(set(c) < set(d) for d in candidates if d != c)
    ]
    return sorted(cliques)


def _clique_tree_edges(
    cliques: list[tuple[int, ...]], root: int
) -> list[tuple[int, int]]:
    """Maximum-weight spanning tree (weight = intersection size) via Prim;
    any such tree of a chordal graph's clique graph is a clique tree."""
    t = len(cliques)
    sets = [set(c) for c in cliques]
    in_tree = {root}
    edges = []
    while len(in_tree) < t:
        best = None
        for j in range(t):
            if j in in_tree:
                continue
            for i in sorted(in_tree):
                w = len(sets[i] & sets[j])
                key = (-w, j, i)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, i, j = best
        edges.append((i, j) if i < j else (j, i))
        in_tree.add(j)
    return sorted(edges)


def _verify_running_intersection(
    cliques: list[tuple[int, ...]], edges: list[tuple[int, int]], n_vertices: int
):
    adjacency = {i: set() for i in range(len(cliques))}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    for x in range(n_vertices):
        holders = [i for i, c in enumerate(cliques) if x in c]
        if not holders:
            raise InternalContradiction(f"vertex {x} missing from all cliques")
        seen = {holders[0]}
        stack = [holders[0]]
        holder_set = set(holders)
        while stack:
            i = stack.pop()
            for j in adjacency[i]:
                if j in holder_set and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != holder_set:
            raise InternalContradiction(
                f"cliques containing vertex {x} do not form a subtree"
            )


def build_tree(graph: ColoredGraph, matrix: CharacterMatrix) -> PhyloTree:
    """Perfect phylogeny from a proper triangulation of the partition
    intersection graph of ``matrix``.

    Maximal cliques become internal nodes arranged in a clique tree;
    species labels of a clique inherit any absent character from its
    parent toward the root (the clique hosting row 0, which is complete
    because a row's states form a clique). Each input row becomes a leaf
    attached to a clique containing its state set.
    """
    if not chordal.is_chordal(graph):
        raise NotChordal("graph has a chordless cycle")
    if not graph.is_proper():
        raise NotProper("graph has an edge within one character")

    m = matrix.char_count
    cliques = _maximal_cliques(graph)
    clique_sets = [set(c) for c in cliques]

    def host_clique(row: tuple[int, ...]) -> int:
        ids = {graph.vertex_id((c, row[c])) for c in range(m)}
        for i, cs in enumerate(clique_sets):
            if ids <= cs:
                return i
        raise InternalContradiction("input row not covered by any maximal clique")

    root = host_clique(matrix.rows[0])
    tree_edges = _clique_tree_edges(cliques, root)
    _verify_running_intersection(cliques, tree_edges, graph.vertex_count)

    neigh = {i: set() for i in range(len(cliques))}
    for a, b in tree_edges:
        neigh[a].add(b)
        neigh[b].add(a)
    parent: dict[int, int | None] = {root: None}
    bfs = [root]
    for i in bfs:
        for j in sorted(neigh[i]):
            if j not in parent:
                parent[j] = i
                bfs.append(j)

    species: list[list[int] | None] = [None] * len(cliques)
    for i in bfs:
        label = [-1] * m
        for vid in cliques[i]:
            c, s = graph.vertices[vid]
            label[c] = s
        if parent[i] is None:
            if -1 in label:
                raise InternalContradiction("root clique is not a complete species")
        else:
            parent_label = species[parent[i]]
            for c in range(m):
                if label[c] == -1:
                    label[c] = parent_label[c]
        species[i] = label

    all_species = [tuple(s) for s in species]
    edges = list(tree_edges)
    row_to_leaf = []
    for t, row in enumerate(matrix.rows):
        leaf = len(all_species)
        all_species.append(tuple(row))
        host = host_clique(row)
        edges.append((host, leaf))
        row_to_leaf.append(leaf)

    return PhyloTree(
        species=tuple(all_species),
        edges=tuple(sorted(edges)),
        row_to_leaf=tuple(row_to_leaf),
        clique_count=len(cliques),
        root=root,
    )


def tree_violations(tree: PhyloTree, matrix: CharacterMatrix) -> list[str]:
    """Diagnostics for every violated perfect-phylogeny condition."""
    problems = []
    n_nodes = tree.node_count
    m = matrix.char_count

    adjacency = {i: set() for i in range(n_nodes)}
    for a, b in tree.edges:
        if not (0 <= a < n_nodes and 0 <= b < n_nodes) or a == b:
            problems.append(f"bad edge ({a}, {b})")
            continue
        adjacency[a].add(b)
        adjacency[b].add(a)
    if len(set(tree.edges)) != len(tree.edges):
        problems.append("duplicate edges")
    if n_nodes > 0:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n_nodes:
            problems.append("tree is not connected")
        if len(tree.edges) != n_nodes - 1:
            problems.append("edge count differs from node count - 1")

    # condition 2: every node is labeled by a complete species
    for i, sp in enumerate(tree.species):
        if len(sp) != m:
            problems.append(f"node {i} species has wrong length")
        elif any(not 0 <= sp[c] < matrix.state_count(c) for c in range(m)):
            problems.append(f"node {i} species uses out-of-range states")

    # condition 1: each input row labels exactly one leaf
    if len(tree.row_to_leaf) != matrix.taxon_count:
        problems.append("row-to-leaf map does not cover every input row")
    else:
        if len(set(tree.row_to_leaf)) != len(tree.row_to_leaf):
            problems.append("two rows map to the same leaf")
        for t, leaf in enumerate(tree.row_to_leaf):
            if not 0 <= leaf < n_nodes:
                problems.append(f"row {t} maps to missing node {leaf}")
                continue
            if len(adjacency[leaf]) > 1:
                problems.append(f"row {t} maps to non-leaf node {leaf}")
            if tuple(tree.species[leaf]) != tuple(matrix.rows[t]):
                problems.append(f"leaf for row {t} is labeled with a different species")

    # condition 3: each character state induces a connected subtree
    for c in range(m):
        for s in range(matrix.state_count(c)):
            holders = {i for i, sp in enumerate(tree.species) if len(sp) == m and sp[c] == s}
            if not holders:
                continue
            start = min(holders)
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in adjacency[v]:
                    if w in holders and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen != holders:
                problems.append(f"state {s} of character {c} is not connected")
    return problems


def verify_tree(tree: PhyloTree, matrix: CharacterMatrix) -> bool:
    """True iff all three perfect-phylogeny conditions hold."""
    return not tree_violations(tree, matrix)


def _newick_label(text: str) -> str:
    return re.sub(r"[\s(),:;\[\]']", "_", text)


def _leaf_label(tree: PhyloTree, matrix: CharacterMatrix, node: int) -> str:
    row = tree.row_to_leaf.index(node)
    if matrix.row_labels is not None:
        return _newick_label(matrix.row_labels[row])
    return f"row{row}"


def species_string(species: tuple[int, ...]) -> str:
    return "-".join(str(s) for s in species)


def to_newick(tree: PhyloTree, matrix: CharacterMatrix) -> str:
    """Newick rendering rooted at the build root; internal node labels are
    comma-free species strings."""
    adjacency = {i: set() for i in range(tree.node_count)}
    for a, b in tree.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    leaves = set(tree.row_to_leaf)

    def render(node: int, parent: int | None) -> str:
        kids = sorted(w for w in adjacency[node] if w != parent)
        label = (
            _leaf_label(tree, matrix, node)
            if node in leaves
            else species_string(tree.species[node])
        )
        if not kids:
            return label
        inner = ",".join(render(k, node) for k in kids)
        return f"({inner}){label}"

    return render(tree.root, None) + ";\n"


def to_dot(tree: PhyloTree, matrix: CharacterMatrix, name: str = "phylogeny") -> str:
    leaves = set(tree.row_to_leaf)
    lines = [f"graph {name} {{"]
    for i, sp in enumerate(tree.species):
        if i in leaves:
            label = f"{_leaf_label(tree, matrix, i)}\\n{species_string(sp)}"
            lines.append(f'  n{i} [shape=box, label="{label}"];')
        else:
            lines.append(f'  n{i} [label="{species_string(sp)}"];')
    for a, b in tree.edges:
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_json(tree: PhyloTree, matrix: CharacterMatrix) -> dict:
    leaves = {leaf: row for row, leaf in enumerate(tree.row_to_leaf)}
    nodes = []
    for i, sp in enumerate(tree.species):
        node = {"id": i, "species": list(sp), "kind": "leaf" if i in leaves else "clique"}
        if i in leaves:
            node["row"] = leaves[i]
        nodes.append(node)
    return {
        "nodes": nodes,
        "edges": [list(e) for e in tree.edges],
        "root": tree.root,
        "newick": to_newick(tree, matrix),
    }
