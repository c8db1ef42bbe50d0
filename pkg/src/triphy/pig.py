"""Partition intersection graphs: colored vertices (character, state),
row-witnessed E-edges, and fill edges tagged F or F'.

Vertices are ordered lexicographically by (character, state); algorithms
index them by position in that order, which fixes every tie-break in the
package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DuplicateEdge, MonochromaticEdge, SizeMismatch
from .matrix import CharacterMatrix, character_subset

Vertex = tuple[int, int]  # (character, state)

E_EDGE = "E"
F_EDGE = "F"
FPRIME_EDGE = "F'"


@dataclass(frozen=True)
class ColoredGraph:
    """Immutable colored graph; fill-edge updates return new values.

    ``edge_tags`` maps an id pair (lo, hi) to its tag, ``edge_witnesses``
    maps E-edge id pairs to the sorted row indices witnessing them.
    """

    vertices: tuple[Vertex, ...]
    edge_tags: Mapping[tuple[int, int], str]
    edge_witnesses: Mapping[tuple[int, int], tuple[int, ...]]

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise SizeMismatch("duplicate vertices")
        if list(self.vertices) != sorted(self.vertices):
            raise SizeMismatch("vertices must be sorted by (character, state)")
        adj = [set() for _ in self.vertices]
        for (u, v), tag in self.edge_tags.items():
            if not (0 <= u < v < len(self.vertices)):
                raise SizeMismatch(f"bad edge id pair ({u}, {v})")
            if self.vertices[u][0] == self.vertices[v][0]:
                raise MonochromaticEdge(
                    f"edge {self.vertices[u]}-{self.vertices[v]} joins states of one character"
                )
            if tag not in (E_EDGE, F_EDGE, FPRIME_EDGE):
                raise SizeMismatch(f"unknown edge tag {tag!r}")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_colors", tuple(v[0] for v in self.vertices))

    # -- structure queries ------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def colors(self) -> tuple[int, ...]:
        return self._colors

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def vertex_id(self, v: Vertex) -> int:
        return self._index[v]

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._index

    def neighbors(self, i: int) -> frozenset[int]:
        return self._adj[i]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def tag(self, u: int, v: int) -> str:
        return self.edge_tags[(u, v) if u < v else (v, u)]

    def witnesses(self, u: int, v: int) -> tuple[int, ...]:
        return self.edge_witnesses.get((u, v) if u < v else (v, u), ())

    def edges(self, tag: str | None = None) -> list[tuple[int, int]]:
        """Edge id pairs in sorted order, optionally filtered by tag."""
        pairs = sorted(self.edge_tags)
        if tag is None:
            return pairs
        return [p for p in pairs if self.edge_tags[p] == tag]

    def edge_vertices(self, pair: tuple[int, int]) -> tuple[Vertex, Vertex]:
        return self.vertices[pair[0]], self.vertices[pair[1]]

    def is_proper(self) -> bool:
        """No edge joins two states of the same character.

        Construction already enforces this; kept as a cheap recheck for
        post-triangulation assertions.
        """
        return all(
            self.vertices[u][0] != self.vertices[v][0] for u, v in self.edge_tags
        )

    # -- fill edges ---------------------------------------------------------

    def add_fill_edge(self, u: Vertex, v: Vertex, tag: str) -> "ColoredGraph":
        """Return a new graph with one F or F' edge added."""
        return self.add_fill_edges([(u, v)], tag)

    def add_fill_edges(
        self, pairs: Iterable[tuple[Vertex, Vertex]], tag: str
    ) -> "ColoredGraph":
        if tag not in (F_EDGE, FPRIME_EDGE):
            raise SizeMismatch(f"fill edges must be tagged F or F', not {tag!r}")
        tags = dict(self.edge_tags)
        for u, v in pairs:
            ui, vi = self.vertex_id(u), self.vertex_id(v)
            if u[0] == v[0]:
                raise MonochromaticEdge(f"cannot add edge {u}-{v} within one character")
            key = (ui, vi) if ui < vi else (vi, ui)
            if key in tags:
                raise DuplicateEdge(f"edge {u}-{v} already present ({tags[key]})")
            tags[key] = tag
        return ColoredGraph(
            vertices=self.vertices,
            edge_tags=tags,
            edge_witnesses=self.edge_witnesses,
        )


def build(matrix: CharacterMatrix, chars: Iterable[int] | None = None) -> ColoredGraph:
    """Partition intersection graph of ``matrix`` restricted to ``chars``.

    An E-edge joins (i, s) and (j, t) exactly when some row has state s
    in character i and state t in character j; every such row is recorded
    as a witness.
    """
    subset = (
        character_subset(chars, matrix)
        if chars is not None
        else tuple(range(matrix.char_count))
    )
    vertices = tuple(
        sorted((c, s) for c in subset for s in range(matrix.state_count(c)))
    )
    index = {v: i for i, v in enumerate(vertices)}
    tags: dict[tuple[int, int], str] = {}
    witnesses: dict[tuple[int, int], list[int]] = {}
    for t, row in enumerate(matrix.rows):
        ids = sorted(index[(c, row[c])] for c in subset)
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                key = (ids[a], ids[b])
                if key not in tags:
                    tags[key] = E_EDGE
                    witnesses[key] = []
                witnesses[key].append(t)
    return ColoredGraph(
        vertices=vertices,
        edge_tags=tags,
        edge_witnesses={k: tuple(w) for k, w in witnesses.items()},
    )


def colored_graph(
    vertices: Iterable[Vertex],
    e_edges: Iterable[tuple[Vertex, Vertex]] = (),
    f_edges: Iterable[tuple[Vertex, Vertex]] = (),
    fprime_edges: Iterable[tuple[Vertex, Vertex]] = (),
) -> ColoredGraph:
    """Assemble a colored graph directly from vertex and edge lists.

    Synthetic graphs built this way carry no row witnesses; only
    :func:`build` guarantees witnessed E-edges.
    """
    verts = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(verts)}
    tags: dict[tuple[int, int], str] = {}
    for group, tag in ((e_edges, E_EDGE), (f_edges, F_EDGE), (fprime_edges, FPRIME_EDGE)):
        for u, v in group:
            key = (index[u], index[v]) if index[u] < index[v] else (index[v], index[u])
            if key in tags:
                raise DuplicateEdge(f"edge {u}-{v} listed twice")
            tags[key] = tag
    return ColoredGraph(vertices=verts, edge_tags=tags, edge_witnesses={})


_DOT_STYLE = {E_EDGE: "solid", F_EDGE: "dashed", FPRIME_EDGE: "dotted"}
_DOT_PALETTE = (
    "red", "blue", "green", "orange", "purple",
    "brown", "cyan", "magenta", "gold", "gray",
)


def to_dot(graph: ColoredGraph, name: str = "pig") -> str:
    """DOT rendering: one fill color per character, edge style by tag."""
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for c, s in graph.vertices:
        color = _DOT_PALETTE[c % len(_DOT_PALETTE)]
        lines.append(f'  c{c}_s{s} [color="{color}", label="c{c}_s{s}"];')
    for u, v in graph.edges():
        (cu, su), (cv, sv) = graph.edge_vertices((u, v))
        style = _DOT_STYLE[graph.tag(u, v)]
        lines.append(f'  c{cu}_s{su} -- c{cv}_s{sv} [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
