"""Perfect phylogeny decision for characters with at most three states."""

from .chordal import (
    Cycle,
    Separator,
    find_chordless_cycle,
    is_chordal,
    is_legal_separator,
    largest_chordless_cycle,
    minimal_separators,
    minimal_separators_between,
)
from .decide import (
    TripleOutcome,
    Verdict,
    full_test,
    pair_test,
    separator_check,
    triple_test,
)
from .fm import FMInstance, generate as generate_fm
from .matrix import (
    CharacterMatrix,
    from_rows,
    parse_matrix,
    relabel,
    restrict,
    serialize_matrix,
)
from .oracle import brute_pp
from .pig import ColoredGraph, build as build_pig, colored_graph, to_dot
from .tree import PhyloTree, build_tree, to_newick, tree_violations, verify_tree
from .witness import (
    ConflictHypergraph,
    HittingInstance,
    HittingSolution,
    ObstructionPattern,
    character_removal,
    classify,
    conflict_hypergraph,
    hit3,
)

__all__ = [
    "CharacterMatrix",
    "ColoredGraph",
    "ConflictHypergraph",
    "Cycle",
    "FMInstance",
    "HittingInstance",
    "HittingSolution",
    "ObstructionPattern",
    "PhyloTree",
    "Separator",
    "TripleOutcome",
    "Verdict",
    "brute_pp",
    "build_pig",
    "build_tree",
    "character_removal",
    "classify",
    "colored_graph",
    "conflict_hypergraph",
    "find_chordless_cycle",
    "from_rows",
    "full_test",
    "generate_fm",
    "hit3",
    "is_chordal",
    "is_legal_separator",
    "largest_chordless_cycle",
    "minimal_separators",
    "minimal_separators_between",
    "pair_test",
    "parse_matrix",
    "relabel",
    "restrict",
    "separator_check",
    "serialize_matrix",
    "to_dot",
    "to_newick",
    "tree_violations",
    "triple_test",
    "verify_tree",
]
