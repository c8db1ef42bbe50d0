"""Fitch-Meacham lower-bound instances.

For r >= 2, the instance has r + 2 taxa over r characters with r states
each: two end rows (all-0 and all-1) whose states form the end-cliques
of the partition intersection graph, and one tower row per character j
carrying state 0 in character j, state 1 in character (j + 1) mod r, and
a tower-specific internal state everywhere else. Every r - 1 characters
admit a perfect phylogeny while the full set does not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadR
from .matrix import CharacterMatrix


@dataclass(frozen=True)
class FMInstance:
    r: int
    matrix: CharacterMatrix
    clique_names: tuple[str, ...]  # row index -> EC1, EC2, TC1..TCr


def _internal_state(r: int, char: int, tower: int) -> int:
    """State of ``char`` inside tower ``tower``; internal states 2..r-1 are
    handed out in increasing tower index."""
    hosts = sorted(j for j in range(r) if j != char and (j + 1) % r != char)
    return 2 + hosts.index(tower)


def generate(r: int) -> FMInstance:
    """The r-state Fitch-Meacham instance with a fixed state numbering:
    per character, the end-clique vertices take states 0 and 1 and the
    internal tower vertices take 2..r-1."""
    if r < 2:
        raise BadR(f"Fitch-Meacham instances need r >= 2, got {r}")
    rows = [tuple([0] * r), tuple([1] * r)]
    names = ["EC1", "EC2"]
    for tower in range(r):
        row = []
        for char in range(r):
            if char == tower:
                row.append(0)
            elif char == (tower + 1) % r:
                row.append(1)
            else:
                row.append(_internal_state(r, char, tower))
        rows.append(tuple(row))
        names.append(f"TC{tower + 1}")
    matrix = CharacterMatrix(
        rows=tuple(rows),
        state_tokens=tuple(tuple(str(s) for s in range(r)) for _ in range(r)),
        row_labels=tuple(names),
    )
    return FMInstance(r=r, matrix=matrix, clique_names=tuple(names))
