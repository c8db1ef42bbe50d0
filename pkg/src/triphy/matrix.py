"""Character matrix data model: parsing, column restriction, relabeling.

Rows are taxa, columns are characters. State values are densified per
column at construction time (0-based, in order of first appearance), so
every downstream algorithm can assume states of character ``i`` are
exactly ``{0, ..., r_i - 1}``. Missing entries are rejected; duplicate
rows and columns are kept so that witnesses can report original indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EmptyInput,
    IndexOutOfRange,
    MissingValue,
    RaggedRow,
    SizeMismatch,
)


@dataclass(frozen=True)
class CharacterMatrix:
    """An n x m table of dense small-integer states, immutable once built.

    ``state_tokens[i][s]`` remembers the original input token for state
    ``s`` of character ``i`` so parsed matrices can round-trip.
    """

    rows: tuple[tuple[int, ...], ...]
    state_tokens: tuple[tuple[str, ...], ...]
    row_labels: tuple[str, ...] | None = None
    char_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.rows:
            raise EmptyInput("matrix must have at least one row")
        m = len(self.rows[0])
        if m == 0:
            raise EmptyInput("matrix must have at least one character")
        for t, row in enumerate(self.rows):
            if len(row) != m:
                raise RaggedRow(t, m, len(row))
        for i in range(m):
            seen = {row[i] for row in self.rows}
            if seen != set(range(len(seen))):
                raise SizeMismatch(
                    f"character {i} states {sorted(seen)} are not dense 0-based"
                )
        if len(self.state_tokens) != m:
            raise SizeMismatch("state_tokens must cover every character")
        for i, tokens in enumerate(self.state_tokens):
            r_i = len({row[i] for row in self.rows})
            if len(tokens) != r_i:
                raise SizeMismatch(f"character {i} has {r_i} states, {len(tokens)} tokens")
        if self.row_labels is not None and len(self.row_labels) != len(self.rows):
            raise SizeMismatch("row_labels length mismatch")
        if self.char_labels is not None and len(self.char_labels) != m:
            raise SizeMismatch("char_labels length mismatch")

    @property
    def taxon_count(self) -> int:
        return len(self.rows)

    @property
    def char_count(self) -> int:
        return len(self.rows[0])

    def state_count(self, char: int) -> int:
        """Number of distinct states r_i of character ``char``."""
        self._check_char(char)
        return len(self.state_tokens[char])

    @property
    def state_counts(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.state_tokens)

    @property
    def max_states(self) -> int:
        return max(self.state_counts)

    def _check_char(self, char: int):
        if not 0 <= char < self.char_count:
            raise IndexOutOfRange(f"character {char} out of range [0, {self.char_count})")

    def column(self, char: int) -> tuple[int, ...]:
        self._check_char(char)
        return tuple(row[char] for row in self.rows)


def from_rows(
    rows: Iterable[Sequence[object]],
    row_labels: Sequence[str] | None = None,
    char_labels: Sequence[str] | None = None,
) -> CharacterMatrix:
    """Build a matrix from raw row tuples, densifying each column.

    Tokens may be anything hashable; per column they are re-encoded to
    0, 1, ... in order of first appearance (top to bottom).
    """
    raw = [tuple(row) for row in rows]
    if not raw:
        raise EmptyInput("no rows")
    m = len(raw[0])
    if m == 0:
        raise EmptyInput("rows have no entries")
    for t, row in enumerate(raw):
        if len(row) != m:
            raise RaggedRow(t, m, len(row))
    encode: list[dict[object, int]] = [{} for _ in range(m)]
    dense = []
    for row in raw:
        out = []
        for i, tok in enumerate(row):
            if tok not in encode[i]:
                encode[i][tok] = len(encode[i])
            out.append(encode[i][tok])
        dense.append(tuple(out))
    tokens = tuple(
        tuple(str(tok) for tok, _ in sorted(encode[i].items(), key=lambda kv: kv[1]))
        for i in range(m)
    )
    return CharacterMatrix(
        rows=tuple(dense),
        state_tokens=tokens,
        row_labels=tuple(row_labels) if row_labels is not None else None,
        char_labels=tuple(char_labels) if char_labels is not None else None,
    )


def parse_matrix(text: str, dialect: str = "csv") -> CharacterMatrix:
    """Parse a character-separated table into a matrix.

    ``dialect`` is ``csv`` (comma-separated) or ``ws`` (any whitespace).
    Arbitrary state tokens are mapped to dense ids per column.
    """
    if dialect not in ("csv", "ws"):
        raise ValueError(f"unknown dialect {dialect!r}")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise EmptyInput("input contains no rows")
    raw_rows = []
    for t, line in enumerate(lines):
        if dialect == "csv":
            tokens = [tok.strip() for tok in line.split(",")]
        else:
            tokens = line.split()
        for i, tok in enumerate(tokens):
            if tok == "":
                raise MissingValue(t, i)
        raw_rows.append(tokens)
    width = len(raw_rows[0])
    for t, row in enumerate(raw_rows):
        if len(row) != width:
            raise RaggedRow(t, width, len(row))
    return from_rows(raw_rows)


def serialize_matrix(matrix: CharacterMatrix, dialect: str = "csv") -> str:
    """Inverse of :func:`parse_matrix` on normalized matrices."""
    sep = "," if dialect == "csv" else " "
    lines = []
    for row in matrix.rows:
        lines.append(sep.join(matrix.state_tokens[i][s] for i, s in enumerate(row)))
    return "\n".join(lines) + "\n"


def character_subset(indices: Iterable[int], matrix: CharacterMatrix) -> tuple[int, ...]:
    """Validate and normalize a set of character indices for ``matrix``."""
    subset = tuple(sorted(set(indices)))
    for i in subset:
        if not 0 <= i < matrix.char_count:
            raise IndexOutOfRange(f"character {i} out of range [0, {matrix.char_count})")
    return subset


def restrict(matrix: CharacterMatrix, chars: Iterable[int]) -> CharacterMatrix:
    """Project onto a subset of characters, preserving row order.

    Duplicate rows are kept; they are harmless and keep witness row
    indices aligned with the original matrix.
    """
    subset = character_subset(chars, matrix)
    if not subset:
        raise EmptyInput("character subset must be non-empty")
    rows = tuple(tuple(row[i] for i in subset) for row in matrix.rows)
    tokens = tuple(matrix.state_tokens[i] for i in subset)
    labels = (
        tuple(matrix.char_labels[i] for i in subset)
        if matrix.char_labels is not None
        else None
    )
    return CharacterMatrix(
        rows=rows,
        state_tokens=tokens,
        row_labels=matrix.row_labels,
        char_labels=labels,
    )


def relabel(
    matrix: CharacterMatrix,
    char_perm: Sequence[int],
    state_perms: Sequence[Sequence[int]],
) -> CharacterMatrix:
    """Permute characters and rename states; a bijection on matrices.

    Old character ``i`` moves to position ``char_perm[i]``, and old state
    ``s`` of old character ``i`` becomes ``state_perms[i][s]``. Columns
    stay dense as sets but need not be in first-appearance order, which
    is what makes the operation invertible.
    """
    m = matrix.char_count
    if len(char_perm) != m or sorted(char_perm) != list(range(m)):
        raise SizeMismatch(f"char_perm must be a permutation of 0..{m - 1}")
    if len(state_perms) != m:
        raise SizeMismatch("state_perms must cover every character")
    for i, perm in enumerate(state_perms):
        r_i = matrix.state_count(i)
        if len(perm) != r_i or sorted(perm) != list(range(r_i)):
            raise SizeMismatch(f"state_perms[{i}] must be a permutation of 0..{r_i - 1}")

    new_rows = [[0] * m for _ in matrix.rows]
    new_tokens: list[tuple[str, ...]] = [()] * m
    new_labels: list[str] | None = [""] * m if matrix.char_labels is not None else None
    for i in range(m):
        j = char_perm[i]
        perm = state_perms[i]
        for t, row in enumerate(matrix.rows):
            new_rows[t][j] = perm[row[i]]
        inv = [0] * len(perm)
        for s, s2 in enumerate(perm):
            inv[s2] = s
        new_tokens[j] = tuple(matrix.state_tokens[i][inv[s2]] for s2 in range(len(perm)))
        if new_labels is not None:
            new_labels[j] = matrix.char_labels[i]
    return CharacterMatrix(
        rows=tuple(tuple(r) for r in new_rows),
        state_tokens=tuple(new_tokens),
        row_labels=matrix.row_labels,
        char_labels=tuple(new_labels) if new_labels is not None else None,
    )


def matrix_json(matrix: CharacterMatrix) -> dict:
    """JSON-ready description of the matrix including its label maps."""
    out = {
        "taxa": matrix.taxon_count,
        "characters": matrix.char_count,
        "states": list(matrix.state_counts),
        "rows": [list(row) for row in matrix.rows],
        "state_tokens": [list(t) for t in matrix.state_tokens],
    }
    if matrix.row_labels is not None:
        out["row_labels"] = list(matrix.row_labels)
    if matrix.char_labels is not None:
        out["char_labels"] = list(matrix.char_labels)
    return out
