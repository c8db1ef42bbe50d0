"""Command-line interface.

Exit codes for ``check`` and ``oracle``: 0 when a perfect phylogeny
exists, 1 when it does not (a witness is emitted), 2 on usage or data
errors. ``remove`` exits 1 when no removal set within the budget exists.
JSON reports are deterministic: identical inputs produce byte-identical
output (timing goes to stderr only).
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from pathlib import Path

import click

from . import decide, fm, oracle, pig, tree, witness
from .errors import TriphyError
from .matrix import CharacterMatrix, matrix_json, parse_matrix, serialize_matrix


def _read_matrix(path: str, fmt: str) -> tuple[CharacterMatrix, str]:
    text = Path(path).read_text()
    return parse_matrix(text, dialect=fmt), text


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def _edge_json(edges) -> list:
    return [[list(u), list(v)] for u, v in edges]


def _write_json(path: str | None, payload: dict):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        click.echo(text, nl=False)


def _fail(err: Exception):
    click.echo(f"error: {err}", err=True)
    sys.exit(2)


@click.group()
def main():
    """Perfect phylogeny tools for characters with at most three states."""


@main.command("check")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "ws"]), default="csv", show_default=True)
@click.option("--json", "json_path", type=click.Path(), help="Write the JSON report here.")
@click.option("--dot", "dot_path", type=click.Path(), help="Write the (triangulated) graph as DOT.")
@click.option("--newick", "newick_path", type=click.Path(), help="Write the tree in Newick format.")
@click.option("--threads", type=int, default=1, show_default=True, help="Subset-test parallelism.")
def cmd_check(input_path, fmt, json_path, dot_path, newick_path, threads):
    """Decide whether INPUT admits a perfect phylogeny."""
    try:
        matrix, text = _read_matrix(input_path, fmt)
        started = time.perf_counter()
        verdict = decide.full_test(matrix, threads=threads)
        elapsed = time.perf_counter() - started
    except TriphyError as err:
        _fail(err)

    report = {
        "command": "check",
        "input": {"digest": _digest(text), **matrix_json(matrix)},
        "verdict": verdict.kind,
        "f_edges": _edge_json(verdict.f_edges),
        "f_prime_edges": _edge_json(verdict.fprime_edges),
    }
    if verdict.is_tree:
        report["tree"] = tree.tree_json(verdict.tree, matrix)
        click.echo(
            f"perfect phylogeny: yes "
            f"({verdict.tree.node_count} nodes, {len(verdict.f_edges)} F-edges, "
            f"{len(verdict.fprime_edges)} F'-edges)"
        )
    else:
        report["witness"] = {
            "characters": list(verdict.witness),
            "pattern": verdict.pattern.kind,
            "canonical_matrix": [list(r) for r in verdict.pattern.canonical_rows],
        }
        click.echo(
            f"no perfect phylogeny: witness characters {list(verdict.witness)} "
            f"({verdict.pattern.kind})"
        )
    click.echo(f"elapsed: {elapsed * 1000:.1f} ms", err=True)

    if json_path:
        _write_json(json_path, report)
    if dot_path:
        graph = verdict.graph if verdict.is_tree else pig.build(matrix)
        Path(dot_path).write_text(pig.to_dot(graph))
    if newick_path:
        if not verdict.is_tree:
            click.echo("error: --newick needs a tree verdict, input has none", err=True)
            sys.exit(1)
        Path(newick_path).write_text(tree.to_newick(verdict.tree, matrix))
    sys.exit(0 if verdict.is_tree else 1)


@main.command("conflicts")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "ws"]), default="csv", show_default=True)
@click.option("--json", "json_path", type=click.Path(), help="Write the JSON report here.")
def cmd_conflicts(input_path, fmt, json_path):
    """Emit the conflict hypergraph of INPUT (failing pairs and triples)."""
    try:
        matrix, text = _read_matrix(input_path, fmt)
        hypergraph = witness.conflict_hypergraph(matrix)
    except TriphyError as err:
        _fail(err)
    report = {
        "command": "conflicts",
        "input": {"digest": _digest(text), **matrix_json(matrix)},
        **witness.hypergraph_json(hypergraph),
    }
    _write_json(json_path, report)
    if json_path:
        click.echo(
            f"conflicts: {len(hypergraph.edges2)} pairs, {len(hypergraph.edges3)} triples"
        )


@main.command("remove")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "budget", type=int, required=True, help="Maximum characters to remove.")
@click.option("--format", "fmt", type=click.Choice(["csv", "ws"]), default="csv", show_default=True)
@click.option("--json", "json_path", type=click.Path(), help="Write the JSON report here.")
def cmd_remove(input_path, fmt, budget, json_path):
    """Find a minimum set of at most K characters whose removal leaves a
    perfect phylogeny."""
    try:
        matrix, text = _read_matrix(input_path, fmt)
        removed = witness.character_removal(matrix, budget)
    except TriphyError as err:
        _fail(err)
    report = {
        "command": "remove",
        "input": {"digest": _digest(text), **matrix_json(matrix)},
        "k": budget,
        "removed": list(removed) if removed is not None else None,
    }
    if json_path:
        _write_json(json_path, report)
    if removed is None:
        click.echo(f"no removal set of size <= {budget}")
        sys.exit(1)
    click.echo(f"remove characters: {list(removed)}")
    sys.exit(0)


@main.command("gen-fm")
@click.option("--r", "r", type=int, required=True, help="Number of characters and states.")
def cmd_gen_fm(r):
    """Emit the Fitch-Meacham instance F_r as CSV."""
    try:
        instance = fm.generate(r)
    except TriphyError as err:
        _fail(err)
    click.echo(serialize_matrix(instance.matrix), nl=False)


@main.command("oracle")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "ws"]), default="csv", show_default=True)
@click.option("--json", "json_path", type=click.Path(), help="Write the JSON report here.")
def cmd_oracle(input_path, fmt, json_path):
    """Brute-force perfect phylogeny decision (debugging aid, any r)."""
    try:
        matrix, text = _read_matrix(input_path, fmt)
        exists = oracle.brute_pp(matrix)
    except TriphyError as err:
        _fail(err)
    if json_path:
        _write_json(
            json_path,
            {
                "command": "oracle",
                "input": {"digest": _digest(text), **matrix_json(matrix)},
                "perfect_phylogeny": exists,
            },
        )
    click.echo(f"perfect phylogeny: {'yes' if exists else 'no'}")
    sys.exit(0 if exists else 1)


@main.command("export")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "ws"]), default="csv", show_default=True)
@click.option("--dot", "dot_path", type=click.Path(), help="Write the graph as DOT.")
@click.option("--newick", "newick_path", type=click.Path(), help="Write the tree in Newick format.")
def cmd_export(input_path, fmt, dot_path, newick_path):
    """Export the partition intersection graph (E/F/F' styled DOT) or the
    perfect phylogeny (Newick)."""
    if not dot_path and not newick_path:
        click.echo("error: nothing to export, pass --dot and/or --newick", err=True)
        sys.exit(2)
    try:
        matrix, _ = _read_matrix(input_path, fmt)
        verdict = decide.full_test(matrix)
    except TriphyError as err:
        _fail(err)
    if dot_path:
        graph = verdict.graph if verdict.is_tree else pig.build(matrix)
        Path(dot_path).write_text(pig.to_dot(graph))
        click.echo(f"wrote {dot_path}")
    if newick_path:
        if not verdict.is_tree:
            click.echo(
                f"error: --newick needs a tree verdict, "
                f"witness is {list(verdict.witness)}",
                err=True,
            )
            sys.exit(1)
        Path(newick_path).write_text(tree.to_newick(verdict.tree, matrix))
        click.echo(f"wrote {newick_path}")
    sys.exit(0)


if __name__ == "__main__":
    main()
