"""
    Command-line surface: `bowtie <command> ...`.

Exit codes: 0 success, 1 model/semantic failure (message on stderr only),
2 usage error. Query commands accept `--format json`.
"""
import json
import logging
import sys

import click
from rich.console import Console
from rich.table import Table

from core.exceptions import BowtieError
from dsl import print_term, tree_to_term
from models.bowtie import Bowtie, JoinReport, make_bowtie
from models.consequence import ConsequenceChoice
from models.prevention import ActivationSet
from schemas.analysis import report_lines
from schemas.document import ModelDocument
from services import (
    get_analysis_service,
    get_consequence_service,
    get_join_service,
    get_model_service,
    get_prevention_service,
    get_render_service,
)
from services.model_service import bowtie_of, consequence_of, prevention_of

logger = logging.getLogger(__name__)

FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True,
    help="Output format.",
)
OUTPUT = click.option(
    "-o", "--output", type=click.Path(dir_okay=False), default=None,
    help="Write the resulting model here instead of standard output.",
)


class BowtieGroup(click.Group):
    """Maps domain errors to exit status 1 with the reason on stderr."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except BowtieError as e:
            logger.debug("Command failed", exc_info=True)
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            ctx.exit(1)


def split_labels(value: str | None) -> list[str]:
    if not value:
        return []
    return [part.strip() for part in value.split(",") if part.strip()]


def parse_choice(value: str | None) -> ConsequenceChoice:
    """`3=1,5=2` -> {3: 1, 5: 2}."""
    choice: dict[int, int] = {}
    for part in split_labels(value):
        node, sep, index = part.partition("=")
        if not sep or not node.strip().isdigit() or not index.strip().isdigit():
            raise click.BadParameter(f"expected NODE=INDEX, got '{part}'", param_hint="--choice")
        choice[int(node)] = int(index)
    return ConsequenceChoice(choice=choice)


def emit_json(data) -> None:
    click.echo(json.dumps(data, indent=2, ensure_ascii=False))


def emit_model(model, output: str | None) -> None:
    if output:
        get_model_service().save(model, output)
        click.echo(f"Written to {output}")
    else:
        click.echo(get_model_service().dumps(model), nl=False)


def echo_merged(report: JoinReport) -> None:
    if report.merged_labels:
        click.echo(f"merged: {', '.join(report.merged_labels)}", err=True)


def print_table(table: Table) -> None:
    Console(soft_wrap=True).print(table)


@click.group(cls=BowtieGroup)
@click.option("-v", "--verbose", is_flag=True, help="Log debug output to stderr.")
def cli(verbose: bool):
    """Safety-security disruption bowties: prevention trees, consequence trees and joins."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


# --- Models ---
@cli.command()
@click.argument("model_file", type=click.Path(dir_okay=False))
@FORMAT
def validate(model_file: str, fmt: str):
    """Load MODEL_FILE and run full structural validation."""
    model = get_model_service().load(model_file)
    document = ModelDocument.from_model(model)
    if fmt == "json":
        emit_json({"valid": True, "kind": document.kind, "nodes": len(document.nodes)})
    else:
        click.echo(f"ok: {document.kind} with {len(document.nodes)} nodes")


@cli.command()
@click.argument("source_file", type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice(["dpt", "dct"]), default="dpt", show_default=True)
@OUTPUT
def parse(source_file: str, kind: str, output: str | None):
    """Compile a term-language SOURCE_FILE into a JSON model."""
    service = get_model_service()
    emit_model(service.parse_model(service.read_source(source_file), kind), output)


@cli.command("make-bowtie")
@click.argument("prevention_file", type=click.Path(dir_okay=False))
@click.argument("consequence_file", type=click.Path(dir_okay=False))
@click.option("--top-event", required=True, help="Label of the linking top event.")
@OUTPUT
def make_bowtie_command(prevention_file: str, consequence_file: str, top_event: str, output: str | None):
    """Pair a prevention tree and a consequence tree around a top event."""
    service = get_model_service()
    prevention = prevention_of(service.load(prevention_file))
    consequence = consequence_of(service.load(consequence_file))
    emit_model(make_bowtie(prevention, consequence, top_event), output)


@cli.command("print")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--unicode", is_flag=True, help="Use ∩ ∪ ⬡ glyph notation.")
def print_command(model_file: str, unicode: bool):
    """Print a model as a term."""
    model = get_model_service().load(model_file)
    if isinstance(model, Bowtie):
        click.echo(print_term(tree_to_term(model.prevention.tree), unicode))
        click.echo(f"[[{model.top_event}]]")
        click.echo(print_term(tree_to_term(model.consequence.tree), unicode))
    else:
        click.echo(print_term(tree_to_term(model.tree), unicode))


@cli.command("export-dot")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--unicode", is_flag=True, help="Label gates with ∩ ∪ ⬡.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def export_dot(model_file: str, unicode: bool, output: str | None):
    """Render a model as Graphviz DOT."""
    source = get_render_service().export_dot(get_model_service().load(model_file), unicode)
    if output:
        with click.open_file(output, "w", encoding="utf-8") as f:
            f.write(source)
    else:
        click.echo(source, nl=False)


# --- Prevention queries ---
@cli.command("eval")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--active", default="", help="Comma-separated leaf labels that occurred.")
@FORMAT
def eval_command(model_file: str, active: str, fmt: str):
    """Evaluate the structure function for one activation set."""
    tree = prevention_of(get_model_service().load(model_file))
    A = ActivationSet.of(split_labels(active))
    value = get_prevention_service().evaluate(tree, A)
    if fmt == "json":
        emit_json({"active": A.sorted(), "value": value})
    else:
        click.echo("1" if value else "0")


@cli.command("truth-table")
@click.argument("model_file", type=click.Path(dir_okay=False))
@FORMAT
def truth_table(model_file: str, fmt: str):
    """Print the structure function over every activation set."""
    tree = prevention_of(get_model_service().load(model_file))
    rows = get_prevention_service().truth_rows(tree)
    labels = tree.tree.leaf_labels()
    if fmt == "json":
        emit_json({
            "leaves": labels,
            "rows": [{"active": A.sorted(), "value": v} for A, v in rows],
        })
        return
    view = Table(*labels, "f")
    for A, value in rows:
        view.add_row(*("1" if label in A else "0" for label in labels), "1" if value else "0")
    print_table(view)


@cli.command("minimal-sets")
@click.argument("model_file", type=click.Path(dir_okay=False))
@FORMAT
def minimal_sets(model_file: str, fmt: str):
    """List inclusion-minimal disruption sets with their required-absent leaves."""
    tree = prevention_of(get_model_service().load(model_file))
    sets = get_prevention_service().minimal_disruption_sets(tree)
    if fmt == "json":
        emit_json([
            {"active": sorted(s.active), "required_absent": sorted(s.required_absent)}
            for s in sets
        ])
        return
    for s in sets:
        line = "{" + ", ".join(sorted(s.active)) + "}"
        if s.required_absent:
            line += " without {" + ", ".join(sorted(s.required_absent)) + "}"
        click.echo(line)


# --- Consequence queries ---
@cli.command()
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--active", default=None, help="For a bowtie: only if these leaves realise the top event.")
@FORMAT
def outcomes(model_file: str, active: str | None, fmt: str):
    """Enumerate consequence choices and the outcomes they reach."""
    model = get_model_service().load(model_file)
    dct = consequence_of(model)
    tree = dct.tree
    if active is not None:
        reached = get_join_service().end_to_end(bowtie_of(model), ActivationSet.of(split_labels(active)))
        labels = [tree.label(i) for i in reached]
        if fmt == "json":
            emit_json({"reachable": labels})
        else:
            for label in labels:
                click.echo(label)
        return

    service = get_consequence_service()
    records = service.enumerate_outcomes(dct)
    if fmt == "json":
        emit_json({
            "outcomes": [
                {
                    "choice": {str(k): v for k, v in o.choice.items()},
                    "outcome": tree.label(o.outcome),
                    "path": [tree.label(i) for i in o.path],
                }
                for o in records
            ],
            "reachable": [tree.label(i) for i in service.reachable_outcomes(dct)],
        })
        return
    view = Table("choice", "path", "outcome")
    for o in records:
        view.add_row(
            ", ".join(f"{k}={v}" for k, v in o.choice.items()),
            " > ".join(tree.label(i) for i in o.path),
            tree.label(o.outcome),
        )
    print_table(view)


@cli.command()
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.argument("first")
@click.argument("second")
def antagonism(model_file: str, first: str, second: str):
    """Check that no consequence trace contains both FIRST and SECOND."""
    dct = consequence_of(get_model_service().load(model_file))
    exclusive = get_analysis_service().antagonism_certificate(dct, first, second)
    click.echo("exclusive" if exclusive else "not exclusive")
    if not exclusive:
        click.get_current_context().exit(1)


# --- Joins ---
@cli.group()
def join():
    """Combine safety and security models."""


@join.command("independent")
@click.argument("left_file", type=click.Path(dir_okay=False))
@click.argument("right_file", type=click.Path(dir_okay=False))
@OUTPUT
def join_independent(left_file: str, right_file: str, output: str | None):
    """OR the roots of two prevention trees."""
    service = get_model_service()
    joined, report = get_join_service().independent_join_report(
        prevention_of(service.load(left_file)), prevention_of(service.load(right_file))
    )
    echo_merged(report)
    emit_model(joined, output)


@join.command("conditional")
@click.argument("host_file", type=click.Path(dir_okay=False))
@click.argument("guest_file", type=click.Path(dir_okay=False))
@click.option("--target", "target_leaf", required=True, help="Host leaf expanded into the guest tree.")
@OUTPUT
def join_conditional(host_file: str, guest_file: str, target_leaf: str, output: str | None):
    """Substitute the guest tree for a leaf of the host tree."""
    service = get_model_service()
    joined, report = get_join_service().conditional_join_report(
        prevention_of(service.load(host_file)), prevention_of(service.load(guest_file)), target_leaf
    )
    echo_merged(report)
    emit_model(joined, output)


@join.command("reinforcing")
@click.argument("source_file", type=click.Path(dir_okay=False))
@click.argument("target_file", type=click.Path(dir_okay=False))
@click.option("--inhibit", type=int, required=True, help="NodeId of the reinforced INHIBIT gate.")
@click.option("--choice", default="", help="Consequence choice as NODE=INDEX,... (1-based).")
@OUTPUT
def join_reinforcing(source_file: str, target_file: str, inhibit: int, choice: str, output: str | None):
    """Use a response branch of a bowtie as an INHIBIT prevention input."""
    service = get_model_service()
    joined, report = get_join_service().reinforcing_join_report(
        bowtie_of(service.load(source_file)),
        prevention_of(service.load(target_file)),
        inhibit,
        parse_choice(choice),
    )
    if report.pruned_labels:
        click.echo(f"pruned: {', '.join(report.pruned_labels)}", err=True)
    emit_model(joined, output)


@join.command("antagonistic")
@click.argument("safety_file", type=click.Path(dir_okay=False))
@click.argument("security_file", type=click.Path(dir_okay=False))
@click.option("--event", required=True, help="Label of the antagonism split.")
@OUTPUT
def join_antagonistic(safety_file: str, security_file: str, event: str, output: str | None):
    """Make two consequence trees mutually exclusive under one CHOOSE."""
    service = get_model_service()
    joined = get_join_service().antagonistic_join(
        consequence_of(service.load(safety_file)), consequence_of(service.load(security_file)), event
    )
    emit_model(joined, output)


# --- Analysis ---
@cli.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cases", type=int, default=100, show_default=True)
@click.option("--suite", type=click.Choice(["joins", "oracle"]), default="joins", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Report file.")
def check(seed: int, cases: int, suite: str, output: str | None):
    """Run a seeded property suite; one JSON record per generated case."""
    service = get_analysis_service()
    reports = service.check_join_laws(seed, cases) if suite == "joins" else service.check_oracle(seed, cases)
    text = report_lines(reports)
    if output:
        with click.open_file(output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)
    violated = sum(not r.holds for r in reports)
    if violated:
        click.echo(f"{violated} violation(s)", err=True)
        click.get_current_context().exit(1)


def main(argv: list[str] | None = None) -> int:
    try:
        result = cli.main(args=argv, prog_name="bowtie", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return e.exit_code
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
