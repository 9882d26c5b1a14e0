"""
CLI for sqpbraid

Commands:
    info       - Surface, Seifert form and closure invariants of a word
    transform  - Replace negative bands by zero-framed annuli
    annulus    - Validate, reduce, cut and catalog companion annuli
    expand     - Artin expansion of a word
    corpus     - Seeded random property suite
"""

import functools
import logging
import sys
from contextlib import nullcontext
from pathlib import Path
from typing import Optional

import click
from pydantic import BaseModel, Field
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from sqpbraid import (
    AnnulusEntry,
    BandWord,
    Catalog,
    alexander_cross_check,
    alexander_from_seifert,
    antisymmetry_defect,
    artin_expand,
    closure_summary,
    cut_annulus,
    is_strongly_quasipositive,
    link_determinant,
    linking_matrix,
    markov_reduce,
    parse_band_word,
    render_band_word,
    resolve_companions,
    rudolph_transform,
    satellite_trace,
    seifert_form,
    signature,
    surface_stats,
    validate_annulus,
    verify_preservation,
)
from sqpbraid.base import dumps, load_settings, log_level
from sqpbraid.errors import PreservationViolated, SqpBraidError
from sqpbraid.transform import companion_warnings

console = Console()
log_console = Console(stderr=True)


class Report(BaseModel):
    """Everything `info` computes for one word."""
    word: str
    strands: int
    letters: int
    sqp: bool
    components: int
    surface_components: int
    b1: int
    euler: int
    genus: Optional[int] = None
    seifert_matrix: Optional[list[list[int]]] = None
    antisymmetry_defect: Optional[list[list[int]]] = None
    alexander: Optional[str] = Field(default=None, description="Normalized Alexander polynomial")
    alexander_coefficients: Optional[dict[str, int]] = None
    signature: Optional[int] = None
    determinant: Optional[int] = None
    linking_matrix: list[list[int]] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)


def letters_text(word: BandWord) -> str:
    return " ".join(letter.render() for letter in word.letters)


def read_word(source) -> BandWord:
    """Parse a word from an open click file (path or stdin)."""
    return parse_band_word(source.read())


def reports_errors(func):
    """Print library errors and exit with their code."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SqpBraidError as e:
            console.print(f"\n[red]✗ Error: {e}[/]")
            sys.exit(e.exit_code)
        except (click.ClickException, click.exceptions.Exit):
            raise
        except Exception as e:
            console.print(f"\n[red]✗ Error: {e}[/]")
            raise click.Abort()
    return wrapper


def build_report(word: BandWord) -> Report:
    """Recompute every invariant of a word from scratch."""
    stats = surface_stats(word)
    report = Report(
        word=letters_text(word),
        strands=word.strands,
        letters=len(word.letters),
        sqp=is_strongly_quasipositive(word),
        components=closure_summary(word).components,
        surface_components=stats.surface_components,
        b1=stats.b1,
        euler=stats.euler,
        linking_matrix=linking_matrix(word).as_lists(),
    )
    if not stats.connected:
        report.warnings.append(
            f"canonical surface has {stats.surface_components} components; homology fields omitted"
        )
        return report

    V = seifert_form(word)
    alexander = alexander_from_seifert(V)
    report.genus = stats.genus_if_connected
    report.seifert_matrix = V.as_lists()
    report.antisymmetry_defect = antisymmetry_defect(V)
    report.alexander = alexander.render()
    report.alexander_coefficients = alexander.to_json()
    report.signature = signature(V)
    report.determinant = link_determinant(V)

    agree, _, burau_side = alexander_cross_check(word)
    if not agree:
        report.warnings.append(f"Burau route gives {burau_side.render()}")
    return report


def matrix_table(title: str, rows: list[list[int]]) -> Table:
    table = Table(title=title, show_header=False)
    for _ in rows[0] if rows else []:
        table.add_column(justify="right")
    for row in rows:
        table.add_row(*(str(value) for value in row))
    return table


def display_report(report: Report):
    """Display a report as a panel plus matrix tables."""
    status_color = "green" if report.sqp else "yellow"
    status_text = "✓ SQP" if report.sqp else "⚠ not SQP"
    console.print(Panel(
        f"[bold {status_color}]{status_text}[/] | Strands: [cyan]{report.strands}[/] | "
        f"Letters: [cyan]{report.letters}[/] | Components: [cyan]{report.components}[/] | "
        f"b1: [cyan]{report.b1}[/] | Euler: [cyan]{report.euler}[/]",
        title=report.word or "(empty word)",
        border_style=status_color,
    ))

    if report.seifert_matrix is not None:
        table = Table(show_header=True)
        table.add_column("Invariant", style="cyan")
        table.add_column("Value", style="green")
        table.add_row("genus", str(report.genus))
        table.add_row("alexander", report.alexander)
        table.add_row("signature", str(report.signature))
        table.add_row("determinant", str(report.determinant))
        console.print(table)
        if report.seifert_matrix:
            console.print(matrix_table("Seifert matrix", report.seifert_matrix))

    if report.components > 1:
        console.print(matrix_table("Linking matrix", report.linking_matrix))

    if report.warnings:
        console.print("\n[yellow]⚠ Warnings:[/]")
        for warning in report.warnings:
            console.print(f"  • {warning}")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option(
    "--store", type=click.Path(file_okay=False, path_type=Path), default=None,
    help="Catalog store directory (default: $SQPBRAID_CATALOG_DIR or ./catalog)",
)
@click.pass_context
def cli(ctx, verbose: bool, store: Optional[Path]):
    """sqpbraid - Strongly quasipositive band words

    Parse band-generator words, compute the Seifert form of their canonical
    surface and replace negative bands by zero-framed annuli.

    \b
    Commands:
      info       Surface and closure invariants of a word
      transform  Make a word strongly quasipositive
      annulus    validate | reduce | cut | show | list | add
      expand     Artin expansion of a word
      corpus     Seeded random property suite
    """
    logging.basicConfig(
        level="DEBUG" if verbose else log_level(),
        format="%(message)s",
        handlers=[RichHandler(console=log_console, show_path=False)],
        force=True,
    )
    ctx.ensure_object(dict)
    ctx.obj["store"] = store


# ============================================================================
# INFO - Invariants of one word
# ============================================================================

@cli.command()
@click.argument("word_file", type=click.File("r"), default="-")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON")
@reports_errors
def info(word_file, as_json: bool):
    """Show the surface, Seifert form and closure invariants of a word.

    \b
    Examples:
      sqpbraid info trefoil.braid
      echo "strands: 2
      a(1,2) a(1,2) a(1,2)" | sqpbraid info --json
    """
    word = read_word(word_file)
    report = build_report(word)

    if as_json:
        click.echo(dumps(report.model_dump()))
    else:
        display_report(report)

    if report.surface_components != 1:
        sys.exit(2)


# ============================================================================
# TRANSFORM - Replace negative bands
# ============================================================================

@cli.command()
@click.argument("word_file", type=click.File("r"), default="-")
@click.option("--annulus", "-a", default=None, help="Companion for every negative letter")
@click.option("--annuli", default=None, help="Comma-separated companions, one per negative letter")
@click.option("--certificate", "-c", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the certificate JSON here")
@click.option("--json", "as_json", is_flag=True, help="Emit word, certificate and checks as JSON")
@click.pass_context
@reports_errors
def transform(ctx, word_file, annulus: Optional[str], annuli: Optional[str], certificate: Optional[Path], as_json: bool):
    """Replace every negative band by a cut-open zero-framed annulus.

    \b
    Examples:
      sqpbraid transform figure4.braid --annulus trefoil_T23
      sqpbraid transform figure8.braid --annuli trefoil_T23,trefoil_T23 -c cert.json
    """
    if annulus and annuli:
        raise click.UsageError("--annulus and --annuli are mutually exclusive")

    catalog = Catalog(ctx.obj["store"])
    word = read_word(word_file)

    if annuli:
        names = [name.strip() for name in annuli.split(",") if name.strip()]
        companions = resolve_companions(names, ctx.obj["store"])
    else:
        companions = catalog.get(annulus or load_settings()["catalog"]["default_companion"])

    output, cert = rudolph_transform(word, companions)
    checks = verify_preservation(word, output, cert)
    used = [catalog.get(name) for name in cert.companions]
    warnings = companion_warnings(used)

    if certificate:
        certificate.write_text(dumps(cert.model_dump()) + "\n")

    if as_json:
        click.echo(dumps({
            "word": letters_text(output),
            "strands": output.strands,
            "letters": len(output.letters),
            "certificate": cert.model_dump(),
            "satellite_trace": satellite_trace(cert),
            "seifert_form_preserved": checks.seifert_form,
            "preservation": checks.model_dump(),
            "warnings": warnings,
        }))
    else:
        console.print(f"\n[bold]Input:[/] {letters_text(word) or '(empty)'} [dim]({word.strands} strands)[/]")
        console.print(f"[bold]Output:[/] {letters_text(output) or '(empty)'} [dim]({output.strands} strands)[/]\n")

        if cert.steps:
            table = Table(title="Replacement steps", show_header=True)
            table.add_column("Position", justify="right", style="cyan")
            table.add_column("Band")
            table.add_column("Annulus", style="green")
            table.add_column("n_A", justify="right")
            for step in cert.steps:
                table.add_row(str(step.replaced_position), f"a({step.p},{step.q})^-1", step.annulus, str(step.n_A))
            console.print(table)
            console.print(f"  Satellite companions: {', '.join(satellite_trace(cert))}")
        else:
            console.print("[dim]No negative letters; word unchanged[/]")

        for name, passed in checks.model_dump().items():
            mark = "[green]✓[/]" if passed else "[red]✗[/]"
            console.print(f"  {mark} {name}")
        for warning in warnings:
            console.print(f"  [yellow]⚠ {warning}[/]")
        if certificate:
            console.print(f"\n[green]✓ Certificate saved to {certificate}[/]")

    if not checks.ok:
        raise PreservationViolated(f"preservation violated ({', '.join(checks.failures())})")


# ============================================================================
# ANNULUS - Companion annuli
# ============================================================================

@cli.group()
def annulus():
    """Validate, reduce, cut and catalog companion annuli."""


@annulus.command("validate")
@click.argument("word_file", type=click.File("r"), default="-")
@click.option("--name", "-n", default="unnamed", help="Entry name")
@click.option("--core", default="", help="Declared knot type of the core")
@click.option("--json", "as_json", is_flag=True)
@reports_errors
def annulus_validate(word_file, name: str, core: str, as_json: bool):
    """Check a word is an SQP zero-framed annulus."""
    entry = validate_annulus(read_word(word_file), name, core)
    if as_json:
        document = entry.to_document()
        document["core_alexander"] = entry.core_alexander
        click.echo(dumps(document))
        return
    console.print(f"[green]✓ {entry.name}:[/] zero-framed SQP annulus on {entry.strands} strands")
    console.print(f"  Core Alexander polynomial: [cyan]{entry.core_alexander}[/]")


@annulus.command("reduce")
@click.argument("word_file", type=click.File("r"), default="-")
@reports_errors
def annulus_reduce(word_file):
    """Destabilize an annulus word to valence-2 form."""
    reduced = markov_reduce(read_word(word_file))
    click.echo(render_band_word(reduced.word))


@annulus.command("cut")
@click.argument("word_file", type=click.File("r"), default="-")
@reports_errors
def annulus_cut(word_file):
    """Reduce an annulus word and cut it open into a disc word."""
    click.echo(render_band_word(cut_annulus(markov_reduce(read_word(word_file)))))


@annulus.command("show")
@click.argument("name")
@click.pass_context
@reports_errors
def annulus_show(ctx, name: str):
    """Print a catalog entry as a word file."""
    entry = Catalog(ctx.obj["store"]).get(name)
    click.echo(render_band_word(entry.word))


@annulus.command("list")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
@reports_errors
def annulus_list(ctx, as_json: bool):
    """List catalog entries."""
    catalog = Catalog(ctx.obj["store"])
    names = catalog.list()
    if as_json:
        click.echo(dumps(names))
        return

    table = Table(show_header=True)
    table.add_column("Name", style="cyan")
    table.add_column("Strands", justify="right")
    table.add_column("Declared core")
    table.add_column("Core Alexander", style="green")
    for name in names:
        entry = catalog.get(name)
        table.add_row(name, str(entry.strands), entry.declared_core, entry.core_alexander or "")
    console.print(table)


@annulus.command("add")
@click.argument("word_file", type=click.File("r"))
@click.option("--name", "-n", required=True, help="Entry name")
@click.option("--core", default="", help="Declared knot type of the core")
@click.option("--provenance", default="", help="Where the word came from")
@click.option("--overwrite", is_flag=True, help="Replace an existing user entry")
@click.pass_context
@reports_errors
def annulus_add(ctx, word_file, name: str, core: str, provenance: str, overwrite: bool):
    """Validate an annulus word and store it in the catalog."""
    catalog = Catalog(ctx.obj["store"])
    entry = AnnulusEntry(name=name, word=read_word(word_file), declared_core=core, provenance=provenance)
    stored = catalog.add(entry, overwrite=overwrite)
    console.print(f"[green]✓ Stored {stored.name}[/] in {catalog.store}")


# ============================================================================
# UTILITY COMMANDS
# ============================================================================

@cli.command()
@click.argument("word_file", type=click.File("r"), default="-")
@click.option("--json", "as_json", is_flag=True, help="Signed generator indices as JSON")
@reports_errors
def expand(word_file, as_json: bool):
    """Print the Artin expansion (capital letter = inverse generator)."""
    artin = artin_expand(read_word(word_file))
    if as_json:
        click.echo(dumps(artin.as_list()))
    else:
        click.echo(artin.compact())


@cli.command()
@click.option("--seed", type=int, default=None, help="Override the configured seed")
@click.option("--words", type=int, default=None, help="Number of random words")
@click.option("--annuli", type=int, default=None, help="Number of stabilized annuli")
@click.option("--jobs", "-j", type=int, default=1, help="Worker processes")
@click.option("--json", "as_json", is_flag=True)
@reports_errors
def corpus(seed: Optional[int], words: Optional[int], annuli: Optional[int], jobs: int, as_json: bool):
    """Run the seeded random property suite.

    \b
    Examples:
      sqpbraid corpus
      sqpbraid corpus --seed 7 --words 50 --jobs 4
    """
    from corpus import run_corpus

    with console.status("[bold green]Running property suite...") if not as_json else nullcontext():
        report = run_corpus(seed=seed, words=words, annuli=annuli, jobs=jobs)

    if as_json:
        click.echo(dumps(report.to_dict()))
    else:
        summary = report.to_dict()
        color = "green" if report.ok else "red"
        console.print(Panel(
            f"Seed: [cyan]{summary['seed']}[/] | Words: [cyan]{summary['words']}[/] | "
            f"Annuli: [cyan]{summary['annuli']}[/] | Passed: [{color}]{summary['passed']}[/]",
            title="Property suite",
            border_style=color,
        ))
        for case in report.failed:
            detail = case.error or ", ".join(case.failures)
            console.print(f"  [red]✗[/] {case.kind} {case.index}: {detail}")
            console.print(f"    [dim]{case.word}[/]")

    if not report.ok:
        raise PreservationViolated(f"{len(report.failed)} corpus case(s) failed")


def main():
    cli()


if __name__ == "__main__":
    main()
