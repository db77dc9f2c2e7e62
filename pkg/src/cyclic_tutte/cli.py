"""Command-line interface for computing rank generating and Tutte polynomials."""

import functools
import json
import logging
from pathlib import Path

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from cyclic_tutte import bitset
from cyclic_tutte.condensation import coarsest_condensation, orbits_from_generators
from cyclic_tutte.configuration import extract_configuration
from cyclic_tutte.engine import compute_rgp
from cyclic_tutte.errors import EXIT_INFEASIBLE, EXIT_ORACLE_MISMATCH, EXIT_VALIDATION, CyclicTutteError
from cyclic_tutte.matroid import strip_loops_coloops
from cyclic_tutte.oracle import rgp_bruteforce
from cyclic_tutte.output import PolynomialOutput
from cyclic_tutte.parser import (
    LoadedInput,
    condensed_to_json,
    configuration_to_json,
    load_input,
    parse_input,
    read_text,
    validate_input,
)
from cyclic_tutte.pmd import pmd_feasibility_report, specs_from_lines
from cyclic_tutte.settings import CONFIG_DIR, DEFAULTS, ENV_FILE, ENV_PREFIX, get_settings

console = Console()
err_console = Console(stderr=True)


def _handle_errors(command):
    """Print library errors in red and exit with their family's exit code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CyclicTutteError as e:
            err_console.print(f"[red]✗[/red] {e}", markup=True, highlight=False)
            raise SystemExit(e.exit_code)
    return wrapper


def _setup_logging(verbose: int) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    else:
        level = get_settings().log_level
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _write_or_echo(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        err_console.print(f"[green]✓[/green] Wrote {output}")
    else:
        click.echo(text, nl=False)


def _print_polynomial(out: PolynomialOutput, as_json: bool) -> None:
    if as_json:
        click.echo(out.to_json(), nl=False)
        return
    click.echo(out.preview())
    if out.s11 is not None:
        click.echo(f"S(1,1) = {out.s11}")
        click.echo(f"T(1,1) = {out.t11}")


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for engine details.")
@_handle_errors
def cli(verbose):
    """Cyclic Tutte: matroid polynomials from (condensed) configurations of cyclic flats."""
    if ENV_FILE.exists():
        load_dotenv(ENV_FILE, override=False)
    _setup_logging(verbose)


@cli.group()
def config():
    """Manage cyclic-tutte settings."""


@config.command("set")
@click.argument("key")
@click.argument("value")
def config_set(key, value):
    """Store KEY=VALUE in ~/.cyclic_tutte/.env (the CYCLIC_TUTTE_ prefix is optional)."""
    key = key.upper()
    if not key.startswith(ENV_PREFIX):
        key = ENV_PREFIX + key
    known = {ENV_PREFIX + name for name in DEFAULTS} | {ENV_PREFIX + "LOG_LEVEL"}
    if key not in known:
        console.print(f"[yellow]{key} is not a recognised setting; storing it anyway.[/yellow]")
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)

    entries: dict[str, str] = {}
    if ENV_FILE.exists():
        for line in ENV_FILE.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line:
                k, v = line.split("=", 1)
                entries[k.strip()] = v.strip()

    entries[key] = value
    ENV_FILE.write_text("\n".join(f"{k}={v}" for k, v in entries.items()) + "\n")
    ENV_FILE.chmod(0o600)
    console.print(f"[green]✓[/green] Saved {key} to {ENV_FILE}")


@config.command("show")
def config_show():
    """Print stored settings."""
    if not ENV_FILE.exists():
        console.print("[dim]No config file found.[/dim]")
        return

    table = Table(title="Config", show_header=True, border_style="dim")
    table.add_column("Key", style="cyan")
    table.add_column("Value")
    for line in ENV_FILE.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            k, v = line.split("=", 1)
            table.add_row(k.strip(), v.strip())
    console.print(table)


def _apply_removal(loaded: LoadedInput, remove_block: int | None):
    if remove_block is None:
        return loaded.value
    if loaded.kind != "condensed":
        raise click.UsageError("--remove-block needs a condensed configuration input.")
    return loaded.value.remove_block(remove_block)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("--as-tutte", is_flag=True, help="Print T(x, y) = S(x - 1, y - 1) instead of S.")
@click.option("--check-oracle", is_flag=True, help="Also enumerate all subsets and compare (matroid inputs).")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON term list.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Oracle worker processes.")
@click.option("--flat-limit", type=click.IntRange(min=0), default=None, help="Override CYCLIC_TUTTE_FLAT_LIMIT.")
@click.option("--oracle-limit", type=click.IntRange(min=0), default=None, help="Override CYCLIC_TUTTE_ORACLE_LIMIT.")
@click.option("--remove-block", type=int, default=None, help="Drop an isolated block of a condensed input first.")
@click.option("--metadata", "metadata_file", type=click.Path(dir_okay=False), default=None,
              help="Write run metadata as JSON to this file.")
@_handle_errors
def rgp(file, as_tutte, check_oracle, as_json, jobs, flat_limit, oracle_limit, remove_block, metadata_file):
    """Compute the rank generating polynomial of any supported input FILE."""
    loaded = load_input(file)
    value = _apply_removal(loaded, remove_block)
    with err_console.status(f"Computing polynomial of {loaded.kind} input...", spinner="dots"):
        result = compute_rgp(value, flat_limit=flat_limit, check_oracle=check_oracle,
                             oracle_limit=oracle_limit, jobs=jobs)
    if metadata_file:
        Path(metadata_file).write_text(json.dumps(result.metadata, indent=2) + "\n", encoding="utf-8")
    if result.oracle_agrees is False:
        err_console.print("[red]✗[/red] Oracle mismatch.")
        click.echo(f"engine: {PolynomialOutput.from_rgp(result.rgp, as_tutte=as_tutte).preview()}")
        click.echo(f"oracle: {PolynomialOutput.from_rgp(result.oracle, as_tutte=as_tutte).preview()}")
        raise SystemExit(EXIT_ORACLE_MISMATCH)
    _print_polynomial(PolynomialOutput.from_rgp(result.rgp, as_tutte=as_tutte), as_json)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("--as-tutte", is_flag=True, help="Print T(x, y) instead of S(x, y).")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON term list.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes.")
@click.option("--oracle-limit", type=click.IntRange(min=0), default=None, help="Override CYCLIC_TUTTE_ORACLE_LIMIT.")
@_handle_errors
def oracle(file, as_tutte, as_json, jobs, oracle_limit):
    """Brute-force S(x, y) of a matroid FILE by enumerating every subset."""
    m = load_input(file, expect="matroid").value
    with err_console.status(f"Enumerating {1 << m.n} subsets...", spinner="dots"):
        s = rgp_bruteforce(m, limit=oracle_limit, jobs=jobs)
    _print_polynomial(PolynomialOutput.from_rgp(s, as_tutte=as_tutte), as_json)


@cli.command("cyclic-flats")
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("--flat-limit", type=click.IntRange(min=0), default=None, help="Override CYCLIC_TUTTE_FLAT_LIMIT.")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON list instead of a table.")
@_handle_errors
def cyclic_flats(file, flat_limit, as_json):
    """List the cyclic flats of a matroid FILE with their size and rank."""
    m = load_input(file, expect="matroid").value
    records = m.cyclic_flats(flat_limit)
    if as_json:
        rows = [{"set": rec.elements(), "size": rec.size, "rank": rec.rank} for rec in records]
        click.echo(json.dumps(rows, indent=2))
        return
    table = Table(title=f"Cyclic flats ({len(records)})", border_style="dim")
    table.add_column("#", style="dim")
    table.add_column("Size", style="cyan")
    table.add_column("Rank", style="cyan")
    table.add_column("Elements")
    for i, rec in enumerate(records):
        table.add_row(str(i), str(rec.size), str(rec.rank), "{" + ", ".join(map(str, rec.elements())) + "}")
    console.print(table)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write to a file instead of stdout.")
@click.option("--flat-limit", type=click.IntRange(min=0), default=None, help="Override CYCLIC_TUTTE_FLAT_LIMIT.")
@_handle_errors
def configuration(file, output, flat_limit):
    """Write the configuration of a matroid FILE (loops and coloops stripped)."""
    m = load_input(file, expect="matroid").value
    stripped, nloops, ncoloops = strip_loops_coloops(m)
    if nloops or ncoloops:
        err_console.print(f"[yellow]Stripped {nloops} loop(s) and {ncoloops} coloop(s).[/yellow]")
    _write_or_echo(configuration_to_json(extract_configuration(stripped, limit=flat_limit)), output)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("--group", "group_file", type=click.Path(allow_dash=True), default=None,
              help="Permutation file; condense by the orbits of the generated group.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write to a file instead of stdout.")
@click.option("--flat-limit", type=click.IntRange(min=0), default=None, help="Override CYCLIC_TUTTE_FLAT_LIMIT.")
@_handle_errors
def condense(file, group_file, output, flat_limit):
    """Write a condensed configuration of a matroid FILE.

    Without --group the coarsest condensation is computed.
    """
    m = load_input(file, expect="matroid").value
    if group_file is not None:
        generators = load_input(group_file, expect="permutations").value
        condensation = orbits_from_generators(m, generators, limit=flat_limit)
    else:
        stripped, _, _ = strip_loops_coloops(m)
        condensation = coarsest_condensation(extract_configuration(stripped, limit=flat_limit))
    err_console.print(
        f"[dim]{len(condensation.blocks)} blocks over {len(condensation.configuration)} cyclic flats[/dim]"
    )
    _write_or_echo(condensed_to_json(condensation.condensed), output)


def _report_panel(report) -> Panel:
    lines = [f"k = {list(report.k)}"]
    for v in report.violations:
        where = f" at (i, j) = ({v['i']}, {v['j']})" if v["i"] is not None else ""
        lines.append(f"[red]✗ {v['kind']}[/red]{where}: {v['detail']}")
    for note in report.notes:
        lines.append(f"[dim]{note}[/dim]")
    if report.ok:
        title, style = "[green]✓ no obstruction found[/green]", "green"
    else:
        title, style = f"[red]✗ {len(report.violations)} obstruction(s)[/red]", "red"
    return Panel("\n".join(lines), title=title, border_style=style)


@cli.command("pmd-check")
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("--batch", is_flag=True, help="FILE holds one sequence per line, e.g. `0 1 3 7`.")
@click.option("--json", "as_json", is_flag=True, help="Print the reports as JSON.")
@_handle_errors
def pmd_check(file, batch, as_json):
    """Look for obstructions to a perfect matroid design with flat sizes k."""
    if batch:
        specs = specs_from_lines(read_text(file).splitlines())
    else:
        specs = [load_input(file, expect="pmd").value]
    reports = [pmd_feasibility_report(spec) for spec in specs]
    if as_json:
        payload = [r.to_dict() for r in reports]
        click.echo(json.dumps(payload if batch else payload[0], indent=2))
    else:
        for report in reports:
            console.print(_report_panel(report))
    if not all(r.ok for r in reports):
        raise SystemExit(EXIT_INFEASIBLE)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True))
@_handle_errors
def validate(file):
    """Check that FILE is a valid input of any supported kind."""
    text = read_text(file)
    errors = validate_input(text)
    if errors:
        error_lines = "\n".join(f"  {i}. {e}" for i, e in enumerate(errors, 1))
        console.print(Panel(
            error_lines,
            title=f"[red]✗ {len(errors)} error(s) in {file}[/red]",
            border_style="red",
        ))
        raise SystemExit(EXIT_VALIDATION)
    loaded = parse_input(text, file)
    console.print(f"[green]✓[/green] {file} is a valid {loaded.kind} input.")
    value = loaded.value
    if loaded.kind == "matroid":
        console.print(f"  Elements: [cyan]{value.n}[/cyan]  Rank: [cyan]{value.rank_of_matroid}[/cyan]")
        loops, coloops = bitset.elements(value.loops()), bitset.elements(value.coloops())
        console.print(f"  Loops: [cyan]{loops}[/cyan]  Coloops: [cyan]{coloops}[/cyan]")
    elif loaded.kind in ("configuration", "condensed"):
        console.print(f"  Nodes: [cyan]{len(value)}[/cyan]")
    elif loaded.kind == "pmd":
        console.print(f"  Rank: [cyan]{value.r}[/cyan]  Elements: [cyan]{value.n}[/cyan]")
    else:
        console.print(f"  Generators: [cyan]{len(value)}[/cyan]")
