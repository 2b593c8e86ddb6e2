"""Experiment commands: rates, gap."""
import sys
from typing import Any, Dict, List, NoReturn, Optional

from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from vecapprox.config import ExperimentConfig, RootConfig, SpacePair
from vecapprox.harness import Report, emit_report, run_gap_experiment, run_rates
from vecapprox.utils import load_config, print_gap_summary, print_report_table
from vecapprox.validators import ensure_config_file, ensure_output_writable


console = Console()

_SPACE_FIELDS = ("n1", "n2", "p", "q", "u", "v")


def fail(message: str, hint: Optional[str] = None) -> NoReturn:
    console.print(f"[bold red]❌ {message}[/bold red]")
    if hint:
        console.print(f"[yellow]{hint}[/yellow]")
    sys.exit(1)


def build_space(**fields) -> SpacePair:
    """SpacePair from CLI flags; exits when one is missing or invalid."""
    missing = [f"--{name}" for name in _SPACE_FIELDS if fields.get(name) is None]
    if missing:
        fail(f"Missing space parameters: {', '.join(missing)}")
    try:
        return SpacePair(**{name: fields[name] for name in _SPACE_FIELDS})
    except (ValidationError, ValueError) as e:
        fail(f"Invalid space parameters: {e}")


def apply_config_overrides(config: RootConfig, **overrides) -> RootConfig:
    """Apply CLI overrides to a loaded configuration and re-validate it."""
    experiment = config.experiment
    data: Dict[str, Any] = experiment.model_dump()
    data["sp"] = experiment.sp.model_dump()
    if data["label"] == f"{experiment.algorithm}-mu{experiment.measure}":
        data["label"] = None

    # Space overrides
    for name in _SPACE_FIELDS:
        if overrides.get(name) is not None:
            data["sp"][name] = overrides[name]

    # Experiment overrides
    if overrides.get('budgets'):
        data["budgets"] = overrides['budgets']
    if overrides.get('m') is not None:
        data["m_override"] = overrides['m']
    for name in ("measure", "algorithm", "trials", "w", "workers", "label"):
        if overrides.get(name) is not None:
            data[name] = overrides[name]
    if overrides.get('seed') is not None:
        data["master_seed"] = overrides['seed']
    if overrides.get('out'):
        data["output"] = overrides['out']
    if overrides.get('format'):
        data["format"] = overrides['format']

    return RootConfig(experiment=ExperimentConfig.model_validate(data))


def get_config(config_path: Optional[str], **overrides) -> ExperimentConfig:
    """Experiment from a YAML file plus flags, or from flags alone."""
    try:
        if config_path:
            ensure_config_file(config_path)
            return apply_config_overrides(load_config(config_path), **overrides).experiment

        sp = build_space(**{name: overrides.get(name) for name in _SPACE_FIELDS})
        if not overrides.get('budgets'):
            fail("Missing --budgets", "Example: --budgets 128,256,512")
        fields = {
            "sp": sp,
            "budgets": overrides['budgets'],
            "m_override": overrides.get('m'),
            "master_seed": overrides.get('seed'),
            "output": overrides.get('out'),
        }
        for name in ("measure", "algorithm", "trials", "w", "workers", "format", "label"):
            fields[name] = overrides.get(name)
        return ExperimentConfig.model_validate({k: v for k, v in fields.items() if v is not None})
    except (ValidationError, ValueError) as e:
        fail(f"Invalid experiment configuration:\n{e}")


def write_or_print(report: Report, output: Optional[str], format: str, title: str) -> None:
    if output:
        ensure_output_writable(output)
        try:
            emit_report(report, output, format)
        except OSError as e:
            fail(str(e))
        console.print(f"[green]✅ Report written to {output}[/green]")
    else:
        print_report_table(report, title=title)


def rates(config_path: Optional[str] = None, **overrides) -> None:
    """Run the error grid over all budgets and fit the rate."""
    config = get_config(config_path, **overrides)
    console.print(
        f"[bold blue]Running {config.algorithm} on family {config.measure}: "
        f"{len(config.budgets)} budget(s) x {config.trials} trial(s)[/bold blue]"
    )
    try:
        report = run_rates(config)
    except (ValueError, RuntimeError) as e:
        fail(f"Experiment failed: {e}")
    write_or_print(report, config.output, config.format, title=config.label)


def gap(
    config_path: Optional[str] = None,
    budgets: Optional[List[int]] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    m: Optional[int] = None,
    workers: Optional[int] = None,
    out: Optional[str] = None,
    format: Optional[str] = None,
) -> None:
    """Adaptive against non-adaptive error on the hidden-row family, per budget."""
    if config_path:
        ensure_config_file(config_path)
        try:
            experiment = load_config(config_path).experiment
        except (ValidationError, ValueError) as e:
            fail(f"Invalid experiment configuration:\n{e}")
        console.print("[dim]The gap experiment fixes its own space pair; 'space' in the file is ignored.[/dim]")
        budgets = budgets or experiment.budgets
        trials = trials or experiment.trials
        seed = experiment.master_seed if seed is None else seed
        m = m or experiment.m_override
        workers = workers or experiment.workers
        out = out or experiment.output
        format = format or experiment.format
    if not budgets:
        fail("Missing --budget or --budgets", "Example: vecapprox gap --budgets 1024,4096,16384")

    trials = trials or 200
    records = []
    ratios = Table(title="Adaptivity gap", show_header=True, header_style="bold magenta")
    ratios.add_column("n")
    ratios.add_column("N1 = N2")
    ratios.add_column("adaptive ñ")
    ratios.add_column("ratio", style="green")
    for n in budgets:
        console.print(f"[bold blue]Gap experiment at n={n} ({trials} trials)[/bold blue]")
        try:
            result = run_gap_experiment(n, trials, seed or 0, m=m or 1, workers=workers or 1)
        except (ValueError, RuntimeError) as e:
            fail(f"Gap experiment failed: {e}")
        records.extend(result.report.records)
        side = result.report.records[0].n1
        ratios.add_row(str(n), str(side), str(result.adaptive_budget), f"{result.ratio:.4g}")
        if len(budgets) == 1:
            print_gap_summary(result)

    report = Report(records=records, note=result.report.note)
    write_or_print(report, out, format or "csv", title="gap")
    console.print(ratios)
