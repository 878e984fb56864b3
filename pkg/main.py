"""
Main entry point for the slice placement engine.
Provides the command-line interface: solve, verify, gen, orchestrate, experiment, stats.
"""

import asyncio
import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from src.experiments import (
    aggregate,
    read_records,
    run_experiment,
    series_table,
    trend_report,
    write_records
)
from src.milp import build_model, write_lp
from src.models import (
    BuildConfig,
    ExperimentPlan,
    PairMode,
    PlacementSolution,
    SliceRequest,
    SolveStatus,
    SolverLimits,
    SubstrateGraph,
    VerificationReport,
    Verdict
)
from src.network import gamma, validate
from src.network.io import (
    GenParamsDocument,
    PlanDocument,
    RequestSequenceDocument,
    dump_instance,
    dump_solution,
    load_instance,
    load_solution,
    read_document
)
from src.orchestrator import Orchestrator, ReoptMode, conservation_violations
from src.scenarios import PRESETS, gen_requests, gen_substrate, preset
from src.solver import brute_force_optimum, parse_solution_file, solve_exact
from src.utils import logger, settings
from src.utils.errors import InvalidInstance, PlacementError
from src.verifier import verify


console = Console()

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_TIMEOUT = 3

STATUS_EXIT = {
    SolveStatus.OPTIMAL: EXIT_OK,
    SolveStatus.INFEASIBLE: EXIT_INFEASIBLE,
    SolveStatus.TIMEOUT: EXIT_TIMEOUT,
}


def build_config(args: argparse.Namespace) -> BuildConfig:
    overrides = {}
    if getattr(args, "mode", None) in ("direct", "mesh"):
        overrides["pair_mode"] = PairMode(args.mode)
    if getattr(args, "pair_mode", None):
        overrides["pair_mode"] = PairMode(args.pair_mode)
    if getattr(args, "pin_endpoints", False):
        overrides["pin_endpoints"] = True
    return BuildConfig.from_settings(**overrides)


def load_validated(path: Path) -> tuple[SubstrateGraph, list[SliceRequest]]:
    """Load an instance document and reject it if it violates any invariant."""
    graph, requests = load_instance(path)
    issues = validate(graph, requests)
    if issues:
        table = Table(title="Validation Issues", show_header=True, header_style="bold red")
        table.add_column("Code", style="red")
        table.add_column("Subject", style="white")
        table.add_column("Message", style="dim")
        for issue in issues:
            table.add_row(issue.code.value, issue.subject, issue.message)
        console.print(table)
        raise InvalidInstance(issues)
    return graph, requests


def display_solution(solution: PlacementSolution, title: str = "Placement") -> None:
    """Display a placement as rich tables."""
    status = solution.status.value
    color = {"optimal": "green", "infeasible": "red"}.get(status, "yellow")
    console.print()
    console.print(Panel.fit(
        f"[bold {color}]{status.upper()}[/bold {color}]  "
        f"active nodes: [bold]{solution.objective}[/bold]  "
        f"search nodes: {solution.explored_nodes}  time: {solution.solve_time_s:.3f}s",
        title=f"[bold cyan]{title}[/bold cyan]",
        border_style=color
    ))

    if solution.assignments:
        table = Table(title="NF Assignment", show_header=True, header_style="bold magenta")
        table.add_column("Slice", style="cyan")
        table.add_column("SFC", style="cyan")
        table.add_column("NF", style="white")
        table.add_column("Node", style="bold white")
        for a in solution.assignments:
            table.add_row(a.slice_id, a.sfc_id, a.nf_id, a.node_id)
        console.print(table)

    if solution.routes:
        table = Table(title="Virtual Links", show_header=True, header_style="bold yellow")
        table.add_column("Slice", style="cyan")
        table.add_column("SFC", style="cyan")
        table.add_column("Hop", style="white")
        table.add_column("Pair", style="bold white")
        table.add_column("Latency (ms)", justify="right")
        table.add_column("Path", style="dim")
        for r in solution.routes:
            table.add_row(r.slice_id, r.sfc_id, f"{r.source} -> {r.hop}", f"({r.u}, {r.v})",
                          f"{r.latency_budget:g}", "-".join(r.path))
        console.print(table)

    if solution.diagnostics:
        console.print("[bold cyan]Diagnostics:[/bold cyan]")
        for line in solution.diagnostics:
            console.print(f"  [dim]{line}[/dim]")


def display_report(report: VerificationReport) -> None:
    table = Table(title="Verification", show_header=True, header_style="bold blue")
    table.add_column("Family", style="cyan", width=12)
    table.add_column("Verdict")
    table.add_column("First violation", style="white")
    table.add_column("Detail", style="dim")
    for family in report.families:
        verdict = "[bold green]PASS[/bold green]" if family.verdict == Verdict.PASS else "[bold red]FAIL[/bold red]"
        table.add_row(family.family.value, verdict, family.first_violation or "", family.detail or "")
    console.print(table)


def cmd_solve(args: argparse.Namespace) -> int:
    graph, requests = load_validated(args.instance)
    config = build_config(args)
    limits = SolverLimits.from_settings(**({"time_budget": args.time_limit} if args.time_limit else {}))
    console.print(f"[dim]{len(graph.nodes)} nodes, {len(requests)} slice(s), {gamma(requests)} NF(s)[/dim]")

    if args.export_lp:
        model, _ = build_model(graph, requests, config)
        write_lp(model, args.export_lp)
        console.print(f"[green]LP model written to {args.export_lp}[/green]")

    with console.status("[bold green]Solving...[/bold green]", spinner="dots"):
        if args.brute_force:
            solution = brute_force_optimum(graph, requests, config, limits)
        else:
            solution = solve_exact(graph, requests, config, limits)

    display_solution(solution)
    if solution.assignments:
        display_report(verify(graph, requests, solution, config))
    if args.output:
        dump_solution(solution, args.output)
        console.print(f"[green]Solution written to {args.output}[/green]")
    return STATUS_EXIT[solution.status]


def cmd_verify(args: argparse.Namespace) -> int:
    graph, requests = load_validated(args.instance)
    config = build_config(args)
    if args.solution.suffix == ".sol":
        _, index = build_model(graph, requests, config)
        solution = parse_solution_file(args.solution.read_text(), index)
    else:
        solution = load_solution(args.solution)

    report = verify(graph, requests, solution, config)
    display_report(report)
    if args.json:
        print(report.model_dump_json(indent=2))
    return EXIT_OK if report.overall else EXIT_ERROR


def cmd_gen(args: argparse.Namespace) -> int:
    params = read_document(args.params, GenParamsDocument).params()
    if args.seed is not None:
        params = params.model_copy(update={"seed": args.seed})
    graph = gen_substrate(params)
    requests = gen_requests(args.slices, args.sfcs, args.nfs, params)
    dump_instance(graph, requests, args.output)
    console.print(f"[green]Instance written to {args.output}[/green] "
                  f"[dim]({len(graph.nodes)} nodes, {len(graph.links)} links, {gamma(requests)} NFs)[/dim]")
    return EXIT_OK


async def cmd_orchestrate(args: argparse.Namespace) -> int:
    document = read_document(args.requests, RequestSequenceDocument)
    orchestrator = Orchestrator(document.graph, ReoptMode(args.mode), build_config(args), SolverLimits.from_settings())

    queue: asyncio.Queue = asyncio.Queue()
    for item in document.requests:
        queue.put_nowait(item)
    queue.put_nowait(None)
    state = await orchestrator.run_loop(queue, asyncio.Event())

    table = Table(title="Event Log", show_header=True, header_style="bold magenta")
    table.add_column("#", justify="right")
    table.add_column("Event", style="cyan")
    table.add_column("Slice", style="white")
    table.add_column("Rev", justify="right")
    table.add_column("At", justify="right")
    table.add_column("Active", justify="right")
    table.add_column("Detail", style="dim")
    for event in state.events:
        table.add_row(str(event.seq), event.kind.value, event.slice_id, str(event.revision),
                      "" if event.at is None else f"{event.at:g}",
                      "" if event.objective is None else str(event.objective), event.detail)
    console.print(table)
    display_solution(state.solution, title="Consolidated Placement")

    problems = conservation_violations(state)
    for problem in problems:
        console.print(f"[bold red]Conservation violated:[/bold red] {problem}")
    if args.events:
        with open(args.events, 'w') as f:
            for event in state.events:
                f.write(event.model_dump_json() + "\n")
        console.print(f"[green]Event log written to {args.events}[/green]")
    return EXIT_ERROR if problems else EXIT_OK


def load_plan(name: str) -> ExperimentPlan:
    if name.upper() in PRESETS:
        return preset(name)
    return read_document(name, PlanDocument).plan()


def cmd_experiment(args: argparse.Namespace) -> int:
    plan = load_plan(args.plan)
    plan = plan.truncated(max_points=args.max_points, repetitions=args.reps, max_value=args.max_value)
    if args.time_limit:
        plan = plan.model_copy(update={"time_limit": args.time_limit})
    if not plan.points:
        console.print("[red]No configuration points left after truncation[/red]")
        return EXIT_ERROR

    total = len(plan.points) * plan.repetitions
    with console.status(f"[bold green]Running {plan.name} ({total} instances)...[/bold green]", spinner="dots"):
        result = run_experiment(plan, args.seed, args.workers, build_config(args))

    write_records(result.records, args.output)
    series_path = args.output.with_name(f"{args.output.stem}.series.csv")
    series_table(result.records, plan.swept).to_csv(series_path, index=False)
    console.print(f"[green]{len(result.records)} records written to {args.output}[/green]")
    console.print(f"[green]Series written to {series_path}[/green]")
    display_summaries(result.records, plan.swept)
    return EXIT_OK


def display_summaries(records, swept: str) -> None:
    frame = series_table(records, swept)
    table = Table(title=f"Active nodes and solve time by {swept}", show_header=True, header_style="bold magenta")
    for column in ("preset", "x", "n", "excluded", "mean", "ci", "time_mean", "time_ci"):
        table.add_column(column, justify="right" if column != "preset" else "left")
    for row in frame.itertuples(index=False):
        table.add_row(row.preset, str(row.x), str(row.n), str(row.excluded), f"{row.mean:.3f}", f"{row.ci:.3f}",
                      f"{row.time_mean:.4f}", f"{row.time_ci:.4f}")
    console.print(table)


def cmd_stats(args: argparse.Namespace) -> int:
    records = read_records(args.csv)
    if not records:
        console.print("[red]No records[/red]")
        return EXIT_ERROR
    display_summaries(records, args.swept)

    for label in sorted({r.preset for r in records}):
        group = [r for r in records if r.preset == label]
        try:
            summary = aggregate(group, swept=args.swept)
        except PlacementError as e:
            console.print(f"[yellow]{label}: {e}[/yellow]")
            summary = aggregate(group)
        lines = [f"records: {summary.n} ({summary.excluded} without a placement)"]
        if summary.mean is not None:
            lines.append(f"active nodes: mean {summary.mean:.4f}, std {summary.std:.4f}, 95% CI +/-{summary.ci:.4f}")
        lines += [
            f"solve time: mean {summary.time_mean:.4f}s, std {summary.time_std:.4f}s, 95% CI +/-{summary.time_ci:.4f}s",
        ]
        for regression in (summary.regression, summary.regression_on_active):
            if regression is not None:
                lines.append(f"{regression.y_label} = {regression.alpha:.4f} * {regression.x_label} "
                             f"+ {regression.beta:.4f}  (r={regression.r_value:.3f})")
        trend = trend_report(group, args.swept)
        lines.append(
            f"trend: spearman {trend.spearman_active if trend.spearman_active is not None else 'n/a'}, "
            f"log-log time slope {trend.loglog_time_slope if trend.loglog_time_slope is not None else 'n/a'}, "
            f"timeouts {trend.timeout_rate:.1%}, infeasible {trend.infeasible_rate:.1%}"
        )
        console.print(Panel("\n".join(lines), title=f"[bold]{label}[/bold]", border_style="blue"))
    if args.json:
        print(json.dumps([aggregate([r for r in records if r.preset == p]).model_dump()
                          for p in sorted({r.preset for r in records})], indent=2))
    return EXIT_OK


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Network slice placement engine - minimum active-node SFC placement"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="Solve an instance document")
    solve.add_argument("instance", type=Path)
    solve.add_argument("--mode", choices=["direct", "mesh"], help="Node pairs a virtual link may use")
    solve.add_argument("--pin-endpoints", action="store_true", help="Account ingress/egress nodes")
    solve.add_argument("--time-limit", type=float, help="Search time budget in seconds")
    solve.add_argument("--export-lp", type=Path, help="Also write the MILP in LP format")
    solve.add_argument("--brute-force", action="store_true", help="Use exhaustive enumeration (tiny instances)")
    solve.add_argument("-o", "--output", type=Path, help="Write the solution as JSON")

    check = subparsers.add_parser("verify", help="Verify a solution against an instance")
    check.add_argument("instance", type=Path)
    check.add_argument("solution", type=Path, help="Solution JSON, or a .sol external solver dump")
    check.add_argument("--mode", choices=["direct", "mesh"])
    check.add_argument("--pin-endpoints", action="store_true")
    check.add_argument("--json", action="store_true", help="Print the report as JSON")

    gen = subparsers.add_parser("gen", help="Generate a random instance")
    gen.add_argument("params", type=Path, help="GenParams document")
    gen.add_argument("-o", "--output", type=Path, required=True)
    gen.add_argument("--slices", type=int, default=1)
    gen.add_argument("--sfcs", type=int, default=2)
    gen.add_argument("--nfs", type=int, default=4)
    gen.add_argument("--seed", type=int, help="Override the document's seed")

    orchestrate = subparsers.add_parser("orchestrate", help="Replay a request sequence through the control loop")
    orchestrate.add_argument("requests", type=Path, help="Request-sequence document")
    orchestrate.add_argument("--mode", choices=["full", "incremental"], default="full")
    orchestrate.add_argument("--pair-mode", choices=["direct", "mesh"])
    orchestrate.add_argument("--pin-endpoints", action="store_true")
    orchestrate.add_argument("--events", type=Path, help="Write the event log as JSON lines")

    experiment = subparsers.add_parser("experiment", help="Run a preset or plan document")
    experiment.add_argument("plan", help=f"Preset ({', '.join(PRESETS)}) or plan document path")
    experiment.add_argument("--seed", type=int, default=settings.master_seed)
    experiment.add_argument("--reps", type=int, help="Repetitions per configuration point")
    experiment.add_argument("--max-points", type=int, help="Keep only the first N configuration points")
    experiment.add_argument("--max-value", type=int, help="Keep points whose swept value is at most this")
    experiment.add_argument("--workers", type=int, default=settings.workers)
    experiment.add_argument("--time-limit", type=float)
    experiment.add_argument("--pair-mode", choices=["direct", "mesh"])
    experiment.add_argument("-o", "--output", type=Path, required=True, help="Records CSV")

    stats = subparsers.add_parser("stats", help="Summarize an experiment CSV")
    stats.add_argument("csv", type=Path)
    stats.add_argument("--swept", choices=["slices", "sfcs", "nfs"], default="slices")
    stats.add_argument("--json", action="store_true")
    return parser


async def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "orchestrate":
            return await cmd_orchestrate(args)
        if args.command == "experiment":
            return cmd_experiment(args)
        return cmd_stats(args)

    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user[/yellow]")
        return EXIT_OK
    except InvalidInstance as e:
        console.print(f"\n[bold red]Invalid instance:[/bold red] {e}")
        return EXIT_ERROR
    except PlacementError as e:
        console.print(f"\n[bold red]Error:[/bold red] {str(e)}")
        return EXIT_ERROR
    except Exception as e:
        console.print(f"\n[bold red]Error:[/bold red] {str(e)}")
        logger.exception("Error in main")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
