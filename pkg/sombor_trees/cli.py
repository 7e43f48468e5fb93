"""
Command-line entry point: build extremal trees, evaluate indices, check the
exchange condition and run the exhaustive verification.

Exit codes: 0 success, 1 counterexample found, 2 usage or validation error,
3 enumeration cap exceeded.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional, Sequence, Tuple

from dotenv import load_dotenv
from pydantic import ValidationError

from .construct import ConstructionTrace, alternating_greedy_all, alternating_greedy_one, greedy_tree
from .degseq import (
    DegreeSequence,
    InternalDegreeSequence,
    complete_internal,
    internal_degrees,
    parse_degree_sequence,
    parse_internal_sequence,
    serialize,
)
from .errors import CapExceeded, SomborError
from .indices import (
    MINUS_SOMBOR,
    EdgeFunction,
    check_exchange_condition,
    closed_form_disagreements,
    edge_function_names,
    get_edge_function,
    greedy_orientation,
    rf_index,
)
from .models import Command, ExtremalReport, OutputFormat, RunConfig, TreeRecord
from .oracle import ENUMERATION_CAP, extremal_report, local_min_check, summarize, sweep_verify
from .tree import Tree, canonical_form, read_edge_list, to_dot, to_edge_list

load_dotenv()

logger = logging.getLogger(__name__)

# Configuration
DEFAULT_JOBS = int(os.getenv("SOMBOR_JOBS", str(os.cpu_count() or 1)))
LOG_LEVEL = os.getenv("SOMBOR_LOG_LEVEL", "WARNING").upper()

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("sequence", nargs="?", help="Degree sequence, e.g. '3 2 2 1 1 1' or '3,2,2'")
    common.add_argument("--internal", action="store_true",
                        help="The sequence lists internal degrees only; leaves are added")
    common.add_argument("--index", "--f", dest="index_name", default="sombor",
                        help=f"Edge function: {', '.join(edge_function_names())}")
    common.add_argument("--format", dest="output_format", default="text",
                        choices=[f.value for f in OutputFormat])
    common.add_argument("--tree", dest="tree_file", help="Edge-list file (index, switch-scan)")
    common.add_argument("--grid", dest="grid_max", type=int, default=50, help="Largest degree on the condition grid")
    common.add_argument("--cap", type=int, default=ENUMERATION_CAP, help="Enumeration cap on labeled trees")
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker processes for verify and sweep")
    common.add_argument("--n-max", dest="n_max", type=int, default=10, help="Largest tree order for sweep")
    common.add_argument("--all", dest="all_variants", action="store_true",
                        help="altgreedy / switch-scan: every alternating greedy tree")
    common.add_argument("--maximize", action="store_true",
                        help="switch-scan: look for increasing switches on --tree input, "
                             "or on sequence input when the index has no greedy orientation")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="sombor-trees",
        description="Extremal trees of the Sombor index for a tree degree sequence.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    helps = {
        Command.GREEDY: "Greedy tree (Sombor minimiser)",
        Command.ALTGREEDY: "Alternating greedy tree(s) (Sombor maximisers)",
        Command.INDEX: "Evaluate an index on a tree read from --tree FILE",
        Command.VERIFY: "Exhaustively verify extremality for one sequence",
        Command.SWEEP: "Verify every degree sequence up to --n-max",
        Command.CONDITION: "Check the exchange condition for an edge function",
        Command.SWITCH_SCAN: "Look for an edge switch improving a tree",
    }
    for command, text in helps.items():
        commands.add_parser(command.value, parents=[common], help=text)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: LOG_LEVEL, 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="[%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _sequences(config: RunConfig) -> Tuple[DegreeSequence, InternalDegreeSequence]:
    if config.internal:
        internal = parse_internal_sequence(config.sequence)
        return complete_internal(internal), internal
    sequence = parse_degree_sequence(config.sequence)
    return sequence, internal_degrees(sequence)


def _greedy_for(sequence: DegreeSequence, internal: InternalDegreeSequence) -> Tree:
    if sequence.n == 1:
        return Tree.single_vertex()
    return greedy_tree(internal)


def _record(label: str, tree: Tree, f: EdgeFunction) -> TreeRecord:
    return TreeRecord(
        label=label,
        n=tree.n,
        edges=list(tree.edges),
        degrees=list(tree.degree_list),
        form=canonical_form(tree).decode("ascii"),
        index_name=f.name,
        value=rf_index(tree, f),
    )


def _trace_lines(trace: ConstructionTrace) -> List[str]:
    lines = []
    for number, step in enumerate(trace, 1):
        children = sorted((step.subtree.degree(w) for w in step.subtree.adjacency[step.root]), reverse=True)
        line = (f"step {number}: {step.rule} on ({serialize(step.sequence)}) "
                f"root children [{serialize(children)}] remaining ({serialize(step.remaining)})")
        if step.join is not None:
            line += (f" joined at leaf {step.join.leaf} of S (neighbour degree {step.join.neighbor_degree}, "
                     f"{len(step.join.candidates)} admissible)")
        lines.append(line)
    return lines


def _emit_tree(record: TreeRecord, tree: Tree, fmt: OutputFormat,
               trace: Optional[ConstructionTrace] = None) -> None:
    summary = f"# {record.label}: {record.index_name} = {record.value:.6f}"
    if fmt is OutputFormat.STRUCTURED:
        print(record.model_dump_json())
    elif fmt is OutputFormat.EDGES:
        print(to_edge_list(tree))
        print(summary)
    elif fmt is OutputFormat.DOT:
        print(to_dot(tree))
        print(summary)
    else:
        print(f"{record.label}")
        print(f"n: {record.n}")
        print(f"degrees: {serialize(sorted(record.degrees, reverse=True))}")
        print(f"form: {record.form}")
        print(f"{record.index_name}: {record.value:.6f}")
        for line in _trace_lines(trace or ConstructionTrace()):
            print(line)
        print("edges:")
        print(to_edge_list(tree))


def _run_greedy(config: RunConfig, f: EdgeFunction) -> int:
    sequence, internal = _sequences(config)
    tree = _greedy_for(sequence, internal)
    _emit_tree(_record("greedy", tree, f), tree, config.output_format)
    return EXIT_OK


def _run_altgreedy(config: RunConfig, f: EdgeFunction) -> int:
    sequence, internal = _sequences(config)
    if sequence.n == 1:
        tree = Tree.single_vertex()
        _emit_tree(_record("alternating greedy", tree, f), tree, config.output_format)
        return EXIT_OK

    if not config.all_variants:
        tree, trace = alternating_greedy_one(internal)
        _emit_tree(_record("alternating greedy", tree, f), tree, config.output_format, trace)
        return EXIT_OK

    variants = alternating_greedy_all(internal)
    for number, (tree, trace) in enumerate(variants, 1):
        if number > 1 and config.output_format is not OutputFormat.STRUCTURED:
            print()
        label = f"alternating greedy {number}/{len(variants)}"
        _emit_tree(_record(label, tree, f), tree, config.output_format, trace)
    return EXIT_OK


def _run_index(config: RunConfig, f: EdgeFunction) -> int:
    tree = read_edge_list(config.tree_file)
    _emit_tree(_record(config.tree_file, tree, f), tree, config.output_format)
    return EXIT_OK


def verdict_line(report: ExtremalReport) -> str:
    low = f"{report.min_value:.6f}"
    high = f"{report.max_value:.6f}"
    if report.orientation == "min":
        return (f"min {low} attained by greedy: {_yes(report.greedy_attains_min)}; "
                f"max {high} attained by alternating greedy: {_yes(report.alt_greedy_attains_max)}")
    if report.orientation == "max":
        return (f"max {high} attained by greedy: {_yes(report.greedy_attains_max)}; "
                f"min {low} attained by alternating greedy: {_yes(report.alt_greedy_attains_min)}")
    return f"min {low}; max {high}; no extremal orientation known for {report.index_name}"


def _report_lines(report: ExtremalReport) -> List[str]:
    lines = [
        f"sequence: {serialize(report.sequence)}",
        f"index: {report.index_name}",
        f"labeled_count: {report.labeled_count}",
        f"unlabeled_count: {report.unlabeled_count}",
        f"min: {report.min_value:.6f}",
        f"max: {report.max_value:.6f}",
        f"argmin_forms: {len(report.argmin_forms)}",
        f"argmax_forms: {len(report.argmax_forms)}",
        f"greedy_value: {report.greedy_value:.6f}",
        f"greedy_attains_min: {_yes(report.greedy_attains_min)}",
        f"greedy_attains_max: {_yes(report.greedy_attains_max)}",
        f"alt_greedy_trees: {len(report.alt_greedy_values)}",
        f"alt_greedy_attains_min: {_yes(report.alt_greedy_attains_min)}",
        f"alt_greedy_attains_max: {_yes(report.alt_greedy_attains_max)}",
    ]
    for number, item in enumerate(report.alt_greedy_values, 1):
        lines.append(f"alt_greedy_{number}: {item.value:.6f} min={_yes(item.attains_min)} "
                     f"max={_yes(item.attains_max)}")
    return lines


def _run_verify(config: RunConfig, f: EdgeFunction) -> int:
    sequence, _ = _sequences(config)
    report = extremal_report(sequence, f, cap=config.cap, jobs=config.jobs)

    if config.output_format is OutputFormat.STRUCTURED:
        print(report.model_dump_json())
    else:
        print(verdict_line(report))
        for line in _report_lines(report):
            print(line)
    return EXIT_COUNTEREXAMPLE if report.verified is False else EXIT_OK


def _run_sweep(config: RunConfig, f: EdgeFunction) -> int:
    reports = sweep_verify(config.n_max, f, cap=config.cap, jobs=config.jobs)
    summary = summarize(reports, config.n_max, f.name)

    if config.output_format is OutputFormat.STRUCTURED:
        for report in reports:
            print(report.model_dump_json())
        print(summary.model_dump_json())
    else:
        for report in reports:
            print(f"{serialize(report.sequence)}: {verdict_line(report)}")
        print(f"sequences: {summary.sequences}")
        print(f"greedy_failures: {len(summary.greedy_failures)}")
        print(f"alt_greedy_failures: {len(summary.alt_greedy_failures)}")
        for failed in summary.greedy_failures + summary.alt_greedy_failures:
            print(f"failed: {serialize(failed)}")
        print(f"alt_greedy_nonuniform: {len(summary.alt_greedy_nonuniform)}")
    return EXIT_COUNTEREXAMPLE if summary.failed else EXIT_OK


def _run_condition(config: RunConfig, f: EdgeFunction) -> int:
    report = check_exchange_condition(f, config.grid_max)
    agreement = None
    if f == MINUS_SOMBOR:
        agreement = closed_form_disagreements(config.grid_max)

    if config.output_format is OutputFormat.STRUCTURED:
        print(report.model_dump_json())
    else:
        print(f"holds: {_yes(report.holds)}, strict: {_yes(report.strict_holds)}")
        if report.witness is not None:
            print(f"witness: {' '.join(map(str, report.witness))} margin {report.witness_margin:.6g}")
        if report.strict_witness is not None:
            print(f"strict_witness: {' '.join(map(str, report.strict_witness))}")
        if agreement is not None:
            checked, disagreements = agreement
            print(f"closed_form_agrees: {_yes(not disagreements)} ({checked} quadruples)")
    return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE


def _run_switch_scan(config: RunConfig, f: EdgeFunction) -> int:
    if config.tree_file is not None:
        targets = [(config.tree_file, read_edge_list(config.tree_file), config.maximize)]
    else:
        sequence, internal = _sequences(config)
        # the greedy tree is scanned toward the extreme it should attain,
        # alternating greedy trees toward the opposite one
        orientation = greedy_orientation(f)
        greedy_max = config.maximize if orientation is None else orientation == "max"
        targets = [("greedy", _greedy_for(sequence, internal), greedy_max)]
        if config.all_variants and internal.internal:
            variants = alternating_greedy_all(internal)
            targets += [(f"alternating greedy {i}/{len(variants)}", tree, not greedy_max)
                        for i, (tree, _) in enumerate(variants, 1)]

    status = EXIT_OK
    for label, tree, maximize in targets:
        kind = "maximum" if maximize else "minimum"
        check = local_min_check(tree, f, maximize=maximize)
        if check:
            print(f"{label}: local {kind}: yes")
            continue
        status = EXIT_COUNTEREXAMPLE
        switch = check.improving
        print(f"{label}: local {kind}: no; switch {switch.first} {switch.second} {switch.pattern.value} "
              f"takes {f.name} from {switch.before:.6f} to {switch.after:.6f}")
    return status


HANDLERS = {
    Command.GREEDY: _run_greedy,
    Command.ALTGREEDY: _run_altgreedy,
    Command.INDEX: _run_index,
    Command.VERIFY: _run_verify,
    Command.SWEEP: _run_sweep,
    Command.CONDITION: _run_condition,
    Command.SWITCH_SCAN: _run_switch_scan,
}


def run(config: RunConfig) -> int:
    """Dispatch a validated configuration; returns the exit status."""
    try:
        f = get_edge_function(config.index_name)
        return HANDLERS[config.command](config, f)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (SomborError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    _configure_logging(args.verbose)
    try:
        config = RunConfig(**{k: v for k, v in vars(args).items() if k != "verbose"})
    except ValidationError as e:
        for error in e.errors():
            print(f"error: {error['msg']}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
