"""Command-line interface.

Subcommands: ``check`` (analyze a corpus argument or an argument file),
``countermodel`` (same, over the empty frame class), ``prove`` (validity
of one formula over a logic or frame list), and the four suite runners
``corpus``, ``axioms``, ``steps``, ``jacquette``.

Exit codes: 0 for valid / all expectations met, 1 for invalid / a failed
expectation, 2 for usage or input errors.  ``--json`` reports are
byte-deterministic for fixed inputs once ``--stable`` zeroes the timing
fields.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .arguments import (
    AnalysisReport,
    Argument,
    SuiteFailure,
    SuiteReport,
    analyze,
    axiom_correspondence_suite,
    builtin_corpus,
    corpus_suite,
    derivation_suite,
    jacquette_suite,
)
from .enumeration import KERNEL, CountermodelWitness, EnumerationBudget, find_countermodel
from .semantics import FrameClass, frame_class, model_to_dict
from .syntax import FormulaSyntaxError, atoms_of, desugar, parse, print_formula
from .tableau import Invalid, ResourceLimit, Valid, Verdict, prove_valid

__all__ = ["main", "export_dot", "load_argument_file"]


class CliError(Exception):
    """Input or usage problem; maps to exit code 2."""


def load_argument_file(path: str | Path) -> Argument:
    """Parse an argument file: JSON with name, named premise formulas, a
    frame list (condition names or logic aliases), and a conclusion."""
    try:
        raw = Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: not valid JSON: {e}") from None
    try:
        name = data["name"]
        premises = tuple(
            (entry["name"], parse(entry["formula"])) for entry in data["premises"]
        )
        frame = frame_class(data["frame"])
        conclusion = parse(data["conclusion"])
    except (KeyError, TypeError) as e:
        raise CliError(f"{path}: malformed argument file: {e!r}") from None
    except (FormulaSyntaxError, ValueError) as e:
        raise CliError(f"{path}: {e}") from None
    return Argument(name=name, premises=premises, frame=frame, conclusion=conclusion)


def resolve_argument(name_or_path: str) -> Argument:
    for a in builtin_corpus():
        if a.name == name_or_path:
            return a
    if name_or_path.endswith(".json") or Path(name_or_path).exists():
        return load_argument_file(name_or_path)
    known = ", ".join(a.name for a in builtin_corpus())
    raise CliError(f"{name_or_path!r} is neither a corpus argument ({known}) nor a file")


def export_dot(witness: CountermodelWitness) -> str:
    """Graphviz digraph: one node per world labeled with its true atoms,
    one edge per access pair, the witness world double-circled."""
    model = witness.model
    lines = ["digraph countermodel {"]
    for w in range(model.world_count):
        atoms = sorted(a for a, ws in model.valuation.items() if w in ws)
        label = f"w{w}" + (": " + " ".join(atoms) if atoms else "")
        shape = "doublecircle" if w == witness.world else "circle"
        lines.append(f'  w{w} [label="{label}" shape={shape}];')
    for i, j in sorted(model.access):
        lines.append(f"  w{i} -> w{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _frame_names(frame: FrameClass) -> list[str]:
    return sorted(c.value for c in frame)


def _verdict_dict(verdict: Verdict, witness: CountermodelWitness | None = None) -> dict:
    if isinstance(verdict, Valid):
        proof_json = verdict.proof.to_json()
        return {
            "verdict": "valid",
            "proof_id": hashlib.sha256(proof_json.encode()).hexdigest()[:16],
            "countermodel": None,
            "witness_world": None,
        }
    w = witness or verdict.witness
    return {
        "verdict": "invalid",
        "proof_id": None,
        "countermodel": model_to_dict(w.model),
        "witness_world": w.world,
    }


def _emit(report: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(text, end="")


def _witness_text(witness: CountermodelWitness) -> str:
    model = witness.model
    lines = [f"  countermodel ({model.world_count} worlds, fails at w{witness.world}):"]
    for w in range(model.world_count):
        atoms = sorted(a for a, ws in model.valuation.items() if w in ws)
        succ = sorted(j for i, j in model.access if i == w)
        lines.append(
            f"    w{w}: atoms {{{', '.join(atoms)}}} -> {{{', '.join('w%d' % j for j in succ)}}}"
        )
    return "\n".join(lines) + "\n"


def _minimized(
    witness: CountermodelWitness,
    premises: list,
    conclusion,
    frame: FrameClass,
    max_worlds: int,
) -> CountermodelWitness:
    """Smallest enumerator witness within the budget, else the one given."""
    budget = EnumerationBudget(
        max_worlds=min(witness.model.world_count, max_worlds),
        atoms=tuple(sorted(set().union(*(atoms_of(desugar(f)) for f in [*premises, conclusion])))),
    )
    found = find_countermodel(premises, conclusion, frame, budget)
    return found if found is not None else witness


def _maybe_write_dot(args, witness: CountermodelWitness | None) -> None:
    if getattr(args, "dot", None) is None:
        return
    if witness is None:
        print("note: verdict is valid; no countermodel to export", file=sys.stderr)
        return
    Path(args.dot).write_text(export_dot(witness))


def cmd_check(args) -> int:
    argument = resolve_argument(args.argument)
    t0 = time.perf_counter()
    report: AnalysisReport = analyze(argument)
    elapsed = 0.0 if args.stable else (time.perf_counter() - t0) * 1000
    no_frame = args.no_frame

    main_verdict = report.verdict_without_frame if no_frame else report.verdict
    main_witness = None
    if isinstance(main_verdict, Invalid):
        main_witness = _minimized(
            main_verdict.witness,
            argument.premise_formulas(),
            argument.conclusion,
            frozenset() if no_frame else argument.frame,
            args.max_worlds,
        )

    doc: dict = {
        "command": "check",
        "argument": argument.name,
        "premises": [
            {"name": n, "formula": print_formula(f)} for n, f in argument.premises
        ],
        "conclusion": print_formula(argument.conclusion),
        "frame": [] if no_frame else _frame_names(argument.frame),
        "stated_frame": _frame_names(argument.frame),
        "no_frame": no_frame,
        "result": _verdict_dict(main_verdict, main_witness),
        "triviality": None
        if report.triviality is None
        else _verdict_dict(report.triviality)["verdict"],
        "elapsed_ms": elapsed,
    }
    if args.minimal_frames:
        doc["minimal_frames"] = [_frame_names(fs) for fs in report.minimal_frames]

    u = args.unicode
    lines = [f"{argument.name}:"]
    for n, f in argument.premises:
        lines.append(f"  {n}: {print_formula(f, unicode=u)}")
    lines.append(f"  conclusion: {print_formula(argument.conclusion, unicode=u)}")
    frame_desc = "{}" if no_frame else "{" + ", ".join(_frame_names(argument.frame)) + "}"
    status = "Valid" if isinstance(main_verdict, Valid) else "Invalid"
    lines.append(f"  {status} under {frame_desc}")
    text = "\n".join(lines) + "\n"
    if main_witness is not None:
        text += _witness_text(main_witness)
    if report.triviality is not None:
        triv = "Valid" if isinstance(report.triviality, Valid) else "Invalid"
        text += f"  triviality schema: {triv}\n"
    if args.minimal_frames:
        shown = ", ".join(
            "{" + ", ".join(_frame_names(fs)) + "}" for fs in report.minimal_frames
        )
        text += f"  minimal frames: {shown}\n"
    if not args.stable:
        text += f"  ({elapsed:.1f} ms)\n"

    _emit(doc, args.json, text)
    _maybe_write_dot(args, main_witness)
    return 0 if isinstance(main_verdict, Valid) else 1


def cmd_prove(args) -> int:
    try:
        formula = parse(args.formula)
    except FormulaSyntaxError as e:
        raise CliError(str(e)) from None
    if args.logic is not None and args.frame is not None:
        raise CliError("use either --logic or --frame, not both")
    names: list[str] = []
    if args.logic is not None:
        names = [args.logic]
    elif args.frame is not None:
        names = [s.strip() for s in args.frame.split(",") if s.strip()]
    try:
        frame = frame_class(names)
    except ValueError as e:
        raise CliError(str(e)) from None

    t0 = time.perf_counter()
    verdict = prove_valid(formula, frame)
    elapsed = 0.0 if args.stable else (time.perf_counter() - t0) * 1000

    witness = None
    if isinstance(verdict, Invalid):
        witness = _minimized(verdict.witness, [], formula, frame, args.max_worlds)
    doc = {
        "command": "prove",
        "formula": print_formula(formula),
        "frame": _frame_names(frame),
        "result": _verdict_dict(verdict, witness),
        "elapsed_ms": elapsed,
    }
    u = args.unicode
    status = "Valid" if isinstance(verdict, Valid) else "Invalid"
    frame_desc = "{" + ", ".join(_frame_names(frame)) + "}"
    text = f"{print_formula(formula, unicode=u)}\n  {status} under {frame_desc}\n"
    if witness is not None:
        text += _witness_text(witness)
    if not args.stable:
        text += f"  ({elapsed:.1f} ms)\n"
    _emit(doc, args.json, text)
    _maybe_write_dot(args, witness)
    return 0 if isinstance(verdict, Valid) else 1


_SUITES = {
    "corpus": corpus_suite,
    "axioms": axiom_correspondence_suite,
    "steps": derivation_suite,
    "jacquette": jacquette_suite,
}


def cmd_suite(args) -> int:
    runner = _SUITES[args.suite_name]
    t0 = time.perf_counter()
    try:
        report: SuiteReport = runner()
        failed_entry = None
    except SuiteFailure as e:
        report = e.report
        failed_entry = e.entry
    elapsed = 0.0 if args.stable else (time.perf_counter() - t0) * 1000

    entries = []
    lines = [f"suite {report.suite}:"]
    n_ok = 0
    for entry in report.entries:
        checks = []
        for c in entry.checks:
            verdict_name = "valid" if isinstance(c.verdict, Valid) else "invalid"
            checks.append(
                {
                    "name": c.name,
                    "description": c.description,
                    "frame": _frame_names(c.frame),
                    "expected": c.expected,
                    "actual": verdict_name,
                    "ok": c.ok,
                    "countermodel": model_to_dict(c.witness.model) if c.witness else None,
                    "witness_world": c.witness.world if c.witness else None,
                }
            )
            expected = c.expected if c.expected is not None else "(reported)"
            mark = "ok " if c.ok else "FAIL"
            lines.append(f"  [{mark}] {c.name}: expected {expected}, got {verdict_name}")
        entries.append({"name": entry.name, "ok": entry.ok, "checks": checks})
        n_ok += entry.ok
    lines.append(f"{n_ok}/{len(report.entries)} entries match")
    doc = {
        "command": report.suite,
        "ok": report.ok,
        "entries": entries,
        "failed_entry": failed_entry,
        "elapsed_ms": elapsed,
    }
    text = "\n".join(lines) + "\n"
    if not args.stable:
        text += f"  ({elapsed:.1f} ms)\n"
    _emit(doc, args.json, text)
    return 0 if report.ok else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--stable", action="store_true", help="zero timing fields for golden comparisons")
    p.add_argument("--unicode", action="store_true", help="render formulas with symbol glyphs")


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dot", metavar="FILE", help="write the countermodel as a Graphviz digraph")
    p.add_argument("--max-worlds", type=int, default=3, metavar="N",
                   help="world budget for enumeration cross-checks (default 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modaltab",
        description="Propositional modal logic: tableau prover, Kripke countermodels, argument analysis.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s ({KERNEL} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="analyze a corpus argument or argument file")
    p_check.add_argument("argument", help="corpus name or path to a JSON argument file")
    p_check.add_argument("--no-frame", action="store_true",
                         help="re-check over the empty frame class")
    p_check.add_argument("--minimal-frames", action="store_true",
                         help="report minimal frame classes making the argument valid")
    _add_common(p_check)
    _add_model_flags(p_check)
    p_check.set_defaults(func=cmd_check)

    p_cm = sub.add_parser("countermodel", help="like check --no-frame")
    p_cm.add_argument("argument")
    p_cm.add_argument("--minimal-frames", action="store_true")
    _add_common(p_cm)
    _add_model_flags(p_cm)
    p_cm.set_defaults(func=cmd_check, no_frame=True)

    p_prove = sub.add_parser("prove", help="decide validity of a formula")
    p_prove.add_argument("formula")
    p_prove.add_argument("--logic", help="logic alias: K, T, D, B, S4, S5")
    p_prove.add_argument("--frame", help="comma-separated frame conditions")
    _add_common(p_prove)
    _add_model_flags(p_prove)
    p_prove.set_defaults(func=cmd_prove)

    for name, help_text in [
        ("corpus", "validity, no-frame invalidity, and triviality of all eight arguments"),
        ("axioms", "standard axiom / frame correspondence checks"),
        ("steps", "step-wise derivation replay"),
        ("jacquette", "modal modus tollens checks"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.set_defaults(func=cmd_suite, suite_name=name)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimit as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
