"""The built-in argument corpus and its analysis suites.

Eight variants of the same two-premise modal argument (necessity premise,
possibility premise, existential or necessity conclusion) under symmetric
or Euclidean frame assumptions, plus the machinery that examines them:
validity under the stated frame class, invalidity without it, the
triviality schema showing the first premise already collapses the
argument to "possibility implies (necessary) existence", minimal frame
requirement search, the standard-axiom correspondence suite, a step-wise
derivation replay, and the modal modus-tollens checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import CountermodelWitness, minimize_countermodel
from .semantics import LOGICS, FrameClass, FrameCondition
from .syntax import (
    Atom,
    Diamond,
    Formula,
    Implies,
    atoms_of,
    fresh_atom,
    parse,
    print_formula,
    substitute,
)
from .tableau import Invalid, Valid, Verdict, decide, prove_valid

__all__ = [
    "Argument",
    "AnalysisReport",
    "DerivationScript",
    "CheckResult",
    "SuiteEntryResult",
    "SuiteReport",
    "ShapeError",
    "SuiteFailure",
    "builtin_corpus",
    "corpus_entry",
    "analyze",
    "triviality_check",
    "triviality_lifted",
    "frame_requirement_search",
    "axiom_correspondence_suite",
    "corpus_suite",
    "run_derivation",
    "derivation_suite",
    "eder_ramharter_manual",
    "jacquette_suite",
]


class ShapeError(ValueError):
    """Argument does not have the two-premise possibility form."""


class SuiteFailure(Exception):
    """An expected verdict did not hold; carries the full report."""

    def __init__(self, entry: str, report: "SuiteReport"):
        self.entry = entry
        self.report = report
        super().__init__(f"suite {report.suite!r}: entry {entry!r} failed")


@dataclass(frozen=True)
class Argument:
    name: str
    premises: tuple[tuple[str, Formula], ...]
    frame: FrameClass
    conclusion: Formula

    def __post_init__(self):
        names = [n for n, _ in self.premises]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate premise names in {self.name!r}")

    def premise_formulas(self) -> list[Formula]:
        return [f for _, f in self.premises]


@dataclass(frozen=True)
class AnalysisReport:
    name: str
    verdict: Verdict
    verdict_without_frame: Verdict
    triviality: Verdict | None  # None when the argument shape does not fit
    minimal_frames: tuple[FrameClass, ...]


@dataclass(frozen=True)
class DerivationScript:
    name: str
    premises: tuple[tuple[str, Formula], ...]
    frame: FrameClass
    steps: tuple[tuple[str, Formula], ...]


@dataclass(frozen=True)
class CheckResult:
    name: str
    description: str
    frame: FrameClass
    expected: str | None  # "valid", "invalid", or None for report-only
    verdict: Verdict
    witness: CountermodelWitness | None  # minimized countermodel if invalid
    ok: bool


@dataclass(frozen=True)
class SuiteEntryResult:
    name: str
    checks: tuple[CheckResult, ...]
    ok: bool


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    entries: tuple[SuiteEntryResult, ...]
    ok: bool

    def entry(self, name: str) -> SuiteEntryResult:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def _arg(name: str, premises: list[tuple[str, str]], frame: list[str], conclusion: str) -> Argument:
    return Argument(
        name=name,
        premises=tuple((n, parse(f)) for n, f in premises),
        frame=frozenset(FrameCondition(c) for c in frame),
        conclusion=parse(conclusion),
    )


def builtin_corpus() -> list[Argument]:
    """The eight argument variants, keyed by their usual attributions."""
    return [
        _arg("eder_ramharter", [("ER1", "g -> []g"), ("ER2", "<>g")], ["symmetric"], "g"),
        _arg("kane", [("K1", "[](g -> []g)"), ("K2", "<>g")], ["symmetric"], "g"),
        _arg("malcolm", [("M1", "g -> []g"), ("M2", "<>g")], ["euclidean"], "[]g"),
        _arg("malcolm_alt", [("M1", "g -> []g"), ("M2", "<>g")], ["symmetric"], "[]g"),
        _arg("adams", [("A1", "[](g -> []g)"), ("A2", "<>g")], ["euclidean"], "[]g"),
        _arg("adams_alt", [("A1", "[](g -> []g)"), ("A2", "<>g")], ["symmetric"], "[]g"),
        _arg("hartshorne", [("H1", "g |> []g"), ("H2", "<>g")], ["symmetric"], "g"),
        _arg("hartshorne_alt", [("H1", "g |> []g"), ("H2", "<>g")], ["euclidean"], "[]g"),
    ]


def corpus_entry(name: str) -> Argument:
    for a in builtin_corpus():
        if a.name == name:
            return a
    raise KeyError(f"no corpus argument named {name!r}")


def triviality_check(a: Argument) -> Verdict:
    """Does the frame class make premise 1 entail "premise 2 directly
    implies the conclusion"?

    The argument must consist of exactly two premises with the second a
    bare possibility claim.  Both premise 1 and the conclusion are
    schematized by a fresh atom, and the check is the global consequence
    premise1' => (<>p -> conclusion') over the argument's frame class.
    """
    schema_atom = _triviality_atom(a)
    fresh, p1, conclusion = _triviality_schema(a, schema_atom)
    return decide([p1], Implies(Diamond(Atom(fresh)), conclusion), a.frame)


def triviality_lifted(a: Argument) -> Verdict:
    """Alternative reading of the triviality schema as one lifted formula
    valid over the frame class, rather than a global consequence.  Offered
    for comparison; no built-in suite asserts its outcome."""
    schema_atom = _triviality_atom(a)
    fresh, p1, conclusion = _triviality_schema(a, schema_atom)
    return prove_valid(Implies(p1, Implies(Diamond(Atom(fresh)), conclusion)), a.frame)


def _triviality_atom(a: Argument) -> str:
    if len(a.premises) != 2:
        raise ShapeError(f"{a.name!r} must have exactly two premises")
    second = a.premises[1][1]
    if not (isinstance(second, Diamond) and isinstance(second.operand, Atom)):
        raise ShapeError(f"{a.name!r}: second premise must be a bare possibility claim")
    return second.operand.name


def _triviality_schema(a: Argument, schema_atom: str) -> tuple[str, Formula, Formula]:
    """Rename the argument's subject atom to a fresh one throughout
    premise 1 and the conclusion; returns (fresh, premise1', conclusion')."""
    avoid = set().union(*(atoms_of(f) for _, f in a.premises)) | atoms_of(a.conclusion)
    fresh = fresh_atom(avoid)
    replacement = Atom(fresh)
    p1 = substitute(a.premises[0][1], schema_atom, replacement)
    conclusion = substitute(a.conclusion, schema_atom, replacement)
    return fresh, p1, conclusion


# all five conditions, in the name order used for sorted output
_ALL_CONDITIONS = tuple(sorted(FrameCondition, key=lambda c: c.value))


def frame_requirement_search(a: Argument) -> list[FrameClass]:
    """Minimal frame-condition subsets (under inclusion) that make the
    argument valid, from an exhaustive sweep of all 32 subsets; sorted by
    size, then by condition names."""
    valid_sets: list[frozenset] = []
    for mask in range(1 << len(_ALL_CONDITIONS)):
        subset = frozenset(
            c for i, c in enumerate(_ALL_CONDITIONS) if (mask >> i) & 1
        )
        verdict = decide(a.premise_formulas(), a.conclusion, subset)
        if isinstance(verdict, Valid):
            valid_sets.append(subset)
    minimal = [
        s for s in valid_sets if not any(t < s for t in valid_sets)
    ]
    return sorted(minimal, key=lambda s: (len(s), sorted(c.value for c in s)))


def analyze(a: Argument) -> AnalysisReport:
    """Full report: verdict under the stated frame, verdict without frame
    assumptions, the triviality schema, and minimal frame requirements."""
    try:
        triviality = triviality_check(a)
    except ShapeError:
        triviality = None
    return AnalysisReport(
        name=a.name,
        verdict=decide(a.premise_formulas(), a.conclusion, a.frame),
        verdict_without_frame=decide(a.premise_formulas(), a.conclusion, frozenset()),
        triviality=triviality,
        minimal_frames=tuple(frame_requirement_search(a)),
    )


# ---------------------------------------------------------------------------
# suites


def _run_check(
    name: str,
    premises: list[Formula],
    conclusion: Formula,
    frame: FrameClass,
    expected: str | None,
    description: str,
) -> CheckResult:
    verdict = decide(premises, conclusion, frame)
    witness = None
    if isinstance(verdict, Invalid):
        witness = minimize_countermodel(verdict.witness, premises, conclusion, frame)
    actual = "valid" if isinstance(verdict, Valid) else "invalid"
    return CheckResult(
        name=name,
        description=description,
        frame=frame,
        expected=expected,
        verdict=verdict,
        witness=witness,
        ok=expected is None or expected == actual,
    )


def _finish(suite: str, entries: list[SuiteEntryResult]) -> SuiteReport:
    report = SuiteReport(suite=suite, entries=tuple(entries), ok=all(e.ok for e in entries))
    if not report.ok:
        first_bad = next(e.name for e in entries if not e.ok)
        raise SuiteFailure(first_bad, report)
    return report


def _frame_text(frame: FrameClass) -> str:
    return "{" + ", ".join(sorted(c.value for c in frame)) + "}"


def corpus_suite() -> SuiteReport:
    """Every corpus entry: valid under its stated frame class, invalid
    over the empty one, and trivial per the schema."""
    entries = []
    for a in builtin_corpus():
        premises = a.premise_formulas()
        claim = " , ".join(f"{n}: {print_formula(f)}" for n, f in a.premises)
        claim += f"  =>  {print_formula(a.conclusion)}"
        checks = [
            _run_check(
                f"{a.name}", premises, a.conclusion, a.frame, "valid",
                f"{claim} over {_frame_text(a.frame)}",
            ),
            _run_check(
                f"{a.name}_no_frame", premises, a.conclusion, frozenset(), "invalid",
                f"{claim} over {{}}",
            ),
        ]
        triv = triviality_check(a)
        checks.append(
            CheckResult(
                name=f"{a.name}_triviality",
                description=f"premise 1 reduces to possibility-implies-conclusion over {_frame_text(a.frame)}",
                frame=a.frame,
                expected="valid",
                verdict=triv,
                witness=None,
                ok=isinstance(triv, Valid),
            )
        )
        entries.append(
            SuiteEntryResult(name=a.name, checks=tuple(checks), ok=all(c.ok for c in checks))
        )
    return _finish("corpus", entries)


_AXIOMS = {
    "K": "[](p -> q) -> ([]p -> []q)",
    "T": "[]p -> p",
    "D": "[]p -> <>p",
    "B": "p -> []<>p",
    "4": "[]p -> [][]p",
    "5": "<>p -> []<>p",
}

_AXIOM_FRAMES = {
    "T": "reflexive",
    "D": "serial",
    "B": "symmetric",
    "4": "transitive",
    "5": "euclidean",
}


def axiom_correspondence_suite() -> SuiteReport:
    """Standard axioms against their frame conditions, plus the facts that
    make the corpus's frame assumptions interchangeable: B and 4 both hold
    over reflexive Euclidean frames, diamond is the dual of box, and
    strict implication is necessary material implication."""
    entries = []

    def entry(name: str, checks: list[CheckResult]) -> None:
        entries.append(SuiteEntryResult(name=name, checks=tuple(checks), ok=all(c.ok for c in checks)))

    k_formula = parse(_AXIOMS["K"])
    entry("K", [_run_check("K", [], k_formula, frozenset(), "valid", f"{_AXIOMS['K']} over {{}}")])
    for ax in ("T", "D", "B", "4", "5"):
        f = parse(_AXIOMS[ax])
        cond = frozenset({FrameCondition(_AXIOM_FRAMES[ax])})
        entry(
            ax,
            [
                _run_check(ax, [], f, cond, "valid", f"{_AXIOMS[ax]} over {_frame_text(cond)}"),
                _run_check(f"{ax}_over_K", [], f, frozenset(), "invalid", f"{_AXIOMS[ax]} over {{}}"),
            ],
        )
    s5 = LOGICS["S5"]
    entry("B_in_S5", [_run_check("B_in_S5", [], parse(_AXIOMS["B"]), s5, "valid",
                                 f"{_AXIOMS['B']} over {_frame_text(s5)}")])
    entry("four_from_T5", [_run_check("four_from_T5", [], parse(_AXIOMS["4"]), s5, "valid",
                                      f"{_AXIOMS['4']} over {_frame_text(s5)}")])
    entry("dexpand", [_run_check("dexpand", [], parse("<>p <-> ~[]~p"), frozenset(), "valid",
                                 "<>p <-> ~[]~p over {}")])
    entry("strict_implication", [_run_check("strict_implication", [], parse("(p |> q) <-> [](p -> q)"),
                                            frozenset(), "valid", "(p |> q) <-> [](p -> q) over {}")])
    return _finish("axioms", entries)


def eder_ramharter_manual() -> DerivationScript:
    """Step-wise reconstruction of the two-premise argument: necessity
    excluded-middle, necessitated contraposition, their combination, the
    necessity conclusion, and finally the existential conclusion."""
    return DerivationScript(
        name="eder_ramharter_manual",
        premises=(("ER1", parse("g -> []g")), ("ER2", parse("<>g"))),
        frame=frozenset({FrameCondition.REFLEXIVE, FrameCondition.EUCLIDEAN}),
        steps=(
            ("step1", parse("[]g | []~[]g")),
            ("step2", parse("[]~[]g -> []~g")),
            ("step3", parse("[]g | []~g")),
            ("step4", parse("[]g")),
            ("step5", parse("g")),
        ),
    )


def run_derivation(script: DerivationScript) -> list[Verdict]:
    """Check each step as a global consequence of the base premises plus
    all prior steps, over the script's frame class."""
    verdicts = []
    premises = [f for _, f in script.premises]
    for _, step in script.steps:
        verdicts.append(decide(premises, step, script.frame))
        premises.append(step)
    return verdicts


def derivation_suite(script: DerivationScript | None = None) -> SuiteReport:
    if script is None:
        script = eder_ramharter_manual()
    verdicts = run_derivation(script)
    entries = []
    premise_names = [n for n, _ in script.premises]
    for (name, formula), verdict in zip(script.steps, verdicts):
        ok = isinstance(verdict, Valid)
        entries.append(
            SuiteEntryResult(
                name=name,
                checks=(
                    CheckResult(
                        name=name,
                        description=(
                            f"{print_formula(formula)} from {', '.join(premise_names)}"
                            f" and prior steps over {_frame_text(script.frame)}"
                        ),
                        frame=script.frame,
                        expected="valid",
                        verdict=verdict,
                        witness=None,
                        ok=ok,
                    ),
                ),
                ok=ok,
            )
        )
    return _finish(script.name, entries)


def jacquette_suite() -> SuiteReport:
    """Modal modus tollens done right and wrong, and the disputed
    deduction of necessity-of-denial from the necessity premise.

    The fourth check reads the ambiguous arrow as strict implication
    throughout; its verdict is reported but not asserted.
    """
    entries = []

    tollens = _run_check(
        "tollens",
        [parse("p -> q")],
        parse("[]~q -> []~p"),
        frozenset(),
        "valid",
        "p -> q (global) entails []~q -> []~p over {}",
    )
    entries.append(SuiteEntryResult("tollens", (tollens,), tollens.ok))

    equiv = frozenset(
        {FrameCondition.REFLEXIVE, FrameCondition.SYMMETRIC, FrameCondition.TRANSITIVE}
    )
    tollens_bad = _run_check(
        "tollens_bad",
        [],
        parse("(p -> q) -> ([]~q -> []~p)"),
        equiv,
        "invalid",
        f"(p -> q) -> ([]~q -> []~p) as one formula over {_frame_text(equiv)}",
    )
    entries.append(SuiteEntryResult("tollens_bad", (tollens_bad,), tollens_bad.ok))

    prop5 = _run_check(
        "prop5",
        [parse("g -> []g")],
        parse("[]~[]g -> []~g"),
        frozenset(),
        "valid",
        "g -> []g (global) entails []~[]g -> []~g over {}",
    )
    entries.append(SuiteEntryResult("prop5", (prop5,), prop5.ok))

    strict = _run_check(
        "tollens_bad_strict",
        [],
        parse("(p |> q) |> ([]~q |> []~p)"),
        equiv,
        None,
        f"(p |> q) |> ([]~q |> []~p) over {_frame_text(equiv)}",
    )
    entries.append(SuiteEntryResult("tollens_bad_strict", (strict,), strict.ok))

    return _finish("jacquette", entries)
