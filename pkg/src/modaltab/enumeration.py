"""Bounded exhaustive search over Kripke models.

This is the brute-force oracle of the toolkit: it enumerates every model
within a world budget (every relation, every valuation of the budget
atoms, filtered by the requested frame conditions) in a pinned
deterministic order and reports the first model in which all premises
hold globally while the conclusion fails somewhere.  Exhausting the
budget without a hit does NOT certify validity; the tableau module owns
that direction.

The inner loop runs on a compiled kernel when the ``_kernel`` extension
built, and on a pure-Python twin otherwise; both produce bit-identical
answers.  Every witness is re-verified against the reference semantics
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .semantics import FrameClass, FrameCondition, KripkeModel, evaluate, frame_satisfies, holds_globally
from .syntax import And, Atom, Box, Diamond, Formula, Iff, Implies, Not, Or, atoms_of, desugar

try:
    from . import _kernel as _backend

    KERNEL = "compiled"
except ImportError:  # extension not built; fall back to the pure twin
    from . import _kernel_py as _backend

    KERNEL = "pure-python"

from . import _kernel_py

__all__ = [
    "KERNEL",
    "EnumerationBudget",
    "CountermodelWitness",
    "compile_formula",
    "enumerate_models",
    "find_countermodel",
    "minimize_countermodel",
    "kernel_backends",
]

_FRAME_BITS = {
    FrameCondition.REFLEXIVE: _kernel_py.FRAME_REFLEXIVE,
    FrameCondition.SYMMETRIC: _kernel_py.FRAME_SYMMETRIC,
    FrameCondition.TRANSITIVE: _kernel_py.FRAME_TRANSITIVE,
    FrameCondition.EUCLIDEAN: _kernel_py.FRAME_EUCLIDEAN,
    FrameCondition.SERIAL: _kernel_py.FRAME_SERIAL,
}


@dataclass(frozen=True)
class EnumerationBudget:
    """Search bounds: world counts 1..max_worlds over the listed atoms."""

    max_worlds: int = 3
    atoms: tuple[str, ...] = ()

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("budget needs at least one world")


@dataclass(frozen=True)
class CountermodelWitness:
    """A model plus the world at which the queried conclusion fails."""

    model: KripkeModel
    world: int


def frame_mask(frame: FrameClass) -> int:
    mask = 0
    for cond in frame:
        mask |= _FRAME_BITS[cond]
    return mask


def compile_formula(f: Formula, atom_index: dict[str, int]) -> tuple[int, ...]:
    """Postfix bytecode over the kernel ops; implication connectives are
    compiled away.  Input must be sugar-free."""
    code: list[int] = []

    def emit(g: Formula) -> None:
        match g:
            case Atom(name):
                code.append(_kernel_py.OP_ATOM | (atom_index[name] << 3))
            case Not(x):
                emit(x)
                code.append(_kernel_py.OP_NOT)
            case And(a, b):
                emit(a)
                emit(b)
                code.append(_kernel_py.OP_AND)
            case Or(a, b):
                emit(a)
                emit(b)
                code.append(_kernel_py.OP_OR)
            case Implies(a, b):
                emit(a)
                code.append(_kernel_py.OP_NOT)
                emit(b)
                code.append(_kernel_py.OP_OR)
            case Iff(a, b):
                emit(Implies(a, b))
                emit(Implies(b, a))
                code.append(_kernel_py.OP_AND)
            case Box(x):
                emit(x)
                code.append(_kernel_py.OP_BOX)
            case Diamond(x):
                emit(x)
                code.append(_kernel_py.OP_DIA)
            case _:
                raise TypeError(f"cannot compile {g!r}")

    emit(f)
    return tuple(code)


def relation_from_bits(n: int, bits: int) -> frozenset[tuple[int, int]]:
    """Row-major decode; the (0,0) pair is the most significant bit."""
    nn = n * n
    return frozenset(
        (i, j) for i in range(n) for j in range(n) if (bits >> (nn - 1 - (i * n + j))) & 1
    )


def valuation_from_bits(n: int, atoms: Sequence[str], bits: int) -> dict[str, frozenset[int]]:
    """Atom-major, then world, most significant first."""
    total = len(atoms) * n
    return {
        a: frozenset(w for w in range(n) if (bits >> (total - 1 - (ai * n + w))) & 1)
        for ai, a in enumerate(atoms)
    }


def enumerate_models(budget: EnumerationBudget, frame: FrameClass) -> Iterator[KripkeModel]:
    """Every model within the budget whose frame satisfies ``frame``,
    ordered by world count, then relation bits, then valuation bits."""
    atoms = budget.atoms
    for n in range(1, budget.max_worlds + 1):
        for rel_bits in range(1 << (n * n)):
            access = relation_from_bits(n, rel_bits)
            probe = KripkeModel(n, access)
            if not all(frame_satisfies(probe, c) for c in frame):
                continue
            for val_bits in range(1 << (len(atoms) * n)):
                yield KripkeModel(n, access, valuation_from_bits(n, atoms, val_bits))


def _reverify(
    witness: CountermodelWitness,
    premises: Sequence[Formula],
    conclusion: Formula,
    frame: FrameClass,
) -> CountermodelWitness:
    model = witness.model
    for cond in frame:
        if not frame_satisfies(model, cond):
            raise AssertionError(f"kernel witness violates frame condition {cond.value}")
    for p in premises:
        if not holds_globally(model, p):
            raise AssertionError("kernel witness violates a premise")
    if evaluate(model, witness.world, conclusion):
        raise AssertionError("kernel witness does not refute the conclusion")
    return witness


def find_countermodel(
    premises: Sequence[Formula],
    conclusion: Formula,
    frame: FrameClass,
    budget: EnumerationBudget,
) -> CountermodelWitness | None:
    """First enumerated model where all premises hold globally and the
    conclusion fails, or None within the budget (which proves nothing)."""
    premises = [desugar(p) for p in premises]
    conclusion = desugar(conclusion)
    atoms = list(budget.atoms)
    known = set(atoms)
    for f in [*premises, conclusion]:
        for name in sorted(atoms_of(f)):
            if name not in known:
                known.add(name)
                atoms.append(name)
    atom_index = {a: i for i, a in enumerate(atoms)}
    hit = _backend.find_first(
        budget.max_worlds,
        len(atoms),
        frame_mask(frame),
        tuple(compile_formula(p, atom_index) for p in premises),
        compile_formula(conclusion, atom_index),
    )
    if hit is None:
        return None
    n, rel_bits, val_bits, world = hit
    model = KripkeModel(
        n, relation_from_bits(n, rel_bits), valuation_from_bits(n, atoms, val_bits)
    )
    return _reverify(CountermodelWitness(model, world), premises, conclusion, frame)


def minimize_countermodel(
    witness: CountermodelWitness,
    premises: Sequence[Formula],
    conclusion: Formula,
    frame: FrameClass,
) -> CountermodelWitness:
    """Witness with the fewest worlds, then the lexicographically least
    relation and valuation: simply the first hit when re-searching up to
    the given witness's size.  Witnesses beyond the kernel's world cap
    are returned unchanged when nothing smaller is found under the cap."""
    atoms = tuple(sorted(set().union(*(atoms_of(desugar(f)) for f in [*premises, conclusion]))))
    cap = min(witness.model.world_count, _kernel_py.MAX_WORLDS)
    budget = EnumerationBudget(max_worlds=cap, atoms=atoms)
    found = find_countermodel(premises, conclusion, frame, budget)
    if found is None:
        if cap == witness.model.world_count:
            raise AssertionError("a verified witness must be re-findable within its own size")
        return witness
    return found


def kernel_backends() -> dict[str, object]:
    """Available kernel implementations, keyed by name."""
    backends: dict[str, object] = {"pure-python": _kernel_py}
    if KERNEL == "compiled":
        backends["compiled"] = _backend
    return backends
