"""Finite Kripke models, truth evaluation, and frame conditions.

A model is a nonempty finite set of worlds ``0 .. world_count-1``, an
accessibility relation over them, and a valuation mapping atom names to
the sets of worlds where they hold.  Atoms absent from the valuation are
false everywhere.  Box quantifies over all accessible worlds, diamond
over some accessible world, and global truth is truth at every world.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .syntax import (
    And,
    Atom,
    Box,
    Diamond,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    StrictImplies,
)

__all__ = [
    "FrameCondition",
    "FrameClass",
    "LOGICS",
    "frame_class",
    "KripkeModel",
    "InvalidWorld",
    "SerialNotClosable",
    "evaluate",
    "holds_globally",
    "frame_satisfies",
    "frame_closure",
    "model_to_dict",
    "model_to_json",
]


class FrameCondition(Enum):
    REFLEXIVE = "reflexive"
    SYMMETRIC = "symmetric"
    TRANSITIVE = "transitive"
    EUCLIDEAN = "euclidean"
    SERIAL = "serial"


FrameClass = frozenset  # of FrameCondition

# Named logics as frame-class aliases.
LOGICS: dict[str, FrameClass] = {
    "K": frozenset(),
    "T": frozenset({FrameCondition.REFLEXIVE}),
    "D": frozenset({FrameCondition.SERIAL}),
    "B": frozenset({FrameCondition.REFLEXIVE, FrameCondition.SYMMETRIC}),
    "S4": frozenset({FrameCondition.REFLEXIVE, FrameCondition.TRANSITIVE}),
    "S5": frozenset({FrameCondition.REFLEXIVE, FrameCondition.EUCLIDEAN}),
}


def frame_class(names: Iterable[str]) -> FrameClass:
    """Build a frame class from condition names or a single logic alias."""
    conditions: set[FrameCondition] = set()
    for name in names:
        if name in LOGICS:
            conditions |= LOGICS[name]
            continue
        try:
            conditions.add(FrameCondition(name.lower()))
        except ValueError:
            raise ValueError(f"unknown frame condition or logic: {name!r}") from None
    return frozenset(conditions)


class InvalidWorld(ValueError):
    """World index outside the model."""


class SerialNotClosable(ValueError):
    """Seriality is not a closure condition; it must be handled by filtering."""


@dataclass(frozen=True)
class KripkeModel:
    """Immutable finite model; all operations on it are pure."""

    world_count: int
    access: frozenset[tuple[int, int]]
    valuation: Mapping[str, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.world_count < 1:
            raise ValueError("a model needs at least one world")
        # own a frozen copy so later mutation of the caller's dict cannot
        # reach into this model
        object.__setattr__(
            self,
            "access",
            frozenset(tuple(pair) for pair in self.access),
        )
        object.__setattr__(
            self,
            "valuation",
            {name: frozenset(ws) for name, ws in self.valuation.items()},
        )
        for i, j in self.access:
            if not (0 <= i < self.world_count and 0 <= j < self.world_count):
                raise InvalidWorld(f"access pair ({i}, {j}) outside 0..{self.world_count - 1}")
        for name, worlds in self.valuation.items():
            for w in worlds:
                if not 0 <= w < self.world_count:
                    raise InvalidWorld(f"valuation of {name!r} mentions world {w}")

    def successors(self, w: int) -> frozenset[int]:
        return frozenset(j for i, j in self.access if i == w)

    def atom_true_at(self, name: str, w: int) -> bool:
        return w in self.valuation.get(name, frozenset())


def evaluate(model: KripkeModel, world: int, f: Formula) -> bool:
    """Truth of ``f`` at ``world``; ``f`` must be sugar-free."""
    if not 0 <= world < model.world_count:
        raise InvalidWorld(f"world {world} outside 0..{model.world_count - 1}")
    match f:
        case Atom(name):
            return model.atom_true_at(name, world)
        case Not(x):
            return not evaluate(model, world, x)
        case And(a, b):
            return evaluate(model, world, a) and evaluate(model, world, b)
        case Or(a, b):
            return evaluate(model, world, a) or evaluate(model, world, b)
        case Implies(a, b):
            return (not evaluate(model, world, a)) or evaluate(model, world, b)
        case Iff(a, b):
            return evaluate(model, world, a) == evaluate(model, world, b)
        case Box(x):
            return all(evaluate(model, v, x) for v in sorted(model.successors(world)))
        case Diamond(x):
            return any(evaluate(model, v, x) for v in sorted(model.successors(world)))
        case StrictImplies():
            raise TypeError("strict implication must be desugared before evaluation")
    raise TypeError(f"not a formula: {f!r}")


def holds_globally(model: KripkeModel, f: Formula) -> bool:
    """True iff ``f`` is true at every world of the model."""
    return all(evaluate(model, w, f) for w in range(model.world_count))


def frame_satisfies(model: KripkeModel, condition: FrameCondition) -> bool:
    """Exhaustive check of one first-order frame property."""
    n = model.world_count
    r = model.access
    match condition:
        case FrameCondition.REFLEXIVE:
            return all((u, u) in r for u in range(n))
        case FrameCondition.SYMMETRIC:
            return all((v, u) in r for u, v in r)
        case FrameCondition.TRANSITIVE:
            return all((u, w) in r for u, v in r for v2, w in r if v2 == v)
        case FrameCondition.EUCLIDEAN:
            return all((v, w) in r for u, v in r for u2, w in r if u2 == u)
        case FrameCondition.SERIAL:
            return all(any((u, v) in r for v in range(n)) for u in range(n))
    raise TypeError(f"not a frame condition: {condition!r}")


def frame_closure(
    pairs: Iterable[tuple[int, int]],
    conditions: Iterable[FrameCondition],
    world_count: int,
) -> frozenset[tuple[int, int]]:
    """Smallest superset of ``pairs`` satisfying the given Horn conditions.

    Seriality is rejected: adding an arbitrary successor is not a
    least-fixed-point operation.
    """
    conds = frozenset(conditions)
    if FrameCondition.SERIAL in conds:
        raise SerialNotClosable("serial frames are obtained by filtering, not closure")
    relation = set(pairs)
    if FrameCondition.REFLEXIVE in conds:
        relation |= {(u, u) for u in range(world_count)}
    changed = True
    while changed:
        changed = False
        additions: set[tuple[int, int]] = set()
        if FrameCondition.SYMMETRIC in conds:
            additions |= {(v, u) for u, v in relation if (v, u) not in relation}
        if FrameCondition.TRANSITIVE in conds:
            additions |= {
                (u, w)
                for u, v in relation
                for v2, w in relation
                if v2 == v and (u, w) not in relation
            }
        if FrameCondition.EUCLIDEAN in conds:
            additions |= {
                (v, w)
                for u, v in relation
                for u2, w in relation
                if u2 == u and (v, w) not in relation
            }
        if additions:
            relation |= additions
            changed = True
    return frozenset(relation)


def model_to_dict(model: KripkeModel) -> dict:
    """Countermodel wire format: sorted pairs and sorted world lists."""
    return {
        "worlds": model.world_count,
        "access": [list(p) for p in sorted(model.access)],
        "valuation": {name: sorted(ws) for name, ws in sorted(model.valuation.items()) if ws},
    }


def model_to_json(model: KripkeModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":"))
