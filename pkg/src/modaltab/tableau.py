"""Labelled tableau decision procedure for global modal consequence.

``decide(premises, conclusion, frame)`` settles whether the conclusion
holds at every world of every model of the frame class in which all
premises hold at every world.  The procedure refutes: the root label is
seeded with the negated conclusion (in NNF) plus the premises, every new
label receives the premises again, box formulas propagate along edges,
diamonds spawn successors, and the edge set is kept closed under the
frame class's Horn conditions (reflexive, symmetric, transitive,
Euclidean) at all times; seriality adds successors to successor-less
labels.  A branch closes on a complementary literal pair at one label.

Termination comes from anywhere-blocking: a label subsumed by an earlier
unblocked label spawns no successors.  Subsumption is by subset of
formula sets, strengthened to set equality whenever the frame class
contains a symmetric or Euclidean condition; with plain subset blocking
the loop-back model extracted from an open branch can violate a box
formula across a converse edge that re-closure introduces.  For the same
reason the expansion propagates boxes across edges under transitivity,
and equalizes box/diamond formulas across edges between non-root labels
under Euclideanness; each extra propagation is truth-preserving in every
model of its frame condition.

Valid verdicts carry a replayable proof object, invalid verdicts a
countermodel extracted from the first open saturated branch; both are
re-checkable without trusting the search.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Sequence

from .enumeration import CountermodelWitness
from .semantics import (
    FrameClass,
    FrameCondition,
    KripkeModel,
    evaluate,
    frame_closure,
    frame_satisfies,
    holds_globally,
)
from .syntax import (
    And,
    Atom,
    Box,
    Diamond,
    Formula,
    Not,
    Or,
    desugar,
    nnf,
    parse,
    print_formula,
)

__all__ = [
    "Valid",
    "Invalid",
    "Verdict",
    "ProofObject",
    "Label",
    "Branch",
    "ResourceLimit",
    "NotSaturated",
    "decide",
    "prove_valid",
    "extract_countermodel",
    "check_proof",
]

DEFAULT_MAX_LABELS = 10_000


class ResourceLimit(RuntimeError):
    """Node ceiling exceeded; at the intended problem scale this signals a
    bug rather than a hard query."""


class NotSaturated(ValueError):
    """Countermodel extraction was asked for a branch that is closed or
    still has applicable rules."""


@dataclass(frozen=True)
class ProofObject:
    """Tree of rule applications witnessing a closed tableau.

    Nodes are dicts with keys ``rule``, ``labels``, ``formula`` and
    ``children``; leaves are closure pairs.  Replaying the applications
    from the seeded root (see :func:`check_proof`) reconstructs the
    closed tableau without rerunning any search.
    """

    root: dict

    def to_json_dict(self) -> dict:
        """Flat node table; children are referenced by id.

        Proof chains can be thousands of applications long, so the wire
        format avoids nesting (which would overflow recursive encoders).
        Node 0 is the root; ids are assigned in depth-first preorder.
        """
        nodes: list[dict] = []
        stack: list[tuple[dict, int | None]] = [(self.root, None)]
        while stack:
            node, parent = stack.pop()
            nid = len(nodes)
            nodes.append(
                {
                    "id": nid,
                    "rule": node["rule"],
                    "labels": list(node["labels"]),
                    "formula": node["formula"],
                    "children": [],
                }
            )
            if parent is not None:
                nodes[parent]["children"].append(nid)
            for child in reversed(node["children"]):
                stack.append((child, nid))
        return {"nodes": nodes}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "ProofObject":
        entries = {e["id"]: e for e in data["nodes"]}
        if 0 not in entries:
            raise ValueError("proof table has no root node 0")
        referenced: list[int] = [c for e in entries.values() for c in e["children"]]
        if 0 in referenced or len(referenced) != len(set(referenced)):
            raise ValueError("proof table is not a tree")
        internal = {
            nid: {
                "rule": e["rule"],
                "labels": list(e["labels"]),
                "formula": e.get("formula"),
                "children": [],
            }
            for nid, e in entries.items()
        }
        for nid, e in entries.items():
            internal[nid]["children"] = [internal[c] for c in e["children"]]
        return cls(internal[0])


@dataclass(frozen=True)
class Valid:
    proof: ProofObject


@dataclass(frozen=True)
class Invalid:
    witness: CountermodelWitness


Verdict = Valid | Invalid


@dataclass(frozen=True)
class Label:
    id: int
    formulas: frozenset[Formula]
    blocked_by: int | None


@dataclass(frozen=True)
class Branch:
    """Saturated open tableau branch, ready for countermodel extraction."""

    labels: tuple[Label, ...]
    edges: frozenset[tuple[int, int]]
    frame: FrameClass
    premises: tuple[Formula, ...]  # desugared, for witness re-verification
    conclusion: Formula  # desugared
    pending: int = 0


# Rule priorities; lower fires first, ties broken by label id then arrival.
_P_ALPHA = 0
_P_MOVE = 1
_P_EDGE = 2
_P_BETA = 3
_P_DIA = 4
_P_SERIAL = 5


def _is_modal(f: Formula) -> bool:
    return isinstance(f, (Box, Diamond))


class _Budget:
    """Work limits shared across all branches of one decide call.

    The step ceiling catches exponential branching storms that create few
    labels; both limits are far above anything the intended problem scale
    needs, so tripping one signals a malformed or out-of-scope query.
    """

    __slots__ = ("labels_created", "steps_taken", "max_labels", "max_steps")

    def __init__(self, max_labels: int):
        self.labels_created = 0
        self.steps_taken = 0
        self.max_labels = max_labels
        self.max_steps = 50 * max_labels

    def count_label(self) -> None:
        self.labels_created += 1
        if self.labels_created > self.max_labels:
            raise ResourceLimit(f"label ceiling {self.max_labels} exceeded")

    def count_step(self) -> None:
        self.steps_taken += 1
        if self.steps_taken > self.max_steps:
            raise ResourceLimit(f"rule-application ceiling {self.max_steps} exceeded")


class _State:
    """One tableau branch under construction."""

    __slots__ = (
        "frame",
        "premises",
        "label_sets",
        "out_edges",
        "in_edges",
        "edge_set",
        "heap",
        "seq",
        "queued",
        "closed",
        "steps",
        "budget",
        "equality_blocking",
        "version",
        "_blocking_cache",
    )

    def __init__(self, frame: FrameClass, premises: tuple[Formula, ...], budget: _Budget):
        self.frame = frame
        self.premises = premises
        self.label_sets: list[dict[Formula, None]] = []
        self.out_edges: list[list[int]] = []
        self.in_edges: list[list[int]] = []
        self.edge_set: set[tuple[int, int]] = set()
        self.heap: list[tuple[int, int, int, tuple]] = []
        self.seq = 0
        self.queued: set[tuple] = set()
        self.closed: tuple[int, str] | None = None
        self.steps: list[dict] = []
        self.budget = budget
        self.equality_blocking = bool(
            frame & {FrameCondition.SYMMETRIC, FrameCondition.EUCLIDEAN}
        )
        self.version = 0
        self._blocking_cache: tuple[int, list[int | None]] | None = None

    def clone(self) -> "_State":
        other = _State.__new__(_State)
        other.frame = self.frame
        other.premises = self.premises
        other.label_sets = [dict(d) for d in self.label_sets]
        other.out_edges = [list(l) for l in self.out_edges]
        other.in_edges = [list(l) for l in self.in_edges]
        other.edge_set = set(self.edge_set)
        other.heap = list(self.heap)
        other.seq = self.seq
        other.queued = set(self.queued)
        other.closed = self.closed
        other.steps = []  # fresh proof segment for the branch
        other.budget = self.budget  # shared: the ceiling spans all branches
        other.equality_blocking = self.equality_blocking
        other.version = self.version
        other._blocking_cache = None
        return other

    # -- queue ---------------------------------------------------------

    def enqueue(self, priority: int, label: int, task: tuple) -> None:
        if task in self.queued:
            return
        self.queued.add(task)
        heapq.heappush(self.heap, (priority, label, self.seq, task))
        self.seq += 1

    # -- structure growth ----------------------------------------------

    def new_label(self) -> int:
        self.budget.count_label()
        self.label_sets.append({})
        self.out_edges.append([])
        self.in_edges.append([])
        self.version += 1
        return len(self.label_sets) - 1

    def add_formula(self, label: int, f: Formula) -> bool:
        s = self.label_sets[label]
        if f in s:
            return False
        s[f] = None
        self.version += 1
        match f:
            case Atom(name):
                if Not(f) in s and self.closed is None:
                    self.closed = (label, name)
            case Not(Atom(name)):
                if Atom(name) in s and self.closed is None:
                    self.closed = (label, name)
            case And():
                self.enqueue(_P_ALPHA, label, ("alpha", label, f))
            case Or():
                self.enqueue(_P_BETA, label, ("beta", label, f))
            case Diamond():
                self.enqueue(_P_DIA, label, ("dia", label, f))
        if _is_modal(f):
            for m in self.out_edges[label]:
                self.enqueue_moves(label, f, m)
            if FrameCondition.EUCLIDEAN in self.frame:
                # backward transfer is only ever licensed on Euclidean frames
                for k in self.in_edges[label]:
                    self.enqueue(_P_MOVE, k, ("move", label, f, k))
        return True

    def enqueue_moves(self, src: int, f: Formula, dst: int) -> None:
        # K-arrival of the operand plus possible transfer of f itself
        if isinstance(f, Box):
            self.enqueue(_P_MOVE, dst, ("move", src, f.operand, dst))
        self.enqueue(_P_MOVE, dst, ("move", src, f, dst))

    def add_edge(self, a: int, b: int) -> bool:
        if (a, b) in self.edge_set:
            return False
        self.edge_set.add((a, b))
        self.out_edges[a].append(b)
        self.in_edges[b].append(a)
        # Horn closure products involving the new edge
        if FrameCondition.SYMMETRIC in self.frame:
            self.enqueue(_P_EDGE, b, ("edge", b, a))
        if FrameCondition.TRANSITIVE in self.frame:
            for c in list(self.out_edges[b]):
                self.enqueue(_P_EDGE, a, ("edge", a, c))
            for c in list(self.in_edges[a]):
                self.enqueue(_P_EDGE, c, ("edge", c, b))
        if FrameCondition.EUCLIDEAN in self.frame:
            for c in list(self.out_edges[a]):
                self.enqueue(_P_EDGE, b, ("edge", b, c))
                self.enqueue(_P_EDGE, c, ("edge", c, b))
        # propagation across the new edge
        for f in list(self.label_sets[a]):
            if _is_modal(f):
                self.enqueue_moves(a, f, b)
        if FrameCondition.EUCLIDEAN in self.frame:
            for f in list(self.label_sets[b]):
                if _is_modal(f):
                    self.enqueue(_P_MOVE, a, ("move", b, f, a))
        # b gaining its first in-edge can enable Euclidean transfers on
        # b's existing out-edges
        if len(self.in_edges[b]) == 1 and FrameCondition.EUCLIDEAN in self.frame:
            for c in list(self.out_edges[b]):
                for f in list(self.label_sets[b]):
                    if _is_modal(f):
                        self.enqueue_moves(b, f, c)
                for f in list(self.label_sets[c]):
                    if _is_modal(f):
                        self.enqueue(_P_MOVE, b, ("move", c, f, b))
        return True

    # -- licences (shared with proof replay via module functions) -------

    def move_licensed(self, src: int, f: Formula, dst: int) -> bool:
        return _move_licensed(
            self.frame, self.edge_set, self.in_edges, self.label_sets, src, f, dst
        )

    def edge_licensed(self, a: int, b: int) -> bool:
        return _edge_licensed(self.frame, self.edge_set, self.out_edges, self.in_edges, a, b)

    # -- blocking --------------------------------------------------------

    def blocking(self) -> list[int | None]:
        """blocked_by per label: the earliest unblocked earlier label whose
        formula set subsumes this one (subset, or equality when the frame
        has a symmetric or Euclidean condition)."""
        if self._blocking_cache is not None and self._blocking_cache[0] == self.version:
            return self._blocking_cache[1]
        result: list[int | None] = []
        for lid, s in enumerate(self.label_sets):
            blocker = None
            for m in range(lid):
                if result[m] is not None:
                    continue
                other = self.label_sets[m]
                if self.equality_blocking:
                    if len(s) == len(other) and all(f in other for f in s):
                        blocker = m
                        break
                elif len(s) <= len(other) and all(f in other for f in s):
                    blocker = m
                    break
            result.append(blocker)
        self._blocking_cache = (self.version, result)
        return result

    def diamond_satisfied(self, label: int, f: Diamond) -> bool:
        return any(f.operand in self.label_sets[m] for m in self.out_edges[label])


def _move_licensed(frame, edge_set, in_edges, label_sets, src, f, dst) -> bool:
    """May ``f`` be written to dst, justified by the contents of src?"""
    if f is None:
        return False
    if (src, dst) in edge_set:
        if Box(f) in label_sets[src]:
            return True  # K: operand across an edge
        if f in label_sets[src]:
            if isinstance(f, Box) and FrameCondition.TRANSITIVE in frame:
                return True  # 4: boxes persist forward
            if FrameCondition.EUCLIDEAN in frame:
                if isinstance(f, Diamond):
                    return True  # co-successors of src see f's witness too
                if isinstance(f, Box) and in_edges[src]:
                    return True  # successors of a non-root world see no more
    if (dst, src) in edge_set and FrameCondition.EUCLIDEAN in frame:
        # backward within range: dst's successors include src's
        if _is_modal(f) and f in label_sets[src] and in_edges[dst]:
            return True
    return False


def _edge_licensed(frame, edge_set, out_edges, in_edges, a, b) -> bool:
    """Is edge (a, b) derivable by one Horn closure step?"""
    if a == b and FrameCondition.REFLEXIVE in frame:
        return True
    if FrameCondition.SYMMETRIC in frame and (b, a) in edge_set:
        return True
    if FrameCondition.TRANSITIVE in frame:
        if any((c, b) in edge_set for c in out_edges[a]):
            return True
    if FrameCondition.EUCLIDEAN in frame:
        if any((c, b) in edge_set for c in in_edges[a]):
            return True
    return False


def _spawn_successor(state: _State, parent: int, principal: Formula | None, rule: str, rule_formula: str | None) -> None:
    child = state.new_label()
    state.steps.append({"rule": rule, "labels": [parent, child], "formula": rule_formula})
    if principal is not None:
        state.add_formula(child, principal)
    state.add_edge(parent, child)
    if FrameCondition.REFLEXIVE in state.frame:
        state.enqueue(_P_EDGE, child, ("edge", child, child))
    for p in state.premises:
        if state.add_formula(child, p):
            state.steps.append(
                {"rule": "global-premise", "labels": [child], "formula": print_formula(p)}
            )


def _dispatch(state: _State, task: tuple) -> tuple | None:
    """Apply one queued rule; returns a beta task if a split is needed."""
    state.budget.count_step()
    kind = task[0]
    if kind == "alpha":
        _, label, f = task
        s = state.label_sets[label]
        if f.left in s and f.right in s:
            return None
        state.steps.append(
            {"rule": "alpha", "labels": [label], "formula": print_formula(f)}
        )
        state.add_formula(label, f.left)
        state.add_formula(label, f.right)
    elif kind == "move":
        _, src, f, dst = task
        if f in state.label_sets[dst]:
            return None
        if not state.move_licensed(src, f, dst):
            return None
        state.steps.append(
            {"rule": "box", "labels": [src, dst], "formula": print_formula(f)}
        )
        state.add_formula(dst, f)
    elif kind == "edge":
        _, a, b = task
        if (a, b) in state.edge_set:
            return None
        if not state.edge_licensed(a, b):
            return None
        state.steps.append({"rule": "frame-closure", "labels": [a, b], "formula": None})
        state.add_edge(a, b)
    elif kind == "beta":
        _, label, f = task
        s = state.label_sets[label]
        if f.left in s or f.right in s:
            return None
        return task  # split handled by the driver
    elif kind == "dia":
        _, label, f = task
        if state.diamond_satisfied(label, f):
            return None
        if state.blocking()[label] is not None:
            return None
        _spawn_successor(state, label, f.operand, "diamond", print_formula(f))
    elif kind == "serial":
        _, label = task
        if FrameCondition.SERIAL not in state.frame or state.out_edges[label]:
            return None
        if state.blocking()[label] is not None:
            return None
        _spawn_successor(state, label, None, "serial", None)
    return None


def _audit(state: _State) -> bool:
    """Re-enqueue obligations of unblocked labels; True if any were found."""
    blocked = state.blocking()
    work = False
    for lid, s in enumerate(state.label_sets):
        if blocked[lid] is not None:
            continue
        for f in list(s):
            if isinstance(f, Diamond) and not state.diamond_satisfied(lid, f):
                state.enqueue(_P_DIA, lid, ("dia", lid, f))
                work = True
        if FrameCondition.SERIAL in state.frame and not state.out_edges[lid]:
            state.enqueue(_P_SERIAL, lid, ("serial", lid))
            work = True
    return work


def _chain(steps: list[dict], terminal: dict) -> dict:
    node = terminal
    for step in reversed(steps):
        node = {**step, "children": [node]}
    return node


def _expand_segment(state: _State) -> tuple[str, object]:
    """Run queued rules until the branch closes, splits, or saturates."""
    while True:
        while state.heap and state.closed is None:
            _, _, _, task = heapq.heappop(state.heap)
            state.queued.discard(task)
            split = _dispatch(state, task)
            if split is not None:
                return "split", split
        if state.closed is not None:
            label, name = state.closed
            leaf = {"rule": "closure", "labels": [label], "formula": name, "children": []}
            return "closed", _chain(state.steps, leaf)
        if not _audit(state):
            return "open", state


def _run(state: _State) -> tuple[str, dict | _State]:
    """Expand a tableau to closure of all branches or the first open one.

    Beta rules split; the left disjunct is explored first, depth first,
    and the first open branch wins, so verdicts, witnesses, and proofs
    are deterministic.  Iterative so that proof depth is unbounded by the
    interpreter's recursion limit.
    """
    root_record: dict = {"parent": None, "children": [None]}
    stack: list[tuple[_State, tuple[dict, int]]] = [(state, (root_record, 0))]
    while stack:
        st, slot = stack.pop()
        status, payload = _expand_segment(st)
        if status == "open":
            return "open", payload
        if status == "closed":
            # write the finished node and cascade completed beta records up
            node = payload
            while True:
                record, idx = slot
                record["children"][idx] = node
                if record["parent"] is None or any(c is None for c in record["children"]):
                    break
                beta_node = {
                    "rule": "beta",
                    "labels": record["labels"],
                    "formula": record["formula"],
                    "children": record["children"],
                }
                node = _chain(record["steps"], beta_node)
                slot = record["parent"]
            continue
        _, label, f = payload  # beta split
        record = {
            "parent": slot,
            "children": [None, None],
            "labels": [label],
            "formula": print_formula(f),
            "steps": st.steps,
        }
        right = st.clone()
        right.add_formula(label, f.right)
        left = st.clone()
        left.add_formula(label, f.left)
        stack.append((right, (record, 1)))
        stack.append((left, (record, 0)))  # popped first: left before right
    return "closed", root_record["children"][0]


def _state_to_branch(
    state: _State, premises: tuple[Formula, ...], conclusion: Formula
) -> Branch:
    blocked = state.blocking()
    labels = tuple(
        Label(i, frozenset(s), blocked[i]) for i, s in enumerate(state.label_sets)
    )
    return Branch(
        labels=labels,
        edges=frozenset(state.edge_set),
        frame=state.frame,
        premises=premises,
        conclusion=conclusion,
        pending=len(state.heap),
    )


def _check_branch_saturated(branch: Branch) -> None:
    if branch.pending:
        raise NotSaturated(f"{branch.pending} rule applications still queued")
    if [lab.id for lab in branch.labels] != list(range(len(branch.labels))):
        raise ValueError("branch labels must be densely numbered in order")
    by_id = {lab.id: lab for lab in branch.labels}
    out: dict[int, list[int]] = {lab.id: [] for lab in branch.labels}
    for a, b in branch.edges:
        out[a].append(b)
    for lab in branch.labels:
        for f in lab.formulas:
            match f:
                case Atom(name):
                    if Not(f) in lab.formulas:
                        raise NotSaturated(f"branch is closed: {name} and ~{name} at label {lab.id}")
                case And(left, right):
                    if left not in lab.formulas or right not in lab.formulas:
                        raise NotSaturated(f"alpha rule applicable at label {lab.id}")
                case Or(left, right):
                    if left not in lab.formulas and right not in lab.formulas:
                        raise NotSaturated(f"beta rule applicable at label {lab.id}")
                case Box(operand):
                    for m in out[lab.id]:
                        if operand not in by_id[m].formulas:
                            raise NotSaturated(f"box rule applicable at label {lab.id}")
                case Diamond(operand):
                    if lab.blocked_by is None and not any(
                        operand in by_id[m].formulas for m in out[lab.id]
                    ):
                        raise NotSaturated(f"diamond rule applicable at label {lab.id}")
        if (
            FrameCondition.SERIAL in branch.frame
            and lab.blocked_by is None
            and not out[lab.id]
        ):
            raise NotSaturated(f"serial rule applicable at label {lab.id}")


def extract_countermodel(branch: Branch) -> CountermodelWitness:
    """Loop-back model from a saturated open branch.

    Worlds are the unblocked labels; edges into blocked labels are
    redirected to their blockers, the result is re-closed under the frame
    class's Horn conditions, and an atom holds at a world exactly when the
    positive literal is in its label.  The witness is re-verified against
    the reference semantics before being returned.
    """
    _check_branch_saturated(branch)
    unblocked = [lab for lab in branch.labels if lab.blocked_by is None]
    index = {lab.id: i for i, lab in enumerate(unblocked)}

    def target(lid: int) -> int:
        lab = branch.labels[lid]
        return index[lab.id if lab.blocked_by is None else lab.blocked_by]

    base_edges = {
        (index[a], target(b)) for a, b in branch.edges if branch.labels[a].blocked_by is None
    }
    horn = frozenset(branch.frame) - {FrameCondition.SERIAL}
    access = frame_closure(base_edges, horn, len(unblocked))
    valuation: dict[str, set[int]] = {}
    for i, lab in enumerate(unblocked):
        for f in lab.formulas:
            if isinstance(f, Atom):
                valuation.setdefault(f.name, set()).add(i)
    model = KripkeModel(
        len(unblocked), access, {a: frozenset(ws) for a, ws in valuation.items()}
    )
    witness = CountermodelWitness(model, 0)
    for cond in branch.frame:
        if not frame_satisfies(model, cond):
            raise AssertionError(f"extracted model violates {cond.value}")
    for p in branch.premises:
        if not holds_globally(model, p):
            raise AssertionError("extracted model violates a global premise")
    if evaluate(model, witness.world, branch.conclusion):
        raise AssertionError("extracted model fails to refute the conclusion")
    return witness


def decide(
    premises: Sequence[Formula],
    conclusion: Formula,
    frame: FrameClass,
    max_labels: int = DEFAULT_MAX_LABELS,
) -> Verdict:
    """Valid with a proof, or Invalid with a re-verified countermodel."""
    desugared_premises = tuple(desugar(p) for p in premises)
    desugared_conclusion = desugar(conclusion)
    premises_nnf = tuple(nnf(p) for p in desugared_premises)
    state = _State(frozenset(frame), premises_nnf, _Budget(max_labels))
    root = state.new_label()
    state.add_formula(root, nnf(Not(desugared_conclusion)))
    for p in premises_nnf:
        state.add_formula(root, p)
    if FrameCondition.REFLEXIVE in state.frame:
        state.enqueue(_P_EDGE, root, ("edge", root, root))
    if FrameCondition.SERIAL in state.frame:
        state.enqueue(_P_SERIAL, root, ("serial", root))
    status, payload = _run(state)
    if status == "closed":
        return Valid(ProofObject(payload))
    branch = _state_to_branch(payload, desugared_premises, desugared_conclusion)
    return Invalid(extract_countermodel(branch))


def prove_valid(f: Formula, frame: FrameClass, max_labels: int = DEFAULT_MAX_LABELS) -> Verdict:
    """decide with no premises: frame-class validity of a single formula."""
    return decide([], f, frame, max_labels=max_labels)


# ---------------------------------------------------------------------------
# proof replay


class _Replay:
    """Minimal branch state for licence checking; no queue, no search."""

    def __init__(self, frame: FrameClass, premises_nnf: tuple[Formula, ...]):
        self.frame = frame
        self.premises = premises_nnf
        self.label_sets: list[dict[Formula, None]] = []
        self.out_edges: list[list[int]] = []
        self.in_edges: list[list[int]] = []
        self.edge_set: set[tuple[int, int]] = set()

    def clone(self) -> "_Replay":
        other = _Replay.__new__(_Replay)
        other.frame = self.frame
        other.premises = self.premises
        other.label_sets = [dict(d) for d in self.label_sets]
        other.out_edges = [list(l) for l in self.out_edges]
        other.in_edges = [list(l) for l in self.in_edges]
        other.edge_set = set(self.edge_set)
        return other

    def new_label(self) -> int:
        self.label_sets.append({})
        self.out_edges.append([])
        self.in_edges.append([])
        return len(self.label_sets) - 1

    def add_formula(self, label: int, f: Formula) -> None:
        self.label_sets[label][f] = None

    def add_edge(self, a: int, b: int) -> None:
        if (a, b) not in self.edge_set:
            self.edge_set.add((a, b))
            self.out_edges[a].append(b)
            self.in_edges[b].append(a)


def _replay_step(replay: _Replay, node: dict) -> bool:
    """Check and apply one unary rule application."""
    rule = node["rule"]
    labels = node["labels"]
    formula = node.get("formula")
    f = parse(formula) if formula is not None else None
    for lab in labels:
        if not 0 <= lab <= len(replay.label_sets):
            return False

    if rule == "alpha":
        (label,) = labels
        if not isinstance(f, And) or f not in replay.label_sets[label]:
            return False
        replay.add_formula(label, f.left)
        replay.add_formula(label, f.right)
        return True
    if rule == "box":
        src, dst = labels
        if src >= len(replay.label_sets) or dst >= len(replay.label_sets):
            return False
        if not _move_licensed(
            replay.frame, replay.edge_set, replay.in_edges, replay.label_sets, src, f, dst
        ):
            return False
        replay.add_formula(dst, f)
        return True
    if rule == "frame-closure":
        a, b = labels
        if a >= len(replay.label_sets) or b >= len(replay.label_sets):
            return False
        if not _edge_licensed(replay.frame, replay.edge_set, replay.out_edges, replay.in_edges, a, b):
            return False
        replay.add_edge(a, b)
        return True
    if rule == "global-premise":
        (label,) = labels
        if f not in replay.premises or label >= len(replay.label_sets):
            return False
        replay.add_formula(label, f)
        return True
    if rule == "diamond":
        parent, child = labels
        if parent >= len(replay.label_sets):
            return False
        if not isinstance(f, Diamond) or f not in replay.label_sets[parent]:
            return False
        if child != replay.new_label():
            return False
        replay.add_formula(child, f.operand)
        replay.add_edge(parent, child)
        return True
    if rule == "serial":
        parent, child = labels
        if parent >= len(replay.label_sets):
            return False
        if FrameCondition.SERIAL not in replay.frame or replay.out_edges[parent]:
            return False
        if child != replay.new_label():
            return False
        replay.add_edge(parent, child)
        return True
    return False


def _replay(replay: _Replay, root: dict) -> bool:
    """Iteratively replay a proof tree; every leaf must be a closure."""
    stack: list[tuple[_Replay, dict]] = [(replay, root)]
    while stack:
        state, node = stack.pop()
        while True:
            rule = node["rule"]
            children = node.get("children", [])
            if rule == "closure":
                if children:
                    return False
                (label,) = node["labels"]
                if not 0 <= label < len(state.label_sets):
                    return False
                f = parse(node["formula"]) if node.get("formula") is not None else None
                s = state.label_sets[label]
                if not (isinstance(f, Atom) and f in s and Not(f) in s):
                    return False
                break  # this branch verified closed
            if rule == "beta":
                (label,) = node["labels"]
                formula = node.get("formula")
                f = parse(formula) if formula is not None else None
                if len(children) != 2 or not isinstance(f, Or):
                    return False
                if not 0 <= label < len(state.label_sets) or f not in state.label_sets[label]:
                    return False
                for operand, child in zip((f.left, f.right), children):
                    sub = state.clone()
                    sub.add_formula(label, operand)
                    stack.append((sub, child))
                break
            if len(children) != 1:
                return False
            if not _replay_step(state, node):
                return False
            node = children[0]
    return True


def check_proof(
    proof: ProofObject,
    premises: Sequence[Formula],
    conclusion: Formula,
    frame: FrameClass,
) -> bool:
    """Replay a proof against a query: every recorded rule application
    must be licensed and every leaf must be a present closure pair.
    Returns False on any mismatch; never raises."""
    try:
        premises_nnf = tuple(nnf(desugar(p)) for p in premises)
        replay = _Replay(frozenset(frame), premises_nnf)
        root = replay.new_label()
        replay.add_formula(root, nnf(Not(desugar(conclusion))))
        for p in premises_nnf:
            replay.add_formula(root, p)
        return _replay(replay, proof.root)
    except Exception:
        return False
