"""Pure-Python enumeration kernel.

Fallback twin of the compiled ``_kernel`` extension; both expose the same
``find_first`` entry point and must return bit-identical results.  Models
are enumerated by world count, then relation bits, then valuation bits,
where bit strings are read most-significant-first in row-major order.

Formulas arrive as postfix bytecode (see ``enumeration.compile_formula``)
and are evaluated as truth bitmasks over worlds: bit ``w`` of a mask is
the truth value at world ``w``.
"""

from __future__ import annotations

OP_ATOM = 0
OP_NOT = 1
OP_AND = 2
OP_OR = 3
OP_BOX = 4
OP_DIA = 5

FRAME_REFLEXIVE = 1
FRAME_SYMMETRIC = 2
FRAME_TRANSITIVE = 4
FRAME_EUCLIDEAN = 8
FRAME_SERIAL = 16

MAX_WORLDS = 5  # keeps relation/valuation bit strings in small ints


def _successor_masks(rel: int, n: int) -> list[int]:
    nn = n * n
    succ = [0] * n
    for i in range(n):
        for j in range(n):
            if (rel >> (nn - 1 - (i * n + j))) & 1:
                succ[i] |= 1 << j
    return succ


def _frame_ok(succ: list[int], n: int, frame_mask: int) -> bool:
    if frame_mask & FRAME_REFLEXIVE:
        for i in range(n):
            if not (succ[i] >> i) & 1:
                return False
    if frame_mask & FRAME_SERIAL:
        for i in range(n):
            if succ[i] == 0:
                return False
    if frame_mask & FRAME_SYMMETRIC:
        for i in range(n):
            for j in range(n):
                if ((succ[i] >> j) & 1) != ((succ[j] >> i) & 1):
                    return False
    if frame_mask & FRAME_TRANSITIVE:
        for i in range(n):
            si = succ[i]
            for j in range(n):
                if (si >> j) & 1 and succ[j] & ~si:
                    return False
    if frame_mask & FRAME_EUCLIDEAN:
        for i in range(n):
            si = succ[i]
            for j in range(n):
                if (si >> j) & 1 and si & ~succ[j]:
                    return False
    return True


def _atom_mask_table(n: int, atom_count: int) -> list[list[int]]:
    """atom_masks per valuation integer; table[val][atom] is a world mask."""
    bits = atom_count * n
    table = []
    for val in range(1 << bits):
        masks = [0] * atom_count
        for a in range(atom_count):
            m = 0
            for w in range(n):
                if (val >> (bits - 1 - (a * n + w))) & 1:
                    m |= 1 << w
            masks[a] = m
        table.append(masks)
    return table


def eval_mask(code: tuple[int, ...], succ: list[int], atom_masks: list[int], n: int, full: int) -> int:
    stack: list[int] = []
    push = stack.append
    for instr in code:
        op = instr & 7
        if op == OP_ATOM:
            push(atom_masks[instr >> 3])
        elif op == OP_NOT:
            stack[-1] = ~stack[-1] & full
        elif op == OP_AND:
            x = stack.pop()
            stack[-1] &= x
        elif op == OP_OR:
            x = stack.pop()
            stack[-1] |= x
        elif op == OP_BOX:
            x = stack.pop()
            m = 0
            for w in range(n):
                if not succ[w] & ~x:
                    m |= 1 << w
            push(m)
        else:  # OP_DIA
            x = stack.pop()
            m = 0
            for w in range(n):
                if succ[w] & x:
                    m |= 1 << w
            push(m)
    return stack[-1]


def find_first(
    max_worlds: int,
    atom_count: int,
    frame_mask: int,
    premises: tuple[tuple[int, ...], ...],
    conclusion: tuple[int, ...],
) -> tuple[int, int, int, int] | None:
    """First (world_count, relation_bits, valuation_bits, failing_world)
    where every premise holds at every world, the frame conditions hold,
    and the conclusion fails at the returned (smallest) world; None if no
    such model exists within the budget."""
    if max_worlds > MAX_WORLDS:
        raise ValueError(f"enumeration supports at most {MAX_WORLDS} worlds")
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        table = _atom_mask_table(n, atom_count)
        val_range = range(len(table))
        for rel in range(1 << (n * n)):
            succ = _successor_masks(rel, n)
            if not _frame_ok(succ, n, frame_mask):
                continue
            for val in val_range:
                masks = table[val]
                for code in premises:
                    if eval_mask(code, succ, masks, n, full) != full:
                        break
                else:
                    c = eval_mask(conclusion, succ, masks, n, full)
                    if c != full:
                        for w in range(n):
                            if not (c >> w) & 1:
                                return (n, rel, val, w)
    return None
