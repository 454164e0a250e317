# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Twin of ``_kernel_py``: same entry point, same enumeration order, same
results, roughly two orders of magnitude faster.  See the pure module for
the bit-layout contract.
"""

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

MAX_WORLDS = 5

# Hard capacity limits for the stack-allocated working arrays below.
# MAX_WORLDS = 5, atoms <= 8, premises <= 16, bytecode <= 512 ops.


cdef inline int _frame_ok(unsigned int *succ, int n, int frame_mask) noexcept:
    cdef int i, j
    cdef unsigned int si
    if frame_mask & 1:  # reflexive
        for i in range(n):
            if not (succ[i] >> i) & 1:
                return 0
    if frame_mask & 16:  # serial
        for i in range(n):
            if succ[i] == 0:
                return 0
    if frame_mask & 2:  # symmetric
        for i in range(n):
            for j in range(n):
                if ((succ[i] >> j) & 1) != ((succ[j] >> i) & 1):
                    return 0
    if frame_mask & 4:  # transitive
        for i in range(n):
            si = succ[i]
            for j in range(n):
                if (si >> j) & 1 and (succ[j] & ~si):
                    return 0
    if frame_mask & 8:  # euclidean
        for i in range(n):
            si = succ[i]
            for j in range(n):
                if (si >> j) & 1 and (si & ~succ[j]):
                    return 0
    return 1


cdef inline unsigned int _eval(int *code, int code_len, unsigned int *succ,
                               unsigned int *atom_masks, int n,
                               unsigned int full) noexcept:
    cdef unsigned int stack[64]
    cdef int sp = 0
    cdef int k, op, w
    cdef unsigned int x, m
    for k in range(code_len):
        op = code[k] & 7
        if op == 0:
            stack[sp] = atom_masks[code[k] >> 3]
            sp += 1
        elif op == 1:
            stack[sp - 1] = (~stack[sp - 1]) & full
        elif op == 2:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] & stack[sp]
        elif op == 3:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] | stack[sp]
        elif op == 4:
            x = stack[sp - 1]
            m = 0
            for w in range(n):
                if not (succ[w] & ~x):
                    m |= <unsigned int> 1 << w
            stack[sp - 1] = m
        else:
            x = stack[sp - 1]
            m = 0
            for w in range(n):
                if succ[w] & x:
                    m |= <unsigned int> 1 << w
            stack[sp - 1] = m
    return stack[sp - 1]


def find_first(int max_worlds, int atom_count, int frame_mask,
               tuple premises, tuple conclusion):
    """See ``_kernel_py.find_first``; identical contract and ordering."""
    cdef int codes[17][512]
    cdef int code_lens[17]
    cdef int n_codes, i, k
    cdef int n, w, a, ok
    cdef unsigned int rel, val, full, c
    cdef unsigned int rel_count, val_count
    cdef int nn_bits, val_bits
    cdef unsigned int succ[5]
    cdef unsigned int atom_masks[8]

    if max_worlds > MAX_WORLDS:
        raise ValueError("enumeration supports at most %d worlds" % MAX_WORLDS)
    if atom_count > 8:
        raise ValueError("too many atoms for the compiled kernel")
    if len(premises) > 16:
        raise ValueError("too many premises for the compiled kernel")

    n_codes = len(premises) + 1
    for i in range(len(premises)):
        seq = premises[i]
        if len(seq) > 512:
            raise ValueError("formula bytecode too long")
        code_lens[i] = len(seq)
        for k in range(len(seq)):
            codes[i][k] = seq[k]
    if len(conclusion) > 512:
        raise ValueError("formula bytecode too long")
    code_lens[n_codes - 1] = len(conclusion)
    for k in range(len(conclusion)):
        codes[n_codes - 1][k] = conclusion[k]

    for n in range(1, max_worlds + 1):
        full = (<unsigned int> 1 << n) - 1
        nn_bits = n * n
        val_bits = atom_count * n
        rel_count = <unsigned int> 1 << nn_bits
        val_count = <unsigned int> 1 << val_bits
        for rel in range(rel_count):
            for i in range(n):
                succ[i] = 0
                for k in range(n):
                    if (rel >> (nn_bits - 1 - (i * n + k))) & 1:
                        succ[i] |= <unsigned int> 1 << k
            if not _frame_ok(succ, n, frame_mask):
                continue
            for val in range(val_count):
                for a in range(atom_count):
                    atom_masks[a] = 0
                    for w in range(n):
                        if (val >> (val_bits - 1 - (a * n + w))) & 1:
                            atom_masks[a] |= <unsigned int> 1 << w
                ok = 1
                for i in range(n_codes - 1):
                    if _eval(codes[i], code_lens[i], succ, atom_masks, n, full) != full:
                        ok = 0
                        break
                if not ok:
                    continue
                c = _eval(codes[n_codes - 1], code_lens[n_codes - 1], succ, atom_masks, n, full)
                if c != full:
                    for w in range(n):
                        if not (c >> w) & 1:
                            return (n, rel, val, w)
    return None
