# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see catlogic._core.pure for the reference semantics.

Inputs and outputs are plain Python ints and tuples so the two backends are
drop-in interchangeable.
"""

from itertools import product as _product

from libc.stdlib cimport free, malloc

BACKEND = "native"


def reduce_word(word):
    cdef list src = list(word)
    cdef Py_ssize_t n = len(src)
    cdef long* buf = <long*> malloc(max(1, n) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t top = 0
    cdef long letter
    cdef Py_ssize_t i
    try:
        for i in range(n):
            letter = src[i]
            if letter == 0:
                raise ValueError("0 is not a generator letter")
            if top > 0 and buf[top - 1] == -letter:
                top -= 1
            else:
                buf[top] = letter
                top += 1
        return tuple([buf[i] for i in range(top)])
    finally:
        free(buf)


cdef long _eval(long* code, long code_len, long* env, long* tables,
                long* offsets, long* arities, long n, long* stack) noexcept nogil:
    cdef Py_ssize_t sp = 0
    cdef Py_ssize_t i, j
    cdef long tok, s, k, idx
    for i in range(code_len):
        tok = code[i]
        if tok >= 0:
            stack[sp] = env[tok]
            sp += 1
        else:
            s = -tok - 1
            k = arities[s]
            idx = 0
            for j in range(sp - k, sp):
                idx = idx * n + stack[j]
            sp -= k
            stack[sp] = tables[offsets[s] + idx]
            sp += 1
    return stack[sp - 1]


cdef long _eval_partial(long* code, long code_len, long* env, long* tables,
                        long* offsets, long* arities, long n, long* stack) noexcept nogil:
    # returns -1 when an unassigned cell is hit (real values are always >= 0)
    cdef Py_ssize_t sp = 0
    cdef Py_ssize_t i, j
    cdef long tok, s, k, idx, v
    for i in range(code_len):
        tok = code[i]
        if tok >= 0:
            stack[sp] = env[tok]
            sp += 1
        else:
            s = -tok - 1
            k = arities[s]
            idx = 0
            for j in range(sp - k, sp):
                idx = idx * n + stack[j]
            sp -= k
            v = tables[offsets[s] + idx]
            if v < 0:
                return -1
            stack[sp] = v
            sp += 1
    return stack[sp - 1]


cdef class _Problem:
    """C copies of the axiom codes, expanded environments and table offsets."""

    cdef long n, n_syms, total, n_instances, max_vars, max_stack
    cdef long* arities
    cdef long* offsets
    cdef long* codes
    cdef long* inst_env
    cdef long* inst_lhs_off
    cdef long* inst_lhs_len
    cdef long* inst_rhs_off
    cdef long* inst_rhs_len

    def __cinit__(self, long n, arities, axioms):
        cdef Py_ssize_t i, j
        self.n = n
        self.n_syms = len(arities)
        self.arities = <long*> malloc(max(1, self.n_syms) * sizeof(long))
        self.offsets = <long*> malloc(max(1, self.n_syms) * sizeof(long))
        self.total = 0
        for i in range(self.n_syms):
            self.arities[i] = arities[i]
            self.offsets[i] = self.total
            self.total += n ** arities[i]

        codes_py = []
        spans = []
        self.max_vars = 1
        self.max_stack = 2
        pos = 0
        for n_vars, lhs, rhs in axioms:
            if n_vars > self.max_vars:
                self.max_vars = n_vars
            spans.append((pos, len(lhs), pos + len(lhs), len(rhs)))
            codes_py.extend(lhs)
            codes_py.extend(rhs)
            pos += len(lhs) + len(rhs)
            if len(lhs) + 1 > self.max_stack:
                self.max_stack = len(lhs) + 1
            if len(rhs) + 1 > self.max_stack:
                self.max_stack = len(rhs) + 1
        self.codes = <long*> malloc(max(1, len(codes_py)) * sizeof(long))
        for i in range(len(codes_py)):
            self.codes[i] = codes_py[i]

        inst = []
        for a, (n_vars, lhs, rhs) in enumerate(axioms):
            for env in _product(range(n), repeat=n_vars):
                inst.append((env, spans[a]))
        self.n_instances = len(inst)
        self.inst_env = <long*> malloc(max(1, self.n_instances * self.max_vars) * sizeof(long))
        self.inst_lhs_off = <long*> malloc(max(1, self.n_instances) * sizeof(long))
        self.inst_lhs_len = <long*> malloc(max(1, self.n_instances) * sizeof(long))
        self.inst_rhs_off = <long*> malloc(max(1, self.n_instances) * sizeof(long))
        self.inst_rhs_len = <long*> malloc(max(1, self.n_instances) * sizeof(long))
        for i, (env, (lo, ll, ro, rl)) in enumerate(inst):
            for j in range(len(env)):
                self.inst_env[i * self.max_vars + j] = env[j]
            self.inst_lhs_off[i] = lo
            self.inst_lhs_len[i] = ll
            self.inst_rhs_off[i] = ro
            self.inst_rhs_len[i] = rl

    def __dealloc__(self):
        free(self.arities)
        free(self.offsets)
        free(self.codes)
        free(self.inst_env)
        free(self.inst_lhs_off)
        free(self.inst_lhs_len)
        free(self.inst_rhs_off)
        free(self.inst_rhs_len)


def scan_tables(n, arities, axioms):
    cdef _Problem p = _Problem(n, list(arities), list(axioms))
    cdef long total = p.total
    cdef long cn = n
    cdef Py_ssize_t i
    out = []

    if cn == 0:
        return [()] if total == 0 else []

    cdef long* tables = <long*> malloc(max(1, total) * sizeof(long))
    cdef long* stack = <long*> malloc(p.max_stack * sizeof(long))
    cdef bint ok
    cdef long lv, rv
    cdef Py_ssize_t pos
    try:
        for i in range(total):
            tables[i] = 0
        while True:
            ok = True
            for i in range(p.n_instances):
                lv = _eval(p.codes + p.inst_lhs_off[i], p.inst_lhs_len[i],
                           p.inst_env + i * p.max_vars, tables, p.offsets, p.arities, cn, stack)
                rv = _eval(p.codes + p.inst_rhs_off[i], p.inst_rhs_len[i],
                           p.inst_env + i * p.max_vars, tables, p.offsets, p.arities, cn, stack)
                if lv != rv:
                    ok = False
                    break
            if ok:
                out.append(tuple([tables[i] for i in range(total)]))
            if total == 0:
                break
            # odometer with the last cell fastest: lexicographic ascending
            pos = total - 1
            while pos >= 0:
                tables[pos] += 1
                if tables[pos] < cn:
                    break
                tables[pos] = 0
                pos -= 1
            if pos < 0:
                break
        return out
    finally:
        free(tables)
        free(stack)


def search_tables(n, arities, axioms):
    cdef _Problem p = _Problem(n, list(arities), list(axioms))
    cdef long total = p.total
    cdef long cn = n
    cdef Py_ssize_t i
    out = []

    if cn == 0:
        return [()] if total == 0 else []
    if total == 0:
        return scan_tables(n, arities, axioms)

    # constants first, then larger tables first; ties by declaration order
    order_py = sorted(range(p.n_syms), key=lambda s: (arities[s] != 0, -(n ** arities[s]), s))
    offs = []
    off = 0
    for s in range(p.n_syms):
        offs.append(off)
        off += n ** arities[s]
    cells_py = []
    for s in order_py:
        cells_py.extend(range(offs[s], offs[s] + n ** arities[s]))

    cdef long* cell_order = <long*> malloc(total * sizeof(long))
    cdef long* tables = <long*> malloc(total * sizeof(long))
    cdef long* stack = <long*> malloc(p.max_stack * sizeof(long))
    cdef long* pending = <long*> malloc(max(1, p.n_instances) * sizeof(long))
    cdef long* value_at = <long*> malloc(total * sizeof(long))
    cdef long* pend_count_at = <long*> malloc((total + 1) * sizeof(long))
    cdef long pend_n, depth, cell, value, lv, rv, inst
    cdef bint ok
    try:
        for i in range(total):
            cell_order[i] = cells_py[i]
            tables[i] = -1
            value_at[i] = -1
        for i in range(p.n_instances):
            pending[i] = i
        pend_count_at[0] = p.n_instances

        depth = 0
        while depth >= 0:
            if depth == total:
                out.append(tuple([tables[i] for i in range(total)]))
                depth -= 1
                continue
            cell = cell_order[depth]
            value = value_at[depth] + 1
            if value >= cn:
                value_at[depth] = -1
                tables[cell] = -1
                depth -= 1
                continue
            value_at[depth] = value
            pend_n = pend_count_at[depth]
            tables[cell] = value
            ok = True
            i = 0
            while i < pend_n:
                inst = pending[i]
                lv = _eval_partial(p.codes + p.inst_lhs_off[inst], p.inst_lhs_len[inst],
                                   p.inst_env + inst * p.max_vars, tables, p.offsets,
                                   p.arities, cn, stack)
                if lv < 0:
                    i += 1
                    continue
                rv = _eval_partial(p.codes + p.inst_rhs_off[inst], p.inst_rhs_len[inst],
                                   p.inst_env + inst * p.max_vars, tables, p.offsets,
                                   p.arities, cn, stack)
                if rv < 0:
                    i += 1
                    continue
                if lv != rv:
                    ok = False
                    break
                # settled under this partial assignment: swap past the active prefix
                pend_n -= 1
                pending[i] = pending[pend_n]
                pending[pend_n] = inst
            if not ok:
                continue
            depth += 1
            pend_count_at[depth] = pend_n
        out.sort()
        return out
    finally:
        free(cell_order)
        free(tables)
        free(stack)
        free(pending)
        free(value_at)
        free(pend_count_at)


def hom_image_table(atom_map, m_atoms, k_atoms):
    cdef long m = m_atoms
    cdef long k = k_atoms
    cdef Py_ssize_t size = 1 << m
    cdef Py_ssize_t e
    cdef long j
    cdef unsigned long long h
    cdef long* amap = <long*> malloc(max(1, k) * sizeof(long))
    cdef unsigned long long* img = <unsigned long long*> malloc(max(1, size) * sizeof(unsigned long long))
    if amap == NULL or img == NULL:
        free(amap)
        free(img)
        raise MemoryError()
    try:
        for j in range(k):
            amap[j] = atom_map[j]
        for e in range(size):
            h = 0
            for j in range(k):
                if (e >> amap[j]) & 1:
                    h |= (<unsigned long long> 1) << j
            img[e] = h
        return [img[e] for e in range(size)]
    finally:
        free(amap)
        free(img)


def check_hom_table(img, m_atoms, k_atoms):
    cdef long m = m_atoms
    cdef long k = k_atoms
    cdef Py_ssize_t size = 1 << m
    cdef Py_ssize_t e
    cdef unsigned long long full_tgt = ((<unsigned long long> 1) << k) - 1
    cdef Py_ssize_t full_src = size - 1
    cdef Py_ssize_t low
    cdef unsigned long long* tab = <unsigned long long*> malloc(max(1, size) * sizeof(unsigned long long))
    if tab == NULL:
        raise MemoryError()
    try:
        for e in range(size):
            tab[e] = img[e]
        if tab[0] != 0 or tab[full_src] != full_tgt:
            return False
        for e in range(size):
            if tab[full_src ^ e] != (full_tgt ^ tab[e]):
                return False
        for e in range(1, size):
            low = e & (-e)
            if tab[e] != (tab[e ^ low] | tab[low]):
                return False
        return True
    finally:
        free(tab)
