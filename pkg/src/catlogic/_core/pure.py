"""Pure-Python kernels: reference semantics for the compiled twin.

Both backends must return bit-identical results; the test suite cross-checks
them on shared inputs. Everything here works on plain ints and tuples.

Term bytecode: a postfix token list where token >= 0 pushes env[token] and
token < 0 applies function symbol (-token - 1), popping its arity arguments
(leftmost argument deepest). Tables are flat row-major blocks concatenated in
symbol order; `arities` gives each symbol's argument count.
"""

from __future__ import annotations

from itertools import product

BACKEND = "pure"


def reduce_word(word) -> tuple[int, ...]:
    """Reduced form of a free-group word (letters are nonzero ints, -g = g^-1)."""
    out: list[int] = []
    push = out.append
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            push(letter)
    return tuple(out)


def _offsets(n: int, arities) -> tuple[list[int], int]:
    offsets = []
    total = 0
    for k in arities:
        offsets.append(total)
        total += n**k
    return offsets, total


def _eval_code(code, env, tables, offsets, arities, n: int) -> int:
    stack: list[int] = []
    for tok in code:
        if tok >= 0:
            stack.append(env[tok])
        else:
            s = -tok - 1
            k = arities[s]
            idx = 0
            for a in stack[len(stack) - k :]:
                idx = idx * n + a
            del stack[len(stack) - k :]
            stack.append(tables[offsets[s] + idx])
    return stack[-1]


def scan_tables(n: int, arities, axioms) -> list[tuple[int, ...]]:
    """All operation-table assignments satisfying every axiom, by raw scan.

    No pruning: every point of the full table space is visited and checked.
    `axioms` is a list of (n_vars, lhs_code, rhs_code). Output is in ascending
    lexicographic order of the concatenated tables.
    """
    offsets, total = _offsets(n, arities)
    compiled = [
        (list(product(range(n), repeat=n_vars)), lhs, rhs) for n_vars, lhs, rhs in axioms
    ]
    out: list[tuple[int, ...]] = []
    ev = _eval_code
    for cand in product(range(n), repeat=total):
        ok = True
        for envs, lhs, rhs in compiled:
            for env in envs:
                if ev(lhs, env, cand, offsets, arities, n) != ev(rhs, env, cand, offsets, arities, n):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(cand)
    return out


def _eval_partial(code, env, tables, offsets, arities, n: int):
    # like _eval_code but tables may hold -1 (unassigned); returns None on a hit
    stack: list[int] = []
    for tok in code:
        if tok >= 0:
            stack.append(env[tok])
        else:
            s = -tok - 1
            k = arities[s]
            idx = 0
            for a in stack[len(stack) - k :]:
                idx = idx * n + a
            del stack[len(stack) - k :]
            v = tables[offsets[s] + idx]
            if v < 0:
                return None
            stack.append(v)
    return stack[-1]


def search_tables(n: int, arities, axioms) -> list[tuple[int, ...]]:
    """Same result set as scan_tables, found by axiom-driven backtracking.

    Cells are assigned constants first, then the larger tables, so unit- and
    inverse-style axioms prune as soon as their cells fill in. The output is
    sorted into scan_tables' canonical order before returning.
    """
    offsets, total = _offsets(n, arities)
    if total == 0:
        vacuous = all(
            _eval_code(l, e, (), offsets, arities, n) == _eval_code(r, e, (), offsets, arities, n)
            for nv, l, r in axioms
            for e in product(range(n), repeat=nv)
        )
        return [()] if vacuous else []

    sym_order = sorted(
        range(len(arities)), key=lambda s: (arities[s] != 0, -(n ** arities[s]), s)
    )
    cell_order: list[int] = []
    for s in sym_order:
        cell_order.extend(range(offsets[s], offsets[s] + n ** arities[s]))

    instances: list[tuple[tuple[int, ...], tuple, tuple]] = []
    for n_vars, lhs, rhs in axioms:
        for env in product(range(n), repeat=n_vars):
            instances.append((env, lhs, rhs))

    tables = [-1] * total
    pending: set[int] = set(range(len(instances)))
    results: list[tuple[int, ...]] = []
    ev = _eval_partial

    def descend(depth: int) -> None:
        if depth == total:
            results.append(tuple(tables))
            return
        cell = cell_order[depth]
        for value in range(n):
            tables[cell] = value
            settled: list[int] = []
            ok = True
            for i in pending:
                env, lhs, rhs = instances[i]
                lv = ev(lhs, env, tables, offsets, arities, n)
                if lv is None:
                    continue
                rv = ev(rhs, env, tables, offsets, arities, n)
                if rv is None:
                    continue
                if lv != rv:
                    ok = False
                    break
                settled.append(i)
            if ok:
                pending.difference_update(settled)
                descend(depth + 1)
                pending.update(settled)
        tables[cell] = -1

    descend(0)
    results.sort()
    return results


def hom_image_table(atom_map, m_atoms: int, k_atoms: int) -> list[int]:
    """Element map of the dual-encoded hom, tabulated over all 2^m_atoms inputs.

    atom_map[j] names the source atom under target atom j; the image of e has
    bit j set exactly when atom_map[j] lies below e.
    """
    size = 1 << m_atoms
    img = [0] * size
    for e in range(size):
        h = 0
        for j in range(k_atoms):
            if (e >> atom_map[j]) & 1:
                h |= 1 << j
        img[e] = h
    return img


def check_hom_table(img, m_atoms: int, k_atoms: int) -> bool:
    """Whether a tabulated element map preserves the five Boolean operations.

    Checks bottom/top, complement on every element, and that every image is
    the join of its atomic parts; together these force meet and join
    preservation on all pairs (meets via De Morgan).
    """
    size = 1 << m_atoms
    full_src = size - 1
    full_tgt = (1 << k_atoms) - 1
    if img[0] != 0 or img[full_src] != full_tgt:
        return False
    for e in range(size):
        if img[full_src ^ e] != full_tgt ^ img[e]:
            return False
    for e in range(1, size):
        low = e & -e
        if img[e] != img[e ^ low] | img[low]:
            return False
    return True
