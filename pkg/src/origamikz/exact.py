"""Exact linear algebra over the integers and rationals.

Everything here works on plain lists of Python ints (or Fractions), so all
results are exact; no floating point is used anywhere in this module.
Matrices are row-major lists of lists.
"""

from __future__ import annotations

from fractions import Fraction


class DegenerateForm(Exception):
    """Raised when a skew form expected to be nondegenerate is singular."""


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def mat_copy(a):
    return [list(row) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    n, k = len(a), len(b)
    bt = list(zip(*b))
    return [[sum(ra[t] * cb[t] for t in range(k)) for cb in bt] for ra in a]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_pow(a, k: int):
    n = len(a)
    if k < 0:
        a = int_inverse(a)
        k = -k
    result = identity_matrix(n)
    base = mat_copy(a)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def is_skew(a) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(n))


def bareiss_det(a) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a) -> int:
    """Rank over the rationals."""
    if not a or not a[0]:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_frac(a, b):
    """One exact solution x of a·x = b over Q, or None if inconsistent.

    ``b`` may be a vector or a matrix (solved column by column).
    """
    vector_rhs = b and not isinstance(b[0], (list, tuple))
    rhs = [[x] for x in b] if vector_rhs else mat_copy(b)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    width = len(rhs[0]) if rhs else 0
    m = [[Fraction(x) for x in row] + [Fraction(y) for y in rhs[i]] for i, row in enumerate(a)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if any(m[i][cols:]):
            return None
    sol = [[Fraction(0)] * width for _ in range(cols)]
    for i, c in enumerate(pivots):
        sol[c] = m[i][cols:]
    return [row[0] for row in sol] if vector_rhs else sol


def frac_to_int(values):
    """Cast Fractions with denominator 1 back to ints; raises otherwise."""
    if values and isinstance(values[0], (list, tuple)):
        return [frac_to_int(row) for row in values]
    out = []
    for v in values:
        f = Fraction(v)
        if f.denominator != 1:
            raise ValueError(f"expected an integer, got {f}")
        out.append(int(f))
    return out


def int_inverse(a):
    """Exact inverse of an integer matrix with determinant ±1."""
    n = len(a)
    inv = solve_frac(a, identity_matrix(n))
    if inv is None:
        raise ValueError("matrix is singular")
    return frac_to_int(inv)


def smith_normal_form(a):
    """U, D, V with U·a·V = D diagonal, d1 | d2 | ..., U and V unimodular."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = mat_copy(a)
    u = identity_matrix(m)
    v = identity_matrix(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, m):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                row_op(i, t, q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                col_op(j, t, q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the submatrix
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offending row to the pivot row
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def kernel_basis(a):
    """Basis of the saturated integer kernel lattice {x : a·x = 0}.

    Returns a list of column vectors (each a list of ints).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    _, d, v = smith_normal_form(a)
    r = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def lattice_coords(basis_cols, vec):
    """Coordinates of ``vec`` in the lattice spanned by ``basis_cols``.

    Returns integer coordinates, or None if ``vec`` is outside the span.
    Raises if ``vec`` is in the rational span but not the integer lattice.
    """
    if not basis_cols:
        return [] if not any(vec) else None
    a = [[col[i] for col in basis_cols] for i in range(len(vec))]
    x = solve_frac(a, list(vec))
    if x is None:
        return None
    residual = mat_vec([[Fraction(e) for e in row] for row in a], x)
    if any(r != w for r, w in zip(residual, vec)):
        return None
    return frac_to_int(x)


def charpoly(a):
    """det(xI - a) by the division-free Berkowitz algorithm.

    Coefficients are returned low degree first (so the last entry is 1).
    """
    n = len(a)
    poly = [1]  # descending coefficients, monic
    for k in range(n):
        sub = [row[:k] for row in a[:k]]
        r = a[k][:k]
        c = [a[i][k] for i in range(k)]
        t = [1, -a[k][k]]
        vec = c
        for _ in range(k):
            t.append(-sum(x * y for x, y in zip(r, vec)))
            vec = mat_vec(sub, vec)
        new = [0] * (k + 2)
        for i in range(k + 2):
            acc = 0
            for j in range(len(poly)):
                if 0 <= i - j < len(t):
                    acc += t[i - j] * poly[j]
            new[i] = acc
        poly = new
    return poly[::-1]


def skew_normal_form(g):
    """Normal form of a nondegenerate integer alternating form.

    Returns (U, F) with U unimodular and F = Uᵀ·g·U equal to
    [[0, D], [-D, 0]] where D = diag(d1, ..., dk) and d1 | d2 | ... | dk.
    """
    n = len(g)
    if not is_skew(g):
        raise ValueError("form is not skew-symmetric")
    if n % 2 or bareiss_det(g) == 0:
        raise DegenerateForm("alternating form is degenerate")
    b = mat_copy(g)
    u = identity_matrix(n)

    def col_op(i, j, q):  # col_i += q*col_j, and the congruent row op
        for row in b:
            row[i] += q * row[j]
        for k in range(n):
            b[i][k] += q * b[j][k]
        for row in u:
            row[i] += q * row[j]

    def swap(i, j):
        for row in b:
            row[i], row[j] = row[j], row[i]
        b[i], b[j] = b[j], b[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    pairs = n // 2
    for p in range(pairs):
        t = 2 * p
        guard = 0
        while True:
            guard += 1
            if guard > 10000:
                raise RuntimeError("skew normal form failed to converge")
            piv = None
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if b[i][j] and (best is None or abs(b[i][j]) < best):
                        best = abs(b[i][j])
                        piv = (i, j)
            if piv is None:
                raise DegenerateForm("alternating form is degenerate")
            i, j = piv
            if i != t:
                swap(i, t)
                if j == t:
                    j = i
            if j != t + 1:
                swap(j, t + 1)
            d = b[t][t + 1]
            dirty = False
            for j2 in range(n):
                if j2 in (t, t + 1):
                    continue
                if b[t][j2]:
                    q = b[t][j2] // d
                    col_op(j2, t + 1, -q)
                    if b[t][j2]:
                        dirty = True
                if b[t + 1][j2]:
                    q = b[t + 1][j2] // (-d)
                    col_op(j2, t, -q)
                    if b[t + 1][j2]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i2 in range(t + 2, n):
                for j2 in range(t + 2, n):
                    if b[i2][j2] % d:
                        offender = j2
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            col_op(t, offender, 1)
        if b[t][t + 1] < 0:
            swap(t, t + 1)
    # reorder the interleaved pairs (a1,b1,a2,b2,...) to (a1,a2,...,b1,b2,...)
    perm = [2 * p for p in range(pairs)] + [2 * p + 1 for p in range(pairs)]
    u2 = [[u[i][perm[j]] for j in range(n)] for i in range(n)]
    f = mat_mul(mat_mul(transpose(u2), g), u2)
    return u2, f


def skew_divisors(f) -> list[int]:
    """Divisor chain of a normal form produced by :func:`skew_normal_form`."""
    k = len(f) // 2
    return [f[i][k + i] for i in range(k)]
