"""Integer linear algebra: Smith normal form and affine lattice solving."""

from __future__ import annotations

from .rational import det_int
from ..errors import DimensionMismatch


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(rows):
    """Smith normal form with transforms: returns (U, S, V), U A V = S.

    U and V are unimodular; S is diagonal with nonnegative entries and
    each diagonal entry divides the next.
    """
    a = [[int(x) for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    if any(len(r) != n for r in a):
        raise DimensionMismatch("ragged rows")
    u = _identity(m)
    v = _identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            a[r][i] -= q * a[r][j]
        for r in range(n):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(m, n):
        # pivot: entry of least nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None
                                     or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_op(t, culprit, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def _matvec(rows, vec):
    return [sum(r[j] * vec[j] for j in range(len(vec))) for r in rows]


def integer_solve_affine(rows, rhs):
    """All integer solutions of A x = b: (particular, kernel_basis) or None.

    The kernel basis spans {x : A x = 0} over Z (it is a full lattice
    basis, not just a spanning set).  Returns None when no integer
    solution exists.
    """
    a = [[int(x) for x in row] for row in rows]
    b = [int(x) for x in rhs]
    m = len(a)
    n = len(a[0]) if a else 0
    if len(b) != m:
        raise DimensionMismatch("rhs length != row count")
    u, s, v = smith_normal_form(a)
    c = _matvec(u, b)
    y = [0] * n
    for i in range(m):
        d = s[i][i] if i < min(m, n) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    particular = tuple(_matvec(v, y))
    kernel = []
    for j in range(n):
        d = s[j][j] if j < min(m, n) else 0
        if d == 0:
            kernel.append(tuple(v[r][j] for r in range(n)))
    return particular, kernel


def is_unimodular(rows) -> bool:
    try:
        return abs(det_int(rows)) == 1
    except Exception:
        return False
