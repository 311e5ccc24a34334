"""Small exact integer linear algebra: kernels and solvability over Z.

Used by the spectral predicates; matrices here have at most a handful of
rows and columns, so a plain column-reduction (Hermite-style, arbitrary
precision ints) is all that is needed.
"""

from __future__ import annotations


def _column_echelon(a: list[list[int]], n: int) -> tuple[list[list[int]], list[list[int]], int]:
    """Bring the m x n matrix to column echelon form by unimodular column ops.

    Returns (echelon matrix, transform U with A @ U = echelon, pivot count).
    Columns >= pivot count of the echelon matrix are zero.
    """
    m = len(a)
    mat = [row[:] for row in a]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_addmul(dst, src, q):
        for i in range(m):
            mat[i][dst] -= q * mat[i][src]
        for i in range(n):
            u[i][dst] -= q * u[i][src]

    def col_swap(c1, c2):
        for i in range(m):
            mat[i][c1], mat[i][c2] = mat[i][c2], mat[i][c1]
        for i in range(n):
            u[i][c1], u[i][c2] = u[i][c2], u[i][c1]

    r = 0
    for i in range(m):
        while True:
            nz = [j for j in range(r, n) if mat[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(mat[i][j]))
            if j0 != r:
                col_swap(r, j0)
            done = True
            for j in range(r + 1, n):
                if mat[i][j] != 0:
                    q = mat[i][j] // mat[i][r]
                    col_addmul(j, r, q)
                    if mat[i][j] != 0:
                        done = False
            if done:
                r += 1
                break
        if r == n:
            break
    return mat, u, r


def integer_kernel(a: list[list[int]]) -> list[list[int]]:
    """Basis of {x in Z^n : A x = 0}; the returned lattice is the full kernel."""
    if not a:
        return []
    n = len(a[0])
    if n == 0:
        return []
    _, u, r = _column_echelon(a, n)
    return [[u[i][j] for i in range(n)] for j in range(r, n)]


def integer_solve(a: list[list[int]], b: list[int]) -> list[int] | None:
    """One integer solution of A x = b, or None if none exists."""
    if not a:
        return []
    n = len(a[0])
    ech, u, r = _column_echelon(a, n)
    m = len(a)
    # forward-substitute against the echelon columns
    residual = list(b)
    coeff = [0] * n
    for j in range(r):
        # first nonzero row of column j
        i0 = next((i for i in range(m) if ech[i][j] != 0), None)
        if i0 is None:
            continue
        if residual[i0] % ech[i0][j] != 0:
            return None
        q = residual[i0] // ech[i0][j]
        coeff[j] = q
        for i in range(m):
            residual[i] -= q * ech[i][j]
    if any(residual):
        return None
    # x = U @ coeff
    return [sum(u[i][j] * coeff[j] for j in range(n)) for i in range(n)]
