"""Exact rational linear algebra for stencil-table generation.

All stencil coefficient tables are assembled as `fractions.Fraction`
matrices and lowered to float64 exactly once, so there is no transcription
or roundoff drift between the printed tables, the generated ones, and the
smoothness-indicator quadratic forms.
"""

from fractions import Fraction


def frac_matvec(A, x):
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]


def frac_matmul(A, B):
    n, k = len(A), len(B)
    m = len(B[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def frac_transpose(A):
    return [list(col) for col in zip(*A)]


def frac_solve(A, B):
    """Solve A X = B exactly (A square, nonsingular); B is a matrix."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    w = len(M[0])
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = Fraction(1) / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                Mr, Mc = M[r], M[col]
                for j in range(col, w):
                    Mr[j] -= f * Mc[j]
    return [row[n:] for row in M]


def frac_inverse(A):
    n = len(A)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return frac_solve(A, eye)


def pinned_least_squares(A, pin_rows):
    """Left inverse of A (n_eq x n_unk, n_eq >= n_unk) by least squares,
    with the equations in `pin_rows` enforced exactly.

    Returns the n_unk x n_eq matrix B with B A = I on the column space,
    i.e. coefficients = B @ data reproduces any data lying in range(A).
    Solved through the KKT system of  min ||A c - u||^2  s.t. A[pin] c = u[pin].
    """
    n_eq = len(A)
    n_unk = len(A[0])
    if n_eq == n_unk and not pin_rows:
        return frac_inverse(A)
    At = frac_transpose(A)
    AtA = frac_matmul(At, A)
    p = len(pin_rows)
    # KKT matrix [[AtA, C^T], [C, 0]] with C the pinned rows of A.
    size = n_unk + p
    K = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n_unk):
        for j in range(n_unk):
            K[i][j] = AtA[i][j]
    for t, r in enumerate(pin_rows):
        for j in range(n_unk):
            K[n_unk + t][j] = A[r][j]
            K[j][n_unk + t] = A[r][j]
    # Right-hand side for data vector u: [A^T u ; u[pin]] -> express as matrix
    # acting on u of length n_eq.
    R = [[Fraction(0)] * n_eq for _ in range(size)]
    for i in range(n_unk):
        for r in range(n_eq):
            R[i][r] = At[i][r]
    for t, r in enumerate(pin_rows):
        R[n_unk + t][r] = Fraction(1)
    sol = frac_solve(K, R)
    return sol[:n_unk]
