"""Dense exact linear algebra over Q or Q(q).

Matrices are lists of rows, vectors are lists; entries are field elements
(see :mod:`quantizable.exactmath`). Pivoting always takes the first nonzero
entry so results are deterministic.
"""
from __future__ import annotations

from typing import Sequence

from .exactmath import Field, QQ, common_field

Matrix = list[list]
Vector = list


def _field(*blocks, field: Field | None = None) -> Field:
    if field is not None:
        return field
    found = None
    for block in blocks:
        rows = block if block and isinstance(block[0], list) else [block]
        f = common_field(x for row in rows for x in row)
        if f is not None:
            if found is not None and f is not found:
                raise TypeError(f"mixed fields {found.name} and {f.name}")
            found = f
    return found or QQ


def identity(n: int, field: Field = QQ) -> Matrix:
    zero, one = field.zero(), field.one()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int, field: Field = QQ) -> Matrix:
    return [[field.zero() for _ in range(cols)] for _ in range(rows)]


def coerce_matrix(A: Sequence[Sequence], field: Field) -> Matrix:
    return [[field(x) for x in row] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_vec(A: Matrix, x: Vector) -> Vector:
    return [sum((a * b for a, b in zip(row, x)), 0) for row in A]


def vec_mat(x: Vector, A: Matrix) -> Vector:
    return mat_vec(transpose(A), x)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in Bt] for row in A]


def dot(x: Vector, y: Vector):
    return sum((a * b for a, b in zip(x, y)), 0)


def column(A: Matrix, j: int) -> Vector:
    return [row[j] for row in A]


def is_diagonal(A: Matrix) -> bool:
    return all(not A[i][j] for i in range(len(A)) for j in range(len(A[i])) if i != j)


def _row_echelon(A: Matrix, field: Field, augment: Vector | None = None):
    """Gauss-Jordan reduction; returns (reduced rows, pivot columns)."""
    M = [list(row) for row in A]
    if augment is not None:
        for row, b in zip(M, augment):
            row.append(b)
    ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = field.one() / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(A: Matrix, field: Field | None = None) -> int:
    if not A or not A[0]:
        return 0
    field = _field(A, field=field)
    return len(_row_echelon(A, field)[1])


def solve_linear(A: Matrix, b: Vector, field: Field | None = None) -> Vector | None:
    """One solution of ``A x = b``, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    if len(A) != len(b):
        raise ValueError(f"shape mismatch: {len(A)} rows but {len(b)} right-hand entries")
    field = _field(A, b, field=field)
    ncols = len(A[0]) if A else 0
    if ncols == 0:
        return [] if all(not x for x in b) else None
    M, pivots = _row_echelon(A, field, augment=list(b))
    for row in M[len(pivots):]:
        if row[ncols]:
            return None
    x = [field.zero() for _ in range(ncols)]
    for r, c in enumerate(pivots):
        x[c] = M[r][ncols]
    return x


def determinant(A: Matrix, field: Field | None = None):
    field = _field(A, field=field)
    n = len(A)
    M = [list(row) for row in A]
    det = field.one()
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return field.zero()
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = field.one() / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def inverse(A: Matrix, field: Field | None = None) -> Matrix:
    field = _field(A, field=field)
    n = len(A)
    M = [list(row) + e for row, e in zip(A, identity(n, field))]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = field.one() / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def congruence_diagonalize(G: Matrix, field: Field | None = None) -> tuple[Matrix, Vector]:
    """Find invertible ``C`` with ``C^T G C`` diagonal; return ``(C, diagonal)``.

    The columns of ``C`` are an orthogonal (not normalized) basis for the form.
    A zero pivot with a nonzero off-diagonal entry is repaired by replacing
    ``v_i`` with ``v_i + v_j`` (``j`` the first index pairing nontrivially),
    or ``v_i - v_j`` if the sum is isotropic too; the two cannot both vanish
    in characteristic 0.
    """
    field = _field(G, field=field)
    n = len(G)
    M = [list(row) for row in G]
    C = identity(n, field)

    def add_col_and_row(i: int, j: int, f) -> None:
        # v_i <- v_i + f v_j, i.e. M <- E^T M E with E = I + f e_j e_i^T
        for row in C:
            row[i] = row[i] + f * row[j]
        for k in range(n):
            M[k][i] = M[k][i] + f * M[k][j]
        for k in range(n):
            M[i][k] = M[i][k] + f * M[j][k]

    for i in range(n):
        if not M[i][i]:
            j = next((j for j in range(i + 1, n) if M[i][j]), None)
            if j is None:
                continue
            sign = field.one()
            if not (2 * M[i][j] + M[j][j]):
                sign = -sign
            add_col_and_row(i, j, sign)
        pivot = M[i][i]
        for k in range(i + 1, n):
            if M[i][k]:
                add_col_and_row(k, i, -(M[i][k] / pivot))
    return C, [M[i][i] for i in range(n)]
