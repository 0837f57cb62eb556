"""Dense exact linear algebra over the field descriptors of :mod:`exactalg`.

Matrices are plain lists of rows.  Entries must already belong to the
field (``Fraction``, ``GF3Elem``, ``CycQ6``); ``field(x)`` is used to
coerce where convenient.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .exactalg import QQ, Ring


class LinearSystemError(ArithmeticError):
    """Inconsistent or underdetermined system."""


def _copy(A, field):
    return [[field(x) for x in row] for row in A]


def rref(A: Sequence[Sequence], field: Ring = QQ):
    """Reduced row echelon form. Returns (matrix, pivot column list)."""
    M = _copy(A, field)
    if not M:
        return M, []
    nrows, ncols = len(M), len(M[0])
    pivots: list = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, field: Ring = QQ) -> int:
    return len(rref(A, field)[1]) if A else 0


def nullspace(A, field: Ring = QQ, ncols: int | None = None) -> list:
    """Basis of {x : A x = 0}, one vector per free column (RREF normalised)."""
    if not A:
        n = ncols or 0
        return [[field.one if j == i else field.zero for j in range(n)] for i in range(n)]
    R, pivots = rref(A, field)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(A, b, field: Ring = QQ, unique: bool = True):
    """Solve A x = b. Raises LinearSystemError if inconsistent, or if
    ``unique`` and the solution is not unique."""
    if not A:
        raise LinearSystemError("empty system")
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, field)
    if n in pivots:
        raise LinearSystemError("inconsistent system")
    if unique and len(pivots) < n:
        raise LinearSystemError(f"underdetermined system ({n - len(pivots)} free variables)")
    x = [field.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def det(A, field: Ring = QQ):
    """Determinant by Gaussian elimination."""
    M = _copy(A, field)
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c]
        inv = field.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def matmul(A, B):
    cols = list(zip(*B))
    out = []
    for row in A:
        out.append([_dot(row, col) for col in cols])
    return out


def _dot(u, v):
    total = None
    for a, b in zip(u, v):
        t = a * b
        total = t if total is None else total + t
    return total


def inverse(A, field: Ring = QQ):
    n = len(A)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det_generic(A, zero, one):
    """Determinant over any commutative ring by Laplace expansion along
    rows, memoised on the set of remaining columns (2^n subproblems)."""
    n = len(A)
    if n == 0:
        return one

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset):
        if row == n:
            return one
        total = zero
        sign_index = 0
        for c in sorted(cols):
            entry = A[row][c]
            if entry:
                sub = minor(row + 1, cols - {c})
                if sub:
                    term = entry * sub
                    total = total - term if sign_index % 2 else total + term
            sign_index += 1
        return total

    return minor(0, frozenset(range(n)))


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix reduced modulo a prime ``p``."""
    return len(echelon_mod_p(rows, p))


def echelon_mod_p(rows: Sequence[Sequence[int]], p: int) -> list:
    """Row echelon basis (as dict-free dense rows) of the row span mod p,
    each row normalised to leading coefficient 1."""
    basis: dict = {}  # pivot column -> row
    for row in rows:
        v = [x % p for x in row]
        for c, b in sorted(basis.items()):
            if v[c]:
                f = v[c]
                v = [(a - f * bb) % p for a, bb in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], -1, p)
        v = [(x * inv) % p for x in v]
        for c, b in list(basis.items()):
            if b[lead]:
                f = b[lead]
                basis[c] = [(a - f * bb) % p for a, bb in zip(b, v)]
        basis[lead] = v
    return [basis[c] for c in sorted(basis)]
