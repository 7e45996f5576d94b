"""Exact dense linear algebra over the scalar towers.

Matrices are lists of lists whose entries share one scalar type (Fraction,
GaussQ, QuatQ or CycQ).  Inertia of hermitian matrices is computed by Sylvester
congruence over the rationals after a real structure embedding; the only float
path is the guarded eigenvalue fallback for cyclotomic entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .scalars import CycQ, GaussQ, QuatQ, conj, is_zero

Matrix = List[list]


def mat_zeros(n: int, m: int, zero=Fraction(0)) -> Matrix:
    return [[zero for _ in range(m)] for _ in range(n)]


def mat_eye(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = None
            for t in range(k):
                term = Ai[t] * B[t][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_neg(A: Matrix) -> Matrix:
    return [[-a for a in row] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def conj_transpose(A: Matrix) -> Matrix:
    return [[conj(A[j][i]) for j in range(len(A))] for i in range(len(A[0]))]


def kron(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(A[0])
    p, q = len(B), len(B[0])
    out = mat_zeros(n * p, m * q, zero=0)
    for i in range(n):
        for j in range(m):
            for r in range(p):
                for s in range(q):
                    out[i * p + r][j * q + s] = A[i][j] * B[r][s]
    return out


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def mat_is_zero(A: Matrix) -> bool:
    return all(is_zero(a) for row in A for a in row)


def mat_inv(A: Matrix) -> Matrix:
    """Inverse by row reduction; valid over division rings (left elimination)."""
    n = len(A)
    work = [list(row) + ident_row for row, ident_row in zip(A, mat_eye_like(A))]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(work[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv_p = _inv_scalar(work[col][col])
        work[col] = [inv_p * x for x in work[col]]
        for r in range(n):
            if r != col and not is_zero(work[r][col]):
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_eye_like(A: Matrix) -> Matrix:
    sample = A[0][0]
    if isinstance(sample, (int, Fraction)):
        return mat_eye(len(A))
    one = type(sample).coerce(1) if hasattr(type(sample), "coerce") else 1
    if isinstance(sample, CycQ):
        one = CycQ.coerce(1, sample.M)
        zero = CycQ.coerce(0, sample.M)
        return mat_eye(len(A), one, zero)
    zero = one - one
    return mat_eye(len(A), one, zero)


def _inv_scalar(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1) / Fraction(x)
    return x.inv()


# ---------------------------------------------------------------------------
# real structure embeddings and exact inertia


def _embed_gauss(z: GaussQ) -> Matrix:
    return [[z.re, -z.im], [z.im, z.re]]


def _embed_quat(q: QuatQ) -> Matrix:
    a, b, c, d = q.a, q.b, q.c, q.d
    return [
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ]


def real_embedding(A: Matrix) -> Tuple[Matrix, int]:
    """(real matrix, multiplicity): each complex entry becomes a 2x2 block,
    each quaternion a 4x4 left-regular block; rationals pass through."""
    sample = A[0][0]
    if isinstance(sample, (int, Fraction)):
        return [[Fraction(x) for x in row] for row in A], 1
    if isinstance(sample, GaussQ):
        blocks = [[_embed_gauss(x) for x in row] for row in A]
        mult = 2
    elif isinstance(sample, QuatQ):
        blocks = [[_embed_quat(x) for x in row] for row in A]
        mult = 4
    else:
        raise TypeError(f"no real embedding for {type(sample)}")
    n, m = len(A), len(A[0])
    out = mat_zeros(n * mult, m * mult)
    for i in range(n):
        for j in range(m):
            for r in range(mult):
                for s in range(mult):
                    out[i * mult + r][j * mult + s] = blocks[i][j][r][s]
    return out, mult


def inertia_symmetric_rational(A: Matrix) -> Tuple[int, int, int]:
    """(p, q, z) of a symmetric rational matrix, by exact Sylvester congruence."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    for i in range(n):
        for j in range(i):
            assert M[i][j] == M[j][i], "matrix must be symmetric"
    active = list(range(n))
    p = q = z = 0
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is None:
            pair = next(
                (
                    (i, j)
                    for ai, i in enumerate(active)
                    for j in active[ai + 1 :]
                    if M[i][j] != 0
                ),
                None,
            )
            if pair is None:
                z += len(active)
                break
            i, j = pair
            # congruence e_i <- e_i + e_j makes the diagonal entry 2*M[i][j] != 0
            for t in range(n):
                M[i][t] += M[j][t]
            for t in range(n):
                M[t][i] += M[t][j]
            continue
        d = M[piv][piv]
        if d > 0:
            p += 1
        else:
            q += 1
        active.remove(piv)
        col = [M[t][piv] for t in range(n)]
        for i in active:
            if col[i] == 0:
                continue
            f = col[i] / d
            for j in active:
                M[i][j] -= f * col[j]
    return p, q, z


def inertia_hermitian(A: Matrix) -> Tuple[int, int, int]:
    """Exact inertia of a hermitian matrix over Q, Q(i) or rational quaternions."""
    if not A:
        return (0, 0, 0)
    R, mult = real_embedding(A)
    p, q, z = inertia_symmetric_rational(R)
    assert p % mult == 0 and q % mult == 0 and z % mult == 0
    return p // mult, q // mult, z // mult


def signature_hermitian(A: Matrix) -> int:
    p, q, z = inertia_hermitian(A)
    if z:
        raise ValueError("matrix is singular; signature undefined")
    return p - q


def inertia_hermitian_float(
    H: np.ndarray, tol: float = 1e-9
) -> Tuple[int, int, int]:
    """Inertia of a complex hermitian float matrix, guarded by an eigenvalue gap.

    Raises if any eigenvalue sits in the uncertainty band [tol/100, 100*tol],
    so a miscount cannot pass silently.
    """
    if H.size == 0:
        return (0, 0, 0)
    assert np.allclose(H, H.conj().T, atol=tol), "matrix must be hermitian"
    w = np.linalg.eigvalsh((H + H.conj().T) / 2)
    band = [x for x in w if tol / 100 < abs(x) < tol * 100]
    if band:
        raise ValueError(f"eigenvalues too close to the tolerance band: {band}")
    p = int((w > tol).sum())
    q = int((w < -tol).sum())
    return p, q, len(w) - p - q


# ---------------------------------------------------------------------------
# rational row spaces (spans, coordinates, nullspaces)


class RowSpace:
    """Incrementally row-reduced rational span with exact membership/coordinates."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []
        self.history: List[List[Fraction]] = []  # coordinates of rows over inserted vectors
        self._inserted = 0

    def _reduce(self, v: Sequence[Fraction]):
        v = [Fraction(x) for x in v]
        coeff = [Fraction(0)] * self._inserted
        for row, hist, piv in zip(self.rows, self.history, self.pivots):
            if v[piv] != 0:
                f = v[piv]
                v = [a - f * b for a, b in zip(v, row)]
                coeff = [a - f * b for a, b in zip(coeff, hist + [Fraction(0)] * (self._inserted - len(hist)))]
        return v, coeff

    def contains(self, v: Sequence[Fraction]) -> bool:
        red, _ = self._reduce(v)
        return all(x == 0 for x in red)

    def coordinates(self, v: Sequence[Fraction]) -> Optional[List[Fraction]]:
        """Coefficients of v over the *inserted* vectors, or None if not in span."""
        red, coeff = self._reduce(v)
        if any(x != 0 for x in red):
            return None
        return [-c for c in coeff]

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        red, coeff = self._reduce(v)
        self._inserted += 1
        piv = next((i for i, x in enumerate(red) if x != 0), None)
        if piv is None:
            return False
        inv = Fraction(1) / red[piv]
        red = [x * inv for x in red]
        hist = [c * inv for c in coeff + [Fraction(0)] * (self._inserted - 1 - len(coeff))]
        hist.append(inv)
        for i, (row, h) in enumerate(zip(self.rows, self.history)):
            if row[piv] != 0:
                f = row[piv]
                self.rows[i] = [a - f * b for a, b in zip(row, red)]
                h_pad = h + [Fraction(0)] * (len(hist) - len(h))
                self.history[i] = [a - f * b for a, b in zip(h_pad, hist)]
        self.rows.append(red)
        self.history.append(hist)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def nullspace_rational(A: Matrix) -> List[List[Fraction]]:
    """Basis of the right nullspace of a rational matrix, deterministic order."""
    if not A:
        return []
    n, m = len(A), len(A[0])
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -M[ri][fc]
        basis.append(v)
    return basis


def solve_linear_rational(A: Matrix, b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One exact solution of A x = b, or None."""
    n, m = len(A), len(A[0])
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if M[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for ri, pc in enumerate(pivots):
        x[pc] = M[ri][m]
    return x
