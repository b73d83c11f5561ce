"""Exact linear algebra: Gaussian elimination over fields, Smith normal
form over Z and over F[x] (F = Q or F_p), minimal polynomials.

Matrices are lists of rows.  Vectors are column vectors: A maps x to A@x,
so `kernel_basis` solves A x = 0 and `image_basis` spans the column space.
Empty (0-row or 0-column) matrices are legal; pass `ncols` explicitly when
there are no rows to infer it from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorint
from .poly import (
    QQ,
    PrimeField,
    gcd_over_field,
    pdeg,
    pdivmod,
    pmod,
    pmonic,
    pmul,
    pnormalize,
    psub,
)


def _shape(rows, ncols):
    if rows:
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
        if ncols is not None and ncols != n:
            raise ValueError("ncols inconsistent with row length")
        return len(rows), n
    if ncols is None:
        raise ValueError("ncols required for a matrix with no rows")
    return 0, ncols


def identity_matrix(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_mul(F, A, B):
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in mat_mul")
    inner = len(B)
    nc = len(B[0]) if B else 0
    out = []
    for row in A:
        orow = [F.zero] * nc
        for k in range(inner):
            a = row[k]
            if a == F.zero:
                continue
            brow = B[k]
            for j in range(nc):
                orow[j] = F.add(orow[j], F.mul(a, brow[j]))
        out.append(orow)
    return out


def mat_sub(F, A, B):
    if len(A) != len(B) or (A and len(A[0]) != len(B[0])):
        raise ValueError("dimension mismatch in mat_sub")
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_apply(F, A, v):
    if A and len(A[0]) != len(v):
        raise ValueError("dimension mismatch in mat_apply")
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def mat_from_int(F, A):
    return [[F.from_int(a) for a in row] for row in A]


def poly_of_matrix(F, f, A):
    """f(A) for a square matrix A."""
    n = len(A)
    out = [[F.zero] * n for _ in range(n)]
    power = identity_matrix(F, n)
    for i, c in enumerate(f):
        if c != F.zero:
            for r in range(n):
                for s in range(n):
                    out[r][s] = F.add(out[r][s], F.mul(c, power[r][s]))
        if i < len(f) - 1:
            power = mat_mul(F, power, A)
    return out


# -- Gaussian elimination -----------------------------------------------------


def rref(F, rows, ncols=None):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m, n = _shape(rows, ncols)
    R = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c] != F.zero), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != F.zero:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(F, rows, ncols=None):
    return len(rref(F, rows, ncols)[1])


def kernel_basis(F, rows, ncols=None):
    """Basis of {x : A x = 0} as a list of length-ncols vectors."""
    m, n = _shape(rows, ncols)
    R, pivots = rref(F, rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * n
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(v)
    return basis


def image_basis(F, rows, ncols=None):
    """Basis of the column space, in reduced echelon coordinates."""
    m, n = _shape(rows, ncols)
    cols = [[rows[i][j] for i in range(m)] for j in range(n)]
    R, pivots = rref(F, cols, m)
    return [R[i] for i in range(len(pivots))]


def row_space_basis(F, rows, ncols=None):
    R, pivots = rref(F, rows, ncols)
    return [R[i] for i in range(len(pivots))]


def solve(F, rows, b, ncols=None):
    """One solution of A x = b, or None if inconsistent."""
    m, n = _shape(rows, ncols)
    if len(b) != m:
        raise ValueError("dimension mismatch in solve")
    aug = [list(r) + [b[i]] for i, r in enumerate(rows)]
    R, pivots = rref(F, aug, n + 1)
    if n in pivots:
        return None
    x = [F.zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return x


def subspace_sum(F, basis_a, basis_b, ambient_dim):
    return row_space_basis(F, list(basis_a) + list(basis_b), ambient_dim)


def subspace_intersection(F, basis_a, basis_b, ambient_dim):
    """Intersection via the kernel of the stacked coefficient matrix."""
    if not basis_a or not basis_b:
        return []
    cols = [list(v) for v in basis_a] + [[F.neg(x) for x in v] for v in basis_b]
    stacked = [[cols[j][i] for j in range(len(cols))] for i in range(ambient_dim)]
    out = []
    for coeffs in kernel_basis(F, stacked, len(cols)):
        v = [F.zero] * ambient_dim
        for c, vec in zip(coeffs[: len(basis_a)], basis_a):
            for i in range(ambient_dim):
                v[i] = F.add(v[i], F.mul(c, vec[i]))
        out.append(v)
    return row_space_basis(F, out, ambient_dim)


def min_poly_of_vector(F, A, v):
    """Monic minimal g with g(A) v = 0, by Krylov iteration."""
    n = len(A)
    krylov = []  # rows are v, Av, A^2 v, ...
    cur = list(v)
    while True:
        # is cur in the span of krylov?
        coeffs = solve(F, [[krylov[j][i] for j in range(len(krylov))] for i in range(n)], cur, len(krylov))
        if coeffs is not None:
            return pnormalize([F.neg(c) for c in coeffs] + [F.one])
        krylov.append(cur)
        cur = mat_apply(F, A, cur)


def min_poly_of_matrix(F, A):
    """Monic minimal polynomial of a square matrix (lcm of vector min polys)."""
    n = len(A)
    m = [F.one]
    for i in range(n):
        e = [F.zero] * n
        e[i] = F.one
        g = min_poly_of_vector(F, A, e)
        m = pmonic(F, pdivmod(F, pmul(F, m, g), gcd_over_field(F, m, g))[0])
        if pdeg(m) == n:
            break
    return m


# -- Smith normal form --------------------------------------------------------


@dataclass(frozen=True)
class SmithResult:
    """Nonzero invariant factors d_1 | d_2 | ... (units included)."""

    diagonal: tuple
    rank: int
    bad_primes: frozenset = frozenset()


def smith_normal_form_int(rows, ncols=None) -> SmithResult:
    """Integer SNF by row/column reduction with least-absolute-value pivoting."""
    m, n = _shape(rows, ncols)
    A = [[int(x) for x in r] for r in rows]
    diag = []
    top = 0
    while top < min(m, n):
        # locate least-absolute-value nonzero entry in the trailing block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[top], A[bi] = A[bi], A[top]
        for row in A:
            row[top], row[bj] = row[bj], row[top]
        p = A[top][top]
        dirty = False
        for i in range(top + 1, m):
            q = A[i][top] // p
            if q:
                for j in range(top, n):
                    A[i][j] -= q * A[top][j]
            if A[i][top]:
                dirty = True
        for j in range(top + 1, n):
            q = A[top][j] // p
            if q:
                for i in range(top, m):
                    A[i][j] -= q * A[i][top]
            if A[top][j]:
                dirty = True
        if dirty:
            continue
        diag.append(abs(p))
        top += 1
    # enforce the divisibility chain by gcd/lcm pair replacement
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            if diag[i + 1] % diag[i]:
                g = math.gcd(diag[i], diag[i + 1])
                diag[i], diag[i + 1] = g, diag[i] * diag[i + 1] // g
                changed = True
    return SmithResult(diagonal=tuple(diag), rank=len(diag))


def smith_normal_form_poly(F, rows, ncols=None) -> SmithResult:
    """SNF over F[x], F = Q or F_p.  Entries are coefficient lists.

    Over Q the result carries a bad-prime ledger: every prime dividing a
    numerator or denominator of a pivot's leading coefficient, a cleared
    denominator, or the leading coefficient of a final diagonal entry.  Off
    this ledger the mod-p reduction of the invariant factors equals the SNF
    of the entrywise reduction.
    """
    m, n = _shape(rows, ncols)
    A = [[pnormalize(list(e)) for e in r] for r in rows]
    over_q = not isinstance(F, PrimeField)
    logged: set[int] = set()

    def log_scalar(c):
        if over_q:
            q = Fraction(c)
            for v in (abs(q.numerator), q.denominator):
                if v > 1:
                    logged.add(v)

    if over_q:
        A = [[[Fraction(c) for c in e] for e in r] for r in A]
        for r in A:
            for e in r:
                for c in e:
                    if c.denominator > 1:
                        logged.add(c.denominator)

    diag = []
    top = 0
    while top < min(m, n):
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j] and (best is None or pdeg(A[i][j]) < pdeg(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[top], A[bi] = A[bi], A[top]
        for row in A:
            row[top], row[bj] = row[bj], row[top]
        piv = A[top][top]
        log_scalar(piv[-1])
        dirty = False
        for i in range(top + 1, m):
            if A[i][top]:
                q, r = pdivmod(F, A[i][top], piv)
                for j in range(top, n):
                    A[i][j] = psub(F, A[i][j], pmul(F, q, A[top][j]))
                if over_q:
                    for c in (x for e in A[i][top:] for x in e):
                        if c.denominator > 1:
                            logged.add(c.denominator)
                if A[i][top]:
                    dirty = True
        for j in range(top + 1, n):
            if A[top][j]:
                q, r = pdivmod(F, A[top][j], piv)
                for i in range(top, m):
                    A[i][j] = psub(F, A[i][j], pmul(F, q, A[i][top]))
                if over_q:
                    for c in (x for i2 in range(top, m) for x in A[i2][j]):
                        if c.denominator > 1:
                            logged.add(c.denominator)
                if A[top][j]:
                    dirty = True
        if dirty:
            continue
        log_scalar(piv[-1])
        diag.append(pmonic(F, piv))
        top += 1

    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            if pmod(F, diag[i + 1], diag[i]):
                g = gcd_over_field(F, diag[i], diag[i + 1])
                lcm = pmonic(F, pdivmod(F, pmul(F, diag[i], diag[i + 1]), g)[0])
                diag[i], diag[i + 1] = g, lcm
                changed = True

    bad: set[int] = set()
    for v in logged:
        bad.update(factorint(v))
    return SmithResult(
        diagonal=tuple(tuple(d) for d in diag),
        rank=len(diag),
        bad_primes=frozenset(bad),
    )


def x_minus_matrix(F, A):
    """The characteristic matrix xI - A as a PolyMatrix."""
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = F.neg(F.from_int(A[i][j]) if isinstance(A[i][j], int) else A[i][j])
            row.append(pnormalize([c, F.one] if i == j else [c]))
        out.append(row)
    return out
