"""Smith normal form over the integers with unimodular transforms.

The diagonal comes from a pivoting elimination (pivot = entry of least
nonzero absolute value) whose matrix entries are checked against the signed
64-bit range. Transforms produced by plain elimination grow quickly, so they
are rebuilt before being returned:

* a weighted LLL reduction splits off the left and right kernels, leaving a
  nonsingular square core ``G``;
* the core is brought to Hermite form after a small unimodular mixing that
  leaves only the unavoidable non-unit pivots, and ``L`` is recomputed
  exactly from it;
* a final greedy pass trades size between ``L`` and ``R``.

Returned transforms must fit int64; if they do not, :class:`IntegerOverflow`
is raised instead of wrapping silently.
"""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import IntegerOverflow

INT64_MAX = 2**63 - 1
_OVERFLOW = "overflow; matrix out of supported range"


def _chk(v: int) -> int:
    if v > INT64_MAX or v < -INT64_MAX:
        raise IntegerOverflow(_OVERFLOW)
    return v


def _nearest_quotient(a: int, p: int) -> int:
    # quotient leaving the remainder of least absolute value
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _transpose(A, rows: int, cols: int):
    return [[A[i][j] for i in range(rows)] for j in range(cols)]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _diagonalize(A: list, r: int, c: int):
    """Eliminate in place; returns ``(diag, L, R)`` with exact (unbounded) transforms."""
    L, R = _eye(r), _eye(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [_chk(a + q * b) for a, b in zip(A[dst], A[src])]
        L[dst] = [a + q * b for a, b in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] = _chk(row[dst] + q * row[src])
        for row in R:
            row[dst] = row[dst] + q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -_nearest_quotient(A[i][t], p))
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -_nearest_quotient(A[t][j], p))
            if any(A[i][t] for i in range(t + 1, r)) or any(A[t][j] for j in range(t + 1, c)):
                continue
            bad = next((i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]

    return [A[t][t] for t in range(min(r, c))], L, R


# -- transform rebuilding ---------------------------------------------------------

def _inverse(A):
    """Exact inverse of a nonsingular square integer matrix, as Fractions."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col])
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return [row[n:] for row in M]


def _as_int(A):
    out = []
    for row in A:
        if any(x.denominator != 1 for x in row):
            raise ArithmeticError("transform is not integral")
        out.append([int(x) for x in row])
    return out


def _split_kernel(M, r: int, c: int, rank: int):
    """Small unimodular ``U`` with ``U M`` = (``rank`` independent rows, then zero rows)."""
    if rank == r:
        return _eye(r)
    weight = 1 << (r + c + max(abs(x) for row in M for x in row).bit_length())
    while True:
        rows = [[ZZ(int(i == j)) for j in range(r)] + [ZZ(weight * x) for x in M[i]]
                for i in range(r)]
        red = [[int(x) for x in row]
               for row in DomainMatrix(rows, (r, r + c), ZZ).lll(delta=QQ(99, 100)).to_list()]
        kernel = [row[:r] for row in red if not any(row[r:])]
        if len(kernel) == r - rank:
            rest = [row[:r] for row in red if any(row[r:])]
            return rest + kernel
        weight <<= 16


def _hermite(G):
    """Row Hermite form ``H`` of a nonsingular square matrix.

    ``H`` is upper triangular with positive diagonal and every entry above a
    pivot reduced into ``[0, pivot)``, so all entries are bounded by
    ``|det G|``.
    """
    k = len(G)
    H = [list(row) for row in G]
    for t in range(k):
        for i in range(t + 1, k):
            # extended-gcd step on rows t and i in column t
            a, b = H[t][t], H[i][t]
            if not b:
                continue
            g, x, y = _xgcd(a, b)
            ra, rb = H[t], H[i]
            H[t] = [x * u + y * v for u, v in zip(ra, rb)]
            H[i] = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
        if H[t][t] < 0:
            H[t] = [-x for x in H[t]]
        for i in range(t):
            q = H[i][t] // H[t][t]
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[t])]
    # reduce from the bottom up so earlier rows stay reduced
    for t in range(k - 1, -1, -1):
        for i in range(t):
            q = H[i][t] // H[t][t]
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[t])]
    return H


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _mixers(k: int, count: int = 64):
    """Deterministic sequence of small unimodular ``k x k`` matrices."""
    yield _eye(k)
    rng = random.Random(k)
    for _ in range(count):
        C = _eye(k)
        for _ in range(2 * k):
            i, j = rng.sample(range(k), 2)
            q = rng.choice((-1, 1))
            for row in C:
                row[j] += q * row[i]
        yield C


def _shrink_core(G):
    """Small ``(diag, L, R)`` for a nonsingular core with ``L G R = diag``.

    The core is mixed by a small unimodular ``C`` until the Hermite form of
    ``G C`` has as few non-unit pivots as there are non-unit invariant
    factors. Then ``U = H (G C)^-1`` has entries of the size of ``adj G``,
    and eliminating ``H`` touches only the entries above the non-unit
    pivots, which are bounded by ``|det G|``.
    """
    k = len(G)
    diag = _diagonalize([row[:] for row in G], k, k)[0]
    target = sum(1 for d in diag if d != 1)
    best = None
    for C in _mixers(k):
        GC = _matmul(G, C)
        H = _hermite(GC)
        extra = sum(1 for i in range(k) if H[i][i] != 1) - target
        if best is None or extra < best[0]:
            best = (extra, C, GC, H)
        if extra == 0:
            break
    _, C, GC, H = best
    Ginv = _inverse(GC)
    U = _as_int([[sum(a * b for a, b in zip(row, col)) for col in zip(*Ginv)] for row in H])
    diag, Lh, Rh = _diagonalize([row[:] for row in H], k, k)
    return diag, _matmul(Lh, U), _matmul(C, Rh)


def _nearest(num: int, den: int) -> int:
    return (2 * num + den) // (2 * den)


def _balance(diag, L, R, max_rounds: int = 200):
    """Greedy pairwise size reduction of both transforms, keeping ``L M R`` fixed.

    Moves: add multiples of left-kernel rows of ``L`` (or right-kernel
    columns of ``R``) anywhere; and for invariant factors ``d_i | d_j`` the
    coupled pair ``row_i(L) += q t row_j(L)``, ``col_j(R) -= q s col_i(R)``
    with ``q t d_j = q s d_i``. Each move is applied only when it lowers
    ``|L|^2 + |R|^2``.
    """
    r, c = len(L), len(R)
    k = sum(1 for d in diag if d)
    cols = [list(col) for col in zip(*R)]
    for _ in range(max_rounds):
        changed = False
        for vecs, size in ((L, r), (cols, c)):
            for j in range(k, size):
                nj = _dot(vecs[j], vecs[j])
                for i in range(size):
                    if i != j and nj:
                        q = _nearest(-_dot(vecs[i], vecs[j]), nj)
                        if q:
                            vecs[i] = [a + q * b for a, b in zip(vecs[i], vecs[j])]
                            changed = True
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                s, t = (diag[j] // diag[i], 1) if i < j else (1, diag[i] // diag[j])
                num = s * _dot(cols[j], cols[i]) - t * _dot(L[i], L[j])
                den = t * t * _dot(L[j], L[j]) + s * s * _dot(cols[i], cols[i])
                q = _nearest(num, den) if den else 0
                if q:
                    L[i] = [a + q * t * b for a, b in zip(L[i], L[j])]
                    cols[j] = [a - q * s * b for a, b in zip(cols[j], cols[i])]
                    changed = True
        if not changed:
            break
    return L, [list(row) for row in zip(*cols)] if c else R


def _block(A, n: int):
    k = len(A)
    return [list(A[i]) + [0] * (n - k) if i < k else [int(i == j) for j in range(n)]
            for i in range(n)]


def snf(M):
    """Return ``(diagonal, L, R)`` with ``L @ M @ R`` diagonal.

    ``diagonal`` has ``min(rows, cols)`` nonnegative entries forming a
    divisibility chain; ``L`` and ``R`` are unimodular int64 arrays.
    """
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        raise ValueError("snf expects a 2-d integer matrix")
    r, c = arr.shape
    A = [[_chk(int(x)) for x in row] for row in arr.tolist()]
    diag, _, _ = _diagonalize([row[:] for row in A], r, c)
    rank = sum(1 for d in diag if d)
    if rank == 0:
        L, R = _eye(r), _eye(c)
    else:
        U = _split_kernel(A, r, c, rank)
        M1 = _matmul(U[:rank], A)
        Vt = _split_kernel(_transpose(M1, rank, c), c, rank, rank)
        V = _transpose(Vt, c, c)
        G = [row[:rank] for row in _matmul(M1, V)]
        dG, Lg, Rg = _shrink_core(G)
        L = _matmul(_block(Lg, r), U)
        R = _matmul(V, _block(Rg, c))
        diag = dG + [0] * (min(r, c) - rank)
        L, R = _balance(diag, L, R)
    for row in L + R:
        for x in row:
            _chk(x)
    return [_chk(d) for d in diag], np.array(L, dtype=np.int64).reshape(r, r), \
        np.array(R, dtype=np.int64).reshape(c, c)
