"""Exact integer homology via Smith normal form, plus bounding tests.

All arithmetic is over arbitrary-precision Python ints; no modular shortcuts,
so torsion is exact.  Null-homology tests return an explicit integer witness
chain whenever the class vanishes.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .complexes import Chain, Complex, boundary, boundary_matrix
from .errors import InvalidInputError, PreconditionError

Matrix = List[List[int]]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    nb = len(B[0])
    out = [[0] * nb for _ in A]
    for i, row in enumerate(A):
        oi = out[i]
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(nb):
                    oi[j] += a * bk[j]
    return out


def _det(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SNFResult:
    """U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> List[int]:
        r = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(r)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def check(self, A) -> bool:
        A = [[int(x) for x in row] for row in A]
        return (_mat_mul(_mat_mul(self.U, A), self.V) == self.D
                and abs(_det(self.U)) == 1 and abs(_det(self.V)) == 1)


def _swap_rows(D: Matrix, U: Matrix, a: int, b: int) -> None:
    D[a], D[b] = D[b], D[a]
    U[a], U[b] = U[b], U[a]


def _swap_cols(D: Matrix, V: Matrix, a: int, b: int) -> None:
    for row in D:
        row[a], row[b] = row[b], row[a]
    for row in V:
        row[a], row[b] = row[b], row[a]


def _add_row(D: Matrix, U: Matrix, dst: int, src: int, q: int) -> None:
    Dd, Ds = D[dst], D[src]
    for j in range(len(Dd)):
        Dd[j] += q * Ds[j]
    Ud, Us = U[dst], U[src]
    for j in range(len(Ud)):
        Ud[j] += q * Us[j]


def _add_col(D: Matrix, V: Matrix, dst: int, src: int, q: int) -> None:
    for row in D:
        row[dst] += q * row[src]
    for row in V:
        row[dst] += q * row[src]


def smith_normal_form(A) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivots on the smallest nonzero entry to limit coefficient growth.  Total
    on any finite integer matrix, including zero-sized ones.
    """
    D = [[int(x) for x in row] for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the trailing block becomes the pivot
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
        if piv is None:
            break
        _swap_rows(D, U, t, piv[0])
        _swap_cols(D, V, t, piv[1])

        while True:
            # clear column t; a nonzero remainder becomes the smaller pivot
            restart = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    _add_row(D, U, i, t, -q)
                    if D[i][t]:
                        _swap_rows(D, U, t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    _add_col(D, V, j, t, -q)
                    if D[t][j]:
                        _swap_cols(D, V, t, j)
                        restart = True
                        break
            if restart:
                continue
            # enforce divisibility of the trailing block by the pivot
            fix = None
            p = D[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            _add_row(D, U, t, fix, 1)
        t += 1

    for i in range(min(m, n)):
        if D[i][i] < 0:
            for j in range(n):
                D[i][j] = -D[i][j]
            for j in range(m):
                U[i][j] = -U[i][j]
    return SNFResult(U=U, D=D, V=V)


def _snf_diagonal(M: np.ndarray) -> List[int]:
    """Invariant factors of an integer matrix, without the transforms."""
    nrows, ncols = M.shape
    cols: Dict[int, Dict[int, int]] = {}
    for j in range(ncols):
        nz = np.nonzero(M[:, j])[0]
        if len(nz):
            cols[j] = {int(i): int(M[i, j]) for i in nz}
    return _snf_diagonal_sparse(cols)


def _snf_diagonal_sparse(cols: Dict[int, Dict[int, int]]) -> List[int]:
    """Invariant factors from sparse dict-of-dict columns.

    Elimination prefers unit pivots with the least fill.  Returns the
    nonzero diagonal as a divisibility chain.
    """
    cols = {j: dict(col) for j, col in cols.items() if col}
    rows: Dict[int, set] = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)

    # unit-entry candidates in a lazy heap keyed by a fill estimate; entries
    # are re-validated on pop, so stale scores are harmless
    heap: List[Tuple[int, int, int]] = []
    for j, col in cols.items():
        cl = len(col) - 1
        for i, v in col.items():
            if abs(v) == 1:
                heap.append(((len(rows[i]) - 1) * cl, i, j))
    heapq.heapify(heap)

    def push_unit(i: int, j: int) -> None:
        fill = (len(rows[i]) - 1) * (len(cols[j]) - 1)
        heapq.heappush(heap, (fill, i, j))

    diag: List[int] = []
    while cols:
        i0 = j0 = None
        while heap:
            s, i, j = heapq.heappop(heap)
            col = cols.get(j)
            if not col or abs(col.get(i, 0)) != 1:
                continue
            now = (len(rows[i]) - 1) * (len(col) - 1)
            if now > s:
                heapq.heappush(heap, (now, i, j))
                continue
            i0, j0 = i, j
            break
        if i0 is None:
            # no unit entries left: take the smallest magnitude, which
            # guarantees Euclidean progress on this row/column
            best = None
            for j, col in cols.items():
                cl = len(col) - 1
                for i, v in col.items():
                    key = (abs(v), (len(rows[i]) - 1) * cl)
                    if best is None or key < best[0]:
                        best = (key, i, j)
            if best is None:
                break
            _, i0, j0 = best
        p = cols[j0][i0]

        # eliminate pivot row across other columns (column ops)
        for j in list(rows[i0]):
            if j == j0:
                continue
            a = cols[j].get(i0, 0)
            if a == 0:
                continue
            q, r = divmod(a, p)
            if q:
                colj = cols[j]
                col0 = cols[j0]
                for i, v in col0.items():
                    nv = colj.get(i, 0) - q * v
                    if nv:
                        colj[i] = nv
                        rows.setdefault(i, set()).add(j)
                        if abs(nv) == 1:
                            push_unit(i, j)
                    elif i in colj:
                        del colj[i]
                        rows[i].discard(j)
                if not colj:
                    del cols[j]
        # if remainders survive the pivot stays non-unit; handle by swapping
        # a remainder entry into pivot position and repeating
        rem = [j for j in rows.get(i0, set()) if j != j0 and cols[j].get(i0, 0)]
        if rem:
            continue  # pivot choice next round will see the smaller remainder
        # eliminate pivot column down the rows (row ops)
        col0 = cols[j0]
        targets = [i for i in col0 if i != i0]
        pending = False
        for i in targets:
            b = col0[i]
            q, r = divmod(b, p)
            if q:
                for j in list(rows[i0]):
                    v0 = cols[j].get(i0, 0)
                    if not v0:
                        continue
                    nv = cols[j].get(i, 0) - q * v0
                    if nv:
                        cols[j][i] = nv
                        rows.setdefault(i, set()).add(j)
                        if abs(nv) == 1:
                            push_unit(i, j)
                    elif i in cols[j]:
                        del cols[j][i]
                        rows[i].discard(j)
            if r:
                pending = True
        if pending:
            continue
        # pivot row/column clean: retire it
        diag.append(abs(p))
        del cols[j0]
        rows[i0].discard(j0)
        for j in list(rows.get(i0, set())):
            # row i0 should be clean now
            if cols.get(j, {}).get(i0):
                raise AssertionError("pivot row not cleared")
        rows.pop(i0, None)
        # purge empty columns
        for j in [j for j, c in cols.items() if not c]:
            del cols[j]

    # enforce the divisibility chain on the multiset of invariants
    diag = [d for d in diag if d]
    changed = True
    while changed:
        changed = False
        for a in range(len(diag)):
            for b in range(a + 1, len(diag)):
                g = math.gcd(diag[a], diag[b])
                l = diag[a] * diag[b] // g if g else 0
                if (g, l) != (diag[a], diag[b]):
                    diag[a], diag[b] = g, l
                    changed = True
    return sorted(diag)


@dataclass(frozen=True)
class HomologyGroup:
    """Rank and torsion coefficients of H_k over the integers."""

    k: int
    rank: int
    torsion: Tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __repr__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return f"H_{self.k} = " + (" + ".join(parts) if parts else "0")


def _components(K: Complex) -> List[int]:
    """Union-find component label per vertex of the 1-skeleton."""
    n = K.n_simplices(0)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b) in K.simplices(1):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return [find(i) for i in range(n)]


def homology_group(K: Complex, k: int) -> HomologyGroup:
    """H_k(K, Z) as rank plus torsion, computed exactly and cached."""
    if not (0 <= k <= K.dim):
        raise InvalidInputError(f"homology dimension {k} out of range 0..{K.dim}")
    key = ("homology", k)
    if key in K.cache:
        return K.cache[key]

    nk = K.n_simplices(k)
    if k == 0:
        labels = _components(K)
        rank = len(set(labels))
        result = HomologyGroup(k=0, rank=rank, torsion=())
    else:
        rank_dk = 0
        if nk:
            dk = boundary_matrix(K, k)
            rank_dk = len(_snf_diagonal(dk))
        if k + 1 <= K.dim and K.n_simplices(k + 1):
            diag = _snf_diagonal(boundary_matrix(K, k + 1))
        else:
            diag = []
        rank_dk1 = len(diag)
        rank = (nk - rank_dk) - rank_dk1
        torsion = tuple(d for d in diag if d > 1)
        result = HomologyGroup(k=k, rank=rank, torsion=torsion)
    K.cache[key] = result
    return result


def is_cycle(z: Chain) -> bool:
    return boundary(z).is_zero()


def _solve_zero_cycle(z: Chain) -> Tuple[bool, Optional[Chain]]:
    """Bounding test for 0-cycles via components and explicit edge paths."""
    K = z.complex
    labels = _components(K)
    totals: Dict[int, int] = {}
    for i, c in z.coeffs.items():
        v = K.simplex(0, i)[0]
        totals[labels[v]] = totals.get(labels[v], 0) + c
    if any(totals.values()):
        return False, None

    # BFS forest; witness is a sum of tree paths, one per charged vertex
    n = K.n_simplices(0)
    pred: List[Optional[Tuple[int, int]]] = [None] * n  # vertex -> (parent, edge idx)
    order: List[int] = []
    seen = [False] * n
    adj: Dict[int, List[Tuple[int, int]]] = {}
    for e, (a, b) in enumerate(K.simplices(1)):
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for (w, e) in adj.get(u, ()):
                if not seen[w]:
                    seen[w] = True
                    pred[w] = (u, e)
                    stack.append(w)
    coeffs: Dict[int, int] = {}
    for i, c in z.coeffs.items():
        v = K.simplex(0, i)[0]
        while pred[v] is not None:
            parent, e = pred[v]
            a, _b = K.simplex(1, e)
            # oriented edge [a,b] has boundary b - a; walking v <- parent
            sgn = 1 if a == parent else -1
            coeffs[e] = coeffs.get(e, 0) + sgn * c
            v = parent
    witness = Chain(K, 1, coeffs)
    return True, witness


def is_null_homologous(z: Chain, K: Optional[Complex] = None
                       ) -> Tuple[bool, Optional[Chain]]:
    """Decide [z] = 0 in H_k(K, Z); on success return x with boundary(x) = z.

    The witness solve goes through the Smith normal form of the next boundary
    matrix, so the answer is exact over the integers (torsion included).
    """
    K = K or z.complex
    if K is not z.complex:
        raise PreconditionError("chain does not live in the given complex")
    if not is_cycle(z):
        raise PreconditionError("is_null_homologous requires a cycle")
    k = z.dim
    if z.is_zero():
        return True, Chain(K, k + 1, {})
    if k == 0:
        return _solve_zero_cycle(z)
    if k + 1 > K.dim or not K.n_simplices(k + 1):
        return False, None

    key = ("snf_full", k + 1)
    if key in K.cache:
        snf = K.cache[key]
    else:
        snf = smith_normal_form(boundary_matrix(K, k + 1))
        K.cache[key] = snf

    m = K.n_simplices(k)
    n = K.n_simplices(k + 1)
    # rhs in the transformed basis: w = U z
    w = [0] * m
    for i in range(m):
        Ui = snf.U[i]
        acc = 0
        for j, c in z.coeffs.items():
            acc += Ui[j] * c
        w[i] = acc
    r = min(m, n)
    y = [0] * n
    for i in range(m):
        d = snf.D[i][i] if i < r else 0
        if d:
            q, rem = divmod(w[i], d)
            if rem:
                return False, None
            y[i] = q
        elif w[i]:
            return False, None
    coeffs: Dict[int, int] = {}
    for j in range(n):
        Vr = snf.V[j]
        acc = 0
        for i in range(r):
            if y[i]:
                acc += Vr[i] * y[i]
        if acc:
            coeffs[j] = acc
    return True, Chain(K, k + 1, coeffs)
