"""Exact sparse Gaussian elimination over a cyclotomic field.

Vectors are dicts ``column -> Cyc`` with no zero entries.  Pivot columns are
chosen in increasing column order, so results do not depend on input order
beyond the order of the rows themselves.
"""
from __future__ import annotations

from ..exactnum import Cyc


def _axpy(target: dict, row: dict, factor):
    """target -= factor * row, in place."""
    for c, v in row.items():
        t = target.get(c)
        if t is None:
            target[c] = -(factor * v)
        else:
            t = t - factor * v
            if t:
                target[c] = t
            else:
                del target[c]


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``rows`` maps pivot column -> row (normalized so the pivot entry is 1).
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        changed = True
        while changed:
            changed = False
            for c in sorted(v):
                row = self.rows.get(c)
                if row is not None:
                    _axpy(v, row, v[c])
                    changed = True
                    break
        return v

    def reduce_full(self, vec: dict) -> dict:
        # same as reduce but walks columns once in sorted order; rows are fully
        # reduced against each other so one pass suffices.
        v = {c: x for c, x in vec.items() if x}
        for c in sorted(self.rows):
            f = v.get(c)
            if f is not None:
                _axpy(v, self.rows[c], f)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec; return True if it was independent of the current rows."""
        v = self.reduce_full(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for q, row in self.rows.items():
            f = row.get(p)
            if f is not None:
                _axpy(row, v, f)
        self.rows[p] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce_full(vec)

    def pivots(self):
        return sorted(self.rows)


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(conditions, ncols: int, N: int) -> list[dict]:
    """Basis of {c in K^ncols : sum_j cond[j] c_j = 0 for every condition}.

    Free columns are taken in increasing order; each basis vector has a 1 in
    its free column and zeros in the other free columns.
    """
    e = Echelon()
    for row in conditions:
        if row:
            e.add(row)
    pivots = set(e.rows)
    one = Cyc(N, 1)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: one}
        for p, row in e.rows.items():
            x = row.get(f)
            if x is not None:
                vec[p] = -x
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols: int, N: int):
    """Solve A c = rhs for sparse rows A; returns (particular solution, kernel basis) or None."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b if isinstance(b, Cyc) else Cyc(N, b)
        if row:
            aug.append(row)
    e = Echelon()
    for row in aug:
        e.add(row)
    if ncols in e.rows:
        return None
    sol = {}
    for p, row in e.rows.items():
        b = row.get(ncols)
        if b:
            sol[p] = b
    return sol, kernel([r for r in rows if r], ncols, N)


def matrix_inverse(M, N: int):
    """Inverse of a square matrix given as a list of lists of Cyc."""
    n = len(M)
    A = [[M[i][j] for j in range(n)] + [Cyc(N, int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def matmul(A, B, N: int):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = None
            for t in range(m):
                a = A[i][t]
                if a:
                    b = B[t][j]
                    if b:
                        s = a * b if s is None else s + a * b
            row.append(s if s is not None else Cyc(N, 0))
        out.append(row)
    return out


def matrix_rank(M) -> int:
    return rank({j: x for j, x in enumerate(row) if x} for row in M)
