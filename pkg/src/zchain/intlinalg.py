"""Exact integer linear algebra on arbitrary-precision matrices.

Hermite and Smith normal forms with unimodular transforms, integer kernel
lattices, and deterministic linear solving.  All entries are Python ints, so
nothing ever overflows; all results are canonical, so repeated runs produce
identical output.  0xN and Nx0 matrices are legal throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from operator import mul


def xgcd(a, b):
    # Invariants:  x * a + y * b == g,  nx * a + ny * b == ng.
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class IntMatrix:
    """Immutable integer matrix with explicit row/column counts."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        if entries is None:
            data = tuple((0,) * cols for _ in range(rows))
        else:
            data = tuple(tuple(int(x) for x in row) for row in entries)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"expected {rows}x{cols} entries")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_cols(cls, cols, rows=None):
        cols = [list(c) for c in cols]
        if rows is None:
            if not cols:
                raise ValueError("rows required for a matrix with no columns")
            rows = len(cols[0])
        return cls(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.data))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {list(map(list, self.data))})"

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows, list(zip(*self.data)) if self.rows else [[] for _ in range(self.cols)])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in r] for r in self.data])

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return IntMatrix(self.rows, self.cols, [[k * x for x in r] for r in self.data])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        bt = list(zip(*other.data))
        return IntMatrix(
            self.rows,
            other.cols,
            [[sum(map(mul, row, col)) for col in bt] for row in self.data],
        )

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        if self.cols == 0:
            return (0,) * self.rows
        return tuple(sum(map(mul, row, v)) for row in self.data)

    def take_cols(self, indices):
        return IntMatrix(self.rows, len(indices), [[r[j] for j in indices] for r in self.data])

    def take_rows(self, indices):
        return IntMatrix(len(indices), self.cols, [self.data[i] for i in indices])

    def is_zero(self):
        return all(x == 0 for r in self.data for x in r)

    def is_diagonal(self):
        return all(x == 0 for i, r in enumerate(self.data) for j, x in enumerate(r) if i != j)


def hstack(blocks):
    blocks = list(blocks)
    if not blocks:
        raise ValueError("hstack needs at least one block")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("row mismatch in hstack")
    data = [sum((list(b.data[i]) for b in blocks), []) for i in range(rows)]
    return IntMatrix(rows, sum(b.cols for b in blocks), data)


def vstack(blocks):
    blocks = list(blocks)
    if not blocks:
        raise ValueError("vstack needs at least one block")
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("column mismatch in vstack")
    data = [row for b in blocks for row in b.data]
    return IntMatrix(sum(b.rows for b in blocks), cols, data)


def blockdiag(blocks):
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.data[i]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, out)


def kron(a, b):
    """Kronecker product: entry ((i*b.rows+k), (j*b.cols+l)) = a[i,j]*b[k,l]."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [[0] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.data[i][j]
            if x:
                for k in range(b.rows):
                    br = b.data[k]
                    orow = out[i * b.rows + k]
                    for l in range(b.cols):
                        orow[j * b.cols + l] = x * br[l]
    return IntMatrix(rows, cols, out)


def _axpy(dst, src, q):
    # dst += q * src, in place
    for j in range(len(dst)):
        dst[j] += q * src[j]


@lru_cache(maxsize=4096)
def hnf(m):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U @ m == H, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    The row lattice of H equals the row lattice of m, and H is the canonical
    basis of that lattice.
    """
    nrows, ncols = m.rows, m.cols
    H = [list(r) for r in m.data]
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # Euclid down the column until a single nonzero entry remains at row r.
        while True:
            nz = [i for i in range(r, nrows) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(H[i][c]), i))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            a = H[r][c]
            done = True
            for i in range(r + 1, nrows):
                b = H[i][c]
                if b:
                    q = b // a
                    if q:
                        _axpy(H[i], H[r], -q)
                        _axpy(U[i], U[r], -q)
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        a = H[r][c]
        for i in range(r):
            q = H[i][c] // a
            if q:
                _axpy(H[i], H[r], -q)
                _axpy(U[i], U[r], -q)
        r += 1
    return IntMatrix(nrows, ncols, H), IntMatrix(nrows, nrows, U)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form data: U @ A @ V == D with U, V unimodular."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    rank: int

    @property
    def diagonal(self):
        return tuple(self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols)))


@lru_cache(maxsize=4096)
def snf(m):
    """Smith normal form with both transforms.

    The diagonal entries are positive and each divides the next; everything
    off the diagonal is zero.
    """
    nrows, ncols = m.rows, m.cols
    D = [list(r) for r in m.data]
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_axpy(mat, j_dst, j_src, q):
        for row in mat:
            row[j_dst] += q * row[j_src]

    def col_swap(mat, j1, j2):
        for row in mat:
            row[j1], row[j2] = row[j2], row[j1]

    for t in range(min(nrows, ncols)):
        while True:
            best = None
            for i in range(t, nrows):
                Di = D[i]
                for j in range(t, ncols):
                    v = Di[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                D[t], D[bi] = D[bi], D[t]
                U[t], U[bi] = U[bi], U[t]
            if bj != t:
                col_swap(D, t, bj)
                col_swap(V, t, bj)
            a = D[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                b = D[i][t]
                if b:
                    q = b // a
                    if q:
                        _axpy(D[i], D[t], -q)
                        _axpy(U[i], U[t], -q)
                    if D[i][t]:
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, ncols):
                b = D[t][j]
                if b:
                    q = b // a
                    if q:
                        col_axpy(D, j, t, -q)
                        col_axpy(V, j, t, -q)
                    if D[t][j]:
                        dirty = True
            if not dirty:
                break
        if best is None:
            break

    n = min(nrows, ncols)
    for t in range(n):
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    rank = sum(1 for t in range(n) if D[t][t])

    # Divisibility fix: replace each bad pair (a, b) by (gcd, lcm).
    for i in range(rank):
        for j in range(i + 1, rank):
            a, b = D[i][i], D[j][j]
            if b % a:
                col_axpy(D, i, j, 1)
                col_axpy(V, i, j, 1)
                # Rows i, j now read [[a, 0], [b, b]] on columns i, j.
                g, x, y = xgcd(a, b)
                ri, rj = list(D[i]), list(D[j])
                ui, uj = list(U[i]), list(U[j])
                for k in range(ncols):
                    D[i][k] = x * ri[k] + y * rj[k]
                    D[j][k] = (-b // g) * ri[k] + (a // g) * rj[k]
                for k in range(nrows):
                    U[i][k] = x * ui[k] + y * uj[k]
                    U[j][k] = (-b // g) * ui[k] + (a // g) * uj[k]
                # Clear the remaining entry above the new lcm pivot.
                q = D[i][j] // g
                if q:
                    col_axpy(D, j, i, -q)
                    col_axpy(V, j, i, -q)

    return SnfResult(
        IntMatrix(nrows, ncols, D),
        IntMatrix(nrows, nrows, U),
        IntMatrix(ncols, ncols, V),
        rank,
    )


def row_lattice(vectors, ambient):
    """Canonical HNF row basis of the lattice spanned by the given vectors."""
    vecs = [tuple(v) for v in vectors]
    H, _ = hnf(IntMatrix(len(vecs), ambient, vecs))
    return tuple(r for r in H.data if any(r))


def column_lattice(m):
    """Canonical HNF row basis of the lattice spanned by the columns of m."""
    return row_lattice(m.columns(), m.rows)


def _pivot(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def reduce_mod_rows(v, rows):
    """Canonical representative of v modulo the lattice given by HNF rows."""
    v = list(v)
    for row in rows:
        p = _pivot(row)
        q = v[p] // row[p]
        if q:
            for j in range(p, len(v)):
                v[j] -= q * row[j]
    return tuple(v)


def lattice_contains(v, rows):
    return not any(reduce_mod_rows(v, rows))


@lru_cache(maxsize=4096)
def kernel_basis(m):
    """Columns form the canonical basis of the full kernel lattice {v : mv = 0}.

    The kernel of an integer matrix is automatically saturated; the returned
    basis is the HNF-canonical one, so it only depends on the kernel itself.
    """
    res = snf(m)
    raw = [res.V.col(j) for j in range(res.rank, m.cols)]
    rows = row_lattice(raw, m.cols)
    return IntMatrix.from_cols([list(r) for r in rows], rows=m.cols)


def solve(m, b):
    """Deterministic solution x of m @ x == b over the integers, or None.

    The result is the canonical representative of the solution coset modulo
    the kernel lattice (reduce against the HNF kernel basis), so it does not
    depend on any internal choices.
    """
    if len(b) != m.rows:
        raise ValueError("vector length mismatch")
    res = snf(m)
    c = res.U.mul_vec(b)
    y = [0] * m.cols
    n = min(m.rows, m.cols)
    for i in range(m.rows):
        d = res.D.data[i][i] if i < n else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    x = res.V.mul_vec(y)
    # kernel_basis columns are the HNF rows of the kernel lattice, in order
    K = kernel_basis(m)
    return reduce_mod_rows(x, [K.col(j) for j in range(K.cols)])


def inverse_unimodular(m):
    """Exact inverse of a unimodular square matrix."""
    if m.rows != m.cols:
        raise ValueError("not square")
    H, U = hnf(m)
    if H != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return U
