"""Finitely generated abelian groups as presentations.

A group is Z^ngens modulo the column lattice of its relation matrix.  Every
element has a unique canonical coordinate vector (reduce against the HNF row
basis of the relation lattice), so equality of elements is literal equality
of canonical forms.  Homomorphisms are matrices on generators, checked at
construction to carry every source relation into the target lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionMismatch, IllDefined, InfiniteGroup, NotFree
from .intlinalg import (
    IntMatrix,
    blockdiag,
    column_lattice,
    hstack,
    inverse_unimodular,
    kernel_basis,
    kron,
    lattice_contains,
    reduce_mod_rows,
    row_lattice,
    snf,
    solve,
)


class FgAbGroup:
    """Presentation Z^ngens / columnspan(relations), with cached normal forms."""

    __slots__ = ("ngens", "relations", "rel_rows", "invariant_factors", "free_rank",
                 "_rel_snf", "_free_basis", "_hash")

    def __init__(self, ngens, relations):
        if relations.rows != ngens:
            raise DimensionMismatch(f"relations need {ngens} rows, got {relations.rows}")
        self.ngens = ngens
        self.relations = relations
        self._rel_snf = snf(relations)
        diag = [d for d in self._rel_snf.diagonal if d]
        self.invariant_factors = tuple(d for d in diag if d > 1)
        self.free_rank = ngens - self._rel_snf.rank
        self.rel_rows = column_lattice(relations)
        self._free_basis = None
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, FgAbGroup)
            and self.ngens == other.ngens
            and self.rel_rows == other.rel_rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ngens, self.rel_rows))
        return self._hash

    def __repr__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        name = " + ".join(parts) if parts else "0"
        return f"FgAbGroup({self.ngens} gens, {name})"

    def canon(self, v):
        """Canonical coordinates of the element with generator coordinates v."""
        if len(v) != self.ngens:
            raise DimensionMismatch("element length mismatch")
        return reduce_mod_rows(v, self.rel_rows)

    def contains_zero(self, v):
        return lattice_contains(v, self.rel_rows)

    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if self.free_rank:
            raise InfiniteGroup("group has positive free rank")
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def zero(self):
        return (0,) * self.ngens

    def elements(self):
        """All canonical coordinate vectors, lexicographically.  Finite groups only."""
        if self.free_rank:
            raise InfiniteGroup("cannot enumerate an infinite group")
        if self.ngens == 0:
            return [()]
        # finite: the relation HNF is square upper triangular, pivots on the diagonal
        bounds = [None] * self.ngens
        for row in self.rel_rows:
            p = next(j for j, x in enumerate(row) if x)
            bounds[p] = row[p]
        assert all(b is not None for b in bounds)
        return [v for v in itertools.product(*(range(b) for b in bounds))]

    def free_basis(self):
        """(B, C) with C @ B = id and B @ C the identity of the group.

        Columns of B are a basis of a free group; only meaningful when the
        group is free (raises NotFree otherwise).
        """
        if self.invariant_factors:
            raise NotFree(f"{self!r} has torsion")
        if self._free_basis is None:
            res = self._rel_snf
            idx = list(range(res.rank, self.ngens))
            Uinv = inverse_unimodular(res.U)
            B = Uinv.take_cols(idx)
            C = res.U.take_rows(idx)
            self._free_basis = (B, C)
        return self._free_basis


def mk_group(ngens, relations=None):
    if relations is None:
        relations = IntMatrix.zeros(ngens, 0)
    return FgAbGroup(ngens, relations)


@lru_cache(maxsize=512)
def free_group(rank):
    return mk_group(rank)


def trivial_group():
    return free_group(0)


class GroupHom:
    """Matrix on generators, validated to be well defined at construction."""

    __slots__ = ("src", "dst", "matrix")

    def __init__(self, src, dst, matrix, _checked=False):
        if matrix.rows != dst.ngens or matrix.cols != src.ngens:
            raise DimensionMismatch(
                f"hom matrix must be {dst.ngens}x{src.ngens}, got {matrix.rows}x{matrix.cols}")
        if not _checked:
            for j in range(src.relations.cols):
                img = matrix.mul_vec(src.relations.col(j))
                if not dst.contains_zero(img):
                    raise IllDefined(f"relation {j} is not carried into the target lattice")
        self.src = src
        self.dst = dst
        self.matrix = matrix

    def __repr__(self):
        return f"GroupHom({self.src!r} -> {self.dst!r})"

    def __call__(self, v):
        return self.dst.canon(self.matrix.mul_vec(v))

    def __matmul__(self, other):
        if other.dst != self.src:
            raise DimensionMismatch("homs are not composable")
        return GroupHom(other.src, self.dst, self.matrix @ other.matrix, _checked=True)

    def __add__(self, other):
        if self.src != other.src or self.dst != other.dst:
            raise DimensionMismatch("hom sum shape mismatch")
        return GroupHom(self.src, self.dst, self.matrix + other.matrix, _checked=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupHom(self.src, self.dst, -self.matrix, _checked=True)

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.src == other.src
            and self.dst == other.dst
            and (self - other).is_zero()
        )

    def __hash__(self):
        return hash((self.src, self.dst))

    def is_zero(self):
        return all(self.dst.contains_zero(self.matrix.col(j)) for j in range(self.matrix.cols))

    def is_injective(self):
        return kernel(self)[0].is_trivial()

    def is_surjective(self):
        return cokernel(self)[0].is_trivial()

    def is_iso(self):
        return self.is_injective() and self.is_surjective()


def identity_hom(g):
    return GroupHom(g, g, IntMatrix.identity(g.ngens), _checked=True)


def zero_hom(src, dst):
    return GroupHom(src, dst, IntMatrix.zeros(dst.ngens, src.ngens), _checked=True)


def mk_hom(src, dst, matrix):
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix.from_rows(matrix, cols=src.ngens)
    return GroupHom(src, dst, matrix)


def preimage_lattice(matrix, target_rel_rows):
    """Canonical column basis of {v : matrix @ v lies in the given lattice}."""
    rel_cols = [list(r) for r in target_rel_rows]
    aug = hstack([matrix, IntMatrix.from_cols(rel_cols, rows=matrix.rows)]) if rel_cols else matrix
    K = kernel_basis(aug)
    vecs = [K.col(j)[: matrix.cols] for j in range(K.cols)]
    rows = row_lattice(vecs, matrix.cols)
    return IntMatrix.from_cols([list(r) for r in rows], rows=matrix.cols)


def kernel(h):
    """Kernel subgroup with its inclusion hom."""
    P = preimage_lattice(h.matrix, h.dst.rel_rows)
    rels = []
    for j in range(h.src.relations.cols):
        x = solve(P, h.src.relations.col(j))
        assert x is not None, "source relations must lie in the kernel lattice"
        rels.append(list(x))
    K = mk_group(P.cols, IntMatrix.from_cols(rels, rows=P.cols))
    incl = GroupHom(K, h.src, P, _checked=True)
    return K, incl


def cokernel(h):
    """Cokernel with its projection hom: target relations plus the image."""
    Q = mk_group(h.dst.ngens, hstack([h.dst.relations, h.matrix]))
    proj = GroupHom(h.dst, Q, IntMatrix.identity(h.dst.ngens), _checked=True)
    return Q, proj


def is_free(g):
    return not g.invariant_factors


def is_isomorphic(g, h):
    return g.invariant_factors == h.invariant_factors and g.free_rank == h.free_rank


class DirectSum:
    """Ordered direct sum of presented groups with labelled coordinates."""

    def __init__(self, parts):
        self.parts = list(parts)
        self.offsets = []
        off = 0
        for p in self.parts:
            self.offsets.append(off)
            off += p.ngens
        self.group = mk_group(off, blockdiag([p.relations for p in self.parts]))

    def inclusion(self, i):
        part = self.parts[i]
        off = self.offsets[i]
        rows = [[0] * part.ngens for _ in range(self.group.ngens)]
        for j in range(part.ngens):
            rows[off + j][j] = 1
        return GroupHom(part, self.group, IntMatrix(self.group.ngens, part.ngens, rows), _checked=True)

    def projection(self, i):
        part = self.parts[i]
        off = self.offsets[i]
        rows = [[0] * self.group.ngens for _ in range(part.ngens)]
        for j in range(part.ngens):
            rows[j][off + j] = 1
        return GroupHom(self.group, part, IntMatrix(part.ngens, self.group.ngens, rows), _checked=True)

    def block_matrix(self, source, blocks):
        """Assemble a matrix (self.group <- source.group) from per-part blocks.

        blocks maps (target_index, source_index) to an IntMatrix; missing
        blocks are zero.
        """
        out = [[0] * source.group.ngens for _ in range(self.group.ngens)]
        for (ti, si), m in blocks.items():
            tp, sp = self.parts[ti], source.parts[si]
            if m.rows != tp.ngens or m.cols != sp.ngens:
                raise DimensionMismatch(f"block ({ti},{si}) has wrong shape")
            r0, c0 = self.offsets[ti], source.offsets[si]
            for i in range(m.rows):
                row = out[r0 + i]
                for j in range(m.cols):
                    row[c0 + j] = m.data[i][j]
        return IntMatrix(self.group.ngens, source.group.ngens, out)


def direct_sum(parts):
    return DirectSum(parts)


def ext1(c, k):
    """Ext^1(c, k) from the invariant factors of c: additive, Z/n contributes k/nk."""
    parts = []
    for n in c.invariant_factors:
        parts.append(mk_group(k.ngens, hstack([k.relations, IntMatrix.identity(k.ngens).scale(n)])))
    if not parts:
        return trivial_group()
    return DirectSum(parts).group


def tensor_group(g, h):
    """Tensor product presented on generator pairs (i, j) -> i * h.ngens + j."""
    gg, hh = g.ngens, h.ngens
    cols = []
    for j in range(g.relations.cols):
        r = g.relations.col(j)
        for jh in range(hh):
            col = [0] * (gg * hh)
            for i in range(gg):
                col[i * hh + jh] = r[i]
            cols.append(col)
    for i in range(gg):
        for j in range(h.relations.cols):
            s = h.relations.col(j)
            col = [0] * (gg * hh)
            for jh in range(hh):
                col[i * hh + jh] = s[jh]
            cols.append(col)
    return mk_group(gg * hh, IntMatrix.from_cols(cols, rows=gg * hh))


def tensor_hom(u, v, src=None, dst=None):
    if src is None:
        src = tensor_group(u.src, v.src)
    if dst is None:
        dst = tensor_group(u.dst, v.dst)
    return GroupHom(src, dst, kron(u.matrix, v.matrix), _checked=True)


def preimage(h, target):
    """Deterministic v with h(v) == target in the target group, or None."""
    target = tuple(target)
    if len(target) != h.dst.ngens:
        raise DimensionMismatch("target length mismatch")
    aug = hstack([h.matrix, h.dst.relations]) if h.dst.relations.cols else h.matrix
    x = solve(aug, target)
    if x is None:
        return None
    return tuple(x[: h.src.ngens])


def factor_through(incl, h):
    """t with incl o t == h, where the image of h lies in the image of incl."""
    cols = []
    for j in range(h.src.ngens):
        x = preimage(incl, h.matrix.col(j))
        if x is None:
            raise IllDefined("map does not factor through the inclusion")
        cols.append(list(x))
    m = IntMatrix.from_cols(cols, rows=incl.src.ngens)
    return GroupHom(h.src, incl.src, m)


def lift_free_hom(q, g):
    """h with q o h == g for a free source, via basis-wise deterministic preimages."""
    B, C = g.src.free_basis()
    cols = []
    for j in range(B.cols):
        target = g(B.col(j))
        x = preimage(q, target)
        if x is None:
            raise IllDefined("map does not lift through the surjection")
        cols.append(list(x))
    P = IntMatrix.from_cols(cols, rows=q.src.ngens) if cols else IntMatrix.zeros(q.src.ngens, 0)
    return GroupHom(g.src, q.src, P @ C, _checked=True)


@dataclass(frozen=True)
class FreeBasedGroup:
    """Free abelian group with an explicit ordered basis of opaque labels."""

    labels: tuple

    @property
    def rank(self):
        return len(self.labels)

    @property
    def group(self):
        return free_group(len(self.labels))

    def __repr__(self):
        return f"FreeBasedGroup(rank {self.rank})"
