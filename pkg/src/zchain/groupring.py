"""Group-ring functors on finite abelian groups.

For finite A, the group ring Z[A] is free on the elements of A, with the
augmentation eps([a]) = 1 and the evaluation theta(sum n_i [a_i]) =
sum n_i a_i.  The augmentation ideal I(A) = ker(eps) is free on the elements
[a] - [0] for nonzero a, and I^2(A) = ker(theta restricted to I(A)) is a
finite-index free sublattice.  Neither functor is additive, but both send
zero maps to zero maps, which is all the graded constructions need.

Bases are fixed once and for all: group elements are enumerated in
lexicographic order of their canonical coordinates, and the I^2 basis is the
HNF-canonical basis of the kernel lattice, so every matrix produced here is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfiniteGroup, RankCapExceeded
from .abelian import (
    FgAbGroup,
    FreeBasedGroup,
    GroupHom,
    free_group,
    mk_hom,
    preimage_lattice,
    is_isomorphic,
    mk_group,
)
from .intlinalg import IntMatrix, solve


def _label(coords):
    return "[" + ",".join(map(str, coords)) + "]"


@dataclass
class AugmentationData:
    """Z[A] with its augmentation and evaluation maps."""

    base: FgAbGroup
    za_basis: FreeBasedGroup          # one label per element of A, zero first
    elements: tuple                   # canonical coordinates, lex order
    epsilon: GroupHom                 # Z[A] -> Z, every basis element to 1
    theta: GroupHom                   # Z[A] -> A, [a] -> a


@dataclass
class IGroup:
    """The augmentation ideal I(A), free on [a]-[0] for nonzero a."""

    base: FgAbGroup
    free: FreeBasedGroup
    nonzero_elements: tuple
    index: dict                       # canonical coords -> basis position
    theta_restricted: GroupHom        # I(A) -> A
    inclusion_in_za: IntMatrix        # coordinates of [a]-[0] inside Z[A]

    @property
    def rank(self):
        return self.free.rank


@dataclass
class I2Group:
    """I^2(A) = ker(theta: I(A) -> A) with its basis inside the I basis."""

    base: FgAbGroup
    free: FreeBasedGroup
    inclusion_matrix: IntMatrix       # I coordinates of each I^2 basis vector

    @property
    def rank(self):
        return self.free.rank


def _require_finite(a, max_rank=None):
    if a.free_rank:
        raise InfiniteGroup("group-ring constructions need a finite group")
    if max_rank is not None and a.order() - 1 > max_rank:
        raise RankCapExceeded(
            f"materialized rank {a.order() - 1} exceeds the cap {max_rank}")


def augmentation_data(a, max_rank=None):
    _require_finite(a, max_rank)
    elements = tuple(a.elements())
    labels = tuple(_label(e) for e in elements)
    za = FreeBasedGroup(labels)
    eps = mk_hom(za.group, free_group(1), IntMatrix(1, len(elements), [[1] * len(elements)]))
    theta = mk_hom(za.group, a,
                   IntMatrix.from_cols([list(e) for e in elements], rows=a.ngens))
    return AugmentationData(a, za, elements, eps, theta)


def build_I(a, max_rank=None):
    """I(A) with basis {[a]-[0]} over the nonzero elements in lex order."""
    _require_finite(a, max_rank)
    elements = tuple(a.elements())
    zero = elements[0]
    assert zero == a.zero()
    nonzero = tuple(e for e in elements if e != zero)
    labels = tuple(f"{_label(e)}-{_label(zero)}" for e in nonzero)
    free = FreeBasedGroup(labels)
    theta = mk_hom(free.group, a,
                   IntMatrix.from_cols([list(e) for e in nonzero], rows=a.ngens))
    incl_cols = []
    pos = {e: i for i, e in enumerate(elements)}
    for e in nonzero:
        col = [0] * len(elements)
        col[pos[e]] = 1
        col[pos[zero]] = -1
        incl_cols.append(col)
    incl = (IntMatrix.from_cols(incl_cols, rows=len(elements))
            if incl_cols else IntMatrix.zeros(len(elements), 0))
    return IGroup(
        base=a,
        free=free,
        nonzero_elements=nonzero,
        index={e: i for i, e in enumerate(nonzero)},
        theta_restricted=theta,
        inclusion_in_za=incl,
    )


def build_I2(a, max_rank=None, ig=None):
    """I^2(A) as the canonical kernel lattice of theta on I(A)."""
    if ig is None:
        ig = build_I(a, max_rank)
    lat = preimage_lattice(ig.theta_restricted.matrix, a.rel_rows)
    labels = tuple(f"k{j}" for j in range(lat.cols))
    i2 = I2Group(base=a, free=FreeBasedGroup(labels), inclusion_matrix=lat)
    # the quotient I/I^2 recovers the group itself
    q = mk_group(ig.rank, lat)
    assert is_isomorphic(q, a), "I/I^2 must be isomorphic to the base group"
    return i2


def I_map(f, i_src=None, i_dst=None, max_rank=None):
    """[a]-[0] -> [f a]-[0]; nonadditive on elements but linear on the basis."""
    if i_src is None:
        i_src = build_I(f.src, max_rank)
    if i_dst is None:
        i_dst = build_I(f.dst, max_rank)
    cols = []
    for e in i_src.nonzero_elements:
        img = f(e)
        col = [0] * i_dst.rank
        if img != f.dst.zero():
            col[i_dst.index[img]] = 1
        cols.append(col)
    m = (IntMatrix.from_cols(cols, rows=i_dst.rank)
         if cols else IntMatrix.zeros(i_dst.rank, 0))
    return mk_hom(i_src.free.group, i_dst.free.group, m)


def I2_map(f, i2_src=None, i2_dst=None, i_src=None, i_dst=None, max_rank=None):
    """Restriction of I(f) to the I^2 lattices, by exact change of basis."""
    if i_src is None:
        i_src = build_I(f.src, max_rank)
    if i_dst is None:
        i_dst = build_I(f.dst, max_rank)
    if i2_src is None:
        i2_src = build_I2(f.src, max_rank, ig=i_src)
    if i2_dst is None:
        i2_dst = build_I2(f.dst, max_rank, ig=i_dst)
    im = I_map(f, i_src, i_dst)
    cols = []
    for j in range(i2_src.rank):
        v = im.matrix.mul_vec(i2_src.inclusion_matrix.col(j))
        x = solve(i2_dst.inclusion_matrix, v)
        assert x is not None, "I(f) must carry I^2 into I^2"
        cols.append(list(x))
    m = (IntMatrix.from_cols(cols, rows=i2_dst.rank)
         if cols else IntMatrix.zeros(i2_dst.rank, 0))
    return mk_hom(i2_src.free.group, i2_dst.free.group, m)
