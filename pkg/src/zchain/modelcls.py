"""Classification of chain maps and structural splitting of free complexes.

A map is a cofibration when injective with degreewise-free cokernel, a
fibration when surjective, a weak equivalence when a quasi-isomorphism; the
acyclic variants combine those.  All six underlying booleans are computed
independently and exactly, so the redundant characterisations can be
cross-checked.

For a degreewise-free complex the differential splits as A_n = Y_n + Z_n
with d(y + z) = d'(y), d' injective and Z_n the cycle subgroup; the complex
is acyclic exactly when every d' is an isomorphism, in which case the
splitting assembles an explicit contraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotFree
from .abelian import FreeBasedGroup, GroupHom, is_free, mk_hom
from .complexes import (
    ChainComplex,
    ChainMap,
    cokernel_complex,
    induced_map,
    kernel_complex,
)
from .intlinalg import (
    IntMatrix,
    column_lattice,
    hstack,
    inverse_unimodular,
    kernel_basis,
    solve,
)


@dataclass(frozen=True)
class MapClassification:
    injective: bool
    surjective: bool
    coker_degreewise_free: bool
    quasi_iso: bool
    kernel_acyclic: bool
    coker_acyclic: bool

    @property
    def cofibration(self):
        return self.injective and self.coker_degreewise_free

    @property
    def fibration(self):
        return self.surjective

    @property
    def weak_equivalence(self):
        return self.quasi_iso

    @property
    def acyclic_cofibration(self):
        return self.cofibration and self.quasi_iso

    @property
    def acyclic_fibration(self):
        return self.surjective and self.kernel_acyclic

    @property
    def labels(self):
        out = []
        if self.cofibration:
            out.append("cofibration")
        if self.fibration:
            out.append("fibration")
        if self.weak_equivalence:
            out.append("weak_equivalence")
        if self.acyclic_cofibration:
            out.append("acyclic_cofibration")
        if self.acyclic_fibration:
            out.append("acyclic_fibration")
        return tuple(out)

    def as_dict(self):
        return {
            "injective": self.injective,
            "surjective": self.surjective,
            "coker_degreewise_free": self.coker_degreewise_free,
            "quasi_iso": self.quasi_iso,
            "kernel_acyclic": self.kernel_acyclic,
            "coker_acyclic": self.coker_acyclic,
            "labels": list(self.labels),
        }


def classify(f: ChainMap) -> MapClassification:
    """All six booleans, each computed exactly from normal forms."""
    kc, _ = kernel_complex(f)
    cc, _ = cokernel_complex(f)
    injective = all(kc.group(n).is_trivial() for n in kc.degrees())
    surjective = all(cc.group(n).is_trivial() for n in cc.degrees())
    coker_free = all(is_free(cc.group(n)) for n in cc.degrees())
    pad_degrees = sorted(set(f.src.window(1)) | set(f.dst.window(1)))
    quasi_iso = all(induced_map(f, n).is_iso() for n in pad_degrees)
    return MapClassification(
        injective=injective,
        surjective=surjective,
        coker_degreewise_free=coker_free,
        quasi_iso=quasi_iso,
        kernel_acyclic=kc.is_acyclic(),
        coker_acyclic=cc.is_acyclic(),
    )


@dataclass
class SplitDegree:
    """Coordinates of one degree of a free splitting.

    basis/coords give the isomorphism with free coordinates; y/z columns sit
    inside free coordinates, and the ambient embeddings and coordinate
    extractors are precomposed for direct use.
    """

    basis: IntMatrix       # ambient <- free coordinates
    coords: IntMatrix      # free coordinates <- ambient
    y_cols: IntMatrix      # free <- Y coordinates
    z_cols: IntMatrix      # free <- Z coordinates
    y_amb: IntMatrix       # ambient <- Y
    z_amb: IntMatrix       # ambient <- Z
    y_coords: IntMatrix    # Y <- ambient
    z_coords: IntMatrix    # Z <- ambient


@dataclass
class FreeSplitting:
    """A_n = Y_n + Z_n with d(y + z) = d'(y), Z_n = ker(d_n), d' injective."""

    complex: ChainComplex
    degrees: dict = field(default_factory=dict)   # n -> SplitDegree
    dprime: dict = field(default_factory=dict)    # n -> GroupHom Y_n -> Z_{n-1}

    def y_group(self, n) -> FreeBasedGroup:
        d = self.degrees.get(n)
        rank = d.y_cols.cols if d else 0
        return FreeBasedGroup(tuple(f"y{n}_{i}" for i in range(rank)))

    def z_group(self, n) -> FreeBasedGroup:
        d = self.degrees.get(n)
        rank = d.z_cols.cols if d else 0
        return FreeBasedGroup(tuple(f"z{n}_{i}" for i in range(rank)))

    def dprime_hom(self, n) -> GroupHom:
        h = self.dprime.get(n)
        if h is None:
            return mk_hom(self.y_group(n).group, self.z_group(n - 1).group,
                          IntMatrix.zeros(self.z_group(n - 1).rank, self.y_group(n).rank))
        return h


def split_free_complex(a: ChainComplex) -> FreeSplitting:
    """Deterministic splitting of a degreewise-free complex.

    Y_n is spanned by the canonical preimages of the HNF basis of the image
    lattice of d_n; Z_n is the canonical kernel basis.
    """
    split = FreeSplitting(a)
    free_data = {}
    for n in a.degrees():
        g = a.group(n)
        if g.invariant_factors:
            raise NotFree(f"group in degree {n} has torsion")
        B, C = g.free_basis()
        free_data[n] = (B, C)
    # differentials in free coordinates
    dfree = {}
    for n in a.degrees():
        if (n - 1) in free_data:
            B, _ = free_data[n]
            _, C1 = free_data[n - 1]
            dfree[n] = C1 @ a.diff(n).matrix @ B
        else:
            dfree[n] = IntMatrix.zeros(0, free_data[n][0].cols)
    for n in a.degrees():
        B, C = free_data[n]
        r = B.cols
        dn = dfree[n]
        im_rows = column_lattice(dn)
        y_cols = [list(solve(dn, row)) for row in im_rows]
        Y = IntMatrix.from_cols(y_cols, rows=r)
        Zc = kernel_basis(dn)
        S = hstack([Y, Zc])
        Sinv = inverse_unimodular(S)
        ky = Y.cols
        sd = SplitDegree(
            basis=B,
            coords=C,
            y_cols=Y,
            z_cols=Zc,
            y_amb=B @ Y,
            z_amb=B @ Zc,
            y_coords=Sinv.take_rows(range(ky)) @ C,
            z_coords=Sinv.take_rows(range(ky, S.cols)) @ C,
        )
        split.degrees[n] = sd
    for n in a.degrees():
        sd = split.degrees[n]
        if sd.y_cols.cols == 0:
            continue
        prev = split.degrees.get(n - 1)
        if prev is None:
            raise AssertionError("nonzero image below the support window")
        # d'(y_i) expressed in the Z basis one degree down
        cols = []
        for j in range(sd.y_cols.cols):
            img = dfree[n].mul_vec(sd.y_cols.col(j))
            x = solve(prev.z_cols, img)
            assert x is not None, "image of d must consist of cycles"
            cols.append(list(x))
        m = IntMatrix.from_cols(cols, rows=prev.z_cols.cols)
        split.dprime[n] = mk_hom(split.y_group(n).group, split.z_group(n - 1).group, m)
    return split


@dataclass
class Contraction:
    """Degreewise maps s with d s + s d = identity."""

    complex: ChainComplex
    components: dict  # n -> IntMatrix mapping A_n -> A_{n+1}

    def component(self, n) -> IntMatrix:
        m = self.components.get(n)
        if m is None:
            return IntMatrix.zeros(self.complex.group(n + 1).ngens, self.complex.group(n).ngens)
        return m


def is_contractible(a: ChainComplex, split: FreeSplitting | None = None):
    """The contraction assembled from the inverses of d', or None.

    Requires a degreewise-free complex; the criterion is that every d' is an
    isomorphism of free groups.
    """
    if split is None:
        split = split_free_complex(a)
    if a.support is None:
        return Contraction(a, {})
    lo, hi = a.support
    inverses = {}
    for n in range(lo, hi + 2):
        sd_up = split.degrees.get(n)
        ky = sd_up.y_cols.cols if sd_up else 0
        prev = split.degrees.get(n - 1)
        kz = prev.z_cols.cols if prev else 0
        if ky == 0 and kz == 0:
            continue
        h = split.dprime.get(n)
        m = h.matrix if h else IntMatrix.zeros(kz, ky)
        if m.rows != m.cols:
            return None
        try:
            inverses[n] = inverse_unimodular(m)
        except ValueError:
            return None
    comps = {}
    for n in a.degrees():
        sd = split.degrees[n]
        inv = inverses.get(n + 1)
        if inv is None:
            # the iso check passed, so Z_n is zero here and s vanishes
            comps[n] = IntMatrix.zeros(a.group(n + 1).ngens, a.group(n).ngens)
        else:
            comps[n] = split.degrees[n + 1].y_amb @ inv @ sd.z_coords
    s = Contraction(a, comps)
    _check_contraction(a, s)
    return s


def _check_contraction(a, s):
    for n in a.degrees():
        g = a.group(n)
        m = a.diff(n + 1).matrix @ s.component(n) + s.component(n - 1) @ a.diff(n).matrix
        delta = m - IntMatrix.identity(g.ngens)
        assert all(g.contains_zero(delta.col(j)) for j in range(g.ngens)), \
            "assembled homotopy is not a contraction"
