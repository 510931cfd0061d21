"""Bounded chain complexes of finitely generated abelian groups.

A complex stores groups on a contiguous support window and differentials
d(n): group(n) -> group(n-1); outside the window every group is trivial and
every map is zero.  d o d = 0 and chain-map commutation are checked at
construction.  Homology is returned as a presented subquotient together with
cycle lifts, which is enough to compute induced maps exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotAChainMap, NotAComplex
from .abelian import (
    DirectSum,
    FgAbGroup,
    GroupHom,
    factor_through,
    identity_hom,
    kernel,
    mk_group,
    mk_hom,
    preimage_lattice,
    tensor_group,
    trivial_group,
    zero_hom,
)
from .intlinalg import IntMatrix, hstack, kron, solve


class ChainComplex:
    """Z-graded groups with differentials, trivial outside a bounded window."""

    __slots__ = ("support", "_groups", "_diffs", "_homology")

    def __init__(self, groups, diffs, support=None, validate=True):
        groups = dict(groups)
        if support is None:
            support = (min(groups), max(groups)) if groups else None
        if support is not None:
            lo, hi = support
            groups = {n: groups.get(n, trivial_group()) for n in range(lo, hi + 1)}
            # drop empty edge degrees
            while lo <= hi and groups[lo].ngens == 0:
                groups.pop(lo)
                lo += 1
            while lo <= hi and groups[hi].ngens == 0:
                groups.pop(hi)
                hi -= 1
            support = (lo, hi) if lo <= hi else None
        self.support = support
        self._groups = groups if support else {}
        self._diffs = {}
        self._homology = {}
        if support:
            lo, hi = support
            for n in range(lo + 1, hi + 1):
                d = diffs.get(n)
                if d is None:
                    d = zero_hom(self.group(n), self.group(n - 1))
                elif isinstance(d, IntMatrix):
                    d = mk_hom(self.group(n), self.group(n - 1), d)
                if d.src != self.group(n) or d.dst != self.group(n - 1):
                    raise NotAComplex(f"differential at degree {n} has wrong endpoints")
                self._diffs[n] = d
        if validate and support:
            lo, hi = support
            for n in range(lo + 2, hi + 1):
                if not (self.diff(n - 1) @ self.diff(n)).is_zero():
                    raise NotAComplex(f"d o d is nonzero at degree {n}")

    def degrees(self):
        if self.support is None:
            return range(0)
        return range(self.support[0], self.support[1] + 1)

    def window(self, pad=0):
        if self.support is None:
            return range(0)
        return range(self.support[0] - pad, self.support[1] + 1 + pad)

    def group(self, n) -> FgAbGroup:
        return self._groups.get(n, trivial_group())

    def diff(self, n) -> GroupHom:
        d = self._diffs.get(n)
        if d is None:
            d = zero_hom(self.group(n), self.group(n - 1))
        return d

    def is_zero(self):
        return all(self.group(n).is_trivial() for n in self.degrees())

    def is_degreewise_finite(self):
        return all(self.group(n).is_finite() for n in self.degrees())

    def is_degreewise_free(self):
        return all(not self.group(n).invariant_factors for n in self.degrees())

    def max_ngens(self):
        return max((self.group(n).ngens for n in self.degrees()), default=0)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.support != other.support:
            return False
        for n in self.degrees():
            if self.group(n) != other.group(n) or self.diff(n) != other.diff(n):
                return False
        return True

    def __hash__(self):
        return hash(self.support)

    def __repr__(self):
        if self.support is None:
            return "ChainComplex(0)"
        parts = ", ".join(f"{n}:{self.group(n)!r}" for n in self.degrees())
        return f"ChainComplex({parts})"

    def homology(self, n):
        if n not in self._homology:
            self._homology[n] = _homology_at(self, n)
        return self._homology[n]

    def is_acyclic(self):
        return all(self.homology(n).group.is_trivial() for n in self.degrees())


def mk_complex(support, groups, diffs):
    """Validated complex; support may be None/empty for the zero complex."""
    return ChainComplex(dict(groups), dict(diffs), support=support, validate=True)


def zero_complex():
    return ChainComplex({}, {}, support=None)


class ChainMap:
    """Degreewise homs commuting with the differentials."""

    __slots__ = ("src", "dst", "_components")

    def __init__(self, src, dst, components, validate=True):
        self.src = src
        self.dst = dst
        comps = {}
        for n, c in components.items():
            if isinstance(c, IntMatrix):
                c = mk_hom(src.group(n), dst.group(n), c)
            if c.src != src.group(n) or c.dst != dst.group(n):
                raise NotAChainMap(f"component at degree {n} has wrong endpoints")
            comps[n] = c
        self._components = comps
        if validate:
            degrees = set(src.degrees()) | set(dst.degrees())
            for n in sorted(degrees | {d + 1 for d in degrees}):
                lhs = self.component(n - 1) @ src.diff(n)
                rhs = dst.diff(n) @ self.component(n)
                if not (lhs - rhs).is_zero():
                    raise NotAChainMap(f"square at degree {n} does not commute")

    def component(self, n) -> GroupHom:
        c = self._components.get(n)
        if c is None:
            c = zero_hom(self.src.group(n), self.dst.group(n))
        return c

    def __matmul__(self, other):
        if other.dst != self.src:
            raise DimensionMismatch("chain maps are not composable")
        degrees = set(other.src.degrees()) | set(self.dst.degrees()) | set(self.src.degrees())
        comps = {n: self.component(n) @ other.component(n) for n in degrees}
        return ChainMap(other.src, self.dst, comps, validate=False)

    def __add__(self, other):
        if self.src != other.src or self.dst != other.dst:
            raise DimensionMismatch("chain map sum shape mismatch")
        degrees = set(self.src.degrees()) | set(self.dst.degrees())
        return ChainMap(self.src, self.dst,
                        {n: self.component(n) + other.component(n) for n in degrees},
                        validate=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ChainMap(self.src, self.dst,
                        {n: -self.component(n) for n in self._components},
                        validate=False)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.src != other.src or self.dst != other.dst:
            return False
        degrees = set(self.src.degrees()) | set(self.dst.degrees())
        return all((self.component(n) - other.component(n)).is_zero() for n in degrees)

    def __hash__(self):
        return hash((self.src.support, self.dst.support))

    def __repr__(self):
        return f"ChainMap({self.src!r} -> {self.dst!r})"

    def is_zero(self):
        return all(self.component(n).is_zero() for n in set(self.src.degrees()) | set(self.dst.degrees()))


def mk_chain_map(src, dst, components):
    return ChainMap(src, dst, dict(components), validate=True)


def identity_chain_map(a):
    return ChainMap(a, a, {n: identity_hom(a.group(n)) for n in a.degrees()}, validate=False)


def zero_chain_map(src, dst):
    return ChainMap(src, dst, {}, validate=False)


def test_object(kind, n, m):
    """Sphere: m concentrated in degree n.  Disk: m in degrees n+1 and n with
    the identity differential between them."""
    if kind == "sphere":
        return ChainComplex({n: m}, {}, support=(n, n), validate=False)
    if kind == "disk":
        return ChainComplex(
            {n: m, n + 1: m},
            {n + 1: identity_hom(m)},
            support=(n, n + 1),
            validate=False,
        )
    raise ValueError(f"unknown test object kind: {kind}")


def suspend(a, k):
    """(suspend(a, k))_n = a_{n-k}; the differential picks up the sign (-1)^k."""
    if a.support is None:
        return zero_complex()
    lo, hi = a.support
    groups = {n + k: a.group(n) for n in a.degrees()}
    sign = -1 if k % 2 else 1
    diffs = {}
    for n in range(lo + 1, hi + 1):
        d = a.diff(n)
        diffs[n + k] = GroupHom(d.src, d.dst, d.matrix if sign == 1 else -d.matrix, _checked=True)
    return ChainComplex(groups, diffs, support=(lo + k, hi + k), validate=False)


def cone(a):
    """Cone a + (shifted a) with d(x, x') = (dx + x', -dx'); always acyclic.

    Returns the cone and the inclusion of a.
    """
    if a.support is None:
        z = zero_complex()
        return z, zero_chain_map(a, z)
    lo, hi = a.support
    layouts = {}
    groups = {}
    for n in range(lo, hi + 2):
        ds = DirectSum([a.group(n), a.group(n - 1)])
        layouts[n] = ds
        groups[n] = ds.group
    diffs = {}
    for n in range(lo + 1, hi + 2):
        blocks = {
            (0, 0): a.diff(n).matrix,
            (0, 1): IntMatrix.identity(a.group(n - 1).ngens),
            (1, 1): -a.diff(n - 1).matrix,
        }
        diffs[n] = layouts[n - 1].block_matrix(layouts[n], blocks)
    c = ChainComplex(groups, diffs, support=(lo, hi + 1), validate=True)
    incl = ChainMap(a, c, {n: layouts[n].inclusion(0).matrix for n in a.degrees()}, validate=True)
    return c, incl


@dataclass
class HomologyClassData:
    """Presentation of ker d_n / im d_{n+1} with explicit cycle lifts."""

    degree: int
    group: FgAbGroup
    cycle_lift: IntMatrix  # columns: a cycle in the ambient group per generator
    ambient: FgAbGroup

    def lift(self, coords):
        """Cycle vector representing the class with the given coordinates."""
        return self.cycle_lift.mul_vec(coords)

    def class_of(self, cycle):
        """Coordinates of the class of a cycle vector."""
        x = solve(self.cycle_lift, tuple(cycle))
        if x is None:
            raise ValueError("vector is not a cycle")
        return self.group.canon(x)


def _homology_at(a, n):
    gn = a.group(n)
    if gn.ngens == 0:
        return HomologyClassData(n, trivial_group(), IntMatrix.zeros(0, 0), gn)
    d_n = a.diff(n)
    d_up = a.diff(n + 1)
    cycles = preimage_lattice(d_n.matrix, a.group(n - 1).rel_rows)
    rels = []
    for j in range(d_up.matrix.cols):
        x = solve(cycles, d_up.matrix.col(j))
        assert x is not None, "boundaries must be cycles"
        rels.append(list(x))
    for j in range(gn.relations.cols):
        x = solve(cycles, gn.relations.col(j))
        assert x is not None, "relations must lie in the cycle lattice"
        rels.append(list(x))
    h = mk_group(cycles.cols, IntMatrix.from_cols(rels, rows=cycles.cols))
    return HomologyClassData(n, h, cycles, gn)


def homology(a, n):
    return a.homology(n)


def induced_map(f, n):
    """H_n(f), computed through cycle lifts; independent of the lift choices."""
    hs = f.src.homology(n)
    hd = f.dst.homology(n)
    cols = []
    comp = f.component(n)
    for j in range(hs.group.ngens):
        img = comp.matrix.mul_vec(hs.cycle_lift.col(j))
        cols.append(list(hd.class_of(img)))
    m = IntMatrix.from_cols(cols, rows=hd.group.ngens) if cols else IntMatrix.zeros(hd.group.ngens, 0)
    return mk_hom(hs.group, hd.group, m)


def is_quasi_iso(f, pad=1):
    degrees = set(f.src.window(pad)) | set(f.dst.window(pad))
    return all(induced_map(f, n).is_iso() for n in degrees)


def dsum_complex(parts):
    """Direct sum of complexes with inclusion and projection chain maps."""
    parts = list(parts)
    supports = [p.support for p in parts if p.support is not None]
    if not supports:
        z = zero_complex()
        return z, [zero_chain_map(p, z) for p in parts], [zero_chain_map(z, p) for p in parts]
    lo = min(s[0] for s in supports)
    hi = max(s[1] for s in supports)
    layouts = {n: DirectSum([p.group(n) for p in parts]) for n in range(lo, hi + 1)}
    groups = {n: layouts[n].group for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        blocks = {(i, i): p.diff(n).matrix for i, p in enumerate(parts)}
        diffs[n] = layouts[n - 1].block_matrix(layouts[n], blocks)
    total = ChainComplex(groups, diffs, support=(lo, hi), validate=False)
    incls = []
    projs = []
    for i, p in enumerate(parts):
        incls.append(ChainMap(p, total, {n: layouts[n].inclusion(i).matrix for n in p.degrees()
                                         if lo <= n <= hi}, validate=False))
        projs.append(ChainMap(total, p, {n: layouts[n].projection(i).matrix for n in range(lo, hi + 1)},
                              validate=False))
    return total, incls, projs


def dsum_chain_maps(maps):
    """Block-diagonal sum of chain maps between the summed complexes."""
    maps = list(maps)
    src, _, s_projs = dsum_complex([m.src for m in maps])
    dst, d_incls, _ = dsum_complex([m.dst for m in maps])
    total = zero_chain_map(src, dst)
    for k, m in enumerate(maps):
        total = total + (d_incls[k] @ m @ s_projs[k])
    return total


def kernel_complex(f):
    """Degreewise kernels of a chain map, with the inclusion."""
    groups = {}
    incls = {}
    for n in f.src.degrees():
        k, incl = kernel(f.component(n))
        groups[n] = k
        incls[n] = incl
    diffs = {}
    if f.src.support is not None:
        lo, hi = f.src.support
        for n in range(lo + 1, hi + 1):
            target_incl = incls.get(n - 1, zero_hom(trivial_group(), f.src.group(n - 1)))
            diffs[n] = factor_through(target_incl, f.src.diff(n) @ incls[n])
    kc = ChainComplex(groups, diffs, support=f.src.support, validate=True)
    incl_map = ChainMap(kc, f.src, {n: incls[n] for n in kc.degrees()}, validate=True)
    return kc, incl_map


def cokernel_complex(f):
    """Degreewise cokernels of a chain map, with the projection."""
    groups = {}
    for n in f.dst.degrees():
        q = mk_group(f.dst.group(n).ngens,
                     hstack([f.dst.group(n).relations, f.component(n).matrix]))
        groups[n] = q
    diffs = {}
    if f.dst.support is not None:
        lo, hi = f.dst.support
        for n in range(lo + 1, hi + 1):
            diffs[n] = mk_hom(groups[n], groups[n - 1], f.dst.diff(n).matrix)
    cc = ChainComplex(groups, diffs, support=f.dst.support, validate=True)
    proj = ChainMap(f.dst, cc,
                    {n: mk_hom(f.dst.group(n), cc.group(n), IntMatrix.identity(f.dst.group(n).ngens))
                     for n in cc.degrees()},
                    validate=True)
    return cc, proj


def _tensor_layout(a, b, n):
    """Summands (p, q, tensor group) of degree n of a (x) b, p ascending."""
    out = []
    if a.support is None or b.support is None:
        return out
    for p in a.degrees():
        q = n - p
        if b.support[0] <= q <= b.support[1]:
            out.append((p, q, tensor_group(a.group(p), b.group(q))))
    return out


def tensor(a, b):
    """Graded tensor product with the usual sign: d(x (x) y) uses (-1)^p on the
    second factor in degree p of the first."""
    if a.support is None or b.support is None:
        return zero_complex()
    lo = a.support[0] + b.support[0]
    hi = a.support[1] + b.support[1]
    layouts = {}
    groups = {}
    for n in range(lo, hi + 1):
        parts = _tensor_layout(a, b, n)
        ds = DirectSum([t for (_, _, t) in parts])
        layouts[n] = (parts, ds)
        groups[n] = ds.group
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src_parts, src_ds = layouts[n]
        dst_parts, dst_ds = layouts[n - 1]
        dst_index = {(p, q): i for i, (p, q, _) in enumerate(dst_parts)}
        blocks = {}
        for si, (p, q, _) in enumerate(src_parts):
            ti = dst_index.get((p - 1, q))
            if ti is not None:
                blocks[(ti, si)] = kron(a.diff(p).matrix,
                                        IntMatrix.identity(b.group(q).ngens))
            ti = dst_index.get((p, q - 1))
            if ti is not None:
                m = kron(IntMatrix.identity(a.group(p).ngens), b.diff(q).matrix)
                blocks[(ti, si)] = m if p % 2 == 0 else -m
        diffs[n] = dst_ds.block_matrix(src_ds, blocks)
    return ChainComplex(groups, diffs, support=(lo, hi), validate=True)


def tensor_map(f, g):
    """f (x) g on the tensor complexes, degreewise Kronecker blocks."""
    src = tensor(f.src, g.src)
    dst = tensor(f.dst, g.dst)
    comps = {}
    for n in src.degrees():
        src_parts = _tensor_layout(f.src, g.src, n)
        dst_parts = _tensor_layout(f.dst, g.dst, n)
        src_ds = DirectSum([t for (_, _, t) in src_parts])
        dst_ds = DirectSum([t for (_, _, t) in dst_parts])
        dst_index = {(p, q): i for i, (p, q, _) in enumerate(dst_parts)}
        blocks = {}
        for si, (p, q, _) in enumerate(src_parts):
            ti = dst_index.get((p, q))
            if ti is not None:
                blocks[(ti, si)] = kron(f.component(p).matrix, g.component(q).matrix)
        comps[n] = dst_ds.block_matrix(src_ds, blocks)
    return ChainMap(src, dst, comps, validate=True)


def map_to_disk(a, n, u):
    """Chain map a -> disk(n, m) from a hom u: a_n -> m."""
    m = u.dst
    disk = test_object("disk", n, m)
    comps = {n: u, n + 1: u @ a.diff(n + 1)}
    return ChainMap(a, disk, comps, validate=True)


def map_from_disk(a, n, v):
    """Chain map disk(n, m) -> a from a hom v: m -> a_{n+1}."""
    disk = test_object("disk", n, v.src)
    comps = {n + 1: v, n: a.diff(n + 1) @ v}
    return ChainMap(disk, a, comps, validate=True)


def map_to_sphere(a, n, u):
    """Chain map a -> sphere(n, m) from a hom u on a_n vanishing on boundaries."""
    sphere = test_object("sphere", n, u.dst)
    return ChainMap(a, sphere, {n: u}, validate=True)


def map_from_sphere(a, n, v_into_cycles, cycles_incl):
    """Chain map sphere(n, m) -> a from a hom m -> cycles composed with the
    inclusion of the cycle subgroup."""
    sphere = test_object("sphere", n, v_into_cycles.src)
    return ChainMap(sphere, a, {n: cycles_incl @ v_into_cycles}, validate=True)


def cycles_subgroup(a, n):
    """The cycle subgroup Z_n(a) with its inclusion into a_n."""
    return kernel(a.diff(n))
