"""Constructive solutions to lifting problems.

The two model-structure lifting axioms are implemented as algorithms rather
than existence statements.  The route, for a commutative square

        f
    A -----> L
    |i       |q
    v        v
    B -----> M
        g

with i injective (cokernel C) and q surjective (kernel K), is:

  1. form the pullback Z of (q, g), the comparison (i, f): A -> Z, and the
     quotient T = Z / A, giving a short exact sequence K -> T -> C;
  2. split r: T -> C, either by lifting the identity of C through r (an
     acyclic fibration when K is acyclic and C is degreewise free) or by a
     section over C (when C is contractible and free);
  3. push the splitting through the pullback to obtain the diagonal B -> L.

Nullhomotopies against acyclic complexes and graded lifts through
surjections are the workhorses.  Every choice is resolved by canonical
normal-form solutions, so the returned lift is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NotAcyclic,
    NotAcyclicFibration,
    NotASplitting,
    NotContractible,
    NotFree,
    NotLiftable,
    NotMonoNotEpi,
    PreconditionFailed,
)
from .abelian import factor_through, kernel, lift_free_hom, mk_hom, preimage
from .complexes import (
    ChainComplex,
    ChainMap,
    cokernel_complex,
    identity_chain_map,
    kernel_complex,
    suspend,
    zero_chain_map,
)
from .intlinalg import IntMatrix, blockdiag, hstack, inverse_unimodular, solve, vstack
from .modelcls import classify, is_contractible, split_free_complex
from .monoidal_proper import pullback


@dataclass
class LiftProblem:
    """Commutative square q o f = g o i, checked at construction."""

    i: ChainMap
    q: ChainMap
    f: ChainMap
    g: ChainMap

    def __post_init__(self):
        if self.f.src != self.i.src or self.f.dst != self.q.src:
            raise PreconditionFailed("top map endpoints do not match the square")
        if self.g.src != self.i.dst or self.g.dst != self.q.dst:
            raise PreconditionFailed("bottom map endpoints do not match the square")
        if (self.q @ self.f) != (self.g @ self.i):
            raise PreconditionFailed("square does not commute")


@dataclass
class Homotopy:
    """Degree +1 maps r(n): A_n -> K_{n+1}; the identity d r + r d = (stated
    map) is recorded by the operation that produced the homotopy."""

    src: ChainComplex
    dst: ChainComplex
    components: dict

    def component(self, n) -> IntMatrix:
        m = self.components.get(n)
        if m is None:
            return IntMatrix.zeros(self.dst.group(n + 1).ngens, self.src.group(n).ngens)
        return m


def _check_homotopy_identity(r, k):
    """d r + r d = k, degreewise."""
    a, kc = k.src, k.dst
    for n in set(a.window(1)):
        m = (kc.diff(n + 1).matrix @ r.component(n)
             + r.component(n - 1) @ a.diff(n).matrix
             - k.component(n).matrix)
        g = kc.group(n)
        if not all(g.contains_zero(m.col(j)) for j in range(m.cols)):
            raise AssertionError("homotopy identity failed")


def nullhomotopy(k: ChainMap) -> Homotopy:
    """r with d r + r d = k, for k: A -> K with A degreewise free, K acyclic.

    Split A = Y + Z.  On Z_n choose t with d t = k (cycles are boundaries in
    an acyclic target); on Y_n choose s with d s(y) = k(y) - t(d'y); then
    r(y + z) = s(y) + t(z).
    """
    a, kc = k.src, k.dst
    split = split_free_complex(a)  # raises NotFree on torsion
    if not kc.is_acyclic():
        raise NotAcyclic("target complex has nonzero homology")
    t = {}   # n -> matrix K_{n+1} <- Z_n coordinates
    for n in a.degrees():
        sd = split.degrees[n]
        d_up = kc.diff(n + 1)
        cols = []
        for j in range(sd.z_amb.cols):
            target = kc.group(n).canon(k.component(n).matrix.mul_vec(sd.z_amb.col(j)))
            x = preimage(d_up, target)
            if x is None:
                raise NotAcyclic("cycle is not a boundary in the target")
            cols.append(list(x))
        t[n] = (IntMatrix.from_cols(cols, rows=kc.group(n + 1).ngens)
                if cols else IntMatrix.zeros(kc.group(n + 1).ngens, 0))
    comps = {}
    for n in a.degrees():
        sd = split.degrees[n]
        d_up = kc.diff(n + 1)
        dpr = split.dprime.get(n)
        scols = []
        for j in range(sd.y_amb.cols):
            target = list(k.component(n).matrix.mul_vec(sd.y_amb.col(j)))
            correction = t[n - 1].mul_vec(dpr.matrix.col(j))
            target = [x - y for x, y in zip(target, correction)]
            x = preimage(d_up, kc.group(n).canon(tuple(target)))
            if x is None:
                raise NotAcyclic("cycle is not a boundary in the target")
            scols.append(list(x))
        s = (IntMatrix.from_cols(scols, rows=kc.group(n + 1).ngens)
             if scols else IntMatrix.zeros(kc.group(n + 1).ngens, 0))
        comps[n] = s @ sd.y_coords + t[n] @ sd.z_coords
    r = Homotopy(a, kc, comps)
    _check_homotopy_identity(r, k)
    return r


def lift_against_acyclic_fibration(g: ChainMap, q: ChainMap, kernel_data=None) -> ChainMap:
    """Chain map h with q o h = g, for a degreewise-free source and an
    acyclic fibration q.

    Take a graded lift through the surjection, measure its failure to be a
    chain map inside the (suspended) kernel, null-homotope the defect, and
    correct the lift by the homotopy.
    """
    a = g.src
    if g.dst != q.dst:
        raise PreconditionFailed("maps do not share a target")
    for n in a.degrees():
        if a.group(n).invariant_factors:
            raise NotFree(f"source has torsion in degree {n}")
    if kernel_data is None:
        kernel_data = kernel_complex(q)
    kc, incl = kernel_data
    coker, _ = cokernel_complex(q)
    if not all(coker.group(n).is_trivial() for n in coker.degrees()):
        raise NotAcyclicFibration("map is not surjective")
    if not kc.is_acyclic():
        raise NotAcyclicFibration("kernel is not acyclic")
    hprime = {n: lift_free_hom(q.component(n), g.component(n)).matrix for n in a.degrees()}

    def hp(n):
        m = hprime.get(n)
        if m is None:
            return IntMatrix.zeros(q.src.group(n).ngens, a.group(n).ngens)
        return m

    # the defect d h' - h' d lands in the kernel, one degree down
    sk = suspend(kc, 1)
    defect_comps = {}
    for n in set(a.window(1)):
        defect = q.src.diff(n).matrix @ hp(n) - hp(n - 1) @ a.diff(n).matrix
        defect_hom = mk_hom(a.group(n), q.src.group(n - 1), defect)
        defect_comps[n] = factor_through(incl.component(n - 1), defect_hom).matrix
    kdef = ChainMap(a, sk, defect_comps, validate=True)
    r = nullhomotopy(kdef)
    comps = {}
    for n in a.degrees():
        # r lands in (suspended kernel)_{n+1} = K_n; push into the total space
        comps[n] = hp(n) + incl.component(n).matrix @ r.component(n)
    h = ChainMap(a, q.src, comps, validate=True)
    if (q @ h) != g:
        raise AssertionError("constructed lift does not cover the map")
    return h


def split_ses(p: ChainMap, kernel_data=None) -> ChainMap:
    """Section of a surjection with acyclic kernel onto a degreewise-free
    target, by lifting the identity."""
    s = lift_against_acyclic_fibration(identity_chain_map(p.dst), p, kernel_data)
    if (p @ s) != identity_chain_map(p.dst):
        raise AssertionError("section identity failed")
    return s


def section_over_contractible(r: ChainMap) -> ChainMap:
    """Section of any surjection onto a contractible degreewise-free complex.

    Split C = Y + dY, lift the Y part through r, extend by s(dy) = d s(y).
    """
    c = r.dst
    split = split_free_complex(c)  # NotFree on torsion
    if is_contractible(c, split) is None:
        raise NotContractible("target complex is not contractible")
    coker, _ = cokernel_complex(r)
    if not all(coker.group(n).is_trivial() for n in coker.degrees()):
        raise PreconditionFailed("map is not surjective")
    stilde = {}
    for n in c.degrees():
        sd = split.degrees[n]
        cols = []
        for j in range(sd.y_amb.cols):
            target = c.group(n).canon(sd.y_amb.col(j))
            x = preimage(r.component(n), target)
            assert x is not None, "surjection must hit the free basis"
            cols.append(list(x))
        stilde[n] = (IntMatrix.from_cols(cols, rows=r.src.group(n).ngens)
                     if cols else IntMatrix.zeros(r.src.group(n).ngens, 0))
    comps = {}
    for n in c.degrees():
        sd = split.degrees[n]
        s_on_y = stilde[n] @ sd.y_coords
        if sd.z_cols.cols:
            dpr = split.dprime[n + 1]
            inv = inverse_unimodular(dpr.matrix)
            s_on_z = (r.src.diff(n + 1).matrix @ stilde[n + 1] @ inv) @ sd.z_coords
            comps[n] = s_on_y + s_on_z
        else:
            comps[n] = s_on_y
    s = ChainMap(c, r.src, comps, validate=True)
    if (r @ s) != identity_chain_map(c):
        raise AssertionError("section identity failed")
    return s


@dataclass
class Extension:
    """The short exact sequence K -> T -> C attached to a lifting square,
    with the pullback witnesses used to convert splittings into lifts."""

    K: ChainComplex
    T: ChainComplex
    C: ChainComplex
    k: ChainMap          # K -> T
    r: ChainMap          # T -> C
    Z: ChainComplex      # pullback of (q, g)
    gtilde: ChainMap     # Z -> L
    qtilde: ChainMap     # Z -> B
    itilde: ChainMap     # A -> Z
    ktilde: ChainMap     # K -> Z
    ptilde: ChainMap     # Z -> T
    z_incl: ChainMap     # Z -> L + B (ambient inclusion of the pullback)
    pC: ChainMap         # B -> C (cokernel projection of i)
    problem: LiftProblem


def build_T(problem: LiftProblem) -> Extension:
    """The extension K -> T -> C of a lifting square, fully witnessed and
    checked for exactness."""
    i, q, f, g = problem.i, problem.q, problem.f, problem.g
    inj = all(kernel(i.component(n))[0].is_trivial()
              for n in set(i.src.degrees()) | set(i.dst.degrees()))
    coker_q, _ = cokernel_complex(q)
    if not inj or not all(coker_q.group(n).is_trivial() for n in coker_q.degrees()):
        raise NotMonoNotEpi("square sides are not (mono, epi)")
    c, p_c = cokernel_complex(i)
    kq, j_k = kernel_complex(q)
    pb = pullback(q, g)               # legs: to_first -> L, to_second -> B
    itilde = pb.induce(f, i)
    t, p_t = cokernel_complex(itilde)
    ktilde = pb.induce(j_k, zero_chain_map(kq, i.dst))
    k_map = p_t @ ktilde
    r_comps = {}
    for n in t.degrees():
        r_comps[n] = mk_hom(t.group(n), c.group(n),
                            (p_c @ pb.to_second).component(n).matrix)
    r_map = ChainMap(t, c, r_comps, validate=True)
    ext = Extension(
        K=kq, T=t, C=c, k=k_map, r=r_map,
        Z=pb.complex, gtilde=pb.to_first, qtilde=pb.to_second,
        itilde=itilde, ktilde=ktilde, ptilde=p_t, z_incl=pb.incl, pC=p_c,
        problem=problem,
    )
    _verify_extension(ext)
    return ext


def _verify_extension(ext):
    """k mono, r epi, image of k = kernel of r, in every degree."""
    from .abelian import cokernel as group_cokernel
    from .abelian import preimage_lattice
    from .intlinalg import row_lattice

    for n in set(ext.T.degrees()) | set(ext.K.degrees()) | set(ext.C.degrees()):
        k_n = ext.k.component(n)
        r_n = ext.r.component(n)
        if not kernel(k_n)[0].is_trivial():
            raise AssertionError("kernel piece fails to embed")
        if not group_cokernel(r_n)[0].is_trivial():
            raise AssertionError("quotient piece fails to surject")
        if not (r_n @ k_n).is_zero():
            raise AssertionError("composite through the extension is nonzero")
        t_n = ext.T.group(n)
        rel_cols = [t_n.relations.col(j) for j in range(t_n.relations.cols)]
        img_rows = row_lattice(
            [k_n.matrix.col(j) for j in range(k_n.matrix.cols)] + rel_cols, t_n.ngens)
        ker_lat = preimage_lattice(r_n.matrix, ext.C.group(n).rel_rows)
        ker_rows = row_lattice(
            [ker_lat.col(j) for j in range(ker_lat.cols)] + rel_cols, t_n.ngens)
        if img_rows != ker_rows:
            raise AssertionError("extension is not exact in the middle")


def lift_from_splitting(ext: Extension, n_map: ChainMap) -> ChainMap:
    """Turn a splitting of K -> T -> C into a diagonal of the original
    square: lift (n o pC, id_B) through the pullback, project to L."""
    if (ext.r @ n_map) != identity_chain_map(ext.C):
        raise NotASplitting("map does not split the extension")
    problem = ext.problem
    b = problem.i.dst
    ntilde_comps = {}
    for deg in b.degrees():
        zb = ext.Z.group(deg)
        qt = ext.qtilde.component(deg).matrix
        pt = ext.ptilde.component(deg).matrix
        target_t = n_map.component(deg).matrix @ ext.pC.component(deg).matrix
        stacked = vstack([qt, pt])
        rel = blockdiag([b.group(deg).relations, ext.T.group(deg).relations])
        aug = hstack([stacked, rel]) if rel.cols else stacked
        bn = b.group(deg).ngens
        cols = []
        for j in range(bn):
            rhs = tuple(1 if idx == j else 0 for idx in range(bn)) + tuple(target_t.col(j))
            x = solve(aug, rhs)
            assert x is not None, "pullback lift must exist for a splitting"
            cols.append(list(x[: zb.ngens]))
        ntilde_comps[deg] = (IntMatrix.from_cols(cols, rows=zb.ngens)
                             if cols else IntMatrix.zeros(zb.ngens, 0))
    ntilde = ChainMap(b, ext.Z, ntilde_comps, validate=True)
    h = ext.gtilde @ ntilde
    if (problem.q @ h) != problem.g or (h @ problem.i) != problem.f:
        raise AssertionError("reconstructed lift fails a square identity")
    return h


def splitting_from_lift(ext: Extension, h: ChainMap) -> ChainMap:
    """The inverse correspondence: a diagonal h induces the splitting
    b -> class of (h b, b) in T."""
    problem = ext.problem
    if (problem.q @ h) != problem.g or (h @ problem.i) != problem.f:
        raise NotASplitting("map is not a diagonal of the square")
    b = problem.i.dst
    sigma_comps = {}
    for n in b.degrees():
        # ambient order in Z's container is (L, B)
        pair = vstack([h.component(n).matrix,
                       IntMatrix.identity(b.group(n).ngens)])
        pair_hom = mk_hom(b.group(n), ext.z_incl.dst.group(n), pair)
        sigma_comps[n] = factor_through(ext.z_incl.component(n), pair_hom).matrix
    sigma = ChainMap(b, ext.Z, sigma_comps, validate=True)
    n_comps = {}
    for n in ext.C.degrees():
        n_comps[n] = (ext.ptilde @ sigma).component(n).matrix
    n_map = ChainMap(ext.C, ext.T, n_comps, validate=True)
    if (ext.r @ n_map) != identity_chain_map(ext.C):
        raise AssertionError("induced map does not split the extension")
    return n_map


def solve_lift(problem: LiftProblem) -> ChainMap:
    """Dispatch on the two liftable configurations; no search outside them."""
    cls_i = classify(problem.i)
    cls_q = classify(problem.q)
    if cls_i.cofibration and cls_q.acyclic_fibration:
        ext = build_T(problem)
        section = split_ses(ext.r)
        return lift_from_splitting(ext, section)
    if cls_i.acyclic_cofibration and cls_q.fibration:
        ext = build_T(problem)
        section = section_over_contractible(ext.r)
        return lift_from_splitting(ext, section)
    raise NotLiftable("square is not in a supported configuration")


def rlp_instance(q: ChainMap, gen: str, n: int, a=None, bprime=None):
    """One lifting instance against a generating cofibration over Z.

    gen="disk" (empty -> disk at n): return x in A_{n+1} with q(x) = b'.
    gen="sphere" (sphere -> disk at n): given a cycle a in degree n and b'
    in B_{n+1} with d b' = q(a), return x with d x = a and q(x) = b', found
    by one integer linear system.  None certifies an unsolvable instance.
    """
    src, dst = q.src, q.dst
    if bprime is None:
        raise PreconditionFailed("instance needs a target element")
    bprime = dst.group(n + 1).canon(tuple(bprime))
    if gen == "disk":
        return preimage(q.component(n + 1), bprime)
    if gen != "sphere":
        raise ValueError(f"unknown generator kind: {gen}")
    if a is None:
        raise PreconditionFailed("sphere instance needs a cycle")
    a = src.group(n).canon(tuple(a))
    if not src.group(n - 1).contains_zero(src.diff(n).matrix.mul_vec(a)):
        raise PreconditionFailed("given element is not a cycle")
    d_bprime = dst.group(n).canon(dst.diff(n + 1).matrix.mul_vec(bprime))
    q_a = dst.group(n).canon(q.component(n).matrix.mul_vec(a))
    if d_bprime != q_a:
        raise PreconditionFailed("square does not commute: d b' differs from q a")
    stacked = vstack([src.diff(n + 1).matrix, q.component(n + 1).matrix])
    rel = blockdiag([src.group(n).relations, dst.group(n + 1).relations])
    aug = hstack([stacked, rel]) if rel.cols else stacked
    rhs = tuple(a) + tuple(bprime)
    x = solve(aug, rhs)
    if x is None:
        return None
    return tuple(x[: src.group(n + 1).ngens])
