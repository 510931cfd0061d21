"""Pushouts, pullbacks, the pushout product, and properness certificates.

Pushouts are cokernels of the difference map out of the span corner;
pullbacks are degreewise kernels of the difference map into the cospan
corner.  Both carry universal-factorization operations.  The pushout
product of two cofibrations is certified by exhibiting its cokernel as the
tensor of the two cokernels; properness is certified by classifying the
opposite map of the square directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCofibration, PreconditionFailed
from .abelian import factor_through, mk_hom
from .complexes import (
    ChainComplex,
    ChainMap,
    cokernel_complex,
    dsum_complex,
    induced_map,
    kernel_complex,
    tensor,
    tensor_map,
)
from .intlinalg import hstack
from .modelcls import MapClassification, classify


@dataclass
class PushoutData:
    """P = (B + C) / (i - f)(A) with its two legs and universal factorization."""

    complex: ChainComplex
    from_first: ChainMap    # B -> P
    from_second: ChainMap   # C -> P
    proj: ChainMap          # B + C -> P
    sum_complex: ChainComplex
    span: tuple             # (i, f)

    def induce(self, u, v):
        """The unique map P -> Q with (P -> Q) o legs = (u, v)."""
        i, f = self.span
        if (u @ i) != (v @ f):
            raise PreconditionFailed("cocone does not commute over the span")
        comps = {}
        for n in self.complex.degrees():
            m = hstack([u.component(n).matrix, v.component(n).matrix])
            comps[n] = mk_hom(self.complex.group(n), u.dst.group(n), m)
        return ChainMap(self.complex, u.dst, comps, validate=True)


def pushout(i: ChainMap, f: ChainMap) -> PushoutData:
    """Pushout of B <--i-- A --f--> C."""
    if i.src != f.src:
        raise PreconditionFailed("span legs do not share a source")
    total, incls, projs = dsum_complex([i.dst, f.dst])
    diff = (incls[0] @ i) - (incls[1] @ f)
    p, proj = cokernel_complex(diff)
    return PushoutData(
        complex=p,
        from_first=proj @ incls[0],
        from_second=proj @ incls[1],
        proj=proj,
        sum_complex=total,
        span=(i, f),
    )


@dataclass
class PullbackData:
    """P = {(x, y) : first(x) = second(y)} with projections and induction."""

    complex: ChainComplex
    to_first: ChainMap      # P -> src(first)
    to_second: ChainMap     # P -> src(second)
    incl: ChainMap          # P -> src(first) + src(second)
    cospan: tuple           # (first, second)

    def induce(self, u, v):
        """The unique map W -> P with legs u, v (first o u = second o v)."""
        first, second = self.cospan
        if (first @ u) != (second @ v):
            raise PreconditionFailed("cone does not commute over the cospan")
        comps = {}
        for n in u.src.degrees():
            pair = mk_hom(
                u.src.group(n),
                self.incl.dst.group(n),
                _stack_cols(u.component(n).matrix, v.component(n).matrix),
            )
            comps[n] = factor_through(self.incl.component(n), pair)
        return ChainMap(u.src, self.complex, comps, validate=True)


def _stack_cols(m1, m2):
    from .intlinalg import vstack

    return vstack([m1, m2])


def pullback(first: ChainMap, second: ChainMap) -> PullbackData:
    """Pullback of src(first) --first--> M <--second-- src(second)."""
    if first.dst != second.dst:
        raise PreconditionFailed("cospan legs do not share a target")
    total, incls, projs = dsum_complex([first.src, second.src])
    diff = (first @ projs[0]) - (second @ projs[1])
    p, incl = kernel_complex(diff)
    return PullbackData(
        complex=p,
        to_first=projs[0] @ incl,
        to_second=projs[1] @ incl,
        incl=incl,
        cospan=(first, second),
    )


@dataclass
class PushoutProductCert:
    """The induced map out of the pushout corner, with its cofibration
    certificate: injectivity plus an isomorphism from its cokernel onto the
    tensor of the two cokernels."""

    pushout: PushoutData
    k: ChainMap                      # P -> B (x) D
    U: ChainComplex                  # coker(i)
    V: ChainComplex                  # coker(j)
    m: ChainMap                      # coker(k) -> U (x) V
    coker_k: ChainComplex
    classification: MapClassification


def pushout_product(i: ChainMap, j: ChainMap) -> PushoutProductCert:
    """For cofibrations i: A -> B and j: C -> D, the induced map
    P = (B(x)C) +_{A(x)C} (A(x)D) -> B(x)D, certified to be a cofibration
    (acyclic whenever one input is)."""
    cls_i = classify(i)
    cls_j = classify(j)
    if not cls_i.cofibration or not cls_j.cofibration:
        raise NotCofibration("both inputs must be cofibrations")
    i_tensor_c = tensor_map(i, identity_of(j.src))
    a_tensor_j = tensor_map(identity_of(i.src), j)
    po = pushout(i_tensor_c, a_tensor_j)
    b_tensor_j = tensor_map(identity_of(i.dst), j)
    i_tensor_d = tensor_map(i, identity_of(j.dst))
    k = po.induce(b_tensor_j, i_tensor_d)
    u, pu = cokernel_complex(i)
    v, pv = cokernel_complex(j)
    uv = tensor(u, v)
    pq = tensor_map(pu, pv)
    ck, proj_ck = cokernel_complex(k)
    m_comps = {}
    for n in ck.degrees():
        m_comps[n] = mk_hom(ck.group(n), uv.group(n), pq.component(n).matrix)
    m = ChainMap(ck, uv, m_comps, validate=True)
    cls_k = classify(k)
    if not cls_k.cofibration:
        raise AssertionError("pushout product failed its cofibration certificate")
    for n in set(ck.degrees()) | set(uv.degrees()):
        if not m.component(n).is_iso():
            raise AssertionError("cokernel comparison is not an isomorphism")
    if (cls_i.acyclic_cofibration or cls_j.acyclic_cofibration) and not cls_k.acyclic_cofibration:
        raise AssertionError("acyclicity certificate failed")
    return PushoutProductCert(po, k, u, v, m, ck, cls_k)


def identity_of(c):
    from .complexes import identity_chain_map

    return identity_chain_map(c)


@dataclass
class ProperReport:
    """Certificate that the opposite map of a (co)base-change square of a
    weak equivalence is again a weak equivalence, with the homology ladder
    evidence."""

    kind: str
    opposite: ChainMap
    classification: MapClassification
    ladder: list

    @property
    def certified(self):
        return self.classification.quasi_iso


def check_proper(kind: str, one: ChainMap, other: ChainMap) -> ProperReport:
    """kind="pushout": one = cofibration i: A -> B, other = weak equivalence
    f: A -> C; certifies the induced B -> P.  kind="pullback": one =
    fibration q: L -> M, other = weak equivalence g: B -> M; certifies the
    induced P -> L."""
    if kind == "pushout":
        cls_i = classify(one)
        cls_f = classify(other)
        if not cls_i.cofibration:
            raise PreconditionFailed("first map must be a cofibration")
        if not cls_f.weak_equivalence:
            raise PreconditionFailed("second map must be a weak equivalence")
        po = pushout(one, other)
        opposite = po.from_first
        j_new = po.from_second
        coker_i, _ = cokernel_complex(one)
        coker_j, _ = cokernel_complex(j_new)
        h_comps = {}
        for n in coker_i.degrees():
            h_comps[n] = mk_hom(coker_i.group(n), coker_j.group(n),
                                (po.from_first.component(n)).matrix)
        h = ChainMap(coker_i, coker_j, h_comps, validate=True)
        ladder = []
        for n in sorted(set(coker_i.window(1)) | set(coker_j.window(1))):
            hn = induced_map(h, n)
            ladder.append({
                "degree": n,
                "cokernel_map_iso": hn.is_iso(),
                "source_factors": list(coker_i.homology(n).group.invariant_factors),
                "target_factors": list(coker_j.homology(n).group.invariant_factors),
            })
        if not all(row["cokernel_map_iso"] for row in ladder):
            raise AssertionError("cokernel comparison of the pushout is not an isomorphism")
        return ProperReport("pushout", opposite, classify(opposite), ladder)
    if kind == "pullback":
        cls_q = classify(one)
        cls_g = classify(other)
        if not cls_q.fibration:
            raise PreconditionFailed("first map must be a fibration")
        if not cls_g.weak_equivalence:
            raise PreconditionFailed("second map must be a weak equivalence")
        pb = pullback(one, other)
        opposite = pb.to_first        # P -> L, covering the weak equivalence
        pulled_fib = pb.to_second     # P -> B, the pulled-back fibration
        ker_q, _ = kernel_complex(one)
        ker_new, ker_incl = kernel_complex(pulled_fib)
        # the kernel of the pulled-back fibration maps isomorphically onto ker q
        comp_comps = {}
        for n in ker_new.degrees():
            to_l = (pb.to_first @ ker_incl).component(n)
            comp_comps[n] = factor_through(
                kernel_complex(one)[1].component(n), to_l)
        comp = ChainMap(ker_new, ker_q, comp_comps, validate=True)
        ladder = []
        for n in sorted(set(ker_q.window(1)) | set(ker_new.window(1))):
            cn = induced_map(comp, n)
            ladder.append({
                "degree": n,
                "kernel_map_iso": cn.is_iso(),
                "source_factors": list(ker_new.homology(n).group.invariant_factors),
                "target_factors": list(ker_q.homology(n).group.invariant_factors),
            })
        if not all(row["kernel_map_iso"] for row in ladder):
            raise AssertionError("kernel comparison of the pullback is not an isomorphism")
        return ProperReport("pullback", opposite, classify(opposite), ladder)
    raise ValueError(f"unknown square kind: {kind}")
