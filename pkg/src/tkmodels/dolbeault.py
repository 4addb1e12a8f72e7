"""Transverse Kähler model specs, their de Rham and Dolbeault models, and the ddbar machinery.

A spec is a bigraded basic algebra ``O`` (usually a cohomology ring with zero
differentials) together with real degree-1 generators ``W`` whose
differentials land in ``O^2``, and a choice of ``W^{1,0}`` inside
``W ⊗ C``.  Everything is computed over Q(i) where complex numbers appear.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import (ChainMap, DgaMorphism, QuasiIsoReport, algebra_complex, cohomology,
                         dolbeault_cohomology, is_quasi_isomorphism)
from .exactfield import (QQI, I, Subspace, conj, image, kernel, normalize, rank, solve)
from .gca import Algebra, CutoffError, Generator, PresentationError, translate


def bar_name(z: str) -> str:
    return f"{z}b"


def bidegree_parts(a: Algebra, p) -> dict:
    out: dict = {}
    for k, c in p.items():
        out.setdefault(a.bidegree_of(k), {})[k] = c
    return out


@dataclass
class TKSpec:
    """Basic algebra plus the space W of a transverse Kähler model.

    ``split`` lists the W^{1,0} basis vectors as ``{w name: coefficient}``;
    their conjugates span W^{0,1}.  ``znames`` names them in the Dolbeault
    model, where the conjugate of ``z`` is called ``z + "b"``.
    """

    base: Algebra
    w: tuple
    dw: dict
    split: tuple
    znames: tuple = ()
    name: str = ""
    cutoff: int | None = None

    def __post_init__(self):
        b = self.base
        if not b.bigraded:
            raise PresentationError("the basic algebra must be bigraded")
        self.w = tuple(self.w)
        self.cutoff = b.cutoff if self.cutoff is None else self.cutoff
        if self.cutoff > b.cutoff:
            self.base = b = b.with_cutoff(self.cutoff)
        self.dw = {n: (b.parse(v) if isinstance(v, str) else b.coerce(v)) for n, v in self.dw.items()}
        for n in self.w:
            if n in b.index:
                raise PresentationError(f"W generator {n} collides with a basic generator")
        for n, v in self.dw.items():
            if n not in self.w:
                raise PresentationError(f"d assigned to {n}, which is not in W")
            if any(b.degree_of(k) != 2 for k in v):
                raise PresentationError(f"d{n} must have degree 2")
            if b.diff(v):
                raise PresentationError(f"d{n} = {b.format(v)} is not closed in the basic algebra")
            if b.complexified().sub(b.complexified().conjugate(v), b.complexified().coerce(v)):
                raise PresentationError(f"d{n} is not real")
        self.split = tuple({k: QQI(c) for k, c in vec.items() if c} for vec in self.split)
        if len(self.w) != 2 * len(self.split):
            raise PresentationError(f"dim W = {len(self.w)} but dim W^(1,0) = {len(self.split)}; need dim W = 2 dim W^(1,0)")
        if not self.znames:
            self.znames = tuple(f"z{j + 1}" for j in range(len(self.split))) if len(self.split) > 1 else ("z",)[:len(self.split)]
        self.znames = tuple(self.znames)
        rows = [[vec.get(n, 0) for n in self.w] for vec in self.split]
        rows += [[conj(x) for x in r] for r in rows]
        if rows and rank(rows) != len(self.w):
            raise PresentationError("W^(1,0) and its conjugate do not span W ⊗ C")
        for z in self.znames:
            if z in b.index or bar_name(z) in b.index or z in self.w:
                raise PresentationError(f"name {z} is already used")
        for z, dz in zip(self.znames, self.dz_all()):
            if bidegree_parts(self._bc, dz).get((0, 2)):
                raise PresentationError(f"d{z} has a (0,2) part, so dbar {z} is not of type (1,1)")

    @property
    def _bc(self) -> Algebra:
        return self.base.complexified()

    @property
    def k(self) -> int:
        return len(self.split)

    def dz_all(self) -> list:
        bc = self._bc
        out = []
        for vec in self.split:
            acc: dict = {}
            for n, c in vec.items():
                acc = bc.add(acc, bc.scale(bc.coerce(self.dw.get(n, {})), c))
            out.append(acc)
        return out

    def with_base(self, base: Algebra) -> "TKSpec":
        return TKSpec(base, self.w, self.dw, self.split, self.znames, self.name, self.cutoff)


TransverseKahlerModelSpec = TKSpec


def _base_differentials(base: Algebra, target: Algebra, which: str) -> dict:
    return {g.name: translate(base.generator_differential(g.name, which), base, target) for g in base.gens}


def build_de_rham_model(s: TKSpec) -> Algebra:
    """``A = O ⊗ ∧W`` with ``d = d_O`` on O and ``d w = dw``."""
    b = s.base
    gens = [Generator(g.name, g.degree, g.bidegree, g.conjugate, g.role or "H", g.weight) for g in b.gens]
    gens += [Generator(n, 1, role="W", weight=(1, 1)) for n in s.w]
    rel = [{g.name: e for g, e in zip(b.gens, r) if e} for r in b.relations]
    a = Algebra(gens, rel, field=b.field, cutoff=s.cutoff, name=s.name or b.name)
    d = _base_differentials(b, a, "d")
    d.update({n: translate(s.dw.get(n, {}), b, a) for n in s.w})
    return a.with_differentials(d=d)


def build_dolbeault_model(s: TKSpec) -> Algebra:
    """``B = O ⊗ ∧(W^{1,0} ⊕ W^{0,1})`` over Q(i) with ``del`` and ``dbar``.

    For ``z`` in W^{1,0}, ``dbar z`` is the (1,1) part and ``del z`` the
    (2,0) part of ``dz``; the conjugate generator gets the conjugate data.
    """
    b = s._bc
    gens = list(b.gens)
    for z in s.znames:
        gens.append(Generator(z, 1, (1, 0), bar_name(z), "W"))
        gens.append(Generator(bar_name(z), 1, (0, 1), z, "W"))
    rel = [{g.name: e for g, e in zip(b.gens, r) if e} for r in b.relations]
    out = Algebra(gens, rel, field=QQI, cutoff=s.cutoff, bigraded=True, name=s.name or b.name)
    dbar = _base_differentials(b, out, "dbar")
    dee = _base_differentials(b, out, "del")
    for z, dz in zip(s.znames, s.dz_all()):
        parts = bidegree_parts(b, dz)
        dbar[z] = translate(parts.get((1, 1), {}), b, out)
        dee[z] = translate(parts.get((2, 0), {}), b, out)
        cparts = bidegree_parts(b, b.conjugate(dz))
        dbar[bar_name(z)] = translate(cparts.get((0, 2), {}), b, out)
        dee[bar_name(z)] = translate(cparts.get((1, 1), {}), b, out)
    return out.with_differentials(dbar=dbar, dee=dee)


# ---------------------------------------------------------------------------
# the ddbar lemma and Bott-Chern cohomology


def _mat(a: Algebra, op, n: int, m: int):
    return a.operator_matrix(op, a.basis(n), a.basis(m))


def _img(a: Algebra, op, n: int) -> Subspace:
    """Image of ``op`` from degree n-? into degree n, ``op`` given with its source degree."""
    src, shift = op
    if n - shift < 0:
        return Subspace.zero(a.dim(n))
    m = _mat(a, src, n - shift, n)
    return image(m, a.dim(n)) if a.dim(n - shift) else Subspace.zero(a.dim(n))


def _ker(a: Algebra, op, n: int) -> Subspace:
    return kernel(_mat(a, op, n, n + 1), a.dim(n))


@dataclass
class DdbarReport:
    ok: bool
    degrees: dict              # n -> (dim ker del ∩ ker dbar ∩ im d, dim im del dbar)
    first_failure: int | None = None
    witness: dict | None = None


def ddbar_check(b: Algebra, up_to: int | None = None) -> DdbarReport:
    """Compare ``ker del ∩ ker dbar ∩ im d`` with ``im del dbar`` in each degree."""
    if not b.bigraded:
        raise PresentationError("the ddbar lemma needs a bigraded presentation")
    top = b.cutoff - 1 if up_to is None else up_to
    if top > b.cutoff - 1:
        raise CutoffError(f"ddbar check up to {top} needs cutoff >= {top + 1}")
    dee = lambda p: b.diff(p, "del")
    dbar = lambda p: b.diff(p, "dbar")
    d = lambda p: b.diff(p, "d")
    ddb = lambda p: b.diff(b.diff(p, "dbar"), "del")
    degrees, first, wit = {}, None, None
    for n in range(top + 1):
        lhs = _ker(b, dee, n) & _ker(b, dbar, n) & _img(b, (d, 1), n)
        rhs = _img(b, (ddb, 2), n)
        if not rhs <= lhs:
            raise AssertionError(f"im del dbar is not inside ker del ∩ ker dbar ∩ im d in degree {n}")
        degrees[n] = (lhs.dim, rhs.dim)
        if lhs.dim != rhs.dim and first is None:
            first = n
            extra = [v for v in lhs.rows if not rhs.contains(v)][0]
            wit = b.from_vector(extra, b.basis(n))
    return DdbarReport(first is None, degrees, first, wit)


@dataclass
class BottChernReport:
    dims: dict                 # (p, q) -> dim (ker del ∩ ker dbar) / im del dbar
    to_de_rham: dict           # n -> (rank, dim BC in degree n, dim H^n) of the natural map
    to_dolbeault: dict         # (p, q) -> (rank, dim BC, dim H^{p,q}_dbar)

    @property
    def de_rham_iso(self) -> bool:
        return all(r == s == t for r, s, t in self.to_de_rham.values())

    @property
    def dolbeault_iso(self) -> bool:
        return all(r == s == t for r, s, t in self.to_dolbeault.values())


def _bidegree_space(b: Algebra, n: int, p: int) -> Subspace:
    keys = b.basis(n)
    vecs = []
    for j, k in enumerate(keys):
        if b.bidegree_of(k)[0] == p:
            v = [0] * len(keys)
            v[j] = 1
            vecs.append(v)
    return Subspace.span(vecs, len(keys))


def bott_chern(b: Algebra, up_to: int | None = None) -> BottChernReport:
    """Bott-Chern dims per bidegree and the ranks of the maps to de Rham and Dolbeault."""
    top = b.cutoff - 1 if up_to is None else up_to
    dee = lambda p: b.diff(p, "del")
    dbar = lambda p: b.diff(p, "dbar")
    d = lambda p: b.diff(p, "d")
    ddb = lambda p: b.diff(b.diff(p, "dbar"), "del")
    dims, to_dr, to_dol = {}, {}, {}
    for n in range(top + 1):
        zbc = _ker(b, dee, n) & _ker(b, dbar, n)
        bbc = _img(b, (ddb, 2), n)
        zd, bd = _ker(b, d, n), _img(b, (d, 1), n)
        zdb, bdb = _ker(b, dbar, n), _img(b, (dbar, 1), n)
        to_dr[n] = ((zbc + bd).dim - bd.dim, zbc.dim - bbc.dim, zd.dim - bd.dim)
        for p in range(n + 1):
            slot = _bidegree_space(b, n, p)
            z, bb = zbc & slot, bbc & slot
            zq, bq = zdb & slot, bdb & slot
            dims[(p, n - p)] = z.dim - bb.dim
            to_dol[(p, n - p)] = ((z + bq).dim - bq.dim, z.dim - bb.dim, zq.dim - bq.dim)
    return BottChernReport(dims, to_dr, to_dol)


def frolicher_check(b: Algebra, up_to: int | None = None) -> tuple:
    """``(ok, equal, dolbeault totals, de Rham dims)`` for sum_{p+q=r} h^{p,q} >= b_r."""
    top = b.cutoff - 1 if up_to is None else up_to
    dol = dolbeault_cohomology(b, top).series()
    dr = cohomology(b, "d", top).series()
    ok = all(x >= y for x, y in zip(dol, dr))
    return ok, dol == dr, dol, dr


# ---------------------------------------------------------------------------
# the chain through ker d^c and ker del


def _unit_vectors(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _tensor_spaces(e: Algebra, base: Algebra, spaces: list, wnames, top: int) -> list:
    """Degreewise spans of ``spaces[j] ⊗ (monomials in wnames)`` inside ``e``."""
    widx = [e.index[n] for n in wnames]
    others = [i for i in range(len(e.gens)) if i not in widx]
    wmonos = {m: [k for k in e.basis(m) if not any(k[i] for i in others)] for m in range(top + 1)}
    lifted = {j: [translate(base.from_vector(v, base.basis(j)), base, e) for v in spaces[j]] for j in range(top + 1)}
    out = []
    for n in range(top + 1):
        keys = e.basis(n)
        vecs = []
        for j in range(n + 1):
            for x in lifted[j]:
                for mono in wmonos[n - j]:
                    vecs.append(e.to_vector(e.mul(x, {mono: e.field(1)}), keys))
        out.append(Subspace.span(vecs, len(keys)))
    return out


def _in_coordinates(big: list, small: list) -> list:
    """Express the subspaces ``small[n]`` in the row basis of ``big[n]``."""
    return [Subspace.span([b.coordinates(v) for v in s.rows], b.dim) for b, s in zip(big, small)]


def _solve_closed(base: Algebra, closed: Subspace, op, n: int, target, source_slot=None, target_slot=None):
    """Find ``k`` in ``closed`` (degree n) and ``a`` in degree n-1 with ``k + op(a) = target``."""
    keys, prev = base.basis(n), base.basis(n - 1)
    cols = [list(r) for r in closed.rows] + [base.to_vector(op({m: base.field(1)}), keys) for m in prev]
    mat = [[c[i] for c in cols] for i in range(len(keys))]
    sol = solve(mat, base.to_vector(target, keys), len(cols))
    if sol is None:
        return None
    kc, ac = sol[:closed.dim], sol[closed.dim:]
    k = base.from_vector([sum((c * r[i] for c, r in zip(kc, closed.rows)), 0) for i in range(len(keys))], keys)
    a = base.from_vector(ac, prev)
    if target_slot is not None:
        k = bidegree_parts(base, k).get(target_slot, {})
        a = bidegree_parts(base, a).get(source_slot, {})
    return k, a


@dataclass
class ChainCertificate:
    ok: bool
    arrows: list                                   # (label, QuasiIsoReport)
    beta1: dict = field(default_factory=dict)      # w -> d^c-closed representative of dw
    shift: dict = field(default_factory=dict)      # w -> a_w with dw - beta1(w) = d a_w
    dbar_prime: dict = field(default_factory=dict) # z -> del-closed replacement of dbar z
    correction: dict = field(default_factory=dict) # z -> b_z with dbar b_z = dbar z - dbar' z
    del_exact: dict = field(default_factory=dict)  # z -> whether (dbar' - dbar) z is del-exact
    reason: str = ""

    def __bool__(self):
        return self.ok


def dc_subalgebra_chain(s: TKSpec, up_to: int | None = None) -> ChainCertificate:
    """Certify the four arrows through ``ker d^c ⊗ ∧W`` and ``ker del ⊗ ∧(W^{1,0} ⊕ W^{0,1})``.

    De Rham side: ``ker d^c ⊗ ∧W -> O ⊗ ∧W`` and ``ker d^c ⊗ ∧W -> H_{d^c} ⊗ ∧W``.
    Dolbeault side: ``(ker del ⊗ ∧, dbar') -> (O ⊗ ∧, dbar)`` and
    ``(ker del ⊗ ∧, dbar') -> (H_del ⊗ ∧, dbar)``.  Complexes stop at
    ``cutoff - 1``, so the certificates cover degrees ``<= cutoff - 2``.
    """
    o = s._bc
    top = s.cutoff - 1
    up_to = top - 1 if up_to is None else up_to
    rep = ddbar_check(o)
    if not rep.ok:
        return ChainCertificate(False, [], reason=f"ddbar lemma fails in degree {rep.first_failure}; chain not attempted")
    dee = lambda p: o.diff(p, "del")
    dbar = lambda p: o.diff(p, "dbar")
    d = lambda p: o.diff(p, "d")
    dc = lambda p: o.diff(p, "dc")
    kdc = [_ker(o, dc, j).rows for j in range(top + 1)]
    idc = [_img(o, (dc, 1), j).rows for j in range(top + 1)]
    kdel = [_ker(o, dee, j).rows for j in range(top + 1)]
    idel = [_img(o, (dee, 1), j).rows for j in range(top + 1)]
    zbc2 = _ker(o, dee, 2) & _ker(o, dbar, 2)
    arrows = []

    # de Rham side
    e = build_de_rham_model(s).complexified()
    beta1, shift = {}, {}
    for w in s.w:
        sol = _solve_closed(o, zbc2, d, 2, o.coerce(s.dw.get(w, {})))
        if sol is None:
            return ChainCertificate(False, arrows, reason=f"d{w} has no del- and dbar-closed representative")
        beta1[w], shift[w] = sol
    e1 = e.with_differentials(d={**{g.name: e.generator_differential(g.name) for g in e.gens},
                                 **{w: translate(beta1[w], o, e) for w in s.w}})
    psi = DgaMorphism(e1, e, {**{g.name: e.gen(g.name) for g in o.gens},
                              **{w: e.sub(e.gen(w), translate(shift[w], o, e)) for w in s.w}}).check()
    cx1 = algebra_complex(e1, "d", top)
    sspaces = _tensor_spaces(e1, o, kdc, s.w, top)
    scx, incl = cx1.subcomplex(sspaces)
    to_e = incl.then(ChainMap(cx1, algebra_complex(e, "d", top), [psi.matrix(n) for n in range(top + 1)]))
    arrows.append(("ker d^c ⊗ ∧W -> O ⊗ ∧W", is_quasi_isomorphism(to_e, up_to)))
    ideal = _in_coordinates(sspaces, _tensor_spaces(e1, o, idc, s.w, top))
    _, proj = scx.quotient(ideal)
    arrows.append(("ker d^c ⊗ ∧W -> H_{d^c} ⊗ ∧W", is_quasi_isomorphism(proj, up_to)))

    # Dolbeault side
    bmod = build_dolbeault_model(s)
    zb = [n for z in s.znames for n in (z, bar_name(z))]
    new_dbar, corr, exact = {}, {}, {}
    for n in zb:
        target = o.coerce(translate(bmod.generator_differential(n, "dbar"), bmod, o))
        slot = (1, 1) if n in s.znames else (0, 2)
        src_slot = (1, 0) if n in s.znames else (0, 1)
        zslot = zbc2 & _bidegree_space(o, 2, slot[0])
        sol = _solve_closed(o, zslot, dbar, 2, target, src_slot, slot)
        if sol is None:
            return ChainCertificate(False, arrows, beta1, shift, reason=f"dbar {n} has no del-closed replacement")
        new_dbar[n], corr[n] = sol
        diff = o.sub(new_dbar[n], target)
        exact[n] = _img(o, (dee, 1), 2).contains(o.to_vector(diff, o.basis(2)))
    bprime = bmod.with_differentials(
        dbar={**{g.name: bmod.generator_differential(g.name, "dbar") for g in bmod.gens},
              **{n: translate(new_dbar[n], o, bmod) for n in zb}},
        dee={**{g.name: bmod.generator_differential(g.name, "del") for g in o.gens}, **{n: {} for n in zb}})
    phi = DgaMorphism(bprime, bmod, {**{g.name: bmod.gen(g.name) for g in o.gens},
                                     **{n: bmod.sub(bmod.gen(n), translate(corr[n], o, bmod)) for n in zb}},
                      "dbar", "dbar").check()
    cxp = algebra_complex(bprime, "dbar", top)
    dspaces = _tensor_spaces(bprime, o, kdel, zb, top)
    dcx, dincl = cxp.subcomplex(dspaces)
    to_b = dincl.then(ChainMap(cxp, algebra_complex(bmod, "dbar", top), [phi.matrix(n) for n in range(top + 1)]))
    arrows.append(("(ker del ⊗ ∧, dbar') -> (O ⊗ ∧, dbar)", is_quasi_isomorphism(to_b, up_to)))
    dideal = _in_coordinates(dspaces, _tensor_spaces(bprime, o, idel, zb, top))
    _, dproj = dcx.quotient(dideal)
    arrows.append(("(ker del ⊗ ∧, dbar') -> (H_del ⊗ ∧, dbar)", is_quasi_isomorphism(dproj, up_to)))
    ok = all(r.ok for _, r in arrows)
    return ChainCertificate(ok, arrows, beta1, shift, new_dbar, corr, exact)


def dc_zigzag(a: Algebra, up_to: int) -> list:
    """``a <- ker d^c -> ker d^c / im d^c`` for a bigraded presentation with both differentials."""
    top = up_to + 1
    if top > a.cutoff - 1:
        raise CutoffError(f"up_to={up_to} needs cutoff >= {up_to + 2}")
    dc = lambda p: a.diff(p, "dc")
    kdc = [_ker(a, dc, j) for j in range(top + 1)]
    idc = [_img(a, (dc, 1), j) for j in range(top + 1)]
    cx = algebra_complex(a, "d", top)
    sub, incl = cx.subcomplex(kdc)
    quo, proj = sub.quotient(_in_coordinates(kdc, idc))
    zero = all(not any(any(r) for r in m) for m in quo.mats)
    rq = is_quasi_isomorphism(proj, up_to)
    if not zero:
        rq = QuasiIsoReport(False, up_to, rq.ranks, None, "nonzero induced differential")
    return [("ker d^c -> A", is_quasi_isomorphism(incl, up_to)), ("ker d^c -> H_{d^c}", rq)]


# ---------------------------------------------------------------------------
# Vaisman models


@dataclass
class VaismanComparison:
    ok: bool
    theta: dict                  # theta as a combination of W generators
    theta_j: dict                # theta∘J likewise
    kahler: dict                 # omega = d(theta∘J) in the basic algebra
    morphism: DgaMorphism | None
    certificate: QuasiIsoReport | None
    de_rham: list
    dolbeault_totals: list
    first_betti_identity: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def vaisman_tot_compare(s: TKSpec, up_to: int | None = None) -> VaismanComparison:
    """Isomorphism ``A ⊗ C -> (Tot B, dbar)`` for a Vaisman-shaped spec.

    Looks for ``u = λ z`` in W^{1,0} with ``θ = Re u`` closed and
    ``ω = d(Im u)`` a nonzero (1,1) class, so ``dbar u = iω`` and
    ``dbar ū = 0``; then sends ``θ -> ū`` and ``θ∘J -> -i u``.
    """
    fail = lambda why: VaismanComparison(False, {}, {}, {}, None, None, [], [], False, why)
    if len(s.w) != 2 or s.k != 1:
        return fail("a Vaisman-shaped spec has dim W = 2")
    o = s._bc
    wx, wy = s.w
    dz = s.dz_all()[0]
    keys = o.basis(2)
    v = o.to_vector(dz, keys)
    re = [x.re for x in map(QQI, v)]
    im = [x.im for x in map(QQI, v)]
    # Re(λ dz) = p Re(dz) - q Im(dz) = 0
    ker = kernel([[a, -b] for a, b in zip(re, im)], 2)
    if ker.dim != 1:
        return fail("no multiple of W^(1,0) has closed real part" if ker.dim == 0 else "dz = 0, the Kähler class vanishes")
    p, q = ker.rows[0]
    lam = QQI(p) + I * q
    zvec = s.split[0]
    u = {n: normalize(lam * zvec.get(n, 0)) for n in s.w}
    theta = {n: normalize((c + conj(c)) / 2) for n, c in u.items()}
    theta_j = {n: normalize((c - conj(c)) / (2 * I)) for n, c in u.items()}
    omega: dict = {}
    for n, c in theta_j.items():
        omega = o.add(omega, o.scale(o.coerce(s.dw.get(n, {})), c))
    if not omega:
        return fail("the Kähler class d(θ∘J) is zero")
    if set(bidegree_parts(o, omega)) != {(1, 1)}:
        return fail("d(θ∘J) is not of type (1,1)")
    a = build_de_rham_model(s).complexified()
    b = build_dolbeault_model(s)
    z = s.znames[0]
    ub = b.scale(b.gen(z), lam)
    ubar = b.scale(b.gen(bar_name(z)), conj(lam))
    if b.sub(b.diff(ub, "dbar"), b.scale(translate(omega, o, b), I)) or b.diff(ubar, "dbar"):
        return fail("dbar u != i ω or dbar ū != 0")
    # x, y in terms of θ, θ∘J
    m = [[theta[wx], theta[wy]], [theta_j[wx], theta_j[wy]]]
    det = normalize(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    if not det:
        return fail("θ and θ∘J are dependent")
    inv = [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
    f_theta, f_theta_j = ubar, b.scale(ub, -I)
    images = {g.name: b.gen(g.name) for g in o.gens}
    for idx, n in enumerate(s.w):
        images[n] = b.add(b.scale(f_theta, inv[idx][0]), b.scale(f_theta_j, inv[idx][1]))
    f = DgaMorphism(a, b, images, "d", "dbar")
    ok, msg = f.validate()
    if not ok:
        return fail(msg)
    top = s.cutoff - 1 if up_to is None else up_to
    gen_matrix = [[b.to_vector(images[n], b.basis(1)) for n in s.w]]
    bij = rank([list(r) for r in zip(*gen_matrix[0])]) == 2
    cert = is_quasi_isomorphism(f.chain_map(top + 1), top)
    dr = cohomology(a, "d", top).series()
    dol = dolbeault_cohomology(b, top).series()
    hb = dolbeault_cohomology(o.with_cutoff(max(o.cutoff, 2)), 1)
    b1_ok = len(dr) > 1 and dr[1] == hb.dim((1, 0)) + hb.dim((0, 1)) + 1
    okall = bool(cert) and bij and dr == dol
    return VaismanComparison(okall, theta, theta_j, omega, f, cert, dr, dol, b1_ok,
                             "" if okall else "comparison failed")
