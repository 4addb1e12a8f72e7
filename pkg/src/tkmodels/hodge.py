"""Filtrations, (mixed) Hodge structures, canonical bigradings and the weight bookkeeping of models.

Vector spaces here are coordinate spaces over Q(i) with a real structure
given by an antilinear involution ``v -> C conj(v)``; ``C`` defaults to the
identity, i.e. the real points are the rational vectors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cohomology import Complex, algebra_complex
from .exactfield import Subspace, conj, normalize, is_direct_sum, kernel, mat_vec, quotient_basis, solve, sum_of, zeros
from .gca import Algebra, CutoffError, PresentationError


class HodgeError(ValueError):
    def __init__(self, message: str, p=None, deficit: int = 0):
        super().__init__(message)
        self.p = p
        self.deficit = deficit


class MixedHodgeError(ValueError):
    def __init__(self, message: str, weight=None):
        super().__init__(message)
        self.weight = weight


# ---------------------------------------------------------------------------
# filtrations


class Filtration:
    """Increasing (``W_k``) or decreasing (``F^p``) chain of subspaces of one space.

    Unlisted levels inherit the nearest listed level on the side the chain
    comes from: ``W_k`` below the lowest level is 0 and above the highest is
    the highest level; ``F^p`` above the highest level is 0 and below the
    lowest is the lowest level.
    """

    def __init__(self, ambient: int, direction: str, levels: dict):
        if direction not in ("increasing", "decreasing"):
            raise ValueError("direction is 'increasing' or 'decreasing'")
        self.ambient = ambient
        self.direction = direction
        self.levels = {}
        for k, s in levels.items():
            if not isinstance(s, Subspace):
                s = Subspace.span(s, ambient)
            if s.ambient != ambient:
                raise ValueError("filtration level has the wrong ambient dimension")
            self.levels[int(k)] = s
        if not self.levels:
            raise ValueError("a filtration needs at least one level")
        self.lo, self.hi = min(self.levels), max(self.levels)
        self._check()

    @classmethod
    def increasing(cls, levels: dict, ambient: int) -> "Filtration":
        return cls(ambient, "increasing", levels)

    @classmethod
    def decreasing(cls, levels: dict, ambient: int) -> "Filtration":
        return cls(ambient, "decreasing", levels)

    def _check(self):
        keys = sorted(self.levels)
        for a, b in zip(keys, keys[1:]):
            small, big = (a, b) if self.direction == "increasing" else (b, a)
            if not self.levels[small] <= self.levels[big]:
                raise ValueError(f"levels {a} and {b} are not nested")
        end = self.levels[self.hi if self.direction == "increasing" else self.lo]
        if end.dim != self.ambient:
            raise ValueError("the outermost level of a filtration must be the whole space")

    def __getitem__(self, k: int) -> Subspace:
        if self.direction == "increasing":
            keys = [j for j in self.levels if j <= k]
            return self.levels[max(keys)] if keys else Subspace.zero(self.ambient)
        keys = [j for j in self.levels if j >= k]
        return self.levels[min(keys)] if keys else Subspace.zero(self.ambient)

    def conjugate(self, conj_matrix=None) -> "Filtration":
        return Filtration(self.ambient, self.direction,
                          {k: s.conjugate(conj_matrix) for k, s in self.levels.items()})

    def is_real(self, conj_matrix=None) -> bool:
        return all(s.conjugate(conj_matrix) == s for s in self.levels.values())

    def dims(self) -> dict:
        return {k: s.dim for k, s in sorted(self.levels.items())}


# ---------------------------------------------------------------------------
# pure Hodge structures


@dataclass
class HodgeStructure:
    weight: int
    parts: dict          # (p, q) -> Subspace
    ambient: int

    def dims(self) -> dict:
        return {k: v.dim for k, v in sorted(self.parts.items()) if v.dim}


def validate_hodge_structure(f: Filtration, n: int, conj_matrix=None) -> HodgeStructure:
    """Check ``F^p ⊕ conj F^{n+1-p} = V`` for every p and return ``V_{p,q} = F^p ∩ conj F^q``."""
    if f.direction != "decreasing":
        raise ValueError("a Hodge filtration is decreasing")
    amb = f.ambient
    cf = f.conjugate(conj_matrix)
    lo, hi = min(f.lo, n + 1 - f.hi) - 1, max(f.hi, n + 1 - f.lo) + 1
    for p in range(lo, hi + 1):
        a, b = f[p], cf[n + 1 - p]
        meet = (a & b).dim
        span = (a + b).dim
        if meet or span != amb:
            raise HodgeError(f"F^{p} + conj F^{n + 1 - p} is not a direct sum equal to the whole space "
                             f"(intersection {meet}, span {span} of {amb})", p, max(meet, amb - span))
    parts = {}
    for p in range(lo, hi + 1):
        v = f[p] & cf[n - p]
        if v.dim:
            parts[(p, n - p)] = v
    if sum(v.dim for v in parts.values()) != amb or not is_direct_sum(list(parts.values()), amb):
        raise HodgeError("the pieces F^p ∩ conj F^q do not decompose the space", None, amb)
    for (p, q), v in parts.items():
        if v.conjugate(conj_matrix) != parts.get((q, p), Subspace.zero(amb)):
            raise HodgeError(f"conj V_({p},{q}) != V_({q},{p})", p)
    return HodgeStructure(n, parts, amb)


# ---------------------------------------------------------------------------
# mixed Hodge structures


def _graded_piece(w: Filtration, n: int):
    """Basis of ``W_n`` modulo ``W_{n-1}`` and the coordinate map."""
    top, below = w[n], w[n - 1]
    basis = quotient_basis(top, below)
    span = Subspace.span(basis, w.ambient)

    def coords(v):
        r = below.reduce(v)
        return span.coordinates(r) if basis else []

    return basis, coords


def mixed_hodge_check(w: Filtration, f: Filtration, conj_matrix=None) -> dict:
    """Validate each ``Gr^W_n`` with the induced filtration; returns ``{n: HodgeStructure}``."""
    if w.direction != "increasing" or f.direction != "decreasing":
        raise ValueError("need an increasing W and a decreasing F")
    if not w.is_real(conj_matrix):
        raise MixedHodgeError("the weight filtration is not defined over the reals")
    out = {}
    for n in range(w.lo, w.hi + 1):
        basis, coords = _graded_piece(w, n)
        if not basis:
            continue
        m = len(basis)
        levels = {}
        for p in range(f.lo, f.hi + 2):
            sub = f[p] & w[n]
            levels[p] = Subspace.span([coords(v) for v in sub.rows], m)
        levels[f.lo - 1] = Subspace.full(m)
        cm = zeros(m, m)
        for j, q in enumerate(basis):
            img = [conj(x) for x in q]
            if conj_matrix is not None:
                img = mat_vec(conj_matrix, img)
            for i, c in enumerate(coords(img)):
                cm[i][j] = c
        try:
            out[n] = validate_hodge_structure(Filtration.decreasing(levels, m), n, cm)
        except HodgeError as e:
            raise MixedHodgeError(f"Gr^W_{n} is not a Hodge structure of weight {n}: {e}", n) from None
    return out


@dataclass
class Bigrading:
    parts: dict                         # (p, q) -> Subspace V_{p,q}
    R: dict = field(default_factory=dict)
    L: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def dims(self) -> dict:
        return {k: v.dim for k, v in sorted(self.parts.items()) if v.dim}

    def slots(self) -> set:
        return {k for k, v in self.parts.items() if v.dim}


def canonical_bigrading(w: Filtration, f: Filtration, conj_matrix=None) -> Bigrading:
    """``V_{p,q} = R_{p,q} ∩ L_{p,q}`` with

    ``R_{p,q} = W_{p+q} ∩ F^p`` and
    ``L_{p,q} = W_{p+q} ∩ conj F^q + sum_{i>=2} W_{p+q-i} ∩ conj F^{q-i+1}``.
    """
    mixed_hodge_check(w, f, conj_matrix)
    amb = w.ambient
    cf = f.conjugate(conj_matrix)
    rng = range(f.lo, f.hi + 1)
    zero = Subspace.zero(amb)
    memo: dict = {}

    def meet(m, j):
        if (m, j) not in memo:
            memo[(m, j)] = w[m] & cf[j]
        return memo[(m, j)]

    R, L, V, rmemo = {}, {}, {}, {}
    for p in rng:
        for q in rng:
            n = p + q
            if w[n] == w[n - 1]:
                # V_{p,q} maps isomorphically onto a piece of Gr^W_n = 0
                R[(p, q)] = L[(p, q)] = V[(p, q)] = zero
                continue
            if (n, p) not in rmemo:
                rmemo[(n, p)] = w[n] & f[p]
            r = rmemo[(n, p)]
            l = sum_of([meet(n, q)] + [meet(n - i, q - i + 1) for i in range(2, n - w.lo + 1)], amb)
            R[(p, q)], L[(p, q)] = r, l
            V[(p, q)] = r & l
    V = {k: v for k, v in V.items() if v.dim}
    checks = {}

    def spans(pieces, target):
        total = sum_of(pieces, amb)
        return total == target and total.dim == sum(v.dim for v in pieces)

    for n in range(w.lo, w.hi + 1):
        checks[f"W_{n}"] = spans([v for (p, q), v in V.items() if p + q <= n], w[n])
    for r in range(f.lo, f.hi + 1):
        checks[f"F^{r}"] = spans([v for (p, q), v in V.items() if p >= r], f[r])
    lower: dict = {}
    for (p, q), v in V.items():
        n = p + q
        if n not in lower:
            lower[n] = sum_of([u for (a, b), u in V.items() if a + b < n], amb)
        target = V.get((q, p), zero) + lower[n]
        checks[f"conj V_{p},{q}"] = v.conjugate(conj_matrix) <= target
    return Bigrading(V, R, L, checks)


def is_r_split(b: Bigrading, conj_matrix=None) -> bool:
    amb = next(iter(b.parts.values())).ambient if b.parts else 0
    return all(v.conjugate(conj_matrix) == b.parts.get((q, p), Subspace.zero(amb)) for (p, q), v in b.parts.items())


def filtrations_from_splitting(parts: dict, ambient: int) -> tuple:
    """``W_n = ⊕_{p+q<=n} V_{p,q}`` and ``F^r = ⊕_{p>=r} V_{p,q}`` for a given splitting."""
    parts = {k: (v if isinstance(v, Subspace) else Subspace.span(v, ambient)) for k, v in parts.items()}
    ws = sorted({p + q for p, q in parts})
    ps = sorted({p for p, _ in parts})
    wl = {n: sum_of([v for (p, q), v in parts.items() if p + q <= n], ambient) for n in ws}
    fl = {r: sum_of([v for (p, q), v in parts.items() if p >= r], ambient) for r in ps}
    fl[ps[-1] + 1] = Subspace.zero(ambient)
    return Filtration.increasing(wl, ambient), Filtration.decreasing(fl, ambient)


# ---------------------------------------------------------------------------
# Morgan types on models


def morgan_type(a: Algebra, exps) -> tuple:
    """Type of a monomial: bidegree on basic generators, (1,1) on each W generator."""
    p = q = 0
    for e, g in zip(exps, a.gens):
        if not e:
            continue
        if g.role == "W":
            t = g.weight or (1, 1)
        elif g.weight is not None:
            t = g.weight
        elif g.bidegree is not None:
            t = g.bidegree
        else:
            raise PresentationError(f"generator {g.name} carries no type")
        p += e * t[0]
        q += e * t[1]
    return (p, q)


def _slot_space(keys: list, pred) -> Subspace:
    vecs = []
    for j, k in enumerate(keys):
        if pred(k):
            v = [0] * len(keys)
            v[j] = 1
            vecs.append(v)
    return Subspace.span(vecs, len(keys))


def _check_type_preserving(a: Algebra, typer) -> None:
    for g in a.gens:
        t = typer(a, tuple(1 if h.name == g.name else 0 for h in a.gens))
        for k in a.generator_differential(g.name):
            if typer(a, k) != t:
                raise PresentationError(f"d{g.name} is not of the type {t} of {g.name}")


@dataclass
class DegreeHodgeData:
    degree: int
    dim: int
    weight: Filtration              # shifted weight filtration W'
    hodge: Filtration               # F
    conj_matrix: list
    bigrading: Bigrading
    types: dict                     # (p, q) -> Subspace of classes of type (p, q)

    @property
    def agrees(self) -> bool:
        keys = set(self.types) | set(self.bigrading.parts)
        return all(self.types.get(k, Subspace.zero(self.dim)) == self.bigrading.parts.get(k, Subspace.zero(self.dim))
                   for k in keys)


def cohomology_hodge_data(a: Algebra, r: int, cx: Complex | None = None, typer=morgan_type) -> DegreeHodgeData:
    """Shifted weight and Hodge filtrations on ``H^r`` of a Morgan-typed model, and its bigrading."""
    if not a.field.complex:
        a = a.complexified()
    cx = cx or algebra_complex(a, "d", r + 1)
    keys = a.basis(r)
    reps = cx.representatives(r)
    h = len(reps)
    z = cx.cocycles(r)

    def image_in_h(sub: Subspace) -> Subspace:
        return Subspace.span([cx.class_coordinates(r, v) for v in (z & sub).rows], h)

    wc = {k: a.role_count(k, "W") for k in keys}
    ty = {k: typer(a, k) for k in keys}
    lmax = max(wc.values(), default=0)
    wl = {r + l: image_in_h(_slot_space(keys, lambda k, l=l: wc[k] <= l)) for l in range(lmax + 1)}
    ps = sorted({t[0] for t in ty.values()}) or [0]
    fl = {p: image_in_h(_slot_space(keys, lambda k, p=p: ty[k][0] >= p)) for p in range(ps[0], ps[-1] + 2)}
    fl[ps[0]] = Subspace.full(h)
    cm = zeros(h, h)
    for j, rep in enumerate(reps):
        img = a.to_vector(a.conjugate(a.from_vector(rep, keys)), keys)
        for i, c in enumerate(cx.class_coordinates(r, img)):
            cm[i][j] = c
    wl[r + lmax] = Subspace.full(h)
    wf = Filtration.increasing(wl, h)
    ff = Filtration.decreasing(fl, h)
    big = canonical_bigrading(wf, ff, cm)
    types = {}
    for t in sorted(set(ty.values())):
        s = image_in_h(_slot_space(keys, lambda k, t=t: ty[k] == t))
        if s.dim:
            types[t] = s
    return DegreeHodgeData(r, h, wf, ff, cm, big, types)


# ---------------------------------------------------------------------------
# fundamental specs, diagrams and shapes


@dataclass
class FundamentalReport:
    ok: bool
    witness: str | None = None       # a W generator whose dw leaves H^{1,1}
    component: dict | None = None

    def __bool__(self):
        return self.ok


def is_fundamental(s) -> FundamentalReport:
    """``d(W)`` lies in the (1,1) part of the basic algebra."""
    b = s.base
    for n in s.w:
        bad = {k: c for k, c in s.dw.get(n, {}).items() if b.bidegree_of(k) != (1, 1)}
        if bad:
            return FundamentalReport(False, n, bad)
    return FundamentalReport(True)


@dataclass
class DiagramReport:
    ok: bool
    d0_zero: bool
    e1_ok: bool
    pages: list                       # SpectralPage for r = 0, 1
    e1_expected: dict
    degrees: dict                     # r -> DegreeHodgeData
    reason: str = ""


def diagram_filtrations(s, up_to: int | None = None) -> DiagramReport:
    """Weight and Hodge filtrations of the de Rham model of a fundamental spec."""
    from math import comb

    from .dolbeault import build_de_rham_model
    from .hirsch import filtered_algebra

    fund = is_fundamental(s)
    if not fund:
        return DiagramReport(False, False, False, [], {}, {}, f"d{fund.witness} is not of type (1,1)")
    a = build_de_rham_model(s).complexified()
    top = s.cutoff - 1 if up_to is None else up_to
    fc = filtered_algebra(a, lambda k: -a.role_count(k, "W"), top=top + 1)
    pages = [fc.page(0, top=top), fc.page(1, top=top)]
    d0_zero = all(not any(any(row) for row in m) for m in pages[0].differentials.values())
    base_h = algebra_complex(s.base, "d", min(s.base.cutoff, top + 1))
    hb = [base_h.betti(j) if j < base_h.top else 0 for j in range(top + 1)]
    nv = len(s.w)
    expected = {}
    for (fp, q), dim in pages[1].dims.items():
        p = -fp
        j = q - 2 * p
        expected[(fp, q)] = (hb[j] if 0 <= j < len(hb) else 0) * comb(nv, p) if p >= 0 else 0
    e1_ok = all(pages[1].dims[k] == expected[k] for k in expected)
    cx = algebra_complex(a, "d", top + 1)
    degrees = {r: cohomology_hodge_data(a, r, cx) for r in range(top + 1)}
    ok = d0_zero and e1_ok and all(d.bigrading.ok and d.agrees for d in degrees.values())
    return DiagramReport(ok, d0_zero, e1_ok, pages, expected, degrees)


H1_SLOTS = {(1, 0), (0, 1), (1, 1)}
H2_SLOTS = {(2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)}


@dataclass
class ShapeReport:
    ok: bool
    h1: dict
    h2: dict
    stray: list


def h1_h2_shape_check(degrees: dict) -> ShapeReport:
    """Nonzero slots of H^1 and H^2 must lie in the allowed lists."""
    h1 = degrees[1].bigrading.dims() if 1 in degrees else {}
    h2 = degrees[2].bigrading.dims() if 2 in degrees else {}
    stray = [(1, k) for k in h1 if k not in H1_SLOTS] + [(2, k) for k in h2 if k not in H2_SLOTS]
    return ShapeReport(not stray, h1, h2, stray)


# ---------------------------------------------------------------------------
# bigraded minimal models


def typed_cohomology(a: Algebra, n: int, typer) -> dict:
    """``dim H^n`` split by type, for a differential preserving types."""
    cx = algebra_complex(a, "d", n + 1)
    keys = a.basis(n)
    z, b = cx.cocycles(n), cx.coboundaries(n)
    out = {}
    for t in sorted({typer(a, k) for k in keys}):
        slot = _slot_space(keys, lambda k: typer(a, k) == t)
        dim = (z & slot).dim - (b & slot).dim
        if dim:
            out[t] = dim
    return out


@dataclass
class BigradedModel:
    model: object                    # sullivan.MinimalModel
    types: dict                      # generator name -> (p, q)
    checks: dict
    obstruction: str | None = None

    @property
    def ok(self) -> bool:
        return self.obstruction is None and all(self.checks.values())

    def weight_counts(self, degree: int = 1) -> dict:
        """``m_w``: number of degree-``degree`` generators of weight ``w = p + q``."""
        out: dict = {}
        for g in self.model.algebra.gens:
            if g.degree == degree:
                w = sum(self.types[g.name])
                out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items()))


def bigraded_minimal_model(a: Algebra, up_to: int, typer=morgan_type, one_minimal: bool = False) -> BigradedModel:
    """Minimal model whose generators carry types, built with type-homogeneous choices.

    Requires the differential of ``a`` to preserve types.  Every new closed
    generator hits a type-homogeneous class; every killing generator has a
    homogeneous differential, so d and the comparison map preserve types.
    """
    from .cohomology import DgaMorphism, is_k_quasi_isomorphism, is_quasi_isomorphism
    from .sullivan import MinimalModel, ResourceError, Stage, _adjoin, _check_connected
    from .gca import ground_field

    if not a.field.complex:
        a = a.complexified()
    _check_type_preserving(a, typer)
    if up_to > a.cutoff - 2:
        raise CutoffError(f"up_to={up_to} needs cutoff >= {up_to + 2}")
    _check_connected(a)
    top = up_to + 2
    m = ground_field(a.field, top).replace(name=f"min({a.name})")
    images, types, stages = {}, {}, []
    acx = algebra_complex(a, "d", top)

    def mtype(alg, k):
        p = q = 0
        for e, g in zip(k, alg.gens):
            if e:
                p += e * types[g.name][0]
                q += e * types[g.name][1]
        return (p, q)

    def add(k, kind, new):
        nonlocal m
        names = [n for n, _, _, _ in new]
        m = _adjoin(m, [(n, k, dv) for n, _, dv, _ in new])
        for n, t, dv, img in new:
            types[n] = t
            images[n] = img
        stages.append(Stage(k, tuple(names), kind, {n: dv for n, _, dv, _ in new}, {n: img for n, _, _, img in new}))

    def label(k, i):
        return f"v{k}_{len(stages) + 1}_{i + 1}"

    def surject(k):
        phi = DgaMorphism(m, a, images)
        mcx = algebra_complex(m, "d", top)
        akeys, mkeys = a.basis(k), m.basis(k)
        za, ba = acx.cocycles(k), acx.coboundaries(k)
        zm = mcx.cocycles(k)
        new = []
        for t in sorted({typer(a, x) for x in akeys}):
            slot = _slot_space(akeys, lambda x: typer(a, x) == t)
            mslot = _slot_space(mkeys, lambda x: mtype(m, x) == t)
            hit = Subspace.span([a.to_vector(phi(m.from_vector(v, mkeys)), akeys) for v in (zm & mslot).rows],
                                len(akeys)) + (ba & slot)
            for v in quotient_basis(za & slot, hit & slot):
                new.append((label(k, len(new)), t, {}, a.from_vector(v, akeys)))
        if new:
            add(k, "cohomology", new)

    def kill(k):
        phi = DgaMorphism(m, a, images)
        mcx = algebra_complex(m, "d", top)
        mkeys, akeys = m.basis(k + 1), a.basis(k + 1)
        zm, bm = mcx.cocycles(k + 1), mcx.coboundaries(k + 1)
        ba = acx.coboundaries(k + 1)
        dk = a.diff_matrix(k)
        new = []
        for t in sorted({mtype(m, x) for x in mkeys}):
            mslot = _slot_space(mkeys, lambda x: mtype(m, x) == t)
            zt = zm & mslot
            if not zt.dim:
                continue
            red = [ba.reduce(a.to_vector(phi(m.from_vector(v, mkeys)), akeys)) for v in zt.rows]
            mat = [[r[i] for r in red] for i in range(len(akeys))]
            ker = kernel(mat, zt.dim)
            kvecs = [[sum((c * v[i] for c, v in zip(row, zt.rows)), 0) for i in range(len(mkeys))] for row in ker.rows]
            kt = Subspace.span(kvecs, len(mkeys))
            for v in quotient_basis(kt, bm & mslot):
                zel = m.from_vector(v, mkeys)
                sol = solve(dk, a.to_vector(phi(zel), akeys), a.dim(k))
                pre = a.from_vector(sol, a.basis(k))
                pre = {x: c for x, c in pre.items() if typer(a, x) == t}
                new.append((label(k, len(new)), t, zel, pre))
        if new:
            add(k, "kill", new)
            return True
        return False

    obstruction = None
    try:
        degrees = [1] if one_minimal else range(1, up_to + 1)
        for k in degrees:
            surject(k)
            for _ in range(50):
                if not kill(k):
                    break
            else:
                raise ResourceError(f"degree {k}: kernel not killed")
    except PresentationError as e:
        obstruction = str(e)
    phi = DgaMorphism(m, a, images)
    ok, msg = phi.validate()
    checks = {"morphism": ok}
    checks["d preserves type"] = all(mtype(m, x) == types[g.name]
                                    for g in m.gens for x in m.generator_differential(g.name))
    checks["phi preserves type"] = all(typer(a, x) == types[n] for n, img in images.items() for x in img)
    cert = is_k_quasi_isomorphism(phi, 1) if one_minimal else is_quasi_isomorphism(phi, up_to)
    checks["quasi-isomorphism"] = cert.ok
    mm = MinimalModel(m, phi, 1 if one_minimal else up_to, stages, cert)
    return BigradedModel(mm, types, checks, obstruction)


def classes_land_in_bigrading(bm: BigradedModel, r: int) -> bool:
    """``phi^*`` sends type-(p,q) classes of M into the canonical ``V_{p,q}`` of ``H^r`` of the target."""
    mm = bm.model
    a, m = mm.morphism.target, mm.algebra
    data = cohomology_hodge_data(a, r)
    cx = algebra_complex(a, "d", r + 1)
    mcx = algebra_complex(m, "d", r + 1)
    mkeys, akeys = m.basis(r), a.basis(r)

    def mt(k):
        p = q = 0
        for e, g in zip(k, m.gens):
            if e:
                p += e * bm.types[g.name][0]
                q += e * bm.types[g.name][1]
        return (p, q)

    for t in sorted({mt(k) for k in mkeys}):
        slot = _slot_space(mkeys, lambda k: mt(k) == t)
        target = data.bigrading.parts.get(t, Subspace.zero(data.dim))
        for v in (mcx.cocycles(r) & slot).rows:
            img = a.to_vector(mm.morphism(m.from_vector(v, mkeys)), akeys)
            if not target.contains(cx.class_coordinates(r, img)):
                return False
    return True


# ---------------------------------------------------------------------------
# the weight count for nilmanifolds


@dataclass
class WeightCountReport:
    ok: bool
    counts: dict
    total: int
    weighted: int
    branch: str | None
    expected_total: int
    expected_weighted: int


def weight_count_check(counts: dict, n: int, k: int) -> WeightCountReport:
    """``sum m_w = 2n`` and ``sum w m_w = 2n + 2k``; for k = 1 also the two-branch dichotomy."""
    total = sum(counts.values())
    weighted = sum(w * c for w, c in counts.items())
    ok = total == 2 * n and weighted == 2 * n + 2 * k and all(w >= 1 for w in counts)
    branch = None
    if k == 1:
        high = {w: c for w, c in counts.items() if w >= 2 and c}
        a = high == {2: 2}
        b = high == {3: 1}
        if a != b:
            branch = "m2=2" if a else "m3=1"
        ok = ok and branch is not None
    return WeightCountReport(ok, dict(sorted(counts.items())), total, weighted, branch, 2 * n, 2 * n + 2 * k)


def homogeneous_weightings(a: Algebra, max_weight: int):
    """Positive weights on the degree-1 generators making ``d`` weight-homogeneous."""
    names = [g.name for g in a.gens if g.degree == 1]
    idx = {n: i for i, n in enumerate(names)}
    for ws in itertools.product(range(1, max_weight + 1), repeat=len(names)):
        good = True
        for g in names:
            for key in a.generator_differential(g):
                wt = sum(e * ws[idx[h.name]] for e, h in zip(key, a.gens) if e)
                if wt != ws[idx[g]]:
                    good = False
                    break
            if not good:
                break
        if good:
            yield dict(zip(names, ws))


def weight_count_search(a: Algebra, n: int, k: int) -> list:
    """All diagonal homogeneous weightings that satisfy the weight count.

    A weight above ``2k + 1`` would already break ``sum w m_w = 2n + 2k``
    with ``2n`` positive weights, so the search is exhaustive for weightings
    diagonal in the given basis.
    """
    hits = []
    for ws in homogeneous_weightings(a, 2 * k + 1):
        counts: dict = {}
        for w in ws.values():
            counts[w] = counts.get(w, 0) + 1
        if weight_count_check(counts, n, k).ok:
            hits.append(ws)
    return hits


# ---------------------------------------------------------------------------
# dual Lie algebra of a bigraded 1-minimal model


ALLOWED_GENERATORS = {(-1, 0), (0, -1), (-1, -1)}
ALLOWED_RELATIONS = {(-1, -1), (-1, -2), (-2, -1), (-2, -2)}


@dataclass
class FreeLiePresentation:
    """Generators and relations of the dual Lie algebra, both with negated types."""

    generators: dict                 # type -> count (= dim H^1 of that type)
    relations: dict                  # type -> count (= dim H^2 of that type)
    brackets: list                   # (i, j, k, c): [X_i, X_j] has coefficient c on X_k
    ok: bool
    offending: list


def dual_lie_presentation(a: Algebra, types: dict | None = None) -> FreeLiePresentation:
    """Minimal presentation of the Lie algebra dual to a degree-1 minimal algebra.

    Generators correspond to H^1 and relations to H^2, typed by the negated
    generator types; brackets come from the quadratic part of d.
    """
    if any(g.degree != 1 for g in a.gens):
        raise PresentationError("a 1-minimal model has only degree-1 generators")
    if types is None:
        types = {g.name: (g.weight or g.bidegree) for g in a.gens}
    if any(t is None for t in types.values()):
        raise PresentationError("every generator needs a type")
    if not a.field.complex:
        a = a.complexified()
    typer = lambda alg, k: tuple(sum(e * types[g.name][i] for e, g in zip(k, alg.gens)) for i in (0, 1))
    _check_type_preserving(a, typer)
    if a.cutoff < 3:
        a = a.with_cutoff(3)
    h1 = typed_cohomology(a, 1, typer)
    h2 = typed_cohomology(a, 2, typer)
    gens = {(-p, -q): c for (p, q), c in h1.items()}
    rels = {(-p, -q): c for (p, q), c in h2.items()}
    brackets = []
    for kk, g in enumerate(a.gens):
        for key, c in a.generator_differential(g.name).items():
            ij = [i for i, e in enumerate(key) if e]
            if len(ij) == 2:
                brackets.append((ij[0], ij[1], kk, normalize(-c)))
    offending = [t for t in gens if t not in ALLOWED_GENERATORS] + [t for t in rels if t not in ALLOWED_RELATIONS]
    return FreeLiePresentation(gens, rels, brackets, not offending, offending)


BigradedLiePresentation = FreeLiePresentation
