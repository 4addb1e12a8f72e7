"""Hirsch extensions, filtration spectral sequences and transfer along quasi-isomorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import DgaMorphism, QuasiIsoReport, cohomology, is_quasi_isomorphism
from .exactfield import Subspace, kernel, mat_vec, normalize, quotient_basis, solve, zeros
from .gca import Algebra, CutoffError, Generator, PresentationError, translate


class TransferError(ValueError):
    """The linear system for a pulled-back extension has no solution."""


@dataclass
class HirschData:
    """Adjoin free generators ``names`` of one degree with ``d v = beta[v]``."""

    base: Algebra
    names: tuple
    degree: int
    beta: dict
    role: str = "V"

    def __post_init__(self):
        self.names = tuple(self.names)
        self.beta = {n: self.base.coerce(self.beta.get(n, {})) if not isinstance(self.beta.get(n), str)
                     else self.base.parse(self.beta[n]) for n in self.names}

    def violations(self) -> list:
        """Basis vectors of V whose beta is not a cocycle of degree ``degree + 1``."""
        a = self.base
        bad = []
        for n in self.names:
            b = self.beta[n]
            if any(a.degree_of(k) != self.degree + 1 for k in b):
                bad.append((n, f"beta({n}) is not of degree {self.degree + 1}"))
            elif a.diff(b):
                bad.append((n, f"beta({n}) = {a.format(b)} is not a cocycle"))
        return bad


def hirsch_extend(h: HirschData, name: str = "") -> Algebra:
    """``B = A ⊗ ∧V`` with ``d = d_A`` on A and ``d = beta`` on V."""
    a = h.base
    if a.bigraded:
        raise PresentationError("Hirsch extensions are built on singly graded presentations")
    bad = h.violations()
    if bad:
        raise PresentationError(f"cocycle condition fails for {bad[0][0]}: {bad[0][1]}")
    clash = [n for n in h.names if n in a.index]
    if clash:
        raise PresentationError(f"extension generator {clash[0]} already exists")
    gens = list(a.gens) + [Generator(n, h.degree, role=h.role) for n in h.names]
    b = Algebra(gens, [{g.name: e for g, e in zip(a.gens, r) if e} for r in a.relations],
                field=a.field, cutoff=a.cutoff, name=name or f"{a.name}⊗∧V")
    d = {g.name: translate(a.generator_differential(g.name), a, b) for g in a.gens}
    d.update({n: translate(h.beta[n], a, b) for n in h.names})
    return b.with_differentials(d=d)


# ---------------------------------------------------------------------------
# filtered complexes


@dataclass
class SpectralPage:
    r: int
    dims: dict                                   # (p, q) -> dim, with n = p + q
    bases: dict = field(default_factory=dict)    # (p, q) -> vectors in C^n
    differentials: dict = field(default_factory=dict)  # (p, q) -> matrix into (p + r, q - r + 1)

    def total(self, n: int) -> int:
        return sum(v for (p, q), v in self.dims.items() if p + q == n)

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.dims.items()) if v}


class FilteredComplex:
    """Complex with a decreasing filtration by spans of basis vectors.

    ``filt[n][j]`` is the filtration degree of basis vector j in degree n;
    ``F^p C^n`` is spanned by the vectors with ``filt >= p``.
    """

    def __init__(self, dims, mats, filt):
        self.dims = list(dims)
        self.mats = list(mats)
        self.filt = [list(f) for f in filt]
        self.top = len(self.dims) - 1
        for n in range(self.top):
            for j in range(self.dims[n]):
                for i in range(self.dims[n + 1]):
                    if self.mats[n][i][j] and self.filt[n + 1][i] < self.filt[n][j]:
                        raise PresentationError(f"d does not preserve the filtration in degree {n}")
        vals = [x for f in self.filt for x in f]
        self.pmin = min(vals) if vals else 0
        self.pmax = max(vals) if vals else 0

    def _cols(self, n: int, p: int) -> list:
        return [j for j in range(self.dims[n]) if self.filt[n][j] >= p]

    def F(self, n: int, p: int) -> Subspace:
        vecs = []
        for j in self._cols(n, p):
            v = [0] * self.dims[n]
            v[j] = 1
            vecs.append(v)
        return Subspace.span(vecs, self.dims[n])

    def Z(self, n: int, p: int, r: int) -> Subspace:
        """``F^p C^n ∩ d^{-1}(F^{p+r} C^{n+1})``."""
        if n >= self.top:
            raise CutoffError(f"Z in degree {n} needs degree {n + 1}")
        if r < 0:
            return self.F(n, p)
        cols = self._cols(n, p)
        rows = [i for i in range(self.dims[n + 1]) if self.filt[n + 1][i] < p + r]
        sub = [[self.mats[n][i][j] for j in cols] for i in rows]
        K = kernel(sub, len(cols))
        vecs = []
        for kv in K.rows:
            v = [0] * self.dims[n]
            for j, c in zip(cols, kv):
                v[j] = c
            vecs.append(v)
        return Subspace.span(vecs, self.dims[n])

    def B(self, n: int, p: int, r: int) -> Subspace:
        """``F^p C^n ∩ d(F^{p-r} C^{n-1})``."""
        if n == 0:
            return Subspace.zero(self.dims[0])
        cols = self._cols(n - 1, p - r)
        imgs = [[self.mats[n - 1][i][j] for i in range(self.dims[n])] for j in cols]
        return Subspace.span(imgs, self.dims[n]) & self.F(n, p)

    def denominator(self, n: int, p: int, r: int) -> Subspace:
        return self.Z(n, p + 1, r - 1) + self.B(n, p, r - 1)

    def page(self, r: int, with_differentials: bool = True, top: int | None = None) -> SpectralPage:
        top = self.top - 1 if top is None else top
        dims, bases, dens = {}, {}, {}
        for n in range(top + 1):
            for p in range(self.pmin, self.pmax + 1):
                z = self.Z(n, p, r)
                den = self.denominator(n, p, r)
                basis = quotient_basis(z, den)
                dims[(p, n - p)] = len(basis)
                bases[(p, n - p)] = basis
                dens[(p, n - p)] = den
        page = SpectralPage(r, dims, bases)
        if with_differentials:
            for (p, q), basis in bases.items():
                tgt = (p + r, q - r + 1)
                if tgt not in bases or not basis:
                    continue
                n = p + q
                tb = bases[tgt]
                span = Subspace.span(tb, self.dims[n + 1]) if tb else None
                cols = []
                for v in basis:
                    red = dens[tgt].reduce(mat_vec(self.mats[n], v))
                    cols.append(span.coordinates(red) if span is not None else [])
                m = zeros(len(tb), len(basis))
                for j, c in enumerate(cols):
                    for i, x in enumerate(c):
                        m[i][j] = normalize(x)
                page.differentials[(p, q)] = m
        return page

    def infinity(self, top: int | None = None) -> SpectralPage:
        return self.page(self.pmax - self.pmin + 2, with_differentials=False, top=top)


def filtered_algebra(a: Algebra, filt_fn, which: str = "d", top: int | None = None) -> FilteredComplex:
    top = a.cutoff if top is None else top
    dims = [a.dim(n) for n in range(top + 1)]
    mats = [a.diff_matrix(n, which) for n in range(top)]
    filt = [[filt_fn(k) for k in a.basis(n)] for n in range(top + 1)]
    return FilteredComplex(dims, mats, filt)


def base_degree_filtration(b: Algebra, names, degree: int) -> FilteredComplex:
    """``F^p B = A^{>=p} ⊗ ∧V`` for a Hirsch extension ``b`` with new generators ``names``."""
    idx = [b.index[n] for n in names]
    return filtered_algebra(b, lambda k: b.degree_of(k) - degree * sum(k[i] for i in idx))


@dataclass
class HirschSpectralSequence:
    extension: Algebra
    pages: list                   # SpectralPage for r = 0, 1, 2
    infinity: SpectralPage
    cohomology: list              # dim H^n(B)
    degenerate_at_2: bool
    later_differentials: list     # degrees n where sum E_2 != dim H^n

    def expected_e2(self, base_betti: list, nv: int, degree: int) -> dict:
        """dim H^p(A) * dim (∧^q V)^{graded}, keyed like the pages."""
        out = {}
        for (p, q) in self.pages[2].dims:
            word, rem = divmod(q, degree) if degree else (0, q)
            if rem or q < 0:
                out[(p, q)] = 0
                continue
            hp = base_betti[p] if 0 <= p < len(base_betti) else 0
            out[(p, q)] = hp * _sym_ext_count(nv, degree, word)
        return out


def _sym_ext_count(nv: int, degree: int, word: int) -> int:
    """Dimension of the length-``word`` part of ∧V for ``nv`` generators of ``degree``."""
    from math import comb
    if degree % 2:
        return comb(nv, word)
    return comb(nv + word - 1, word) if nv else int(word == 0)


def weight_spectral_sequence(h: HirschData, top: int | None = None) -> HirschSpectralSequence:
    """Pages 0, 1, 2 and E_infinity of the base-degree filtration on the extension."""
    b = hirsch_extend(h)
    fc = base_degree_filtration(b, h.names, h.degree)
    top = fc.top - 1 if top is None else top
    pages = [fc.page(r, top=top) for r in (0, 1, 2)]
    inf = fc.infinity(top=top)
    hb = cohomology(b, up_to=top).series()
    later = [n for n in range(top + 1) if pages[2].total(n) != hb[n]]
    return HirschSpectralSequence(b, pages, inf, hb, not later, later)


# ---------------------------------------------------------------------------
# transfer along quasi-isomorphisms


@dataclass
class TransferResult:
    data: HirschData               # the extension on the other side
    morphism: DgaMorphism          # source extension -> target extension
    certificate: QuasiIsoReport
    corrections: dict              # v -> a_v with v |-> v - a_v (backward case)


def _extend_morphism(f: DgaMorphism, b1: Algebra, b2: Algebra, names, corrections=None) -> DgaMorphism:
    images = {}
    for g in f.source.gens:
        images[g.name] = translate(f.images[g.name], f.target, b2)
    for n in names:
        img = b2.gen(n)
        if corrections and corrections.get(n):
            img = b2.sub(img, translate(corrections[n], f.target, b2))
        images[n] = img
    return DgaMorphism(b1, b2, images)


def transfer_extension(f: DgaMorphism, h: HirschData, up_to: int | None = None) -> TransferResult:
    """Move an extension across ``f: A1 -> A2`` and certify ``f ⊗ id``.

    Over A1 the new map is ``f ∘ beta``.  Over A2 a cocycle ``beta1`` with
    ``[f beta1] = [beta2]`` is solved for, together with ``a_v`` such that
    ``f beta1(v) + d a_v = beta2(v)``; the extension map sends ``v`` to
    ``v - a_v``.
    """
    a1, a2 = f.source, f.target
    k = h.degree
    if h.base is a1:
        beta2 = {n: f(h.beta[n]) for n in h.names}
        h1, h2 = h, HirschData(a2, h.names, k, beta2, h.role)
        corrections = {}
    elif h.base is a2:
        cyc = cohomology(a1, up_to=k + 1).cocycles[k + 1]
        src = a1.basis(k + 1)
        tgt = a2.basis(k + 1)
        zimgs = [a2.to_vector(f(a1.from_vector(z, src)), tgt) for z in cyc.rows]
        dcols = [a2.to_vector(a2.diff({m: a2.field(1)}), tgt) for m in a2.basis(k)]
        cols = zimgs + dcols
        mat = [[c[i] for c in cols] for i in range(len(tgt))]
        beta1, corrections = {}, {}
        for n in h.names:
            sol = solve(mat, a2.to_vector(h.beta[n], tgt), len(cols))
            if sol is None:
                raise TransferError(f"no cocycle of A1 maps to the class of beta({n}); f is not onto H^{k + 1}")
            zc, ac = sol[:len(zimgs)], sol[len(zimgs):]
            vec = [sum((c * z[i] for c, z in zip(zc, cyc.rows)), 0) for i in range(len(src))]
            beta1[n] = a1.from_vector(vec, src)
            corrections[n] = a2.from_vector(ac, a2.basis(k))
        h1, h2 = HirschData(a1, h.names, k, beta1, h.role), h
    else:
        raise ValueError("the extension must live over the source or the target of f")
    b1, b2 = hirsch_extend(h1), hirsch_extend(h2)
    g = _extend_morphism(f, b1, b2, h.names, corrections).check()
    top = min(b1.cutoff, b2.cutoff) - 1 if up_to is None else up_to
    cert = is_quasi_isomorphism(g, top)
    return TransferResult(h2 if h.base is a1 else h1, g, cert, corrections)


def coboundary_change(h: HirschData, shift: dict) -> tuple:
    """Extension with ``beta + d∘shift`` and the isomorphism onto the original.

    Returns ``(new data, morphism new -> old)`` where ``v |-> v + shift(v)``.
    """
    a = h.base
    shift = {n: (a.parse(s) if isinstance(s, str) else a.coerce(s)) for n, s in shift.items()}
    beta = {n: a.add(h.beta[n], a.diff(shift.get(n, {}))) for n in h.names}
    h_new = HirschData(a, h.names, h.degree, beta, h.role)
    b_new, b_old = hirsch_extend(h_new), hirsch_extend(h)
    images = {g.name: b_old.gen(g.name) for g in a.gens}
    for n in h.names:
        images[n] = b_old.add(b_old.gen(n), translate(shift.get(n, {}), a, b_old))
    return h_new, DgaMorphism(b_new, b_old, images).check()
