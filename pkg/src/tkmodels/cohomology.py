"""Cohomology of presentations, chain maps and quasi-isomorphism certificates.

A :class:`Complex` is a finite segment ``C^0 -> ... -> C^top`` of explicit
matrices; cohomology is trusted only in degrees ``< top`` because the
differential out of ``C^top`` is unknown.  Presentations become complexes via
:func:`algebra_complex`, which stops at the presentation's cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactfield import (ContainmentError, Subspace, image, kernel, mat_mul, mat_vec, normalize,
                         quotient_basis, rank, zeros)
from .gca import Algebra, CutoffError, PresentationError, tensor


class Complex:
    """Cochain complex segment with ``mats[n]: C^n -> C^{n+1}`` for ``n < top``."""

    def __init__(self, dims, mats, name: str = ""):
        self.dims = list(dims)
        self.mats = list(mats)
        self.name = name
        if len(self.mats) != len(self.dims) - 1:
            raise ValueError("need one matrix per degree below the top")
        self._ker: dict = {}
        self._im: dict = {}
        self._reps: dict = {}

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def _trusted(self, n: int):
        if n >= self.top:
            raise CutoffError(f"cohomology in degree {n} needs C^{n + 1}; complex stops at {self.top}")

    def cocycles(self, n: int) -> Subspace:
        self._trusted(n)
        if n not in self._ker:
            self._ker[n] = kernel(self.mats[n], self.dims[n])
        return self._ker[n]

    def coboundaries(self, n: int) -> Subspace:
        if n not in self._im:
            if n == 0 or self.dims[n - 1] == 0:
                self._im[n] = Subspace.zero(self.dims[n])
            else:
                self._im[n] = image(self.mats[n - 1], self.dims[n])
        return self._im[n]

    def representatives(self, n: int) -> list:
        """Canonical complement of the coboundaries inside the cocycles."""
        if n not in self._reps:
            self._reps[n] = quotient_basis(self.cocycles(n), self.coboundaries(n))
        return self._reps[n]

    def betti(self, n: int) -> int:
        return self.cocycles(n).dim - self.coboundaries(n).dim

    def class_coordinates(self, n: int, v) -> list:
        """Coordinates of the class of cocycle ``v`` in the representative basis."""
        if n < self.top and any(mat_vec(self.mats[n], v)):
            raise ContainmentError("not a cocycle")
        r = self.coboundaries(n).reduce(v)
        reps = self.representatives(n)
        return Subspace.span(reps, self.dims[n]).coordinates(r) if reps else _check_zero(r)

    def subcomplex(self, spaces) -> tuple:
        """Restriction to d-stable subspaces ``spaces[n]``; returns (complex, inclusion)."""
        spaces = list(spaces)
        if len(spaces) != len(self.dims):
            raise ValueError("one subspace per degree")
        mats = []
        for n in range(self.top):
            src, tgt = spaces[n], spaces[n + 1]
            cols = []
            for row in src.rows:
                img = mat_vec(self.mats[n], row)
                try:
                    cols.append(tgt.coordinates(img))
                except ContainmentError:
                    raise ContainmentError(f"subspace in degree {n} is not stable under d") from None
            mats.append(_from_columns(cols, tgt.dim))
        sub = Complex([s.dim for s in spaces], mats, name=f"sub({self.name})")
        incl = ChainMap(sub, self, [_from_columns([list(r) for r in s.rows], s.ambient) for s in spaces])
        return sub, incl

    def quotient(self, spaces) -> tuple:
        """Quotient by d-stable subspaces; returns (complex, projection)."""
        spaces = list(spaces)
        comps = [quotient_basis(Subspace.full(d), s) for d, s in zip(self.dims, spaces)]
        comp_spaces = [Subspace.span(c, d) for c, d in zip(comps, self.dims)]

        def coords(n, v):
            r = spaces[n].reduce(v)
            return comp_spaces[n].coordinates(r) if comp_spaces[n].dim else _check_zero(r)

        mats = []
        for n in range(self.top):
            cols = [coords(n + 1, mat_vec(self.mats[n], q)) for q in comps[n]]
            mats.append(_from_columns(cols, len(comps[n + 1])))
        quo = Complex([len(c) for c in comps], mats, name=f"quot({self.name})")
        proj = []
        for n, d in enumerate(self.dims):
            cols = []
            for j in range(d):
                e = [0] * d
                e[j] = 1
                cols.append(coords(n, e))
            proj.append(_from_columns(cols, len(comps[n])))
        return quo, ChainMap(self, quo, proj)


def _check_zero(r):
    if any(r):
        raise ContainmentError("vector outside the subspace")
    return []


def _product(a, b, rows: int, inner: int, cols: int):
    """``a @ b`` for an rows×inner and an inner×cols matrix, tolerant of empty shapes."""
    if inner == 0 or rows == 0 or cols == 0:
        return zeros(rows, cols)
    return [[normalize(x) for x in r] for r in mat_mul(a, b, inner)]


def _from_columns(cols, nrows: int):
    m = zeros(nrows, len(cols))
    for j, c in enumerate(cols):
        for i, x in enumerate(c):
            if x:
                m[i][j] = x
    return m


class ChainMap:
    """Degreewise matrices ``mats[n]: source^n -> target^n``."""

    def __init__(self, source: Complex, target: Complex, mats):
        self.source = source
        self.target = target
        self.mats = list(mats)

    @property
    def top(self) -> int:
        return min(self.source.top, self.target.top, len(self.mats) - 1)

    def commutes(self) -> bool:
        for n in range(self.top):
            s, t = self.source, self.target
            lhs = _product(self.mats[n + 1], s.mats[n], t.dims[n + 1], s.dims[n + 1], s.dims[n])
            rhs = _product(t.mats[n], self.mats[n], t.dims[n + 1], t.dims[n], s.dims[n])
            if lhs != rhs:
                return False
        return True

    def then(self, other: "ChainMap") -> "ChainMap":
        """Composite ``other ∘ self``."""
        mats = [_product(other.mats[n], self.mats[n], other.target.dims[n], self.target.dims[n], self.source.dims[n])
                for n in range(min(len(self.mats), len(other.mats)))]
        return ChainMap(self.source, other.target, mats)

    def induced(self, n: int):
        """Matrix of H^n(source) -> H^n(target) in representative bases."""
        cols = [self.target.class_coordinates(n, mat_vec(self.mats[n], r)) for r in self.source.representatives(n)]
        return _from_columns(cols, self.target.betti(n))


@dataclass
class QuasiIsoReport:
    ok: bool
    up_to: int
    ranks: dict = field(default_factory=dict)   # n -> (dim H source, dim H target, rank)
    degree: int | None = None
    kind: str | None = None                     # "kernel" or "cokernel"
    witness: object = None                      # vector (complex) or element (presentation)

    def __bool__(self):
        return self.ok


def _induced_report(f: ChainMap, degrees, inject_at=None) -> QuasiIsoReport:
    ranks = {}
    last = max(list(degrees) + ([inject_at] if inject_at is not None else []), default=-1)
    for n in list(degrees) + ([inject_at] if inject_at is not None else []):
        m = f.induced(n)
        hs, ht = f.source.betti(n), f.target.betti(n)
        r = rank(m) if hs and ht else 0
        ranks[n] = (hs, ht, r)
        if r < hs:
            ker = kernel(m, hs) if ht else Subspace.full(hs)
            coeffs = ker.rows[0]
            reps = f.source.representatives(n)
            w = [sum((c * x for c, x in zip(coeffs, col)), 0) for col in zip(*reps)]
            return QuasiIsoReport(False, last, ranks, n, "kernel", w)
        if n != inject_at and r < ht:
            img = Subspace.span([list(col) for col in zip(*m)] if hs else [], ht)
            reps = f.target.representatives(n)
            for j in range(ht):
                e = [0] * ht
                e[j] = 1
                if not img.contains(e):
                    return QuasiIsoReport(False, last, ranks, n, "cokernel", list(reps[j]))
    return QuasiIsoReport(True, last, ranks)


def _as_chain_map(f, up_to: int) -> ChainMap:
    return f.chain_map() if isinstance(f, DgaMorphism) else f


def is_quasi_isomorphism(f, up_to: int) -> QuasiIsoReport:
    """Induced maps are isomorphisms in every degree ``<= up_to``."""
    cm = _as_chain_map(f, up_to)
    if up_to > cm.top - 1:
        raise CutoffError(f"up_to={up_to} exceeds the trusted range {cm.top - 1}")
    rep = _induced_report(cm, range(up_to + 1))
    return _attach_elements(f, rep)


def is_k_quasi_isomorphism(f, k: int) -> QuasiIsoReport:
    """Isomorphisms in degrees ``<= k`` and injective in degree ``k+1``."""
    cm = _as_chain_map(f, k + 1)
    if k + 1 > cm.top - 1:
        raise CutoffError(f"k+1={k + 1} exceeds the trusted range {cm.top - 1}")
    rep = _induced_report(cm, range(k + 1), inject_at=k + 1)
    return _attach_elements(f, rep)


def _attach_elements(f, rep: QuasiIsoReport) -> QuasiIsoReport:
    if not rep.ok and isinstance(f, DgaMorphism) and rep.witness is not None:
        alg = f.source if rep.kind == "kernel" else f.target
        rep.witness = alg.from_vector(rep.witness, alg.basis(rep.degree))
    return rep


# ---------------------------------------------------------------------------
# presentations


def algebra_complex(a: Algebra, which: str = "d", top: int | None = None) -> Complex:
    top = a.cutoff if top is None else top
    if top > a.cutoff:
        raise CutoffError(f"complex top {top} beyond cutoff {a.cutoff}")
    dims = [a.dim(n) for n in range(top + 1)]
    mats = [a.diff_matrix(n, which) for n in range(top)]
    return Complex(dims, mats, name=a.name)


@dataclass
class CohomologyTable:
    """Cohomology per degree (or per bidegree for ``dbar``) up to cutoff - 1."""

    algebra: Algebra
    which: str
    dims: dict
    representatives: dict          # key -> list of elements
    cocycles: dict                 # key -> Subspace of the cochain space
    coboundaries: dict
    bases: dict                    # key -> list of monomial keys

    def dim(self, key) -> int:
        return self.dims.get(key, 0)

    def series(self) -> list:
        """Dimensions by total degree."""
        out = {}
        for k, v in self.dims.items():
            n = k if isinstance(k, int) else k[0] + k[1]
            out[n] = out.get(n, 0) + v
        return [out.get(n, 0) for n in range(max(out) + 1)] if out else []

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def class_of(self, key, p) -> list:
        a = self.algebra
        v = a.to_vector(p, self.bases[key])
        if not self.cocycles[key].contains(v):
            raise ContainmentError("element is not a cocycle")
        r = self.coboundaries[key].reduce(v)
        reps = [a.to_vector(x, self.bases[key]) for x in self.representatives[key]]
        return Subspace.span(reps, len(v)).coordinates(r) if reps else _check_zero(r)


def cohomology(a: Algebra, which: str = "d", up_to: int | None = None) -> CohomologyTable:
    """Degreewise cohomology for ``d`` (or ``del``, ``dc``); degrees ``<= cutoff - 1``."""
    if which == "dbar":
        return dolbeault_cohomology(a, up_to)
    top = a.cutoff - 1 if up_to is None else up_to
    if top > a.cutoff - 1:
        raise CutoffError(f"cohomology up to {top} needs cutoff >= {top + 1}")
    dims, reps, kers, ims, bases = {}, {}, {}, {}, {}
    prev = None
    for n in range(top + 1):
        src = a.basis(n)
        dn = a.operator_matrix(lambda p: a.diff(p, which), src, a.basis(n + 1))
        K = kernel(dn, len(src))
        B = image(prev, len(src)) if prev is not None and prev and len(prev[0]) else Subspace.zero(len(src))
        Q = quotient_basis(K, B)
        dims[n] = len(Q)
        reps[n] = [a.from_vector(v, src) for v in Q]
        kers[n], ims[n], bases[n] = K, B, src
        prev = dn
    return CohomologyTable(a, which, dims, reps, kers, ims, bases)


def dolbeault_cohomology(a: Algebra, up_to: int | None = None) -> CohomologyTable:
    """``dbar``-cohomology per bidegree (p,q) with p + q <= cutoff - 1."""
    if not a.bigraded:
        raise PresentationError("dbar cohomology needs a bigraded presentation")
    top = a.cutoff - 1 if up_to is None else up_to
    if top > a.cutoff - 1:
        raise CutoffError(f"cohomology up to {top} needs cutoff >= {top + 1}")
    dims, reps, kers, ims, bases = {}, {}, {}, {}, {}
    op = lambda p: a.diff(p, "dbar")
    for n in range(top + 1):
        for p in range(n + 1):
            q = n - p
            src = a.bibasis(p, q)
            dn = a.operator_matrix(op, src, a.bibasis(p, q + 1))
            K = kernel(dn, len(src))
            if q > 0:
                below = a.bibasis(p, q - 1)
                dm = a.operator_matrix(op, below, src)
                B = image(dm, len(src)) if below else Subspace.zero(len(src))
            else:
                B = Subspace.zero(len(src))
            Q = quotient_basis(K, B)
            dims[(p, q)] = len(Q)
            reps[(p, q)] = [a.from_vector(v, src) for v in Q]
            kers[(p, q)], ims[(p, q)], bases[(p, q)] = K, B, src
    return CohomologyTable(a, "dbar", dims, reps, kers, ims, bases)


def betti_numbers(a: Algebra, which: str = "d") -> list:
    return cohomology(a, which).series()


def euler_window_check(a: Algebra, which: str = "d") -> bool:
    """sum_{n<=m} (-1)^n dim C^n = sum_{n<=m} (-1)^n dim H^n + (-1)^m rank(d: C^m -> C^{m+1})."""
    tab = cohomology(a, which)
    lhs = rhs = 0
    for m in range(a.cutoff):
        lhs += (-1) ** m * a.dim(m)
        rhs += (-1) ** m * tab.dims[m]
        if lhs != rhs + (-1) ** m * rank(a.diff_matrix(m, which)):
            return False
    return True


class DgaMorphism:
    """Algebra map given on generators; ``images[name]`` is an element of the target.

    ``source_which``/``target_which`` pick the differential on each side, so a
    map into ``(B, dbar)`` is expressed with ``target_which="dbar"``.
    """

    def __init__(self, source: Algebra, target: Algebra, images, source_which: str = "d",
                 target_which: str = "d", name: str = ""):
        self.source = source
        self.target = target
        self.images = {g.name: target.coerce(images.get(g.name, {})) if not isinstance(images.get(g.name), str)
                       else target.parse(images[g.name]) for g in source.gens}
        self.source_which = source_which
        self.target_which = target_which
        self.name = name
        self._cache: dict = {}

    def apply_monomial(self, exps) -> dict:
        hit = self._cache.get(exps)
        if hit is None:
            t = self.target
            hit = t.one()
            for e, g in zip(exps, self.source.gens):
                for _ in range(e):
                    hit = t.mul(hit, self.images[g.name])
            self._cache[exps] = hit
        return hit

    def __call__(self, p) -> dict:
        t = self.target
        acc: dict = {}
        for k, c in p.items():
            acc = t.add(acc, t.scale(self.apply_monomial(k), c))
        return acc

    def validate(self) -> tuple:
        """(ok, message) for degrees, relations and commutation with differentials."""
        s, t = self.source, self.target
        for g in s.gens:
            img = self.images[g.name]
            for k in img:
                if t.degree_of(k) != g.degree:
                    return False, f"image of {g.name} is not of degree {g.degree}"
                if s.bigraded and t.bigraded and g.bidegree is not None and t.bidegree_of(k) != g.bidegree:
                    return False, f"image of {g.name} is not of bidegree {g.bidegree}"
        for r in s.relations:
            img = t.one()
            for e, g in zip(r, s.gens):
                for _ in range(e):
                    img = t.mul(img, self.images[g.name])
            if img:
                return False, f"relation {s.format_monomial(r)} maps to {t.format(img)}"
        for g in s.gens:
            lhs = self(s.generator_differential(g.name, self.source_which))
            rhs = t.diff(self.images[g.name], self.target_which)
            if t.sub(lhs, rhs):
                return False, f"map does not commute with the differential on {g.name}"
        return True, "ok"

    def check(self) -> "DgaMorphism":
        ok, msg = self.validate()
        if not ok:
            raise PresentationError(msg)
        return self

    def matrix(self, n: int):
        s, t = self.source, self.target
        return _from_columns([t.to_vector(self.apply_monomial(k), t.basis(n)) for k in s.basis(n)], t.dim(n))

    def chain_map(self, top: int | None = None) -> ChainMap:
        top = min(self.source.cutoff, self.target.cutoff) if top is None else top
        src = algebra_complex(self.source, self.source_which, top)
        tgt = algebra_complex(self.target, self.target_which, top)
        return ChainMap(src, tgt, [self.matrix(n) for n in range(top + 1)])

    def then(self, other: "DgaMorphism") -> "DgaMorphism":
        """Composite ``other ∘ self``."""
        return DgaMorphism(self.source, other.target, {n: other(v) for n, v in self.images.items()},
                           self.source_which, other.target_which)


def identity_morphism(a: Algebra, which: str = "d") -> DgaMorphism:
    return DgaMorphism(a, a, {g.name: a.gen(g.name) for g in a.gens}, which, which)


@dataclass
class KunnethReport:
    ok: bool
    product: list
    convolution: list


def kunneth_check(a: Algebra, b: Algebra, which: str = "d") -> KunnethReport:
    """Compare H(a ⊗ b) with the convolution of H(a) and H(b), degrees < min cutoff."""
    ab, _ = tensor(a, b)
    top = ab.cutoff - 1
    ha = cohomology(a, which, min(top, a.cutoff - 1)).series()
    hb = cohomology(b, which, min(top, b.cutoff - 1)).series()
    hab = cohomology(ab, which, top).series()
    conv = [sum(ha[i] * hb[n - i] for i in range(n + 1) if i < len(ha) and n - i < len(hb)) for n in range(top + 1)]
    hab = hab + [0] * (top + 1 - len(hab))
    return KunnethReport(hab == conv, hab, conv)
