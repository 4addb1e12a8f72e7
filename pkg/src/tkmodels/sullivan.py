"""Minimal models as towers of Hirsch extensions, and formality certificates."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cohomology import (ChainMap, Complex, DgaMorphism, QuasiIsoReport, algebra_complex,
                         is_k_quasi_isomorphism, is_quasi_isomorphism)
from .exactfield import Subspace, kernel, normalize, quotient_basis, solve, zeros
from .gca import Algebra, CutoffError, Generator, PresentationError, ground_field, translate


class ResourceError(RuntimeError):
    """The construction did not terminate within its iteration budget."""


@dataclass
class Stage:
    """One Hirsch extension of the tower."""

    degree: int
    names: tuple
    kind: str            # "cohomology" (d = 0, hits new classes) or "kill" (d = kernel cocycle)
    beta: dict           # name -> element of the previous stage
    images: dict         # name -> element of the target


@dataclass
class MinimalModel:
    algebra: Algebra
    morphism: DgaMorphism
    up_to: int
    stages: list
    certificate: QuasiIsoReport | None = None

    def generator_counts(self) -> dict:
        out: dict = {}
        for g in self.algebra.gens:
            out[g.degree] = out.get(g.degree, 0) + 1
        return dict(sorted(out.items()))

    def stage_algebra(self, s: int) -> Algebra:
        """Sub-DGA generated by the first ``s`` stages."""
        names = [n for st in self.stages[:s] for n in st.names]
        return _subalgebra(self.algebra, names)


def _subalgebra(a: Algebra, names) -> Algebra:
    gens = [a.gens[a.index[n]] for n in names]
    sub = Algebra(gens, field=a.field, cutoff=a.cutoff, name=a.name)
    d = {n: translate(a.generator_differential(n), a, sub) for n in names}
    return sub.with_differentials(d=d)


def _adjoin(m: Algebra, new: list) -> Algebra:
    """Add generators ``(name, degree, d-value in m)``."""
    gens = list(m.gens) + [Generator(n, k) for n, k, _ in new]
    out = Algebra(gens, field=m.field, cutoff=m.cutoff, name=m.name)
    d = {g.name: translate(m.generator_differential(g.name), m, out) for g in m.gens}
    d.update({n: translate(dv, m, out) for n, _, dv in new})
    return out.with_differentials(d=d, check=False)


def _shuffle(vectors: list, rng) -> list:
    """Random invertible recombination, used to vary tie-breaking."""
    if rng is None or len(vectors) < 2:
        return vectors
    out = []
    for i, v in enumerate(vectors):
        w = list(v)
        for j in range(i + 1, len(vectors)):
            c = rng.randint(-2, 2)
            if c:
                w = [normalize(x + c * y) for x, y in zip(w, vectors[j])]
        out.append(w)
    rng.shuffle(out)
    return out


class _Builder:
    def __init__(self, target: Algebra, top: int, seed=None, max_rounds: int = 50):
        self.target = target
        self.top = top                       # complexes are built up to this degree
        self.rng = random.Random(seed) if seed is not None else None
        self.max_rounds = max_rounds
        self.m = ground_field(target.field, top).replace(name=f"min({target.name})")
        self.images: dict = {}
        self.stages: list = []
        self.counter: dict = {}

    def morphism(self) -> DgaMorphism:
        return DgaMorphism(self.m, self.target, self.images)

    def chain(self) -> ChainMap:
        return self.morphism().chain_map(self.top)

    def _names(self, degree: int, count: int) -> list:
        stage = len(self.stages) + 1
        return [f"v{degree}_{stage}_{i + 1}" for i in range(count)]

    def surject(self, k: int) -> bool:
        cm = self.chain()
        ht = cm.target.betti(k)
        if not ht:
            return False
        hs = cm.source.betti(k)
        m = cm.induced(k)
        img = Subspace.span([list(col) for col in zip(*m)] if hs else [], ht)
        missing = _shuffle(quotient_basis(Subspace.full(ht), img), self.rng)
        if not missing:
            return False
        reps = cm.target.representatives(k)
        t = self.target
        names = self._names(k, len(missing))
        imgs = {}
        for n, c in zip(names, missing):
            vec = [sum((x * r[i] for x, r in zip(c, reps)), 0) for i in range(t.dim(k))]
            imgs[n] = t.from_vector(vec, t.basis(k))
        self._extend(k, names, "cohomology", {n: {} for n in names}, imgs)
        return True

    def kill(self, k: int) -> bool:
        """Kill the kernel of H^{k+1}(M) -> H^{k+1}(A) with degree-k generators."""
        cm = self.chain()
        hs = cm.source.betti(k + 1)
        if not hs:
            return False
        ht = cm.target.betti(k + 1)
        m = cm.induced(k + 1)
        ker = kernel(m, hs) if ht else Subspace.full(hs)
        if not ker.dim:
            return False
        coeffs = _shuffle([list(r) for r in ker.rows], self.rng)
        reps = cm.source.representatives(k + 1)
        src = self.m.basis(k + 1)
        t = self.target
        dk = t.diff_matrix(k)
        names = self._names(k, len(coeffs))
        beta, imgs = {}, {}
        phi = self.morphism()
        for n, c in zip(names, coeffs):
            vec = [sum((x * r[i] for x, r in zip(c, reps)), 0) for i in range(len(src))]
            z = self.m.from_vector(vec, src)
            fz = t.to_vector(phi(z), t.basis(k + 1))
            sol = solve(dk, fz, t.dim(k))
            if sol is None:
                raise PresentationError(f"class of {self.m.format(z)} maps to a non-exact cocycle")
            beta[n] = z
            imgs[n] = t.from_vector(sol, t.basis(k))
        self._extend(k, names, "kill", beta, imgs)
        return True

    def _extend(self, k, names, kind, beta, imgs):
        self.m = _adjoin(self.m, [(n, k, beta[n]) for n in names])
        self.images.update(imgs)
        self.stages.append(Stage(k, tuple(names), kind, beta, imgs))

    def run_degree(self, k: int):
        self.surject(k)
        for _ in range(self.max_rounds):
            if not self.kill(k):
                return
        raise ResourceError(f"degree {k}: kernel in degree {k + 1} not killed after {self.max_rounds} rounds")


def _check_connected(a: Algebra):
    if algebra_complex(a, "d", 1).betti(0) != 1:
        raise PresentationError("minimal models need H^0 = ground field")


def minimal_model(a: Algebra, up_to: int, seed=None, max_rounds: int = 50) -> MinimalModel:
    """Tower ``M`` with ``M -> a`` a quasi-isomorphism in degrees ``<= up_to``."""
    if up_to > a.cutoff - 2:
        raise CutoffError(f"up_to={up_to} needs cutoff >= {up_to + 2} (have {a.cutoff})")
    _check_connected(a)
    b = _Builder(a, up_to + 2, seed, max_rounds)
    for k in range(1, up_to + 1):
        b.run_degree(k)
    phi = b.morphism().check()
    cert = is_quasi_isomorphism(phi, up_to)
    return MinimalModel(b.m, phi, up_to, b.stages, cert)


def one_minimal_model(a: Algebra, stages: int) -> MinimalModel:
    """Degree-1 tower; stage 1 hits H^1, each later stage kills the H^2 kernel once."""
    if a.cutoff < 3:
        raise CutoffError("the 1-minimal model needs cutoff >= 3")
    _check_connected(a)
    b = _Builder(a, 3)
    if stages >= 1:
        b.surject(1)
        for _ in range(stages - 1):
            if not b.kill(1):
                break
    phi = b.morphism().check()
    cert = is_k_quasi_isomorphism(phi, 1)
    return MinimalModel(b.m, phi, 1, b.stages, cert)


def is_minimal(a: Algebra) -> bool:
    """Every generator's differential is a combination of products of generators."""
    for g in a.gens:
        for k in a.generator_differential(g.name):
            if sum(k) < 2:
                return False
    return True


# ---------------------------------------------------------------------------
# formality


@dataclass
class FormalityCertificate:
    ok: bool
    strategy: str | None
    zigzag: list = field(default_factory=list)    # (label, QuasiIsoReport)
    attempts: list = field(default_factory=list)  # (strategy, reason) for failed strategies

    def __bool__(self):
        return self.ok


def _zero_differential(a: Algebra) -> bool:
    return all(not a.generator_differential(g.name) for g in a.gens)


def _splitting_map(mm: MinimalModel, top: int) -> tuple:
    """``psi: M -> H(a)`` sending closed generators to their classes and the rest to 0."""
    m, a = mm.algebra, mm.morphism.target
    target = algebra_complex(a, "d", top + 1)
    killed = {n for st in mm.stages if st.kind == "kill" for n in st.names}
    chi = DgaMorphism(m, a, {n: ({} if n in killed else v) for n, v in mm.morphism.images.items()})
    for st in mm.stages:
        for n in st.names:
            if n in killed and any(target.class_coordinates(st.degree + 1, a.to_vector(chi(st.beta[n]), a.basis(st.degree + 1)))):
                return None, f"d{n} has a nonzero image in cohomology"
    hdims = [target.betti(n) for n in range(top + 1)]
    hcx = Complex(hdims, [zeros(hdims[n + 1], hdims[n]) for n in range(top)])
    mats = []
    for n in range(top + 1):
        cols = [target.class_coordinates(n, a.to_vector(chi({k: 1}), a.basis(n))) for k in m.basis(n)]
        mm_ = zeros(hdims[n], len(cols))
        for j, c in enumerate(cols):
            for i, x in enumerate(c):
                mm_[i][j] = x
        mats.append(mm_)
    return ChainMap(algebra_complex(m, "d", top), hcx, mats), None


def is_formal_certificate(a: Algebra, up_to: int) -> FormalityCertificate:
    """Search for a zig-zag of quasi-isomorphisms between ``a`` and its cohomology.

    Strategies, in order: zero differential; the ``ker d^c`` zig-zag for
    bigraded presentations with both differentials; the minimal model
    ``a <- M -> H(a)`` where closed generators go to their classes and
    the others to zero.  A failed search is not a proof of non-formality.
    """
    attempts = []
    if _zero_differential(a):
        return FormalityCertificate(True, "zero-differential", [("identity", QuasiIsoReport(True, up_to))])
    attempts.append(("zero-differential", "differential is nonzero"))
    if a.bigraded and a._dee:
        from .dolbeault import ddbar_check, dc_zigzag
        rep = ddbar_check(a)
        if rep.ok:
            steps = dc_zigzag(a, up_to)
            if all(r.ok for _, r in steps):
                return FormalityCertificate(True, "dc-kernel", steps, attempts)
            attempts.append(("dc-kernel", "an arrow is not a quasi-isomorphism"))
        else:
            attempts.append(("dc-kernel", f"ddbar lemma fails in degree {rep.first_failure}"))
    try:
        mm = minimal_model(a, up_to)
    except (ResourceError, CutoffError) as exc:
        attempts.append(("model-splitting", str(exc)))
        return FormalityCertificate(False, None, [], attempts)
    psi, why = _splitting_map(mm, up_to + 1)
    if psi is None:
        attempts.append(("model-splitting", why))
        return FormalityCertificate(False, None, [], attempts)
    rep = is_quasi_isomorphism(psi, up_to)
    if not rep.ok:
        attempts.append(("model-splitting", f"M -> H fails in degree {rep.degree} ({rep.kind})"))
        return FormalityCertificate(False, None, [], attempts)
    return FormalityCertificate(True, "model-splitting", [("M -> A", mm.certificate), ("M -> H(A)", rep)], attempts)
