"""Presentations of graded-commutative (bi)differential algebras.

An :class:`Algebra` is the free graded-commutative algebra on a list of
generators (exterior on odd ones, polynomial on even ones) modulo an optional
monomial ideal, with differentials assigned on generators and extended by the
graded Leibniz rule.  The monomial ideal is how finite cohomology rings such
as ``Q[e]/(e^3)`` are encoded; it must be stable under every differential.

Elements are plain dicts ``{exponent tuple: coefficient}``.  Exponent tuples
index the algebra's generators in their canonical order, ``(degree,
declaration index)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .exactfield import QQ, QQI, Field, conj, format_scalar, join_fields, normalize


class PresentationError(ValueError):
    """The presentation violates a DGA/BBA axiom."""


class CutoffError(ValueError):
    """A computation needs degrees beyond the presentation's cutoff."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    bidegree: tuple | None = None
    conjugate: str | None = None  # partner's name; None means self-conjugate
    role: str = ""                # free-form tag, e.g. "H" or "W"
    weight: tuple | None = None   # optional Morgan type (p, q)

    def __post_init__(self):
        if self.degree < 1:
            raise PresentationError(f"generator {self.name} has degree {self.degree} < 1")
        if self.bidegree is not None:
            p, q = self.bidegree
            if p < 0 or q < 0 or p + q != self.degree:
                raise PresentationError(
                    f"generator {self.name}: bidegree {self.bidegree} incompatible with degree {self.degree}")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass
class ValidationReport:
    ok: bool
    checks: list = field(default_factory=list)
    violation: str | None = None

    def __bool__(self):
        return self.ok


def _add_into(acc: dict, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Algebra:
    """A finitely presented graded-commutative algebra with differentials.

    ``d`` is the total differential.  In bigraded mode pass ``dbar`` (type
    (0,1)) and optionally ``dee`` (type (1,0)); when ``dee`` is given the
    total differential is ``dee + dbar``.  Differentials are given as dicts
    ``name -> element`` or ``name -> expression string``.
    """

    def __init__(self, generators: Iterable[Generator], relations: Iterable = (),
                 d=None, dbar=None, dee=None, field: Field = QQ, cutoff: int = 8,
                 bigraded: bool = False, name: str = ""):
        gens = list(generators)
        order = sorted(range(len(gens)), key=lambda i: (gens[i].degree, i))
        self.gens = tuple(gens[i] for i in order)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        if len(self.index) != len(self.gens):
            raise PresentationError("duplicate generator names")
        for g in self.gens:
            if g.conjugate is not None and g.conjugate not in self.index:
                raise PresentationError(f"conjugate {g.conjugate} of {g.name} is not a generator")
            if bigraded and g.bidegree is None:
                raise PresentationError(f"bigraded presentation needs a bidegree for {g.name}")
        self.field = field
        self.cutoff = int(cutoff)
        self.bigraded = bigraded
        self.name = name
        self.degrees = tuple(g.degree for g in self.gens)
        self.odd = tuple(g.odd for g in self.gens)
        self.relations = tuple(sorted({self._as_exps(r) for r in relations}, reverse=True))
        self._mul_cache: dict = {}
        self._diff_cache: dict = {}
        self._basis_cache: dict = {}
        self._d = self._coerce_map(d)
        self._dbar = self._coerce_map(dbar)
        self._dee = self._coerce_map(dee)
        if not bigraded and self._dbar:
            raise PresentationError("dbar given for a singly graded presentation")

    # -- construction helpers ------------------------------------------------

    def _as_exps(self, mono) -> tuple:
        if isinstance(mono, tuple) and len(mono) == len(self.gens) and all(isinstance(x, int) for x in mono):
            return mono
        exps = [0] * len(self.gens)
        items = mono.items() if isinstance(mono, Mapping) else mono
        for name, e in items:
            exps[self.index[name]] += e
        return tuple(exps)

    def _coerce_map(self, m) -> dict:
        out = {}
        for name, val in (m or {}).items():
            if name not in self.index:
                raise PresentationError(f"differential assigned to unknown generator {name}")
            elem = self.parse(val) if isinstance(val, str) else self.coerce(val)
            if elem:
                out[name] = elem
        return out

    def coerce(self, p) -> dict:
        return {k: self.field(c) for k, c in p.items() if c}

    def with_differentials(self, d=None, dbar=None, dee=None, check: bool = True) -> "Algebra":
        new = self.replace(d=d if d is not None else self._d,
                           dbar=dbar if dbar is not None else self._dbar,
                           dee=dee if dee is not None else self._dee)
        if check:
            new.check()
        return new

    def replace(self, **kw) -> "Algebra":
        args = dict(generators=self.gens, relations=self.relations, d=self._d, dbar=self._dbar,
                    dee=self._dee, field=self.field, cutoff=self.cutoff, bigraded=self.bigraded,
                    name=self.name)
        args.update(kw)
        return Algebra(**args)

    def complexified(self) -> "Algebra":
        return self if self.field.complex else self.replace(field=QQI)

    def with_cutoff(self, cutoff: int) -> "Algebra":
        return self.replace(cutoff=cutoff)

    # -- elements -------------------------------------------------------------

    @property
    def unit_key(self) -> tuple:
        return (0,) * len(self.gens)

    def one(self) -> dict:
        return {self.unit_key: self.field(1)}

    def scalar(self, c) -> dict:
        c = self.field(c)
        return {self.unit_key: c} if c else {}

    def gen(self, name: str) -> dict:
        e = [0] * len(self.gens)
        e[self.index[name]] = 1
        return {tuple(e): self.field(1)}

    def monomial(self, exps) -> dict:
        """Element for an exponent vector, or zero if it lies in the relation ideal."""
        exps = self._as_exps(exps)
        if self._killed(exps) or any(o and e > 1 for o, e in zip(self.odd, exps)):
            return {}
        return {exps: self.field(1)}

    def parse(self, text: str) -> dict:
        from .dsl import parse_expression
        return parse_expression(text, self)

    def add(self, *ps) -> dict:
        acc: dict = {}
        for p in ps:
            for k, c in p.items():
                _add_into(acc, k, c)
        return acc

    def scale(self, p, c) -> dict:
        c = self.field(c)
        if not c:
            return {}
        return {k: v * c for k, v in p.items()}

    def sub(self, p, q) -> dict:
        return self.add(p, self.scale(q, -1))

    def is_zero(self, p) -> bool:
        return not any(p.values())

    # -- gradings ---------------------------------------------------------------

    def degree_of(self, exps) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def bidegree_of(self, exps) -> tuple:
        p = q = 0
        for e, g in zip(exps, self.gens):
            if e:
                p += e * g.bidegree[0]
                q += e * g.bidegree[1]
        return (p, q)

    def weight_of(self, exps) -> tuple:
        p = q = 0
        for e, g in zip(exps, self.gens):
            if e:
                if g.weight is None:
                    raise PresentationError(f"generator {g.name} has no weight type")
                p += e * g.weight[0]
                q += e * g.weight[1]
        return (p, q)

    def degree(self, p) -> int | None:
        """Degree of a homogeneous element (None for zero)."""
        degs = {self.degree_of(k) for k in p}
        if len(degs) > 1:
            raise PresentationError("inhomogeneous element")
        return degs.pop() if degs else None

    def role_count(self, exps, role: str) -> int:
        return sum(e for e, g in zip(exps, self.gens) if g.role == role)

    # -- multiplication -------------------------------------------------------

    def _killed(self, exps) -> bool:
        for r in self.relations:
            if all(a >= b for a, b in zip(exps, r)):
                return True
        return False

    def _mono_mul(self, a: tuple, b: tuple, kill: bool = True):
        key = (a, b, kill)
        hit = self._mul_cache.get(key)
        if hit is not None or key in self._mul_cache:
            return hit
        s = tuple(x + y for x, y in zip(a, b))
        res = None
        if not any(o and e > 1 for o, e in zip(self.odd, s)) and not (kill and self._killed(s)):
            # Koszul sign: each odd generator of b passes the odd generators of a placed after it.
            swaps = 0
            n = len(a)
            for j in range(n):
                if b[j] and self.odd[j]:
                    for i in range(j + 1, n):
                        if a[i] and self.odd[i]:
                            swaps += 1
            res = (-1 if swaps % 2 else 1, s)
        self._mul_cache[key] = res
        return res

    def mul(self, p, q, kill: bool = True) -> dict:
        acc: dict = {}
        for ka, ca in p.items():
            for kb, cb in q.items():
                r = self._mono_mul(ka, kb, kill)
                if r is not None:
                    _add_into(acc, r[1], ca * cb * r[0])
        return acc

    def product(self, *ps) -> dict:
        out = self.one()
        for p in ps:
            out = self.mul(out, p)
        return out

    def power(self, p, n: int) -> dict:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, p)
        return out

    # -- differentials ---------------------------------------------------------

    def generator_differential(self, name: str, which: str = "d") -> dict:
        if which == "d":
            if self.bigraded:
                return self.add(self._dee.get(name, {}), self._dbar.get(name, {}))
            return self._d.get(name, {})
        if which == "dbar":
            if not self.bigraded:
                raise PresentationError("dbar needs a bigraded presentation")
            return self._dbar.get(name, {})
        if which == "del":
            if not self.bigraded:
                raise PresentationError("del needs a bigraded presentation")
            return self._dee.get(name, {})
        if which == "dc":
            # kernel-equivalent form of d^c = i(dbar - del)
            return self.sub(self._dbar.get(name, {}), self._dee.get(name, {}))
        raise ValueError(f"unknown differential {which!r}")

    def _mono_diff(self, exps: tuple, which: str, kill: bool = True) -> dict:
        key = (exps, which, kill)
        hit = self._diff_cache.get(key)
        if hit is not None:
            return hit
        acc: dict = {}
        n = len(exps)
        prefix_deg = 0
        for k in range(n):
            a = exps[k]
            if not a:
                continue
            dg = self.generator_differential(self.gens[k].name, which)
            if dg:
                pre = tuple(exps[i] if i < k else 0 for i in range(n))
                low = tuple(a - 1 if i == k else 0 for i in range(n))
                post = tuple(exps[i] if i > k else 0 for i in range(n))
                f = self.field(a * (-1 if prefix_deg % 2 else 1))
                term = self.mul({low: f}, dg, kill)
                term = self.mul({pre: self.field(1)}, term, kill)
                term = self.mul(term, {post: self.field(1)}, kill)
                for kk, c in term.items():
                    _add_into(acc, kk, c)
            prefix_deg += a * self.degrees[k]
        self._diff_cache[key] = acc
        return acc

    def diff(self, p, which: str = "d") -> dict:
        acc: dict = {}
        for k, c in p.items():
            for kk, cc in self._mono_diff(k, which).items():
                _add_into(acc, kk, c * cc)
        return acc

    # -- conjugation -------------------------------------------------------------

    def conjugate(self, p) -> dict:
        """Antilinear involution swapping each generator with its partner."""
        acc: dict = {}
        for k, c in p.items():
            img = self.one()
            for e, g in zip(k, self.gens):
                if e:
                    partner = self.gen(g.conjugate or g.name)
                    for _ in range(e):
                        img = self.mul(img, partner)
            for kk, cc in img.items():
                _add_into(acc, kk, conj(c) * cc)
        return acc

    # -- bases --------------------------------------------------------------------

    def _check_cutoff(self, n: int):
        if n > self.cutoff:
            raise CutoffError(f"degree {n} exceeds cutoff N={self.cutoff} of {self.name or 'presentation'}")

    def basis(self, n: int) -> list:
        """Monomials of degree n, in descending lexicographic order."""
        self._check_cutoff(n)
        hit = self._basis_cache.get(n)
        if hit is not None:
            return hit
        out: list = []
        if n >= 0:
            m = len(self.gens)
            cur = [0] * m

            def rec(i, rem):
                if i == m:
                    if rem == 0:
                        out.append(tuple(cur))
                    return
                deg = self.degrees[i]
                top = min(1, rem // deg) if self.odd[i] else rem // deg
                for e in range(top, -1, -1):
                    cur[i] = e
                    rec(i + 1, rem - e * deg)
                cur[i] = 0

            rec(0, n)
            out = [k for k in out if not self._killed(k)]
        self._basis_cache[n] = out
        return out

    def bibasis(self, p: int, q: int) -> list:
        return [k for k in self.basis(p + q) if self.bidegree_of(k) == (p, q)]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def top_degree(self) -> int | None:
        """Top nonzero degree if the algebra is finite dimensional, else None."""
        for i, g in enumerate(self.gens):
            if not g.odd:
                r = [r[i] for r in self.relations if sum(r) == r[i]]
                if not r:
                    return None
        top = 0
        for n in range(self.cutoff + 1):
            if self.basis(n):
                top = n
        return top

    # -- vectors and matrices ------------------------------------------------------

    def to_vector(self, p, keys: list) -> list:
        idx = {k: i for i, k in enumerate(keys)}
        v = [Fraction(0)] * len(keys)
        for k, c in p.items():
            if k not in idx:
                raise PresentationError(f"term {self.format_monomial(k)} outside the given basis")
            v[idx[k]] = c
        return v

    def from_vector(self, v, keys: list) -> dict:
        return {k: normalize(c) for k, c in zip(keys, v) if c}

    def operator_matrix(self, op: Callable[[dict], dict], src: list, tgt: list):
        idx = {k: i for i, k in enumerate(tgt)}
        m = [[Fraction(0)] * len(src) for _ in tgt]
        for j, k in enumerate(src):
            for kk, c in op({k: self.field(1)}).items():
                if kk not in idx:
                    raise PresentationError(
                        f"image term {self.format_monomial(kk)} of {self.format_monomial(k)} outside target basis")
                m[idx[kk]][j] = c
        return m

    def diff_matrix(self, n: int, which: str = "d"):
        """Matrix of the differential from degree n to degree n+1."""
        return self.operator_matrix(lambda p: self.diff(p, which), self.basis(n), self.basis(n + 1))

    # -- validation ------------------------------------------------------------------

    def _homogeneous(self, p, degree=None, bidegree=None) -> bool:
        for k in p:
            if degree is not None and self.degree_of(k) != degree:
                return False
            if bidegree is not None and self.bidegree_of(k) != bidegree:
                return False
        return True

    def validate(self) -> ValidationReport:
        checks = []

        def fail(msg):
            return ValidationReport(False, checks, msg)

        for g in self.gens:
            if g.conjugate is not None:
                partner = self.gens[self.index[g.conjugate]]
                if (partner.conjugate or partner.name) != g.name:
                    return fail(f"conjugation is not an involution on {g.name}")
                if partner.degree != g.degree:
                    return fail(f"conjugate of {g.name} has a different degree")
                if self.bigraded and partner.bidegree != g.bidegree[::-1]:
                    return fail(f"conjugate of {g.name} must have bidegree {g.bidegree[::-1]}")
        checks.append("conjugation involutive")
        ops = ["dbar", "del"] if self.bigraded else ["d"]
        for which in ops:
            for g in self.gens:
                dg = self.generator_differential(g.name, which)
                if self.bigraded:
                    shift = (1, 0) if which == "del" else (0, 1)
                    target = (g.bidegree[0] + shift[0], g.bidegree[1] + shift[1])
                    if not self._homogeneous(dg, bidegree=target):
                        return fail(f"{which}({g.name}) is not of bidegree {target}")
                elif not self._homogeneous(dg, degree=g.degree + 1):
                    return fail(f"d({g.name}) is not of degree {g.degree + 1}")
        checks.append("differentials homogeneous")
        for which in ops:
            for r in self.relations:
                img = self._mono_diff(r, which, kill=False)
                if any(not self._killed(k) for k in img):
                    return fail(f"relation {self.format_monomial(r)} is not stable under {which}")
        if self.relations:
            checks.append("relation ideal stable")
        pairs = [("dbar", "dbar"), ("del", "del"), ("del", "dbar")] if self.bigraded else [("d", "d")]
        for a, b in pairs:
            for g in self.gens:
                x = self.gen(g.name)
                val = self.diff(self.diff(x, b), a)
                if a != b:
                    val = self.add(val, self.diff(self.diff(x, a), b))
                if val:
                    label = f"{a}∘{b}" if a == b else f"{a}∘{b}+{b}∘{a}"
                    return fail(f"{label} does not vanish on generator {g.name}: {self.format(val)}")
        checks.append("d^2 = 0 on generators" if not self.bigraded else "bigraded identities on generators")
        if self.bigraded and self._dee and any(g.conjugate for g in self.gens):
            for g in self.gens:
                x = self.gen(g.name)
                lhs = self.conjugate(self.diff(x, "dbar"))
                rhs = self.diff(self.conjugate(x), "del")
                if self.sub(lhs, rhs):
                    return fail(f"conj(dbar {g.name}) != del(conj {g.name})")
            checks.append("conjugation exchanges del and dbar")
        return ValidationReport(True, checks, None)

    def check(self) -> "Algebra":
        rep = self.validate()
        if not rep.ok:
            raise PresentationError(rep.violation)
        return self

    # -- formatting --------------------------------------------------------------------

    def format_monomial(self, exps) -> str:
        parts = []
        for e, g in zip(exps, self.gens):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    def format(self, p) -> str:
        if not p:
            return "0"
        keys = sorted(p, key=lambda k: (self.degree_of(k), tuple(-x for x in k)))
        out = []
        for k in keys:
            c = normalize(p[k])
            mono = self.format_monomial(k)
            cs = format_scalar(c)
            if mono == "1":
                term = cs
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{cs}*{mono}"
            out.append(term)
        s = " + ".join(out)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return (f"Algebra({self.name or '?'}: gens={[g.name for g in self.gens]}, "
                f"field={self.field.name}, N={self.cutoff}, bigraded={self.bigraded})")


# ---------------------------------------------------------------------------
# constructions


def ground_field(field: Field = QQ, cutoff: int = 8) -> Algebra:
    return Algebra([], field=field, cutoff=cutoff, name="K")


def _fresh_name(name: str, taken: set) -> str:
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def translate(p, src: Algebra, tgt: Algebra, name_map: Mapping[str, str] | None = None) -> dict:
    """Transport an element along a generator renaming (identity by default)."""
    name_map = name_map or {}
    acc: dict = {}
    for k, c in p.items():
        img = tgt.one()
        for e, g in zip(k, src.gens):
            for _ in range(e):
                img = tgt.mul(img, tgt.gen(name_map.get(g.name, g.name)))
        for kk, cc in img.items():
            _add_into(acc, kk, tgt.field(c) * cc)
    return acc


def tensor(a: Algebra, b: Algebra, name: str = "") -> tuple:
    """Tensor product; returns ``(algebra, renaming of b's generators)``.

    Colliding names from ``b`` get the first free ``_k`` suffix (k >= 2).
    """
    if a.bigraded != b.bigraded:
        raise PresentationError("cannot tensor a graded with a bigraded presentation")
    taken = set(a.index)
    rename = {}
    for g in b.gens:
        new = g.name if g.name not in taken else _fresh_name(g.name, taken | set(b.index))
        rename[g.name] = new
        taken.add(new)
    bgens = [replace(g, name=rename[g.name],
                     conjugate=rename[g.conjugate] if g.conjugate else None) for g in b.gens]
    gens = list(a.gens) + bgens
    rels = [{g.name: e for g, e in zip(a.gens, r) if e} for r in a.relations]
    rels += [{rename[g.name]: e for g, e in zip(b.gens, r) if e} for r in b.relations]
    field = join_fields(a.field, b.field)
    out = Algebra(gens, rels, field=field, cutoff=min(a.cutoff, b.cutoff), bigraded=a.bigraded,
                  name=name or f"{a.name}⊗{b.name}")
    maps = {}
    for which in (["dbar", "del"] if a.bigraded else ["d"]):
        m = {}
        for g in a.gens:
            m[g.name] = translate(a.generator_differential(g.name, which), a, out)
        for g in b.gens:
            m[rename[g.name]] = translate(b.generator_differential(g.name, which), b, out, rename)
        maps[which] = m
    if a.bigraded:
        out = out.replace(dbar=maps["dbar"], dee=maps["del"])
    else:
        out = out.replace(d=maps["d"])
    return out, rename


def exterior(names: Iterable[str], degree: int = 1, field: Field = QQ, cutoff: int = 8, d=None) -> Algebra:
    """Free algebra on generators of one degree (exterior if odd)."""
    alg = Algebra([Generator(n, degree) for n in names], field=field, cutoff=cutoff)
    return alg.with_differentials(d=d) if d else alg


def graded_dimension_series(degrees: Iterable[int], upto: int) -> list:
    """Coefficients of prod (1+t^k) (k odd) * prod 1/(1-t^k) (k even) up to t^upto."""
    coeffs = [0] * (upto + 1)
    coeffs[0] = 1
    for k in degrees:
        if k % 2:
            for n in range(upto, k - 1, -1):
                coeffs[n] += coeffs[n - k]
        else:
            for n in range(k, upto + 1):
                coeffs[n] += coeffs[n - k]
    return coeffs
