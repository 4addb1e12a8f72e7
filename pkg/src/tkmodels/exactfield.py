"""Exact scalars over Q and Q(i), dense matrices, and canonical subspaces.

Scalars in Q mode are plain :class:`fractions.Fraction` values; Q(i) mode uses
:class:`GaussianRational`.  Both support ``+ - * /`` with each other and with
ints, so the elimination routines below are written once for both fields.

Linear maps are stored as row-major matrices ``m[i][j]`` = coefficient of target
basis vector ``i`` in the image of source basis vector ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


class GaussianRational:
    """Exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._new(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._new(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._new(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._new(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._new(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                return GaussianRational._new(a * c, a * d)
            if not d:
                return GaussianRational._new(a * c, b * c)
            return GaussianRational._new(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._new(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def conj(x):
    """Complex conjugation; the identity on rationals."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


def normalize(x):
    """Collapse a Gaussian rational with zero imaginary part to a Fraction."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    return Fraction(x)


def format_scalar(x) -> str:
    x = normalize(x)
    if isinstance(x, Fraction):
        return str(x)
    re, im = x.re, x.im
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{im}*i"
    if re == 0:
        return ims
    if im < 0:
        return f"({re}{ims})"
    return f"({re}+{ims})"


class Field:
    """Ground field mode: ``Q`` or ``Q(i)``."""

    def __init__(self, name: str):
        if name not in ("Q", "Q(i)"):
            raise ValueError(f"unknown field {name!r}; use 'Q' or 'Q(i)'")
        self.name = name

    @property
    def complex(self) -> bool:
        return self.name == "Q(i)"

    def __call__(self, x):
        if isinstance(x, GaussianRational):
            if not self.complex and x.im != 0:
                raise ValueError(f"{x} is not in Q")
            return x if self.complex else x.re
        return GaussianRational(x) if self.complex else Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Field({self.name!r})"


QQ = Field("Q")
QQI = Field("Q(i)")


def join_fields(a: Field, b: Field) -> Field:
    return QQI if (a.complex or b.complex) else QQ


# ---------------------------------------------------------------------------
# dense matrices


def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m, cols: int | None = None):
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def mat_mul(a, b, inner: int | None = None):
    """Product of an r×k and a k×c matrix."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    c = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * c
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(c):
                    y = brow[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append([Fraction(v) if isinstance(v, int) else v for v in acc])
    return out


def mat_vec(m, v):
    out = []
    for row in m:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s if s != 0 else Fraction(0))
    return out


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` with zero rows dropped; pivots are leftmost and
    every pivot entry is 1, so equal row spaces give identical output.
    """
    m = [[x if isinstance(x, (Fraction, GaussianRational)) else Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            row = [x * inv if x else x for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    m[i] = [x - f * y if y else x for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    out = [tuple(normalize(x) for x in row) for row in m[:r]]
    return out, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def kernel(m, ncols: int | None = None) -> "Subspace":
    """Null space ``{x : m x = 0}`` as a canonical subspace."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return Subspace.span(basis, ncols)


def image(m, nrows: int | None = None) -> "Subspace":
    """Column space of ``m``."""
    if nrows is None:
        nrows = len(m)
    return Subspace.span(transpose(m) if m else [], nrows)


def solve(m, b, ncols: int | None = None):
    """A particular solution of ``m x = b`` (free variables set to zero), or None."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    rows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return x


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^ambient stored by its unique reduced echelon basis."""

    ambient: int
    rows: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in ambient {ambient}")
        rows, pivots = rref(vecs, ambient)
        return cls(ambient, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span(identity(ambient), ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise DimensionError(f"ambient {self.ambient} vs {other.ambient}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.rows or self.dim == self.ambient:
            return self
        if not self.rows or other.dim == other.ambient:
            return other
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows [a | a] and [b | 0]; rows with zero left half span a∩b.
        self._check(other)
        n = self.ambient
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(n)
        if self.dim == n:
            return other
        if other.dim == n:
            return self
        aug = [list(r) + list(r) for r in self.rows]
        aug += [list(r) + [Fraction(0)] * n for r in other.rows]
        rows, pivots = rref(aug, 2 * n)
        inter = [row[n:] for row, p in zip(rows, pivots) if p >= n]
        return Subspace.span(inter, n)

    __and__ = intersect

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after eliminating this subspace's pivot columns."""
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def is_subset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    __le__ = is_subset

    def coordinates(self, v: Sequence) -> list:
        """Coefficients of ``v`` in the echelon basis; raises if v is outside."""
        coeffs = [v[p] for p in self.pivots]
        rest = list(v)
        for c, row in zip(coeffs, self.rows):
            if c:
                rest = [x - c * y if y else x for x, y in zip(rest, row)]
        if any(rest):
            raise ContainmentError("vector is not in the subspace")
        return [normalize(c) for c in coeffs]

    def conjugate(self, conj_matrix=None) -> "Subspace":
        """Image under an antilinear involution ``v -> P conj(v)``.

        With no matrix the standard coordinatewise conjugation is used.
        """
        vecs = [[conj(x) for x in r] for r in self.rows]
        if conj_matrix is not None:
            vecs = [mat_vec(conj_matrix, v) for v in vecs]
        return Subspace.span(vecs, self.ambient)

    def image_under(self, m, target_dim: int) -> "Subspace":
        return Subspace.span([mat_vec(m, r) for r in self.rows], target_dim)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def quotient_basis(a: Subspace, b: Subspace) -> list:
    """Canonical vectors of ``a`` completing a basis of ``b`` to one of ``a``.

    The complement is ``{v in a : v vanishes on the pivot columns of b}``.
    """
    a._check(b)
    if not b.is_subset(a):
        raise ContainmentError("quotient_basis needs b ⊆ a")
    reduced = [b.reduce(r) for r in a.rows]
    rows, _ = rref(reduced, a.ambient)
    return [list(r) for r in rows]


def sum_of(spaces: Iterable[Subspace], ambient: int) -> Subspace:
    vecs = []
    for s in spaces:
        vecs.extend(s.rows)
    return Subspace.span(vecs, ambient)


def is_direct_sum(spaces: Sequence[Subspace], ambient: int) -> bool:
    return sum(s.dim for s in spaces) == sum_of(spaces, ambient).dim
