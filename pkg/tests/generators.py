"""Random small inputs shared by the property tests and the acceptance suite."""
import random

from tkmodels.cohomology import algebra_complex
from tkmodels.dsl import load
from tkmodels.hirsch import HirschData

# bases with total cohomology dimension at most 8
BASES = [
    "kind algebra\nname point\ncutoff 6\n",
    "kind algebra\nname circle\ncutoff 6\ngen t : 1\n",
    "kind algebra\nname torus2\ncutoff 6\ngen s, t : 1\n",
    "kind algebra\nname torus3\ncutoff 6\ngen r, s, t : 1\n",
    "kind algebra\nname cp2\ncutoff 6\nclass e : 2\nrelation e^3\n",
    "kind algebra\nname cp3\ncutoff 7\nclass e : 2\nrelation e^4\n",
    "kind algebra\nname s2xs2\ncutoff 6\nclass a, b : 2\nrelation a^2\nrelation b^2\n",
    "kind algebra\nname heis\ncutoff 6\ngen r, s, t : 1\nd t = r*s\n",
    "kind algebra\nname circle_cp1\ncutoff 6\ngen t : 1\nclass e : 2\nrelation e^2\n",
    "kind algebra\nname s2\ncutoff 6\nclass e : 2\nrelation e^2\n",
]


def total_cohomology(a):
    cx = algebra_complex(a, "d", a.cutoff - 1)
    return sum(cx.betti(n) for n in range(cx.top))


def random_extension(rng: random.Random, zero_beta: bool = False):
    """Degree-1 Hirsch data over one of the small bases; beta is a random degree-2 cocycle."""
    base = load(rng.choice(BASES))
    nv = rng.randint(1, 3)
    names = [f"v{i}" for i in range(nv)]
    cx = algebra_complex(base, "d", 3)
    cyc = cx.cocycles(2).rows
    keys = base.basis(2)
    beta = {}
    for n in names:
        if zero_beta or not cyc or rng.random() < 0.2:
            beta[n] = {}
            continue
        vec = [0] * len(keys)
        for z in cyc:
            c = rng.randint(-2, 2)
            vec = [x + c * y for x, y in zip(vec, z)]
        beta[n] = base.from_vector(vec, keys)
    return HirschData(base, names, 1, beta)


def _gauss(rng, real=False):
    from tkmodels.exactfield import I, normalize
    re = rng.randint(-3, 3)
    return re if real else normalize(re + I * rng.randint(-3, 3))


def random_split_mhs(rng: random.Random, max_dim: int = 10):
    """Random R-split mixed Hodge structure.

    Returns ``(ambient, basis)`` where ``basis`` is a list of ``((p, q), vector)``:
    real vectors on the diagonal, conjugate pairs off it, all independent.
    """
    from tkmodels.exactfield import Subspace, conj
    while True:
        amb = rng.randint(2, max_dim)
        slots = []
        room = amb
        while room:
            p, q = rng.randint(0, 2), rng.randint(0, 2)
            if p == q:
                slots.append((p, q))
                room -= 1
            elif room >= 2:
                slots += [(p, q), (q, p)]
                room -= 2
        basis, seen = [], set()
        for s in slots:
            p, q = s
            if p == q:
                basis.append((s, [_gauss(rng, real=True) for _ in range(amb)]))
            elif (q, p) in seen:
                continue
            else:
                seen.add(s)
                v = [_gauss(rng) for _ in range(amb)]
                basis.append((s, v))
                basis.append(((q, p), [conj(x) for x in v]))
        if len(basis) == amb and Subspace.span([v for _, v in basis], amb).dim == amb:
            return amb, basis


def parts_of(basis, amb):
    from tkmodels.exactfield import Subspace
    out = {}
    for s, v in basis:
        out.setdefault(s, []).append(v)
    return {s: Subspace.span(vs, amb) for s, vs in out.items()}


def weight_lowering_perturbation(rng: random.Random, basis, amb):
    """``g = 1 + delta`` with delta sending each basis vector into strictly lower weight.

    Returns the new basis vectors ``g(b)`` with their original slots; the
    filtration ``gF`` together with the old ``W`` is again a mixed Hodge structure.
    """
    out = []
    for (p, q), v in basis:
        w = list(v)
        for (a, b), u in basis:
            if a + b < p + q:
                c = _gauss(rng)
                w = [x + c * y for x, y in zip(w, u)]
        out.append(((p, q), w))
    return out
