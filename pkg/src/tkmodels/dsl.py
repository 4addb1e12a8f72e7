"""Line-oriented text format for presentations.

One statement per line, ``#`` starts a comment.  Three kinds of document:

``kind algebra``
    ``gen x, y : 1`` / ``gen z : 1 (1,0) conj zb type (1,1)`` declare
    generators, ``class e : 2 (1,1)`` declares a cohomology-ring generator,
    ``relation e^3`` kills a monomial, ``d x = e`` / ``dbar z = e`` /
    ``del zb = e`` assign differentials, ``ext v : 1 = e`` lists a Hirsch
    extension to apply on top.
``kind tk-spec``
    ``class`` lines and relations describe the basic ring, ``w x, y`` names
    the degree-one part, ``d x = e`` maps it to degree two and
    ``split z = x + i*y`` spans the (1,0) part.
``kind mhs``
    ``dim 3`` fixes the ambient space, ``W 1 = (1,0,0); (0,1,0)`` and
    ``F 1 = (1,i,0)`` give filtration levels (``all`` and ``none`` allowed).

Header statements ``name``, ``field Q|Q(i)``, ``cutoff N`` and ``bigraded``
apply to every kind.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactfield import I, QQ, QQI, Field, format_scalar, normalize
from .gca import Algebra, Generator, PresentationError


class DslError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        where = f"line {line}, column {col}: " if line else ""
        tail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(where + message + tail)


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*/^(),;=:∧]))")


@dataclass(frozen=True)
class Token:
    kind: str   # "num", "name", "op", "end"
    text: str
    col: int


def tokenize(text: str, line: int = 0, col0: int = 1) -> list:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DslError(f"unexpected character {text[pos]!r}", line, col0 + pos,
                           ("number", "name", "operator"))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), col0 + m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", col0 + len(text)))
    return out


class _Parser:
    """Recursive descent over one expression.

    With an algebra, values are algebra elements; without one they are scalars.
    """

    def __init__(self, tokens, algebra: Algebra | None, line: int):
        self.toks = tokens
        self.i = 0
        self.alg = algebra
        self.line = line

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, expected=()):
        raise DslError(msg, self.line, self.peek().col, expected)

    def expect(self, text):
        t = self.peek()
        if t.text != text:
            self.error(f"found {t.text or 'end of line'!r}", (repr(text),))
        return self.take()

    # values: in algebra mode everything is a dict, scalars are promoted
    def _scalar(self, c):
        return self.alg.scalar(c) if self.alg is not None else c

    def _add(self, a, b):
        return self.alg.add(a, b) if self.alg is not None else a + b

    def _neg(self, a):
        return self.alg.scale(a, -1) if self.alg is not None else -a

    def _mul(self, a, b):
        return self.alg.mul(a, b) if self.alg is not None else a * b

    def _as_scalar(self, v):
        if self.alg is None:
            return v
        if not v:
            return Fraction(0)
        unit = self.alg.unit_key
        if set(v) != {unit}:
            return None
        return v[unit]

    def parse(self):
        v = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}", ("'+'", "'-'", "'*'", "'^'", "end of line"))
        return v

    def expr(self):
        v = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            w = self.term()
            v = self._add(v, w if op == "+" else self._neg(w))
        return v

    def term(self):
        v = self.unary()
        while self.peek().text in ("*", "∧", "/"):
            op = self.take().text
            col = self.peek().col
            w = self.unary()
            if op == "/":
                c = self._as_scalar(w)
                if c is None or not c:
                    raise DslError("division by a non-scalar or zero", self.line, col)
                v = self._mul(v, self._scalar(1 / c))
            else:
                v = self._mul(v, w)
        return v

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return self._neg(self.unary())
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind != "num":
                self.error("exponent must be a non-negative integer", ("number",))
            self.take()
            out = self._scalar(Fraction(1))
            for _ in range(int(t.text)):
                out = self._mul(out, v)
            v = out
        return v

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return self._scalar(Fraction(int(t.text)))
        if t.kind == "name":
            self.take()
            if t.text == "i":
                if self.alg is not None and not self.alg.field.complex:
                    raise DslError("'i' needs field Q(i)", self.line, t.col)
                return self._scalar(I)
            if self.alg is None:
                raise DslError(f"unknown name {t.text!r} in a scalar expression", self.line, t.col, ("number", "'i'"))
            if t.text not in self.alg.index:
                raise DslError(f"unknown generator {t.text!r}", self.line, t.col)
            return self.alg.gen(t.text)
        if t.text == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        self.error(f"found {t.text or 'end of line'!r}", ("number", "name", "'i'", "'('", "'-'"))


def parse_expression(text: str, algebra: Algebra | None = None, line: int = 0, col: int = 1):
    return _Parser(tokenize(text, line, col), algebra, line).parse()


def parse_scalar(text: str, line: int = 0, col: int = 1):
    return normalize(parse_expression(text, None, line, col))


# ---------------------------------------------------------------------------
# documents


@dataclass
class Statement:
    keyword: str
    rest: str
    line: int
    col: int  # column where ``rest`` starts


@dataclass
class PresentationFile:
    kind: str = "algebra"
    name: str = ""
    field: Field = QQ
    cutoff: int | None = None
    bigraded: bool = False
    statements: list = dc_field(default_factory=list)

    def of(self, *keywords) -> list:
        return [s for s in self.statements if s.keyword in keywords]


_KEYWORDS = {"kind", "name", "field", "cutoff", "bigraded", "gen", "class", "relation", "d", "dbar", "del",
             "ext", "w", "split", "dim", "W", "F"}
_KINDS = ("algebra", "tk-spec", "mhs")


def parse(text: str) -> PresentationFile:
    doc = PresentationFile()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        m = re.match(r"\s*(\S+)", body)
        kw = m.group(1)
        col = m.start(1) + 1
        if kw not in _KEYWORDS:
            raise DslError(f"unknown statement {kw!r}", lineno, col, _KEYWORDS)
        rest_start = m.end(1)
        while rest_start < len(body) and body[rest_start].isspace():
            rest_start += 1
        rest = body[rest_start:]
        st = Statement(kw, rest, lineno, rest_start + 1)
        if kw == "kind":
            if rest not in _KINDS:
                raise DslError(f"unknown kind {rest!r}", lineno, st.col, _KINDS)
            doc.kind = rest
        elif kw == "name":
            doc.name = rest
        elif kw == "field":
            if rest not in ("Q", "Q(i)"):
                raise DslError(f"unknown field {rest!r}", lineno, st.col, ("Q", "Q(i)"))
            doc.field = QQ if rest == "Q" else QQI
        elif kw == "cutoff":
            if not rest.isdigit():
                raise DslError("cutoff must be a non-negative integer", lineno, st.col, ("number",))
            doc.cutoff = int(rest)
        elif kw == "bigraded":
            if rest:
                raise DslError("'bigraded' takes no argument", lineno, st.col, ("end of line",))
            doc.bigraded = True
        else:
            doc.statements.append(st)
    return doc


# -- statement pieces ----------------------------------------------------------


def _split_assign(st: Statement):
    """``name = expr`` -> (name, expr text, expr column)."""
    toks = tokenize(st.rest, st.line, st.col)
    if toks[0].kind != "name":
        raise DslError("expected a generator name", st.line, toks[0].col, ("name",))
    if toks[1].text != "=":
        raise DslError(f"found {toks[1].text or 'end of line'!r}", st.line, toks[1].col, ("'='",))
    off = toks[2].col - st.col
    return toks[0].text, st.rest[off:], toks[2].col, toks[0].col


def _pair(toks, j, st):
    """Parse ``( int , int )`` starting at token j; returns (pair, next j)."""
    want = ["(", "num", ",", "num", ")"]
    vals = []
    for k, w in enumerate(want):
        t = toks[j + k]
        ok = t.kind == "num" if w == "num" else t.text == w
        if not ok:
            raise DslError(f"found {t.text or 'end of line'!r}", st.line, t.col, ("number",) if w == "num" else (repr(w),))
        if w == "num":
            vals.append(int(t.text))
    return tuple(vals), j + len(want)


def _declaration(st: Statement, role_default: str = ""):
    """``names : degree [(p,q)] [conj name] [role r] [type (p,q)]``."""
    toks = tokenize(st.rest, st.line, st.col)
    names = []
    j = 0
    while True:
        t = toks[j]
        if t.kind != "name" or t.text == "i":
            raise DslError("expected a generator name", st.line, t.col, ("name",))
        names.append((t.text, t.col))
        j += 1
        if toks[j].text == ",":
            j += 1
            continue
        break
    if toks[j].text != ":":
        raise DslError(f"found {toks[j].text or 'end of line'!r}", st.line, toks[j].col, ("':'", "','"))
    j += 1
    if toks[j].kind != "num":
        raise DslError("expected a degree", st.line, toks[j].col, ("number",))
    degree = int(toks[j].text)
    j += 1
    opts = {"bidegree": None, "conjugate": None, "role": role_default, "weight": None}
    if toks[j].text == "(":
        opts["bidegree"], j = _pair(toks, j, st)
    while toks[j].kind != "end":
        t = toks[j]
        if t.text == "conj":
            if toks[j + 1].kind != "name":
                raise DslError("expected a partner name", st.line, toks[j + 1].col, ("name",))
            opts["conjugate"] = toks[j + 1].text
            j += 2
        elif t.text == "role":
            if toks[j + 1].kind != "name":
                raise DslError("expected a role tag", st.line, toks[j + 1].col, ("name",))
            opts["role"] = toks[j + 1].text
            j += 2
        elif t.text == "type":
            opts["weight"], j = _pair(toks, j + 1, st)
        else:
            raise DslError(f"found {t.text!r}", st.line, t.col, ("'conj'", "'role'", "'type'", "'('", "end of line"))
    if opts["conjugate"] and len(names) > 1:
        raise DslError("'conj' needs a single generator per line", st.line, st.col)
    gens = []
    for name, col in names:
        try:
            gens.append(Generator(name, degree, **opts))
        except PresentationError as e:
            raise DslError(str(e), st.line, col) from None
    return gens


def _names_list(st: Statement) -> list:
    toks = tokenize(st.rest, st.line, st.col)
    out = []
    j = 0
    while True:
        if toks[j].kind != "name":
            raise DslError("expected a name", st.line, toks[j].col, ("name",))
        out.append(toks[j].text)
        j += 1
        if toks[j].kind == "end":
            return out
        if toks[j].text != ",":
            raise DslError(f"found {toks[j].text!r}", st.line, toks[j].col, ("','", "end of line"))
        j += 1


def _monomial_relation(st: Statement, alg: Algebra) -> dict:
    text = st.rest
    m = re.match(r"(.*?)\s*=\s*0\s*$", text)
    if m:
        text = m.group(1)
    toks = tokenize(text, st.line, st.col)
    exps = {}
    j = 0
    while True:
        t = toks[j]
        if t.kind != "name" or t.text not in alg.index:
            raise DslError(f"relations must be monomials in generators, found {t.text!r}", st.line, t.col, ("name",))
        e = 1
        j += 1
        if toks[j].text == "^":
            if toks[j + 1].kind != "num":
                raise DslError("expected an exponent", st.line, toks[j + 1].col, ("number",))
            e = int(toks[j + 1].text)
            j += 2
        exps[t.text] = exps.get(t.text, 0) + e
        if toks[j].kind == "end":
            return exps
        if toks[j].text not in ("*", "∧"):
            raise DslError(f"found {toks[j].text!r}", st.line, toks[j].col, ("'*'", "'^'", "end of line"))
        j += 1


def _algebra_from(doc: PresentationFile, default_cutoff: int = 8, extra_gens=()) -> Algebra:
    gens = []
    for st in doc.of("gen", "class"):
        gens.extend(_declaration(st, "H" if st.keyword == "class" else ""))
    gens.extend(extra_gens)
    seen = {}
    for g in gens:
        if g.name in seen:
            raise DslError(f"generator {g.name!r} declared twice", 0)
        seen[g.name] = g
    try:
        alg = Algebra(gens, field=doc.field, cutoff=doc.cutoff if doc.cutoff is not None else default_cutoff,
                      bigraded=doc.bigraded, name=doc.name)
    except PresentationError as e:
        st = (doc.of("gen", "class") or [Statement("", "", 0, 0)])[0]
        raise DslError(str(e), st.line, st.col) from None
    rels = [_monomial_relation(st, alg) for st in doc.of("relation")]
    return alg.replace(relations=rels)


def _differentials(doc: PresentationFile, alg: Algebra, keywords) -> dict:
    maps = {k: {} for k in keywords}
    for st in doc.of(*keywords):
        name, text, col, ncol = _split_assign(st)
        if name not in alg.index:
            raise DslError(f"differential of unknown generator {name!r}", st.line, ncol)
        if name in maps[st.keyword]:
            raise DslError(f"{st.keyword} {name} assigned twice", st.line, ncol)
        maps[st.keyword][name] = parse_expression(text, alg, st.line, col)
    return maps


def build_algebra(doc: PresentationFile, check: bool = True) -> Algebra:
    if doc.kind != "algebra":
        raise DslError(f"expected kind algebra, got {doc.kind}", 0)
    alg = _algebra_from(doc)
    if doc.bigraded:
        if doc.of("d"):
            st = doc.of("d")[0]
            raise DslError("bigraded files assign 'dbar' and 'del', not 'd'", st.line, st.col - 2, ("'dbar'", "'del'"))
        maps = _differentials(doc, alg, ("dbar", "del"))
        alg = alg.replace(dbar=maps["dbar"], dee=maps["del"])
    else:
        for st in doc.of("dbar", "del"):
            raise DslError(f"'{st.keyword}' needs a 'bigraded' header", st.line, 1, ("'d'",))
        maps = _differentials(doc, alg, ("d",))
        alg = alg.replace(d=maps["d"])
    if check:
        rep = alg.validate()
        if not rep.ok:
            raise DslError(f"invalid presentation: {rep.violation}", _first_line(doc, rep.violation))
    return alg


def _first_line(doc: PresentationFile, message: str) -> int:
    """Best-effort source line for a semantic diagnostic naming a generator."""
    for st in doc.of("d", "dbar", "del", "relation", "gen", "class"):
        head = st.rest.split("=", 1)[0].strip()
        if head and re.search(rf"\b{re.escape(head)}\b", message or ""):
            return st.line
    return doc.statements[0].line if doc.statements else 1


def extension_block(doc: PresentationFile, alg: Algebra):
    """``ext`` lines as (names, degree, {name: beta element})."""
    names, beta, degree = [], {}, None
    for st in doc.of("ext"):
        left, _, right = st.rest.partition("=")
        if not _:
            raise DslError("expected 'ext name : degree = expression'", st.line, st.col, ("'='",))
        decl = Statement("ext", left, st.line, st.col)
        gens = _declaration(decl)
        if len(gens) != 1:
            raise DslError("one extension generator per line", st.line, st.col)
        g = gens[0]
        if degree is not None and g.degree != degree:
            raise DslError("all extension generators must share one degree", st.line, st.col)
        degree = g.degree
        names.append(g.name)
        beta[g.name] = parse_expression(right, alg, st.line, st.col + len(left) + 1)
    return names, degree, beta


def build_spec(doc: PresentationFile):
    from .dolbeault import TKSpec

    if doc.kind != "tk-spec":
        raise DslError(f"expected kind tk-spec, got {doc.kind}", 0)
    base = _algebra_from(_as_bigraded(doc), default_cutoff=8)
    wnames = []
    for st in doc.of("w"):
        wnames.extend(_names_list(st))
    for n in wnames:
        if n in base.index:
            raise DslError(f"{n!r} is both a basic class and a W generator", 0)
    dw = {}
    for st in doc.of("d"):
        name, text, col, ncol = _split_assign(st)
        if name not in wnames:
            raise DslError(f"'d' is only assigned on W generators, not {name!r}", st.line, ncol)
        dw[name] = parse_expression(text, base, st.line, col)
    wspace = Algebra([Generator(n, 1) for n in wnames], field=QQI, cutoff=1)
    split = []
    znames = []
    for st in doc.of("split"):
        name, text, col, _ = _split_assign(st)
        v = parse_expression(text, wspace, st.line, col)
        if any(wspace.degree_of(k) != 1 for k in v):
            raise DslError("split vectors must be linear in the W generators", st.line, col)
        znames.append(name)
        split.append({wnames[k.index(1)]: c for k, c in v.items()})
    try:
        return TKSpec(base=base, w=tuple(wnames), dw=dw, split=tuple(split), znames=tuple(znames),
                      name=doc.name, cutoff=doc.cutoff)
    except PresentationError as e:
        raise DslError(str(e), 0) from None


def _as_bigraded(doc: PresentationFile) -> PresentationFile:
    return PresentationFile(doc.kind, doc.name, doc.field, doc.cutoff, True,
                            [s for s in doc.statements if s.keyword in ("class", "gen", "relation")])


def _vectors(st: Statement, dim: int) -> list:
    text = st.rest.split("=", 1)[1].strip() if "=" in st.rest else ""
    if text in ("all",):
        return [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    if text in ("none", "0", ""):
        return []
    out = []
    base_col = st.col + st.rest.index("=") + 1
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise DslError("vectors are written (a, b, ...)", st.line, base_col, ("'('",))
        entries = [parse_scalar(e, st.line, base_col) for e in chunk[1:-1].split(",")]
        if len(entries) != dim:
            raise DslError(f"vector has {len(entries)} entries, expected {dim}", st.line, base_col)
        out.append(entries)
    return out


def build_mhs(doc: PresentationFile):
    from .exactfield import Subspace
    from .hodge import Filtration

    if doc.kind != "mhs":
        raise DslError(f"expected kind mhs, got {doc.kind}", 0)
    dims = doc.of("dim")
    if len(dims) != 1 or not dims[0].rest.isdigit():
        raise DslError("an mhs file needs exactly one 'dim N' line", dims[0].line if dims else 0)
    n = int(dims[0].rest)
    levels = {"W": {}, "F": {}}
    for st in doc.of("W", "F"):
        head = st.rest.split("=", 1)[0].strip()
        try:
            lvl = int(head)
        except ValueError:
            raise DslError("expected an integer level", st.line, st.col, ("number",)) from None
        levels[st.keyword][lvl] = Subspace.span(_vectors(st, n), n)
    if not levels["W"] or not levels["F"]:
        raise DslError("an mhs file needs W and F levels", 0)
    return (Filtration.increasing(levels["W"], n), Filtration.decreasing(levels["F"], n))


def load(text: str):
    doc = parse(text)
    if doc.kind == "algebra":
        return build_algebra(doc)
    if doc.kind == "tk-spec":
        return build_spec(doc)
    return build_mhs(doc)


# ---------------------------------------------------------------------------
# serialization


def _decl_line(g: Generator, keyword: str = "gen") -> str:
    s = f"{keyword} {g.name} : {g.degree}"
    if g.bidegree is not None:
        s += f" ({g.bidegree[0]},{g.bidegree[1]})"
    if g.conjugate:
        s += f" conj {g.conjugate}"
    if g.role and not (keyword == "class" and g.role == "H"):
        s += f" role {g.role}"
    if g.weight is not None:
        s += f" type ({g.weight[0]},{g.weight[1]})"
    return s


def _header(kind: str, name: str, fld: Field, cutoff, bigraded: bool) -> list:
    lines = [f"kind {kind}"]
    if name:
        lines.append(f"name {name}")
    lines.append(f"field {fld.name}")
    if cutoff is not None:
        lines.append(f"cutoff {cutoff}")
    if bigraded:
        lines.append("bigraded")
    return lines


def dump_algebra(alg: Algebra) -> str:
    lines = _header("algebra", alg.name, alg.field, alg.cutoff, alg.bigraded)
    for g in alg.gens:
        lines.append(_decl_line(g, "class" if g.role == "H" else "gen"))
    for r in alg.relations:
        lines.append(f"relation {alg.format_monomial(r)}")
    ops = [("dbar", "dbar"), ("del", "del")] if alg.bigraded else [("d", "d")]
    for kw, which in ops:
        for g in alg.gens:
            val = alg.generator_differential(g.name, which)
            if val:
                lines.append(f"{kw} {g.name} = {alg.format(val)}")
    return "\n".join(lines) + "\n"


def dump_spec(spec) -> str:
    base = spec.base
    lines = _header("tk-spec", spec.name, base.field, spec.cutoff, False)
    for g in base.gens:
        lines.append(_decl_line(g, "class" if g.role == "H" else "gen"))
    for r in base.relations:
        lines.append(f"relation {base.format_monomial(r)}")
    if spec.w:
        lines.append("w " + ", ".join(spec.w))
    for n in spec.w:
        lines.append(f"d {n} = {base.format(spec.dw.get(n, {}))}")
    for z, vec in zip(spec.znames, spec.split):
        terms = []
        for n in spec.w:
            c = vec.get(n)
            if c:
                terms.append(f"({format_scalar(normalize(c))})*{n}")
        lines.append(f"split {z} = {' + '.join(terms) if terms else '0'}")
    return "\n".join(lines) + "\n"


def dump(obj) -> str:
    if isinstance(obj, Algebra):
        return dump_algebra(obj)
    return dump_spec(obj)


__all__ = ["DslError", "parse", "parse_expression", "parse_scalar", "load", "build_algebra", "build_spec",
           "build_mhs", "extension_block", "dump", "dump_algebra", "dump_spec"]
