"""Command-line front end: ``tkmodels <command> FILE [options]``.

Exit codes: 0 computed, 1 a check command's verdict is FAIL, 2 input error,
3 resource or cutoff error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .dsl import DslError, build_algebra, build_mhs, build_spec, dump, extension_block, parse
from .exactfield import GaussianRational, QQI, format_scalar
from .gca import Algebra, CutoffError, PresentationError

SCHEMA = "tkmodels.result/1"


class VerdictFail(Exception):
    pass


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def _table(d: dict) -> dict:
    return {_key(k): v for k, v in sorted(d.items())}


def _jsonable(x):
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Fraction, GaussianRational)):
        return format_scalar(x)
    return x


class Result:
    def __init__(self, command: str, digest: str):
        self.doc = {"schema": SCHEMA, "version": __version__, "command": command, "input_digest": digest,
                    "tables": {}, "verdicts": {}, "witnesses": {}, "notes": []}
        self.failed = False

    def table(self, name: str, d: dict):
        self.doc["tables"][name] = _table(d)

    def verdict(self, name: str, ok: bool, check: bool = True):
        self.doc["verdicts"][name] = "PASS" if ok else "FAIL"
        if check and not ok:
            self.failed = True

    def witness(self, name: str, text: str):
        self.doc["witnesses"][name] = text

    def note(self, text: str):
        self.doc["notes"].append(text)

    def render(self, structured: bool) -> str:
        if structured:
            return json.dumps(_jsonable(self.doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        lines = [f"# {self.doc['command']}"]
        for name, t in self.doc["tables"].items():
            lines.append(f"{name}:")
            if not t:
                lines.append("  (all zero)")
            for k, v in t.items():
                lines.append(f"  {k:>8}  {v}")
        for name, v in self.doc["verdicts"].items():
            lines.append(f"{name}: {v}")
        for name, w in self.doc["witnesses"].items():
            lines.append(f"{name}: {w}")
        for n in self.doc["notes"]:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"


def _read(path: str) -> tuple:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return text, hashlib.sha256(text.encode("utf-8")).hexdigest()


def _override(doc, args):
    if getattr(args, "cutoff", None) is not None:
        doc.cutoff = args.cutoff
    if getattr(args, "field", None):
        if args.field not in ("Q", "Q(i)"):
            raise DslError(f"unknown field {args.field!r}", 0, 0, ("Q", "Q(i)"))
        if args.field == "Q(i)":
            doc.field = QQI
    return doc


def _load_doc(path: str, args):
    text, digest = _read(path)
    doc = _override(parse(text), args)
    return doc, digest


def _object(doc):
    if doc.kind == "algebra":
        return build_algebra(doc)
    if doc.kind == "tk-spec":
        return build_spec(doc)
    return build_mhs(doc)


def _series(s: list) -> dict:
    return dict(enumerate(s))


# ---------------------------------------------------------------------------
# commands


def cmd_cohomology(args, res: Result, doc):
    from .cohomology import cohomology
    from .dolbeault import build_de_rham_model

    obj = _object(doc)
    a = build_de_rham_model(obj) if doc.kind == "tk-spec" else obj
    if doc.kind == "mhs":
        raise DslError("cohomology needs an algebra or tk-spec file", 0)
    res.table("betti", _series(cohomology(a).series()))


def cmd_dolbeault(args, res: Result, doc):
    from .cohomology import dolbeault_cohomology
    from .dolbeault import build_dolbeault_model

    obj = _object(doc)
    if doc.kind == "tk-spec":
        res.table("basic_hodge", dolbeault_cohomology(obj.base).nonzero())
        obj = build_dolbeault_model(obj)
    elif doc.kind != "algebra" or not obj.bigraded:
        raise DslError("dolbeault needs a bigraded algebra or a tk-spec file", 0)
    res.table("hodge", dolbeault_cohomology(obj).nonzero())


def _describe_model(res: Result, mm):
    m = mm.algebra
    res.table("generators", mm.generator_counts())
    for g in m.gens:
        res.witness(f"d {g.name}", m.format(m.generator_differential(g.name)))
    res.verdict("quasi-isomorphism", bool(mm.certificate and mm.certificate.ok))


def cmd_minimal_model(args, res: Result, doc):
    from .dolbeault import build_de_rham_model
    from .sullivan import is_minimal, minimal_model

    obj = _object(doc)
    a = build_de_rham_model(obj) if doc.kind == "tk-spec" else obj
    up = args.up_to if args.up_to is not None else a.cutoff - 2
    mm = minimal_model(a, up)
    _describe_model(res, mm)
    res.verdict("minimal", is_minimal(mm.algebra))


def cmd_one_minimal(args, res: Result, doc):
    from .dolbeault import build_de_rham_model
    from .sullivan import one_minimal_model

    obj = _object(doc)
    a = build_de_rham_model(obj) if doc.kind == "tk-spec" else obj
    _describe_model(res, one_minimal_model(a, args.stages))


def cmd_hirsch(args, res: Result, doc):
    from .hirsch import HirschData, weight_spectral_sequence

    a = build_algebra(doc)
    names, degree, beta = extension_block(doc, a)
    if not names:
        raise DslError("the file has no 'ext' lines", 0)
    ss = weight_spectral_sequence(HirschData(a, names, degree, beta))
    for r, p in enumerate(ss.pages):
        res.table(f"E{r}", p.nonzero())
    res.table("Einf", ss.infinity.nonzero())
    res.table("betti", _series(ss.cohomology))
    res.verdict("degenerates at E2", ss.degenerate_at_2, check=False)


def cmd_ddbar(args, res: Result, doc):
    from .dolbeault import build_dolbeault_model, ddbar_check

    obj = _object(doc)
    if doc.kind == "tk-spec":
        # the verdict is about the basic ring; the full model is reported alongside
        model = ddbar_check(build_dolbeault_model(obj))
        res.verdict("ddbar (Dolbeault model)", model.ok, check=False)
        b = obj.base
    else:
        b = obj
    if not isinstance(b, Algebra) or not b.bigraded:
        raise DslError("ddbar-check needs a bigraded algebra or a tk-spec file", 0)
    rep = ddbar_check(b)
    res.verdict("ddbar", rep.ok)
    if not rep.ok:
        res.table("first_failure", {"degree": rep.first_failure})
        if rep.witness:
            res.witness("class", b.format(rep.witness))


def cmd_bigrading(args, res: Result, doc):
    from .hodge import MixedHodgeError, canonical_bigrading, is_r_split

    if doc.kind != "mhs":
        raise DslError("bigrading needs an mhs file", 0)
    w, f = build_mhs(doc)
    try:
        b = canonical_bigrading(w, f)
    except MixedHodgeError as e:
        res.verdict("mixed Hodge structure", False)
        res.witness("reason", str(e))
        return
    res.verdict("mixed Hodge structure", True)
    res.table("bigrading", b.dims())
    for name, ok in b.checks.items():
        res.verdict(name, ok)
    res.verdict("R-split", is_r_split(b), check=False)


def cmd_fundamental(args, res: Result, doc):
    from .hodge import is_fundamental

    if doc.kind != "tk-spec":
        raise DslError("fundamental-check needs a tk-spec file", 0)
    s = build_spec(doc)
    rep = is_fundamental(s)
    res.verdict("fundamental", rep.ok)
    if not rep.ok:
        res.witness(f"d {rep.witness}", s.base.format(rep.component))


def cmd_weight_count(args, res: Result, doc):
    from .dolbeault import build_de_rham_model
    from .hodge import bigraded_minimal_model, weight_count_check, weight_count_search

    obj = _object(doc)
    if doc.kind == "tk-spec":
        bm = bigraded_minimal_model(build_de_rham_model(obj), 1, one_minimal=True)
        if bm.obstruction:
            res.witness("obstruction", bm.obstruction)
        counts = bm.weight_counts()
        n = args.n if args.n is not None else sum(counts.values()) // 2
        k = args.k if args.k is not None else obj.k
        rep = weight_count_check(counts, n, k)
        res.table("m_w", rep.counts)
        res.table("sums", {"sum m_w": rep.total, "sum w m_w": rep.weighted,
                           "2n": rep.expected_total, "2n+2k": rep.expected_weighted})
        res.verdict("weight count", rep.ok)
        if rep.branch:
            res.note(f"branch {rep.branch}")
    elif doc.kind == "algebra":
        n = args.n if args.n is not None else sum(1 for g in obj.gens if g.degree == 1) // 2
        k = args.k if args.k is not None else 1
        hits = weight_count_search(obj, n, k)
        res.table("gradings satisfying the count", {"count": len(hits)})
        for i, h in enumerate(hits):
            res.witness(f"grading {i + 1}", ", ".join(f"{g}:{w}" for g, w in h.items()))
        res.verdict("weight count", bool(hits))
    else:
        raise DslError("weight-count needs a tk-spec or algebra file", 0)


def cmd_dual_lie(args, res: Result, doc):
    from .hodge import dual_lie_presentation

    a = build_algebra(doc)
    p = dual_lie_presentation(a)
    res.table("generators", p.generators)
    res.table("relations", p.relations)
    names = [g.name for g in a.gens]
    for i, j, k, c in p.brackets:
        res.witness(f"[{names[i]}*, {names[j]}*]", f"{format_scalar(c)} {names[k]}*")
    res.verdict("allowed types", p.ok)


def cmd_kunneth(args, res: Result, doc, doc2):
    from .cohomology import kunneth_check

    a, b = build_algebra(doc), build_algebra(doc2)
    rep = kunneth_check(a, b)
    res.table("product", _series(rep.product))
    res.table("convolution", _series(rep.convolution))
    res.verdict("kunneth", rep.ok)


def cmd_corpus(args, res: Result):
    from .corpus import check_entry, corpus

    for e in corpus():
        r = check_entry(e)
        res.verdict(e.name, r.ok)
        for table, key, want, have, prov in r.mismatches:
            res.witness(f"{e.name} {table} {_key(key)}", f"expected {want} [{prov}], computed {have}")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tkmodels", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, files=1):
        sp = sub.add_parser(name, help=help_)
        for i in range(files):
            sp.add_argument("file" if i == 0 else "file2")
        sp.add_argument("--cutoff", type=int)
        sp.add_argument("--field", choices=["Q", "Q(i)"])
        sp.add_argument("--json", action="store_true", help="structured output")
        return sp

    add("cohomology", "de Rham cohomology of an algebra or of a spec's model")
    add("dolbeault", "dbar-cohomology of a bigraded algebra or of a spec's Dolbeault model")
    add("minimal-model", "minimal model with a quasi-isomorphism certificate").add_argument("--up-to", type=int)
    add("one-minimal", "degree-1 tower").add_argument("--stages", type=int, default=2)
    add("hirsch", "spectral sequence of the extension listed by 'ext' lines")
    add("ddbar-check", "ddbar lemma check")
    add("bigrading", "canonical bigrading of the filtrations in an mhs file")
    add("fundamental-check", "d(W) lies in the (1,1) part of the basic ring")
    wc = add("weight-count", "weight count of the degree-1 generators")
    wc.add_argument("--n", type=int)
    wc.add_argument("--k", type=int)
    add("dual-lie", "presentation of the dual Lie algebra of a typed 1-minimal algebra")
    add("kunneth", "compare H(A ⊗ B) with H(A) * H(B)", files=2)
    sp = sub.add_parser("corpus", help="check every shipped example")
    sp.add_argument("--json", action="store_true", help="structured output")
    ex = sub.add_parser("export", help="print a file in canonical form")
    ex.add_argument("file")
    return p


COMMANDS = {
    "cohomology": cmd_cohomology, "dolbeault": cmd_dolbeault, "minimal-model": cmd_minimal_model,
    "one-minimal": cmd_one_minimal, "hirsch": cmd_hirsch, "ddbar-check": cmd_ddbar,
    "bigrading": cmd_bigrading, "fundamental-check": cmd_fundamental, "weight-count": cmd_weight_count,
    "dual-lie": cmd_dual_lie,
}


def run(argv=None, out=None) -> int:
    from .sullivan import ResourceError

    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            res = Result("corpus", "")
            cmd_corpus(args, res)
        elif args.command == "export":
            text, _ = _read(args.file)
            out.write(dump(_object(parse(text))) if parse(text).kind != "mhs" else text)
            return 0
        elif args.command == "kunneth":
            doc, d1 = _load_doc(args.file, args)
            doc2, d2 = _load_doc(args.file2, args)
            res = Result("kunneth", hashlib.sha256((d1 + d2).encode()).hexdigest())
            cmd_kunneth(args, res, doc, doc2)
        else:
            doc, digest = _load_doc(args.file, args)
            res = Result(args.command, digest)
            COMMANDS[args.command](args, res, doc)
    except (CutoffError, ResourceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (DslError, PresentationError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out.write(res.render(getattr(args, "json", False)))
    return 1 if res.failed else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
