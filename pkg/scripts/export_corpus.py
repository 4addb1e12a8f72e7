"""Regenerate the shipped DSL files under src/tkmodels/data from the corpus builders."""
import sys
from pathlib import Path

from tkmodels.corpus import (abelian, chevalley_eilenberg, export_corpus, filiform4, heisenberg3,
                             heisenberg5_r, kodaira_thurston)
from tkmodels.dsl import dump_algebra

EXTRA = {
    "torus_minimal.tk": """kind algebra
name torus_minimal
field Q
cutoff 4
gen x, y : 1
""",
    "hopf_surface_hirsch.tk": """kind algebra
name hopf_surface_hirsch
field Q
cutoff 6
class e : 2
relation e^2
ext x : 1 = e
ext y : 1 = 0
""",
    "heisenberg_typed.tk": """kind algebra
name heisenberg_typed
field Q(i)
cutoff 4
gen a : 1 (1,0) conj ab
gen ab : 1 (0,1) conj a
gen u : 1 type (1,1)
d u = a*ab
""",
    "split_mhs.tk": """kind mhs
name split_mhs
dim 3
W 0 = (1,0,0)
W 1 = all
F 0 = all
F 1 = (1,1,i)
F 2 = none
""",
}


def main(root: str = "src/tkmodels/data"):
    out = Path(root)
    paths = export_corpus(out)
    for lie in (abelian(2), abelian(3), abelian(4), heisenberg3(), filiform4(), kodaira_thurston(), heisenberg5_r()):
        ce = chevalley_eilenberg(lie)
        p = out / f"{lie.name}_ce.tk"
        p.write_text(dump_algebra(ce.algebra), encoding="utf-8")
        paths.append(p)
        if ce.bigraded is not None:
            p = out / f"{lie.name}_ce_bigraded.tk"
            p.write_text(dump_algebra(ce.bigraded), encoding="utf-8")
            paths.append(p)
    for name, text in EXTRA.items():
        (out / name).write_text(text, encoding="utf-8")
        paths.append(out / name)
    for p in paths:
        print(p)


if __name__ == "__main__":
    main(*sys.argv[1:])
