"""Print the computed tables of every corpus entry next to its expectations."""
import argparse
import json
import sys

from tkmodels.corpus import check_entry, corpus


def fmt(d: dict) -> str:
    return "  ".join(f"{k}:{v}" for k, v in sorted(d.items()) if v)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-hopf", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    failures = 0
    dump = {}
    for e in corpus(args.max_hopf):
        r = check_entry(e)
        failures += not r.ok
        if args.json:
            dump[e.name] = {"ok": r.ok, "tables": {t: {str(k): v for k, v in d.items()} for t, d in r.tables.items()}}
            continue
        print(f"== {e.name}  {'ok' if r.ok else 'MISMATCH'}")
        for t, d in r.tables.items():
            print(f"   {t:12} {fmt(d)}")
        for name, (got, want, prov) in r.verdicts.items():
            print(f"   {name:12} {got} (expected {want}, {prov})")
        for table, key, want, have, prov in r.mismatches:
            print(f"   !! {table} {key}: expected {want} [{prov}], computed {have}")
    if args.json:
        json.dump(dump, sys.stdout, indent=2, sort_keys=True)
        print()
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
