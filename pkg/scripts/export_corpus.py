"""Write the bundled group corpus as table files, plus one seeded module per group.

    python3 scripts/export_corpus.py OUTDIR [--seed 0] [--max-order 24]

The files are readable by ``tropsection h1-finite TABLE MODULE``.
"""
import argparse
import random
from pathlib import Path

from tropsection.fingcoh import format_module, format_table, h1_finite, random_ptorsion_module
from tropsection.smallgroups import corpus


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("outdir", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-order", type=int, default=24)
    a = p.parse_args()
    a.outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(a.seed)
    for G in corpus(a.max_order):
        stem = G.name.replace(":", "_").replace("(", "").replace(")", "").replace(",", "_")
        (a.outdir / f"{stem}.table").write_text(format_table(G))
        A = random_ptorsion_module(G, rng)
        (a.outdir / f"{stem}.module").write_text(format_module(A))
        res = h1_finite(G, A)
        print(f"{G.name:12s} order {G.order:3d}  module moduli {A.moduli}  H^1 {res.invariant_factors}")


if __name__ == "__main__":
    main()
