"""Sweep the graph families and print a table of obstruction orders.

    python3 scripts/family_sweep.py [--max-d 8] [--max-side-genus 4] [--json]
"""
import argparse
import json
import time

from tropsection.morita import o1_report, o2_cross_checked
from tropsection.stablegraph import cycle_graph, doubled_path, two_vertex_tree


def sweep(max_d: int, max_side_genus: int):
    rows = []
    for d in range(2, max_d + 1):
        for q in (1, 2):
            G, rot = cycle_graph(d, q)
            t0 = time.perf_counter()
            order = o1_report(G, rot).order
            rows.append({"family": "pinwheel", "d": d, "q": q, "genus": G.genus, "class": "o1",
                         "order": str(order), "seconds": round(time.perf_counter() - t0, 3)})
    trees = [(f"two-vertex g={g} l={l}", two_vertex_tree(g, l)) for g in range(1, max_side_genus + 1) for l in (1, 2, 3)]
    trees += [(f"doubled path k={k}", doubled_path(k, 1)) for k in range(2, max_side_genus + 1)]
    for name, (G, s) in trees:
        t0 = time.perf_counter()
        res = o2_cross_checked(G, s)
        rows.append({"family": name, "genus": G.genus, "class": "o2",
                     "order": str(res.order), "seconds": round(time.perf_counter() - t0, 3)})
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-d", type=int, default=8)
    p.add_argument("--max-side-genus", type=int, default=3)
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    rows = sweep(a.max_d, a.max_side_genus)
    if a.json:
        print(json.dumps(rows, indent=1))
        return
    for r in rows:
        label = r["family"] if r["family"] != "pinwheel" else f"pinwheel d={r['d']} q={r['q']}"
        print(f"{label:28s} genus {r['genus']:3d}  {r['class']} order {r['order']:>4s}  {r['seconds']:.3f}s")


if __name__ == "__main__":
    main()
