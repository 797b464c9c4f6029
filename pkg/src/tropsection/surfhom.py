"""Integral homology of the surface glued from a stable graph.

Basis blocks, in order:

* handles ``a[v,k], b[v,k]`` for each vertex ``v`` (sorted) and ``1 <= k <= h(v)``;
* vanishing classes ``l[e]`` for each edge ``e`` off the BFS spanning tree;
* cycle classes ``lam[e]`` dual to them (the loop running once through the
  fundamental cycle of ``e``).

The gluing curve of a tree edge is expanded in the vanishing block by
eliminating leaves of the tree against the vertex relations
``sum_{e at v} +/-[l_e] = 0`` (``+`` at the tail, ``-`` at the head).
All automorphism matrices use the rigid-lift convention: cycle classes are
carried by the induced permutation of graph cycles with no vanishing-block
correction.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactla import (
    AbelianPresentation,
    IntMatrix,
    Order,
    determinant,
    matvec,
)
from .stablegraph import (
    GraphAutomorphism,
    GraphError,
    StableGraph,
    automorphism_violations,
    bfs_tree,
    tree_path,
    validate_stable,
)

CONVENTION = "rigid-lift"


@dataclass(frozen=True)
class HomologyModel:
    graph: StableGraph
    spanning_tree: tuple[str, ...]
    nontree_edges: tuple[str, ...]
    labels: tuple[str, ...]
    handle_index: dict                      # (vertex, k) -> (index of a, index of b)
    vanishing_index: dict                   # non-tree edge -> basis index
    cycle_index: dict                       # non-tree edge -> basis index
    vanishing_expansion: dict               # every edge -> vector of length rank
    fundamental_cycles: dict                # non-tree edge -> {edge: signed count}
    pairing: IntMatrix                      # rank x |E|, column order = graph.edge_ids
    parent: dict

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def genus(self) -> int:
        return self.rank // 2

    def vanishing_class(self, eid: str) -> list[int]:
        return list(self.vanishing_expansion[eid])

    def pair_with(self, x, eid: str) -> int:
        """``<x, [l_e]>`` for an integer vector ``x`` in the model basis."""
        j = self.graph.edge_ids.index(eid)
        return sum(xi * self.pairing[i, j] for i, xi in enumerate(x) if xi)


def homology_model(graph: StableGraph) -> HomologyModel:
    rep = validate_stable(graph)
    if not rep.valid:
        raise GraphError("; ".join(rep.violations))
    order, parent, tree = bfs_tree(graph)
    tree_set = set(tree)
    em = graph.edge_map()
    nontree = [eid for eid in graph.edge_ids if eid not in tree_set]

    labels: list[str] = []
    handle_index = {}
    for v in graph.vertex_ids:
        for k in range(1, graph.genus_of(v) + 1):
            handle_index[(v, k)] = (len(labels), len(labels) + 1)
            labels += [f"a[{v},{k}]", f"b[{v},{k}]"]
    vanishing_index = {}
    for eid in nontree:
        vanishing_index[eid] = len(labels)
        labels.append(f"l[{eid}]")
    cycle_index = {}
    for eid in nontree:
        cycle_index[eid] = len(labels)
        labels.append(f"lam[{eid}]")
    rank = len(labels)

    # leaf elimination: children before parents (reverse BFS order)
    expansion: dict[str, list[int]] = {}
    for eid in nontree:
        vec = [0] * rank
        vec[vanishing_index[eid]] = 1
        expansion[eid] = vec
    for v in reversed(order[1:]):
        peid, _ = parent[v]
        acc = [0] * rank
        for e in graph.incident(v):
            if e.is_loop or e.id == peid:
                continue
            sgn = 1 if e.tail == v else -1
            acc = [a + sgn * x for a, x in zip(acc, expansion[e.id])]
        # relation at v: s_p [l_p] + acc = 0
        sp = 1 if em[peid].tail == v else -1
        expansion[peid] = [-sp * a for a in acc]

    cycles = {}
    for eid in nontree:
        e = em[eid]
        cyc = {eid: 1}
        if not e.is_loop:
            for pe, s in tree_path(graph, parent, e.head, e.tail):
                cyc[pe] = cyc.get(pe, 0) + s
        cycles[eid] = cyc

    edge_ids = graph.edge_ids
    pair = [[0] * len(edge_ids) for _ in range(rank)]
    for eid in nontree:
        i = cycle_index[eid]
        for f, c in cycles[eid].items():
            pair[i][edge_ids.index(f)] = c

    model = HomologyModel(
        graph=graph,
        spanning_tree=tuple(tree),
        nontree_edges=tuple(nontree),
        labels=tuple(labels),
        handle_index=handle_index,
        vanishing_index=vanishing_index,
        cycle_index=cycle_index,
        vanishing_expansion={k: tuple(v) for k, v in expansion.items()},
        fundamental_cycles=cycles,
        pairing=IntMatrix.from_rows(pair, len(edge_ids)),
        parent=parent,
    )
    _check_model(model)
    return model


def _check_model(model: HomologyModel) -> None:
    g = model.graph
    if model.rank != 2 * g.genus:
        raise AssertionError(f"rank {model.rank} != 2 * genus {g.genus}")
    for v in g.vertex_ids:
        total = [0] * model.rank
        for e in g.incident(v):
            if e.is_loop:
                continue
            s = 1 if e.tail == v else -1
            total = [t + s * x for t, x in zip(total, model.vanishing_expansion[e.id])]
        if any(total):
            raise AssertionError(f"vertex relation fails at {v}")
    # cut/cycle duality: pairing with a cycle class equals the expansion coefficient
    for eid in g.edge_ids:
        vec = model.vanishing_expansion[eid]
        for f in model.nontree_edges:
            if vec[model.vanishing_index[f]] != model.fundamental_cycles[f].get(eid, 0):
                raise AssertionError(f"pairing of lam[{f}] with l[{eid}] disagrees with expansion")


def twist_matrix(model: HomologyModel) -> IntMatrix:
    """Multitwist action ``x -> x + sum_e mult(e) <x, l_e> l_e`` (matrix acts on columns)."""
    n = model.rank
    T = [[int(i == j) for j in range(n)] for i in range(n)]
    em = model.graph.edge_map()
    for j, eid in enumerate(model.graph.edge_ids):
        lvec = model.vanishing_expansion[eid]
        mult = em[eid].multiplicity
        for col in range(n):
            p = model.pairing[col, j]
            if p:
                for row in range(n):
                    if lvec[row]:
                        T[row][col] += mult * p * lvec[row]
    return IntMatrix.from_rows(T, n)


def _check_sigma(model: HomologyModel, sigma: GraphAutomorphism) -> None:
    bad = automorphism_violations(model.graph, sigma)
    if bad:
        raise GraphError("; ".join(bad))


def automorphism_matrix(model: HomologyModel, sigma: GraphAutomorphism) -> IntMatrix:
    """Rigid lift of a graph automorphism to ``H_1`` (columns are images of basis vectors)."""
    _check_sigma(model, sigma)
    n = model.rank
    cols: list[list[int]] = [None] * n
    for (v, k), (ia, ib) in model.handle_index.items():
        ja, jb = model.handle_index[(sigma.vertex_map[v], k)]
        ca, cb = [0] * n, [0] * n
        ca[ja] = 1
        cb[jb] = 1
        cols[ia], cols[ib] = ca, cb
    for eid, i in model.vanishing_index.items():
        s = sigma.sign(eid)
        cols[i] = [s * x for x in model.vanishing_expansion[sigma.edge_map[eid]]]
    for eid, i in model.cycle_index.items():
        image: dict[str, int] = {}
        for f, c in model.fundamental_cycles[eid].items():
            fe = sigma.edge_map[f]
            image[fe] = image.get(fe, 0) + c * sigma.sign(f)
        col = [0] * n
        for f in model.nontree_edges:
            col[model.cycle_index[f]] = image.get(f, 0)
        cols[i] = col
    return IntMatrix.from_columns(cols, n)


def basepoint(model: HomologyModel, sigma: GraphAutomorphism) -> str:
    moved = [v for v in model.graph.vertex_ids if sigma.vertex_map[v] != v]
    return moved[0] if moved else model.graph.vertex_ids[0]


def o1_class(model: HomologyModel, sigma: GraphAutomorphism, base: str | None = None) -> list[int]:
    """Homology class of ``T(lambda) lambda^{-1}`` for the tree path ``lambda: v0 -> sigma(v0)``."""
    _check_sigma(model, sigma)
    v0 = base if base is not None else basepoint(model, sigma)
    if v0 not in sigma.vertex_map:
        raise GraphError(f"unknown basepoint vertex {v0!r}")
    em = model.graph.edge_map()
    out = [0] * model.rank
    for eid, s in tree_path(model.graph, model.parent, v0, sigma.vertex_map[v0]):
        k = s * em[eid].multiplicity
        out = [o + k * x for o, x in zip(out, model.vanishing_expansion[eid])]
    return out


def coinvariant_relations(model: HomologyModel, sigma: GraphAutomorphism) -> IntMatrix:
    """``[S - I | T - I]`` whose column span is the augmentation submodule."""
    S = automorphism_matrix(model, sigma)
    T = twist_matrix(model)
    I = IntMatrix.identity(model.rank)
    SI, TI = (S - I).columns(), (T - I).columns()
    return IntMatrix.from_columns(SI + TI, model.rank)


def coinvariants(model: HomologyModel, sigma: GraphAutomorphism) -> AbelianPresentation:
    return AbelianPresentation.from_relations(model.rank, coinvariant_relations(model, sigma).columns())


def o1_order(model: HomologyModel, sigma: GraphAutomorphism, base: str | None = None) -> Order:
    return coinvariants(model, sigma).order_of(o1_class(model, sigma, base))


def is_unimodular(M: IntMatrix) -> bool:
    return abs(determinant(M)) == 1


def apply(M: IntMatrix, x) -> list[int]:
    return matvec(M, x)
