"""End-to-end obstruction pipelines for bundles over the torus.

``o1_report`` wraps the homology computation.  For doubled trees the
secondary class is computed twice: by a direct quotient of
``wedge^2 H / omega`` (the shortcut) and by the nilpotent engine with
explicit cocycles, ``m`` and ``delta`` (the generic route).  Disagreement is
an error, never averaged away.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import (
    INFINITE,
    AbelianPresentation,
    IntMatrix,
    Lattice,
    Order,
    cokernel_order_of,
)
from .nilq import (
    NilElement,
    NilEndo,
    eval_word,
    hur2,
    nil_product,
    surface_relator,
    swap_endo,
    wedge_space,
)
from .stablegraph import (
    GraphAutomorphism,
    GraphError,
    StableGraph,
    tree_involution_check,
    tree_path,
)
from .surfcoh import (
    ModuleAction,
    delta_image,
    m_image,
    m_quotient,
    one_cocycles,
    wedge_relations,
)
from .surfhom import (
    CONVENTION,
    automorphism_matrix,
    basepoint,
    coinvariants,
    homology_model,
    o1_class,
    twist_matrix,
)


class HypothesisError(ValueError):
    """Input does not satisfy the pipeline's hypotheses."""


class CrossCheckError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


# ---------------------------------------------------------------------------
# primary class


@dataclass(frozen=True)
class O1Report:
    order: Order
    class_coordinates: tuple[int, ...]
    invariant_factors: tuple[int, ...]
    labels: tuple[str, ...]
    basepoint: str
    convention: str = CONVENTION


def o1_report(graph: StableGraph, sigma: GraphAutomorphism, base: str | None = None) -> O1Report:
    model = homology_model(graph)
    v0 = base if base is not None else basepoint(model, sigma)
    c = o1_class(model, sigma, v0)
    pres = coinvariants(model, sigma)
    return O1Report(
        order=pres.order_of(c),
        class_coordinates=tuple(c),
        invariant_factors=tuple(pres.invariant_factors),
        labels=model.labels,
        basepoint=v0,
    )


# ---------------------------------------------------------------------------
# doubled trees


@dataclass(frozen=True)
class DoubledTreeModel:
    graph: StableGraph
    sigma: GraphAutomorphism
    side_genus: int                       # g; the surface has genus 2g
    bridge: str
    bridge_multiplicity: int
    side1: frozenset                      # vertices on the side of the least vertex
    handle_slot: dict                     # (vertex, k) -> 1-based handle index in 1..2g
    S_endo: NilEndo
    T_endo: NilEndo
    S_H: IntMatrix
    T_H: IntMatrix
    action: ModuleAction = field(repr=False)

    @property
    def surface_genus(self) -> int:
        return 2 * self.side_genus


def _component(graph: StableGraph, start: str, cut: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in graph.incident(v):
            if e.id == cut or e.is_loop:
                continue
            w = e.other_end(v)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _handles_in(graph: StableGraph, region) -> list[tuple[str, int]]:
    return [(v, k) for v in sorted(region) for k in range(1, graph.genus_of(v) + 1)]


def doubled_tree_model(graph: StableGraph, sigma: GraphAutomorphism) -> DoubledTreeModel:
    if not tree_involution_check(graph, sigma):
        raise HypothesisError("input is not a tree with a fixed-point-free involution stabilizing one edge")
    fixed = [eid for eid in graph.edge_ids if sigma.edge_map[eid] == eid]
    bridge = fixed[0]
    least = graph.vertex_ids[0]
    side1 = _component(graph, least, bridge)
    h1 = _handles_in(graph, side1)
    g = len(h1)
    G = 2 * g
    slot = {}
    for i, (v, k) in enumerate(h1, start=1):
        slot[(v, k)] = i
        slot[(sigma.vertex_map[v], k)] = G + 1 - i
    if G == 0 or len(slot) != G:
        raise HypothesisError("sides must carry positive genus")

    # homology from the graph model, rewritten in the slot basis x1, y1, ..., xG, yG
    model = homology_model(graph)
    if model.rank != 2 * G:
        raise AssertionError("a tree surface has only handle classes")
    P = [[0] * model.rank for _ in range(model.rank)]  # model index -> slot index
    for (v, k), (ia, ib) in model.handle_index.items():
        s = slot[(v, k)] - 1
        P[2 * s][ia] = 1
        P[2 * s + 1][ib] = 1
    Pm = IntMatrix.from_rows(P, model.rank)
    S_H = Pm @ automorphism_matrix(model, sigma) @ Pm.T
    T_H = Pm @ twist_matrix(model) @ Pm.T
    if not T_H.is_identity():
        raise AssertionError("multitwist about separating curves acts nontrivially on H")

    S_endo = swap_endo(G, {i: G + 1 - i for i in range(1, G + 1)})
    if S_endo.linear_part() != S_H:
        raise AssertionError("rigid swap does not match the graph involution on H")
    # twist about the bridge: conjugate side-2 generators by the side-1 boundary
    ell = graph.edge(bridge).multiplicity
    boundary = eval_word(surface_relator(G, range(1, g + 1)), G) ** ell
    bi = boundary.inverse()
    imgs = []
    for idx in range(1, 2 * G + 1):
        x = NilElement.generator(G, idx)
        imgs.append(x if (idx + 1) // 2 <= g else boundary * x * bi)
    T_endo = NilEndo(G, tuple(imgs))

    return DoubledTreeModel(
        graph=graph, sigma=sigma, side_genus=g, bridge=bridge, bridge_multiplicity=ell,
        side1=frozenset(side1), handle_slot=slot, S_endo=S_endo, T_endo=T_endo,
        S_H=S_H, T_H=T_H, action=ModuleAction.torus(S_H, T_H),
    )


def _check_model_invariants(model: DoubledTreeModel) -> None:
    G = model.surface_genus
    ident = NilEndo.identity(G)
    if model.S_endo.compose(model.S_endo) != ident:
        raise AssertionError("S lift is not an involution")
    if model.T_endo != ident:
        raise AssertionError("bridge twist is not the identity on pi/L^3")
    if model.S_endo.compose(model.T_endo) != model.T_endo.compose(model.S_endo):
        raise AssertionError("lifts of S and T do not commute")


def _require_o1_trivial(graph: StableGraph, sigma: GraphAutomorphism) -> None:
    if o1_report(graph, sigma).order != 1:
        raise AssertionError("primary class does not vanish on a doubled tree")


def side_one_class(model: DoubledTreeModel) -> list[int]:
    """``ell(e0) * sum_{i <= g} x_i ^ y_i`` in reduced coordinates."""
    ws = wedge_space(model.surface_genus)
    out = [0] * ws.dim
    for i in range(model.side_genus):
        out = [a + b for a, b in zip(out, ws.basis_wedge(2 * i, 2 * i + 1))]
    return [model.bridge_multiplicity * a for a in out]


@dataclass(frozen=True)
class O2Result:
    order: Order
    class_coordinates: tuple[int, ...]
    invariant_factors: tuple[int, ...]
    certificate: dict | None
    surface_genus: int
    convention: str = CONVENTION


def shortcut_relations(model: DoubledTreeModel) -> list[list[int]]:
    """Relations of the shortcut quotient.

    ``(S - 1)`` images, then ``(v + Sv) ^ w`` (spanning ``H^G ^ H``), then
    ``v ^ Sv`` for ``v`` in the handle basis.
    """
    ws = wedge_space(model.surface_genus)
    n = ws.n
    rels = wedge_relations(model.action)
    basis = [[int(i == j) for j in range(n)] for i in range(n)]
    Sb = [model.S_H.column(i) for i in range(n)]
    for i in range(n):
        inv = [a + b for a, b in zip(basis[i], Sb[i])]
        for j in range(n):
            rels.append(ws.wedge(inv, basis[j]))
    for i in range(n):
        rels.append(ws.wedge(basis[i], Sb[i]))
    return [r for r in rels if any(r)]


def rho(model: DoubledTreeModel, v) -> int:
    """Mod-2 functional: the ``x1 ^ y1`` coefficient after passing to ``wedge^2 H_G``.

    In ``H_G`` handle ``1`` and handle ``2g`` collapse, so four wedge
    coordinates contribute.  ``omega`` maps to ``2``, hence the value is
    well defined on reduced coordinates.
    """
    ws = wedge_space(model.surface_genus)
    full = ws.lift(v)
    last = 2 * model.surface_genus - 2
    pairs = [(0, 1), (0, last + 1), (1, last), (last, last + 1)]
    return sum(full[ws.full_index[p]] for p in pairs) % 2


def o2_tree_order(graph: StableGraph, sigma: GraphAutomorphism) -> O2Result:
    model = doubled_tree_model(graph, sigma)
    _require_o1_trivial(graph, sigma)
    ws = wedge_space(model.surface_genus)
    rels = shortcut_relations(model)
    c = side_one_class(model)
    order = cokernel_order_of(IntMatrix.from_columns(rels, ws.dim), c)
    pres = AbelianPresentation.from_relations(ws.dim, rels)
    if pres.order_of(c) != order:
        raise CrossCheckError("two cokernel computations disagree")
    cert = None
    if order == 2:
        if any(rho(model, r) for r in rels) or rho(model, c) != 1:
            raise AssertionError("x1^y1 functional fails to certify order 2")
        cert = {"functional": "x1^y1 coefficient in wedge^2 of coinvariants, mod 2", "value_on_class": 1,
                "relations_checked": len(rels)}
    return O2Result(order, tuple(c), tuple(pres.invariant_factors), cert, model.surface_genus)


def crossing_contributions(model: DoubledTreeModel) -> list[tuple[str, list[int]]]:
    """``hur2`` of each factor of ``T(lambda) lambda^-1``, per crossed tree edge.

    Crossing edge ``e`` from its tail side inserts the boundary of that side
    to the power ``ell(e)``; traversing the other way inverts it.
    """
    graph, sigma = model.graph, model.sigma
    G = model.surface_genus
    parent = homology_model(graph).parent
    v0 = graph.vertex_ids[0]
    out = []
    for eid, sgn in tree_path(graph, parent, v0, sigma.vertex_map[v0]):
        e = graph.edge(eid)
        region = _component(graph, e.tail, eid)
        handles = sorted({model.handle_slot[hk] for hk in _handles_in(graph, region)})
        word = surface_relator(G, handles)
        piece = eval_word(word, G) ** (sgn * e.multiplicity)
        out.append((eid, hur2(piece)))
    return out


def twisted_boundary(model: DoubledTreeModel) -> list[int]:
    """``hur2(T(lambda) lambda^-1)`` evaluated as a product in the nilpotent quotient."""
    G = model.surface_genus
    pieces = crossing_contributions(model)
    total = hur2(nil_product((NilElement.central(G, w) for _, w in pieces), G))
    # internal edges are crossed in sigma-pairs; their sum must die in coinvariants
    inner = Lattice(wedge_space(G).dim, wedge_relations(model.action))
    internal = [0] * len(total)
    for eid, w in pieces:
        if eid != model.bridge:
            internal = [a + b for a, b in zip(internal, w)]
    if internal not in inner:
        raise AssertionError("internal tree edges contribute a nonzero coinvariant class")
    return total


def o2_generic_order(model: DoubledTreeModel) -> O2Result:
    _check_model_invariants(model)
    _require_o1_trivial(model.graph, model.sigma)
    c = twisted_boundary(model)
    space = one_cocycles(model.action)
    mg = _dedupe(m_image(model.action, space))
    dg = _dedupe(delta_image(model.action, space, model.S_endo, model.T_endo))
    q = m_quotient(model.action, mg, dg, c)
    return O2Result(q.order, tuple(c), tuple(q.presentation.invariant_factors), None, model.surface_genus)


def _dedupe(vectors) -> list[list[int]]:
    seen = set()
    out = []
    for v in vectors:
        if not any(v):
            continue
        k = tuple(v)
        if k[next(i for i, x in enumerate(k) if x)] < 0:
            k = tuple(-x for x in k)
        if k not in seen:
            seen.add(k)
            out.append(list(k))
    return out


def o2_cross_checked(graph: StableGraph, sigma: GraphAutomorphism) -> O2Result:
    """Shortcut result, after checking the generic engine agrees with it."""
    fast = o2_tree_order(graph, sigma)
    slow = o2_generic_order(doubled_tree_model(graph, sigma))
    if (fast.order, fast.invariant_factors) != (slow.order, slow.invariant_factors):
        raise CrossCheckError(
            f"shortcut gives order {fast.order} {fast.invariant_factors}, "
            f"generic gives {slow.order} {slow.invariant_factors}"
        )
    return fast


__all__ = [
    "INFINITE", "CrossCheckError", "DoubledTreeModel", "GraphError", "HypothesisError",
    "O1Report", "O2Result", "doubled_tree_model", "o1_report", "o2_cross_checked",
    "o2_generic_order", "o2_tree_order", "rho", "shortcut_relations", "side_one_class",
    "twisted_boundary",
]
