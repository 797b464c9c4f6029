"""Stable dual graphs: validation, edge contraction, specialization, automorphisms.

Vertices carry a genus label, edges are stored oriented ``tail -> head``
with a positive twist multiplicity.  Orientation only fixes signs for the
homology computations downstream; stability, genus and isomorphism ignore it.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping


class GraphError(ValueError):
    """Malformed graph or automorphism data."""


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    multiplicity: int = 1

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def other_end(self, v: str) -> str:
        return self.head if v == self.tail else self.tail


@dataclass(frozen=True)
class StableGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise GraphError("duplicate vertex id")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise GraphError("duplicate edge id")
        vs = set(vids)
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise GraphError(f"edge {e.id} references an unknown vertex")
            if e.multiplicity < 1:
                raise GraphError(f"edge {e.id} has non-positive multiplicity")
        for v in self.vertices:
            if v.genus < 0:
                raise GraphError(f"vertex {v.id} has negative genus")

    @classmethod
    def build(cls, genera: Mapping[str, int], edges: Iterable[tuple]) -> "StableGraph":
        """``edges`` holds ``(id, tail, head)`` or ``(id, tail, head, multiplicity)`` tuples."""
        return cls(
            tuple(Vertex(v, h) for v, h in genera.items()),
            tuple(Edge(*e) for e in edges),
        )

    # -- lookups ---------------------------------------------------------

    @property
    def vertex_ids(self) -> list[str]:
        return sorted(v.id for v in self.vertices)

    @property
    def edge_ids(self) -> list[str]:
        return sorted(e.id for e in self.edges)

    def genus_of(self, vid: str) -> int:
        return self._genus_map()[vid]

    def _genus_map(self) -> dict[str, int]:
        return {v.id: v.genus for v in self.vertices}

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphError(f"unknown edge id {eid!r}")

    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def degree(self, vid: str) -> int:
        return sum((e.tail == vid) + (e.head == vid) for e in self.edges)

    def incident(self, vid: str) -> list[Edge]:
        return sorted((e for e in self.edges if vid in (e.tail, e.head)), key=lambda e: e.id)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = defaultdict(set)
        for e in self.edges:
            adj[e.tail].add(e.head)
            adj[e.head].add(e.tail)
        start = self.vertices[0].id
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    @property
    def first_betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @property
    def genus(self) -> int:
        return self.first_betti + sum(v.genus for v in self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and self.first_betti == 0

    def with_multiplicities(self, mult: Mapping[str, int]) -> "StableGraph":
        return StableGraph(
            self.vertices,
            tuple(Edge(e.id, e.tail, e.head, mult.get(e.id, e.multiplicity)) for e in self.edges),
        )


@dataclass(frozen=True)
class GraphAutomorphism:
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    edge_reversals: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        object.__setattr__(self, "edge_map", dict(self.edge_map))
        object.__setattr__(self, "edge_reversals", frozenset(self.edge_reversals))

    def __hash__(self):
        return hash((tuple(sorted(self.vertex_map.items())), tuple(sorted(self.edge_map.items())),
                     self.edge_reversals))

    @classmethod
    def identity(cls, graph: StableGraph) -> "GraphAutomorphism":
        return cls({v.id: v.id for v in graph.vertices}, {e.id: e.id for e in graph.edges})

    def compose(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        """``self o other`` (apply ``other`` first)."""
        rev = {e for e in other.edge_map
               if (e in other.edge_reversals) != (other.edge_map[e] in self.edge_reversals)}
        return GraphAutomorphism(
            {v: self.vertex_map[w] for v, w in other.vertex_map.items()},
            {e: self.edge_map[f] for e, f in other.edge_map.items()},
            frozenset(rev),
        )

    def is_identity(self) -> bool:
        return (all(k == v for k, v in self.vertex_map.items())
                and all(k == v for k, v in self.edge_map.items())
                and not self.edge_reversals)

    def sign(self, eid: str) -> int:
        return -1 if eid in self.edge_reversals else 1


# ---------------------------------------------------------------------------
# validation


@dataclass
class StabilityReport:
    valid: bool
    genus: int
    violations: list[str]


def validate_stable(graph: StableGraph, expected_genus: int | None = None) -> StabilityReport:
    violations = []
    if not graph.is_connected():
        violations.append("graph is not connected")
    for v in sorted(graph.vertices, key=lambda v: v.id):
        d = graph.degree(v.id)
        if v.genus == 0 and d < 3:
            violations.append(f"genus-0 vertex {v.id} has degree {d} < 3")
        elif v.genus == 1 and d < 1:
            violations.append(f"genus-1 vertex {v.id} has degree 0")
    g = graph.genus
    if expected_genus is not None and g != expected_genus:
        violations.append(f"genus is {g}, expected {expected_genus}")
    return StabilityReport(not violations, g, violations)


def is_stable(graph: StableGraph) -> bool:
    return validate_stable(graph).valid


# ---------------------------------------------------------------------------
# contraction


def contract_edges(graph: StableGraph, edge_ids: Iterable[str]) -> StableGraph:
    """Contract the given edges, merging endpoints (genera add) or absorbing loops (genus + 1)."""
    edge_ids = set(edge_ids)
    known = {e.id for e in graph.edges}
    missing = edge_ids - known
    if missing:
        raise GraphError(f"unknown edge id(s): {sorted(missing)}")

    # union-find over vertices, merged along the contracted non-loop edges
    parent = {v.id: v.id for v in graph.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    extra = Counter()
    for e in sorted(graph.edges, key=lambda e: e.id):
        if e.id not in edge_ids:
            continue
        a, b = find(e.tail), find(e.head)
        if a == b:
            extra[a] += 1  # a loop, either originally or after earlier merges
        else:
            lo, hi = sorted((a, b))
            parent[hi] = lo
            extra[lo] += extra.pop(hi, 0)
    genus = Counter()
    for v in graph.vertices:
        genus[find(v.id)] += v.genus
    for r, k in extra.items():
        genus[find(r)] += k
    roots = sorted({find(v.id) for v in graph.vertices})
    verts = tuple(Vertex(r, genus[r]) for r in roots)
    edges = tuple(
        Edge(e.id, find(e.tail), find(e.head), e.multiplicity)
        for e in graph.edges if e.id not in edge_ids
    )
    return StableGraph(verts, edges)


# ---------------------------------------------------------------------------
# isomorphism


def _edge_profile(graph: StableGraph, use_mult: bool) -> dict[frozenset, list]:
    prof = defaultdict(list)
    for e in graph.edges:
        prof[frozenset((e.tail, e.head))].append(e.multiplicity if use_mult else 1)
    return {k: sorted(v) for k, v in prof.items()}


def _vertex_invariant(graph: StableGraph, vid: str, prof) -> tuple:
    loops = sorted(m for k, ms in prof.items() if k == frozenset((vid,)) for m in ms)
    nbr = sorted(
        (len(ms), tuple(ms)) for k, ms in prof.items() if vid in k and len(k) == 2
    )
    return (graph.genus_of(vid), graph.degree(vid), tuple(loops), tuple(nbr))


def find_isomorphism(a: StableGraph, b: StableGraph, use_multiplicity: bool = False) -> dict[str, str] | None:
    """A vertex bijection ``a -> b`` carrying genera and edge multisets across, or ``None``."""
    if (len(a.vertices), len(a.edges)) != (len(b.vertices), len(b.edges)):
        return None
    pa, pb = _edge_profile(a, use_multiplicity), _edge_profile(b, use_multiplicity)
    inv_a = {v: _vertex_invariant(a, v, pa) for v in a.vertex_ids}
    inv_b = {v: _vertex_invariant(b, v, pb) for v in b.vertex_ids}
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return None
    cands = {v: [w for w in b.vertex_ids if inv_b[w] == inv_a[v]] for v in a.vertex_ids}
    # most constrained vertices first, then stay adjacent to placed ones
    order = sorted(a.vertex_ids, key=lambda v: (len(cands[v]), v))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v, w):
        for u, x in mapping.items():
            if pa.get(frozenset((v, u)), []) != pb.get(frozenset((w, x)), []):
                return False
        return pa.get(frozenset((v,)), []) == pb.get(frozenset((w,)), [])

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in cands[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if search(0) else None


def is_isomorphic(a: StableGraph, b: StableGraph, use_multiplicity: bool = False) -> bool:
    return find_isomorphism(a, b, use_multiplicity) is not None


def specializes_to(general: StableGraph, special: StableGraph) -> bool:
    """True iff ``general`` is isomorphic to a contraction of ``special``."""
    if general.genus != special.genus:
        return False
    k = len(special.edges) - len(general.edges)
    if k < 0 or len(special.vertices) < len(general.vertices):
        return False
    for subset in itertools.combinations(special.edge_ids, k):
        if is_isomorphic(general, contract_edges(special, subset)):
            return True
    return False


# ---------------------------------------------------------------------------
# automorphisms


@dataclass
class AutomorphismReport:
    valid: bool
    order: int | None
    fixed_vertices: list[str]
    stabilized_edges: list[str]
    violations: list[str]


def automorphism_violations(graph: StableGraph, sigma: GraphAutomorphism) -> list[str]:
    out = []
    vids = set(graph.vertex_ids)
    eids = set(graph.edge_ids)
    if set(sigma.vertex_map) != vids or set(sigma.vertex_map.values()) != vids:
        out.append("vertex map is not a bijection on the vertex set")
    if set(sigma.edge_map) != eids or set(sigma.edge_map.values()) != eids:
        out.append("edge map is not a bijection on the edge set")
    if not sigma.edge_reversals <= eids:
        out.append("reversed edges not in the edge set")
    if out:
        return out
    gm = graph._genus_map()
    for v, w in sigma.vertex_map.items():
        if gm[v] != gm[w]:
            out.append(f"vertex {v} (genus {gm[v]}) sent to {w} (genus {gm[w]})")
    em = graph.edge_map()
    for eid, fid in sigma.edge_map.items():
        e, f = em[eid], em[fid]
        t, h = sigma.vertex_map[e.tail], sigma.vertex_map[e.head]
        if eid in sigma.edge_reversals:
            t, h = h, t
        if (f.tail, f.head) != (t, h):
            out.append(f"edge {eid} not carried onto {fid} compatibly with the vertex map")
        if e.multiplicity != f.multiplicity:
            out.append(f"edge {eid} and its image {fid} have different multiplicities")
    return out


def automorphism_order(sigma: GraphAutomorphism, limit: int = 10_000) -> int:
    power = sigma
    for n in range(1, limit + 1):
        if power.is_identity():
            return n
        power = sigma.compose(power)
    raise GraphError("automorphism order exceeds limit")


def check_automorphism(graph: StableGraph, sigma: GraphAutomorphism) -> AutomorphismReport:
    bad = automorphism_violations(graph, sigma)
    if bad:
        return AutomorphismReport(False, None, [], [], bad)
    return AutomorphismReport(
        True,
        automorphism_order(sigma),
        sorted(v for v, w in sigma.vertex_map.items() if v == w),
        sorted(e for e, f in sigma.edge_map.items() if e == f),
        [],
    )


def tree_involution_check(graph: StableGraph, sigma: GraphAutomorphism) -> bool:
    """Tree, ``sigma^2 = id``, no fixed vertex, exactly one stabilized edge."""
    rep = check_automorphism(graph, sigma)
    if not rep.valid or not graph.is_tree():
        return False
    return (sigma.compose(sigma).is_identity() and not rep.fixed_vertices
            and len(rep.stabilized_edges) == 1)


def automorphisms(graph: StableGraph) -> Iterator[GraphAutomorphism]:
    """Every automorphism, loops allowed to flip (brute force; tiny graphs only)."""
    vids = graph.vertex_ids
    gm = graph._genus_map()
    by_pair = defaultdict(list)
    for e in sorted(graph.edges, key=lambda e: e.id):
        by_pair[frozenset((e.tail, e.head))].append(e)
    for perm in itertools.permutations(vids):
        vmap = dict(zip(vids, perm))
        if any(gm[v] != gm[vmap[v]] for v in vids):
            continue
        choices = []
        ok = True
        for key, es in by_pair.items():
            target = by_pair.get(frozenset(vmap[v] for v in key), [])
            if sorted(e.multiplicity for e in es) != sorted(e.multiplicity for e in target):
                ok = False
                break
            options = []
            for img in itertools.permutations(target):
                if any(e.multiplicity != f.multiplicity for e, f in zip(es, img)):
                    continue
                per_edge = []
                for e, f in zip(es, img):
                    if e.is_loop:
                        per_edge.append([(e.id, f.id, False), (e.id, f.id, True)])
                    else:
                        rev = (vmap[e.tail], vmap[e.head]) != (f.tail, f.head)
                        per_edge.append([(e.id, f.id, rev)])
                options.extend(itertools.product(*per_edge))
            choices.append(options)
        if not ok:
            continue
        for combo in itertools.product(*choices):
            emap, rev = {}, set()
            for group in combo:
                for e, f, r in group:
                    emap[e] = f
                    if r:
                        rev.add(e)
            yield GraphAutomorphism(vmap, emap, frozenset(rev))


# ---------------------------------------------------------------------------
# spanning trees


def bfs_tree(graph: StableGraph) -> tuple[list[str], dict[str, tuple[str, str] | None], list[str]]:
    """Breadth-first spanning tree from the least vertex id.

    Returns ``(visit_order, parent, tree_edge_ids)``; ``parent[v]`` is
    ``(edge id, parent vertex)`` and ``None`` at the root.
    """
    root = graph.vertex_ids[0]
    parent: dict[str, tuple[str, str] | None] = {root: None}
    order = [root]
    tree = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in graph.incident(v):
            if e.is_loop:
                continue
            w = e.other_end(v)
            if w not in parent:
                parent[w] = (e.id, v)
                tree.append(e.id)
                order.append(w)
                queue.append(w)
    return order, parent, sorted(tree)


def tree_path(graph: StableGraph, parent, start: str, end: str) -> list[tuple[str, int]]:
    """Edges on the spanning-tree path ``start -> end`` with traversal signs (+1 tail->head)."""
    def to_root(v):
        chain = [v]
        while parent[v] is not None:
            v = parent[v][1]
            chain.append(v)
        return chain

    up, down = to_root(start), to_root(end)
    common = set(up) & set(down)
    meet = next(v for v in up if v in common)
    em = graph.edge_map()
    path = []
    v = start
    while v != meet:
        eid, p = parent[v]
        path.append((eid, 1 if em[eid].tail == v else -1))
        v = p
    tail_part = []
    v = end
    while v != meet:
        eid, p = parent[v]
        tail_part.append((eid, 1 if em[eid].tail == p else -1))
        v = p
    return path + tail_part[::-1]


# ---------------------------------------------------------------------------
# families


def cycle_graph(d: int, genus: int = 1, multiplicity: int = 1) -> tuple[StableGraph, GraphAutomorphism]:
    """The d-cycle of genus-``genus`` vertices with its rotation ``v_i -> v_{i+1}``."""
    vs = {f"v{i}": genus for i in range(1, d + 1)}
    es = [(f"e{i}", f"v{i}", f"v{i % d + 1}", multiplicity) for i in range(1, d + 1)]
    g = StableGraph.build(vs, es)
    rot = GraphAutomorphism(
        {f"v{i}": f"v{i % d + 1}" for i in range(1, d + 1)},
        {f"e{i}": f"e{i % d + 1}" for i in range(1, d + 1)},
    )
    return g, rot


def double_tree(side_genera: Mapping[str, int], side_edges: Iterable[tuple], root: str,
                bridge_multiplicity: int = 1) -> tuple[StableGraph, GraphAutomorphism]:
    """Glue two copies of a rooted tree along a bridge ``e0`` between the roots.

    The involution swaps the copies and flips the bridge.  ``side_edges`` are
    ``(id, tail, head[, multiplicity])`` tuples on the side's vertex ids.
    """
    side_edges = [tuple(e) + (1,) * (4 - len(e)) for e in side_edges]
    vs = {}
    for v, h in side_genera.items():
        vs[f"a{v}"] = h
        vs[f"b{v}"] = h
    es = [("e0", f"a{root}", f"b{root}", bridge_multiplicity)]
    for eid, t, h, m in side_edges:
        es.append((f"a{eid}", f"a{t}", f"a{h}", m))
        es.append((f"b{eid}", f"b{t}", f"b{h}", m))
    g = StableGraph.build(vs, es)
    vmap = {}
    for v in side_genera:
        vmap[f"a{v}"], vmap[f"b{v}"] = f"b{v}", f"a{v}"
    emap = {"e0": "e0"}
    for eid, *_ in side_edges:
        emap[f"a{eid}"], emap[f"b{eid}"] = f"b{eid}", f"a{eid}"
    return g, GraphAutomorphism(vmap, emap, frozenset({"e0"}))


def two_vertex_tree(genus: int, multiplicity: int = 1) -> tuple[StableGraph, GraphAutomorphism]:
    """Two genus-``genus`` vertices on one edge, with the swap; surface genus ``2*genus``."""
    return double_tree({"1": genus}, [], "1", multiplicity)


def doubled_path(k: int, genus: int = 1) -> tuple[StableGraph, GraphAutomorphism]:
    """Path on ``2k`` genus-``genus`` vertices with the end-to-end reflection."""
    n = 2 * k
    vs = {f"v{i}": genus for i in range(1, n + 1)}
    es = [(f"e{i}", f"v{i}", f"v{i + 1}") for i in range(1, n)]
    g = StableGraph.build(vs, es)
    vmap = {f"v{i}": f"v{n + 1 - i}" for i in range(1, n + 1)}
    emap = {f"e{i}": f"e{n - i}" for i in range(1, n)}
    return g, GraphAutomorphism(vmap, emap, frozenset(emap))


def small_doubled_trees(side_genus: int, max_side_vertices: int = 3) -> Iterator[tuple[StableGraph, GraphAutomorphism]]:
    """Stable doubled trees whose sides are rooted trees of total genus ``side_genus``."""
    for n in range(1, max_side_vertices + 1):
        for parents in itertools.product(*[range(i) for i in range(1, n)]):
            for genera in _compositions(side_genus, n):
                deg = [0] * n
                deg[0] += 1  # the bridge
                for child, p in enumerate(parents, start=1):
                    deg[child] += 1
                    deg[p] += 1
                if any((h == 0 and d < 3) or (h == 1 and d < 1) for h, d in zip(genera, deg)):
                    continue
                side = {str(i): genera[i] for i in range(n)}
                edges = [(f"s{c}", str(p), str(c)) for c, p in enumerate(parents, start=1)]
                yield double_tree(side, edges, "0")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# JSON


def graph_from_dict(data: Mapping) -> tuple[StableGraph, GraphAutomorphism | None]:
    try:
        verts = tuple(Vertex(str(v["id"]), int(v["genus"])) for v in data["vertices"])
        edges = tuple(
            Edge(str(e["id"]), str(e["tail"]), str(e["head"]), int(e.get("multiplicity", 1)))
            for e in data.get("edges", [])
        )
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph data: {exc}") from exc
    graph = StableGraph(verts, edges)
    sigma = None
    auto = data.get("automorphism")
    if auto is not None:
        sigma = GraphAutomorphism(
            {str(k): str(v) for k, v in auto.get("vertices", {}).items()},
            {str(k): str(v) for k, v in auto.get("edges", {}).items()},
            frozenset(str(e) for e in auto.get("reversed_edges", [])),
        )
    return graph, sigma


def graph_to_dict(graph: StableGraph, sigma: GraphAutomorphism | None = None) -> dict:
    out = {
        "vertices": [{"id": v.id, "genus": v.genus} for v in sorted(graph.vertices, key=lambda v: v.id)],
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "multiplicity": e.multiplicity}
            for e in sorted(graph.edges, key=lambda e: e.id)
        ],
    }
    if sigma is not None:
        out["automorphism"] = {
            "vertices": dict(sorted(sigma.vertex_map.items())),
            "edges": dict(sorted(sigma.edge_map.items())),
            "reversed_edges": sorted(sigma.edge_reversals),
        }
    return out


def load_graph(path: str | Path) -> tuple[StableGraph, GraphAutomorphism | None]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON: {exc}") from exc
    return graph_from_dict(data)
