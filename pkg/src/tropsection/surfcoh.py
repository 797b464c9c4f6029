"""Cohomology of surface groups with integral module coefficients.

The base group is ``G = <a1, b1, ..., ah, bh | prod [ai, bi]>``.  For the torus
(``h = 1``) we follow the resolution with generators ``e, f`` in degree one,
``d1(e) = (T - 1) v``, ``d1(f) = (S - 1) v`` and
``d2(u) = (1 - S) e - (1 - T) f``.  Matching this against the Fox row of
``R = [a, b]`` identifies ``a = T`` (generator ``e``) and ``b = S``
(generator ``f``), so a torus :class:`ModuleAction` stores ``(T, S)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactla import (
    AbelianPresentation,
    IntMatrix,
    Lattice,
    Order,
    integer_kernel,
    matvec,
    unimodular_inverse,
)
from .nilq import (
    NilElement,
    NilEndo,
    free_reduce,
    hur2,
    nil_commutator,
    surface_relator,
    wedge_space,
)

# ---------------------------------------------------------------------------
# Fox calculus over the free group on 2h letters

GroupRingElt = dict  # reduced word (tuple of signed indices) -> coefficient


def _add_term(out: GroupRingElt, word: Sequence[int], c: int) -> None:
    key = tuple(free_reduce(word))
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def fox_derivative(word: Sequence[int], gen: int) -> GroupRingElt:
    """Left Fox derivative ``d word / d x_gen`` (``gen`` a positive generator index)."""
    out: GroupRingElt = {}
    for k, x in enumerate(word):
        if x == gen:
            _add_term(out, word[:k], 1)
        elif x == -gen:
            _add_term(out, word[:k + 1], -1)
    return out


def fox_derivatives(h: int) -> list[GroupRingElt]:
    """``dR/da1, dR/db1, ..., dR/dah, dR/dbh`` for the surface relator of genus ``h``."""
    if h < 1:
        raise ValueError("base genus must be at least 1")
    R = surface_relator(h)
    return [fox_derivative(R, k) for k in range(1, 2 * h + 1)]


def fox_closed_forms(h: int) -> list[GroupRingElt]:
    """The same derivatives from the product formulas.

    ``dR/dai = P_i ai (1 - bi) ai^-1`` and ``dR/dbi = P_i ai bi (1 - ai^-1) bi^-1``
    with ``P_i`` the product of the first ``i - 1`` commutators.
    """
    out = []
    for i in range(1, h + 1):
        P = surface_relator(h, range(1, i))
        a, b = 2 * i - 1, 2 * i
        da: GroupRingElt = {}
        _add_term(da, P + [a, -a], 1)
        _add_term(da, P + [a, b, -a], -1)
        db: GroupRingElt = {}
        _add_term(db, P + [a, b, -b], 1)
        _add_term(db, P + [a, b, -a, -b], -1)
        out += [da, db]
    return out


def augmentation(x: GroupRingElt) -> int:
    return sum(x.values())


# ---------------------------------------------------------------------------
# modules


class ActionError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleAction:
    """``G`` acting on ``Z^rank``; ``matrices`` are the images of ``a1, b1, ..., ah, bh``."""

    rank: int
    matrices: tuple[IntMatrix, ...]
    inverses: tuple[IntMatrix, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.matrices or len(self.matrices) % 2:
            raise ActionError("need an even, nonzero number of generator matrices")
        invs = []
        for A in self.matrices:
            if (A.rows, A.cols) != (self.rank, self.rank):
                raise ActionError("generator matrix has the wrong size")
            try:
                invs.append(unimodular_inverse(A))
            except ValueError as exc:
                raise ActionError(str(exc)) from None
        object.__setattr__(self, "inverses", tuple(invs))

    @classmethod
    def torus(cls, S: IntMatrix, T: IntMatrix, check: bool = True) -> "ModuleAction":
        act = cls(S.rows, (T, S))
        if check and not act.relator_holds():
            raise ActionError("S and T do not commute")
        return act

    @property
    def h(self) -> int:
        return len(self.matrices) // 2

    @property
    def T(self) -> IntMatrix:
        self._need_torus()
        return self.matrices[0]

    @property
    def S(self) -> IntMatrix:
        self._need_torus()
        return self.matrices[1]

    def _need_torus(self) -> None:
        if self.h != 1:
            raise ActionError("operation only defined for the torus group")

    def word_matrix(self, word: Sequence[int]) -> IntMatrix:
        out = IntMatrix.identity(self.rank)
        for k in word:
            out = out @ (self.matrices[k - 1] if k > 0 else self.inverses[-k - 1])
        return out

    def relator_holds(self) -> bool:
        return self.word_matrix(surface_relator(self.h)).is_identity()

    def evaluate(self, x: GroupRingElt) -> IntMatrix:
        out = IntMatrix.zeros(self.rank, self.rank)
        for word, c in x.items():
            out = out + self.word_matrix(word).scale(c)
        return out


def augmentation_generators(action: ModuleAction) -> list[list[int]]:
    """Columns of ``A - I`` over the acting generators; they span ``IM``."""
    I = IntMatrix.identity(action.rank)
    gens = []
    for A in action.matrices:
        gens += (A - I).columns()
    return gens


def fox_generators(action: ModuleAction) -> list[list[int]]:
    """Columns of the evaluated Fox matrices; they span the image of ``d2*``."""
    gens = []
    for d in fox_derivatives(action.h):
        gens += action.evaluate(d).columns()
    return gens


def fox_lattice_equals_im(action: ModuleAction) -> bool:
    a = Lattice(action.rank, fox_generators(action))
    b = Lattice(action.rank, augmentation_generators(action))
    return a == b


def h2_as_coinvariants(action: ModuleAction) -> AbelianPresentation:
    return AbelianPresentation.from_relations(action.rank, augmentation_generators(action))


def invariants(action: ModuleAction) -> list[list[int]]:
    """A basis of ``M^G``."""
    I = IntMatrix.identity(action.rank)
    rows = []
    for A in action.matrices:
        rows += (A - I).to_rows()
    return integer_kernel(IntMatrix.from_rows(rows, action.rank))


def invariants_vanish_mod2(action: ModuleAction) -> bool:
    """Does ``M^G -> M_G (x) Z/2`` vanish?"""
    lat = Lattice(action.rank, augmentation_generators(action))
    for i in range(action.rank):
        lat.add([2 * int(i == j) for j in range(action.rank)])
    return all(v in lat for v in invariants(action))


# ---------------------------------------------------------------------------
# random actions


def random_unimodular(rng: random.Random, n: int, steps: int = 3) -> IntMatrix:
    """Product of a few elementary matrices and a signed permutation."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[(-1 if rng.random() < 0.2 else 1) * rows[perm[i]][j] for j in range(n)] for i in range(n)]
    M = IntMatrix.from_rows(rows, n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        E = [[int(r == c) for c in range(n)] for r in range(n)]
        E[i][j] = rng.choice((-1, 1))
        M = M @ IntMatrix.from_rows(E, n)
    return M


def random_surface_action(rng: random.Random, h: int, rank: int) -> ModuleAction:
    """A genuine representation of the genus-``h`` surface group (``h`` in {1, 2}).

    ``h = 1``: a commuting pair (powers and products of one matrix, or two
    block-diagonal pieces).  ``h = 2``: ``a1, b1`` free, then
    ``a2 = X b1 X^-1`` and ``b2 = X a1 X^-1`` with ``X`` a power of
    ``[a1, b1]``, so ``[a2, b2] = [a1, b1]^-1``.
    """
    if h == 1:
        A = random_unimodular(rng, rank)
        if rng.random() < 0.5:
            B = A @ A if rng.random() < 0.5 else unimodular_inverse(A)
            if rng.random() < 0.5:
                B = B @ A
        else:
            B = IntMatrix.identity(rank) if rng.random() < 0.3 else A.scale(-1)
        act = ModuleAction(rank, (A, B))
    elif h == 2:
        a1 = random_unimodular(rng, rank)
        b1 = random_unimodular(rng, rank)
        a1i, b1i = unimodular_inverse(a1), unimodular_inverse(b1)
        C = a1 @ b1 @ a1i @ b1i
        k = rng.choice((0, 1, -1))
        X = IntMatrix.identity(rank)
        for _ in range(abs(k)):
            X = X @ (C if k > 0 else unimodular_inverse(C))
        Xi = unimodular_inverse(X)
        act = ModuleAction(rank, (a1, b1, X @ b1 @ Xi, X @ a1 @ Xi))
    else:
        raise ValueError("random actions are only generated for h in {1, 2}")
    if not act.relator_holds():
        raise AssertionError("generated action violates the surface relation")
    return act


# ---------------------------------------------------------------------------
# torus cohomology with coefficients in H and in wedge^2 H / omega


@dataclass(frozen=True)
class Cocycle:
    phi_e: tuple[int, ...]
    phi_f: tuple[int, ...]

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(tuple(a + b for a, b in zip(self.phi_e, other.phi_e)),
                       tuple(a + b for a, b in zip(self.phi_f, other.phi_f)))

    def scale(self, k: int) -> "Cocycle":
        return Cocycle(tuple(k * a for a in self.phi_e), tuple(k * a for a in self.phi_f))

    def as_vector(self) -> list[int]:
        return list(self.phi_e) + list(self.phi_f)

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> "Cocycle":
        n = len(v) // 2
        return cls(tuple(v[:n]), tuple(v[n:]))


def cocycle_defect(action: ModuleAction, phi: Cocycle) -> list[int]:
    """``(1 - S) phi(e) - (1 - T) phi(f)``."""
    S, T = action.S, action.T
    Se, Tf = matvec(S, phi.phi_e), matvec(T, phi.phi_f)
    return [(e - s) - (f - t) for e, s, f, t in zip(phi.phi_e, Se, phi.phi_f, Tf)]


def is_cocycle(action: ModuleAction, phi: Cocycle) -> bool:
    return not any(cocycle_defect(action, phi))


@dataclass(frozen=True)
class CocycleSpace:
    basis: tuple[Cocycle, ...]
    coboundaries: tuple[Cocycle, ...]


def coboundary(action: ModuleAction, m: Sequence[int]) -> Cocycle:
    """``d1*(m)``: ``e -> (T - 1) m``, ``f -> (S - 1) m``."""
    Tm, Sm = matvec(action.T, m), matvec(action.S, m)
    return Cocycle(tuple(a - b for a, b in zip(Tm, m)), tuple(a - b for a, b in zip(Sm, m)))


def one_cocycles(action: ModuleAction) -> CocycleSpace:
    n = action.rank
    I = IntMatrix.identity(n)
    IS = (I - action.S).to_rows()
    IT = (I - action.T).to_rows()
    M = IntMatrix.from_rows([r1 + [-x for x in r2] for r1, r2 in zip(IS, IT)], 2 * n)
    basis = tuple(Cocycle.from_vector(k) for k in integer_kernel(M))
    cob = tuple(coboundary(action, [int(i == j) for j in range(n)]) for i in range(n))
    return CocycleSpace(basis, cob)


def random_cocycle(rng: random.Random, space: CocycleSpace, bound: int = 2) -> Cocycle:
    out = Cocycle.from_vector([0] * (2 * len(space.basis[0].phi_e))) if space.basis else None
    if out is None:
        raise ValueError("no cocycles")
    for b in space.basis:
        out = out + b.scale(rng.randint(-bound, bound))
    return out


def _genus_of_rank(rank: int) -> int:
    if rank % 2:
        raise ActionError("module is not a surface homology group (odd rank)")
    return rank // 2


def wedge_relations(action: ModuleAction) -> list[list[int]]:
    """Columns of ``wedge^2 A - I`` on the reduced coordinates: the coinvariant relations."""
    ws = wedge_space(_genus_of_rank(action.rank))
    I = IntMatrix.identity(ws.dim)
    out = []
    for A in action.matrices:
        out += (ws.induced_matrix(A) - I).columns()
    return out


def m_pairing(phi: Cocycle, psi: Cocycle, action: ModuleAction) -> list[int]:
    """``phi(e) ^ T psi(f) - phi(f) ^ S psi(e)`` reduced mod ``omega``."""
    for c in (phi, psi):
        if not is_cocycle(action, c):
            raise ValueError("argument is not a cocycle")
    ws = wedge_space(_genus_of_rank(action.rank))
    a = ws.wedge(phi.phi_e, matvec(action.T, psi.phi_f))
    b = ws.wedge(phi.phi_f, matvec(action.S, psi.phi_e))
    return [x - y for x, y in zip(a, b)]


class LiftError(ValueError):
    pass


def check_lifts(action: ModuleAction, S_endo: NilEndo, T_endo: NilEndo) -> None:
    if S_endo.linear_part() != action.S or T_endo.linear_part() != action.T:
        raise LiftError("endomorphism does not project to the action matrix")


def delta(phi: Cocycle, action: ModuleAction, S_endo: NilEndo, T_endo: NilEndo,
          lift_e: NilElement | None = None, lift_f: NilElement | None = None) -> list[int]:
    """Boundary of ``phi`` in ``wedge^2 H / omega`` (a cocycle value on ``u``).

    Lifts default to ``h -> (h, 0)``.
    """
    if not is_cocycle(action, phi):
        raise ValueError("argument is not a cocycle")
    check_lifts(action, S_endo, T_endo)
    g = _genus_of_rank(action.rank)
    e = lift_e if lift_e is not None else NilElement.from_h(g, phi.phi_e)
    f = lift_f if lift_f is not None else NilElement.from_h(g, phi.phi_f)
    if e.h != tuple(phi.phi_e) or f.h != tuple(phi.phi_f):
        raise LiftError("lift does not project to the cocycle value")
    x = nil_commutator(e.inverse(), f) * T_endo(f) * f.inverse() * e * S_endo(e).inverse()
    return hur2(x)


@dataclass(frozen=True)
class MQuotient:
    presentation: AbelianPresentation
    order: Order
    dim: int


def m_quotient(action: ModuleAction, m_gens: Iterable[Sequence[int]],
               delta_gens: Iterable[Sequence[int]], c: Sequence[int]) -> MQuotient:
    """``(wedge^2 H / omega)_G`` modulo ``im m`` and ``im delta``, and the order of ``c``."""
    ws = wedge_space(_genus_of_rank(action.rank))
    rels = wedge_relations(action)
    for gens in (m_gens, delta_gens):
        for v in gens:
            if len(v) != ws.dim:
                raise ValueError(f"generator of length {len(v)} in a space of dimension {ws.dim}")
            rels.append(list(v))
    if len(c) != ws.dim:
        raise ValueError("class has the wrong dimension")
    pres = AbelianPresentation.from_relations(ws.dim, rels)
    return MQuotient(pres, pres.order_of(c), ws.dim)


def m_image(action: ModuleAction, space: CocycleSpace) -> list[list[int]]:
    """``m`` on all ordered pairs of basis cocycles (``m`` is bilinear)."""
    return [m_pairing(p, q, action) for p in space.basis for q in space.basis]


def delta_image(action: ModuleAction, space: CocycleSpace, S_endo: NilEndo, T_endo: NilEndo) -> list[list[int]]:
    return [delta(p, action, S_endo, T_endo) for p in space.basis]


def h2_wedge_lattice(action: ModuleAction, extra: Iterable[Sequence[int]] = ()) -> Lattice:
    """Lattice of coinvariant relations on ``wedge^2 H / omega``, optionally enlarged."""
    ws = wedge_space(_genus_of_rank(action.rank))
    lat = Lattice(ws.dim, wedge_relations(action))
    for v in extra:
        lat.add(v)
    return lat


def section_change(action: ModuleAction, S_endo: NilEndo, T_endo: NilEndo,
                   r_S: NilElement, r_T: NilElement) -> tuple[NilEndo, NilEndo, Cocycle]:
    """Twist the lifts by inner automorphisms: ``S' = c(r_S) S``, ``T' = c(r_T) T``.

    Returns the new endos and the difference cocycle ``e -> h(r_T)``,
    ``f -> h(r_S)``.  Raises unless the new endos still commute.
    """
    S2 = NilEndo.conjugation(r_S).compose(S_endo)
    T2 = NilEndo.conjugation(r_T).compose(T_endo)
    if S2.compose(T2) != T2.compose(S2):
        raise LiftError("twisted lifts no longer commute")
    c = Cocycle(tuple(r_T.h), tuple(r_S.h))
    if not is_cocycle(action, c):
        raise AssertionError("difference of sections is not a cocycle")
    return S2, T2, c
