"""Exact integer linear algebra over Python's arbitrary-precision ints.

Matrices are :class:`IntMatrix` values (row-major, immutable).  The heavy
lifting (Hermite form, Smith form, lattice membership) happens on plain
lists of lists; the public functions convert at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union


class Infinite:
    """The order of an element of infinite order.  Use the ``INFINITE`` singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "infinite"

    __str__ = __repr__

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()
Order = Union[int, Infinite]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        cols = [list(c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            return IntMatrix.from_rows(_matmul(self.to_rows(), other.to_rows()), other.cols)
        return matvec(self, other)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == (i == j) for i in range(self.rows) for j in range(self.cols)
        )

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


MatrixLike = Union[IntMatrix, Sequence[Sequence[int]]]


def as_matrix(M: MatrixLike, ncols: int | None = None) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M, ncols)


def _matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    Bt = list(zip(*B)) if B else []
    ncols = len(B[0]) if B else 0
    if not Bt:
        return [[0] * ncols for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(M: MatrixLike, v: Sequence[int]) -> list[int]:
    M = as_matrix(M)
    if len(v) != M.cols:
        raise ValueError("dimension mismatch in matrix-vector product")
    c = M.cols
    e = M.entries
    return [sum(e[i * c + j] * v[j] for j in range(c) if v[j]) for i in range(M.rows)]


def hstack(*blocks: IntMatrix) -> IntMatrix:
    rows = blocks[0].rows
    out = [[] for _ in range(rows)]
    for b in blocks:
        if b.rows != rows:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(b.to_rows()):
            out[i].extend(r)
    return IntMatrix.from_rows(out, sum(b.cols for b in blocks))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def determinant(M: MatrixLike) -> int:
    """Fraction-free (Bareiss) determinant."""
    M = as_matrix(M)
    n = M.rows
    if n != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = M.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_rows(A: list[list[int]], track: bool) -> tuple[list[list[int]], list[list[int]] | None]:
    m = len(A)
    n = len(A[0]) if m else 0
    A = [r[:] for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    for c in range(n):
        if r == m:
            break
        # gcd-combine column c into row r
        for i in range(r + 1, m):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            g, s, t = xgcd(a, b)
            p, q = a // g, b // g
            Rr, Ri = A[r], A[i]
            A[r] = [s * x + t * y for x, y in zip(Rr, Ri)]
            A[i] = [p * y - q * x for x, y in zip(Rr, Ri)]
            if track:
                Ur, Ui = U[r], U[i]
                U[r] = [s * x + t * y for x, y in zip(Ur, Ui)]
                U[i] = [p * y - q * x for x, y in zip(Ur, Ui)]
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-x for x in A[r]]
            if track:
                U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                if track:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return A, U


def hermite_normal_form(M: MatrixLike) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite form: returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, zero
    rows sit at the bottom.
    """
    M = as_matrix(M)
    H, U = _hnf_rows(M.to_rows(), track=True)
    return IntMatrix.from_rows(H, M.cols), IntMatrix.from_rows(U, M.rows)


def unimodular_inverse(M: MatrixLike) -> IntMatrix:
    """Inverse of a square integer matrix with determinant ``+-1``."""
    M = as_matrix(M)
    if M.rows != M.cols:
        raise ValueError("matrix is not square")
    H, U = hermite_normal_form(M)
    if not H.is_identity():
        raise ValueError("matrix is not invertible over the integers")
    return U


def integer_kernel(M: MatrixLike) -> list[list[int]]:
    """A basis of ``{x in Z^n : M x = 0}``."""
    M = as_matrix(M)
    H, U = _hnf_rows(M.T.to_rows(), track=True)
    return [U[i] for i in range(len(H)) if not any(H[i])]


# ---------------------------------------------------------------------------
# Lattices given by generators


class Lattice:
    """A sublattice of ``Z^dim`` kept in echelon (Hermite) form.

    Generators may be added one at a time, which keeps memory at
    ``O(dim^2)`` no matter how many redundant generators are fed in.
    """

    def __init__(self, dim: int, generators: Iterable[Sequence[int]] = ()):
        self.dim = dim
        self._basis: dict[int, list[int]] = {}
        for v in generators:
            self.add(v)

    def add(self, v: Sequence[int]) -> None:
        if len(v) != self.dim:
            raise ValueError("generator has wrong length")
        v = list(v)
        for p in range(self.dim):
            if v[p] == 0:
                continue
            b = self._basis.get(p)
            if b is None:
                if v[p] < 0:
                    v = [-x for x in v]
                self._basis[p] = v
                break
            a, c = b[p], v[p]
            if c % a == 0:
                q = c // a
                v = [x - q * y for x, y in zip(v, b)]
                continue
            g, s, t = xgcd(a, c)
            self._basis[p] = [s * x + t * y for x, y in zip(b, v)]
            v = [(a // g) * y - (c // g) * x for x, y in zip(b, v)]
        self._reduce()

    def _reduce(self) -> None:
        # keep off-pivot entries small
        pivots = sorted(self._basis)
        for k, p in enumerate(pivots):
            bp = self._basis[p]
            for p2 in pivots[:k]:
                b2 = self._basis[p2]
                q = b2[p] // bp[p]
                if q:
                    self._basis[p2] = [x - q * y for x, y in zip(b2, bp)]

    def __contains__(self, c: Sequence[int]) -> bool:
        r = self.reduce_vector(c)
        return r is not None and not any(r)

    def reduce_vector(self, c: Sequence[int]) -> list[int] | None:
        """Subtract lattice vectors from ``c`` along the pivots; ``None`` if a pivot fails to divide."""
        c = list(c)
        for p in sorted(self._basis):
            if c[p] == 0:
                continue
            b = self._basis[p]
            if c[p] % b[p]:
                return None
            q = c[p] // b[p]
            c = [x - q * y for x, y in zip(c, b)]
        return c

    def basis(self) -> list[list[int]]:
        return [self._basis[p][:] for p in sorted(self._basis)]

    @property
    def rank(self) -> int:
        return len(self._basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.basis() == other.basis()

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(b in other for b in self.basis())


def lattice_intersection(a: Lattice, b: Lattice) -> Lattice:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    A, B = a.basis(), b.basis()
    if not A or not B:
        return Lattice(a.dim)
    M = IntMatrix.from_columns(A + [[-x for x in v] for v in B], a.dim)
    out = Lattice(a.dim)
    for k in integer_kernel(M):
        v = [0] * a.dim
        for coef, col in zip(k[:len(A)], A):
            if coef:
                v = [x + coef * y for x, y in zip(v, col)]
        out.add(v)
    return out


def lattice_preimage(M: MatrixLike, target: Lattice) -> Lattice:
    """``{x : M x in target}`` as a lattice in ``Z^cols``."""
    M = as_matrix(M)
    if M.rows != target.dim:
        raise ValueError("dimension mismatch")
    T = target.basis()
    big = IntMatrix.from_columns(M.columns() + [[-x for x in v] for v in T], M.rows)
    return Lattice(M.cols, [k[:M.cols] for k in integer_kernel(big)])


def congruence_lattice(rows: Sequence[Sequence[int]], moduli: Sequence[int], dim: int,
                       start: Lattice | None = None) -> Lattice:
    """``{x in start : rows[i] . x = 0 mod moduli[i]}``, one congruence at a time.

    All moduli must be positive.  When ``start`` contains ``N Z^dim`` for
    ``N`` the lcm of the moduli, those vectors are kept in the basis, which
    bounds every entry by ``N`` and prevents coefficient growth.
    """
    if any(m <= 0 for m in moduli):
        raise ValueError("moduli must be positive")
    cur = start if start is not None else Lattice(dim, [[int(i == j) for j in range(dim)] for i in range(dim)])
    N = 1
    for m in moduli:
        N = lcm(N, m)
    unit = [[N * int(i == j) for j in range(dim)] for i in range(dim)]
    bounded = all(u in cur for u in unit)
    for row, m in zip(rows, moduli):
        basis = cur.basis()
        vals = [sum(a * b for a, b in zip(row, v)) % m for v in basis]
        if not any(vals):
            continue
        ker = integer_kernel(IntMatrix.from_rows([vals + [m]], len(vals) + 1))
        nxt = Lattice(dim, unit if bounded else ())
        for k in ker:
            w = [0] * dim
            for c, v in zip(k, basis):
                if c:
                    w = [x + c * y for x, y in zip(w, v)]
            nxt.add(w)
        cur = nxt
    return cur


def lattice_equal(gens_a: Iterable[Sequence[int]], gens_b: Iterable[Sequence[int]], dim: int) -> bool:
    return Lattice(dim, gens_a) == Lattice(dim, gens_b)


def in_column_span(M: MatrixLike, c: Sequence[int]) -> bool:
    M = as_matrix(M)
    if len(c) != M.rows:
        raise ValueError("vector length does not match row count")
    return list(c) in Lattice(M.rows, M.columns())


# ---------------------------------------------------------------------------
# Smith normal form


def _snf(A: list[list[int]], track_u: bool = True, track_v: bool = True):
    m = len(A)
    n = len(A[0]) if m else 0
    A = [r[:] for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track_u else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track_v else None

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if track_u:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            if track_v:
                for r in V:
                    r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        if track_u:
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in A:
            r[dst] -= q * r[src]
        if track_v:
            for r in V:
                r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, _round_div(A[i][t], p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, _round_div(A[t][j], p))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/col t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track_u:
                U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def smith_normal_form(M: MatrixLike) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` diagonal and ``d1 | d2 | ...``."""
    M = as_matrix(M)
    D, U, V = _snf(M.to_rows())
    return (
        IntMatrix.from_rows(D, M.cols),
        IntMatrix.from_rows(U, M.rows),
        IntMatrix.from_rows(V, M.cols),
    )


def smith_invariants(M: MatrixLike) -> list[int]:
    """Diagonal of the Smith form (length ``min(rows, cols)``), without transforms."""
    M = as_matrix(M)
    D, _, _ = _snf(M.to_rows(), track_u=False, track_v=False)
    return [D[i][i] for i in range(min(M.rows, M.cols))]


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class AbelianPresentation:
    """``Z^ambient_rank / (column span of relation_matrix)``.

    ``invariant_factors`` lists the non-unit cyclic factors, torsion first
    in divisibility order, then one ``0`` per free summand.
    """

    ambient_rank: int
    relation_matrix: IntMatrix
    invariant_factors: tuple[int, ...]
    _u: IntMatrix = field(repr=False, compare=False, default=None)
    _diag: tuple[int, ...] = field(repr=False, compare=False, default=())

    @classmethod
    def from_relations(cls, ambient_rank: int, relations: Iterable[Sequence[int]]) -> "AbelianPresentation":
        lat = Lattice(ambient_rank, relations)
        basis = lat.basis()
        rel = IntMatrix.from_columns(basis, ambient_rank) if basis else IntMatrix.zeros(ambient_rank, 0)
        D, U, _ = _snf(rel.to_rows(), track_u=True, track_v=False)
        diag = [D[i][i] for i in range(min(ambient_rank, rel.cols))]
        diag += [0] * (ambient_rank - len(diag))
        factors = tuple(d for d in diag if d != 1 and d != 0) + tuple(0 for d in diag if d == 0)
        return cls(ambient_rank, rel, factors, IntMatrix.from_rows(U, ambient_rank), tuple(diag))

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def order(self) -> Order:
        if 0 in self.invariant_factors:
            return INFINITE
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    def coordinates(self, c: Sequence[int]) -> list[int]:
        """Coordinates of ``c`` in the Smith basis (before reduction modulo the diagonal)."""
        if len(c) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        return matvec(self._u, c)

    def order_of(self, c: Sequence[int]) -> Order:
        return _order_from_snf(self._diag, self.coordinates(c))

    @property
    def transform(self) -> IntMatrix:
        """Unimodular ``U`` with ``U x`` the Smith coordinates of ``x``."""
        return self._u

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self._diag

    def generators(self) -> list[tuple[list[int], int]]:
        """Ambient vectors generating the cyclic factors, paired with their orders (``0`` = free).

        Same order as ``invariant_factors``.
        """
        inv = unimodular_inverse(self._u)
        gens = [(inv.column(i), d) for i, d in enumerate(self._diag) if d not in (0, 1)]
        gens += [(inv.column(i), 0) for i, d in enumerate(self._diag) if d == 0]
        return gens

    def reduced_coordinates(self, c: Sequence[int]) -> list[int]:
        """Coordinates on the non-unit factors, reduced modulo each factor (free ones untouched)."""
        out = []
        for x, d in zip(self.coordinates(c), self._diag):
            if d != 1:
                out.append(x % d if d else x)
        torsion = [x for x, d in zip(out, [d for d in self._diag if d != 1]) if d]
        free = [x for x, d in zip(out, [d for d in self._diag if d != 1]) if not d]
        return torsion + free

    def element(self, coords: Sequence[int]) -> list[int]:
        """Ambient representative of the element with the given Smith coordinates."""
        out = [0] * self.ambient_rank
        for (g, _), c in zip(self.generators(), coords):
            if c:
                out = [a + c * b for a, b in zip(out, g)]
        return out

    def is_zero(self, c: Sequence[int]) -> bool:
        return self.order_of(c) == 1


def _order_from_snf(diag: Sequence[int], coords: Sequence[int]) -> Order:
    order = 1
    for d, x in zip(diag, coords):
        if d == 0:
            if x:
                return INFINITE
        else:
            order = lcm(order, d // gcd(d, x))
    return order


def cokernel_order_of(M: MatrixLike, c: Sequence[int]) -> Order:
    """Least ``n >= 1`` with ``n*c`` in the column span of ``M``, or ``INFINITE``."""
    M = as_matrix(M)
    if len(c) != M.rows:
        raise ValueError(f"vector of length {len(c)} against {M.rows} rows")
    return AbelianPresentation.from_relations(M.rows, M.columns()).order_of(c)
