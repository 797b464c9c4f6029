"""Arithmetic in the 2-step nilpotent quotient ``pi / L^3 pi`` of a closed surface group.

Homology basis order is ``x1, y1, x2, y2, ..., xg, yg`` (index ``2i`` and
``2i+1`` for handle ``i``).  An element is a pair ``(h, w)`` with ``h`` in
``Z^{2g}`` and ``w`` in ``wedge^2 Z^{2g} / <omega>``, ``omega = sum xi^yi``.
``w`` is stored in reduced coordinates: the ``xg^yg`` coordinate is
eliminated by substituting ``-sum_{i<g} xi^yi``.

Multiplication uses the collection cocycle
``beta(u, v) = sum_{i>j} u_i v_j e_i^e_j``, so ``[x, y] = h_x ^ h_y``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exactla import IntMatrix


class WordError(ValueError):
    pass


class NotInL2(ValueError):
    """Raised when the abelian part of an element is nonzero."""


class WedgeSpace:
    """Coordinates on ``wedge^2 Z^{2g}`` and its quotient by ``omega``."""

    def __init__(self, genus: int):
        if genus < 1:
            raise ValueError("genus must be positive")
        self.genus = genus
        n = 2 * genus
        self.n = n
        self.pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        self.full_index = {p: k for k, p in enumerate(self.pairs)}
        self.dropped = self.full_index[(n - 2, n - 1)]
        self.reduced_pairs = [p for p in self.pairs if p != (n - 2, n - 1)]
        self.reduced_index = {p: k for k, p in enumerate(self.reduced_pairs)}
        self.omega_pairs = [(2 * i, 2 * i + 1) for i in range(genus)]

    @property
    def full_dim(self) -> int:
        return len(self.pairs)

    @property
    def dim(self) -> int:
        return len(self.reduced_pairs)

    def labels(self) -> list[str]:
        names = [f"{'xy'[k % 2]}{k // 2 + 1}" for k in range(self.n)]
        return [f"{names[i]}^{names[j]}" for i, j in self.reduced_pairs]

    def reduce(self, full: Sequence[int]) -> list[int]:
        c = full[self.dropped]
        out = list(full)
        if c:
            for p in self.omega_pairs:
                out[self.full_index[p]] -= c
        del out[self.dropped]
        return out

    def lift(self, reduced: Sequence[int]) -> list[int]:
        out = list(reduced)
        out.insert(self.dropped, 0)
        return out

    def wedge_full(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        out = [0] * self.full_dim
        for k, (i, j) in enumerate(self.pairs):
            out[k] = u[i] * v[j] - u[j] * v[i]
        return out

    def wedge(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        """``u ^ v`` reduced modulo ``omega``."""
        return self.reduce(self.wedge_full(u, v))

    def basis_wedge(self, i: int, j: int) -> list[int]:
        u = [0] * self.n
        v = [0] * self.n
        u[i] = 1
        v[j] = 1
        return self.wedge(u, v)

    def omega_full(self) -> list[int]:
        out = [0] * self.full_dim
        for p in self.omega_pairs:
            out[self.full_index[p]] = 1
        return out

    def induced_matrix(self, A: IntMatrix) -> IntMatrix:
        """Matrix of ``wedge^2 A`` on the reduced coordinates.

        Raises ``ValueError`` unless ``A`` carries ``omega`` into ``Z omega``.
        """
        if (A.rows, A.cols) != (self.n, self.n):
            raise ValueError("action matrix has the wrong size")
        cols = [A.column(k) for k in range(self.n)]
        img_omega = [0] * self.full_dim
        for i, j in self.omega_pairs:
            img_omega = [a + b for a, b in zip(img_omega, self.wedge_full(cols[i], cols[j]))]
        if any(self.reduce(img_omega)):
            raise ValueError("matrix does not preserve the symplectic class")
        out = [self.reduce(self.wedge_full(cols[i], cols[j])) for i, j in self.reduced_pairs]
        return IntMatrix.from_columns(out, self.dim)


@lru_cache(maxsize=None)
def wedge_space(genus: int) -> WedgeSpace:
    return WedgeSpace(genus)


@dataclass(frozen=True)
class NilElement:
    genus: int
    h: tuple[int, ...]
    w: tuple[int, ...]

    def __post_init__(self):
        ws = wedge_space(self.genus)
        if len(self.h) != ws.n or len(self.w) != ws.dim:
            raise ValueError("coordinate vectors have the wrong length")

    @classmethod
    def identity(cls, genus: int) -> "NilElement":
        ws = wedge_space(genus)
        return cls(genus, (0,) * ws.n, (0,) * ws.dim)

    @classmethod
    def generator(cls, genus: int, index: int) -> "NilElement":
        """Generator by signed 1-based index: ``2i-1`` is ``a_i``, ``2i`` is ``b_i``."""
        ws = wedge_space(genus)
        k = abs(index)
        if not 1 <= k <= ws.n:
            raise WordError(f"generator index {index} out of range for genus {genus}")
        h = [0] * ws.n
        h[k - 1] = 1 if index > 0 else -1
        return cls(genus, tuple(h), (0,) * ws.dim)

    @classmethod
    def from_h(cls, genus: int, h: Sequence[int]) -> "NilElement":
        """The default lift ``h -> (h, 0)``."""
        return cls(genus, tuple(h), (0,) * wedge_space(genus).dim)

    @classmethod
    def central(cls, genus: int, w: Sequence[int]) -> "NilElement":
        return cls(genus, (0,) * wedge_space(genus).n, tuple(w))

    def __mul__(self, other: "NilElement") -> "NilElement":
        return nil_mul(self, other)

    def inverse(self) -> "NilElement":
        ws = wedge_space(self.genus)
        b = ws.reduce(_beta_full(ws, self.h, self.h))
        return NilElement(self.genus, tuple(-x for x in self.h),
                          tuple(-x + y for x, y in zip(self.w, b)))

    def __pow__(self, k: int) -> "NilElement":
        base = self if k >= 0 else self.inverse()
        out = NilElement.identity(self.genus)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not any(self.h) and not any(self.w)


def _beta_full(ws: WedgeSpace, u: Sequence[int], v: Sequence[int]) -> list[int]:
    # sum_{i>j} u_i v_j e_i^e_j  =  -sum_{j<i} u_i v_j e_j^e_i
    out = [0] * ws.full_dim
    for k, (j, i) in enumerate(ws.pairs):
        out[k] = -u[i] * v[j]
    return out


def _check_genus(x: NilElement, y: NilElement) -> None:
    if x.genus != y.genus:
        raise ValueError(f"genus mismatch: {x.genus} vs {y.genus}")


def nil_mul(x: NilElement, y: NilElement) -> NilElement:
    _check_genus(x, y)
    ws = wedge_space(x.genus)
    b = ws.reduce(_beta_full(ws, x.h, y.h))
    return NilElement(
        x.genus,
        tuple(a + c for a, c in zip(x.h, y.h)),
        tuple(a + c + d for a, c, d in zip(x.w, y.w, b)),
    )


def nil_commutator(x: NilElement, y: NilElement) -> NilElement:
    """``x y x^-1 y^-1``, computed directly as ``(0, h_x ^ h_y)``."""
    _check_genus(x, y)
    ws = wedge_space(x.genus)
    return NilElement.central(x.genus, ws.wedge(x.h, y.h))


def nil_product(elements: Iterable[NilElement], genus: int) -> NilElement:
    out = NilElement.identity(genus)
    for e in elements:
        out = out * e
    return out


# ---------------------------------------------------------------------------
# words


Word = Sequence[int]

_TOKEN = re.compile(r"([abAB])(\d+)")


def parse_word(text: str) -> list[int]:
    """Parse ``"a1 b1 A1 B1"`` (capitals are inverses) into signed generator indices."""
    out = []
    for tok in text.replace(",", " ").replace("*", " ").split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise WordError(f"bad token {tok!r}")
        letter, idx = m.group(1), int(m.group(2))
        if idx < 1:
            raise WordError(f"bad index in {tok!r}")
        k = 2 * idx - 1 if letter in "aA" else 2 * idx
        out.append(-k if letter.isupper() else k)
    return out


def format_word(word: Word) -> str:
    toks = []
    for k in word:
        i = (abs(k) + 1) // 2
        letter = "a" if abs(k) % 2 == 1 else "b"
        toks.append((letter.upper() if k < 0 else letter) + str(i))
    return " ".join(toks)


def invert_word(word: Word) -> list[int]:
    return [-k for k in reversed(word)]


def free_reduce(word: Word) -> list[int]:
    out: list[int] = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return out


def commutator_word(u: Word, v: Word) -> list[int]:
    return list(u) + list(v) + invert_word(u) + invert_word(v)


def surface_relator(genus: int, handles: Iterable[int] | None = None) -> list[int]:
    """``prod [a_i, b_i]`` over ``handles`` (1-based; all of them by default)."""
    if handles is None:
        handles = range(1, genus + 1)
    word: list[int] = []
    for i in handles:
        word += commutator_word([2 * i - 1], [2 * i])
    return word


def eval_word(word: Word, genus: int) -> NilElement:
    out = NilElement.identity(genus)
    for k in word:
        out = out * NilElement.generator(genus, k)
    return out


def hur2(x: NilElement) -> list[int]:
    """Image of an element of ``L^2 pi`` in ``L^2/L^3 = wedge^2 H / <omega>``."""
    if any(x.h):
        raise NotInL2(f"element has abelian part {list(x.h)}")
    return list(x.w)


# ---------------------------------------------------------------------------
# endomorphisms


class EndoError(ValueError):
    pass


@dataclass(frozen=True)
class NilEndo:
    """Endomorphism of ``pi / L^3 pi`` given by the images of ``a1, b1, ..., ag, bg``."""

    genus: int
    images: tuple[NilElement, ...]

    def __post_init__(self):
        if len(self.images) != 2 * self.genus:
            raise EndoError("need one image per generator")
        for im in self.images:
            if im.genus != self.genus:
                raise EndoError("image has the wrong genus")
        relator = nil_product(
            (nil_commutator(self.images[2 * i], self.images[2 * i + 1]) for i in range(self.genus)),
            self.genus,
        )
        if not relator.is_identity():
            raise EndoError("surface relator does not map to the identity")

    @classmethod
    def from_words(cls, genus: int, words: Sequence[Word]) -> "NilEndo":
        return cls(genus, tuple(eval_word(w, genus) for w in words))

    @classmethod
    def identity(cls, genus: int) -> "NilEndo":
        return cls(genus, tuple(NilElement.generator(genus, k) for k in range(1, 2 * genus + 1)))

    @classmethod
    def conjugation(cls, r: NilElement) -> "NilEndo":
        """``x -> r x r^-1``."""
        ri = r.inverse()
        g = r.genus
        return cls(g, tuple(r * NilElement.generator(g, k) * ri for k in range(1, 2 * g + 1)))

    def linear_part(self) -> IntMatrix:
        """Induced map on ``H`` (columns are images of the basis)."""
        return IntMatrix.from_columns([im.h for im in self.images], 2 * self.genus)

    def __call__(self, x: NilElement) -> NilElement:
        return apply_endo(self, x)

    def compose(self, other: "NilEndo") -> "NilEndo":
        """``self o other``."""
        return NilEndo(self.genus, tuple(self(im) for im in other.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, NilEndo) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


def apply_endo(phi: NilEndo, x: NilElement) -> NilElement:
    if x.genus != phi.genus:
        raise ValueError("genus mismatch")
    g = phi.genus
    ws = wedge_space(g)
    # x = (g_1^{h_1} ... g_n^{h_n}) * central(z)
    ordered = nil_product((NilElement.generator(g, k + 1) ** x.h[k] for k in range(ws.n)), g)
    z = [a - b for a, b in zip(x.w, ordered.w)]
    head = nil_product((phi.images[k] ** x.h[k] for k in range(ws.n)), g)
    zf = ws.lift(z)
    out = [0] * ws.full_dim
    for (i, j), c in zip(ws.pairs, zf):
        if c:
            out = [o + c * v for o, v in zip(out, ws.wedge_full(phi.images[i].h, phi.images[j].h))]
    return head * NilElement.central(g, ws.reduce(out))


def swap_endo(genus: int, perm: Mapping[int, int]) -> NilEndo:
    """Endo permuting handles: handle ``i`` (1-based) goes to handle ``perm[i]``."""
    imgs = []
    for i in range(1, genus + 1):
        j = perm.get(i, i)
        imgs += [NilElement.generator(genus, 2 * j - 1), NilElement.generator(genus, 2 * j)]
    return NilEndo(genus, tuple(imgs))
