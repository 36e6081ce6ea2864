"""Finite abelian groups, their duals and the character pairing.

A group is a product of cyclic factors Z_{N1} x ... x Z_{Nk}.  Elements and
characters both live in the same coordinate space (a tuple of residues), and
the pairing of a character ``chi`` with an element ``g`` is

    <chi, g> = exp(2*pi*i * sum_j chi_j * g_j / N_j).

Haar measure is a per-point weight: ``w`` on the group, ``w_hat`` on the
dual, constrained by ``w * w_hat * |G| == 1`` (exact rational arithmetic) so
that the Fourier transform is an isometry.  The default is counting measure
on the group (``w = 1``, ``w_hat = 1/|G|``), which makes the measure of a
subset equal to its cardinality.

Function tables on a group are numpy arrays of length ``|G|``, indexed in
lexicographic coordinate order (C order, so ``table.reshape(orders)`` lines
up with the coordinate axes).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "StructureError",
    "PreconditionError",
    "GroupElement",
    "Character",
    "FiniteAbelianGroup",
    "add",
    "pairing",
    "pairing_is_one",
    "character_matrix",
    "character_table",
]


class StructureError(ValueError):
    """Raised when objects from incompatible groups are combined."""


class PreconditionError(ValueError):
    """Raised when an operation's precondition is violated."""


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element of a product of cyclic groups, as reduced residues.

    Ordering and equality are lexicographic on the coordinates, which is the
    canonical element order used everywhere (function tables, subgroup
    element lists, cross-section scans).
    """

    coords: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.orders):
            raise StructureError("coords and cyclic orders must have equal length")
        reduced = tuple(c % n for c, n in zip(self.coords, self.orders))
        object.__setattr__(self, "coords", reduced)

    def _check(self, other: "GroupElement") -> None:
        if self.orders != other.orders:
            raise StructureError(
                f"mismatched cyclic orders: {self.orders} vs {other.orders}"
            )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.orders
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.coords), self.orders)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            tuple(a - b for a, b in zip(self.coords, other.coords)), self.orders
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.coords))})"


# Characters of Z_{N1} x ... x Z_{Nk} are indexed by the same coordinate
# space (the group is self-dual in fixed coordinates), so they share the
# element type.  A Character is a GroupElement of the dual group.
Character = GroupElement


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    """Coordinatewise sum modulo the cyclic orders (the abelian group law)."""
    return a + b


def pairing(chi: Character, g: GroupElement) -> complex:
    """Evaluate <chi, g> = exp(2*pi*i * sum_j chi_j*g_j/N_j), unit modulus."""
    chi._check(g)
    phase = sum((c * x % n) / n for c, x, n in zip(chi.coords, g.coords, chi.orders))
    return complex(np.exp(2j * np.pi * phase))


def pairing_is_one(chi: Character, g: GroupElement) -> bool:
    """Decide <chi, g> == 1 exactly, in integer arithmetic only.

    Reduces the phase sum to a congruence: with L = lcm(N_j), the pairing is
    1 iff sum_j chi_j * g_j * (L/N_j) == 0 (mod L).
    """
    chi._check(g)
    L = lcm(*chi.orders) if chi.orders else 1
    acc = sum(c * x * (L // n) for c, x, n in zip(chi.coords, g.coords, chi.orders))
    return acc % L == 0


class FiniteAbelianGroup:
    """The group Z_{N1} x ... x Z_{Nk} with a Haar weight per point.

    Parameters
    ----------
    orders:
        Cyclic factor orders, each >= 1.
    weight_g:
        Haar weight of a single point of the group (exact rational).
    weight_dual:
        Haar weight of a single point of the dual.  Defaults to
        ``1 / (weight_g * |G|)``; if given, the isometry constraint
        ``weight_g * weight_dual * |G| == 1`` is validated exactly.
    """

    def __init__(
        self,
        orders: Sequence[int],
        weight_g: Fraction | int | str = 1,
        weight_dual: Fraction | int | str | None = None,
    ) -> None:
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 1 for n in orders):
            raise StructureError("cyclic orders must be a nonempty list of ints >= 1")
        self.orders = orders
        self.order = reduce(lambda a, b: a * b, orders, 1)
        self.weight_g = Fraction(weight_g)
        if self.weight_g <= 0:
            raise StructureError("weight_g must be positive")
        if weight_dual is None:
            self.weight_dual = Fraction(1, 1) / (self.weight_g * self.order)
        else:
            self.weight_dual = Fraction(weight_dual)
        if self.weight_g * self.weight_dual * self.order != 1:
            raise StructureError(
                "weights violate the isometry normalization w * w_hat * |G| == 1"
            )
        # strides for lexicographic (C-order) indexing
        self._strides = []
        acc = 1
        for n in reversed(orders):
            self._strides.append(acc)
            acc *= n
        self._strides.reverse()
        self._elements: list[GroupElement] | None = None
        self._dual: FiniteAbelianGroup | None = None

    # -- identity and hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteAbelianGroup)
            and self.orders == other.orders
            and self.weight_g == other.weight_g
            and self.weight_dual == other.weight_dual
        )

    def __hash__(self) -> int:
        return hash((self.orders, self.weight_g, self.weight_dual))

    def __repr__(self) -> str:
        body = "x".join(f"Z{n}" for n in self.orders)
        return f"FiniteAbelianGroup({body}, w={self.weight_g})"

    # -- elements ------------------------------------------------------------

    @property
    def zero(self) -> GroupElement:
        return GroupElement((0,) * len(self.orders), self.orders)

    def element(self, coords: Iterable[int]) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.orders):
            raise StructureError(
                f"expected {len(self.orders)} coordinates, got {len(coords)}"
            )
        return GroupElement(coords, self.orders)

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic coordinate order."""
        if self._elements is None:
            coords = np.indices(self.orders).reshape(len(self.orders), -1).T
            self._elements = [GroupElement(tuple(map(int, c)), self.orders) for c in coords]
        return self._elements

    def index_of(self, g: GroupElement) -> int:
        """Lexicographic index of ``g`` in ``elements()``."""
        if g.orders != self.orders:
            raise StructureError("element does not belong to this group")
        return sum(c * s for c, s in zip(g.coords, self._strides))

    def element_at(self, index: int) -> GroupElement:
        if not 0 <= index < self.order:
            raise StructureError(f"element index {index} out of range [0, {self.order})")
        coords = []
        for s, n in zip(self._strides, self.orders):
            coords.append((index // s) % n)
        return GroupElement(tuple(coords), self.orders)

    def contains(self, g: GroupElement) -> bool:
        return g.orders == self.orders

    # -- dual group ----------------------------------------------------------

    def dual(self) -> "FiniteAbelianGroup":
        """The dual group: same coordinates, Haar weights swapped."""
        if self._dual is None:
            d = FiniteAbelianGroup(self.orders, self.weight_dual, self.weight_g)
            d._dual = self
            self._dual = d
        return self._dual

    # -- L2 pairings ---------------------------------------------------------

    def inner_product(self, f: np.ndarray, h: np.ndarray) -> complex:
        """<f, h> = w * sum_g f(g) * conj(h(g)), tables in element order."""
        f = np.asarray(f, dtype=complex).ravel()
        h = np.asarray(h, dtype=complex).ravel()
        if f.shape != (self.order,) or h.shape != (self.order,):
            raise StructureError("function tables must cover the whole group")
        return complex(float(self.weight_g) * np.vdot(h, f))

    def norm_sq(self, f: np.ndarray) -> float:
        return float(np.real(self.inner_product(f, f)))


def character_matrix(
    chis: Sequence[Character], elements: Sequence[GroupElement]
) -> np.ndarray:
    """Matrix of pairings M[i, j] = <chis[i], elements[j]>.

    Vectorized over both argument lists; products are reduced modulo the
    cyclic orders in integer arithmetic before the complex exponential, so
    phases stay small regardless of coordinate size.
    """
    if not chis or not elements:
        return np.zeros((len(chis), len(elements)), dtype=complex)
    orders = np.array(chis[0].orders, dtype=np.int64)
    a = np.array([c.coords for c in chis], dtype=np.int64)
    b = np.array([g.coords for g in elements], dtype=np.int64)
    # phase[i, j] = sum_k (a[i,k]*b[j,k] mod N_k) / N_k
    prod = (a[:, None, :] * b[None, :, :]) % orders
    phase = (prod / orders).sum(axis=2)
    return np.exp(2j * np.pi * phase)


@lru_cache(maxsize=128)
def _character_table_by_orders(orders: tuple[int, ...]) -> np.ndarray:
    probe = FiniteAbelianGroup(orders)
    table = character_matrix(probe.dual().elements(), probe.elements())
    table.setflags(write=False)
    return table


def character_table(G: FiniteAbelianGroup) -> np.ndarray:
    """Full pairing table T[i, j] = <chi_i, g_j> over dual x group.

    Cached per coordinate shape (weights play no role), read-only.  Row and
    column order is the lexicographic element order of the dual group and
    the group respectively.
    """
    return _character_table_by_orders(G.orders)
