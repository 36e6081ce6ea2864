"""Subgroups as lattices: closure, annihilator, cosets, cross sections.

Every subgroup of a finite abelian group is discrete and co-compact, so
"lattice" here simply means subgroup.  The annihilator (dual lattice) of a
subgroup L of G is

    L_perp = {chi in dual(G) : <chi, lam> = 1 for all lam in L},

a subgroup of the dual group, computed by exact integer tests.  Quotients
are never materialized: a coset of L is identified by the index of its
lexicographically first member, and a cross section is the list of those
first members.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from .groups import FiniteAbelianGroup, GroupElement, StructureError

__all__ = [
    "LatticeSubgroup",
    "DualLattice",
    "CrossSection",
    "subgroup_from_generators",
    "annihilator",
    "cross_section",
    "random_cross_section",
    "lattice_sizes",
    "weil_check",
    "shift_overlap_counts",
    "all_subgroups",
]


@dataclass(frozen=True)
class CrossSection:
    """One representative per coset of G/L, plus the lattice size |Q_L|.

    ``representatives`` are in scan order; for the canonical cross section
    that is lexicographic order of the representatives themselves.  The Haar
    size is ``|Q_L| = [G:L] * w``, an exact rational.
    """

    representatives: tuple[GroupElement, ...]
    size: Fraction


class LatticeSubgroup:
    """A subgroup of a finite abelian group, with its coset machinery.

    Immutable after construction.  ``elements`` is the sorted closure of the
    generators; ``index`` is [G : L].  Annihilator, canonical cross section
    and coset labels are computed lazily and cached.
    """

    def __init__(
        self,
        parent: FiniteAbelianGroup,
        generators: Sequence[GroupElement],
        elements: Sequence[GroupElement],
    ) -> None:
        self.parent = parent
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.element_set = frozenset(elements)
        if parent.order % len(self.elements):
            raise StructureError("element count does not divide the group order")
        self.index = parent.order // len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.element_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticeSubgroup)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))

    def __repr__(self) -> str:
        gens = ",".join(map(str, self.generators))
        return f"LatticeSubgroup(<{gens}>, size={len(self)}, index={self.index})"

    @cached_property
    def coset_labels(self) -> np.ndarray:
        """Array over G (element order): label[i] = coset number of element i.

        Coset numbers follow the lexicographic scan, so coset ``c`` is the
        coset of ``cross_section(self).representatives[c]``.
        """
        G = self.parent
        labels = np.full(G.order, -1, dtype=np.int64)
        reps = []
        for i in range(G.order):
            if labels[i] >= 0:
                continue
            g = G.element_at(i)
            c = len(reps)
            reps.append(g)
            for lam in self.elements:
                labels[G.index_of(g + lam)] = c
        self.__dict__["_canonical_reps"] = tuple(reps)
        return labels

    @cached_property
    def annihilator(self) -> "LatticeSubgroup":
        """The dual lattice L_perp, as a subgroup of the dual group."""
        dual = self.parent.dual()
        gens = self.generators if self.generators else ()
        orders = self.parent.orders
        L = lcm(*orders)
        cand = np.array([chi.coords for chi in dual.elements()], dtype=np.int64)
        keep = np.ones(len(cand), dtype=bool)
        for gen in gens:
            weights = np.array(
                [c * (L // n) for c, n in zip(gen.coords, orders)], dtype=np.int64
            )
            keep &= (cand @ weights) % L == 0
        chis = [chi for chi, k in zip(dual.elements(), keep) if k]
        return LatticeSubgroup(dual, _greedy_generators(chis), chis)


# The dual lattice is an ordinary subgroup of the dual group, so it reuses
# the same type; the alias documents intent at call sites.
DualLattice = LatticeSubgroup


def subgroup_from_generators(
    G: FiniteAbelianGroup, gens: Sequence[GroupElement]
) -> LatticeSubgroup:
    """Breadth-first closure of ``gens`` under addition.

    The empty generator list yields the trivial subgroup {0}.  Elements come
    out sorted, so equal subgroups compare equal regardless of how they were
    generated.
    """
    gens = tuple(gens)
    for g in gens:
        if not G.contains(g):
            raise StructureError("generator does not belong to the group")
    seen = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for gen in gens:
                y = x + gen
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return LatticeSubgroup(G, gens, sorted(seen))


def _greedy_generators(elements: Sequence[GroupElement]) -> tuple[GroupElement, ...]:
    """A small generating set: scan sorted elements, keep what closure misses."""
    if not elements:
        return ()
    zero_orders = elements[0].orders
    zero = GroupElement((0,) * len(zero_orders), zero_orders)
    closure = {zero}
    gens: list[GroupElement] = []
    for g in sorted(elements):
        if g in closure:
            continue
        gens.append(g)
        # extend closure by the cyclic powers of g against everything known
        new = list(closure)
        x = g
        while x not in closure:
            new.extend(h + x for h in closure)
            x = x + g
        closure.update(new)
    return tuple(gens)


def annihilator(lat: LatticeSubgroup) -> LatticeSubgroup:
    """Functional alias for ``lat.annihilator`` (cached on the lattice)."""
    return lat.annihilator


def cross_section(lat: LatticeSubgroup) -> CrossSection:
    """Canonical cross section: greedy scan of G in lexicographic order.

    A point is kept iff its coset is not yet represented, so the
    representative of each coset is its lexicographically first member.
    """
    lat.coset_labels  # builds and caches the representatives
    reps: tuple[GroupElement, ...] = lat.__dict__["_canonical_reps"]
    return CrossSection(reps, Fraction(lat.index) * lat.parent.weight_g)


def random_cross_section(lat: LatticeSubgroup, rng: np.random.Generator) -> CrossSection:
    """A uniformly random representative from each coset (for choice-independence tests)."""
    G = lat.parent
    labels = lat.coset_labels
    reps: list[GroupElement | None] = [None] * lat.index
    for c in range(lat.index):
        members = np.flatnonzero(labels == c)
        reps[c] = G.element_at(int(rng.choice(members)))
    return CrossSection(tuple(reps), Fraction(lat.index) * G.weight_g)


def lattice_sizes(lat: LatticeSubgroup) -> tuple[Fraction, Fraction]:
    """(|Q_L|, |Q_{L_perp}|) as exact rationals; their product is 1.

    |Q_L| = [G:L] * w and |Q_{L_perp}| = |L| * w_hat, so the product equals
    (|G| / |L|) * |L| * w * w_hat = 1 by the isometry normalization.
    """
    G = lat.parent
    return (
        Fraction(lat.index) * G.weight_g,
        Fraction(len(lat)) * G.weight_dual,
    )


def weil_check(lat: LatticeSubgroup, f: np.ndarray) -> tuple[complex, complex]:
    """Both sides of Weil's formula for ``f``: integral over G vs. quotient.

    lhs = w * sum_G f
    rhs = |Q_L| * (1/[G:L]) * sum_{q in Q_L} sum_{lam in L} f(q + lam)

    The inner sum is the periodization of f; the quotient G/L carries the
    normalized Haar measure, hence the 1/[G:L] factor.
    """
    G = lat.parent
    f = np.asarray(f, dtype=complex).ravel()
    if f.shape != (G.order,):
        raise StructureError("function table must cover the whole group")
    lhs = complex(float(G.weight_g) * f.sum())
    labels = lat.coset_labels
    periodized = np.bincount(labels, weights=f.real, minlength=lat.index) + 1j * np.bincount(
        labels, weights=f.imag, minlength=lat.index
    )
    rhs = complex(float(lattice_sizes(lat)[0]) * periodized.sum() / lat.index)
    return lhs, rhs


def shift_overlap_counts(lat: LatticeSubgroup, point_indices) -> np.ndarray:
    """|Omega intersect (Omega + lam)| as point counts, one per lattice element.

    ``point_indices`` are element indices of Omega in the parent group.  The
    count at position i is #{p in Omega : p - lam_i in Omega} with lam_i =
    ``lat.elements[i]``; multiply by the group weight for Haar measure.
    """
    G = lat.parent
    pts = np.asarray(sorted(point_indices), dtype=np.int64)
    if pts.size == 0:
        return np.zeros(len(lat), dtype=np.int64)
    orders = np.array(G.orders, dtype=np.int64)
    strides = np.array(G._strides, dtype=np.int64)
    coords = np.array([G.element_at(int(i)).coords for i in pts], dtype=np.int64)
    lam = np.array([l.coords for l in lat.elements], dtype=np.int64)
    shifted = (coords[None, :, :] + lam[:, None, :]) % orders
    idx = shifted @ strides
    return np.isin(idx, pts).sum(axis=1)


def all_subgroups(G: FiniteAbelianGroup) -> list[LatticeSubgroup]:
    """Every subgroup of G, found by closing known subgroups with one new element.

    Exhaustive and intended for desk scale (|G| up to a few hundred).  The
    result is sorted by size then element list, so it is deterministic.
    """
    zero = G.zero
    trivial = frozenset({zero})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        fresh = []
        for H in frontier:
            for g in G.elements():
                if g in H:
                    continue
                K = set(H)
                x = g
                while x not in H:
                    K.update(h + x for h in H)
                    x = x + g
                K = frozenset(K)
                if K not in seen:
                    seen.add(K)
                    fresh.append(K)
        frontier = fresh
    subgroups = []
    for members in seen:
        elems = sorted(members)
        subgroups.append(LatticeSubgroup(G, _greedy_generators(elems), elems))
    subgroups.sort(key=lambda s: (len(s), tuple(e.coords for e in s.elements)))
    return subgroups
