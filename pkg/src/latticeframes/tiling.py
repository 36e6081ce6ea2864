"""Sub-tiling and tiling predicates, the spectral test, and enumeration.

A measured set Omega sub-tiles along a lattice L when its L-translates are
pairwise disjoint, i.e. every nonzero lattice shift has empty overlap with
Omega; it tiles when the translates also cover the group.  Overlaps are
point counts scaled by the Haar weight, so condition checks on this side
are exact rational arithmetic.  The spectral test (constancy of the
periodized power spectrum) is the only float-tolerance predicate here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .groups import FiniteAbelianGroup, GroupElement, PreconditionError, StructureError
from .lattices import LatticeSubgroup, lattice_sizes, shift_overlap_counts
from .fourier import periodization, periodized_power_spectrum

__all__ = [
    "MeasuredSet",
    "TilingVerdict",
    "measured_set",
    "measured_set_from_indices",
    "check_subtiling",
    "check_condition2",
    "check_translate_orthonormality",
    "enumerate_subtilings",
    "extend_to_tiling",
]


@dataclass(frozen=True)
class MeasuredSet:
    """A finite subset of a group together with its Haar measure.

    ``points`` are distinct, reduced and sorted; ``measure`` is the exact
    rational #points * w.  Construction allows the empty set (measure 0),
    but the predicates that assume positive measure reject it.
    """

    parent: FiniteAbelianGroup
    points: tuple[GroupElement, ...]
    measure: Fraction

    @property
    def is_empty(self) -> bool:
        return not self.points

    def point_indices(self) -> list[int]:
        return [self.parent.index_of(p) for p in self.points]

    def indicator(self) -> np.ndarray:
        table = np.zeros(self.parent.order)
        table[self.point_indices()] = 1.0
        return table

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"MeasuredSet({{{','.join(map(str, self.points))}}}, |.|={self.measure})"


def measured_set(G: FiniteAbelianGroup, points: Iterable[GroupElement]) -> MeasuredSet:
    pts = sorted(set(points))
    for p in pts:
        if not G.contains(p):
            raise StructureError("point does not belong to the group")
    return MeasuredSet(G, tuple(pts), Fraction(len(pts)) * G.weight_g)


def measured_set_from_indices(G: FiniteAbelianGroup, indices: Iterable[int]) -> MeasuredSet:
    return measured_set(G, (G.element_at(int(i)) for i in indices))


@dataclass(frozen=True)
class TilingVerdict:
    """Outcome of the overlap test, with the full list of violations.

    ``violating_pairs`` holds (lattice element, overlap measure) for every
    nonzero shift with positive overlap; sub-tiling means the list is empty,
    tiling additionally requires the translates to cover the group.
    """

    is_subtiling: bool
    is_tiling: bool
    violating_pairs: tuple[tuple[GroupElement, Fraction], ...]


def _require_positive(omega: MeasuredSet) -> None:
    if omega.is_empty:
        raise PreconditionError("the measured set must have positive measure")


def check_subtiling(lat: LatticeSubgroup, omega: MeasuredSet) -> TilingVerdict:
    """Exact overlap test: |Omega ^ (Omega + lam)| for every nonzero lam.

    Also cross-checks the equivalent formulation through the periodization
    (all coset hit counts <= 1); the two are both exact, so a mismatch is an
    internal error, never a mathematical outcome.
    """
    _require_positive(omega)
    G = lat.parent
    counts = shift_overlap_counts(lat, omega.point_indices())
    violating = tuple(
        (lam, Fraction(int(c)) * G.weight_g)
        for lam, c in zip(lat.elements, counts)
        if c and not lam.is_zero()
    )
    is_subtiling = not violating
    is_tiling = is_subtiling and len(omega) == lat.index

    hits = periodization(lat, omega)
    if bool(hits.max() <= 1) != is_subtiling or bool((hits == 1).all()) != is_tiling:
        raise RuntimeError("periodization cross-check disagrees with overlap test")
    return TilingVerdict(is_subtiling, is_tiling, violating)


def check_condition2(
    lat: LatticeSubgroup, omega: MeasuredSet, tol: float = 1e-9
) -> tuple[bool, Fraction, float]:
    """Constancy of the periodized power spectrum at the level |Q_L| * |Omega|.

    Returns (is_constant, target, max_deviation) where the target is exact
    and the deviation is the sup-norm distance of H from it.
    """
    _require_positive(omega)
    target = lattice_sizes(lat)[0] * omega.measure
    h = periodized_power_spectrum(lat, omega)
    deviation = float(np.max(np.abs(h - float(target))))
    return deviation < tol, target, deviation


def check_translate_orthonormality(
    lat: LatticeSubgroup, omega: MeasuredSet, tol: float = 1e-9
) -> bool:
    """Orthonormality of the normalized indicator's lattice translates.

    Decided two ways: exactly, through the Gram entries
    <1_Omega, 1_Omega(. - lam)> = |Omega ^ (Omega + lam)|, and spectrally,
    through the constancy of the periodized power spectrum of the normalized
    indicator at level |Q_L|.  The two routes must agree; a mismatch raises.
    """
    _require_positive(omega)
    counts = shift_overlap_counts(lat, omega.point_indices())
    off_diag = counts[[not lam.is_zero() for lam in lat.elements]]
    gram_route = not off_diag.any() if len(lat) > 1 else True

    phi = omega.indicator() / np.sqrt(float(omega.measure))
    h = periodized_power_spectrum(lat, phi)
    spectral_dev = float(np.max(np.abs(h - float(lattice_sizes(lat)[0]))))
    spectral_route = spectral_dev < tol

    if gram_route != spectral_route:
        raise RuntimeError(
            "orthonormality routes disagree: gram=%s spectral dev=%.3e"
            % (gram_route, spectral_dev)
        )
    return gram_route


def enumerate_subtilings(lat: LatticeSubgroup, k: int) -> list[MeasuredSet]:
    """All size-k subsets with at most one point per coset, in lexicographic order.

    There are C([G:L], k) * |L|^k of them: choose the cosets, then one point
    inside each.  k = 0 yields the single empty (zero-measure) set.
    """
    if not 0 <= k <= lat.index:
        raise PreconditionError(f"k must lie in [0, {lat.index}]")
    G = lat.parent
    labels = lat.coset_labels
    coset_members: list[list[int]] = [[] for _ in range(lat.index)]
    for i, c in enumerate(labels):
        coset_members[c].append(i)

    results = []
    for chosen in combinations(range(lat.index), k):
        for pick in product(*(coset_members[c] for c in chosen)):
            results.append(measured_set_from_indices(G, pick))
    results.sort(key=lambda s: tuple(p.coords for p in s.points))
    return results


def extend_to_tiling(lat: LatticeSubgroup, omega: MeasuredSet) -> MeasuredSet:
    """Extend a sub-tiling set to a tiling set by filling missed cosets greedily.

    Each coset not hit by Omega contributes its lexicographically first
    member.  Raises if Omega is not sub-tiling (extension would overlap).
    """
    if not check_subtiling(lat, omega).is_subtiling:
        raise PreconditionError("only sub-tiling sets extend to tilings")
    labels = lat.coset_labels
    hit = set(labels[omega.point_indices()].tolist())
    extra = []
    for i in range(lat.parent.order):
        c = int(labels[i])
        if c not in hit:
            hit.add(c)
            extra.append(lat.parent.element_at(i))
    return measured_set(lat.parent, list(omega.points) + extra)
