"""Group Fourier transform, bracket map, periodization and power spectrum.

The transform of a table f on G is

    F(chi) = w * sum_g f(g) * conj(<chi, g>),

a table over the dual group (same lexicographic index space).  With the
isometry normalization ``w * w_hat * |G| = 1`` the transform preserves the
L2 pairing, which the test suite checks as a property.

Periodic objects on quotients are always handled through a cross section:
a function on G/L is a vector indexed like ``cross_section(L).representatives``
and its Fourier coefficients are taken against the normalized counting
measure on those representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import FiniteAbelianGroup, GroupElement, StructureError, character_table
from .lattices import (
    CrossSection,
    LatticeSubgroup,
    cross_section,
    lattice_sizes,
    shift_overlap_counts,
)

__all__ = [
    "fourier_transform",
    "BracketFunction",
    "bracket",
    "bracket_reproducing_deviation",
    "translate_inner_products",
    "periodized_power_spectrum",
    "periodization",
    "CoefficientIdentities",
    "coefficient_identities",
]

# Above this order the cached character table would be large; fall back to
# the per-coordinate fast transform, which computes the same sums.
_DIRECT_LIMIT = 1024


def _as_table(G: FiniteAbelianGroup, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex).ravel()
    if f.shape != (G.order,):
        raise StructureError(f"function table must have length {G.order}")
    return f


def fourier_transform(G: FiniteAbelianGroup, f, method: str = "auto") -> np.ndarray:
    """Fourier transform of a table on G, as a table over the dual group.

    ``method="direct"`` evaluates the defining double sum through the cached
    character table; ``method="fft"`` factors it per coordinate with numpy's
    FFT (identical values up to rounding).  ``"auto"`` picks direct up to
    |G| = 1024 and the factored path beyond.
    """
    f = _as_table(G, f)
    if method == "auto":
        method = "direct" if G.order <= _DIRECT_LIMIT else "fft"
    w = float(G.weight_g)
    if method == "direct":
        return w * (character_table(G).conj() @ f)
    if method == "fft":
        arr = f.reshape(G.orders)
        return w * np.fft.fftn(arr).ravel()
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True, eq=False)
class BracketFunction:
    """Bracket of two tables against the translation action of a lattice.

    ``values[j]`` is the bracket at ``base.representatives[j]``, where
    ``base`` is the canonical cross section of the annihilator inside the
    dual group:

        [phi, psi](chi) = |Q_{L_perp}| * sum_{t in L_perp} F(phi)(chi + t)
                                                 * conj(F(psi)(chi + t))
    """

    base: CrossSection
    values: np.ndarray

    def table_on_dual(self, lat: LatticeSubgroup) -> np.ndarray:
        """Extend periodically to a full table over the dual group."""
        return self.values[lat.annihilator.coset_labels]


def _coset_sums(labels: np.ndarray, table: np.ndarray, count: int) -> np.ndarray:
    if np.iscomplexobj(table):
        return np.bincount(labels, weights=table.real, minlength=count) + 1j * np.bincount(
            labels, weights=table.imag, minlength=count
        )
    return np.bincount(labels, weights=table, minlength=count)


def bracket(lat: LatticeSubgroup, phi, psi) -> BracketFunction:
    """Evaluate the translation bracket of phi and psi on a dual cross section."""
    G = lat.parent
    ann = lat.annihilator
    fphi = fourier_transform(G, phi)
    fpsi = fourier_transform(G, psi)
    prod = fphi * fpsi.conj()
    sums = _coset_sums(ann.coset_labels, prod, ann.index)
    size_q_perp = float(lattice_sizes(lat)[1])
    return BracketFunction(cross_section(ann), size_q_perp * sums)


def translate_inner_products(lat: LatticeSubgroup, phi, psi) -> np.ndarray:
    """<phi, T_lam psi>_{L2(G)} for every lattice element, in element order.

    Computed as a group correlation: the value at lam is
    w * sum_g phi(g) * conj(psi(g - lam)), evaluated for all shifts at once
    through the convolution theorem.
    """
    G = lat.parent
    phi = _as_table(G, phi).reshape(G.orders)
    psi = _as_table(G, psi).reshape(G.orders)
    corr = np.fft.ifftn(np.fft.fftn(phi) * np.fft.fftn(psi).conj()).ravel()
    idx = [G.index_of(lam) for lam in lat.elements]
    return float(G.weight_g) * corr[idx]


def bracket_reproducing_deviation(lat: LatticeSubgroup, phi, psi) -> float:
    """Max deviation in the bracket's reproducing identity over the lattice.

    For every lam in L the bracket must reproduce the translate inner
    product as a Fourier coefficient on the quotient of the dual group:

        <phi, T_lam psi> = (1/[G_hat : L_perp]) * sum_{chi in Q_{L_perp}}
                              [phi, psi](chi) * <chi, lam>

    The plus sign in the exponential follows from the conventions here:
    with T_lam psi = psi(. - lam) and the transform against conj<chi, g>,
    the transform intertwines translation with modulation by e_{-lam}, and
    the conjugation inside the inner product flips it back to e_{+lam}.
    """
    br = bracket(lat, phi, psi)
    lhs = translate_inner_products(lat, phi, psi)
    reps = br.base.representatives
    pair = _pairing_matrix(reps, lat.elements)
    rhs = (br.values @ pair) / len(reps)
    return float(np.max(np.abs(lhs - rhs)))


def _pairing_matrix(
    chis: Sequence[GroupElement], elements: Sequence[GroupElement]
) -> np.ndarray:
    from .groups import character_matrix

    return character_matrix(list(chis), list(elements))


def periodized_power_spectrum(lat: LatticeSubgroup, omega) -> np.ndarray:
    """H(chi) = sum over the annihilator of |F(1_Omega)(chi + t)|^2, for all chi.

    Accepts a measured set or a raw table; the result is a real table over
    the dual group, constant on cosets of the annihilator by construction.
    """
    G = lat.parent
    table = omega.indicator() if hasattr(omega, "indicator") else np.asarray(omega)
    power = np.abs(fourier_transform(G, table)) ** 2
    ann = lat.annihilator
    sums = _coset_sums(ann.coset_labels, power, ann.index)
    return sums[ann.coset_labels].real


def periodization(lat: LatticeSubgroup, omega) -> np.ndarray:
    """Coset hit counts f(q) = sum_{lam in L} 1_Omega(q + lam), over Q_L.

    Integer-valued, indexed like ``cross_section(lat).representatives``.
    The set sub-tiles iff all counts are <= 1 and tiles iff all are == 1.
    """
    G = lat.parent
    table = omega.indicator() if hasattr(omega, "indicator") else np.asarray(omega)
    table = np.asarray(table).real
    counts = np.bincount(lat.coset_labels, weights=table, minlength=lat.index)
    return np.rint(counts).astype(np.int64)


@dataclass(frozen=True, eq=False)
class CoefficientIdentities:
    """Both sides of the two Fourier-coefficient identities, with deviations.

    Power-spectrum side (per lattice element lam):
        hat_H(lam) = |Omega intersect (Omega + lam)| / |Q_{L_perp}|
    Periodization side (per annihilator element t):
        hat_f(t) = F(1_Omega)(t) / |Q_L|
    """

    hat_h: np.ndarray
    overlap_side: np.ndarray
    hat_f: np.ndarray
    spectrum_side: np.ndarray
    eq_h_max_dev: float
    eq_f_max_dev: float

    @property
    def max_dev(self) -> float:
        return max(self.eq_h_max_dev, self.eq_f_max_dev)


def coefficient_identities(lat: LatticeSubgroup, omega) -> CoefficientIdentities:
    """Check the coefficient identities tying H and the periodization to overlaps."""
    G = lat.parent
    ann = lat.annihilator
    size_q, size_q_perp = (float(s) for s in lattice_sizes(lat))
    table = omega.indicator() if hasattr(omega, "indicator") else np.asarray(omega)

    # hat_H over the lattice: coefficients of H on the dual quotient.
    h_vals = periodized_power_spectrum(lat, table)
    dual_reps = cross_section(ann).representatives
    h_on_reps = h_vals[[G.dual().index_of(r) for r in dual_reps]]
    pair = _pairing_matrix(dual_reps, lat.elements)
    hat_h = (h_on_reps @ pair.conj()) / len(dual_reps)

    w = float(G.weight_g)
    points = np.flatnonzero(np.rint(np.asarray(table).real).astype(np.int64))
    overlap_side = w * shift_overlap_counts(lat, points) / size_q_perp

    # hat_f over the annihilator: coefficients of the periodization on Q_L.
    f_counts = periodization(lat, table).astype(float)
    q_reps = cross_section(lat).representatives
    pair_f = _pairing_matrix(ann.elements, q_reps)
    hat_f = (pair_f.conj() @ f_counts) / len(q_reps)
    ft = fourier_transform(G, table)
    spectrum_side = ft[[G.dual().index_of(t) for t in ann.elements]] / size_q

    return CoefficientIdentities(
        hat_h=hat_h,
        overlap_side=overlap_side,
        hat_f=hat_f,
        spectrum_side=spectrum_side,
        eq_h_max_dev=float(np.max(np.abs(hat_h - overlap_side))),
        eq_f_max_dev=float(np.max(np.abs(hat_f - spectrum_side))),
    )
