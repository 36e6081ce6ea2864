"""Exponential systems on a measured set: frame bounds, bases, witnesses.

The system E consists of the annihilator characters restricted to Omega.
Its frame operator on L2(Omega) has entries

    S[g, h] = w * sum over the annihilator of e(g) * conj(e(h)),

and the sharp frame bounds are the extreme eigenvalues of S: in finite
dimension those are exactly the optimal constants of the frame inequality.
When Omega sub-tiles, S is |Q_L| times the identity (a tight frame); when
it does not, S is rank deficient and an explicit nonzero function on Omega
orthogonal to every system vector exists (the obstruction witness).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .eigen import jacobi_eigh
from .groups import (
    GroupElement,
    PreconditionError,
    character_matrix,
    character_table,
)
from .lattices import LatticeSubgroup, cross_section
from .tiling import MeasuredSet, check_subtiling

__all__ = [
    "ExponentialSystem",
    "FrameReport",
    "ModulationWindow",
    "ObstructionWitness",
    "exponential_system",
    "frame_operator",
    "frame_bounds",
    "check_orthogonal_basis",
    "modulated_frame_report",
    "obstruction_witness",
]


@dataclass(frozen=True, eq=False)
class ExponentialSystem:
    """Annihilator characters restricted to a measured set.

    ``vectors[i, j] = e_i(g_j)`` with rows indexed like the annihilator's
    element list and columns like the domain's points.  Every entry has unit
    modulus and the row count equals [G : L].
    """

    domain: MeasuredSet
    indices: LatticeSubgroup
    vectors: np.ndarray

    @property
    def tight_target(self) -> Fraction:
        """|Q_L| = [G:L] * w; the number of system vectors times the weight."""
        return Fraction(len(self.indices)) * self.domain.parent.weight_g


def exponential_system(lat: LatticeSubgroup, omega: MeasuredSet) -> ExponentialSystem:
    """Restrict the annihilator characters of ``lat`` to ``omega``."""
    G = lat.parent
    ann = lat.annihilator
    if G.order <= 1024:
        table = character_table(G)
        rows = [G.dual().index_of(chi) for chi in ann.elements]
        cols = omega.point_indices()
        vectors = table[np.ix_(rows, cols)]
    else:  # avoid materializing the full |G|^2 table
        vectors = character_matrix(list(ann.elements), list(omega.points))
    return ExponentialSystem(omega, ann, vectors)


def frame_operator(system: ExponentialSystem) -> np.ndarray:
    """The Hermitian positive semidefinite frame operator on L2(Omega)."""
    if system.domain.is_empty:
        raise PreconditionError("frame operator needs a nonempty domain")
    w = float(system.domain.parent.weight_g)
    e = system.vectors
    return w * (e.conj().T @ e)


@dataclass(frozen=True, eq=False)
class FrameReport:
    """Sharp frame bounds and tightness verdict from the operator spectrum."""

    lower_bound: float
    upper_bound: float
    is_frame: bool
    is_tight: bool
    tight_constant: float
    spectrum: np.ndarray

    def to_dict(self) -> dict:
        return {
            "A": self.lower_bound,
            "B": self.upper_bound,
            "frame": self.is_frame,
            "tight": self.is_tight,
            "constant": self.tight_constant,
            "spectrum": [float(x) for x in self.spectrum],
        }


def frame_bounds(
    S: np.ndarray, frame_tol: float = 1e-9, tight_tol: float = 1e-9
) -> FrameReport:
    """Sharp bounds as the extreme eigenvalues of the frame operator.

    ``is_frame`` requires the smallest eigenvalue to clear ``frame_tol``
    (separating exact rank deficiency from rounding); ``is_tight`` means the
    spectrum's spread stays below ``tight_tol``.
    """
    dec = jacobi_eigh(S)
    spectrum = dec.eigenvalues
    a, b = float(spectrum[0]), float(spectrum[-1])
    return FrameReport(
        lower_bound=a,
        upper_bound=b,
        is_frame=a > frame_tol,
        is_tight=(b - a) < tight_tol,
        tight_constant=(a + b) / 2.0,
        spectrum=spectrum,
    )


def check_orthogonal_basis(system: ExponentialSystem, tol: float = 1e-9) -> bool:
    """Orthogonal basis test: diagonal Gram matrix plus dimension match.

    The Gram entries are <e_i, e_j> on L2(Omega); diagonal entries always
    equal |Omega|, so the test is vanishing off-diagonal entries together
    with as many vectors as points (completeness in finite dimension).
    """
    if system.domain.is_empty:
        return False
    if len(system.indices) != len(system.domain):
        return False
    w = float(system.domain.parent.weight_g)
    e = system.vectors
    gram = w * (e @ e.conj().T)
    off = gram - np.diag(np.diag(gram))
    return float(np.max(np.abs(off))) < tol


@dataclass(frozen=True, eq=False)
class ModulationWindow:
    """A window on Omega with its essential bounds 0 < A <= |psi|^2 <= B.

    On a finite set "essential" inf and sup are plain min and max.  Windows
    touching zero are rejected: they violate the modulation hypothesis.
    """

    values: np.ndarray
    lower: float
    upper: float

    @classmethod
    def from_values(cls, values) -> "ModulationWindow":
        vals = np.asarray(values, dtype=complex).ravel()
        if vals.size == 0:
            raise PreconditionError("window must be defined on a nonempty set")
        sq = np.abs(vals) ** 2
        lower, upper = float(sq.min()), float(sq.max())
        if not (0.0 < lower <= upper < np.inf):
            raise PreconditionError("window must satisfy 0 < min|psi|^2 <= max|psi|^2 < inf")
        return cls(vals, lower, upper)


def modulated_frame_report(
    system: ExponentialSystem,
    window: ModulationWindow,
    frame_tol: float = 1e-9,
    tight_tol: float = 1e-9,
) -> FrameReport:
    """Frame report for the modulates {psi * e : e in the system}.

    The modulated operator is diag(psi) S diag(psi)*.  When the exponential
    system is itself a (then tight) frame, this operator must equal
    |Q_L| * diag(|psi|^2) and the sharp bounds must land inside
    [A |Q_L|, B |Q_L|]; both consequences are verified as cross-checks.
    """
    if len(window.values) != len(system.domain):
        raise PreconditionError("window length must match the domain size")
    s = frame_operator(system)
    psi = window.values
    s_mod = psi[:, None] * s * psi.conj()[None, :]
    report = frame_bounds(s_mod, frame_tol=frame_tol, tight_tol=tight_tol)

    if report.is_frame:
        target = float(system.tight_target)
        diag_form = target * np.diag(np.abs(psi) ** 2)
        residual = float(np.max(np.abs(s_mod - diag_form)))
        slack = tight_tol * max(1.0, target * window.upper)
        in_sandwich = (
            report.lower_bound >= window.lower * target - slack
            and report.upper_bound <= window.upper * target + slack
        )
        if residual > slack or not in_sandwich:
            raise RuntimeError(
                "modulated frame cross-checks failed: residual=%.3e bounds=(%.6g, %.6g)"
                % (residual, report.lower_bound, report.upper_bound)
            )
    return report


@dataclass(frozen=True, eq=False)
class ObstructionWitness:
    """A nonzero function on Omega orthogonal to the whole exponential system.

    Built from the first (in lexicographic lattice order) pair (lam1, lam2),
    lam2 != 0, for which (Q_L + lam1) and Omega and (Omega + lam2) share a
    point: the witness is +1 on that triple intersection and -1 on its
    shift back by lam2.
    """

    table: np.ndarray
    lam1: GroupElement
    lam2: GroupElement
    positive_part: tuple[GroupElement, ...]
    negative_part: tuple[GroupElement, ...]
    max_pairing: float


def obstruction_witness(lat: LatticeSubgroup, omega: MeasuredSet) -> ObstructionWitness:
    """Witness that the exponential system fails to be a frame on Omega.

    Requires Omega to not be sub-tiling; the returned table (aligned with
    ``omega.points``) is nonzero and its pairings with every system vector
    vanish, which is verified to 1e-12 before returning.
    """
    verdict = check_subtiling(lat, omega)
    if verdict.is_subtiling:
        raise PreconditionError("obstruction witness requires a non-sub-tiling set")

    G = lat.parent
    pts = omega.point_indices()
    pt_set = set(pts)
    pos_in_omega = {idx: i for i, idx in enumerate(pts)}

    # cache Omega ^ (Omega + lam2) per shift; each is a set of element indices
    overlap_cache: dict[GroupElement, set[int]] = {}

    def overlap(lam2: GroupElement) -> set[int]:
        got = overlap_cache.get(lam2)
        if got is None:
            got = {
                i for i in pts if G.index_of(G.element_at(i) - lam2) in pt_set
            }
            overlap_cache[lam2] = got
        return got

    q_set_base = [G.index_of(q) for q in cross_section(lat).representatives]
    for lam1 in lat.elements:
        q_shift = {G.index_of(G.element_at(i) + lam1) for i in q_set_base}
        for lam2 in lat.elements:
            if lam2.is_zero():
                continue
            hits = overlap(lam2) & q_shift
            if not hits:
                continue
            pos = sorted(hits)
            neg = sorted(G.index_of(G.element_at(i) - lam2) for i in pos)
            table = np.zeros(len(pts), dtype=complex)
            for i in pos:
                table[pos_in_omega[i]] += 1.0
            for i in neg:
                table[pos_in_omega[i]] -= 1.0
            system = exponential_system(lat, omega)
            w = float(G.weight_g)
            pairings = w * (system.vectors.conj() @ table)
            worst = float(np.max(np.abs(pairings)))
            if not np.any(table) or worst > 1e-12:
                raise RuntimeError(
                    "constructed witness failed verification (max pairing %.3e)" % worst
                )
            return ObstructionWitness(
                table=table,
                lam1=lam1,
                lam2=lam2,
                positive_part=tuple(G.element_at(i) for i in pos),
                negative_part=tuple(G.element_at(i) for i in neg),
                max_pairing=worst,
            )
    raise RuntimeError("no witness found for a non-sub-tiling set")  # unreachable
