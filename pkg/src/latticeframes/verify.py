"""End-to-end equivalence verification for a (group, lattice, set) triple.

``verify_triple`` evaluates the five conditions independently:

  1. sub-tiling (exact overlap counts),
  2. constant periodized power spectrum at level |Q_L| * |Omega|,
  3. orthonormal lattice translates of the normalized indicator,
  4. the annihilator exponentials form a frame for L2(Omega),
  5. the modulates of a window form a frame for L2(Omega),

together with the supporting identities (Weil, Plancherel isometry, bracket
reproduction, coefficient identities, size product).  The five booleans
must agree; disagreement raises, because it signals an implementation bug
and never a mathematical outcome.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fourier import (
    bracket,
    bracket_reproducing_deviation,
    coefficient_identities,
    fourier_transform,
    periodized_power_spectrum,
    translate_inner_products,
)
from .frames import (
    FrameReport,
    ModulationWindow,
    ObstructionWitness,
    check_orthogonal_basis,
    exponential_system,
    frame_bounds,
    frame_operator,
    modulated_frame_report,
    obstruction_witness,
)
from .groups import FiniteAbelianGroup, PreconditionError
from .lattices import (
    LatticeSubgroup,
    cross_section,
    lattice_sizes,
    subgroup_from_generators,
    weil_check,
)
from .tiling import (
    MeasuredSet,
    check_condition2,
    check_subtiling,
    check_translate_orthonormality,
    measured_set_from_indices,
)

__all__ = [
    "Tolerances",
    "IdentityChecks",
    "EquivalenceReport",
    "InconsistentVerdictError",
    "verify_triple",
    "default_window",
    "run_identity_checks",
    "FugledeReport",
    "fuglede_suite",
    "random_group",
    "random_subgroup",
    "random_omega",
]


@dataclass(frozen=True)
class Tolerances:
    """Float tolerances for the spectral predicates; structure stays exact."""

    spectral: float = 1e-9
    frame: float = 1e-9
    tight: float = 1e-9
    identity: float = 1e-10


class InconsistentVerdictError(RuntimeError):
    """The condition verdicts (or the tight constant) disagree; carries the report."""

    def __init__(self, report: "EquivalenceReport") -> None:
        self.report = report
        names = ("subtiling", "spectrum", "translates", "frame", "modulates")
        verdicts = ", ".join(
            f"{n}={v}" for n, v in zip(names, report.condition_list())
        )
        detail = f"condition verdicts disagree: {verdicts}"
        if report.consistent and report.tight_constant_ok is False:
            detail = (
                "tight constant mismatch: observed "
                f"{report.tight_constant_observed} vs |Q_L| = "
                f"{report.expected_tight_constant}"
            )
        super().__init__(detail)


@dataclass(frozen=True, eq=False)
class IdentityChecks:
    """Max deviations of the supporting identities on one triple."""

    weil_max_dev: float
    plancherel_max_dev: float
    bracket_max_dev: float
    orthonormality_bracket_agree: bool
    coeff_h_max_dev: float
    coeff_f_max_dev: float
    size_product_is_one: bool
    trials: int

    @property
    def max_dev(self) -> float:
        return max(
            self.weil_max_dev,
            self.plancherel_max_dev,
            self.bracket_max_dev,
            self.coeff_h_max_dev,
            self.coeff_f_max_dev,
        )

    def to_dict(self) -> dict:
        return {
            "weil_max_dev": self.weil_max_dev,
            "plancherel_max_dev": self.plancherel_max_dev,
            "bracket_max_dev": self.bracket_max_dev,
            "orthonormality_bracket_agree": self.orthonormality_bracket_agree,
            "coeff_h_max_dev": self.coeff_h_max_dev,
            "coeff_f_max_dev": self.coeff_f_max_dev,
            "size_product_is_one": self.size_product_is_one,
            "trials": self.trials,
        }


def _random_table(G: FiniteAbelianGroup, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=G.order) + 1j * rng.normal(size=G.order)


def _transversal_probe(
    lat: LatticeSubgroup, rng: np.random.Generator
) -> np.ndarray:
    """Random unit-norm function supported on one point per coset.

    Its lattice translates have disjoint supports, hence are orthonormal;
    the bracket of the probe with itself must be identically one.
    """
    G = lat.parent
    labels = lat.coset_labels
    phi = np.zeros(G.order, dtype=complex)
    for c in range(lat.index):
        members = np.flatnonzero(labels == c)
        phi[int(rng.choice(members))] = rng.normal() + 1j * rng.normal()
    return phi / np.sqrt(G.norm_sq(phi))


def _orthonormal_vs_bracket(
    lat: LatticeSubgroup, phi: np.ndarray, tol: float
) -> tuple[bool, bool]:
    """Evaluate both sides of the orthonormality criterion for one function."""
    ips = translate_inner_products(lat, phi, phi)
    expected = np.zeros(len(lat.elements), dtype=complex)
    expected[[lam.is_zero() for lam in lat.elements]] = 1.0
    orthonormal = float(np.max(np.abs(ips - expected))) < tol
    br = bracket(lat, phi, phi)
    bracket_const = float(np.max(np.abs(br.values - 1.0))) < tol
    return orthonormal, bracket_const


def run_identity_checks(
    lat: LatticeSubgroup,
    omega: MeasuredSet,
    rng: np.random.Generator,
    trials: int = 1,
    tol: float = 1e-9,
) -> IdentityChecks:
    """Exercise the supporting identities with random inputs on one fixture."""
    G = lat.parent
    weil_dev = plancherel_dev = bracket_dev = 0.0
    coeff_h = coeff_f = 0.0
    agree = True
    for _ in range(trials):
        f = _random_table(G, rng)
        h = _random_table(G, rng)
        lhs, rhs = weil_check(lat, f)
        weil_dev = max(weil_dev, abs(lhs - rhs))
        plancherel_dev = max(
            plancherel_dev,
            abs(
                G.dual().inner_product(fourier_transform(G, f), fourier_transform(G, h))
                - G.inner_product(f, h)
            ),
        )
        bracket_dev = max(bracket_dev, bracket_reproducing_deviation(lat, f, h))

        ortho, br_const = _orthonormal_vs_bracket(lat, f, tol)
        agree &= ortho == br_const
        probe = _transversal_probe(lat, rng)
        ortho, br_const = _orthonormal_vs_bracket(lat, probe, tol)
        agree &= ortho and br_const

        ci = coefficient_identities(lat, omega)
        coeff_h = max(coeff_h, ci.eq_h_max_dev)
        coeff_f = max(coeff_f, ci.eq_f_max_dev)

    sizes = lattice_sizes(lat)
    return IdentityChecks(
        weil_max_dev=float(weil_dev),
        plancherel_max_dev=float(plancherel_dev),
        bracket_max_dev=float(bracket_dev),
        orthonormality_bracket_agree=bool(agree),
        coeff_h_max_dev=float(coeff_h),
        coeff_f_max_dev=float(coeff_f),
        size_product_is_one=sizes[0] * sizes[1] == 1,
        trials=trials,
    )


def default_window(omega: MeasuredSet) -> ModulationWindow:
    """The default modulation window 1 + rank/#Omega over the sorted points.

    Strictly increasing, so its essential bounds are genuinely apart and the
    modulated condition does not degenerate to the plain exponential one.
    """
    n = len(omega)
    if n == 0:
        raise PreconditionError("cannot build a window on an empty set")
    return ModulationWindow.from_values(1.0 + np.arange(n) / n)


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(eq=False)
class EquivalenceReport:
    """Verdicts, evidence and identity results for one verified triple."""

    group_orders: tuple[int, ...]
    weight_g: Fraction
    weight_dual: Fraction
    lattice_generators: tuple[tuple[int, ...], ...]
    lattice_elements: tuple[tuple[int, ...], ...]
    annihilator_elements: tuple[tuple[int, ...], ...]
    cross_section_points: tuple[tuple[int, ...], ...]
    lattice_sizes_pair: tuple[Fraction, Fraction]
    lattice_index: int
    omega_points: tuple[tuple[int, ...], ...]
    omega_measure: Fraction
    condition1_subtiling: bool
    condition2_spectrum: bool
    condition3_translates: bool
    condition4_frame: bool
    condition5_modulates: bool
    consistent: bool
    is_tiling: bool
    violating_pairs: tuple[tuple[tuple[int, ...], Fraction], ...]
    h_table: tuple[float, ...]
    h_target: Fraction
    h_max_deviation: float
    expected_tight_constant: Fraction
    tight_constant_observed: float | None
    tight_constant_ok: bool | None
    exponential_frame: FrameReport
    modulated_frame: FrameReport
    identities: IdentityChecks
    witness: ObstructionWitness | None
    seed: int | None

    def condition_list(self) -> list[bool]:
        return [
            self.condition1_subtiling,
            self.condition2_spectrum,
            self.condition3_translates,
            self.condition4_frame,
            self.condition5_modulates,
        ]

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "lam1": list(self.witness.lam1.coords),
                "lam2": list(self.witness.lam2.coords),
                "positive_part": [list(p.coords) for p in self.witness.positive_part],
                "negative_part": [list(p.coords) for p in self.witness.negative_part],
                "table": [[float(v.real), float(v.imag)] for v in self.witness.table],
                "max_pairing": self.witness.max_pairing,
            }
        return {
            "group": {
                "orders": list(self.group_orders),
                "weight_g": _fraction_str(self.weight_g),
                "weight_dual": _fraction_str(self.weight_dual),
            },
            "lattice": {
                "generators": [list(g) for g in self.lattice_generators],
                "elements": [list(e) for e in self.lattice_elements],
                "annihilator": [list(e) for e in self.annihilator_elements],
                "cross_section": [list(e) for e in self.cross_section_points],
                "sizes": [_fraction_str(s) for s in self.lattice_sizes_pair],
                "index": self.lattice_index,
            },
            "omega": {
                "points": [list(p) for p in self.omega_points],
                "measure": _fraction_str(self.omega_measure),
            },
            "conditions": {
                "subtiling": self.condition1_subtiling,
                "constant_power_spectrum": self.condition2_spectrum,
                "orthonormal_translates": self.condition3_translates,
                "exponential_frame": self.condition4_frame,
                "modulated_frame": self.condition5_modulates,
            },
            "consistent": self.consistent,
            "is_tiling": self.is_tiling,
            "violating_pairs": [
                {"shift": list(lam), "overlap": _fraction_str(m)}
                for lam, m in self.violating_pairs
            ],
            "power_spectrum": {
                "table": list(self.h_table),
                "target": _fraction_str(self.h_target),
                "max_deviation": self.h_max_deviation,
            },
            "tight_constant": {
                "expected": _fraction_str(self.expected_tight_constant),
                "observed": self.tight_constant_observed,
                "ok": self.tight_constant_ok,
            },
            "exponential_frame": self.exponential_frame.to_dict(),
            "modulated_frame": self.modulated_frame.to_dict(),
            "identities": self.identities.to_dict(),
            "witness": witness,
            "seed": self.seed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def verify_triple(
    lat: LatticeSubgroup,
    omega: MeasuredSet,
    window: ModulationWindow | None = None,
    tolerances: Tolerances = Tolerances(),
    identity_trials: int = 1,
    seed: int | None = None,
    attach_witness: bool = True,
) -> EquivalenceReport:
    """Evaluate all five conditions plus identities; raise if they disagree."""
    if omega.is_empty:
        raise PreconditionError("verification requires a nonempty set")
    G = lat.parent
    tol = tolerances

    verdict = check_subtiling(lat, omega)
    cond2, h_target, h_dev = check_condition2(lat, omega, tol=tol.spectral)
    cond3 = check_translate_orthonormality(lat, omega, tol=tol.spectral)

    system = exponential_system(lat, omega)
    exp_report = frame_bounds(
        frame_operator(system), frame_tol=tol.frame, tight_tol=tol.tight
    )
    if window is None:
        window = default_window(omega)
    mod_report = modulated_frame_report(
        system, window, frame_tol=tol.frame, tight_tol=tol.tight
    )

    rng = np.random.default_rng(seed if seed is not None else 0)
    identities = run_identity_checks(
        lat, omega, rng, trials=identity_trials, tol=tol.spectral
    )

    conditions = [
        verdict.is_subtiling,
        cond2,
        cond3,
        exp_report.is_frame,
        mod_report.is_frame,
    ]
    consistent = len(set(conditions)) == 1

    expected_const = lattice_sizes(lat)[0]
    tight_observed = tight_ok = None
    if verdict.is_subtiling:
        tight_observed = exp_report.tight_constant
        tight_ok = (
            exp_report.is_tight
            and abs(tight_observed - float(expected_const)) < tol.tight
        )

    witness = None
    if attach_witness and not verdict.is_subtiling:
        witness = obstruction_witness(lat, omega)

    h_table = periodized_power_spectrum(lat, omega)
    report = EquivalenceReport(
        group_orders=G.orders,
        weight_g=G.weight_g,
        weight_dual=G.weight_dual,
        lattice_generators=tuple(g.coords for g in lat.generators),
        lattice_elements=tuple(e.coords for e in lat.elements),
        annihilator_elements=tuple(e.coords for e in lat.annihilator.elements),
        cross_section_points=tuple(
            q.coords for q in cross_section(lat).representatives
        ),
        lattice_sizes_pair=lattice_sizes(lat),
        lattice_index=lat.index,
        omega_points=tuple(p.coords for p in omega.points),
        omega_measure=omega.measure,
        condition1_subtiling=verdict.is_subtiling,
        condition2_spectrum=cond2,
        condition3_translates=cond3,
        condition4_frame=exp_report.is_frame,
        condition5_modulates=mod_report.is_frame,
        consistent=consistent,
        is_tiling=verdict.is_tiling,
        violating_pairs=tuple(
            (lam.coords, m) for lam, m in verdict.violating_pairs
        ),
        h_table=tuple(float(v) for v in h_table),
        h_target=h_target,
        h_max_deviation=h_dev,
        expected_tight_constant=expected_const,
        tight_constant_observed=tight_observed,
        tight_constant_ok=tight_ok,
        exponential_frame=exp_report,
        modulated_frame=mod_report,
        identities=identities,
        witness=witness,
        seed=seed,
    )
    if not consistent or (tight_ok is False):
        raise InconsistentVerdictError(report)
    return report


@dataclass(eq=False)
class FugledeReport:
    """Cross-tabulation of tiling against spectrality over a family of sets."""

    group_orders: tuple[int, ...]
    subgroups: int
    cases: int
    tilings: int
    orthogonal_bases: int
    disagreements: list[dict]
    exhaustive: bool
    subset_cap: int
    seed: int | None

    def to_dict(self) -> dict:
        return {
            "group": {"orders": list(self.group_orders)},
            "subgroups": self.subgroups,
            "cases": self.cases,
            "tilings": self.tilings,
            "orthogonal_bases": self.orthogonal_bases,
            "disagreements": self.disagreements,
            "exhaustive": self.exhaustive,
            "subset_cap": self.subset_cap,
            "seed": self.seed,
        }


def fuglede_suite(
    G: FiniteAbelianGroup,
    subset_cap: int = 4096,
    tol: float = 1e-9,
    seed: int | None = 0,
) -> FugledeReport:
    """Tiling vs. orthogonal-basis cross-check over subsets of G.

    Runs every subset when 2^|G| fits under ``subset_cap``, otherwise a
    seeded random sample of that many subsets.  The two predicates must
    agree on every (subgroup, subset) case; disagreements are collected and
    expected to be absent.
    """
    from .lattices import all_subgroups

    subgroups = all_subgroups(G)
    exhaustive = 2**G.order <= subset_cap
    if exhaustive:
        masks = range(2**G.order)
    else:
        rng = np.random.default_rng(seed)
        masks = [int(x) for x in rng.integers(0, 2**G.order, size=subset_cap)]

    cases = tilings = bases = 0
    disagreements: list[dict] = []
    for lat in subgroups:
        for mask in masks:
            indices = [i for i in range(G.order) if (mask >> i) & 1]
            omega = measured_set_from_indices(G, indices)
            if omega.is_empty:
                is_tiling = False
            else:
                is_tiling = check_subtiling(lat, omega).is_tiling
            basis = check_orthogonal_basis(exponential_system(lat, omega), tol=tol)
            cases += 1
            tilings += is_tiling
            bases += basis
            if is_tiling != basis:
                disagreements.append(
                    {
                        "generators": [list(g.coords) for g in lat.generators],
                        "omega": indices,
                        "is_tiling": is_tiling,
                        "orthogonal_basis": basis,
                    }
                )
    return FugledeReport(
        group_orders=G.orders,
        subgroups=len(subgroups),
        cases=cases,
        tilings=tilings,
        orthogonal_bases=bases,
        disagreements=disagreements,
        exhaustive=exhaustive,
        subset_cap=subset_cap,
        seed=None if exhaustive else seed,
    )


# -- random fixture generation -------------------------------------------------


def random_group(
    rng: np.random.Generator,
    max_order: int = 256,
    max_factors: int = 3,
    weights: Sequence[Fraction | int] = (1,),
) -> FiniteAbelianGroup:
    """A random product of at most ``max_factors`` cyclic groups, |G| <= max_order."""
    while True:
        k = int(rng.integers(1, max_factors + 1))
        orders = [int(rng.integers(2, 17)) for _ in range(k)]
        total = int(np.prod(orders))
        if total <= max_order:
            break
    w = weights[int(rng.integers(0, len(weights)))]
    return FiniteAbelianGroup(orders, Fraction(w))


def random_subgroup(
    G: FiniteAbelianGroup, rng: np.random.Generator
) -> LatticeSubgroup:
    """Closure of up to two uniformly random generators (possibly trivial)."""
    n_gens = int(rng.integers(0, 3))
    gens = [G.element_at(int(rng.integers(0, G.order))) for _ in range(n_gens)]
    return subgroup_from_generators(G, gens)


def random_omega(
    lat: LatticeSubgroup, rng: np.random.Generator, max_points: int = 32
) -> MeasuredSet:
    """A random nonempty set: uniform points, or a random partial transversal.

    The transversal branch guarantees sub-tiling sets (and occasional exact
    tilings) appear with healthy frequency, so both truth values of the
    equivalence get exercised.
    """
    G = lat.parent
    if rng.random() < 0.5:
        size = int(rng.integers(1, min(G.order, max_points) + 1))
        idx = rng.choice(G.order, size=size, replace=False)
        return measured_set_from_indices(G, idx)
    labels = lat.coset_labels
    count = int(rng.integers(1, min(lat.index, max_points) + 1))
    cosets = rng.choice(lat.index, size=count, replace=False)
    picks = []
    for c in cosets:
        members = np.flatnonzero(labels == int(c))
        picks.append(int(rng.choice(members)))
    return measured_set_from_indices(G, picks)
