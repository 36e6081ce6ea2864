"""Command line interface: verify, search, fuglede, bracket, identities.

Configuration is a TOML file with the keys

    group               = [4]            # cyclic factor orders (required)
    weight_g            = "1/2"          # optional exact rational, default "1"
    lattice_generators  = [[2]]          # optional, default [] (trivial subgroup)
    omega               = [0, 1]         # indices, or [[0,0],[1,1]] coordinates
    psi                 = [1.0, 2.0]     # optional window values on omega
    tolerance           = 1e-9           # optional spectral/frame tolerance

Reports are JSON on stdout (or ``--output``).  Exit status: 0 on success,
1 on usage or configuration errors, 2 when condition verdicts disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .fourier import bracket, periodized_power_spectrum
from .frames import ModulationWindow
from .groups import FiniteAbelianGroup, StructureError, PreconditionError
from .lattices import LatticeSubgroup, subgroup_from_generators
from .tiling import (
    MeasuredSet,
    check_subtiling,
    enumerate_subtilings,
    measured_set,
    measured_set_from_indices,
)
from .verify import (
    InconsistentVerdictError,
    Tolerances,
    fuglede_suite,
    run_identity_checks,
    verify_triple,
)

__all__ = ["main", "UsageError", "load_config", "build_group", "build_lattice", "build_omega"]


class UsageError(Exception):
    """Bad arguments or configuration; maps to exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we reserve 2 for verdicts
        raise UsageError(message)


def load_config(path: str | Path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"malformed config {path}: {exc}") from exc


def build_group(cfg: dict) -> FiniteAbelianGroup:
    if "group" not in cfg:
        raise UsageError("config is missing the required key 'group'")
    try:
        return FiniteAbelianGroup(cfg["group"], Fraction(str(cfg.get("weight_g", 1))))
    except (StructureError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid group spec: {exc}") from exc


def build_lattice(G: FiniteAbelianGroup, cfg: dict) -> LatticeSubgroup:
    gens_cfg = cfg.get("lattice_generators", [])
    try:
        gens = [G.element(g) for g in gens_cfg]
        return subgroup_from_generators(G, gens)
    except (StructureError, TypeError) as exc:
        raise UsageError(f"invalid lattice_generators: {exc}") from exc


def parse_omega_arg(G: FiniteAbelianGroup, text: str) -> MeasuredSet:
    """Parse ``--omega``: '0,1,2' as indices or '(0,0),(1,1)' as coordinates."""
    text = text.strip()
    try:
        if "(" in text:
            tuples = [t for t in text.replace(" ", "").split("),(")]
            tuples = [t.strip("()") for t in tuples]
            pts = [G.element([int(x) for x in t.split(",")]) for t in tuples]
            return measured_set(G, pts)
        return measured_set_from_indices(G, (int(x) for x in text.split(",")))
    except (ValueError, StructureError) as exc:
        raise UsageError(f"cannot parse omega {text!r}: {exc}") from exc


def build_omega(G: FiniteAbelianGroup, cfg: dict, override: str | None) -> MeasuredSet:
    if override is not None:
        return parse_omega_arg(G, override)
    if "omega" not in cfg:
        raise UsageError("no omega given (config key 'omega' or --omega)")
    entry = cfg["omega"]
    try:
        if entry and isinstance(entry[0], (list, tuple)):
            return measured_set(G, [G.element(c) for c in entry])
        return measured_set_from_indices(G, entry)
    except (StructureError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid omega in config: {exc}") from exc


def _build_window(cfg: dict, omega: MeasuredSet) -> ModulationWindow | None:
    if "psi" not in cfg:
        return None
    raw = cfg["psi"]
    try:
        vals = [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in raw]
        if len(vals) != len(omega):
            raise UsageError("psi must list one value per omega point")
        return ModulationWindow.from_values(vals)
    except (PreconditionError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid psi: {exc}") from exc


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _cmd_verify(args) -> int:
    cfg = load_config(args.config)
    G = build_group(cfg)
    lat = build_lattice(G, cfg)
    omega = build_omega(G, cfg, args.omega)
    window = _build_window(cfg, omega)
    tol = float(cfg.get("tolerance", 1e-9))
    tolerances = Tolerances(spectral=tol, frame=tol, tight=tol)
    try:
        report = verify_triple(
            lat, omega, window=window, tolerances=tolerances, seed=args.seed
        )
    except InconsistentVerdictError as exc:
        _emit(exc.report.to_dict(), args.output)
        print("inconsistent condition verdicts", file=sys.stderr)
        return 2
    if args.csv:
        h = periodized_power_spectrum(lat, omega)
        lines = ["chi_index,H_value"]
        lines += [f"{i},{float(v)!r}" for i, v in enumerate(h)]
        Path(args.csv).write_text("\n".join(lines) + "\n")
    _emit(report.to_dict(), args.output)
    return 0


def _cmd_search(args) -> int:
    cfg = load_config(args.config)
    G = build_group(cfg)
    lat = build_lattice(G, cfg)
    if args.size is None:
        raise UsageError("search requires --size")
    try:
        sets = enumerate_subtilings(lat, args.size)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    for s in sets:
        if s.is_empty:
            if not args.tilings_only:
                rows.append({"points": [], "measure": "0/1", "is_tiling": False})
            continue
        verdict = check_subtiling(lat, s)
        if args.tilings_only and not verdict.is_tiling:
            continue
        rows.append(
            {
                "points": [list(p.coords) for p in s.points],
                "measure": f"{s.measure.numerator}/{s.measure.denominator}",
                "is_tiling": verdict.is_tiling,
            }
        )
    _emit(
        {
            "group": {"orders": list(G.orders)},
            "size": args.size,
            "count": len(rows),
            "sets": rows,
        },
        args.output,
    )
    return 0


def _cmd_fuglede(args) -> int:
    cfg = load_config(args.config)
    G = build_group(cfg)
    report = fuglede_suite(G, subset_cap=args.cap, seed=args.seed)
    _emit(report.to_dict(), args.output)
    return 0 if not report.disagreements else 2


def _cmd_bracket(args) -> int:
    cfg = load_config(args.config)
    G = build_group(cfg)
    lat = build_lattice(G, cfg)
    if "omega" in cfg or args.omega:
        omega = build_omega(G, cfg, args.omega)
        phi = omega.indicator() / np.sqrt(float(omega.measure))
    else:
        rng = np.random.default_rng(args.seed)
        phi = rng.normal(size=G.order) + 1j * rng.normal(size=G.order)
    br = bracket(lat, phi, phi)
    _emit(
        {
            "group": {"orders": list(G.orders)},
            "base_points": [list(p.coords) for p in br.base.representatives],
            "values": [[float(v.real), float(v.imag)] for v in br.values],
            "seed": args.seed,
        },
        args.output,
    )
    return 0


def _cmd_identities(args) -> int:
    cfg = load_config(args.config)
    G = build_group(cfg)
    lat = build_lattice(G, cfg)
    rng = np.random.default_rng(args.seed)
    if "omega" in cfg or args.omega:
        omega = build_omega(G, cfg, args.omega)
    else:
        size = int(rng.integers(1, G.order + 1))
        omega = measured_set_from_indices(
            G, rng.choice(G.order, size=size, replace=False)
        )
    checks = run_identity_checks(lat, omega, rng, trials=args.trials)
    payload = checks.to_dict()
    payload["seed"] = args.seed
    payload["pass"] = (
        checks.max_dev < args.tol
        and checks.size_product_is_one
        and checks.orthonormality_bracket_agree
    )
    _emit(payload, args.output)
    return 0 if payload["pass"] else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="latticeframes", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-c", "--config", required=True, help="TOML config file")
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="verify the five equivalent conditions on a triple")
    common(p)
    p.add_argument("--omega", help="override omega: indices '0,1' or coords '(0,0),(1,1)'")
    p.add_argument("--csv", help="also dump the power spectrum H as CSV")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="enumerate size-k subsets with one point per coset")
    common(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--tilings-only", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("fuglede", help="tiling vs orthogonal basis over all subsets")
    common(p)
    p.add_argument("--cap", type=int, default=4096, help="max subsets before sampling")
    p.set_defaults(func=_cmd_fuglede)

    p = sub.add_parser("bracket", help="bracket table of a function against the lattice")
    common(p)
    p.add_argument("--omega", help="use the normalized indicator of this set")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("identities", help="run the supporting-identity suite")
    common(p)
    p.add_argument("--omega", help="fix omega instead of drawing one")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_identities)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
