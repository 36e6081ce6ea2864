"""Triple verification, Fuglede suite, report round-trips, and the CLI."""

import json

import pytest

from latticeframes import (
    FiniteAbelianGroup,
    fuglede_suite,
    random_group,
    random_omega,
    random_subgroup,
    run_identity_checks,
    verify_triple,
)
from latticeframes.cli import main
from conftest import make_lattice, make_omega


def test_verify_tiling_triple(z4):
    lat = make_lattice(z4, [2])
    report = verify_triple(lat, make_omega(z4, 0, 1), seed=7)
    assert report.condition_list() == [True] * 5
    assert report.consistent and report.is_tiling
    assert report.tight_constant_observed == pytest.approx(2, abs=1e-9)
    assert report.tight_constant_ok
    assert report.witness is None
    assert report.seed == 7


def test_verify_strict_subtiling_triple(z4):
    lat = make_lattice(z4, [2])
    report = verify_triple(lat, make_omega(z4, 0), seed=7)
    assert report.condition_list() == [True] * 5
    assert not report.is_tiling


def test_verify_overlapping_triple(z4):
    lat = make_lattice(z4, [2])
    report = verify_triple(lat, make_omega(z4, 0, 2), seed=7)
    assert report.condition_list() == [False] * 5
    assert report.consistent
    assert report.witness is not None and report.witness.max_pairing < 1e-12
    assert report.tight_constant_observed is None


def test_report_json_roundtrip(z4):
    lat = make_lattice(z4, [2])
    report = verify_triple(lat, make_omega(z4, 0, 2), seed=3)
    payload = report.to_dict()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["identities"]["size_product_is_one"]


def test_identity_checks_on_fixtures(z6, rng):
    lat = make_lattice(z6, [2])
    checks = run_identity_checks(lat, make_omega(z6, 0, 1, 3), rng, trials=10)
    assert checks.max_dev < 1e-10
    assert checks.orthonormality_bracket_agree
    assert checks.size_product_is_one


def test_random_triples_are_consistent(rng):
    for i in range(100):
        G = random_group(rng)
        lat = random_subgroup(G, rng)
        omega = random_omega(lat, rng, max_points=16)
        report = verify_triple(lat, omega, seed=i)  # raises on any disagreement
        assert report.consistent


def test_fuglede_suite_z2z2(z2z2):
    report = fuglede_suite(z2z2)
    assert report.exhaustive
    assert report.cases == 16 * 5
    assert report.disagreements == []
    assert report.tilings == report.orthogonal_bases


def test_fuglede_full_lattice_only_singletons(z4):
    # when the lattice is the whole group only singletons tile, and only
    # singletons get an orthogonal basis (one dual character survives)
    report = fuglede_suite(z4)
    assert report.disagreements == []
    lat = make_lattice(z4, [1])
    tilings = [
        pts
        for size in range(1, 5)
        for pts in __import__("itertools").combinations(range(4), size)
        if verify_triple(lat, make_omega(z4, *pts), attach_witness=False).is_tiling
    ]
    assert tilings == [(0,), (1,), (2,), (3,)]


def test_fuglede_sampled_mode():
    G = FiniteAbelianGroup([3, 5])
    report = fuglede_suite(G, subset_cap=64, seed=5)
    assert not report.exhaustive
    assert report.cases == 64 * report.subgroups
    assert report.disagreements == []


# -- CLI ----------------------------------------------------------------------


@pytest.fixture
def config_path(tmp_path):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text('group = [4]\nlattice_generators = [[2]]\nomega = [0, 1]\n')
    return cfg


def test_cli_verify_ok(config_path, capsys):
    assert main(["verify", "-c", str(config_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["consistent"] is True
    assert list(payload["conditions"].values()) == [True] * 5


def test_cli_verify_omega_override(config_path, capsys):
    assert main(["verify", "-c", str(config_path), "--omega", "0,2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert list(payload["conditions"].values()) == [False] * 5
    assert payload["witness"]["lam2"] == [2]


def test_cli_verify_coordinate_omega(tmp_path, capsys):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text('group = [2, 2]\nlattice_generators = [[1, 1]]\n')
    code = main(["verify", "-c", str(cfg), "--omega", "(0,0),(0,1)"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["conditions"]["subtiling"] is True


def test_cli_verify_writes_output_and_csv(config_path, tmp_path):
    out = tmp_path / "report.json"
    csv = tmp_path / "h.csv"
    assert main(
        ["verify", "-c", str(config_path), "--output", str(out), "--csv", str(csv)]
    ) == 0
    payload = json.loads(out.read_text())
    assert payload["power_spectrum"]["target"] == "4/1"
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "chi_index,H_value"
    assert len(lines) == 5


def test_cli_missing_config_is_usage_error(capsys):
    assert main(["verify", "-c", "/does/not/exist.toml"]) == 1
    assert "not found" in capsys.readouterr().err


def test_cli_no_arguments_is_usage_error():
    assert main([]) == 1


def test_cli_malformed_config(tmp_path, capsys):
    cfg = tmp_path / "broken.toml"
    cfg.write_text("group = [4\n")
    assert main(["verify", "-c", str(cfg)]) == 1
    assert "malformed config" in capsys.readouterr().err


def test_cli_missing_omega(tmp_path, capsys):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text("group = [4]\nlattice_generators = [[2]]\n")
    assert main(["verify", "-c", str(cfg)]) == 1
    assert "omega" in capsys.readouterr().err


def test_cli_search(config_path, capsys):
    assert main(["search", "-c", str(config_path), "--size", "2", "--tilings-only"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 4
    assert [s["points"] for s in payload["sets"]] == [
        [[0], [1]],
        [[0], [3]],
        [[1], [2]],
        [[2], [3]],
    ]


def test_cli_search_size_out_of_range(config_path, capsys):
    assert main(["search", "-c", str(config_path), "--size", "9"]) == 1


def test_cli_fuglede(config_path, capsys):
    assert main(["fuglede", "-c", str(config_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["disagreements"] == []
    assert payload["cases"] == 16 * 3  # Z4 has 3 subgroups


def test_cli_bracket(config_path, capsys):
    assert main(["bracket", "-c", str(config_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    flat = [x for pair in payload["values"] for x in pair]
    assert flat == pytest.approx([1, 0, 1, 0], abs=1e-9)


def test_cli_identities(config_path, capsys):
    assert main(["identities", "-c", str(config_path), "--trials", "5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] is True


def test_cli_identities_impossible_tolerance(config_path, capsys):
    # an unreachable tolerance flips the pass flag and the exit code to 2
    assert main(["identities", "-c", str(config_path), "--tol", "0"]) == 2


def test_cli_psi_from_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text(
        'group = [4]\nlattice_generators = [[2]]\nomega = [0, 1]\npsi = [1.0, 2.0]\n'
    )
    assert main(["verify", "-c", str(cfg)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["modulated_frame"]["spectrum"] == pytest.approx([2, 8], abs=1e-9)


def test_cli_invalid_psi(tmp_path, capsys):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text(
        'group = [4]\nlattice_generators = [[2]]\nomega = [0, 1]\npsi = [0.0, 2.0]\n'
    )
    assert main(["verify", "-c", str(cfg)]) == 1
    assert "psi" in capsys.readouterr().err
