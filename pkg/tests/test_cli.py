"""Command-line behavior: outputs, determinism, and the exit-code contract."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

from hamflux.cli import main
from hamflux.liealg import AlgebraHom, LieAlgebra
from hamflux.linalg import Matrix
from hamflux.problemfile import parse_problem

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_analyze_matrix_fixture(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "sl2_m2.json")
    assert code == 0
    assert out == (
        "symplectic          3\n"
        "hamiltonian         3\n"
        "radical             0\n"
        "normalizer          3\n"
        "invariants          1\n"
        "admissible          4\n"
        "differential_image  3\n"
        "hamiltonian_sequence exact: yes\n"
        "admissible_sequence exact: yes\n"
        "flux rank: 0\n"
    )


def test_analyze_zero_omega_dims(capsys):
    data = run_json(capsys, "analyze", DATA / "omega_zero.json")
    d = data["dims"]
    n, k = 3, 2
    assert (
        d["symplectic"],
        d["hamiltonian"],
        d["radical"],
        d["normalizer"],
        d["invariants"],
        d["admissible"],
    ) == (n, n, n, n, k, k)
    assert data["flux_rank"] == 0
    assert data["exact"] == {
        "hamiltonian_sequence": True,
        "admissible_sequence": True,
    }


def test_analyze_broken_jacobi_exits_2(capsys):
    code, out, err = run(capsys, "analyze", DATA / "broken_jacobi.json")
    assert code == 2 and out == ""
    assert "JacobiViolation" in err


def test_analyze_seeded_probes_deterministic(capsys):
    first = run(capsys, "analyze", DATA / "sl2_m2.json", "--seed", "7")
    second = run(capsys, "analyze", DATA / "sl2_m2.json", "--seed", "7")
    assert first == second
    assert first[0] == 0
    assert "probes: 20 ok (seed 7)" in first[1]
    data = run_json(capsys, "analyze", DATA / "heis3.json", "--seed", "3")
    assert data["probes"] == {"seed": 3, "count": 20, "ok": True}


def test_validate_reports_blocks(capsys):
    code, out, _ = run(capsys, "validate", DATA / "heis3.json")
    assert code == 0
    assert out == (
        "ok\n"
        "lie algebra dim 2\n"
        "module dim 3\n"
        "omega entries 1\n"
        "blocks: zeta, group_elements, noether\n"
    )


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "analyze", DATA / "no_such_file.json")
    assert code == 2
    assert "no_such_file.json" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate", "x.json"],
        ["extend", str(DATA / "heis3.json"), "--kind", "bogus"],
        ["extend", str(DATA / "heis3.json")],
        ["analyze"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 1


def test_extend_central_gives_heis3_constants(capsys):
    code, out, _ = run(capsys, "extend", DATA / "heis3.json", "--kind", "cen")
    assert code == 0
    emitted = parse_problem(out)
    assert emitted.algebra.dim == 3
    doc = json.loads(out)
    assert doc["lie_algebra"]["structure"] == [[1, 2, 0, "1"]]
    meta = doc["extension"]
    assert meta["kind"] == "central"
    assert meta["kernel_dim"] == 1
    assert meta["base"] == {"dim": 2, "structure": []}
    # emitted documents analyze cleanly
    code, _, _ = run_file(capsys, out, "analyze")
    assert code == 0


def run_file(capsys, text, *argv):
    # stash generated documents so subcommands can consume them
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(text)
    try:
        return run(capsys, *argv, fh.name)
    finally:
        os.unlink(fh.name)


def test_extend_zero_action_is_direct_sum(capsys):
    code, out, _ = run(capsys, "extend", DATA / "zeta_zero.json", "--kind", "cen")
    assert code == 0
    doc = json.loads(out)
    assert doc["lie_algebra"] == {"dim": 3, "structure": []}


def test_extend_baer_matches_abelian_with_witness(capsys):
    code, ab_text, _ = run(capsys, "extend", DATA / "heis3.json", "--kind", "ab")
    assert code == 0
    code, baer_text, _ = run(capsys, "extend", DATA / "heis3.json", "--kind", "baer")
    assert code == 0
    ab = json.loads(ab_text)
    baer = json.loads(baer_text)
    assert "equivalence" not in ab["extension"]

    ab_pf = parse_problem(ab_text)
    baer_pf = parse_problem(baer_text)
    psi = Matrix(baer["extension"]["equivalence"])
    # the witness is an isomorphism of the totals compatible with both ends
    hom = AlgebraHom(baer_pf.algebra, ab_pf.algebra, psi)
    assert psi.rank() == 5
    assert psi * Matrix(baer["extension"]["injection"]) == Matrix(
        ab["extension"]["injection"]
    )
    assert Matrix(ab["extension"]["projection"]) * psi == Matrix(
        baer["extension"]["projection"]
    )
    assert hom.apply((0, 0, 1, 0, 0)) == (0, 0, 1, 0, 0)


def test_extend_requires_zeta(capsys):
    code, _, err = run(capsys, "extend", DATA / "abelian_min.json", "--kind", "ab")
    assert code == 2
    assert "zeta" in err


def test_extend_image_not_hamiltonian_exits_3(capsys):
    code, _, err = run(capsys, "extend", DATA / "not_hamiltonian.json", "--kind", "cen")
    assert code == 3
    assert "ImageNotHamiltonian" in err and "basis 0" in err


def test_momentum_heis_report(capsys):
    data = run_json(capsys, "momentum", DATA / "heis3.json")
    assert data["J"] == [["1", "0"], ["0", "1"], ["0", "0"]]
    assert data["freedom"] == 2
    assert data["tau"] == [[0, 1, "1", 2]]
    assert data["equivariantizable"] is False
    assert data["obstruction_class"] == ["1"]
    assert data["cohomology_dim"] == 1
    assert "J_equivariant" not in data
    assert data["group_cocycles"] == [
        {"label": "g", "kappa": [["0", "0"], ["0", "0"], ["0", "1/3"]]},
        {"label": "h", "kappa": [["0", "0"], ["0", "0"], ["0", "1"]]},
    ]


def test_momentum_matrix_fixture_equivariantizes(capsys):
    data = run_json(capsys, "momentum", DATA / "sl2_m2.json")
    assert data["J"] == [
        ["0", "0", "2"],
        ["1", "0", "0"],
        ["0", "1", "0"],
        ["0", "0", "0"],
    ]
    assert data["freedom"] == 3
    assert data["tau"] == [[0, 1, "-1", 0], [0, 1, "-1", 3]]
    assert data["equivariantizable"] is True
    assert data["obstruction_class"] == []
    assert data["cohomology_dim"] == 0
    # the corrected map is the inclusion of sl2 into M2
    assert data["J_equivariant"] == [
        ["0", "0", "1"],
        ["1", "0", "0"],
        ["0", "1", "0"],
        ["0", "0", "-1"],
    ]


def test_momentum_zero_action(capsys):
    data = run_json(capsys, "momentum", DATA / "zeta_zero.json")
    assert data["J"] == [["0", "0"], ["0", "0"], ["0", "0"]]
    assert data["tau"] == []
    assert data["equivariantizable"] is True


def test_momentum_image_not_hamiltonian_exits_3(capsys):
    code, _, err = run(capsys, "momentum", DATA / "not_hamiltonian.json")
    assert code == 3
    assert "ImageNotHamiltonian" in err


def test_momentum_uses_supplied_matrix(capsys):
    doc = json.loads((DATA / "heis3.json").read_text())
    doc["momentum"] = [["1", "0"], ["0", "1"], ["7", "0"]]
    code, out, _ = run_file(capsys, json.dumps(doc), "momentum", "--json")
    assert code == 0
    assert json.loads(out)["J"][2] == ["7", "0"]

    doc["momentum"] = [["0", "0"], ["0", "0"], ["0", "0"]]
    code, _, err = run_file(capsys, json.dumps(doc), "momentum")
    assert code == 3
    assert "InvariantViolation" in err


def test_momentum_rejects_broken_group_element(capsys):
    doc = json.loads((DATA / "heis3.json").read_text())
    doc["group_elements"] = [
        {
            "label": "bad",
            "ad": [["1", "0"], ["0", "1"]],
            "rho_v": [["2", "0", "0"], ["0", "2", "0"], ["0", "0", "2"]],
        }
    ]
    code, _, err = run_file(capsys, json.dumps(doc), "momentum")
    assert code == 3
    assert "CocycleInvarianceViolation" in err


def test_noether_fixture_passes(capsys):
    data = run_json(capsys, "noether", DATA / "heis3.json")
    assert data["invariant_flow"]["hypothesis_ok"] is True
    assert data["invariant_flow"]["conclusion_ok"] is True
    assert all(w["zero"] for w in data["invariant_flow"]["witnesses"])
    checks = [w["check"] for w in data["commuting"]["witnesses"]]
    assert checks == ["action", "omega", "d_omega"]
    assert data["commuting"]["conclusion_ok"] is True

    code, out, _ = run(capsys, "noether", DATA / "heis3.json")
    assert code == 0
    assert "invariant_flow: hypotheses ok, conclusion holds" in out


def test_noether_violation_exits_3(capsys):
    doc = json.loads((DATA / "heis3.json").read_text())
    doc["noether"] = {
        "invariant_flow": {"subalgebra": [["1", "0"]], "v": ["0", "1", "0"], "xi": ["0", "1"]}
    }
    code, _, err = run_file(capsys, json.dumps(doc), "noether")
    assert code == 3
    assert "v is g-invariant" in err

    doc["noether"] = {"commuting": {"g1": [["1", "0"]], "g2": [["0", "1"]]}}
    code, _, err = run_file(capsys, json.dumps(doc), "noether")
    assert code == 3
    assert "J2 values are g1-invariant" in err


def test_noether_requires_block(capsys):
    code, _, err = run(capsys, "noether", DATA / "sl2_m2.json")
    assert code == 2
    assert "noether block" in err


def test_noether_rejects_non_closed_generators(capsys):
    doc = json.loads((DATA / "sl2_m2.json").read_text())
    doc["noether"] = {
        "invariant_flow": {
            # span{e} is closed; span{e, f} is not
            "subalgebra": [["1", "0", "0"], ["0", "1", "0"]],
            "v": ["0", "0", "0", "0"],
            "xi": ["0", "0", "0"],
        }
    }
    code, _, err = run_file(capsys, json.dumps(doc), "noether")
    assert code == 3
    assert "bracket-closed" in err


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "hamflux", "analyze", str(DATA / "sl2_m2.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "flux rank: 0" in proc.stdout

    proc = subprocess.run(
        [sys.executable, "-m", "hamflux", "momentum", str(DATA / "broken_jacobi.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_emitted_document_round_trips_by_command(capsys):
    for kind in ("cen", "ab", "baer"):
        code, out, _ = run(capsys, "extend", DATA / "heis3.json", "--kind", kind)
        assert code == 0
        pf = parse_problem(out)
        code2, out2, _ = run_file(capsys, out, "extend", "--kind", "ab")
        # emitted docs carry no zeta, so a second extend is a validation error
        assert code2 == 2
        code3, out3, _ = run_file(capsys, out, "validate", "--json")
        assert code3 == 0
        assert json.loads(out3)["lie_algebra_dim"] == pf.algebra.dim
