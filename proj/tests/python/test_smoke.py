import json
import os
from pathlib import Path

import pytest

import pickfam

DATA = Path(os.environ.get("PICKFAM_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_conductor_of_semigroups():
    assert pickfam.conductor({"generators": [2, 3]})["conductor_exponent"] == 2
    c = pickfam.conductor({"generators": [2, 5]})
    assert c["conductor_exponent"] == 4
    assert c["basis"] == [0, 2]
    assert pickfam.conductor({"kind": "two_var_example"})["subalgebra_dimension"] == 1


def test_picard_closed_form():
    unit = json.loads((DATA / "unit_2_5.json").read_text())
    coords = pickfam.picard({"generators": [2, 5]}, unit)
    assert coords == [["1/2", "0"], ["-5/4", "1/2"]]


def test_classical_kernel_is_szego():
    z, w = 0.3 + 0.1j, -0.2 + 0.4j
    k = pickfam.kernel({"generators": [1]}, [z], [w])
    assert k[0][0] == pytest.approx(1 / (1 - z * w.conjugate()), rel=1e-14)


def test_solve_reports_infeasible_problem():
    problem = json.loads((DATA / "problem_2_3_infeasible.json").read_text())
    problem["sweep"]["samples"] = 100
    verdict = pickfam.solve(problem)
    assert verdict["status"] == "Infeasible"
    assert verdict["oracle"]["value"] > 1
    assert pickfam.solve(problem) == verdict


def test_oracle_attains_z_squared():
    result = pickfam.oracle((DATA / "instance_2_3.json").read_text())
    assert result["value"] <= 1 + 1e-6
    assert result["lower_bound"] <= result["value"]


def test_identity_suites_pass():
    assert all(s["passed"] for s in pickfam.verify(8, 1))


def test_errors_surface_as_python_exceptions():
    with pytest.raises(pickfam.PickfamError):
        pickfam.conductor({"generators": [0]})
    with pytest.raises(ValueError):
        pickfam.picard({"generators": [2, 5]}, {"jets": [[["0", "0"], ["1", "0"], ["0", "0"], ["0", "0"]]]})


def test_cli_in_process():
    code, out, _ = pickfam.run_cli(["conductor", "--spec", str(DATA / "spec_2_3.json")])
    assert code == 0
    assert json.loads(out)["conductor_exponent"] == 2
    assert pickfam.run_cli(["no-such-command"])[0] == 3
