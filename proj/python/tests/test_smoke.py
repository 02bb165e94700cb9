import json

import mpmath
import pytest

import expclose

GRAPH = {"n": 1, "generators": ["y1 - x1"]}
SWAP = {"form": "variety", "n": 2, "generators": ["y1 - x2", "y2 - x1"]}


def test_check_swap_system():
    report = expclose.check(SWAP)
    assert report["dim_estimate"] == 2
    assert report["pi1_dominant"] and report["pi2_dominant"]


def test_solve_matches_mpmath():
    s = expclose.solve(GRAPH, seed=[1])
    mpmath.mp.prec = 256
    z = mpmath.mpc(s["z"][0]["re"], s["z"][0]["im"])
    assert abs(mpmath.exp(z) - z) < mpmath.mpf("1e-30")
    k = 2j * mpmath.pi
    ref = mpmath.findroot(lambda w: w - mpmath.log(w) - k, k)
    assert abs(z - ref) < mpmath.mpf("1e-40")


def test_audit_and_sweep():
    s = expclose.solve(SWAP, seed=[1, 1])
    report = expclose.audit(s)
    assert report["verdict"] == "relations_found"
    rows = report["tori"][0]["identity_component"]["rows"]
    assert rows in ([["1", "-1"]], [["-1", "1"]])

    result = expclose.sweep(SWAP, seed_box=[(-2, 2), (-2, 2)])
    assert result["outcome"] == "ok"
    assert len(result["tori"]) == 1
    assert len(result["solutions"]) >= 4


def test_triangular_input_and_triangularize():
    t = expclose.triangularize(SWAP)
    assert t["form"] == "triangular"
    s = expclose.solve(json.dumps({"form": "triangular", "n": 1, "generators": ["u^2 - x1"]}), seed=[1], branch=[0])
    assert s["seed"]["branch"] == [0]


def test_errors_carry_kind_and_stage():
    with pytest.raises(expclose.ExpcloseError) as info:
        expclose.solve(GRAPH, seed=[0])
    assert info.value.args[0] == "invalid_seed"


def test_cli_exit_codes():
    status, out, _ = expclose.run_cli(["--help"])
    assert status == 0 and "sweep" in out
