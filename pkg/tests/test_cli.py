import json

import pytest

from mf7cert.checks import REGISTRY, run_checks
from mf7cert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_size_and_unique_names():
    assert len(REGISTRY) >= 30
    assert all(spec.name == name for name, spec in REGISTRY.items())


def test_verify_alpha_match(capsys):
    code, out, _ = run(capsys, "verify", "alpha-match", "--prec", "25", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["checks"][0]["witnesses"]["result"] == "matched modulo q^25"


def test_precision_is_raised_to_check_minimum(capsys):
    code, out, _ = run(capsys, "--json", "verify", "alpha-match", "--prec", "5")
    assert code == 0
    assert json.loads(out)["checks"][0]["precision"] == 25


def test_verify_splitting(capsys):
    code, out, _ = run(capsys, "verify", "splitting")
    assert code == 0 and out.startswith("PASS")


def test_unknown_check_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "no-such-check")
    assert code == 2 and "unknown check" in err


def test_bad_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--prec", "many"])
    assert info.value.code == 2


def test_failing_check_gives_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "base-change-det")
    assert code == 1 and out.startswith("FAIL")


def test_parse_error_position(capsys):
    code, _, err = run(capsys, "qexp", "z1^2*(")
    assert code == 2 and "offset 7" in err


def test_qexp(capsys):
    code, out, _ = run(capsys, "qexp", "z1", "--prec", "6")
    assert code == 0 and out.strip() == "q - q^3 + 2*q^4 + 2*q^5 + O(q^6)"


def test_mf7_qexp_of_relation(capsys):
    code, out, _ = run(capsys, "mf7", "qexp", "sigma2", "--prec", "10")
    assert code == 0 and out.strip() == "O(q^10)"


def test_tate_xy(capsys):
    code, out, _ = run(capsys, "tate", "xy", "--n", "7", "--k", "1", "--d", "0", "--prec", "6")
    assert code == 0
    assert out.splitlines()[0] == "X = q + 2*q^2 + 3*q^3 + 4*q^4 + 5*q^5 + O(q^6)"


def test_tate_identity_point_is_usage_error(capsys):
    code, _, _ = run(capsys, "tate", "xy", "--k", "0", "--d", "0")
    assert code == 2


def test_wst_level1(capsys):
    code, out, _ = run(capsys, "wst", "level1-image", "c4")
    assert code == 0 and "z" in out


def test_wst_transform_json(capsys):
    code, out, _ = run(capsys, "wst", "transform", "--s", "a1", "--json")
    assert code == 0 and json.loads(out)["a1"] == "3*a1"


def test_inv_transfer(capsys):
    code, out, _ = run(capsys, "inv", "transfer", "1/2*z1^3*z2^2*z3", "--json")
    cert = json.loads(out)
    assert code == 0
    assert set(cert) == {"check", "status", "witnesses", "bounds", "elapsed_ms"}
    assert cert["status"] == "pass"


@pytest.mark.parametrize("action", ["basis48", "sbasis", "splitting"])
def test_inv_certificates(capsys, action):
    code, out, _ = run(capsys, "inv", action, "--json")
    assert code == 0 and json.loads(out)["status"] == "pass"


@pytest.mark.parametrize("action", ["axioms", "dual-check"])
def test_hopf(capsys, action):
    code, _, _ = run(capsys, "hopf", action)
    assert code == 0


def test_mf7_invariants(capsys):
    code, out, _ = run(capsys, "mf7", "invariants", "--degree", "4")
    assert code == 0 and len(out.strip().splitlines()) == 3


def test_report_is_deterministic():
    names = ["sbasis", "coaction", "tate-xy", "hopf-dual", "invariants"]
    a = run_checks(names, 16, jobs=1).to_json(timings=False)
    b = run_checks(names, 16, jobs=3).to_json(timings=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert [c["check"] for c in a["checks"]] == sorted(names)
