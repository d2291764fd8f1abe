import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from bvlab import cli
from bvlab import group_maps as gm
from bvlab import hamiltonian_lab as hl
from bvlab._version import __version__


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(tmp_path, *args):
    out = tmp_path / "report.json"
    status = cli.main(list(args) + ["--output", str(out)])
    return status, json.loads(out.read_text())


def c(z):
    return [float(np.real(z)), float(np.imag(z))]


def matrix(M):
    return [[c(z) for z in row] for row in M]


def test_free_hamiltonian_report(tmp_path):
    inp = write(tmp_path, "free.json", {"h": {"1|1": [1.5, 0], "2|2": [0.7, 0]}})
    status, rep = run(tmp_path, "diagonalize", "--input", inp)
    assert status == 0
    assert rep["tool"] == "bvlab" and rep["version"] == __version__
    sp = rep["result"]["spectral"]
    assert sp["nu"] == {"(-1,0)": 0.0, "(1,2)": 1.5, "(3,4)": 0.7}
    assert sp["separable"] is True
    assert rep["within_tolerance"] is True
    assert rep["residuals"]


def test_random_hamiltonian_report(tmp_path, rng):
    h = hl.random_hamiltonian(rng)
    inp = write(tmp_path, "h.json", h.to_json())
    status, rep = run(tmp_path, "diagonalize", "--input", inp, "--variant", "particle")
    assert status == 0
    assert np.allclose(rep["result"]["eigenvalues"], rep["result"]["spectral"]["levels"])
    assert rep["result"]["quasi_spin"]["variant"] == "particle"


def test_report_is_deterministic(tmp_path, rng):
    inp = write(tmp_path, "h.json", hl.random_hamiltonian(rng).to_json())
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["diagonalize", "-i", inp, "-o", str(a)])
    cli.main(["diagonalize", "-i", inp, "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert "timestamp" not in json.loads(a.read_text())


def test_convert_identity_to_params(tmp_path):
    inp = write(tmp_path, "L.json", {"L": np.eye(6).tolist()})
    status, rep = run(tmp_path, "convert", "--from", "so6", "--to", "su4-params", "--input", inp)
    assert status == 0
    cands = rep["result"]["steps"][0]["candidates"]
    assert len(cands) == 4
    good = [cd["params"]["t0"] for cd in cands if cd["valid"]]
    assert sorted(round(t0[0]) for t0 in good) == [-1, 1]


@pytest.mark.parametrize("target", [e for e in cli.ENDPOINTS if e != "su4-matrix"])
def test_convert_from_matrix(tmp_path, rng, target):
    U = gm.random_su4(rng)
    inp = write(tmp_path, "U.json", {"U": matrix(U)})
    status, rep = run(tmp_path, "convert", "--from", "su4-matrix", "--to", target, "-i", inp)
    assert status == 0, rep
    steps = rep["result"]["steps"]
    assert len(steps) == len(cli.conversion_path("su4-matrix", target)) - 1
    assert all(s["residuals"] for s in steps)
    if target == "so6":
        assert np.allclose(rep["result"]["value"]["L"], gm.so6_from_su4(U))


def test_convert_roundtrip_through_lambda(tmp_path, rng):
    L = gm.random_so6(rng)
    inp = write(tmp_path, "L.json", {"L": L.tolist()})
    status, rep = run(tmp_path, "convert", "--from", "so6", "--to", "lambda", "-i", inp)
    assert status == 0
    lam = write(tmp_path, "lam.json", rep["result"]["value"])
    status, rep = run(tmp_path, "convert", "--from", "lambda", "--to", "so6", "-i", lam)
    assert status == 0
    Lr = np.array(rep["result"]["value"]["L"])
    assert min(np.abs(Lr - L).max(), np.abs(Lr + L).max()) <= 1e-8
    assert len(rep["result"]["steps"][0]["candidates"]) == 2


def test_convert_packed_cayley(tmp_path, rng):
    A = gm.random_antisym(rng)
    packed = A[np.triu_indices(6, 1)].tolist()
    inp = write(tmp_path, "A.json", {"A": packed, "packed": True})
    status, rep = run(tmp_path, "convert", "--from", "cayley", "--to", "su4-matrix", "-i", inp)
    assert status == 0
    path = cli.conversion_path("cayley", "su4-matrix")
    assert [s["arrow"] for s in rep["result"]["steps"]] == [
        f"{x} -> {y}" for x, y in zip(path, path[1:])]
    U = np.array(rep["result"]["value"]["U"])
    U = U[..., 0] + 1j * U[..., 1]
    assert np.allclose(gm.so6_from_su4(U), gm.cayley_L_from_A(A), atol=1e-9)


def test_convert_params_and_ostlund(tmp_path, rng):
    p = gm.params_from_matrix(gm.random_su4(rng))
    inp = write(tmp_path, "p.json", {"t0": c(p.t0), "t": matrix(p.t)})
    status, rep = run(tmp_path, "convert", "--from", "su4-params", "--to", "ostlund", "-i", inp)
    assert status == 0
    X = np.array(rep["result"]["value"]["X"])
    assert np.allclose(X[..., 0] + 1j * X[..., 1], gm.ostlund_from_params(p))


def test_convert_chi(tmp_path, rng):
    L = gm.random_so6(rng)
    inp = write(tmp_path, "chi.json", {"chi": gm.chi_from_L(L).tolist()})
    status, rep = run(tmp_path, "convert", "--from", "chi", "--to", "so6", "-i", inp)
    assert status == 0
    Lr = np.array(rep["result"]["value"]["L"])
    assert np.allclose(Lr, L if L[1, 1] > 0 else -L, atol=1e-8)


def test_cayley_singular_exit_code(tmp_path):
    L = np.diag([-1.0, -1, 1, 1, 1, 1])
    inp = write(tmp_path, "L.json", {"L": L.tolist()})
    status, rep = run(tmp_path, "convert", "--from", "so6", "--to", "cayley", "-i", inp)
    assert status == 3
    assert rep["error"]["type"] == "CayleySingular"
    assert rep["error"]["violated"].startswith("cayley_regularity")


def test_not_hermitian_exit_code(tmp_path):
    inp = write(tmp_path, "bad.json", {"h": {"1,2|0": [1, 0]}})
    status, rep = run(tmp_path, "diagonalize", "-i", inp)
    assert status == 3
    assert rep["error"]["violated"] == "hermiticity_relations"


def test_parse_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    status, rep = run(tmp_path, "diagonalize", "-i", str(broken))
    assert status == 2
    inp = write(tmp_path, "U.json", {"V": []})
    status, rep = run(tmp_path, "convert", "--from", "su4-matrix", "--to", "so6", "-i", inp)
    assert status == 2 and "missing key" in rep["error"]["message"]
    status, rep = run(tmp_path, "diagonalize")
    assert status == 2
    status, rep = run(tmp_path, "diagonalize", "-i", str(tmp_path / "nope.json"))
    assert status == 2
    inp = write(tmp_path, "h.json", {"h": {"9|9": [1, 0]}})
    status, rep = run(tmp_path, "diagonalize", "-i", inp)
    assert status == 2


def test_verify_canonical_and_corrupted(tmp_path, rng):
    from bvlab import bv_transform as bv
    lam = bv.lambda_from_L(gm.random_so6(rng))
    inp = write(tmp_path, "lam.json", {"lambda": lam.to_json()})
    status, rep = run(tmp_path, "verify", "-i", inp)
    assert status == 0 and rep["result"]["canonical"] is True
    assert len(rep["result"]["so6_candidates"]) == 2
    vals = lam.values.copy()
    vals[0, 1] += 0.3
    inp = write(tmp_path, "bad.json", bv.LambdaCoeffs(vals).to_json())
    status, rep = run(tmp_path, "verify", "-i", inp)
    assert status == 1 and rep["result"]["canonical"] is False


def test_residual_gate_and_tolerance(tmp_path, rng, monkeypatch):
    from bvlab import bv_transform as bv
    vals = bv.lambda_from_L(gm.random_so6(rng)).values.copy()
    vals[0, 1] += 1e-6
    inp = write(tmp_path, "lam.json", bv.LambdaCoeffs(vals).to_json())
    assert run(tmp_path, "verify", "-i", inp)[0] == 1
    assert run(tmp_path, "verify", "-i", inp, "--tol", "1e-3")[0] == 0
    monkeypatch.setenv("BVLAB_TOL", "1e-3")
    status, rep = run(tmp_path, "verify", "-i", inp)
    assert status == 0 and rep["tolerance"] == 1e-3


@pytest.mark.parametrize("target", cli.JW_TARGETS)
def test_jw(tmp_path, rng, target):
    status, rep = run(tmp_path, "jw", "--target", target)
    assert status == 0
    assert rep["residuals"]["fermion_roundtrip"] <= 1e-12
    inp = write(tmp_path, "h.json", hl.random_hamiltonian(rng).to_json())
    status, rep = run(tmp_path, "jw", "--target", target, "-i", inp)
    assert status == 0
    assert "quasi_spin_form" in rep["result"]


def test_selftest(tmp_path):
    status, rep = run(tmp_path, "selftest")
    assert status == 0
    assert rep["result"]["count"] > 0
    assert rep["result"]["passed"] == rep["result"]["count"]


def test_stdout_output(capsys):
    assert cli.main(["jw"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["command"] == "jw"


def test_conversion_path():
    assert cli.conversion_path("so6", "so6") == ["so6"]
    assert cli.conversion_path("chi", "ostlund")[0] == "chi"
    for a in cli.ENDPOINTS:
        for b in cli.ENDPOINTS:
            path = cli.conversion_path(a, b)
            assert all((x, y) in cli.ARROWS for x, y in zip(path, path[1:]))


@pytest.mark.skipif(shutil.which("bvlab") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["bvlab", "jw", "--target", "spin-three-half"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["Iz_spectrum"] == pytest.approx([-1.5, -0.5, 0.5, 1.5])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bvlab.cli", "--version"],
                          capture_output=True, text=True)
    assert __version__ in proc.stdout
