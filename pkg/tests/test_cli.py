import csv
import io
import json

import pytest

from valuebounds.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mu_two_monomial_examples(capsys):
    code, out, _ = run(capsys, "mu", "--field", "p=5,e=1", "--vars", "x1,x2", "x1 + x1^3*x2")
    assert code == 0
    d = json.loads(out)
    assert d["mu"] == "1/1" and d["witness"] == [3, 1]
    code, out, _ = run(capsys, "mu", "--field", "p=5,e=1", "--vars", "x1,x2", "x1^4 + x2^4")
    d = json.loads(out)
    assert d["mu"] == "1/2" and d["witness"] == [1, 1]


def test_mu_degenerate_warns(capsys):
    code, out, err = run(capsys, "mu", "--field", "p=2,e=1", "--vars", "x1,x2", "x1")
    assert code == 0
    assert json.loads(out)["mu"] == "inf"
    assert "degenerate" in err


def test_mu_csv(capsys):
    code, out, _ = run(capsys, "mu", "--field", "p=5", "--format", "csv", "x1 + x1^3*x2")
    assert out == "x1,x2\n1,0\n3,1\n"


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--field", "p=3,e=1", "--map", "x1; x1^2*x2")
    d = json.loads(out)
    assert code == 0 and d["sharp"] is True and d["vf_size"] == 7
    code, out, _ = run(capsys, "verify", "--field", "p=2,e=1", "--map", "x1; x2")
    assert json.loads(out)["permutation"] is True
    code, out, _ = run(capsys, "verify", "--field", "p=2,e=1", "--map", "x1; x1*x2")
    d = json.loads(out)
    assert (d["vf_size"], d["bound_polytope"], d["U"]) == (3, 3, 1)


def test_verify_round_trip(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "--field", "p=5", "--map", "x1 + 2*x2^2; x1*x2", "--out", str(path)]) == 0
    code, out, _ = run(capsys, "verify", "--from-report", str(path))
    assert code == 0 and out == path.read_text()


def test_exit_codes(capsys):
    assert run(capsys, "mu", "--field", "p=4", "x1")[0] == 2
    assert run(capsys, "mu", "--field", "p=5", "x1 +")[0] == 2
    assert run(capsys, "verify", "--field", "p=5", "--vars", "x1,x2", "--map", "x1")[0] == 2
    assert run(capsys, "valueset", "--field", "p=5", "--budget-domain", "4", "--map", "x1; x2")[0] == 3
    assert run(capsys, "u-invariant", "--field", "p=5", "--budget-u", "10", "--map", "x1; x2")[0] == 3
    assert run(capsys, "sweep", "--q", "5..2")[0] == 2
    assert run(capsys, "sweep", "--q", "6..6")[0] == 2


def test_sweep_empty(capsys):
    code, out, _ = run(capsys, "sweep", "--samples", "0")
    d = json.loads(out)
    assert code == 0 and d["reports"] == [] and d["summary"]["instances"] == 0


def test_sweep_sharp_family(capsys):
    code, out, _ = run(capsys, "sweep", "--q", "3..3", "--family", "polytope-sharp", "--a", "1..3")
    d = json.loads(out)
    assert code == 0 and len(d["reports"]) == 3 and d["summary"]["sharp"] == 3


def test_sweep_csv_and_plot(tmp_path, capsys):
    plot = tmp_path / "sweep.svg"
    code, out, _ = run(capsys, "sweep", "--q", "2..3", "--samples", "4", "--format", "csv",
                       "--plot", str(plot))
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][:3] == ["index", "q", "n"]
    assert len(rows) == 1 + 8 + 1 and rows[-1][0] == "summary"
    assert plot.read_text().startswith("<?xml")


def test_sweep_is_reproducible(capsys):
    a = run(capsys, "sweep", "--q", "2..4", "--samples", "3", "--seed", "9", "--no-u")[1]
    b = run(capsys, "sweep", "--q", "2..4", "--samples", "3", "--seed", "9", "--no-u")[1]
    assert a == b


def test_u_invariant_trace(tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    code, out, _ = run(capsys, "u-invariant", "--field", "p=3", "--map", "x1; x1^2*x2",
                       "--trace", str(trace))
    assert code == 0 and json.loads(out)["U"] == 2
    recs = [json.loads(line) for line in trace.read_text().splitlines()]
    assert [r["verdict"] for r in recs] == ["zero", "nonzero"]
    assert set(recs[0]) == {"k", "N", "S_k", "verdict"}


def test_valueset_and_variety(capsys):
    code, out, _ = run(capsys, "valueset", "--field", "p=5", "x^2")
    assert json.loads(out) == {"vf_size": 3, "domain_size": 5, "permutation": False}
    code, out, _ = run(capsys, "variety-check", "--field", "p=3", "x1*x2")
    d = json.loads(out)
    assert code == 0 and d["N_points"] == 5 and d["holds"] is True


def test_polytope_svg(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    args = ["polytope-svg", "--field", "p=5", "--vars", "x1,x2", "--dilation", "2/4",
            "x1 + x1^3*x2", "x1^4 + x2^4", "--out"]
    assert main(args + [str(a)]) == 0
    assert main(args + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.svg"
    assert main(["polytope-svg", "--field", "p=2", "--vars", "x1,x2", "x1; x1*x2", "--out", str(c)]) == 0


def test_polytope_svg_refusals(tmp_path, capsys):
    out = tmp_path / "d.svg"
    code, _, err = run(capsys, "polytope-svg", "--field", "p=2", "--vars", "x1,x2", "x1", "--out", str(out))
    assert code == 2 and "infinite" in err and not out.exists()
    code, _, err = run(capsys, "polytope-svg", "--field", "p=2", "x1*x2*x3", "--out", str(out))
    assert code == 2 and "2 variables" in err and not out.exists()
