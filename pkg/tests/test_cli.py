import json

import pytest

from foltools.cli import run

EEE_DOC = """
[field eee]
p = x^2 + y^2 - 1 - (x - 2)*2*y
q = x^2 + y^2 - 1 + (x - 2)*2*x

[field rotation]
p = -y
q = x

[curve circle]
f = x^2 + y^2 - 1

[curve line]
f = x
"""

EX1_DOC = """
[param alpha]
value = 1 + 2*i

[field example1]
p = -x
q = alpha*y

[curve line]
f = x
"""

THREE_LINES_DOC = """
[field log3]
p = x
q = -y
r = x + y

[curve l1]
f = x

[curve l2]
f = y

[curve l3]
f = y - x - 1
"""


@pytest.fixture
def eee_doc(tmp_path):
    p = tmp_path / "eee.fol"
    p.write_text(EEE_DOC)
    return str(p)


@pytest.fixture
def ex1_doc(tmp_path):
    p = tmp_path / "ex1.fol"
    p.write_text(EX1_DOC)
    return str(p)


@pytest.fixture
def log3_doc(tmp_path):
    p = tmp_path / "log3.fol"
    p.write_text(THREE_LINES_DOC)
    return str(p)


def test_check_invariant_exit_codes(eee_doc, capsys):
    assert run(["check-invariant", eee_doc, "--field", "eee", "--curve", "circle"]) == 0
    out = capsys.readouterr().out
    assert "cofactor = 2*x + 2*y" in out
    assert run(["check-invariant", eee_doc, "--field", "rotation", "--curve", "line"]) == 1


def test_cofactor_output(eee_doc, capsys):
    assert run(["cofactor", eee_doc, "--field", "eee", "--curve", "circle"]) == 0
    assert capsys.readouterr().out.strip() == "2*x + 2*y"


def test_projectivize_output(eee_doc, capsys):
    assert run(["projectivize", eee_doc, "--field", "rotation", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["degree"] == 1 and payload["infinity_invariant"] is True


def test_singularities_and_classify(eee_doc, ex1_doc, capsys):
    assert run(["singularities", eee_doc, "--field", "rotation"]) == 0
    out = capsys.readouterr().out
    assert "(0 : 0 : 1)" in out
    # every singular point of the reference foliation is certified non-dicritical
    assert run(["classify", ex1_doc, "--field", "example1"]) == 0
    out = capsys.readouterr().out
    assert "non-dicritical" in out and "unknown" not in out
    # the rotation's infinite points are resonant: honest unknown, exit 3
    assert run(["classify", eee_doc, "--field", "rotation"]) == 3
    out = capsys.readouterr().out
    assert "non-dicritical" in out and "resonant-ratio" in out


def test_classify_residual_exit(eee_doc, capsys):
    # the eee system's singular points all have non-Q(i) coordinates
    assert run(["singularities", eee_doc, "--field", "eee"]) == 3
    out = capsys.readouterr().out
    assert "residual" in out


def test_nodal_exit_codes(eee_doc, tmp_path, capsys):
    assert run(["nodal", eee_doc, "--curve", "circle", "--with-infinity"]) == 0
    cusp = tmp_path / "cusp.fol"
    cusp.write_text("[curve cusp]\nf = y^2 - x^3\n")
    assert run(["nodal", str(cusp), "--curve", "cusp"]) == 1


def test_multiplicity_and_euler(ex1_doc, capsys):
    assert run(["multiplicity", ex1_doc, "--field", "example1", "--curve", "line"]) == 0
    out = capsys.readouterr().out
    assert "mu = 1" in out
    assert run(["euler-check", ex1_doc, "--field", "example1", "--curve", "line", "--chi", "2"]) == 0
    out = capsys.readouterr().out
    assert "HOLDS" in out and "sum(mu) = 2" in out
    assert run(["euler-check", ex1_doc, "--field", "example1", "--curve", "line", "--chi", "5"]) == 1


def test_corollary2_cli(tmp_path, capsys):
    doc = tmp_path / "cubic.fol"
    doc.write_text("[curve cubic]\nf = x^2*y + x*y^2 - 1\n")
    assert run(["corollary2", str(doc), "--curve", "cubic"]) == 0
    assert "verified: True" in capsys.readouterr().out


def test_bounds_cli(capsys):
    assert run(["bounds", "--theorem", "t1", "--m", "4"]) == 0
    assert capsys.readouterr().out.strip() == "4"
    assert run(["bounds", "--theorem", "t2", "--m", "3", "--r-nonzero"]) == 0
    assert capsys.readouterr().out.strip() == "6"
    assert run(["bounds", "--theorem", "harnack", "--m", "3", "--orders", "2"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert run(["bounds", "--theorem", "mk", "--m", "4"]) == 0
    assert "k = 3" in capsys.readouterr().out


def test_construct_gallery_roundtrip(tmp_path, capsys):
    out = tmp_path / "c.fol"
    assert run(["construct", "gallery", "circle", "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["nodal", str(out), "--curve", "curve"]) == 0


def test_construct_log_prints_form(capsys):
    code = run(["construct", "log", "--curves", "X;Y;Y - X - Z", "--weights", "1,1,-2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "# P = " in out and "[field log]" in out


def test_construct_eee_and_certify(tmp_path, capsys):
    out = tmp_path / "eee.fol"
    assert run(["construct", "eee", "--g", "x^2 + y^2 - 1", "--h", "x - 2", "--out", str(out)]) == 0
    capsys.readouterr()
    code = run(
        ["certify", str(out), "--field", "eee", "--curve", "g", "--res", "64", "--spacing", "2e-3"]
    )
    out_text = capsys.readouterr().out
    assert code == 0
    assert "hyperbolic = True" in out_text


def test_ovals_cli(eee_doc, tmp_path, capsys):
    lines_file = tmp_path / "polylines.txt"
    assert (
        run(
            [
                "ovals",
                eee_doc,
                "--curve",
                "circle",
                "--res",
                "64",
                "--emit-polylines",
                str(lines_file),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "ovals: 1 (certified: 1)" in out
    content = lines_file.read_text().strip().splitlines()
    xs, ys = zip(*(map(float, line.split()) for line in content if line))
    assert max(xs) <= 1.2 and min(xs) >= -1.2


def test_iif_and_darboux_cli(log3_doc, eee_doc, capsys):
    assert run(["iif-check", eee_doc, "--field", "rotation", "--curve", "circle"]) == 0
    assert (
        run(
            [
                "darboux-check",
                log3_doc,
                "--field",
                "log3",
                "--curves",
                "l1,l2,l3",
                "--weights",
                "1,1,-2",
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "darboux-check",
                log3_doc,
                "--field",
                "log3",
                "--curves",
                "l1,l2,l3",
                "--weights",
                "1,1,-1",
            ]
        )
        == 1
    )


def test_usage_errors(tmp_path):
    assert run(["no-such-command"]) == 2
    assert run(["bounds", "--theorem", "t1"]) == 2  # missing --m
    bad = tmp_path / "bad.fol"
    bad.write_text("[field broken]\np = x +\nq = y\n")
    assert run(["check-invariant", str(bad), "--field", "broken", "--curve", "c"]) == 2
    assert run(["check-invariant", str(tmp_path / "missing.fol"), "--field", "a", "--curve", "b"]) == 2


def test_paper_suite_exit_zero(capsys):
    assert run(["paper-suite"]) == 0
    out = capsys.readouterr().out
    assert "21/21 fixture checks passed" in out


def test_paper_suite_deterministic_report(tmp_path):
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    assert run(["paper-suite", "--report", str(r1)]) == 0
    assert run(["paper-suite", "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
