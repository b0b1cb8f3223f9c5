import json

import pytest

from mfhrr.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


@pytest.mark.parametrize("dens,expected", [("x,y", "1"), ("y,x", "-1")])
def test_residue(capsys, dens, expected):
    rc, out, _ = run(capsys, "residue", "--vars", "x,y", "--num", "1", "--dens", dens)
    assert rc == 0 and out.strip() == expected


def test_residue_higher_power(capsys):
    rc, out, _ = run(capsys, "residue", "--vars", "x", "--num", "1", "--dens", "x^2")
    assert rc == 0 and out.strip() == "0"


def test_residue_rational_output(capsys):
    rc, out, _ = run(capsys, "residue", "--vars", "x,y", "--num", "x*y", "--dens", "3*x^2,3*y^2")
    assert out.strip() == "1/9"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "residue", "--vars", "x", "--num", "x+", "--dens", "x")[0] == 1
    assert run(capsys, "residue", "--vars", "x", "--num", "z", "--dens", "x")[0] == 1
    assert run(capsys, "residue", "--vars", "x,y", "--num", "1", "--dens", "x,x*y")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["residue", "--vars", "x"])
    assert info.value.code == 1
    odd = tmp_path / "odd.json"
    odd.write_text(json.dumps({"ring": ["x"], "f": "x^2", "A": [["x"]], "B": [["x"]]}))
    assert run(capsys, "chern", str(odd))[0] == 4
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ring": ["x", "y"], "f": "x*y", "A": [["x"]], "B": [["x"]]}))
    assert run(capsys, "chern", str(bad))[0] == 5
    assert run(capsys, "chern", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "chern", "corpus:nope:X")[0] == 1


def test_chern_chi_pairing(capsys, tmp_path):
    path = tmp_path / "X.json"
    path.write_text(json.dumps({"ring": ["x", "y"], "f": "x^3+y^3",
                                "A": [["x+y"]], "B": [["x^2-x*y+y^2"]]}))
    rc, out, _ = run(capsys, "chern", str(path))
    assert rc == 0 and out.strip() == "(-3*x + 3*y)*dx∧dy"
    rc, out, _ = run(capsys, "chi", str(path), str(path), "--json")
    assert json.loads(out) == {"chi": 2, "h0": 2, "h1": 0}
    rc, out, _ = run(capsys, "pairing", str(path), str(path))
    assert out.strip() == "-2"


def test_hrr_verify_xy(capsys):
    rc, out, _ = run(capsys, "hrr-verify", "corpus:xy:(x,y)")
    rep = json.loads(out)
    assert rc == 0
    assert (rep["chi"], rep["pairing"], rep["sign"], rep["verdict"]) == (1, "-1", -1, "holds")


def test_corpus_filter_and_csv(capsys):
    rc, out, err = run(capsys, "corpus", "--filter", "fermat3", "--format", "csv")
    lines = out.strip().splitlines()
    assert rc == 0 and lines[0].startswith("case,n,h0")
    assert len(lines) == 1 + 9 and "9/9 cases hold" in err


def test_corpus_empty_filter(capsys):
    rc, out, _ = run(capsys, "corpus", "--filter", "no-such-entry")
    assert rc == 0 and json.loads(out)["summary"]["total"] == 0


def test_corpus_is_byte_identical(capsys):
    a = run(capsys, "corpus", "--filter", "xy")[1]
    b = run(capsys, "corpus", "--filter", "xy")[1]
    assert a == b


def test_selftest_seed_42_twice(capsys):
    first = run(capsys, "selftest", "--seed", "42", "--cases", "3")
    second = run(capsys, "selftest", "--seed", "42", "--cases", "3")
    assert first[0] == 0 and first == second
    assert "selftest pass" in first[1]


def test_selftest_unknown_suite(capsys):
    assert run(capsys, "selftest", "no_such_suite")[0] == 1


def test_thm112(capsys):
    rc, out, _ = run(capsys, "selftest", "thm112", "--jmax", "5")
    assert rc == 0 and "thm112 pass" in out
    rc, out, _ = run(capsys, "thm112", "--jmax", "3")
    assert rc == 0 and "j=3: eps(y^j) = (-6*alpha/x^4)*dx" in out
