import json

import pytest

from fatplane import cli
from fatplane import fixtures as fx
from fatplane import nslattice as ns
from fatplane.fatpoints import BadFixture, nef_line_certificate


@pytest.mark.parametrize("name", sorted(fx.builtin_points()))
def test_point_files_match_builders(name):
    assert fx.load_points(name) == fx.builtin_points()[name]()


@pytest.mark.parametrize("name", sorted(fx.builtin_systems()))
def test_system_files_match_builders(name):
    assert fx.read_text(name) == fx.builtin_systems()[name]


@pytest.mark.parametrize("name", sorted(fx.builtin_certificates()))
def test_certificate_files(name):
    assert fx.read_text(name) == fx.builtin_certificates()[name]
    Z = fx.load_points(name.replace(".cert", ".pts"))
    cert = nef_line_certificate(Z, *fx.parse_certificate(fx.read_text(name), Z))
    assert cert.valid


def test_certificate_errors():
    Z = fx.fermat2_points()
    with pytest.raises(BadFixture):
        fx.parse_certificate("color: red\n", Z)
    with pytest.raises(BadFixture):
        fx.parse_certificate("field: F5\nform: x weight 1\n", Z)


def test_resolve_missing():
    with pytest.raises(FileNotFoundError):
        fx.resolve("no-such-file.pts")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_containment_exit_codes(capsys):
    code, out, _ = run(capsys, "containment", "--scheme", "fermat3.pts", "--m", "3", "--r", "2")
    assert code == 2
    assert "verdict: NOT CONTAINED, witness degree 9" in out
    assert "checksum[fermat3.pts]: " in out and "seed: 0" in out
    code, out, _ = run(capsys, "containment", "--scheme", "b3.pts", "--m", "4", "--r", "2")
    assert code == 0 and "contained: yes" in out


def test_cli_input_errors(capsys):
    code, _, err = run(capsys, "alpha", "--scheme", "missing.pts")
    assert code == 1 and "FileNotFoundError" in err
    code, _, _ = run(capsys, "alpha")
    assert code == 1
    code, _, err = run(capsys, "containment", "--scheme", "klein.pts", "--m", "3", "--r", "2")
    assert code == 1 and "extended" in err


def test_cli_json_and_approx(capsys):
    code, out, _ = run(capsys, "waldschmidt", "--scheme", "star6.pts", "--mmax", "2", "--json", "--approx")
    obj = json.loads(out)
    assert code == 0
    assert obj["upper"] == "3" and obj["lower"] == "5/2" and obj["lower_approx"] == 2.5


def test_cli_zariski_and_pattern_mismatch(capsys):
    code, out, _ = run(capsys, "zariski", "--system", "nearpencil4.sys", "--divisor", "F")
    assert code == 0
    assert "P_class: 4L - 3E0 - E1 - E2 - E3 - E4" in out
    assert "relative_to: declared curves" in out
    code, out, _ = run(capsys, "waldschmidt-zariski", "--system", "fiveline.sys", "--divisor", "Fliteral")
    assert code == 2 and "no conclusion" in out
    code, out, _ = run(capsys, "zariski", "--system", "star4.sys", "--divisor", "2*H1 + L")
    assert code == 0


def test_cli_arrangement_stats(capsys):
    code, out, _ = run(capsys, "arrangement-stats", "--kind", "fermat", "--n", "3")
    assert code == 0 and "t[3]: 12" in out
    code, out, _ = run(capsys, "hconst", "--kind", "finite_field", "--n", "2")
    assert "H(C,T): -2" in out


def test_cli_generate_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--kind", "fermat", "--n", "3", "--as", "points", "--min-mult", "3")
    path = tmp_path / "f3.pts"
    path.write_text(out)
    assert fx.load_points(str(path)) == fx.fermat_points(3)
    code, out, _ = run(capsys, "generate", "--kind", "near_pencil", "--n", "4")
    path = tmp_path / "np.arr"
    path.write_text(out)
    code, out, _ = run(capsys, "arrangement-stats", "--arrangement", str(path))
    assert "t[4]: 1" in out and "t[2]: 4" in out


def test_cli_dualize(capsys):
    code, out, _ = run(capsys, "dualize", "--points", "b3.pts", "--json")
    assert len(json.loads(out)["line"]) == 9


def test_repro_list_and_entries(capsys):
    code, out, _ = run(capsys, "repro", "--list")
    assert code == 0
    for rid in cli.repro_ids():
        assert rid + ":" in out
    code, out, _ = run(capsys, "repro", "nearpencil-zariski", "star6-waldschmidt", "hconst-f3")
    assert code == 0 and out.count(": ok") == 3
    code, _, err = run(capsys, "repro", "wiman-splitting")
    assert code == 1 and "extended" in err


def test_repro_detects_mismatch(monkeypatch, capsys):
    entry = next(r for r in cli.REPRO if r[0] == "hconst-f3")
    bad = (entry[0], entry[1], entry[2], {"H(C)": "-4"}, entry[4])
    monkeypatch.setattr(cli, "REPRO", [bad])
    code, out, _ = run(capsys, "repro", "hconst-f3")
    assert code == 2 and "MISMATCH" in out
