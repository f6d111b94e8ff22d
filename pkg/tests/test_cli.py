import json
import os

import pytest

from pnoninner import cli
from pnoninner.families import catalog_dir


def run(argv):
    return cli.main(argv)


def test_gen_find_verify_roundtrip(tmp_path, capsys):
    pres = tmp_path / "e3.pres"
    assert run(["gen", "extraspecial", "--p", "3", "--n", "1", "-o", str(pres)]) == 0
    cert = tmp_path / "cert.json"
    assert run(["find", str(pres), "--fix", "frattini", "--json", str(cert)]) == 0
    out = capsys.readouterr().out
    assert "certificate" in out
    assert run(["verify", str(pres), str(cert)]) == 0
    assert "VALID" in capsys.readouterr().out


def test_gen_writes_to_stdout(capsys):
    assert run(["gen", "cyclic", "--p", "3", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert out == "p 3\ngens 2\npow 1 = g2\n"


def test_gen_bad_params(capsys):
    assert run(["gen", "extraspecial", "--p", "3"]) == 1


def test_find_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.pres"
    bad.write_text("p 4\ngens 2\n")
    assert run(["find", str(bad)]) == 1
    missing = tmp_path / "nope.pres"
    assert run(["find", str(missing)]) == 1
    ab = tmp_path / "abelian.pres"
    ab.write_text("p 5\ngens 2\n")
    assert run(["find", str(ab)]) == 1


def test_find_exhausted_exit_code(tmp_path, monkeypatch, capsys):
    pres = tmp_path / "e3.pres"
    run(["gen", "extraspecial", "--p", "3", "--n", "1", "-o", str(pres)])
    from pnoninner.search import SearchExhausted

    def fake_find(G, fix):
        raise SearchExhausted(G, fix, 7)

    monkeypatch.setattr(cli, "find_noninner", fake_find)
    assert run(["find", str(pres)]) == 2
    assert "EXHAUSTED" in capsys.readouterr().err


def test_verify_tampered(tmp_path, capsys):
    pres = tmp_path / "e3.pres"
    run(["gen", "extraspecial", "--p", "3", "--n", "1", "-o", str(pres)])
    cert = tmp_path / "cert.json"
    run(["find", str(pres), "--json", str(cert)])
    capsys.readouterr()
    data = json.loads(cert.read_text())
    data["automorphism"]["generator_images"][2][2] = (
        data["automorphism"]["generator_images"][2][2] + 1
    ) % 3
    cert.write_text(json.dumps(data))
    assert run(["verify", str(pres), str(cert)]) == 1
    assert "INVALID" in capsys.readouterr().out


def test_hypotheses_json(tmp_path, capsys):
    pres = tmp_path / "w5.pres"
    run(["gen", "maximal_class_p4", "--p", "5", "-o", str(pres)])
    capsys.readouterr()
    assert run(["hypotheses", str(pres), "--level", "B"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["level"] == "B"
    assert data["items"]["i"]["holds"] is False
    assert "_gap" in data["reduction_criteria"]


def test_survey_mini(tmp_path, capsys):
    d = tmp_path / "cat"
    d.mkdir()
    for fam, p, n, name in [
        ("extraspecial", 3, 1, "e3.pres"),
        ("maximal_class_p4", 3, None, "w3.pres"),
    ]:
        argv = ["gen", fam, "--p", str(p), "-o", str(d / name)]
        if n is not None:
            argv += ["--n", str(n)]
        assert run(argv) == 0
    report = tmp_path / "report.json"
    csvp = tmp_path / "report.csv"
    figs = tmp_path / "figs"
    assert run([
        "survey", str(d), "--report", str(report), "--csv", str(csvp), "--figures", str(figs),
    ]) == 0
    data = json.loads(report.read_text())
    assert {r["file"] for r in data["rows"]} == {"e3.pres", "w3.pres"}
    assert all(r["status"] == "certificate" for r in data["rows"])
    # every certificate digest resolves to a verifiable certificate file
    from pnoninner.presentation_io import parse_presentation
    from pnoninner.search import Certificate, verify_certificate

    cert_dir = os.path.join(os.path.dirname(str(report)), data["certificate_dir"])
    for row in data["rows"]:
        cert_file = os.path.join(cert_dir, row["certificate_file"])
        assert os.path.exists(cert_file)
        cert = Certificate.from_json_dict(json.loads(open(cert_file).read()))
        assert cert.digest() == row["certificate_sha256"]
        G = parse_presentation(open(d / row["file"]).read())
        ok, why = verify_certificate(G, cert)
        assert ok, why
    assert csvp.exists()
    assert (figs / "strategies.png").exists()
    assert (figs / "timing.png").exists()


def test_survey_determinism_modulo_timings(tmp_path, capsys):
    d = tmp_path / "cat"
    d.mkdir()
    run(["gen", "extraspecial", "--p", "3", "--n", "1", "-o", str(d / "e3.pres")])
    rpt = tmp_path / "report.json"
    assert run(["survey", str(d), "--report", str(rpt), "--jobs", "1"]) == 0
    d1 = json.loads(rpt.read_text())
    assert run(["survey", str(d), "--report", str(rpt), "--jobs", "1"]) == 0
    d2 = json.loads(rpt.read_text())
    # rows are byte-stable; wall-clock timings are the one volatile section
    d1["timings_ms"] = d2["timings_ms"] = None
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_survey_empty_dir(tmp_path, capsys):
    d = tmp_path / "cat"
    d.mkdir()
    assert run(["survey", str(d), "--report", str(tmp_path / "r.json")]) == 1


def test_survey_parallel_jobs(tmp_path, capsys):
    d = tmp_path / "cat"
    d.mkdir()
    run(["gen", "extraspecial", "--p", "3", "--n", "1", "-o", str(d / "e3.pres")])
    run(["gen", "maximal_class_p4", "--p", "3", "-o", str(d / "w3.pres")])
    rpt = tmp_path / "r.json"
    assert run(["survey", str(d), "--report", str(rpt), "--jobs", "2"]) == 0
    data = json.loads(rpt.read_text())
    assert all(r["status"] == "certificate" for r in data["rows"])


def test_hypotheses_abelian_errors(tmp_path, capsys):
    pres = tmp_path / "c9.pres"
    run(["gen", "cyclic", "--p", "3", "--n", "2", "-o", str(pres)])
    assert run(["hypotheses", str(pres)]) == 1


def test_survey_figures_are_png(tmp_path, capsys):
    d = tmp_path / "cat"
    d.mkdir()
    run(["gen", "extraspecial", "--p", "3", "--n", "1", "-o", str(d / "e3.pres")])
    figs = tmp_path / "figs"
    assert run(["survey", str(d), "--report", str(tmp_path / "r.json"), "--figures", str(figs)]) == 0
    for name in ("strategies.png", "timing.png"):
        head = (figs / name).read_bytes()[:8]
        assert head == b"\x89PNG\r\n\x1a\n"
