import shutil
import subprocess
import sys

import pytest

from basesize.cli import BAD_INPUT, NOT_ESTABLISHED, OK, main

from conftest import DATA, GROUP_FILES

M11 = str(GROUP_FILES / "m11.grp")
M11_SUB = str(GROUP_FILES / "m11" / "3_2_sd16.grp")
M12 = str(GROUP_FILES / "m12.grp")
S8 = str(GROUP_FILES / "s8.grp")
S4WRS2 = str(GROUP_FILES / "s4wrs2.grp")


def test_order(capsys):
    assert main(["order", M11]) == OK
    assert capsys.readouterr().out.strip() == "7920"


def test_base_size_and_certificate_round_trip(tmp_path, capsys):
    cert = tmp_path / "m11.cert"
    assert main(["base-size", M11, M11_SUB, "--emit-cert", str(cert)]) == OK
    assert "b = 3" in capsys.readouterr().out
    assert main(["witness", "verify", M11, M11_SUB, "--cert", str(cert)]) == OK
    assert "NOT verified" not in capsys.readouterr().out


def test_tampered_certificate_is_rejected(tmp_path, capsys):
    cert = tmp_path / "s8.cert"
    assert main(["base-size", S8, S4WRS2, "--emit-cert", str(cert)]) == OK
    text = cert.read_text()
    # claim a smaller base than was found
    bad = text.replace("ESTABLISHES b <= 5", "ESTABLISHES b <= 4")
    assert bad != text
    cert.write_text(bad)
    assert main(["witness", "verify", S8, S4WRS2, "--cert", str(cert)]) == NOT_ESTABLISHED


def test_base_size_not_established_when_max_c_too_small(capsys):
    # index 1771 is past the exhaustive caps, and c = 3 is never tried
    g, h = GROUP_FILES / "m24.grp", GROUP_FILES / "m24" / "2_6_3_s6.grp"
    assert main(["base-size", str(g), str(h), "--max-c", "2", "--trials", "200"]) == NOT_ESTABLISHED
    assert "3 <= b <= " in capsys.readouterr().out


def test_double_cosets_summary(capsys):
    assert main(["double-cosets", M11, M11_SUB, "--summary"]) == OK
    out = capsys.readouterr().out
    assert "b(G,K) >= 3" in out
    assert "size 5184: 1" in out


def test_double_cosets_partial_census_is_not_established(capsys):
    assert main(["double-cosets", M11, M11_SUB, "--budget", "1"]) == NOT_ESTABLISHED


def test_qhat_and_strict_mode(capsys):
    assert main(["qhat", "--group", "M", "--subgroup", "Fi23", "--c", "2"]) == OK
    assert "established" in capsys.readouterr().out
    # the shipped data carries known disagreements, so strict mode refuses
    assert main(["qhat", "--group", "M", "--subgroup", "Fi23", "--c", "2", "--strict"]) == BAD_INPUT


def test_qhat_without_conclusion(capsys):
    # c = 1 never gives a bound below 1
    assert main(["qhat", "--group", "M", "--subgroup", "Fi23", "--c", "1"]) == NOT_ESTABLISHED


@pytest.mark.parametrize("suite", ["monster", "baby-parabolics", "baby-nonparabolic"])
def test_reports_pass(suite, capsys):
    assert main(["report", suite, "--brief"]) == OK
    assert "ALL PASS" in capsys.readouterr().out


def test_failing_report_exits_one(tmp_path):
    target = tmp_path / "classes"
    shutil.copytree(DATA / "classes", target)
    baby = target / "baby.cls"
    baby.write_text(baby.read_text().replace("count 2A 66616", "count 2A 13571955000", 1))
    assert main(["report", "baby-parabolics", "--data", str(target)]) == NOT_ESTABLISHED


def test_bad_inputs_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("degree 3\ngen 1 1 2\n")
    assert main(["order", str(bad)]) == BAD_INPUT
    assert "bad.grp:2" in capsys.readouterr().err
    assert main(["order", str(tmp_path / "missing.grp")]) == BAD_INPUT
    assert main(["base-size", M11, M12]) == BAD_INPUT
    assert main(["no-such-command"]) == BAD_INPUT
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["report", "monster", "--data", str(empty)]) == BAD_INPUT
    broken = tmp_path / "x.cert"
    broken.write_text("CERT nonsense\n")
    assert main(["witness", "verify", M11, M11_SUB, "--cert", str(broken)]) == BAD_INPUT


def test_survey_writes_table_and_certificates(tmp_path, capsys):
    out = tmp_path / "m12.tsv"
    code = main(["survey", M12, "--catalog", str(GROUP_FILES / "m12"), "--out", str(out)])
    assert code == OK
    rows = out.read_text().splitlines()
    assert rows[0].split("\t") == ["name", "order", "soluble", "corefree", "lower", "upper",
                                   "exact", "certificate-path"]
    assert len(rows) == 4
    for row in rows[1:]:
        cols = row.split("\t")
        assert cols[4] == cols[5] == "3"
        assert (tmp_path / "m12-certs").is_dir()
    assert "s over the catalog = 3" in capsys.readouterr().out


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "basesize.cli", "order", S8],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "40320"
