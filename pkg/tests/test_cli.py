import io

import pytest

from tfcipher.cli import main, parse_int_list, load_config, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_int_list():
    assert parse_int_list("1,2,3") == [1, 2, 3]
    assert parse_int_list("2..5") == [2, 3, 4, 5]
    assert parse_int_list("1,4..6,9") == [1, 4, 5, 6, 9]


@pytest.mark.parametrize("bad", ["", "1,,2", "a", "5..2", "1..b"])
def test_parse_int_list_rejects(bad):
    with pytest.raises(UsageError):
        parse_int_list(bad)


def test_keystream_default(capsys):
    code, out, _ = run(capsys, "keystream")
    assert code == 0
    values = [int(tok) for tok in out.split()]
    assert len(values) == 120
    assert all(0 <= v < 35 for v in values)


def test_keystream_literal_length(capsys):
    code, out, _ = run(capsys, "keystream", "--mode", "literal", "--length", "4")
    assert code == 0
    assert out.split() == ["7", "5", "9", "17"]


def test_keystream_binary(capsysbinary):
    code = main(["keystream", "--length", "4", "--mode", "literal", "--format", "binary"])
    assert code == 0
    assert capsysbinary.readouterr().out == bytes([7, 5, 9, 17])


def test_encrypt_decrypt_pipe(capsys):
    code, out, _ = run(capsys, "encrypt", "--mode", "literal", "asks")
    assert code == 0
    assert out.strip() == "hxt9"
    code, out, _ = run(capsys, "decrypt", "--mode", "literal", "hxt9")
    assert code == 0
    assert out.strip() == "asks"


def test_encrypt_values_output(capsys):
    code, out, _ = run(capsys, "encrypt", "--mode", "literal", "--values", "asks")
    assert code == 0
    assert out.split() == ["17", "33", "29", "9"]


def test_encrypt_empty(capsys):
    code, out, _ = run(capsys, "encrypt", "")
    assert code == 0
    assert out == "\n"


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("asks\n"))
    code, out, _ = run(capsys, "encrypt", "--mode", "literal")
    assert code == 0
    assert out.strip() == "hxt9"


def test_unsupported_symbol_is_data_error(capsys):
    code, _, err = run(capsys, "encrypt", "ask?")
    assert code == 2
    assert "error" in err


def test_invalid_params_is_data_error(capsys):
    code, _, err = run(capsys, "keystream", "--key", "0")
    assert code == 2
    assert "key_r" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as excinfo:
        main(["keystream", "--format", "nope"])
    assert excinfo.value.code == 1


def test_bad_list_flag_is_usage_error(capsys):
    code, _, err = run(capsys, "keystream", "--nonce", "2..x")
    assert code == 1
    assert "bad range" in err


def test_help_exits_zero(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
    assert "session-demo" in capsys.readouterr().out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    config = tmp_path / "settings.conf"
    config.write_text("key=9\nmode=literal\nu=3\nu1=2\n# comment\n")
    _, from_config, _ = run(capsys, "keystream", "--config", str(config), "--length", "4")
    _, overridden, _ = run(
        capsys, "keystream", "--config", str(config), "--key", "4", "--length", "4"
    )
    _, plain, _ = run(capsys, "keystream", "--mode", "literal", "--key", "4", "--length", "4")
    assert overridden == plain
    assert from_config != overridden


def test_load_config_parses_comments_and_blanks(tmp_path):
    config = tmp_path / "settings.conf"
    config.write_text("# full line comment\n\nkey=7   # trailing comment\nmode=literal\n")
    assert load_config(str(config)) == {"key": "7", "mode": "literal"}


@pytest.mark.parametrize("line", ["key", "key=", "=4", "key 4"])
def test_load_config_rejects_malformed_lines(tmp_path, line):
    config = tmp_path / "settings.conf"
    config.write_text(line + "\n")
    with pytest.raises(UsageError):
        load_config(str(config))


def test_config_rejects_unknown_key(tmp_path, capsys):
    config = tmp_path / "settings.conf"
    config.write_text("clef=9\n")
    code, _, err = run(capsys, "keystream", "--config", str(config))
    assert code == 1
    assert "unknown setting" in err


def test_config_missing_file(capsys):
    code, _, err = run(capsys, "keystream", "--config", "/does/not/exist.conf")
    assert code == 2


def test_analyze_runs(capsys):
    code, out, _ = run(capsys, "analyze", "--lag", "1,2")
    assert code == 0
    assert "chi-square" in out
    assert "serial_correlation.lag2=" in out


def test_analyze_outdir_writes_report_and_figures(tmp_path, capsys):
    outdir = tmp_path / "report"
    code, out, _ = run(capsys, "analyze", "--outdir", str(outdir))
    assert code == 0
    assert (outdir / "report.kv").exists()
    assert (outdir / "histogram.png").stat().st_size > 0
    assert (outdir / "serial_lag1.png").stat().st_size > 0
    kv = (outdir / "report.kv").read_text()
    assert "avalanche.key=" in kv


def test_analyze_grid_timing(tmp_path, capsys):
    outdir = tmp_path / "report"
    code, out, _ = run(capsys, "analyze", "--grid", "2x10,2x20", "--outdir", str(outdir))
    assert code == 0
    assert "timing.n20=" in out
    assert "timing_ratio.40_over_20=" in out
    assert (outdir / "timing.png").exists()


def test_analyze_bad_grid(capsys):
    code, _, err = run(capsys, "analyze", "--grid", "20")
    assert code == 1
    assert "grid" in err


def test_calibrate_deterministic(capsys):
    code, first, _ = run(capsys, "calibrate")
    assert code == 0
    code, second, _ = run(capsys, "calibrate")
    assert first == second
    assert "best match: literal  a-term=(th-1)  step=(g-1)/2  div=int" in first


def test_calibrate_missing_fixture(capsys):
    code, _, err = run(capsys, "calibrate", "--fixture", "/does/not/exist.txt")
    assert code == 2
    assert "not found" in err


def test_calibrate_custom_fixture(tmp_path, capsys):
    fixture = tmp_path / "fixture.txt"
    fixture.write_text("7 5 9 17\n")
    code, out, _ = run(capsys, "calibrate", "--fixture", str(fixture))
    assert code == 0
    assert "(4 of 4 fixture values)" in out


def test_calibrate_outdir(tmp_path, capsys):
    outdir = tmp_path / "cal"
    code, _, _ = run(capsys, "calibrate", "--outdir", str(outdir))
    assert code == 0
    assert (outdir / "calibration.txt").exists()
    assert (outdir / "calibration.png").stat().st_size > 0


def test_session_demo(capsys):
    code, out, _ = run(capsys, "session-demo", "--message", "asks")
    assert code == 0
    assert "ACK verified" in out
    assert "peer echoed 'asks'" in out


def test_session_demo_corrupt(capsys):
    code, out, _ = run(capsys, "session-demo", "--corrupt-nonce")
    assert code == 0
    assert "ERR sent, session closed" in out
    assert "corrupted nonce" in out
