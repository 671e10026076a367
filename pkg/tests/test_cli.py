"""Command-line surface: verbs, formats, exit codes, manifest replay."""

import csv
import io
import json

import pytest

from sturmlab import checks
from sturmlab.cli import RunManifest, dispatch, load_manifest, main, manifest_argv


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_words_mechanical_fixture(capsys):
    code, out, _ = run_cli(capsys, "words", "mechanical", "--gamma", "2/5", "--n", "10")
    assert code == 0
    assert out == "0101001010\n"


def test_words_balanced(capsys):
    code, out, _ = run_cli(capsys, "words", "balanced", "--p", "2", "--q", "5")
    assert code == 0
    assert out.strip() == "00101"


def test_words_standard_table(capsys):
    code, out, _ = run_cli(capsys, "words", "standard", "--quotients", "1,1,1")
    header, rows = parse_csv(out)
    assert code == 0
    assert header == ["n", "word", "ones", "length"]
    assert [r[1] for r in rows] == ["1", "0", "01", "010", "01001"]


def test_cyclic_scan_fixture(capsys):
    code, out, _ = run_cli(capsys, "cyclic", "scan", "--p", "2", "--q", "5")
    header, rows = parse_csv(out)
    assert code == 0
    products = {r[0]: int(r[2]) for r in rows}
    assert products["00101"] == 162000
    assert products["00011"] == 88128
    argmax = [r[0] for r in rows if r[4] == "true"]
    assert argmax == ["00101"]


def test_cyclic_verify_exit_code(capsys):
    code, out, _ = run_cli(capsys, "cyclic", "verify", "--q-max", "8")
    assert code == 0
    _, rows = parse_csv(out)
    assert all(r[-1] == "true" for r in rows)


def test_json_format_carries_meta(capsys):
    code, out, _ = run_cli(
        capsys, "cyclic", "scan", "--p", "1", "--q", "4", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["verb"] == "cyclic scan"
    assert payload["meta"]["parameters"] == {"p": "1", "q": "4"}
    assert "version" in payload["meta"]
    assert payload["rows"]


def test_measures_show(capsys):
    code, out, _ = run_cli(capsys, "measures", "show", "--p", "2", "--q", "5")
    assert code == 0
    record = json.loads(out)
    assert record["word"] == "00101"
    assert record["weight"] == "1/5"


def test_queue_run_row(capsys):
    code, out, _ = run_cli(
        capsys, "queue", "run", "--gamma", "1/3", "--horizon", "500", "--seed", "0"
    )
    header, rows = parse_csv(out)
    assert code == 0
    assert header == [
        "label", "seed", "gamma", "horizon", "mean_cost", "max_queue", "admitted_fraction",
    ]
    assert rows[0][2] == "1/3" and rows[0][3] == "500"


def test_queue_compete_verdict(capsys):
    code, out, _ = run_cli(
        capsys,
        "queue", "compete", "--gamma", "1/3", "--horizon", "3000", "--competitors", "4",
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert rows[0][0] == "mechanical"
    assert len(rows) == 5


def test_heaps_scan(capsys):
    code, out, _ = run_cli(capsys, "heaps", "scan", "--n-max", "6")
    _, rows = parse_csv(out)
    assert code == 0
    by_n = {int(r[0]): r for r in rows}
    assert by_n[3][1] == "2/3"
    assert by_n[3][3] == "true"


def test_jsr_bounds_golden(capsys):
    code, out, _ = run_cli(capsys, "jsr", "bounds", "--n-max", "4")
    _, rows = parse_csv(out)
    assert code == 0
    n2 = next(r for r in rows if r[0] == "2")
    assert n2[1] == n2[2]  # the bracket closes exactly at n = 2
    assert n2[3] == "01"


def test_jsr_alpha_star_digits(capsys):
    code, out, _ = run_cli(capsys, "jsr", "alpha-star", "--terms", "12", "--bits", "256")
    assert code == 0
    assert "matching_digits = 42" in out
    assert "alpha_star = 0.7493265463303675579439619480913446720913" in out


def test_wigner_ground_state(capsys):
    code, out, _ = run_cli(
        capsys, "wigner", "ground-state", "--p", "2", "--q", "4"
    )
    _, rows = parse_csv(out)
    assert code == 0
    energies = {r[0]: r[1] for r in rows}
    assert energies["0101"] == "1/2"
    assert energies["0011"] == "1"


def test_wigner_anti_potential(capsys):
    code, out, _ = run_cli(
        capsys, "wigner", "ground-state", "--p", "3", "--q", "8", "--potential", "anti"
    )
    _, rows = parse_csv(out)
    assert code == 0
    winner = [r for r in rows if r[3] == "true"]
    assert winner[0][0] == "00000111" and winner[0][2] == "false"


def test_verify_all_subset(capsys):
    code, out, _ = run_cli(
        capsys, "verify-all", "--only", "cyclic-products,jsr-golden-ratio"
    )
    assert code == 0
    lines = [line for line in out.splitlines() if line]
    assert len(lines) == 2
    assert all(line.startswith("PASS") for line in lines)


def test_verify_all_reports_failure(capsys, monkeypatch):
    monkeypatch.setitem(checks.CHECKS, "cyclic-products", lambda: (False, "forced"))
    code, out, _ = run_cli(capsys, "verify-all", "--only", "cyclic-products")
    assert code == 1
    assert out.startswith("FAIL")


def test_unknown_check_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "verify-all", "--only", "no-such-check")
    assert code == 2
    assert "unknown check" in err


def test_usage_errors(capsys):
    assert run_cli(capsys, "no-such-verb")[0] == 2
    assert run_cli(capsys, "words", "mechanical", "--gamma", "2/5")[0] == 2  # missing --n
    assert run_cli(capsys)[0] == 2


def test_version_flag(capsys):
    code, out, _ = run_cli(capsys, "--version")
    assert code == 0
    assert out.startswith("sturmlab ")


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "scan.csv"
    code, out, _ = run_cli(
        capsys, "cyclic", "scan", "--p", "1", "--q", "3", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("representative,")


def test_manifest_replay_is_byte_identical(tmp_path, capsys):
    direct = tmp_path / "direct.csv"
    replayed = tmp_path / "replayed.csv"
    code, _, _ = run_cli(
        capsys, "jsr", "bounds", "--n-max", "3", "--out", str(direct), "--format", "csv"
    )
    assert code == 0

    manifest_path = tmp_path / "manifest.json"
    manifest_path.write_text(
        json.dumps(
            {
                "verb": "jsr bounds",
                "parameters": {"n_max": 3},
                "output_path": str(replayed),
                "format": "csv",
            }
        )
    )
    manifest = load_manifest(str(manifest_path))
    assert dispatch(manifest) == 0
    assert replayed.read_bytes() == direct.read_bytes()
    # And once more through the run verb.
    replayed.unlink()
    assert main(["run", "--manifest", str(manifest_path)]) == 0
    assert replayed.read_bytes() == direct.read_bytes()


def test_manifest_argv_round_trip():
    manifest = RunManifest(
        verb="queue compete",
        parameters={"gamma": "1/3", "horizon": 1000, "competitors": 4},
        seed=5,
        format="json",
    )
    argv = manifest_argv(manifest)
    assert argv[:2] == ["queue", "compete"]
    assert argv.count("--seed") == 1
    assert "--gamma" in argv and "1/3" in argv


def test_manifest_rejects_unknown_verb(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"verb": "frobnicate", "parameters": {}}))
    code, _, err = run_cli(capsys, "run", "--manifest", str(bad))
    assert code == 2
    assert "unknown manifest verb" in err


def test_missing_manifest_file(capsys):
    code, _, err = run_cli(capsys, "run", "--manifest", "/nonexistent/m.json")
    assert code == 2
    assert err
