import json
import subprocess
import sys

import pytest

from photomaj import fock
from photomaj.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def header(csv_text):
    out = {}
    for line in csv_text.splitlines():
        if line.startswith("# ") and ": " in line:
            k, v = line[2:].split(": ", 1)
            out[k] = v
    return out


def table(csv_text, name):
    lines = csv_text.splitlines()
    start = lines.index(f"# table: {name}") + 1
    rows = []
    for line in lines[start + 1 :]:
        if line.startswith("#"):
            break
        rows.append(line.split(","))
    return lines[start].split(","), rows


def test_dist(capsys):
    code, out, _ = run(["dist", "thermal(1)"], capsys)
    assert code == 0
    h = header(out)
    assert float(h["mean"]) == pytest.approx(1.0, abs=1e-9)
    cols, rows = table(out, "probabilities")
    assert cols == ["n", "p"]
    assert rows[0] == ["0", "0.5"] and rows[1] == ["1", "0.25"]


def test_compare_crossing(capsys):
    code, out, _ = run(["compare", "thermal(1.5)", "coherent(1.5)"], capsys)
    assert code == 0
    h = header(out)
    assert h["verdict"] == "incomparable"
    assert h["crossing_count"] == "1"
    cols, rows = table(out, "crossings")
    assert cols[:3] == ["n_interp", "outcomes", "alpha"]
    cols, rows = table(out, "partial_sums")
    assert cols == ["N", "S_a", "S_b"]
    cols, rows = table(out, "confidence_intervals")
    assert len(rows) >= 999
    assert float(h["variance_a"]) == pytest.approx(1.5 * 2.5, abs=1e-8)


def test_compare_ordered_and_equal(capsys):
    assert header(run(["compare", "coherent(1)", "coherent(10)"], capsys)[1])["verdict"] == "majorizes"
    assert header(run(["compare", "thermal(3)", "thermal(3)"], capsys)[1])["verdict"] == "equal"


def test_classify(capsys):
    code, out, _ = run(["classify", "mix(0.9;number(1);thermal(11))"], capsys)
    h = header(out)
    assert code == 0
    assert h["verdict"] == "incomparable" and h["effective"] == "over-poissonian"
    assert float(h["effective_up_to_alpha"]) > 0.88
    code, out, _ = run(["classify", "mix(0.9;number(1);thermal(11))", "--criterion", "clustering"], capsys)
    h = header(out)
    assert h["verdict"] == "incomparable" and h["effective"] == "anti-clustering"
    assert float(h["detector_covariance"]) > 0
    code, out, _ = run(["classify", "number(5)", "--criterion", "clustering"], capsys)
    assert header(out)["verdict"] == "anti-clustering"


def test_entropy_bits(capsys):
    code, out, _ = run(["entropy", "thermal(1)", "--family", "shannon", "--q", "1", "--bits"], capsys)
    assert code == 0
    _, rows = table(out, "entropies")
    assert float(rows[0][1]) == pytest.approx(2.0, abs=1e-9)


def test_figure_csv_and_json(capsys, tmp_path):
    code, out, _ = run(["figure", "2"], capsys)
    assert code == 0
    cols, rows = table(out, "partial_sums")
    assert cols == ["N", "S_coherent_1", "S_coherent_5", "S_coherent_10"]
    path = tmp_path / "f7.json"
    code, out, _ = run(["figure", "7", "--format", "json", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["header"]["figure"] == "7"
    t = doc["tables"][0]
    assert t["columns"] == ["N", "S_plus", "S_minus"]
    assert all(isinstance(v, str) for row in t["rows"] for v in row)


@pytest.mark.parametrize("fid", [2, 3, 4, 5, 7, 8, 9, 10, 11])
def test_every_figure_is_byte_identical_on_repeat(fid, tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["figure", str(fid), "--out", str(a)]) == 0
    assert main(["figure", str(fid), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_unknown_figure(capsys):
    code, _, err = run(["figure", "6"], capsys)
    assert code == 2
    assert "2, 3, 4, 5, 7, 8, 9, 10, 11" in err


def test_sample_determinism(capsys):
    argv = ["sample", "coherent(1)", "--samples", "20000", "--seed", "42"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    _, parallel, _ = run(argv + ["--workers", "3"], capsys)
    assert first == second == parallel
    cols, rows = table(first, "joint_counts")
    assert sum(int(r[2]) for r in rows) == 20000


def test_parse_error_exit_code(capsys):
    code, out, err = run(["dist", "coherent(1"], capsys)
    assert code == 2 and out == ""
    assert "at byte 10" in err


def test_domain_error_exit_code(capsys):
    assert run(["dist", "coherent(-1)"], capsys)[0] == 2
    assert run(["dist", "squeezed_target(mean=6,var=1)"], capsys)[0] == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["compare", "coherent(1)"])
    assert info.value.code == 2


def test_convergence_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(fock, "MAX_DIM", 128)
    code, _, err = run(["dist", "squeezed(R=0,r=2)"], capsys)
    assert code == 3
    assert "edge mass" in err


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "photomaj", "dist", "number(2)"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "# n_max: 2" in proc.stdout
