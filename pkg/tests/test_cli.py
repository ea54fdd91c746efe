import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from funkhilbert.cli import main

DATA = Path(__file__).resolve().parents[1] / "data"
SQUARE, SIMPLEX, DISC = (str(DATA / f) for f in ("square.json", "simplex.json", "disc.json"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_dist_square_example(capsys):
    code, out, _ = run(capsys, "dist", "--domain", SQUARE, "--from", "0,0", "--to", "0.5,0")
    assert code == 0
    (row,) = rows(out)
    assert float(row["hilbert"]) == pytest.approx(np.log(3), abs=1e-11)
    assert float(row["funk"]) + float(row["rev"]) == pytest.approx(np.log(3), abs=1e-11)


def test_dist_same_point_and_filter(capsys):
    code, out, _ = run(capsys, "dist", "--domain", SQUARE, "--from", "0.2,0.1", "--to", "0.2,0.1",
                       "--metric", "hilbert")
    assert code == 0
    (row,) = rows(out)
    assert list(row) == ["x", "y", "hilbert"] and float(row["hilbert"]) == 0.0


@pytest.mark.parametrize("argv, expected", [
    (["dist", "--domain", SQUARE, "--from", "1,0", "--to", "0,0"], 2),
    (["dist", "--domain", "no/such/file.json", "--from", "0,0", "--to", "0.5,0"], 1),
    (["converge", "--domain", SIMPLEX, "--target", "0.3,0.3"], 2),
    (["detour", "--domain", SQUARE], 1),
])
def test_exit_codes(capsys, argv, expected):
    code, _, err = run(capsys, *argv)
    assert code == expected and err


def test_parts_lists_singleton_factor_parts(capsys):
    code, out, _ = run(capsys, "parts", "--domain", SQUARE)
    assert code == 0
    table = rows(out)
    assert len(table) == 8
    assert sorted(r["type"] for r in table) == ["facet"] * 4 + ["vertex"] * 4
    code, out, _ = run(capsys, "parts", "--domain", SQUARE, "--all")
    assert len(rows(out)) == 16


def test_detour_incompatible_parts_prints_inf(capsys):
    code, out, _ = run(capsys, "detour", "--domain", SQUARE, "--x", "1,1", "--y", "0,1")
    assert code == 0
    (row,) = rows(out)
    assert row["H_xi_eta"] == "inf" and row["delta"] == "inf"
    assert float(row["H_eta_xi"]) == pytest.approx(np.log(2), abs=1e-11)


def test_isometry_check_identity(capsys, tmp_path):
    spec = tmp_path / "identity.json"
    spec.write_text(json.dumps({"kind": "matrix", "matrix": np.eye(3).tolist()}))
    code, out, _ = run(capsys, "isometry-check", "--domain", SQUARE, "--map", spec)
    assert code == 0 and out.splitlines()[0] == "isometry: yes, preserving"


def test_isometry_check_reciprocal(capsys, tmp_path):
    spec = tmp_path / "recip.json"
    spec.write_text(json.dumps({"kind": "reciprocal"}))
    code, out, _ = run(capsys, "isometry-check", "--domain", SIMPLEX, "--map", spec)
    assert out.splitlines()[0] == "isometry: yes, reversing"
    code, out, _ = run(capsys, "isometry-check", "--map", spec, "--cone", "orthant:4")
    assert out.splitlines()[0] == "gauge-reversing: yes"


def test_converge_single_frame(capsys, tmp_path):
    svg = tmp_path / "frame.svg"
    code, out, _ = run(capsys, "converge", "--domain", SIMPLEX, "--target", "0,0", "--frames", "1")
    assert code == 0
    table = rows(out)
    assert len(table) == 1 and float(table[0]["hausdorff"]) <= 0.01
    code, out, _ = run(capsys, "converge", "--domain", SIMPLEX, "--target", "0,0", "--frames", "1",
                       "--format", "svg", "--out", svg)
    assert code == 0 and svg.read_text().startswith("<svg")


def test_horolimit_reports_descriptor(capsys):
    code, out, _ = run(capsys, "horolimit", "--domain", SQUARE, "--target", "1,0.3", "--metric", "reverse")
    assert code == 0
    spec = json.loads(out)
    assert spec["kind"] == "reverse_funk" and np.allclose(spec["rev_point"], [1, 0.3], atol=1e-9)


def test_simplex_embed(capsys):
    code, out, _ = run(capsys, "simplex-embed", "--point", "1,2,4", "--to", "1,1,1")
    table = {r["quantity"]: r["value"] for r in rows(out)}
    assert float(table["variation_distance"]) == pytest.approx(np.log(4), abs=1e-11)


@pytest.mark.parametrize("argv", [
    ["dist", "--domain", SQUARE, "--from", "0.1,0.2", "--to=-0.4,0.5"],
    ["geodesic", "--domain", SQUARE, "--from", "0.1,0.2", "--to=-0.4,0.5", "--samples", "9"],
    ["ball", "--domain", DISC, "--center", "0.2,0", "--radius", "0.7", "--samples", "16"],
    ["horoball", "--domain", SQUARE, "--kind", "reverse_funk", "--rev-point", "1,0.2", "--samples", "16"],
    ["parts", "--domain", SIMPLEX, "--all"],
    ["detour", "--domain", SQUARE, "--x", "1,0.2", "--y=1,-0.5"],
])
def test_csv_round_trip_and_determinism(capsys, argv):
    code, first, _ = run(capsys, *argv)
    assert code == 0
    _, second, _ = run(capsys, *argv)
    assert first == second
    table = rows(first)
    assert table
    # re-serialising the parsed rows reproduces the output exactly
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(table)
    assert buf.getvalue() == first


def test_module_entry_point_is_byte_identical():
    cmd = [sys.executable, "-m", "funkhilbert", "converge", "--domain", SIMPLEX, "--target", "0.5,0",
           "--alpha", "0.3", "--frames", "2", "--format", "svg"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"<svg")
