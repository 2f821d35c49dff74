import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from heegner_report.render import HEADER, EmptyInputError, FigureKind, FigureSpec, SchemaError, render


def write_rows(path, rows):
    lines = [HEADER] + [",".join(str(v) for v in r) for r in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def remainder_rows(rng):
    rows = []
    for d in range(1000, 8000, 7):
        rem = 3.0 * d**-0.3 * math.exp(rng.normal(0, 0.2))
        rows.append(("remainder", -d, 0, 0.5, 2.0, 1.0, 1.0, rem, 3, 0.4 * math.log(d), 0))
    return rows


def refit_blocks(x, y):
    """Dyadic medians by bin index, then polyfit."""
    k = np.floor(np.log2(x / x.min()) + 1e-12).astype(int)
    mx = [np.median(x[k == i]) for i in np.unique(k)]
    my = [np.median(y[k == i]) for i in np.unique(k)]
    return np.polyfit(np.log(mx), np.log(my), 1)[0]


def test_remainder_decay_slope_is_negative_and_matches_refit(tmp_path):
    rows = remainder_rows(np.random.default_rng(3))
    csv = write_rows(tmp_path / "r.csv", rows)
    out = tmp_path / "r.png"
    r = render(FigureSpec(csv, FigureKind.remainder_decay, out))
    assert out.exists() and out.stat().st_size > 0
    assert len(r.extra["blocks"]) == 3
    assert r.slope < 0
    x = np.array([abs(row[1]) for row in rows], float)
    y = np.array([abs(row[7]) for row in rows], float)
    assert abs(r.slope - refit_blocks(x, y)) < 1e-9


def test_weyl_decay_matches_refit(tmp_path):
    rng = np.random.default_rng(5)
    rows = [("weyl", -d, 0, 0.5, 2.0, d**-0.25 * math.exp(rng.normal(0, 0.1)), 1, 1e-15, 1, 1.0, 0) for d in range(100, 3000, 3)]
    csv = write_rows(tmp_path / "w.csv", rows)
    r = render(FigureSpec(csv, FigureKind.weyl_decay, tmp_path / "w.svg"))
    x = np.array([abs(row[1]) for row in rows], float)
    y = np.array([row[5] for row in rows], float)
    assert abs(r.slope - refit_blocks(x, y)) < 1e-9


def test_twisted_scaling_envelope(tmp_path):
    ns = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    rows = [("twisted_scaling", -71, n, 0.5, 2.0, 0.7 * n**-0.5 * math.log(n) ** 3, 0, 1e-14, 7, 1.3, 0) for n in ns]
    csv = write_rows(tmp_path / "t.csv", rows)
    r = render(FigureSpec(csv, FigureKind.twisted_scaling, tmp_path / "t.png"))
    assert abs(r.extra["envelope_c"] - 0.7) < 1e-12
    slope = np.polyfit(np.log(ns), np.log([row[5] for row in rows]), 1)[0]
    assert abs(r.slope - slope) < 1e-9


def test_ld_histogram_min(tmp_path):
    rows = remainder_rows(np.random.default_rng(1))
    csv = write_rows(tmp_path / "l.csv", rows)
    r = render(FigureSpec(csv, FigureKind.LD_histogram, tmp_path / "l.png"))
    assert r.slope is None
    assert abs(r.extra["min_ratio"] - 0.4) < 1e-12


def test_empty_input_writes_nothing(tmp_path):
    for name, text in [("a.csv", ""), ("b.csv", HEADER + "\n")]:
        csv = tmp_path / name
        csv.write_text(text)
        out = tmp_path / (name + ".png")
        with pytest.raises(EmptyInputError):
            render(FigureSpec(csv, FigureKind.remainder_decay, out))
        assert not out.exists()
        p = subprocess.run([sys.executable, "-m", "heegner_report", str(csv), "remainder_decay", str(out)])
        assert p.returncode != 0
        assert not out.exists()


def test_schema_mismatch(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("suite,D,lhs\nremainder,-23,1.0\n")
    with pytest.raises(SchemaError):
        render(FigureSpec(csv, FigureKind.remainder_decay, tmp_path / "x.png"))


def test_reads_cli_output_when_built(tmp_path):
    exe = Path(__file__).resolve().parents[2] / "target" / "release" / "heegner"
    if not exe.exists():
        pytest.skip("heegner binary not built")
    csv = tmp_path / "weyl.csv"
    subprocess.run([str(exe), "scan", "weyl", "--dmin", "-2000", "--dmax", "-100", "--out", str(csv)], check=True)
    r = render(FigureSpec(csv, FigureKind.weyl_decay, tmp_path / "weyl.png"))
    assert math.isfinite(r.slope)
