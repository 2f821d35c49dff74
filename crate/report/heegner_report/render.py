"""Render one figure per CSV. Nothing is recomputed; every plotted number
comes from the file."""

from __future__ import annotations

import argparse
import enum
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

HEADER = "suite,D,N,s_re,s_im,lhs,rhs_or_main,residual_or_remainder,h,LD,runtime_ms"
COLUMNS = HEADER.split(",")


class FigureKind(str, enum.Enum):
    remainder_decay = "remainder_decay"
    twisted_scaling = "twisted_scaling"
    weyl_decay = "weyl_decay"
    LD_histogram = "LD_histogram"


class SchemaError(ValueError):
    pass


class EmptyInputError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    figure_kind: FigureKind
    output: Path


@dataclass(frozen=True)
class Rendered:
    output: Path
    slope: float | None
    extra: dict


def read_records(path: Path) -> pd.DataFrame:
    text = Path(path).read_text()
    first = text.split("\n", 1)[0].strip()
    if not first:
        raise EmptyInputError(f"{path}: empty file")
    if first != HEADER:
        raise SchemaError(f"{path}: header {first!r} does not match {HEADER!r}")
    df = pd.read_csv(path)
    if df.empty:
        raise EmptyInputError(f"{path}: no rows")
    return df


def fit_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Least-squares slope and intercept."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2:
        raise EmptyInputError("need at least two points to fit")
    xm, ym = x.mean(), y.mean()
    slope = float(((x - xm) * (y - ym)).sum() / ((x - xm) ** 2).sum())
    return slope, float(ym - slope * xm)


def dyadic_medians(x: np.ndarray, y: np.ndarray) -> pd.DataFrame:
    """Blocks [x0 2^k, x0 2^{k+1}) starting at the smallest x, with medians
    of x and y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rows = []
    lo = x.min()
    while lo <= x.max():
        hi = 2 * lo
        m = (x >= lo) & (x < hi)
        if m.any():
            rows.append((lo, hi, int(m.sum()), float(np.median(x[m])), float(np.median(y[m]))))
        lo = hi
    return pd.DataFrame(rows, columns=["lo", "hi", "count", "median_x", "median"])


def _decay(ax, df: pd.DataFrame, value: np.ndarray, label: str) -> tuple[float, dict]:
    x = df["D"].abs().to_numpy(dtype=float)
    keep = np.isfinite(value) & (value > 0)
    x, value = x[keep], value[keep]
    blocks = dyadic_medians(x, value)
    slope, icpt = fit_line(np.log(blocks["median_x"]), np.log(blocks["median"]))
    ax.loglog(x, value, ".", ms=2, alpha=0.3, label=label)
    ax.loglog(blocks["median_x"], blocks["median"], "o-", color="C3", label="dyadic medians")
    xs = np.array([blocks["median_x"].min(), blocks["median_x"].max()])
    ax.loglog(xs, np.exp(icpt) * xs**slope, "--", color="k", label=f"slope {slope:.4f}")
    ax.set_xlabel("|D|")
    ax.legend()
    return slope, {"blocks": blocks}


def render(spec: FigureSpec) -> Rendered:
    df = read_records(spec.input_csv)
    kind = FigureKind(spec.figure_kind)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    extra: dict = {}
    slope: float | None
    if kind is FigureKind.remainder_decay:
        slope, extra = _decay(ax, df, df["residual_or_remainder"].abs().to_numpy(dtype=float), "|remainder|")
        ax.set_ylabel("|remainder|")
        ax.set_title("Second moment remainder")
    elif kind is FigureKind.weyl_decay:
        slope, extra = _decay(ax, df, df["lhs"].abs().to_numpy(dtype=float), "|Weyl sum|")
        ax.set_ylabel("|(1/h) sum E(s, tau)|")
        ax.set_title("Weyl sum of E")
    elif kind is FigureKind.twisted_scaling:
        df = df[df["N"] > 1]
        if df.empty:
            raise EmptyInputError(f"{spec.input_csv}: no rows with N > 1")
        n = df["N"].to_numpy(dtype=float)
        v = df["lhs"].abs().to_numpy(dtype=float)
        slope, icpt = fit_line(np.log(n), np.log(v))
        env = n**-0.5 * np.log(n) ** 3
        c = float(np.exp(np.mean(np.log(v) - np.log(env))))
        grid = np.linspace(n.min(), n.max(), 200)
        ax.loglog(n, v, "o", label="|twisted moment|")
        ax.loglog(grid, np.exp(icpt) * grid**slope, "--", color="k", label=f"slope {slope:.4f}")
        ax.loglog(grid, c * grid**-0.5 * np.log(grid) ** 3, "-", color="C3", label=f"{c:.3g} N^-1/2 (log N)^3")
        ax.set_xlabel("N")
        ax.set_ylabel("|twisted moment|")
        ax.set_title("Twisted moment against the level")
        ax.legend()
        extra = {"envelope_c": c}
    else:
        d = df.drop_duplicates("D")
        ratio = (d["LD"] / np.log(d["D"].abs())).to_numpy(dtype=float)
        ratio = ratio[np.isfinite(ratio)]
        if len(ratio) == 0:
            raise EmptyInputError(f"{spec.input_csv}: no finite LD values")
        slope = None
        ax.hist(ratio, bins=60 if np.ptp(ratio) > 1e-9 else 1)
        ax.axvline(ratio.min(), color="C3", label=f"min {ratio.min():.4f}")
        ax.set_xlabel("L_D / log|D|")
        ax.set_ylabel("count")
        ax.set_title("L_D / log|D|")
        ax.legend()
        extra = {"min_ratio": float(ratio.min())}
    if slope is not None:
        ax.annotate(f"fitted slope {slope:.6f}", xy=(0.02, 0.02), xycoords="axes fraction")
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return Rendered(Path(spec.output), slope, extra)


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(prog="heegner-report", description=__doc__)
    p.add_argument("input_csv", type=Path)
    p.add_argument("figure_kind", choices=[k.value for k in FigureKind])
    p.add_argument("output", type=Path)
    a = p.parse_args(argv)
    try:
        r = render(FigureSpec(a.input_csv, FigureKind(a.figure_kind), a.output))
    except (SchemaError, EmptyInputError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if r.slope is not None:
        print(f"slope={r.slope!r}")
    for k, v in r.extra.items():
        if not isinstance(v, pd.DataFrame):
            print(f"{k}={v!r}")
    print(f"wrote {r.output}")
    return 0
