"""CSV import/export for grids, sampled amplitudes, and result tables.

All files are UTF-8 with `#`-prefixed metadata preambles and at least 12
significant digits on floating-point values, so runs are reproducible
byte-for-byte and round-trips preserve doubles exactly.
"""

import csv
from pathlib import Path

import numpy as np

from .cloner import SampledCloner
from .gaussian import WignerGrid
from .modular import DensityOperator, DiscreteAmplitude

_FLOAT_FMT = "{:.17g}"


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return _FLOAT_FMT.format(float(value))


def write_wigner_csv(grid: WignerGrid, path) -> None:
    """Write a Wigner grid as `x,p,w` rows, row-major over the grid."""
    xs = grid.x_coords()
    ps = grid.p_coords()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("x,p,w\n")
        for i in range(grid.nx):
            for j in range(grid.np):
                fh.write(f"{_fmt(xs[i])},{_fmt(ps[j])},{_fmt(grid.values[i, j])}\n")


def write_sampled_cloner_csv(spec: SampledCloner, path) -> None:
    """Write a sampled cloner amplitude with its grid declared in a comment."""
    coords = spec.coords()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# n={spec.n} delta={_fmt(spec.delta)}\n")
        fh.write("x,p,re,im\n")
        for i in range(spec.n):
            for j in range(spec.n):
                a = spec.amps[i, j]
                fh.write(
                    f"{_fmt(coords[i])},{_fmt(coords[j])},"
                    f"{_fmt(a.real)},{_fmt(a.imag)}\n"
                )


def _read_amp_grid(path) -> tuple[int, float, np.ndarray]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text or not text[0].startswith("#"):
        raise ValueError(f"{path}: missing '# n=<n> delta=<delta>' comment line")
    fields = dict(item.split("=", 1) for item in text[0].lstrip("# ").split())
    n = int(fields["n"])
    delta = float(fields["delta"])
    rows = list(csv.DictReader(text[1:]))
    if len(rows) != n * n:
        raise ValueError(f"{path}: expected {n * n} rows, found {len(rows)}")
    amps = np.empty((n, n), dtype=complex)
    for idx, row in enumerate(rows):
        amps[idx // n, idx % n] = float(row["re"]) + 1j * float(row["im"])
    return n, delta, amps


def read_sampled_cloner_csv(path) -> SampledCloner:
    n, delta, amps = _read_amp_grid(path)
    return SampledCloner(n, delta, amps)


def write_discrete_amplitude_csv(amplitude: DiscreteAmplitude, path) -> None:
    """Same layout as the sampled-cloner format, with integer residue coordinates."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# n={amplitude.n} delta=1\n")
        fh.write("x,p,re,im\n")
        for a in range(amplitude.n):
            for b in range(amplitude.n):
                v = amplitude.values[a, b]
                fh.write(f"{a},{b},{_fmt(v.real)},{_fmt(v.imag)}\n")


def read_discrete_amplitude_csv(path) -> DiscreteAmplitude:
    n, _, values = _read_amp_grid(path)
    return DiscreteAmplitude(n, values)


def write_density_csv(rho: DensityOperator, path, threshold: float = 1e-14) -> None:
    """Write the nonzero entries of a density matrix as `row,col,re,im`."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("row,col,re,im\n")
        for i in range(rho.n):
            for j in range(rho.n):
                v = rho.matrix[i, j]
                if abs(v) > threshold:
                    fh.write(f"{i},{j},{_fmt(v.real)},{_fmt(v.imag)}\n")


def write_result_table(table, path) -> None:
    """Write a ResultTable as CSV with a `#` metadata preamble."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key, value in table.metadata.items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(table.columns) + "\n")
        for row in table.rows:
            fh.write(",".join(_fmt(v) if not isinstance(v, str) else v for v in row) + "\n")
