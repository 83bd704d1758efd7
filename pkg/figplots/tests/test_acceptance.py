"""Acceptance gate for the plot tool.

Generates the three default gap grids with the coherekit CLI (the only
interface this package consumes), then checks that checksum mode passes on
every value column and that rendering produces non-empty images.  Run with
``pytest tests/test_acceptance.py -v -s`` to see the criterion line.
"""

import math
import subprocess
import sys

import pytest

from figplots import parse_grid

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

GRIDS = {
    "fig1": ("gap",),
    "fig2": ("gap_pipeline", "gap_closed_form"),
    "fig3": ("gap_pipeline", "gap_paper_formula", "gap_discrepancy"),
}


def run(argv):
    return subprocess.run(argv, capture_output=True, text=True)


@pytest.fixture(scope="module")
def default_csvs(tmp_path_factory):
    base = tmp_path_factory.mktemp("grids")
    paths = {}
    for name in GRIDS:
        out = base / f"{name}.csv"
        proc = run([sys.executable, "-m", "coherekit", name, "--out", str(out)])
        assert proc.returncode == 0, proc.stderr
        paths[name] = str(out)
    return paths


def test_renders_default_grids_without_mutation(default_csvs, tmp_path):
    checked = 0
    rendered = 0
    for name, columns in GRIDS.items():
        csv_path = default_csvs[name]
        for column in columns:
            proc = run([sys.executable, "-m", "figplots.cli", "--in", csv_path,
                        "--value", column, "--dump-checksum"])
            assert proc.returncode == 0, (
                f"checksum mode failed for {name}:{column}\n{proc.stderr}"
            )
            lines = proc.stdout.strip().splitlines()
            assert lines[0].split()[1] == lines[1].split()[1], (
                f"parsed hash differs from input hash for {name}:{column}"
            )
            checked += 1

        out = tmp_path / f"{name}.png"
        proc = run([sys.executable, "-m", "figplots.cli", "--in", csv_path,
                    "--value", columns[0], "--out", str(out),
                    "--title", f"{name} default grid"])
        assert proc.returncode == 0, proc.stderr
        data = out.read_bytes()
        assert data.startswith(PNG_MAGIC) and len(data) > 2000, (
            f"{name} image is empty or not a PNG"
        )
        rendered += 1

    assert rendered == 3 and checked == 6
    print(
        "[criterion 11] PASS plot tool renders the three default grids "
        f"({rendered} images, {checked} checksum columns, no data mutation)"
    )


def test_fig1_surface_has_zero_ridge(default_csvs):
    # along y=0 the gap is identically zero inside the disk
    xs, ys, z = parse_grid(default_csvs["fig1"]).surface("gap")
    j = ys.index(0.0)
    line = z[j]
    assert all(not math.isnan(v) for v in line)
    assert max(abs(v) for v in line) <= 1e-12


def test_fig2_surface_has_zero_valley(default_csvs):
    # real coherent states carry no gap
    xs, ys, z = parse_grid(default_csvs["fig2"]).surface("gap_pipeline")
    j = ys.index(0.0)
    assert max(abs(v) for v in z[j]) <= 1e-12
    # and the valley is strict: neighbours above and below are positive
    assert min(z[j - 1]) > 0.0 and min(z[j + 1]) > 0.0
