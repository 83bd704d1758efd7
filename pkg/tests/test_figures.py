import hashlib

import numpy as np
import pytest

import coherekit as ck
from coherekit.figures import FIG1_HEADER, FIG2_HEADER, FIG3_HEADER, format_cell, rows_to_csv


def test_fig1_small_grid_shape_and_values():
    header, rows = ck.fig1_rows(steps=11)
    assert header == FIG1_HEADER
    assert len(rows) == 121
    as_dict = {(round(x, 9), round(y, 9)): gap for x, y, gap in rows}
    # corners sit outside the unit disk and carry empty cells
    assert as_dict[(-1.0, -1.0)] is None
    assert as_dict[(1.0, 1.0)] is None
    # the ridge along y = 0 is exactly zero
    for x in (-1.0, -0.4, 0.0, 0.4, 1.0):
        assert as_dict[(round(x, 9), 0.0)] == 0.0
    assert abs(as_dict[(0.0, 1.0)] - 1.0) < 1e-12
    assert abs(as_dict[(0.6, 0.8)] - (1.0 - 0.6)) < 1e-12


def test_fig1_inside_cells_match_closed_form():
    _, rows = ck.fig1_rows(steps=21)
    for x, y, gap in rows:
        if gap is None:
            assert x * x + y * y > 1.0 + 1e-12
            continue
        assert abs(gap - (np.hypot(x, y) - abs(x))) < 1e-12
        assert gap >= 0.0


def test_fig2_small_grid_zero_valley_and_symmetry():
    header, rows = ck.fig2_rows(steps=9)
    assert header == FIG2_HEADER
    assert len(rows) == 81
    for re, im, pipeline, closed in rows:
        assert abs(pipeline - closed) < 1e-9
        if im == 0.0:
            # real coherent states are projection fixed points
            assert abs(pipeline) <= 1e-12
        else:
            assert pipeline > 0.0


def test_fig2_depends_only_on_imaginary_part_magnitude():
    _, rows = ck.fig2_rows(steps=9)
    gaps = {}
    for re, im, pipeline, _ in rows:
        gaps[(round(re, 9), round(im, 9))] = pipeline
    for re, im in list(gaps):
        assert abs(gaps[(re, im)] - gaps[(re, -im)]) < 1e-12


def test_fig3_small_grid_columns():
    header, rows = ck.fig3_rows(steps=9)
    assert header == FIG3_HEADER
    assert len(rows) == 81
    for re, im, pipeline, printed, diff in rows:
        assert abs(diff - (pipeline - printed)) < 1e-15
        assert pipeline >= 0.0
        assert printed >= 0.0
        if im == 0.0 and re >= 0.0:
            # real squeezing keeps the state real: zero gap, zero discrepancy
            assert pipeline == 0.0
            assert printed == 0.0
        if im != 0.0:
            # the printed no-sqrt formula overstates the gap off the axis
            assert printed > pipeline


def test_format_cell_rules():
    assert format_cell(None) == ""
    assert format_cell(-0.0) == "0"
    assert format_cell(0.25) == "0.25"
    assert format_cell(1.0 / 3.0) == "0.333333333333"
    assert format_cell(2) == "2"


def test_rows_to_csv_layout():
    text = rows_to_csv(("a", "b"), [(1.0, None), (0.5, -0.0)])
    assert text == "a,b\n1,\n0.5,0\n"


def test_csv_regeneration_is_byte_identical():
    for builder, steps in ((ck.fig1_rows, 15), (ck.fig2_rows, 7), (ck.fig3_rows, 7)):
        h1, r1 = builder(steps=steps)
        h2, r2 = builder(steps=steps)
        a = rows_to_csv(h1, r1).encode()
        b = rows_to_csv(h2, r2).encode()
        assert hashlib.sha256(a).hexdigest() == hashlib.sha256(b).hexdigest()


def test_axis_validation():
    with pytest.raises(ValueError):
        ck.fig1_rows(steps=1)
