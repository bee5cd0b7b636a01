import csv

import numpy as np
import pytest

from polystrata.grids import FIGURES, GridError, emit_grid, grid_rows


@pytest.mark.parametrize("figure", FIGURES)
def test_rows_pass_residual_check(figure):
    rows = grid_rows(figure, samples=15)
    assert rows and all(r["residual"] <= 1e-8 for r in rows)
    keys = [(r["u"], r["s"]) for r in rows]
    assert keys == sorted(keys)


def test_parabola_tangency_exact():
    for r in grid_rows("parabola-tangents", samples=9):
        u, b, c = r["u"], r["x"], r["y"]
        assert r["residual"] == 0
        # the line meets the parabola b^2 = 4c only at b = -2u
        assert (b + 2 * u) ** 2 == pytest.approx(b * b - 4 * c)


def test_cusp_fixture():
    rows = grid_rows("cubic-cusp-tangents", samples=5)
    point = [r for r in rows if r["u"] == 0.75 and r["s"] == 0.0][0]
    assert (point["x"], point["y"]) == (-3 * 0.75**2, 2 * 0.75**3)
    u = 1.0
    assert (-3 * u * u, 2 * u**3) == (-3.0, 2.0)
    assert 4 * (-3.0) ** 3 + 27 * 2.0**2 == 0


def test_swallowtail_points_have_double_root():
    rows = grid_rows("swallowtail", samples=7)
    r = rows[10]
    z, a2, a3, a4 = r["u"], r["s"], r["x"], r["y"]
    P = np.array([1, 0, a2, a3, a4])
    assert abs(np.polyval(P, z)) < 1e-12 and abs(np.polyval(np.polyder(P), z)) < 1e-12


def test_emit_grid_writes_csv(tmp_path):
    out = tmp_path / "g.csv"
    n = emit_grid("parabola-tangents", 5, out)
    with out.open() as fh:
        rows = list(csv.DictReader(fh))
    assert n == len(rows) == 25
    assert list(rows[0]) == ["figure", "u", "s", "x", "y", "residual"]
    assert float(rows[0]["x"]) == -4.0


def test_bad_arguments():
    with pytest.raises(ValueError):
        grid_rows("nope")
    with pytest.raises(ValueError):
        grid_rows("swallowtail", samples=1)
    with pytest.raises(GridError):
        grid_rows("swallowtail", samples=5, tol=0.0 - 1.0)
