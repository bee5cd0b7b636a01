import io
import json

import pytest

from polystrata.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_solve_json():
    code, out, _ = call("solve", "--poly", '{"degree":2,"coeffs":[-3,2]}')
    assert code == 0
    obj = json.loads(out)
    # complex scalars are written as [re, im]
    assert sorted(r["root"][0] for r in obj["roots"]) == pytest.approx([1, 2])
    assert all(r["root"][1] == 0 for r in obj["roots"])
    assert all(r["mult"] == 1 for r in obj["roots"])


def test_solve_csv_from_roots():
    code, out, _ = call("solve", "--roots", '[{"root":1,"mult":2},{"root":-1,"mult":1}]', "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "root_re,root_im,mult" and len(lines) == 3


def test_discriminant_and_chamber():
    code, out, _ = call("discriminant", "--poly", "[0,-1,0]", "--field", "real")
    obj = json.loads(out)
    assert code == 0 and obj["discriminant"] == pytest.approx([4, 0]) and obj["chamber"] == "U3"


def test_stratify():
    code, out, _ = call("stratify", "--roots", '[{"root":4,"mult":3},{"root":6,"mult":3},{"root":8,"mult":1}]')
    obj = json.loads(out)
    assert code == 0 and obj["mu"] == [3, 3, 1]
    assert [m["in_D"] for m in obj["memberships"]] == [True] * 3 + [False] * 4


def test_tangent_space_and_count():
    code, out, _ = call("tangent-space", "--roots", '[{"root":1,"mult":2},{"root":2,"mult":1}]')
    obj = json.loads(out)
    assert code == 0 and obj["dim"] == 2 and [c[0] for c in obj["divisor"]] == pytest.approx([1, -1])
    code, out, _ = call("tangent-count", "--roots", "[0,1,2,3,4]", "--mu", "2,1,1,1")
    assert code == 0 and json.loads(out)["count"] == 5


def test_flow_and_reduce_round_trip():
    code, out, _ = call("flow", "--poly", "[0,0]", "--t", "1")
    assert code == 0
    poly = json.loads(out)["poly"]
    assert [c[0] for c in poly["coeffs"]] == pytest.approx([-2, 1])
    code, out, _ = call("reduce", "--poly", json.dumps(poly))
    obj = json.loads(out)
    assert [c[0] for c in obj["poly"]["coeffs"]] == pytest.approx([0, 0], abs=1e-15)
    assert obj["t_star"] == pytest.approx([-1, 0])


@pytest.mark.parametrize(
    "argv, value",
    [
        (["down1", "--mu", "3,2,1"], [2, 1]),
        (["up1", "--mu", "3,2,1,1"], [4, 3]),
        (["uplus", "--mu", "2,1", "--kappa", "1,1"], [2, 1, 1, 1]),
        (["gamma", "--kappa", "1", "--tau", "2,1,1,1"], 4),
        (["deg", "--mu", "3,1"], {"deg": 6, "dual_bound": 6}),
    ],
)
def test_partition_ops(argv, value):
    code, out, _ = call("partition", *argv)
    assert code == 0
    got = json.loads(out)["result"]
    if isinstance(value, dict):
        assert got["deg"] == value["deg"]
    else:
        assert got == value


def test_partition_resdown1():
    code, out, _ = call("partition", "resdown1", "--mu", "3,2,1,1", "--tau", "3,3,1")
    assert code == 0 and json.loads(out)["result"]["count"] == 2


def test_grid(tmp_path):
    out = tmp_path / "p.csv"
    code, stdout, _ = call("grid", "parabola-tangents", "--samples", "3", "--out", str(out))
    assert code == 0 and json.loads(stdout)["rows"] == 9 and out.exists()


def test_check_suite():
    code, out, _ = call("check", "--suite", "flow", "--seed", "1", "--samples", "20")
    obj = json.loads(out)
    assert code == 0 and obj["results"][0]["ok"]


@pytest.mark.parametrize(
    "argv",
    [
        ["solve"],
        ["solve", "--poly", "{bad json"],
        ["solve", "--poly", '{"degree":3,"coeffs":[1,2]}'],
        ["discriminant", "--poly", "[1]"],
        ["flow", "--poly", "[0,0]", "--t", "[0,1]", "--field", "real"],
        ["tangent-count", "--poly", "[0,0]", "--mu", "2,2"],
        ["partition", "gamma", "--kappa", "1"],
        ["partition", "resdown1", "--mu", "2,2", "--tau", "3,1"],
        ["nosuch"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_grid_bad_path_exit_2(tmp_path):
    code, _, _ = call("grid", "swallowtail", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2
