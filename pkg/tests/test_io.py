import json

import numpy as np
import pytest

from polystrata.io import (
    InputError,
    parse_scalar,
    partition_from_json,
    poly_from_json,
    poly_to_json,
    roots_from_json,
    roots_to_json,
)
from polystrata.partitions import Partition
from polystrata.poly_core import MonicPoly, RootConfig


def test_scalars():
    assert parse_scalar(2) == 2
    assert parse_scalar([1, -2]) == 1 - 2j
    assert parse_scalar("1+2j") == 1 + 2j
    for bad in (True, [1, 2, 3], "x", float("nan"), None):
        with pytest.raises(InputError):
            parse_scalar(bad)


def test_poly_round_trip(rng):
    P = MonicPoly(rng.standard_normal(5) + 1j * rng.standard_normal(5))
    assert poly_from_json(json.dumps(poly_to_json(P))) == P
    Q = poly_from_json('{"degree": 2, "coeffs": [-3, 2]}', field="real")
    assert Q == MonicPoly([-3.0, 2.0], field="real")
    assert poly_from_json("[1, 2]") == MonicPoly([1, 2])


@pytest.mark.parametrize("text", [
    '{"degree": 3, "coeffs": [1]}',
    '{"coeffs": []}',
    '{"degree": 2}',
    "[1, ",
    '"abc"',
])
def test_poly_rejects_malformed(text):
    with pytest.raises(InputError):
        poly_from_json(text)


def test_poly_real_mode_rejects_complex():
    with pytest.raises(InputError):
        poly_from_json('{"degree": 1, "coeffs": [[0, 1]]}', field="real")


def test_roots_and_partitions():
    rc = RootConfig([1, 2j], [2, 1])
    back = roots_from_json(json.dumps(roots_to_json(rc)))
    assert np.array_equal(back.roots, rc.roots) and back.multiplicities == rc.multiplicities
    assert roots_from_json("[4, 4, 6]").multiplicities == (2, 1)
    assert partition_from_json("3,2,1") == Partition((3, 2, 1))
    assert partition_from_json("[2, 2]") == Partition((2, 2))
    with pytest.raises(InputError):
        partition_from_json("[2, -1]")
