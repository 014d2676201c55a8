from __future__ import annotations

import random

from pytest import mark, raises

from crmodels.approx import classify_float
from crmodels.field import I, ONE, SQRT2, CoeffK
from crmodels.linalg import Mat2
from crmodels.symbols import ExtensionRequired, classify_bigraded, representative, transform_pair

CLASSES = [
    ("R1", 1, CoeffK.from_int(2), None), ("R1", -1, CoeffK.from_int(3), None),
    ("R2", None, None, I), ("R3", 1, None, None), ("R3", -1, None, None),
    ("R4", 1, None, None), ("R4", -1, None, None), ("R5", None, None, None),
    ("R6", None, None, None), ("R7", None, None, None),
]


def _gauss(rng):
    return CoeffK.gaussian(rng.randint(-2, 2), rng.randint(-2, 2))


@mark.parametrize("row,eps,lam,unit", CLASSES)
def test_float_backend_agrees_with_the_exact_classifier(row, eps, lam, unit):
    rng = random.Random(f"{row}{eps}")
    H, S = representative(row, eps or 1, lam, unit)
    for _ in range(5):
        while True:
            U = Mat2(_gauss(rng), _gauss(rng), _gauss(rng), _gauss(rng))
            if not U.det().is_zero():
                break
        H2, S2 = transform_pair(H, S, rng.choice([ONE, I]), U, _gauss(rng) + 3)
        approx = classify_float(H2, S2)
        assert approx["backend"] == "float"
        assert approx["row"] == row
        if eps is not None:
            assert approx["params"]["eps"] == eps
        if lam is not None:
            assert abs(float(approx["params"]["lambda"]) - float(lam.to_fraction())) < 1e-20


def test_float_backend_handles_pairs_the_exact_path_cannot():
    H, S = Mat2.identity(), Mat2(1, 1, 1, 3)
    with raises(ExtensionRequired):
        classify_bigraded(H, S)
    approx = classify_float(H, S)
    assert approx["row"] == "R1"
    assert float(approx["params"]["lambda"]) > 1


def test_unimodular_parameter():
    H, S = representative("R2", unit=(ONE + I) / SQRT2)
    approx = classify_float(H, S)
    assert approx["row"] == "R2"
    assert abs(float(approx["params"]["theta_over_pi"]) - 0.25) < 1e-20
    assert approx["tolerance"] == "1e-30"
