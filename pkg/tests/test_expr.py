import cmath

import numpy as np
import pytest

from holoflow import (
    BadParameter,
    Compose,
    Const,
    Exp,
    Mobius,
    Neg,
    Poly,
    PoleError,
    Product,
    Ratio,
    Sum,
    Var,
    Z,
)

CAYLEY = Mobius(1j, 1j, -1.0, 1.0)


def test_eval_examples():
    assert Poly((0, -1)).eval(0.5) == -0.5
    assert CAYLEY.eval(0j) == 1j
    assert Compose(Exp(), Poly((0, 1))).eval(0j) == 1.0


def test_eval_cayley_at_half():
    assert CAYLEY.eval(0.5) == pytest.approx(3j)


def test_pole_raises():
    with pytest.raises(PoleError):
        CAYLEY.eval(1.0 + 0j)
    with pytest.raises(PoleError):
        Ratio(Const(1.0), Poly((1, -1))).eval(1.0 + 0j)


def test_degenerate_mobius_rejected():
    with pytest.raises(BadParameter):
        Mobius(1, 2, 2, 4)


def test_zero_denominator_rejected_at_construction():
    with pytest.raises(BadParameter):
        Ratio(Const(1.0), Const(0.0))
    with pytest.raises(BadParameter):
        Ratio(Const(1.0), Poly((0,)))


def test_operator_sugar():
    G = 1 - Z**2
    assert G.eval(0.5j) == pytest.approx(1 + 0.25)
    assert (Z / (1 - Z)).eval(0.5) == pytest.approx(1.0)
    assert (-Z).eval(0.25) == -0.25
    assert (2 * Z + 1).eval(3.0) == 7.0


def test_poly_derivative():
    assert Poly((0, 0, 1)).derivative() == Poly((0, 2))
    assert Const(3 + 1j).derivative() == Const(0j)


def _finite_difference(f, z, step=1e-5):
    return (f.eval(z + step) - f.eval(z - step)) / (2 * step)


_PROBES = [0.3 * cmath.exp(2j * cmath.pi * k / 20) for k in range(20)]

_VARIANTS = [
    Const(2.5 - 1j),
    Var(),
    Poly((1, -2, 0.5, 3j)),
    Mobius(1j, 1j, -1.0, 1.0),
    Ratio(Const(1.0), Poly((1, -1))),
    Sum(Poly((0, 1)), Exp()),
    Product(Poly((1, 1)), Poly((1, -1))),
    Neg(Poly((0, 0, 1))),
    Exp(),
    Compose(Exp(), Poly((0, 0, 1))),
    Compose(Mobius(1, 0, 0.5, 1.0), Poly((0, 2))),
]


@pytest.mark.parametrize("f", _VARIANTS, ids=lambda f: type(f).__name__)
def test_derivative_matches_finite_differences(f):
    d = f.derivative()
    for z in _PROBES:
        want = _finite_difference(f, z)
        got = d.eval(z)
        assert abs(got - want) <= 1e-6 * (1 + abs(got))


def test_mobius_derivative_closed_form():
    d = CAYLEY.derivative()
    for z in _PROBES:
        assert d.eval(z) == pytest.approx(2j / (1 - z) ** 2, rel=1e-12)


def test_str_round_trips_through_grammar():
    from holoflow import parse_symbol
    for f in [Poly((1, -2, 0.5)), CAYLEY, Sum(Const(1), Neg(Poly((0, 0, 1)))),
              Compose(Exp(), Poly((0, 2))), Ratio(Const(1), Poly((1, -1)))]:
        g = parse_symbol(str(f))
        for z in _PROBES:
            assert g.eval(z) == pytest.approx(f.eval(z), rel=1e-12, abs=1e-12)


def test_trees_are_hashable_and_equal_by_structure():
    assert Poly((0, 1)) == Poly((0, 1))
    assert hash(Sum(Z, Const(1))) == hash(Sum(Var(), Const(1.0)))
