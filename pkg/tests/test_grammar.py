import pytest

from holoflow import ParseError, parse_symbol
from holoflow.expr import Compose, Exp, Mobius, Neg, Poly, Var


def test_basic_forms():
    assert parse_symbol("-z").eval(0.5) == -0.5
    assert parse_symbol("(1-z)*(1+z)").eval(0.5j) == pytest.approx(1.25)
    assert parse_symbol("1-z^2").eval(0.5j) == pytest.approx(1.25)
    assert parse_symbol("exp(z)").eval(0j) == 1.0
    assert parse_symbol("mobius(i,i,-1,1)") == Mobius(1j, 1j, -1, 1)


def test_numbers():
    assert parse_symbol("2.5e-3").eval(0j) == 2.5e-3
    assert parse_symbol("0.5i").eval(0j) == 0.5j
    assert parse_symbol("i").eval(0j) == 1j
    assert parse_symbol(".25").eval(0j) == 0.25


def test_power_of_variable_becomes_polynomial():
    assert parse_symbol("z^3") == Poly((0, 0, 0, 1))
    assert parse_symbol("z^0").eval(2.0) == 1.0


def test_power_of_general_base():
    f = parse_symbol("(1-z)^2")
    assert f.eval(3.0) == pytest.approx(4.0)


def test_division():
    f = parse_symbol("1/(1-z)")
    assert f.eval(0.5) == pytest.approx(2.0)


def test_unary_sequences():
    assert parse_symbol("--z").eval(0.25) == 0.25
    assert parse_symbol("+z").eval(0.25) == 0.25
    assert parse_symbol("-z^2").eval(2.0) == -4.0  # minus binds last


def test_poly_and_compose_functions():
    assert parse_symbol("poly(0,1,1)").eval(2.0) == pytest.approx(6.0)
    f = parse_symbol("compose(exp(z), poly(0,0,1))")
    assert isinstance(f, Compose)
    assert f.eval(0j) == 1.0


def test_exp_of_z_is_a_leaf():
    assert parse_symbol("exp(z)") == Exp()
    assert isinstance(parse_symbol("exp(2*z)"), Compose)


def test_error_positions():
    with pytest.raises(ParseError) as err:
        parse_symbol("(((")
    assert "position 3" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse_symbol("1+*2")
    assert "position 2" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse_symbol("z$")
    assert "position 1" in str(err.value)


def test_unknown_identifier():
    with pytest.raises(ParseError):
        parse_symbol("sin(z)")


def test_mobius_arity_and_constant_arguments():
    with pytest.raises(ParseError):
        parse_symbol("mobius(1,2,3)")
    with pytest.raises(ParseError):
        parse_symbol("mobius(z,1,0,1)")
    m = parse_symbol("mobius(1+2i, 0, 0, 1)")
    assert m == Mobius(1 + 2j, 0, 0, 1)


def test_trailing_junk_is_an_error():
    with pytest.raises(ParseError) as err:
        parse_symbol("z z")
    assert "position 2" in str(err.value)


def test_exponent_validation():
    with pytest.raises(ParseError):
        parse_symbol("z^1.5")
    with pytest.raises(ParseError):
        parse_symbol("z^100")


def test_whitespace_is_free():
    a = parse_symbol(" ( 1 - z ) * ( 1 + z ) ")
    assert a.eval(0.25) == pytest.approx((1 - 0.25) * (1 + 0.25))


def test_negation_node_shape():
    assert isinstance(parse_symbol("-z"), Neg)
    assert isinstance(parse_symbol("-z").arg, Var)
