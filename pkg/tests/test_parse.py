import pytest

from hcstd.coeff import DomainSpec
from hcstd.parse import (ParseError, format_monomial, format_polynomial,
                         parse_polynomial)
from hcstd.ring import OrderSpec

Q = DomainSpec(0)
QT = DomainSpec(0, ("t",))
DS3 = OrderSpec("ds", ("x", "y", "z"))
DS2 = OrderSpec("ds", ("x", "y"))


def test_implicit_powers():
    f = parse_polynomial("x3y3", Q, DS3)
    assert f.lm() == (3, 3, 0)
    g = parse_polynomial("x3y3+x5y2+2x2y5", Q, DS3)
    assert len(g) == 3


def test_explicit_powers_and_star():
    assert parse_polynomial("x^3*y^3", Q, DS3) == \
        parse_polynomial("x3y3", Q, DS3)


def test_juxtaposition_and_parens():
    f = parse_polynomial("xyz*(x+y+z)^2+(x+y+z)^3", Q, DS3)
    g = parse_polynomial("xyz(x+y+z)^2+(x+y+z)^3", Q, DS3)
    assert f == g
    assert len(f) > 3


def test_rational_coefficients():
    f = parse_polynomial("x/2+y/3", Q, DS2)
    parts = {t.monomial: t.coefficient.val for t in f.terms}
    assert parts[(1, 0)] == pytest.approx(0.5) or str(parts[(1, 0)]) == "1/2"
    assert str(parts[(0, 1)]) == "1/3"


def test_parameter_coefficients():
    f = parse_polynomial("t2*x7y7+2t*x6y9", QT, DS3)
    assert len(f) == 2
    g = parse_polynomial("(t2+1)*x+y", QT, DS2)
    assert len(g) == 2


def test_unary_minus_and_constants():
    f = parse_polynomial("-x+3", Q, DS2)
    assert f.lm() == (0, 0)
    assert format_polynomial(f) == "3-x"


def test_division_rules():
    with pytest.raises(ParseError):
        parse_polynomial("x/y", Q, DS2)
    with pytest.raises(ParseError):
        parse_polynomial("x/0", Q, DS2)
    f = parse_polynomial("x/2", Q, DS2)
    assert str(f.lc().val) == "1/2"


def test_unknown_name():
    with pytest.raises(ParseError):
        parse_polynomial("x+q", Q, DS2)
    with pytest.raises(ParseError):
        parse_polynomial("t*x", Q, DS2)       # t not a parameter of Q


def test_error_positions():
    try:
        parse_polynomial("x+ +", Q, DS2)
    except ParseError as e:
        assert e.pos >= 2
    else:
        pytest.fail("expected ParseError")


def test_format_monomial():
    assert format_monomial((24, 0, 7), ("x", "y", "z")) == "x^24*z^7"
    assert format_monomial((0, 0, 0), ("x", "y", "z")) == "1"


def test_printer_examples():
    f = parse_polynomial("y10+t2*x7y7", QT, DS3)
    text = format_polynomial(f)
    assert parse_polynomial(text, QT, DS3) == f
    g = parse_polynomial("x-y", Q, DS2)
    assert format_polynomial(g) == "x-y"
