import pytest

from mf7cert.exactalg import MF7, FREE_Z
from mf7cert.parsing import ParseError, parse_expr
from mf7cert.weierstrass import kappa_images


def test_relation_parses_to_zero():
    assert parse_expr("z1*z2 + z2*z3 + z3*z1").is_zero()


def test_relation_survives_without_quotient():
    assert not parse_expr("z1*z2 + z2*z3 + z3*z1", FREE_Z).is_zero()


def test_kappa_a2():
    assert parse_expr("1/4*(z1-z2+z3)^2 - z2*z3") == kappa_images()[0]


@pytest.mark.parametrize(
    "text,offset",
    [("z1^2*(", 7), ("z1 +* z2", 5), ("(z1", 4), ("z1^z2", 4), ("z1/z2", 4), ("z1 $ z2", 4)],
)
def test_syntax_errors_report_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.position == offset


def test_unknown_identifier():
    with pytest.raises(ParseError, match="unknown identifier 'w'"):
        parse_expr("z1 + w")


@pytest.mark.parametrize(
    "text,expected",
    [
        ("-z1^2", "-z1^2"),
        ("2*z1^2^1", None),
        ("  z1 *  z3 ", "z1*z3"),
        ("3/6*z3", "1/2*z3"),
        ("sigma1^2", "z1^2 + z2^2 + z3^2"),
    ],
)
def test_round_trips(text, expected):
    if expected is None:
        with pytest.raises(ParseError):
            parse_expr(text)
    else:
        assert str(parse_expr(text)) == expected


def test_aliases():
    z = MF7.gens_dict()
    assert parse_expr("p") == z["z1"] ** 2 * z["z2"] + z["z2"] ** 2 * z["z3"] + z["z3"] ** 2 * z["z1"]
    assert parse_expr("sigma3") == z["z1"] * z["z2"] * z["z3"]
