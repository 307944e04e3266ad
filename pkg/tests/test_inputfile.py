"""Tests for the input file format."""

import pytest

from versal import ParseError, format_expr, parse_input


def parse(text):
    return parse_input(text, source="<test>")


def test_minimal_ungraded_input():
    sys = parse("ring: QQ\nvars: x y\ngenerators:\n    x^2 - y^3\n")
    assert sys.ring.x_vars == ("x", "y")
    assert not sys.ring.is_graded
    assert len(sys.generators) == 1
    assert format_expr(sys.generators[0]) == "-y^3 + x^2"


def test_comments_and_blank_lines_ignored():
    sys = parse(
        "# a comment\n"
        "ring: QQ\n"
        "\n"
        "vars: x y   # trailing comment\n"
        "generators:\n"
        "    x^2 - y^3  # the cusp\n"
        "\n")
    assert len(sys.generators) == 1


def test_scalar_degrees():
    sys = parse("ring: QQ\nvars: x y\ndegrees: 3 2\ngenerators:\n    x^2 - y^3\n")
    assert sys.ring.is_graded
    assert sys.ring.x_degrees == ((3,), (2,))


def test_tuple_degrees():
    sys = parse(
        "ring: QQ\nvars: x y z\n"
        "degrees: (1,0) (0,1) (1,1)\n"
        "generators:\n    x*y - z\n")
    assert sys.ring.grading_rank == 2
    assert sys.ring.x_degrees == ((1, 0), (0, 1), (1, 1))


def test_multiple_generators_keep_order():
    sys = parse(
        "ring: QQ\nvars: x y\ngenerators:\n    x^2\n    y^2\n    x*y\n")
    assert [format_expr(g) for g in sys.generators] == ["x^2", "y^2", "x*y"]


# -- rejected inputs --------------------------------------------------------

def err(text):
    with pytest.raises(ParseError) as exc:
        parse(text)
    return str(exc.value)


def test_only_qq_supported():
    msg = err("ring: ZZ\nvars: x\ngenerators:\n    x\n")
    assert "QQ" in msg and "line 1" in msg


def test_duplicate_variables():
    assert "line 2" in err("ring: QQ\nvars: x x\ngenerators:\n    x\n")


def test_bad_variable_name():
    assert "line 2" in err("ring: QQ\nvars: x 2y\ngenerators:\n    x\n")


def test_degree_count_mismatch():
    msg = err("ring: QQ\nvars: x y\ndegrees: 1\ngenerators:\n    x\n")
    assert "line 3" in msg


def test_degree_rank_mismatch():
    msg = err("ring: QQ\nvars: x y\ndegrees: (1,0) 2\ngenerators:\n    x\n")
    assert "line 3" in msg


def test_malformed_degree_entry():
    assert "line 3" in err(
        "ring: QQ\nvars: x y\ndegrees: one two\ngenerators:\n    x\n")


def test_unknown_directive():
    assert "line 1" in err("order: lex\nring: QQ\nvars: x\ngenerators:\n    x\n")


def test_generator_outside_block():
    assert "line 3" in err("ring: QQ\nvars: x\n    x^2\ngenerators:\n    x\n")


def test_missing_generators():
    msg = err("ring: QQ\nvars: x y\n")
    assert "generators" in msg


def test_missing_vars():
    msg = err("ring: QQ\ngenerators:\n    x\n")
    assert "vars" in msg


def test_zero_generator_rejected():
    assert "zero" in err("ring: QQ\nvars: x\ngenerators:\n    x - x\n")


def test_generator_parse_error_names_line():
    assert "line 4" in err("ring: QQ\nvars: x y\ngenerators:\n    x +* y\n")


def test_inhomogeneous_generator_under_grading():
    msg = err(
        "ring: QQ\nvars: x y\ndegrees: 1 1\ngenerators:\n    x^2 + y\n")
    assert "homogeneous" in msg and "line 5" in msg


def test_ungraded_ring_allows_inhomogeneous():
    sys = parse("ring: QQ\nvars: x y\ngenerators:\n    x^2 + y\n")
    assert len(sys.generators) == 1
