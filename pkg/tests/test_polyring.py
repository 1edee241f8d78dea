import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramapoly.polyring import (ParseError, Poly, PolyError, UniverseMismatch,
                               parse, poly_prod)

XYZT = ("x", "y", "z", "t")
XT = ("x", "t")


def V(name, universe=XYZT):
    return Poly.var(universe, name)


def test_parse_basics():
    p = parse("x+y+z+t", XYZT)
    assert p == V("x") + V("y") + V("z") + V("t")
    assert parse("0", XYZT).is_zero()
    assert parse("0", XYZT).terms == {}
    assert parse("3*x*y + x^2", XYZT).render() == "x^2 + 3*x*y"


def test_parse_relaxed_forms():
    assert parse("3x", XT) == Poly.var(XT, "x") * 3
    assert parse("(x+1)(x+2)", XT) == parse("x^2 + 3x + 2", XT)
    assert parse("(x+t)^2", XT) == parse("x^2 + 2*x*t + t^2", XT)
    assert parse("-x + - 3", XT) == -Poly.var(XT, "x") - 3
    assert parse("2 - t", XT) == 2 - Poly.var(XT, "t")


def test_parse_errors_name_position():
    with pytest.raises(ParseError) as err:
        parse("x + w", XYZT)
    assert "w" in str(err.value) and "position 4" in str(err.value)
    with pytest.raises(ParseError):
        parse("x +", XYZT)
    with pytest.raises(ParseError):
        parse("x ? y", XYZT)
    with pytest.raises(ParseError):
        parse("(x+y", XYZT)
    with pytest.raises(ParseError):
        parse("x^y", XYZT)


def test_render_canonical_order():
    # graded order first, then lexicographic by the universe order
    q3 = "x^2 + 3*x*y + 3*x*z + 3*x*t + 3*y^2 + 4*y*z + 5*y*t + 2*z^2 + 4*z*t + 2*t^2"
    assert parse(q3, XYZT).render() == q3
    assert parse("t + x + 4", XYZT).render() == "x + t + 4"
    assert parse("- x^2 - 1", XT).render() == "-x^2 - 1"
    assert Poly.zero(XT).render() == "0"
    assert Poly.const(XT, -7).render() == "-7"


def test_arith_examples():
    x, y = V("x"), V("y")
    assert (x + y) * (x - y) == x * x - y * y
    p = parse("3x y + z", XYZT)
    assert p + Poly.zero(XYZT) == p
    prod = poly_prod((Poly.var(XT, "x") + k + Poly.var(XT, "t") * k
                      for k in range(1, 4)), XT)
    expected = parse("x^3+6x^2+11x+6+(6x^2+22x+18)t+(11x+18)t^2+6t^3", XT)
    assert prod == expected


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        parse("x", XT) + parse("x", XYZT)
    with pytest.raises(UniverseMismatch):
        parse("x", XT).substitute({"y": 1})


def test_substitute_examples():
    q2 = parse("x+y+z+t", XYZT)
    assert q2.substitute({"t": -V("y")}) == parse("x+z", XYZT)
    q3 = parse("x^2+3xy+3xz+3xt+3y^2+4yz+5yt+2z^2+4zt+2t^2", XYZT)
    assert q3.substitute({}) == q3
    dual = q3.substitute({"x": V("x") + 3 * V("z") + 3 * V("t"),
                          "z": -V("t"), "t": -V("z")})
    assert dual == q3
    # simultaneous, not sequential: swapping z and t must not collapse them
    p = parse("z - t", XYZT)
    assert p.substitute({"z": V("t"), "t": V("z")}) == parse("t - z", XYZT)


def test_shifted_derivative_examples():
    one = Poly.const(XYZT, 1)
    assert one.shifted_derivative("y", 1) == one
    y2 = parse("y^2", XYZT)
    assert y2.shifted_derivative("y", 0) == parse("2y^2", XYZT)
    c = Poly.const(XYZT, 5)
    assert c.shifted_derivative("y", 3) == Poly.const(XYZT, 15)
    # the operator applied to 1 builds the first nontrivial polynomial
    built = parse("x+z", XYZT) * one + (V("y") + V("t")) * one.shifted_derivative("y", 1)
    assert built == parse("x+y+z+t", XYZT)
    with pytest.raises(PolyError):
        one.shifted_derivative("y", -1)


def test_evaluate_examples():
    q3 = parse("x^2+3xy+3xz+3xt+3y^2+4yz+5yt+2z^2+4zt+2t^2", XYZT)
    assert q3.evaluate({"x": 1, "y": 1, "z": 1, "t": 1}) == 30
    assert Poly.zero(XYZT).evaluate({}) == 0
    with pytest.raises(PolyError):
        q3.evaluate({"x": 1, "y": 1, "z": 1})
    # variables that do not occur need no assignment
    assert parse("x^2", XYZT).evaluate({"x": 3}) == 9


def test_extend():
    p = parse("x + 2t", XT)
    q = p.extend(XYZT)
    assert q.universe == XYZT
    assert q == parse("x + 2t", XYZT)
    with pytest.raises(UniverseMismatch):
        parse("x+y", XYZT).extend(XT)


def test_pow_and_neg():
    x = Poly.var(XT, "x")
    assert x ** 0 == Poly.const(XT, 1)
    assert (x + 1) ** 2 == parse("x^2 + 2x + 1", XT)
    with pytest.raises(PolyError):
        x ** -1


coeffs = st.integers(min_value=-9, max_value=9)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda d: Poly(XT, d))


@given(polys, polys, polys)
@settings(max_examples=150, deadline=None)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert p - p == Poly.zero(XT)


@given(polys)
@settings(max_examples=150, deadline=None)
def test_parse_render_round_trip(p):
    assert parse(p.render(), XT) == p


@given(polys)
@settings(max_examples=100, deadline=None)
def test_substitute_identity_assignment(p):
    idmap = {name: Poly.var(XT, name) for name in XT}
    assert p.substitute(idmap) == p


@given(polys, st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_shifted_derivative_decomposition(p, n):
    # the n-shift is the 0-shift plus n copies of the polynomial
    assert p.shifted_derivative("t", n) == p * n + p.shifted_derivative("t", 0)
