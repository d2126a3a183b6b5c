import random
from fractions import Fraction

import pytest

from petersonqc.errors import BudgetError, PreconditionError
from petersonqc.polyalg import (
    FractionField, IdealPresentation, Poly, PolyRing, RatFunc, format_poly,
    groebner, ideals_equal, is_unit_ideal, is_weighted_homogeneous, localize,
    normal_form, quotient_dimension, radical_membership, specialize,
)


def ring2():
    return PolyRing(["x", "y"])


def test_groebner_collapses_redundant_generator():
    R = ring2()
    x = R.var("x")
    gb = groebner([x * x - 1, x - 1])
    assert [str(g) for g in gb] == ["x - 1"]


def test_groebner_single_generator_already_reduced():
    R = PolyRing(["h", "q", "y"])
    h, q, y = (R.var(n) for n in R.variables)
    p = y * y + 2 * h * y - q
    gb = groebner([p])
    # a single generator is its own basis, up to the monic normalization
    assert len(gb) == 1
    assert gb[0] == p.monic()
    assert normal_form(p, gb).is_zero()


def test_groebner_inverted_nilpotent_is_unit_ideal():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    gb = groebner([x * y - 1, x * x])
    assert is_unit_ideal(gb)
    assert [str(g) for g in gb] == ["1"]


def test_quotient_dimension_examples():
    R1 = PolyRing(["x"])
    x = R1.var("x")
    assert quotient_dimension(IdealPresentation(R1, [x * x])) == 2
    # quadratic with the parameter specialized away from zero
    assert quotient_dimension(IdealPresentation(R1, [x * x + 3 * x])) == 2
    R = ring2()
    x, y = R.var("x"), R.var("y")
    I = IdealPresentation(R, [x * x - y, y * y])
    # oracle: grevlex staircase leaves exactly {1, x, y, xy}
    assert quotient_dimension(I) == 4
    assert quotient_dimension(I, order="lex") == 4
    assert quotient_dimension(IdealPresentation(R, [x])) == "infinite"
    assert quotient_dimension(IdealPresentation(R, [R.one()])) == 0


def test_quotient_dimension_invariant_under_shuffle():
    R = PolyRing(["a", "b", "c"])
    a, b, c = (R.var(n) for n in R.variables)
    gens = [a * a - b, b * b - c, c * c]
    rng = random.Random(5)
    base = quotient_dimension(IdealPresentation(R, gens))
    for _ in range(4):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert quotient_dimension(IdealPresentation(R, shuffled)) == base
        assert quotient_dimension(IdealPresentation(R, shuffled), order="lex") == base


def test_weighted_homogeneity():
    R = PolyRing(["h", "y"])
    h, y = R.var("h"), R.var("y")
    assert is_weighted_homogeneous(y * y + 2 * h * y, {"h": 2, "y": 2}) == (True, 4)
    assert is_weighted_homogeneous(y * y + h, {"h": 2, "y": 2}) == (False, None)
    assert is_weighted_homogeneous(R.one(), {"h": 2, "y": 2}) == (True, 0)
    assert is_weighted_homogeneous(R.zero(), {"h": 2, "y": 2}) == (True, None)


def test_specialize():
    R = PolyRing(["h", "q", "y"])
    h, q, y = (R.var(n) for n in R.variables)
    I = IdealPresentation(R, [y * y + 2 * h * y - q])
    J = specialize(I, {"h": Fraction(0), "q": Fraction(0)})
    assert J.ring.variables == ("y",)
    assert [str(g) for g in J.generators] == ["y^2"]
    K = specialize(IdealPresentation(R, [h * y - 1]), {"h": Fraction(0)})
    assert is_unit_ideal(groebner(K))
    empty = specialize(IdealPresentation(R, []), {"h": Fraction(2)})
    assert empty.generators == ()


def test_normal_form_is_multiplicative_on_representatives():
    R = PolyRing(["x", "y", "z"])
    x, y, z = (R.var(n) for n in R.variables)
    gb = groebner([x * x - y * z, y * y - 1])
    rng = random.Random(9)

    def rand_poly():
        p = R.zero()
        for _ in range(rng.randint(1, 4)):
            m = R.one()
            for v in (x, y, z):
                for _ in range(rng.randint(0, 2)):
                    m = m * v
            p = p + m * Fraction(rng.randint(-4, 4))
        return p

    for _ in range(25):
        f, g = rand_poly(), rand_poly()
        lhs = normal_form(f * g, gb)
        rhs = normal_form(normal_form(f, gb) * normal_form(g, gb), gb)
        assert lhs == rhs


def test_rabinowitsch_matches_saturation_dimension():
    # localized quotient dimension equals the dimension after removing the
    # primary components where the inverted element vanishes
    R = PolyRing(["x", "y"])
    x, y = R.var("x"), R.var("y")
    gens = [x * x * (x - 1), y - x]
    I = IdealPresentation(R, gens)
    loc = localize(I, x, "t")
    dim_loc = quotient_dimension(loc)
    # saturation by elimination: Groebner with the auxiliary variable first,
    # keep the polynomials not involving it
    ring_el = PolyRing(["t", "x", "y"], order="lex")
    lifted = [g.lift(ring_el) for g in gens]
    lifted.append(ring_el.var("t") * ring_el.var("x") - ring_el.one())
    gb = groebner(lifted, order="lex")
    sat = [g for g in gb if g.degree_in("t") == 0]
    ring_xy = PolyRing(["x", "y"], order="lex")
    sat_xy = [g.substitute({"t": Fraction(0)}, ring_xy) for g in sat]
    dim_sat = quotient_dimension(IdealPresentation(ring_xy, sat_xy), order="lex")
    assert dim_loc == dim_sat == 1


def test_radical_membership():
    R = PolyRing(["x", "y"])
    x, y = R.var("x"), R.var("y")
    I = IdealPresentation(R, [x * x, y * y * y])
    assert radical_membership(I, x)
    assert radical_membership(I, y)
    assert radical_membership(I, x + y)
    assert not radical_membership(I, x + 1)


def test_budget_error_carries_stats():
    # cyclic-4 style system with a tiny budget
    R = PolyRing(["a", "b", "c", "d"])
    a, b, c, d = (R.var(n) for n in R.variables)
    gens = [a + b + c + d, a * b + b * c + c * d + d * a,
            a * b * c + b * c * d + c * d * a + d * a * b, a * b * c * d - 1]
    with pytest.raises(BudgetError) as err:
        groebner(gens, budget=2)
    assert "pair_reductions" in err.value.stats


def test_groebner_deterministic():
    R = PolyRing(["x", "y", "z"])
    x, y, z = (R.var(n) for n in R.variables)
    gens = [x * y - z, y * z - x, z * x - y]
    first = [format_poly(g) for g in groebner(gens)]
    second = [format_poly(g) for g in groebner(gens)]
    assert first == second


def test_ideals_equal():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    assert ideals_equal([x, y], [x + y, y])
    assert not ideals_equal([x], [x + y, y])


def test_format_poly_canonical():
    R = PolyRing(["y_1", "h_1", "q_1"])
    y, h, q = (R.var(n) for n in R.variables)
    assert format_poly(y * y + 2 * h * y) == "y_1^2 + 2*y_1*h_1"
    assert format_poly(y * y + 2 * h * y - q) == "y_1^2 + 2*y_1*h_1 - q_1"
    assert format_poly(R.zero()) == "0"
    assert format_poly(y * Fraction(5, 2) - Fraction(1, 3)) == "5/2*y_1 - 1/3"


def test_ratfunc_arithmetic():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    f = RatFunc(R.one(), x)
    g = RatFunc(y, R.one())
    assert (f * g) == RatFunc(y, x)
    assert (f + f) == RatFunc(R.const(2), x)
    assert (f - f).is_zero()
    assert f.inverse() == RatFunc(x, R.one())
    # equality via cross multiplication ignores common factors
    assert RatFunc(x * y, x * x) == RatFunc(y, x)
    with pytest.raises(ZeroDivisionError):
        RatFunc(x, R.zero())
    field = FractionField(R)
    assert field.one() == RatFunc.of(R.one())


def test_duplicate_variable_rejected():
    with pytest.raises(PreconditionError):
        PolyRing(["x", "x"])
