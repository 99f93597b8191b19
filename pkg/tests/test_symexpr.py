import random
from fractions import Fraction

import pytest

from homvar.jet_index import JetCoord, code_of
from homvar.suite import random_scalar
from homvar.symexpr import (
    Polynomial,
    Scalar,
    coordinate_scalar,
    evaluate,
    is_zero,
    max_order,
    partial,
    scalar_arith,
    scalar_equals,
)
from homvar.variational import determinant_scalar

from conftest import poly_partial_by_interpolation, random_point, rational_partial_by_restriction

u = coordinate_scalar


def test_determinant_as_one_scalar():
    d12 = scalar_arith("sub", scalar_arith("mul", u(1, 1), u(2, 2)),
                       scalar_arith("mul", u(1, 2), u(2, 1)))
    assert d12.equals(determinant_scalar(1, 2))
    assert len(d12.num.terms) == 2
    assert not d12.den


def test_x_minus_x_is_zero():
    x = determinant_scalar(1, 2) / determinant_scalar(2, 3)
    assert is_zero(scalar_arith("sub", x, x))


def test_div_keeps_structure():
    d23 = determinant_scalar(2, 3)
    d12 = determinant_scalar(1, 2)
    f1 = scalar_arith("div", d23, d12)
    assert f1.num == d23.num
    assert len(f1.den) == 1
    assert f1.den[0][0] == d12.num
    with pytest.raises(ZeroDivisionError):
        scalar_arith("div", d23, Scalar.zero())


def test_partial_examples():
    d12 = determinant_scalar(1, 2)
    assert partial(d12, JetCoord.of(1, 1)).equals(u(2, 2))
    assert is_zero(partial(Scalar.from_int(7), JetCoord.of(1, 1)))
    f1 = determinant_scalar(2, 3) / d12
    expected = -determinant_scalar(2, 3) * u(2, 2) / d12 ** 2
    assert partial(f1, JetCoord.of(1, 1)).equals(expected)


def test_partial_against_interpolation_oracle():
    rng = random.Random(9)
    for _ in range(12):
        f = random_scalar(rng, n_fields=2, max_order=2)
        code = code_of(rng.randint(1, 2), 1, rng.randint(0, 1))
        pt = random_point([f], seed=rng.randint(0, 10**6))
        pt.setdefault(code, Fraction(3, 2))
        want = poly_partial_by_interpolation(f, code, pt)
        got = f.partial(code).evaluate(pt)
        assert Fraction(got) == want


def test_rational_partial_against_restriction_oracle():
    d12 = determinant_scalar(1, 2)
    f = determinant_scalar(2, 3) / d12
    code = code_of(1, 1, 0)
    pt = random_point([f], seed=4)
    want = rational_partial_by_restriction(f, code, pt)
    got = f.partial(code).evaluate(pt)
    assert Fraction(got) == want


def test_is_zero_examples():
    d12 = determinant_scalar(1, 2)
    d23 = determinant_scalar(2, 3)
    f1 = d23 / d12
    assert is_zero(d12 * f1 - d23)
    assert not is_zero(u(1, 1))
    a = u(1)
    b = u(2, 1, 2)
    assert is_zero((a + b) ** 2 - a ** 2 - 2 * a * b - b ** 2)


def test_scalar_equals_examples():
    d12 = determinant_scalar(1, 2)
    lhs = determinant_scalar(2, 3) / d12
    rhs = (u(2, 1) * u(3, 2) - u(2, 2) * u(3, 1)) / d12
    assert scalar_equals(lhs, rhs)
    assert scalar_equals(Scalar.zero(), Scalar.zero() / d12)
    assert not scalar_equals(u(1, 1), u(1, 2))


def test_scalar_equals_is_equivalence_and_matches_evaluate():
    rng = random.Random(21)
    scalars = [random_scalar(rng, allow_den=True) for _ in range(6)]
    for f in scalars:
        assert scalar_equals(f, f)
    for f in scalars:
        for g in scalars:
            if not scalar_equals(f, g):
                continue
            assert scalar_equals(g, f)
            for seed in range(10):
                pt = random_point([f, g], seed=seed)
                try:
                    assert Fraction(f.evaluate(pt)) == Fraction(g.evaluate(pt))
                except ZeroDivisionError:
                    continue


def test_evaluate_examples():
    d12 = determinant_scalar(1, 2)
    idframe = {JetCoord.of(1, 1): 1, JetCoord.of(2, 2): 1,
               JetCoord.of(1, 2): 0, JetCoord.of(2, 1): 0}
    assert evaluate(d12, idframe) == 1
    f1 = determinant_scalar(2, 3) / d12
    degenerate = {code_of(1, 1, 0): 1, code_of(1, 1, 1): 1,
                  code_of(2, 1, 0): 1, code_of(2, 1, 1): 1,
                  code_of(3, 1, 0): 1, code_of(3, 1, 1): 1}
    with pytest.raises(ZeroDivisionError):
        evaluate(f1, degenerate)
    from homvar.symexpr import MissingCoordinateError

    with pytest.raises(MissingCoordinateError):
        evaluate(d12, {JetCoord.of(1, 1): 1})


def test_max_order():
    assert max_order(determinant_scalar(1, 2)) == 1
    assert max_order(u(1, 1, 1, 2)) == 3
    assert max_order(Scalar.from_int(7)) == 0
    f = determinant_scalar(2, 3) / determinant_scalar(1, 2)
    assert max_order(f.total_derivative(1)) == 2


def test_ring_axioms_randomized():
    rng = random.Random(3)
    for _ in range(25):
        a = random_scalar(rng, allow_den=True)
        b = random_scalar(rng, allow_den=True)
        c = random_scalar(rng, allow_den=True)
        assert scalar_equals((a + b) + c, a + (b + c))
        assert scalar_equals(a + b, b + a)
        assert scalar_equals(a * b, b * a)
        assert scalar_equals((a * b) * c, a * (b * c))
        assert scalar_equals(a * (b + c), a * b + a * c)


def test_partials_commute_randomized():
    rng = random.Random(8)
    for _ in range(15):
        f = random_scalar(rng, allow_den=True)
        x = code_of(rng.randint(1, 3), 1, rng.randint(0, 1))
        y = code_of(rng.randint(1, 3), 2, rng.randint(0, 2))
        assert scalar_equals(f.partial(x).partial(y), f.partial(y).partial(x))


def test_division_evaluation_homomorphism():
    rng = random.Random(13)
    for _ in range(10):
        f = random_scalar(rng)
        g = random_scalar(rng)
        if g.is_zero():
            continue
        q = f / g
        for seed in (1, 2):
            pt = random_point([f, g], seed=seed)
            try:
                gv = Fraction(g.evaluate(pt))
                if gv == 0:
                    continue
                assert Fraction(q.evaluate(pt)) * gv == Fraction(f.evaluate(pt))
            except ZeroDivisionError:
                continue


def test_pow_negative():
    d12 = determinant_scalar(1, 2)
    inv2 = d12 ** -2
    assert scalar_equals(inv2 * d12 ** 2, Scalar.one())
    with pytest.raises(TypeError):
        d12 ** Fraction(1, 2)


def test_partials_by_code_matches_partial():
    rng = random.Random(17)
    for _ in range(8):
        f = random_scalar(rng, allow_den=True)
        table = f.partials_by_code()
        for code in f.occurring_codes():
            got = table.get(code, Scalar.zero())
            assert scalar_equals(got, f.partial(code))


def test_denominator_polynomial_and_invariants():
    d12 = determinant_scalar(1, 2)
    f = (determinant_scalar(2, 3) * 4) / (d12 ** 3 * -2)
    # denominator leading coefficient is positive, sign absorbed into coef
    den = f.denominator_polynomial()
    lead_mon, lead_c = den.leading()
    assert lead_c > 0
    # value is preserved
    pt = random_point([f], seed=6)
    assert Fraction(f.evaluate(pt)) == Fraction(-2) * Fraction(
        determinant_scalar(2, 3).evaluate(pt)
    ) / Fraction(d12.evaluate(pt)) ** 3


def test_trial_division_reduces():
    d12 = determinant_scalar(1, 2)
    f = (d12 ** 2 * determinant_scalar(2, 3)) / d12 ** 3
    assert scalar_equals(f, determinant_scalar(2, 3) / d12)
    assert f.den[0][1] == 1  # exponent reduced from 3 to 1
