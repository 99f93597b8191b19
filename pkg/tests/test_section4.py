"""Exact checks on the second-order example over R^4 built from the
determinant ratios: homogeneity, the mixed-partial value, the full
identity suite for its fundamental form, and the projectability sweep."""

from fractions import Fraction

import pytest

from homvar import (
    check_homogeneity,
    contract,
    d_total,
    delta_ops,
    exterior_d,
    form_equals,
    hilbert_forms,
    is_null,
    order_profile,
    p1_apply,
    projectability,
    q1_apply,
    q2_apply,
    s_iterated,
    scalar_equals,
    total_field,
)
from homvar.jet_index import code_of, index_multisets
from homvar.symexpr import Scalar
from homvar.variational import (
    corollary_obstruction,
    determinant_scalar,
    section4_mixed_partial,
    section4_mixed_partial_closed_form,
    third_lie_closed_form,
)

from conftest import random_point, rectangle_mixed_partial


def test_homogeneity(s4_lagrangian):
    rep = check_homogeneity(s4_lagrangian)
    assert rep.homogeneous


def test_lagrangian_is_second_order_with_determinant_denominator(s4_lagrangian):
    v = s4_lagrangian.value
    assert v.max_order() == 2
    assert len(v.den) == 1
    assert v.den[0][0] == determinant_scalar(1, 2).num


def test_mixed_partial_value_half_of_quoted_display(s4_lagrangian):
    """In plain symmetric-coordinate partials, the antisymmetrized mixed
    second derivative is exactly half the value quoted from the weighted
    ordered-index computation: 2 u2_2 u3_2 D34 / (D12)^3."""
    mixed = section4_mixed_partial()
    closed = section4_mixed_partial_closed_form()  # the quoted 4 ... value
    assert scalar_equals(mixed, closed * Scalar.from_rational(Fraction(1, 2)))
    assert not scalar_equals(mixed, closed)


def test_mixed_partial_against_rectangle_difference_oracle(s4_lagrangian):
    L = s4_lagrangian.value
    mixed = section4_mixed_partial()
    x1, y1 = code_of(1, 2, 0), code_of(2, 2, 1)
    x2, y2 = code_of(2, 2, 0), code_of(1, 2, 1)
    for seed in (11, 12, 13):
        pt = random_point([L, mixed], seed=seed)
        want = rectangle_mixed_partial(L, x1, y1, pt) - rectangle_mixed_partial(
            L, x2, y2, pt
        )
        assert Fraction(mixed.evaluate(pt)) == want


def test_closed_form_evaluates_to_four_at_reference_point():
    closed = section4_mixed_partial_closed_form()
    pt = {
        code_of(1, 1, 0): 1, code_of(1, 1, 1): 0,
        code_of(2, 1, 0): 0, code_of(2, 1, 1): 1,
        code_of(3, 1, 0): 1, code_of(3, 1, 1): 1,
        code_of(4, 1, 0): 0, code_of(4, 1, 1): 1,
    }
    assert closed.evaluate(pt) == 4


def test_null(s4_lagrangian):
    assert is_null(s4_lagrangian)


def test_hilbert_lemmas(s4_lagrangian, s4_hilbert):
    th = s4_hilbert
    L = s4_lagrangian.value
    for m in (1, 2):
        for size in (1, 2, 3):
            for idx in index_multisets(size):
                for l in (1, 2):
                    assert delta_ops(idx, l, th[m - 1], "contract").is_zero()
        for size in (2, 3):
            for idx in index_multisets(size):
                for l in (1, 2):
                    assert delta_ops(idx, l, th[m - 1], "lie").is_zero()
        for l in (1, 2):
            got = contract(th[m - 1], total_field(l, 3, 4))
            want = L if l == m else Scalar.zero()
            assert scalar_equals(got, want)


def test_fourfold_vertical_kills_dhilbert(s4_hilbert):
    for th in s4_hilbert:
        dth = exterior_d(th)
        for idx in index_multisets(4):
            assert s_iterated(idx, dth).is_zero()


def test_fundamental_form_identities(s4_lagrangian, s4_hilbert, s4_theta):
    th1, th2 = s4_hilbert
    Th = s4_theta
    assert form_equals(contract(Th, total_field(2, 4, 4)), th1)
    assert form_equals(contract(Th, total_field(1, 4, 4)), -th2)
    inner = contract(Th, total_field(2, 4, 4))
    assert scalar_equals(contract(inner, total_field(1, 4, 4)), s4_lagrangian.value)
    assert exterior_d(Th).is_zero()


def test_theorem4_horizontal_and_projectable(s4_lagrangian, s4_theta):
    Th = s4_theta
    cov, coeff = order_profile(Th)
    assert cov <= 2
    assert coeff <= 4
    for pqr in index_multisets(3):
        assert s_iterated(pqr, Th).is_zero()
    from homvar.calculus_ops import coord_field_ops
    from homvar.jet_index import MultiIndex

    for alpha in range(1, 5):
        for j5 in index_multisets(5):
            assert coord_field_ops(
                alpha, MultiIndex.from_entries(j5), Th, "lie"
            ).is_zero()


def test_homotopy_exchange_identities(s4_hilbert):
    for th in s4_hilbert:
        dth = exterior_d(th)
        assert (q2_apply(1, d_total(2, dth)) - d_total(2, p1_apply(1, dth))).is_zero()
        assert (q2_apply(2, d_total(1, dth)) - d_total(1, p1_apply(2, dth))).is_zero()
        assert (
            q2_apply(1, d_total(1, dth)) + d_total(2, p1_apply(2, dth)) - dth
        ).is_zero()
        assert (
            q2_apply(2, d_total(2, dth)) + d_total(1, p1_apply(1, dth)) - dth
        ).is_zero()


def test_homotopy_reconstruction_of_dtheta(s4_theta):
    dTh = exterior_d(s4_theta)
    got = q1_apply(1, d_total(1, dTh)) + q1_apply(2, d_total(2, dTh))
    assert (got - dTh).is_zero()


def test_third_lie_matches_closed_form(s4_hilbert, s4_theta):
    dth1, dth2 = (exterior_d(t) for t in s4_hilbert)
    for pqr in index_multisets(3):
        for s in (1, 2):
            got = delta_ops(pqr, s, s4_theta, "lie")
            want = third_lie_closed_form(pqr, s, dth1, dth2)
            assert (got - want).is_zero()


def test_contact_obstructions_all_vanish(s4_lagrangian, s4_hilbert, s4_theta):
    """Under the normative commutator conventions, the fundamental form of
    this fixture satisfies every contact-projectability condition; the
    quoted non-projectability witness is identically zero (see the notes
    distributed with the acceptance suite)."""
    rep = projectability(s4_lagrangian, theta=s4_theta, hilbert=s4_hilbert)
    assert rep.horizontal
    assert rep.frame_projectable
    assert rep.contact_projectable
    assert rep.witness is None
    assert all(f.is_zero() for f in rep.lie_closed_form_residuals.values())


def test_corollary_obstruction_matrix_is_nonzero(s4_lagrangian):
    """The antisymmetrized mixed-partial 2-form itself is nonzero, and its
    (1,2) coefficient is the honest mixed-partial value."""
    cor = corollary_obstruction(s4_lagrangian)
    from homvar.jet_index import JetCoord

    c = cor.coefficient(JetCoord.of(1), JetCoord.of(2))
    assert scalar_equals(c, section4_mixed_partial())
    assert not cor.is_zero()
