"""The variational layer: homogeneity diagnosis, Hilbert forms, the
Euler-Lagrange form, the fundamental 2-form, projectability diagnostics,
jet pullbacks, and the two standard example Lagrangians (a first-order
determinant and the second-order example on R^4 built from determinant
ratios).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .jet_index import MultiIndex, code_of, index_multisets
from .symexpr import Scalar, _as_rational, rational
from .forms import Form, exterior_d, order_profile, wedge
from .calculus_ops import (
    contract,
    coord_field_ops,
    d_total,
    delta_ops,
    lie,
    max_field,
    needed_order,
    p1_apply,
    p2_apply,
    s_iterated,
    total_field,
)


@dataclass(frozen=True)
class Lagrangian:
    """A second-order Lagrangian: a Scalar of jet order <= 2 plus the
    number of dependent variables in play."""

    value: Scalar
    n_fields: int

    def __post_init__(self):
        if self.value.max_order() > 2:
            raise ValueError("a Lagrangian must have jet order <= 2")
        if self.n_fields < max_field(self.value):
            raise ValueError("n_fields is smaller than a field index used by the value")


@dataclass
class HomogeneityReport:
    first_order_defects: dict[tuple[int, int], Scalar]
    second_order_defects: dict[tuple[tuple[int, int], int], Scalar]
    homogeneous: bool


@dataclass
class NullityReport:
    homogeneous: bool
    epsilon: Form
    dtheta: Form
    null: bool
    closed: bool
    asserted: bool

    @property
    def biconditional_holds(self) -> bool:
        return self.null == self.closed


@dataclass
class ProjectabilityReport:
    horizontality_defects: dict[tuple, Form]
    frame_projectable_defects: dict[tuple, Form]
    contact_obstructions: dict[tuple, object]
    lie_closed_form_residuals: dict[tuple, Form]
    covector_order: int
    coefficient_order: int
    horizontal: bool
    frame_projectable: bool
    contact_projectable: bool
    witness: tuple | None


def check_homogeneity(L: Lagrangian) -> HomogeneityReport:
    """First- and second-order homogeneity defects, all exact."""
    first: dict[tuple[int, int], Scalar] = {}
    for i in (1, 2):
        for j in (1, 2):
            d = delta_ops((i,), j, L.value, "lie")
            if i == j:
                d = d - L.value
            first[(i, j)] = d
    second: dict[tuple[tuple[int, int], int], Scalar] = {}
    for ik in index_multisets(2):
        for j in (1, 2):
            second[(ik, j)] = delta_ops(ik, j, L.value, "lie")
    homogeneous = all(s.is_zero() for s in first.values()) and all(
        s.is_zero() for s in second.values()
    )
    return HomogeneityReport(first, second, homogeneous)


def hilbert_forms(L: Lagrangian) -> tuple[Form, Form]:
    dL = exterior_d(L.value)
    return p2_apply(1, dL), p2_apply(2, dL)


def euler_lagrange(L: Lagrangian, hilbert: tuple[Form, Form] | None = None) -> Form:
    """dL minus the total derivatives of the Hilbert forms."""
    th1, th2 = hilbert if hilbert is not None else hilbert_forms(L)
    return exterior_d(L.value) - d_total(1, th1) - d_total(2, th2)


def euler_lagrange_display(L: Lagrangian) -> Form:
    """The classical coordinate expression: for each dependent variable,
    dL/du - d_i(dL/du_i) + d_{ij}(dL/du_{ij}) summed over sorted ij."""
    terms = {}
    for alpha in range(1, L.n_fields + 1):
        expr = L.value.partial(code_of(alpha, 0, 0))
        for i in (1, 2):
            expr = expr - L.value.partial(code_of(alpha, 1, i - 1)).total_derivative(i)
        for ij in index_multisets(2):
            p = L.value.partial(code_of(alpha, 2, ij.count(2)))
            expr = expr + p.total_derivative(ij[0]).total_derivative(ij[1])
        if not expr.is_zero():
            terms[(code_of(alpha, 0, 0),)] = expr
    return Form(1, terms)


def is_null(L: Lagrangian) -> bool:
    return euler_lagrange(L).is_zero()


def fundamental_form(L: Lagrangian, hilbert: tuple[Form, Form] | None = None) -> Form:
    th1, th2 = hilbert if hilbert is not None else hilbert_forms(L)
    return p1_apply(2, exterior_d(th1)) - p1_apply(1, exterior_d(th2))


def nullity_closedness_check(L: Lagrangian) -> NullityReport:
    """Closedness of the fundamental form against nullity of L.  The
    equivalence is asserted only for homogeneous input; otherwise both
    forms are still computed but the verdict is flagged unasserted."""
    report = check_homogeneity(L)
    th = hilbert_forms(L)
    eps = euler_lagrange(L, th)
    theta = fundamental_form(L, th)
    dtheta = exterior_d(theta)
    return NullityReport(
        homogeneous=report.homogeneous,
        epsilon=eps,
        dtheta=dtheta,
        null=eps.is_zero(),
        closed=dtheta.is_zero(),
        asserted=report.homogeneous,
    )


def third_lie_combination(pqr: tuple[int, int, int], s: int) -> dict:
    """Coefficient table of the closed form for the third-order fundamental
    Lie derivative of the fundamental form: maps (sorted S-index string,
    which Hilbert differential) to the rational coefficient."""
    c5 = rational(5, 96)
    c1 = rational(1, 96)
    combo: dict = {}

    def add(string, m, c):
        key = (tuple(sorted(string)), m)
        v = combo.get(key, 0) + c
        if v:
            combo[key] = v
        elif key in combo:
            del combo[key]

    def removed(t: int) -> tuple[int, ...]:
        return pqr[:t] + pqr[t + 1:]

    if s == 2:
        add(pqr, 1, c5)
    for t in range(3):
        if pqr[t] == s:
            add((2,) + removed(t), 1, c5)
    if s == 1:
        for t in range(3):
            add((2,) + removed(t), pqr[t], c1)
    if s == 1:
        add(pqr, 2, -c5)
    for t in range(3):
        if pqr[t] == s:
            add((1,) + removed(t), 2, -c5)
    if s == 2:
        for t in range(3):
            add((1,) + removed(t), pqr[t], -c1)
    return combo


def third_lie_closed_form(pqr: tuple[int, int, int], s: int, dth1: Form, dth2: Form) -> Form:
    """Closed-form value of the third-order fundamental Lie derivative of
    the fundamental form, as a combination of iterated vertical
    endomorphisms of the differentials of the two Hilbert forms."""
    dth = (dth1, dth2)
    total = Form.zero(2)
    for (string, m), c in third_lie_combination(pqr, s).items():
        total = total + s_iterated(string, dth[m - 1]).scale(c)
    return total


def projectability(
    L: Lagrangian,
    theta: Form | None = None,
    hilbert: tuple[Form, Form] | None = None,
) -> ProjectabilityReport:
    """Order-reduction and contact-projectability diagnostics for the
    fundamental form of a homogeneous Lagrangian."""
    th = hilbert if hilbert is not None else hilbert_forms(L)
    Th = theta if theta is not None else fundamental_form(L, th)
    dth1, dth2 = exterior_d(th[0]), exterior_d(th[1])

    horizontality = {
        pqr: s_iterated(pqr, Th) for pqr in index_multisets(3)
    }
    frame_defects = {}
    for alpha in range(1, L.n_fields + 1):
        for j5 in index_multisets(5):
            frame_defects[(alpha, j5)] = coord_field_ops(
                alpha, MultiIndex.from_entries(j5), Th, "lie"
            )
    contact: dict[tuple, object] = {}
    for size in (1, 2, 3, 4):
        for idx in index_multisets(size):
            for l in (1, 2):
                contact[("i", idx, l)] = delta_ops(idx, l, Th, "contract")
                contact[("d", idx, l)] = delta_ops(idx, l, Th, "lie")
    residuals = {}
    for pqr in index_multisets(3):
        for s in (1, 2):
            expected = third_lie_closed_form(pqr, s, dth1, dth2)
            residuals[(pqr, s)] = contact[("d", pqr, s)] - expected

    cov_order, coeff_order = order_profile(Th)
    horizontal = all(f.is_zero() for f in horizontality.values()) and cov_order <= 2
    frame_projectable = all(f.is_zero() for f in frame_defects.values())
    witness = None
    for key in sorted(contact, key=lambda k: (k[0], len(k[1]), k[1], k[2])):
        if not contact[key].is_zero():
            witness = key
            break
    return ProjectabilityReport(
        horizontality_defects=horizontality,
        frame_projectable_defects=frame_defects,
        contact_obstructions=contact,
        lie_closed_form_residuals=residuals,
        covector_order=cov_order,
        coefficient_order=coeff_order,
        horizontal=horizontal,
        frame_projectable=frame_projectable,
        contact_projectable=witness is None,
        witness=witness,
    )


def corollary_obstruction(L: Lagrangian) -> Form:
    """The 2-form of antisymmetrized second derivatives of L with respect
    to u^b_11 and u^a_12, whose vanishing is necessary for contact
    projectability of the fundamental form."""
    n = L.n_fields
    terms = {}
    for beta in range(1, n + 1):
        for alpha in range(1, n + 1):
            if beta >= alpha:
                continue
            c = L.value.partial(code_of(beta, 2, 0)).partial(code_of(alpha, 2, 1))
            c = c - L.value.partial(code_of(alpha, 2, 0)).partial(code_of(beta, 2, 1))
            if not c.is_zero():
                terms[(code_of(beta, 0, 0), code_of(alpha, 0, 0))] = c
    return Form(2, terms)


# -- jet pullbacks -------------------------------------------------------------

TPoly = Mapping  # {(e1, e2): rational coefficient}


def _tp_diff(p: Mapping, j: int) -> dict:
    out: dict = {}
    for (e1, e2), c in p.items():
        if j == 1 and e1:
            out[(e1 - 1, e2)] = out.get((e1 - 1, e2), 0) + e1 * c
        elif j == 2 and e2:
            out[(e1, e2 - 1)] = out.get((e1, e2 - 1), 0) + e2 * c
    return {k: v for k, v in out.items() if v}


def _tp_eval(p: Mapping, t1, t2):
    total = rational(0)
    for (e1, e2), c in p.items():
        total += c * t1 ** e1 * t2 ** e2
    return total


def prolong_pullback(phi: Sequence[Mapping], omega, point, max_jet_order: int = 6):
    """Pull a form back along the jet prolongation of the polynomial map
    phi : R^2 -> R^n and evaluate at the point.

    Each phi[a] is a bivariate polynomial {(e1, e2): coeff} in the two
    parameters.  Jet coordinates are replaced by the corresponding partial
    derivatives of phi, basis covectors du^a_I pull back to the derivative
    values times dt^j, and the result is returned as an exact value: the
    degree decides the shape (a value, a pair, or the antisymmetric 2x2
    array whose (1,2) entry is the coefficient of dt^1 wedge dt^2).
    """
    degree = omega.degree if isinstance(omega, Form) else 0
    if degree > 2:
        raise ValueError("pullbacks to the parameter plane support degree <= 2")
    R = needed_order(omega)
    if R > max_jet_order:
        raise ValueError(f"form has jet order {R}, above the cap {max_jet_order}")
    t1 = rational(1) * _as_rational(point[0])
    t2 = rational(1) * _as_rational(point[1])

    values: dict[int, object] = {}
    for a, p in enumerate(phi, start=1):
        jets: dict[tuple[int, int], Mapping] = {
            (0, 0): {k: _as_rational(v) for k, v in p.items()}
        }
        for s in range(1, R + 2):
            for k in range(s + 1):
                if k == 0:
                    jets[(s, 0)] = _tp_diff(jets[(s - 1, 0)], 1)
                else:
                    jets[(s, k)] = _tp_diff(jets[(s - 1, k - 1)], 2)
        for (s, k), q in jets.items():
            values[code_of(a, s, k)] = _tp_eval(q, t1, t2)

    if degree == 0:
        f = omega if isinstance(omega, Scalar) else omega.terms.get((), Scalar.zero())
        return f.evaluate(values)

    def slot(code: int, j: int):
        return values[code + 16 + (1 if j == 2 else 0)]

    if degree == 1:
        v1 = rational(0)
        v2 = rational(0)
        for (code,), c in omega.terms.items():
            cv = c.evaluate(values)
            v1 += cv * slot(code, 1)
            v2 += cv * slot(code, 2)
        return (v1, v2)

    v = rational(0)
    for (c0, c1), c in omega.terms.items():
        cv = c.evaluate(values)
        v += cv * (slot(c0, 1) * slot(c1, 2) - slot(c0, 2) * slot(c1, 1))
    return ((rational(0), v), (-v, rational(0)))


# -- fixtures -------------------------------------------------------------------

def determinant_scalar(alpha: int, beta: int) -> Scalar:
    """u^alpha_1 u^beta_2 - u^alpha_2 u^beta_1."""
    u = lambda a, i: Scalar.coordinate(code_of(a, 1, i - 1))
    return u(alpha, 1) * u(beta, 2) - u(alpha, 2) * u(beta, 1)


def determinant_fixture(alpha: int, beta: int) -> Lagrangian:
    """The first-order determinant Lagrangian on two chosen fields."""
    if alpha == beta:
        raise ValueError("the determinant needs two distinct field indices")
    return Lagrangian(determinant_scalar(alpha, beta), max(alpha, beta))


@lru_cache(maxsize=1)
def section4_fixture() -> Lagrangian:
    """The second-order example on R^4: the double total-derivative
    contraction of d(D23/D12) wedge d(D34/D12)."""
    D12 = determinant_scalar(1, 2)
    D23 = determinant_scalar(2, 3)
    D34 = determinant_scalar(3, 4)
    F1 = D23 / D12
    F2 = D34 / D12
    L = (
        F1.total_derivative(1) * F2.total_derivative(2)
        - F1.total_derivative(2) * F2.total_derivative(1)
    )
    # one-time consistency check against the contraction construction
    two_form = wedge(exterior_d(F1), exterior_d(F2))
    inner = contract(two_form, total_field(1, needed_order(two_form), 4))
    both = contract(inner, total_field(2, needed_order(inner), 4))
    if not L.equals(both):
        raise AssertionError(
            "closed form of the example Lagrangian disagrees with the double contraction"
        )
    return Lagrangian(L, 4)


def section4_mixed_partial() -> Scalar:
    """The antisymmetrized second derivative of the R^4 example Lagrangian
    with respect to u^1_11, u^2_12."""
    L = section4_fixture().value
    return (
        L.partial(code_of(1, 2, 0)).partial(code_of(2, 2, 1))
        - L.partial(code_of(2, 2, 0)).partial(code_of(1, 2, 1))
    )


def section4_mixed_partial_closed_form() -> Scalar:
    """4 u^2_2 u^3_2 (u^3_1 u^4_2 - u^3_2 u^4_1) / (u^1_1 u^2_2 - u^1_2 u^2_1)^3."""
    u = lambda a, i: Scalar.coordinate(code_of(a, 1, i - 1))
    num = u(2, 2) * u(3, 2) * determinant_scalar(3, 4)
    return num.scale(4) * determinant_scalar(1, 2) ** -3
