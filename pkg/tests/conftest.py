"""Shared fixtures and independent numeric oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from homvar import Lagrangian, exterior_d, fundamental_form, hilbert_forms
from homvar.jet_index import code_of
from homvar.symexpr import Scalar
from homvar.variational import determinant_fixture, determinant_scalar, section4_fixture


@pytest.fixture(scope="session")
def det_lagrangian():
    return determinant_fixture(1, 2)


@pytest.fixture(scope="session")
def s4_lagrangian():
    return section4_fixture()


@pytest.fixture(scope="session")
def s4_hilbert(s4_lagrangian):
    return hilbert_forms(s4_lagrangian)


@pytest.fixture(scope="session")
def s4_theta(s4_lagrangian, s4_hilbert):
    return fundamental_form(s4_lagrangian, s4_hilbert)


@pytest.fixture(scope="session")
def nonnull_lagrangian():
    """Homogeneous but not null: a degree-1 rational function of minors."""
    return Lagrangian(determinant_scalar(1, 2) ** 2 / determinant_scalar(1, 3), 3)


def random_point(scalars, seed=0, lo=1, hi=25):
    """A rational assignment covering every coordinate of the given scalars."""
    rng = random.Random(seed)
    codes = set()
    for s in scalars:
        codes |= s.occurring_codes()
    return {c: Fraction(rng.randint(lo, hi), rng.randint(1, 7)) for c in sorted(codes)}


# -- independent differentiation oracles --------------------------------------

def poly_partial_by_interpolation(f: Scalar, code: int, point: dict) -> Fraction:
    """Partial derivative of a polynomial Scalar at a point via exact
    multipoint finite differences: the derivative at 0 of the univariate
    restriction g(h) = f(point + h e) equals sum_k w_k g(k) for the exact
    differentiation weights of degree <= d interpolation."""
    if f.den:
        raise ValueError("polynomial oracle only")
    d = f.num.degree()
    nodes = list(range(d + 1))
    # derivative of the Lagrange basis at 0
    total = Fraction(0)
    for k in nodes:
        wk = Fraction(0)
        for m in nodes:
            if m == k:
                continue
            prod = Fraction(1, k - m)
            for l in nodes:
                if l in (k, m):
                    continue
                prod *= Fraction(0 - l, k - l)
            wk += prod
        pt = dict(point)
        pt[code] = pt.get(code, Fraction(0)) + k
        total += wk * Fraction(f.evaluate(pt))
    return total


def rational_partial_by_restriction(f: Scalar, code: int, point: dict) -> Fraction:
    """Derivative of the univariate restriction g(h) = f(point + h e),
    reconstructed by exact rational interpolation: solve for polynomials
    N, D with g = N/D from sampled values, then differentiate at 0."""
    dn = f.num.degree()
    dd = sum(p.degree() * e for p, e in f.den)
    # unknowns: n_0..n_dn, d_1..d_dd with d_0 = 1
    rows = []
    rhs = []
    samples = dn + dd + 3
    h = 0
    used = []
    while len(used) < samples:
        pt = dict(point)
        pt[code] = pt.get(code, Fraction(0)) + h
        try:
            val = Fraction(f.evaluate(pt))
        except ZeroDivisionError:
            h += 1
            continue
        used.append((h, val))
        h += 1
    for hv, val in used:
        row = [Fraction(hv) ** k for k in range(dn + 1)]
        row += [-val * Fraction(hv) ** k for k in range(1, dd + 1)]
        rows.append(row)
        rhs.append(val)
    ncols = dn + 1 + dd
    # least-structure exact solve (Gaussian elimination over Q)
    aug = [row[:] + [r] for row, r in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                fac = aug[i][c]
                aug[i] = [x - fac * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    ncoef = sol[: dn + 1]
    dcoef = [Fraction(1)] + sol[dn + 1:]
    # g'(0) = (N'(0) D(0) - N(0) D'(0)) / D(0)^2 with D(0) = 1
    n0, n1 = ncoef[0], (ncoef[1] if len(ncoef) > 1 else Fraction(0))
    d1 = dcoef[1] if len(dcoef) > 1 else Fraction(0)
    return n1 - n0 * d1


def rectangle_mixed_partial(f: Scalar, x: int, y: int, point: dict,
                            h=Fraction(3, 5), k=Fraction(2, 7)) -> Fraction:
    """Exact mixed second partial for scalars whose monomials have degree
    <= 1 in x and no monomial with x and y jointly above degree 2."""
    def ev(dx, dy):
        pt = dict(point)
        pt[x] = pt.get(x, Fraction(0)) + dx
        pt[y] = pt.get(y, Fraction(0)) + dy
        return Fraction(f.evaluate(pt))

    return (ev(h, k) - ev(h, 0) - ev(0, k) + ev(0, 0)) / (h * k)
