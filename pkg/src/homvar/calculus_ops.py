"""Derivations on forms: total derivatives, vertical endomorphisms, the
fundamental vector fields they generate, and the composite degree-lowering
operators built from them.

Conventions, with I, J sorted multi-indices over {1, 2}:

  * total_field(i, k) is the formal field with component u^a_{I+i} at each
    u^a_I of order <= k; its Lie derivative d_i bumps basis covectors
    du^a_I -> du^a_{I+i} and applies the chain rule to coefficients.
  * the vertical endomorphism S^j acts on basis covectors by
    du^a_J -> count_j(J) du^a_{J\\j} and on vector-field components at
    u^a_I by (count_j(I) + 1) placed at u^a_{I+j}.
  * the fundamental fields are iterated S applied to total fields, and
    their contractions i^I_j and Lie derivatives d^I_j are the degree -1
    and degree 0 derivations they induce.

Lie derivatives are computed as derivations (act on coefficients through
the field, replace each covector slot du^a_I by d of the field component
at u^a_I); this agrees with the contraction/differential composition,
which the test suite checks independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .jet_index import (
    JetCoord,
    MultiIndex,
    code_count,
    code_field,
    code_insert,
    code_order,
    coord_code,
    decode,
    index_multisets,
)
from .symexpr import Scalar, rational
from .forms import Form, canonical_wedge, exterior_d, zero_like, _accumulate


@dataclass(frozen=True)
class VectorField:
    """Formal vector field: nonzero Scalar components keyed by coordinate
    code.  along_projection marks fields whose components live one jet
    order above their coordinates (the total fields)."""

    components: Mapping[int, Scalar]
    along_projection: bool = False

    @classmethod
    def from_coords(cls, comps: Mapping[JetCoord, Scalar], along_projection=False):
        cleaned = {}
        for jc, s in comps.items():
            code = jc if isinstance(jc, int) else coord_code(jc)
            if not isinstance(s, Scalar):
                s = Scalar.from_rational(s)
            if not s.is_zero():
                cleaned[code] = s
        return cls(MappingProxyType(cleaned), along_projection)

    def component(self, coord) -> Scalar:
        code = coord if isinstance(coord, int) else coord_code(coord)
        return self.components.get(code, Scalar.zero())

    def by_coord(self) -> dict[JetCoord, Scalar]:
        return {decode(code): s for code, s in self.components.items()}

    def apply(self, f: Scalar) -> Scalar:
        """Directional derivative of a scalar."""
        total = Scalar.zero()
        for code, df in f.partials_by_code().items():
            comp = self.components.get(code)
            if comp is not None:
                total = total + comp * df
        return total


def total_field(i: int, order: int, n_fields: int) -> VectorField:
    """The total derivative field in direction i, truncated at the given
    coordinate order, for dependent variables 1..n_fields."""
    _check_direction(i)
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    comps = {}
    for alpha in range(1, n_fields + 1):
        for s in range(order + 1):
            for twos in range(s + 1):
                code = (alpha << 8) | (s << 4) | twos
                comps[code] = Scalar.coordinate(code_insert(code, i))
    return VectorField(MappingProxyType(comps), along_projection=True)


def coordinate_field(alpha: int, index: MultiIndex) -> VectorField:
    """The unit coordinate field along u^alpha_I."""
    code = (alpha << 8) | (index.size << 4) | index.twos
    return VectorField(MappingProxyType({code: Scalar.one()}), False)


def _check_direction(i: int) -> None:
    if i not in (1, 2):
        raise ValueError(f"direction index {i!r} not in {{1, 2}}")


def needed_order(x) -> int:
    """Largest jet order occurring anywhere in a Scalar or Form."""
    if isinstance(x, Form):
        cov = x.covector_order()
        coeff = x.coefficient_order()
        return max(cov, coeff)
    return x.max_order()


def max_field(x) -> int:
    codes = x.occurring_codes()
    return max((code_field(c) for c in codes), default=1)


# -- contraction and Lie derivative -------------------------------------------

def contract(omega, X: VectorField):
    """Interior product with a vector field; degree-lowering antiderivation.
    Scalars contract to zero."""
    if not isinstance(omega, Form):
        return Scalar.zero()
    if omega.degree == 0:
        return Scalar.zero()
    out: dict = {}
    comps = X.components
    for w, c in omega.terms.items():
        sign = 1
        for t, code in enumerate(w):
            comp = comps.get(code)
            if comp is not None:
                contrib = c * comp
                if sign < 0:
                    contrib = contrib.scale(-1)
                _accumulate(out, w[:t] + w[t + 1:], contrib)
            sign = -sign
    if omega.degree == 1:
        return out.get((), Scalar.zero())
    return Form(omega.degree - 1, out)


def lie(omega, X: VectorField):
    """Lie derivative along X; agrees with contract(d(omega), X) +
    d(contract(omega, X))."""
    if not isinstance(omega, Form) or omega.degree == 0:
        f = omega if isinstance(omega, Scalar) else omega.terms.get((), Scalar.zero())
        return X.apply(f)
    out: dict = {}
    comps = X.components
    for w, c in omega.terms.items():
        _accumulate(out, w, X.apply(c))
        for t, code in enumerate(w):
            comp = comps.get(code)
            if comp is None:
                continue
            dcomp = exterior_d(comp)
            rest = w[:t] + w[t + 1:]
            for (ycode,), s in dcomp.terms.items():
                cw = canonical_wedge(w[:t] + (ycode,) + w[t + 1:])
                if cw is None:
                    continue
                sgn, nw = cw
                contrib = c * s
                _accumulate(out, nw, contrib.scale(sgn) if sgn < 0 else contrib)
    return Form(omega.degree, out)


def lie_cartan(omega, X: VectorField):
    """Lie derivative via the contraction/differential composition; used as
    an independent cross-check of lie()."""
    if not isinstance(omega, Form) or omega.degree == 0:
        f = omega if isinstance(omega, Scalar) else omega.terms.get((), Scalar.zero())
        return contract(exterior_d(f), X)
    return contract(exterior_d(omega), X) + exterior_d(contract(omega, X))


# -- total derivative on forms -------------------------------------------------

def d_total(i: int, x):
    """Lie derivative along the total field in direction i, with the
    truncation order chosen from the operand."""
    _check_direction(i)
    if not isinstance(x, Form):
        return x.total_derivative(i)
    if x.degree == 0:
        f = x.terms.get((), Scalar.zero())
        return f.total_derivative(i)
    out: dict = {}
    for w, c in x.terms.items():
        _accumulate(out, w, c.total_derivative(i))
        for t, code in enumerate(w):
            cw = canonical_wedge(w[:t] + (code_insert(code, i),) + w[t + 1:])
            if cw is None:
                continue
            sgn, nw = cw
            _accumulate(out, nw, c.scale(sgn) if sgn < 0 else c)
    return Form(x.degree, out)


def d_total_iterated(indices: Iterable[int], x):
    for i in indices:
        x = d_total(i, x)
    return x


# -- vertical endomorphisms ----------------------------------------------------

def s_vertical(j: int, x):
    """The vertical endomorphism S^j as a degree-0 derivation: zero on
    scalars, du^a_J -> count_j(J) du^a_{J\\j} on basis covectors."""
    _check_direction(j)
    if not isinstance(x, Form):
        return Scalar.zero()
    if x.degree == 0:
        return Scalar.zero()
    out: dict = {}
    for w, c in x.terms.items():
        for t, code in enumerate(w):
            cnt = code_count(code, j)
            if cnt == 0:
                continue
            lowered = code - 16 - (1 if j == 2 else 0)
            cw = canonical_wedge(w[:t] + (lowered,) + w[t + 1:])
            if cw is None:
                continue
            sgn, nw = cw
            _accumulate(out, nw, c.scale(cnt * sgn))
    return Form(x.degree, out)


def s_iterated(indices: Iterable[int], x):
    """Iterated vertical endomorphism as a composition of the form
    derivations; composition order is immaterial."""
    for j in indices:
        if isinstance(x, Scalar) or (isinstance(x, Form) and x.is_zero()):
            return zero_like(x)
        x = s_vertical(j, x)
    return x


def s_tensor(indices: Iterable[int], x):
    """The iterated vertical endomorphism as a single (1,1) tensor (the
    endomorphisms composed before inducing the form derivation): each
    covector slot absorbs the whole index string, with falling-factorial
    counts.  Agrees with s_iterated on 1-forms; on higher degrees the two
    differ by cross-slot terms, and it is this version that satisfies the
    commutator exchange with the fundamental Lie derivatives."""
    indices = tuple(indices)
    if not isinstance(x, Form) or x.degree == 0:
        return Scalar.zero()
    if not indices:
        return x
    out: dict = {}
    for w, c in x.terms.items():
        for t, code in enumerate(w):
            cur = code
            coeff = 1
            ok = True
            for j in indices:
                cnt = code_count(cur, j)
                if cnt == 0:
                    ok = False
                    break
                coeff *= cnt
                cur = cur - 16 - (1 if j == 2 else 0)
            if not ok:
                continue
            cw = canonical_wedge(w[:t] + (cur,) + w[t + 1:])
            if cw is None:
                continue
            sgn, nw = cw
            _accumulate(out, nw, c.scale(coeff * sgn))
    return Form(x.degree, out)


def s_on_field(j: int, X: VectorField) -> VectorField:
    """S^j acting on a vector field: the component at u^a_I moves to
    u^a_{I+j} scaled by count_j(I) + 1.  The result is a genuine field."""
    _check_direction(j)
    comps = {}
    for code, s in X.components.items():
        comps[code_insert(code, j)] = s.scale(code_count(code, j) + 1)
    return VectorField(MappingProxyType(comps), along_projection=False)


def delta_field(indices, j: int, order: int, n_fields: int) -> VectorField:
    """The fundamental field: iterated S applied to the total field."""
    X = total_field(j, order, n_fields)
    for i in indices:
        X = s_on_field(i, X)
    return X


def delta_ops(indices, j: int, x, mode: str):
    """Contraction (i^I_j) or Lie derivative (d^I_j) along the fundamental
    field for the multi-index I given by `indices`."""
    indices = tuple(indices)
    if not indices:
        raise ValueError("the fundamental field needs at least one upper index")
    order = max(0, needed_order(x) - len(indices))
    X = delta_field(indices, j, order, max_field(x))
    if mode == "contract":
        return contract(x, X)
    if mode == "lie":
        return lie(x, X)
    raise ValueError(f"unknown mode {mode!r}")


def coord_field_ops(alpha: int, index: MultiIndex, x, mode: str):
    """Contraction or Lie derivative along the coordinate field
    d/du^alpha_I."""
    if index.size < 1:
        raise ValueError("coordinate field index must have positive order")
    X = coordinate_field(alpha, index)
    if mode == "contract":
        return contract(x, X)
    if mode == "lie":
        return lie(x, X)
    raise ValueError(f"unknown mode {mode!r}")


# -- composite operators --------------------------------------------------------

_P1_COEFFS = (rational(1, 4), rational(-1, 24), rational(1, 192))
_P2_COEFFS = (rational(1), rational(-1, 2))
_Q2_COEFFS = (rational(1, 2), rational(-1, 8), rational(1, 48), rational(-1, 384))
_Q1_COEFFS = (
    rational(1, 6),
    rational(-1, 54),
    rational(1, 648),
    rational(-1, 9720),
    rational(1, 174960),
)


def apply_series(coeffs, i: int, omega):
    """sum_s coeffs[s] * d_J S^{J i} omega over sorted J of length s, each
    weighted by its multiplicity (the count of ordered rearrangements)."""
    _check_direction(i)
    total = zero_like(omega)
    if isinstance(total, Scalar):
        return total  # the series annihilates scalars
    for s, c in enumerate(coeffs):
        for J in index_multisets(s):
            term = s_iterated(J + (i,), omega)
            if isinstance(term, Scalar) or term.is_zero():
                continue
            for jj in J:
                term = d_total(jj, term)
            mult = MultiIndex.from_entries(J).multiplicity()
            total = total + term.scale(c * mult)
    return total


def p1_apply(i: int, omega):
    return apply_series(_P1_COEFFS, i, omega)


def p2_apply(i: int, omega):
    return apply_series(_P2_COEFFS, i, omega)


def q2_apply(i: int, omega):
    return apply_series(_Q2_COEFFS, i, omega)


def q1_apply(i: int, omega):
    return apply_series(_Q1_COEFFS, i, omega)
