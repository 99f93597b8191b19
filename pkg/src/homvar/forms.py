"""Exterior forms on frame-bundle coordinate charts.

A Form of degree r stores a dict mapping wedge monomials to nonzero Scalar
coefficients.  A wedge monomial is a strictly increasing tuple of covector
codes (each code labels a basis 1-form du^a_I); reordering during
construction contributes the sign of the permutation and repeated
covectors annihilate the term.  Degree-0 objects are plain Scalars, and
the operations below accept either.
"""

from __future__ import annotations

from typing import Iterable

from .jet_index import JetCoord, code_order, coord_code
from .symexpr import Scalar

Wedge = tuple  # strictly increasing covector codes


def canonical_wedge(codes) -> tuple[int, Wedge] | None:
    """Sort covector codes, tracking the permutation sign; None if repeated."""
    lst = list(codes)
    sign = 1
    for i in range(1, len(lst)):
        x = lst[i]
        j = i - 1
        while j >= 0 and lst[j] > x:
            lst[j + 1] = lst[j]
            j -= 1
            sign = -sign
        lst[j + 1] = x
        if j >= 0 and lst[j] == x:
            return None
    return sign, tuple(lst)


class Form:
    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None):
        self.degree = degree
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, degree: int) -> "Form":
        return cls(degree, {})

    @classmethod
    def from_terms(cls, degree: int, entries: Iterable[tuple[Scalar, Iterable]]) -> "Form":
        """Build from (coefficient, covectors) pairs; covectors may be given
        in any order as JetCoords or codes."""
        terms: dict = {}
        for coeff, covs in entries:
            codes = [c if isinstance(c, int) else coord_code(c) for c in covs]
            if len(codes) != degree:
                raise ValueError("wedge length does not match the form degree")
            cw = canonical_wedge(codes)
            if cw is None:
                continue
            sign, w = cw
            _accumulate(terms, w, coeff.scale(sign) if sign < 0 else coeff)
        return cls(degree, terms)

    @classmethod
    def covector(cls, coord) -> "Form":
        code = coord if isinstance(coord, int) else coord_code(coord)
        return cls(1, {(code,): Scalar.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, *covs) -> Scalar:
        codes = tuple(c if isinstance(c, int) else coord_code(c) for c in covs)
        cw = canonical_wedge(codes)
        if cw is None:
            return Scalar.zero()
        sign, w = cw
        c = self.terms.get(w)
        if c is None:
            return Scalar.zero()
        return c.scale(sign) if sign < 0 else c

    def covector_order(self) -> int:
        return max((code_order(c) for w in self.terms for c in w), default=0)

    def coefficient_order(self) -> int:
        return max((c.max_order() for c in self.terms.values()), default=0)

    def occurring_codes(self) -> set[int]:
        out: set[int] = set()
        for w, c in self.terms.items():
            out.update(w)
            out |= c.occurring_codes()
        return out

    def map_coefficients(self, fn) -> "Form":
        terms = {}
        for w, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                terms[w] = v
        return Form(self.degree, terms)

    # -- linear structure ------------------------------------------------------

    def __add__(self, other: "Form") -> "Form":
        _check_degrees(self, other)
        big, small = (self, other) if len(self.terms) >= len(other.terms) else (other, self)
        terms = dict(big.terms)
        for w, c in small.terms.items():
            _accumulate(terms, w, c)
        return Form(self.degree, terms)

    def __neg__(self) -> "Form":
        return Form(self.degree, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        _check_degrees(self, other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(terms, w, -c)
        return Form(self.degree, terms)

    def scale(self, c) -> "Form":
        """Multiply by a rational or by a Scalar."""
        if isinstance(c, Scalar):
            if c.is_zero():
                return Form.zero(self.degree)
            return self.map_coefficients(lambda s: s * c)
        if c == 0:
            return Form.zero(self.degree)
        return Form(self.degree, {w: s.scale(c) for w, s in self.terms.items()})

    def equals(self, other: "Form") -> bool:
        _check_degrees(self, other)
        return (self - other).is_zero()

    def __repr__(self) -> str:
        return f"Form({self.plain()})"

    def plain(self) -> str:
        if not self.terms:
            return "0"
        from .jet_index import code_name

        pieces = []
        for w, c in sorted(self.terms.items()):
            body = "^".join("d" + code_name(code) for code in w)
            cs = c.plain()
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if cs == "1":
                piece = body
            elif ("+" in cs or "- " in cs) and not (cs.startswith("(") and cs.endswith(")")):
                piece = f"({cs})*{body}"
            else:
                piece = f"{cs}*{body}"
            if not pieces:
                pieces.append(f"-{piece}" if neg else piece)
            else:
                pieces.append(f"- {piece}" if neg else f"+ {piece}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.plain()


def _accumulate(terms: dict, w: Wedge, c: Scalar) -> None:
    if c.is_zero():
        return
    cur = terms.get(w)
    if cur is None:
        terms[w] = c
    else:
        cur = cur + c
        if cur.is_zero():
            del terms[w]
        else:
            terms[w] = cur


def _check_degrees(a: Form, b: Form) -> None:
    if a.degree != b.degree:
        raise ValueError(f"form degree mismatch: {a.degree} vs {b.degree}")


def as_form(x) -> Form:
    """View a Scalar as a degree-0 form (Forms pass through)."""
    if isinstance(x, Form):
        return x
    return Form(0, {(): x} if not x.is_zero() else {})


def degree_of(x) -> int:
    return x.degree if isinstance(x, Form) else 0


def zero_like(x):
    if isinstance(x, Form):
        return Form.zero(x.degree)
    return Scalar.zero()


# -- spec operation surface ---------------------------------------------------

def wedge(a, b):
    """Exterior product; accepts Scalars as degree-0 forms."""
    if not isinstance(a, Form):
        if not isinstance(b, Form):
            return a * b
        return b.scale(a)
    if not isinstance(b, Form):
        return a.scale(b)
    terms: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            cw = canonical_wedge(wa + wb)
            if cw is None:
                continue
            sign, w = cw
            c = ca * cb
            _accumulate(terms, w, c.scale(sign) if sign < 0 else c)
    return Form(a.degree + b.degree, terms)


def form_linear(op: str, a, b=None):
    """Linear operations on forms: add, sub, scale."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown linear operation {op!r}")


def exterior_d(x):
    """Exterior derivative; degree r -> r + 1."""
    if not isinstance(x, Form):
        terms = {}
        for code, s in x.partials_by_code().items():
            terms[(code,)] = s
        return Form(1, terms)
    terms: dict = {}
    for w, c in x.terms.items():
        for code, s in c.partials_by_code().items():
            cw = canonical_wedge((code,) + w)
            if cw is None:
                continue
            sign, nw = cw
            _accumulate(terms, nw, s.scale(sign) if sign < 0 else s)
    return Form(x.degree + 1, terms)


def form_equals(a, b) -> bool:
    if not isinstance(a, Form) and not isinstance(b, Form):
        return a.equals(b)
    return as_form(a).equals(as_form(b))


def form_is_zero(x) -> bool:
    return x.is_zero()


def order_profile(x) -> tuple[int, int]:
    """(max covector order, max coefficient order)."""
    if not isinstance(x, Form):
        return (0, x.max_order())
    return (x.covector_order(), x.coefficient_order())
