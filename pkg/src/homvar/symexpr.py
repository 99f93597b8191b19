"""Exact scalar arithmetic in jet coordinates.

A Polynomial is a sparse multivariate polynomial: a dict mapping monomials
to nonzero coefficients.  A monomial is a flat tuple

    (code1, exp1, code2, exp2, ...)

with coordinate codes strictly increasing (see jet_index) and exponents
positive; the empty tuple is the monomial 1.  Coefficients are exact
numbers, ints wherever possible.

A Scalar is a rational function  coef * num / prod(p_i ** e_i)  where

  * coef is a nonzero exact rational (0 only for the zero scalar),
  * num is a primitive Polynomial: integer coefficients with gcd 1 and a
    positive leading coefficient in the canonical monomial order,
  * the denominator is kept in factored form, each p_i a distinct
    non-constant primitive Polynomial with positive leading coefficient.

Keeping the denominator factored means differentiation raises each
exponent by one instead of squaring the denominator, and common factors
cancel between terms without any polynomial gcd computation.  Numerators
are additionally reduced by trial division against the stored factors, so
for inputs whose denominators are built from a single irreducible
polynomial the representation stays in lowest terms.  Zero testing is
exact: a Scalar is zero iff its stored numerator is the empty dict.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Iterable, Iterator, Mapping

from .jet_index import (
    JetCoord,
    code_insert,
    code_name,
    code_order,
    coord_code,
    decode,
)

try:  # gmpy2's mpq is much faster than Fraction; the fallback keeps us pure.
    from gmpy2 import mpq as _mpq

    def rational(p: int = 0, q: int = 1):
        return _mpq(p, q)
except ImportError:  # pragma: no cover
    def rational(p: int = 0, q: int = 1):
        return Fraction(p, q)


class SymExprError(Exception):
    pass


class MissingCoordinateError(SymExprError):
    pass


def _as_rational(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return rational(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed in exact scalars")
    return x


def _rat_gcd(a, b):
    """Positive gcd of two rationals: gcd of numerators / lcm of denominators."""
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    g = gcd(an, bn)
    l = ad * bd // gcd(ad, bd)
    if g == 0:
        return rational(0)
    return rational(g, l)


def _exact_int(x):
    """Convert an integral rational to int, leave everything else alone."""
    if isinstance(x, int):
        return x
    if x.denominator == 1:
        return int(x)
    return x


# -- monomial kernel ---------------------------------------------------------

Monomial = tuple  # flat (code, exp, code, exp, ...)


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ca, cb = a[i], b[j]
        if ca == cb:
            out.append(ca)
            out.append(a[i + 1] + b[j + 1])
            i += 2
            j += 2
        elif ca < cb:
            out.append(ca)
            out.append(a[i + 1])
            i += 2
        else:
            out.append(cb)
            out.append(b[j + 1])
            j += 2
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mon_degree(m: Monomial) -> int:
    return sum(m[1::2])


def mon_max_order(m: Monomial) -> int:
    return max((code_order(c) for c in m[0::2]), default=0)


def mon_sort_key(m: Monomial):
    """Ascending sort by this key lists monomials in canonical order:
    graded (total degree first, high to low), ties broken lexicographically
    over the coordinate order with larger exponents first."""
    return (-mon_degree(m), tuple(-x if i & 1 else x for i, x in enumerate(m)))


def mon_divides(a: Monomial, b: Monomial) -> bool:
    """Does monomial a divide monomial b?"""
    i = 0
    la = len(a)
    j = 0
    lb = len(b)
    while i < la:
        ca = a[i]
        while j < lb and b[j] < ca:
            j += 2
        if j >= lb or b[j] != ca or b[j + 1] < a[i + 1]:
            return False
        j += 2
        i += 2
    return True


def mon_quotient(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a divides b."""
    out = []
    i = 0
    la = len(a)
    for j in range(0, len(b), 2):
        cb, eb = b[j], b[j + 1]
        if i < la and a[i] == cb:
            eb -= a[i + 1]
            i += 2
        if eb:
            out.append(cb)
            out.append(eb)
    return tuple(out)


def _mon_name(code: int, exp: int) -> str:
    return code_name(code) if exp == 1 else f"{code_name(code)}^{exp}"


# Fixed pseudo-random integer points used as a cheap divisibility
# pre-filter: if p | n over the integers then p(pt) | n(pt) in Z.
_PROBE_MAPS = (
    lambda code: (code * 73 + 17) % 11 + 2,
    lambda code: (code * 131 + 29) % 13 + 3,
)


class Polynomial:
    """Sparse polynomial; terms maps flat monomials to nonzero coefficients."""

    __slots__ = ("terms", "_hash", "_probes")

    def __init__(self, terms: dict | None = None, _probes: dict | None = None):
        self.terms = terms if terms is not None else {}
        self._hash = None
        self._probes = _probes if _probes is not None else {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _as_rational(c)
        return cls({(): c} if c else {})

    @classmethod
    def coordinate(cls, coord) -> "Polynomial":
        code = coord if isinstance(coord, int) else coord_code(coord)
        return cls({(code, 1): 1})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self):
        if not self.terms:
            return 0
        return self.terms[()]

    def degree(self) -> int:
        return max((mon_degree(m) for m in self.terms), default=0)

    def max_order(self) -> int:
        return max((mon_max_order(m) for m in self.terms), default=0)

    def occurring_codes(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(m[0::2])
        return out

    def terms_sorted(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: mon_sort_key(kv[0]))

    def leading(self):
        return min(self.terms.items(), key=lambda kv: mon_sort_key(kv[0]))

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash(frozenset(self.terms.items()))
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.plain()})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms:
            return other
        if not other.terms:
            return self
        big, small = (self, other) if len(self.terms) >= len(other.terms) else (other, self)
        out = dict(big.terms)
        for m, c in small.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(out, _combine_probes(self, other, lambda a, b: a + b))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(out, _combine_probes(self, other, lambda a, b: a - b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(
            {m: -c for m, c in self.terms.items()},
            {k: -v for k, v in self._probes.items()},
        )

    def scale(self, c) -> "Polynomial":
        c = _as_rational(c)
        if c == 0:
            return Polynomial.zero()
        if c == 1:
            return self
        return Polynomial(
            {m: _exact_int(v * c) for m, v in self.terms.items()},
            {k: v * c for k, v in self._probes.items()} if isinstance(c, int) else {},
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms or not other.terms:
            return Polynomial.zero()
        ca, pa = self.content_primitive()
        cb, pb = other.content_primitive()
        out: dict = {}
        A, B = pa.terms, pb.terms
        if len(A) > len(B):
            A, B = B, A
        for ma, va in A.items():
            for mb, vb in B.items():
                m = mon_mul(ma, mb)
                v = out.get(m)
                if v is None:
                    out[m] = va * vb
                else:
                    v = v + va * vb
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        prod = Polynomial(out, _combine_probes(self, other, lambda a, b: a * b))
        c = ca * cb
        return prod if c == 1 else prod.scale(c)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a Polynomial")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def content_primitive(self) -> tuple[object, "Polynomial"]:
        """Split into (content, primitive) with primitive having integer
        coefficients, gcd 1, and positive leading coefficient; the content
        carries the sign.  Zero splits as (1, zero)."""
        if not self.terms:
            return 1, self
        g = 0
        denlcm = 1
        allint = True
        for c in self.terms.values():
            if isinstance(c, int):
                g = gcd(g, c)
            else:
                allint = False
                g = gcd(g, c.numerator)
                d = c.denominator
                denlcm = denlcm * d // gcd(denlcm, d)
        lead = self.leading()[1]
        sign = -1 if lead < 0 else 1
        if allint:
            content = sign * g
            if content == 1:
                return 1, self
            return content, Polynomial({m: c // content for m, c in self.terms.items()})
        content = rational(sign * g, denlcm)
        inv = rational(denlcm, sign * g)
        return content, Polynomial({m: int(c * inv) for m, c in self.terms.items()})

    # -- calculus ------------------------------------------------------------

    def partial(self, code: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            for i in range(0, len(m), 2):
                mc = m[i]
                if mc == code:
                    e = m[i + 1]
                    nm = m[:i] + (code, e - 1) + m[i + 2:] if e > 1 else m[:i] + m[i + 2:]
                    out[nm] = e * c  # each source monomial maps to a distinct target
                    break
                if mc > code:
                    break
        return Polynomial(out)

    def partials(self) -> dict[int, "Polynomial"]:
        """All partial derivatives at once, keyed by coordinate code."""
        outs: dict[int, dict] = {}
        for m, c in self.terms.items():
            for i in range(0, len(m), 2):
                code = m[i]
                e = m[i + 1]
                nm = m[:i] + (code, e - 1) + m[i + 2:] if e > 1 else m[:i] + m[i + 2:]
                outs.setdefault(code, {})[nm] = e * c
        return {code: Polynomial(d) for code, d in outs.items()}

    def total_derivative(self, i: int) -> "Polynomial":
        """Formal derivative along direction i: each coordinate u^a_I in a
        monomial contributes its bumped neighbour u^a_{I+i}."""
        out: dict = {}
        for m, c in self.terms.items():
            for s in range(0, len(m), 2):
                code = m[s]
                e = m[s + 1]
                nm = m[:s] + (code, e - 1) + m[s + 2:] if e > 1 else m[:s] + m[s + 2:]
                nm = mon_mul(nm, (code_insert(code, i), 1))
                v = out.get(nm)
                ec = e * c
                if v is None:
                    out[nm] = ec
                else:
                    v = v + ec
                    if v:
                        out[nm] = v
                    else:
                        del out[nm]
        return Polynomial(out)

    def evaluate(self, values: Mapping[int, object]):
        total = rational(0)
        for m, c in self.terms.items():
            v = c
            for i in range(0, len(m), 2):
                code = m[i]
                try:
                    x = values[code]
                except KeyError:
                    raise MissingCoordinateError(
                        f"no value assigned to coordinate {code_name(code)}"
                    ) from None
                v = v * x ** m[i + 1]
            total += v
        return total

    def probe(self, k: int):
        """Value at the k-th built-in integer point (cached)."""
        v = self._probes.get(k)
        if v is None:
            pt = _PROBE_MAPS[k]
            total = 0
            for m, c in self.terms.items():
                for i in range(0, len(m), 2):
                    c = c * pt(m[i]) ** m[i + 1]
                total += c
            v = self._probes[k] = total
        return v

    def exact_div(self, p: "Polynomial") -> "Polynomial | None":
        """Exact quotient self / p, or None when p does not divide self."""
        if not self.terms:
            return self
        if p.is_const():
            c = p.const_value()
            if c == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(rational(1) / c)
        psorted = p.terms_sorted()
        lead_m, lead_c = psorted[0]
        rest = psorted[1:]
        r = dict(self.terms)
        heap = [mon_sort_key(m) for m in r]
        heapify(heap)
        keys = {mon_sort_key(m): m for m in r}
        q: dict = {}
        while r:
            while True:
                key = heappop(heap)
                m = keys[key]
                if m in r:
                    break
            c = r.pop(m)
            if not mon_divides(lead_m, m):
                return None
            qm = mon_quotient(m, lead_m)
            if isinstance(c, int) and isinstance(lead_c, int) and c % lead_c == 0:
                qc = c // lead_c
            else:
                qc = _as_rational(rational(1) * c) / lead_c
            q[qm] = qc
            for pm, pc in rest:
                mm = mon_mul(qm, pm)
                v = r.get(mm)
                if v is None:
                    r[mm] = -qc * pc
                    k = mon_sort_key(mm)
                    if k not in keys:
                        keys[k] = mm
                        heappush(heap, k)
                    else:
                        heappush(heap, k)
                else:
                    v = v - qc * pc
                    if v:
                        r[mm] = v
                    else:
                        del r[mm]
        return Polynomial(q)

    # -- rendering -----------------------------------------------------------

    def plain(self, coef=1) -> str:
        """Canonical plain text, with an optional overall rational factor."""
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for m, c in self.terms_sorted():
            c = c * coef if coef != 1 else c
            neg = c < 0
            c = -c if neg else c
            factors = [_mon_name(m[i], m[i + 1]) for i in range(0, len(m), 2)]
            if c != 1 or not factors:
                factors.insert(0, str(_exact_int(c)))
            elif neg and not pieces and "^" in factors[0]:
                # a leading "-u^k" would reparse as (-u)^k; keep the 1
                factors.insert(0, "1")
            body = "*".join(factors)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)


def _combine_probes(a: Polynomial, b: Polynomial, op) -> dict:
    pa, pb = a._probes, b._probes
    if not pa or not pb:
        return {}
    return {k: op(pa[k], pb[k]) for k in pa.keys() & pb.keys()}


def _poly_prod(polys: Iterable[Polynomial]) -> Polynomial:
    result = Polynomial.const(1)
    for p in polys:
        result = result * p
    return result


_ONE_POLY = Polynomial.const(1)


# -- scalars -----------------------------------------------------------------

Denominator = tuple  # tuple[(Polynomial, int exponent), ...]


def _probe_divisible(num: Polynomial, p: Polynomial) -> bool:
    """False only when p certainly does not divide num."""
    for k in range(len(_PROBE_MAPS)):
        pv = p.probe(k)
        if not isinstance(pv, int) or pv in (0, 1, -1):
            continue
        nv = num.probe(k)
        if not isinstance(nv, int):
            return True
        if nv % pv:
            return False
    return True


class Scalar:
    """Exact rational function coef * num / prod(p ** e)."""

    __slots__ = ("coef", "num", "den")

    def __init__(self, coef, num: Polynomial, den: Denominator):
        self.coef = coef
        self.num = num
        self.den = den

    # -- construction and normalization --------------------------------------

    @staticmethod
    def _build(coef, num: Polynomial, den: Iterable[tuple[Polynomial, int]]) -> "Scalar":
        merged: dict[Polynomial, int] = {}
        for p, e in den:
            if e == 0:
                continue
            if p.is_zero():
                raise ZeroDivisionError("zero polynomial in a denominator")
            merged[p] = merged.get(p, 0) + e
        if num.is_zero() or coef == 0:
            return ZERO
        factors: dict[Polynomial, int] = {}
        for p, e in merged.items():
            c, prim = p.content_primitive()
            if c != 1:
                coef = coef / c ** e
            if prim.is_const():  # the whole factor was constant
                continue
            factors[prim] = factors.get(prim, 0) + e
        c, num = num.content_primitive()
        if c != 1:
            coef = coef * c
        # trial division of the numerator against each stored factor
        reduced: list[tuple[Polynomial, int]] = []
        for p, e in factors.items():
            while e > 0 and not num.is_zero():
                if not _probe_divisible(num, p):
                    break
                q = num.exact_div(p)
                if q is None:
                    break
                cq, num = q.content_primitive()
                if cq != 1:
                    coef = coef * cq
                e -= 1
            if e:
                reduced.append((p, e))
        reduced.sort(key=lambda fe: (mon_sort_key(fe[0].leading()[0]), fe[0].plain()))
        return Scalar(_exact_int(coef), num, tuple(reduced))

    @classmethod
    def zero(cls) -> "Scalar":
        return ZERO

    @classmethod
    def one(cls) -> "Scalar":
        return ONE

    @classmethod
    def from_int(cls, k: int) -> "Scalar":
        return cls.from_rational(k)

    @classmethod
    def from_rational(cls, r) -> "Scalar":
        r = _as_rational(r)
        if r == 0:
            return ZERO
        return cls(_exact_int(r), _ONE_POLY, ())

    @classmethod
    def coordinate(cls, coord) -> "Scalar":
        return cls(1, Polynomial.coordinate(coord), ())

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "Scalar":
        return cls._build(1, p, ())

    @classmethod
    def fraction(cls, num: Polynomial, den: Polynomial) -> "Scalar":
        return cls._build(1, num, ((den, 1),))

    # -- predicates and accessors --------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_const() and not self.den

    def const_value(self):
        if not self.is_constant():
            raise SymExprError("scalar is not constant")
        return self.coef * self.num.const_value() if self.num.terms else 0

    def numerator_polynomial(self) -> Polynomial:
        """The numerator including the rational coefficient."""
        return self.num.scale(self.coef)

    def denominator_polynomial(self) -> Polynomial:
        return _poly_prod(p ** e for p, e in self.den)

    def max_order(self) -> int:
        orders = [self.num.max_order()]
        orders.extend(p.max_order() for p, _ in self.den)
        return max(orders)

    def occurring_codes(self) -> set[int]:
        out = self.num.occurring_codes()
        for p, _ in self.den:
            out |= p.occurring_codes()
        return out

    def __repr__(self) -> str:
        return f"Scalar({self.plain()})"

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "denominator"):
            return Scalar.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            g = _rat_gcd(self.coef, other.coef)
            sa = _exact_int(self.coef / g)
            sb = _exact_int(other.coef / g)
            num = self.num.scale(sa) + other.num.scale(sb)
            return Scalar._build(g, num, self.den)
        da = dict(self.den)
        db = dict(other.den)
        ma = _poly_prod(p ** (e - da.get(p, 0)) for p, e in db.items() if e > da.get(p, 0))
        mb = _poly_prod(p ** (e - db.get(p, 0)) for p, e in da.items() if e > db.get(p, 0))
        union = [(p, max(da.get(p, 0), db.get(p, 0))) for p in da.keys() | db.keys()]
        g = _rat_gcd(self.coef, other.coef)
        sa = _exact_int(self.coef / g)
        sb = _exact_int(other.coef / g)
        num = (self.num * ma).scale(sa) + (other.num * mb).scale(sb)
        return Scalar._build(g, num, union)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if self.is_zero():
            return self
        return Scalar(-self.coef, self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        return Scalar._build(
            self.coef * other.coef, self.num * other.num, self.den + other.den
        )

    __rmul__ = __mul__

    def scale(self, c) -> "Scalar":
        """Multiply by an exact rational; never touches the polynomials."""
        c = _as_rational(c)
        if c == 0 or self.is_zero():
            return ZERO
        return Scalar(_exact_int(self.coef * c), self.num, self.den)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar._build(
            rational(1) / self.coef, self.denominator_polynomial(), ((self.num, 1),)
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            raise TypeError("scalar powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        return Scalar(
            _exact_int(self.coef ** k),
            self.num ** k,
            tuple((p, e * k) for p, e in self.den),
        )

    # -- calculus -------------------------------------------------------------

    def _derive(self, poly_op) -> "Scalar":
        dn = poly_op(self.num)
        if not self.den:
            return Scalar._build(self.coef, dn, ())
        if len(self.den) == 1:
            p, e = self.den[0]
            acc = dn * p - (self.num * poly_op(p)).scale(e)
            return Scalar._build(self.coef, acc, ((p, e + 1),))
        ps = [p for p, _ in self.den]
        full = _poly_prod(ps)
        acc = dn * full
        for p, e in self.den:
            dp = poly_op(p)
            if dp.is_zero():
                continue
            others = full.exact_div(p)
            acc = acc - (self.num * dp * others).scale(e)
        return Scalar._build(self.coef, acc, tuple((p, e + 1) for p, e in self.den))

    def partial(self, coord) -> "Scalar":
        code = coord if isinstance(coord, int) else coord_code(coord)
        return self._derive(lambda q: q.partial(code))

    def total_derivative(self, i: int) -> "Scalar":
        return self._derive(lambda q: q.total_derivative(i))

    def partials_by_code(self) -> dict[int, "Scalar"]:
        """All nonzero partial derivatives in one pass over the structure."""
        dns = self.num.partials()
        if not self.den:
            return {
                code: Scalar._build(self.coef, dn, ())
                for code, dn in dns.items()
                if not dn.is_zero()
            }
        ps = [p for p, _ in self.den]
        full = _poly_prod(ps) if len(ps) > 1 else ps[0]
        den1 = tuple((p, e + 1) for p, e in self.den)
        per_factor = []
        codes = set(dns)
        for p, e in self.den:
            dps = p.partials()
            others = full.exact_div(p) if len(ps) > 1 else _ONE_POLY
            per_factor.append((e, dps, others))
            codes |= set(dps)
        out: dict[int, Scalar] = {}
        for code in codes:
            acc = dns.get(code, Polynomial.zero()) * full
            for e, dps, others in per_factor:
                dp = dps.get(code)
                if dp is None:
                    continue
                acc = acc - (self.num * dp * others).scale(e)
            sc = Scalar._build(self.coef, acc, den1)
            if not sc.is_zero():
                out[code] = sc
        return out

    def evaluate(self, assignment: Mapping) :
        """Exact value at a point; raises on a vanishing denominator or a
        missing coordinate."""
        values = {}
        for k, v in assignment.items():
            code = k if isinstance(k, int) else coord_code(k)
            values[code] = _as_rational(v)
        if self.is_zero():
            return rational(0)
        total = rational(1) * self.coef * self.num.evaluate(values)
        for p, e in self.den:
            pv = p.evaluate(values)
            if pv == 0:
                raise ZeroDivisionError(
                    f"denominator factor {p.plain()} vanishes at the point"
                )
            total = total / pv ** e
        return total

    # -- comparison -----------------------------------------------------------

    def equals(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare scalar with that type")
        if self.den == other.den:
            if self.coef == other.coef:
                return self.num == other.num
            return self.num.scale(self.coef) == other.num.scale(other.coef)
        da = dict(self.den)
        db = dict(other.den)
        ma = _poly_prod(p ** (e - da.get(p, 0)) for p, e in db.items() if e > da.get(p, 0))
        mb = _poly_prod(p ** (e - db.get(p, 0)) for p, e in da.items() if e > db.get(p, 0))
        left = (self.num * ma).scale(self.coef)
        right = (other.num * mb).scale(other.coef)
        return left == right

    # -- rendering ------------------------------------------------------------

    def plain(self) -> str:
        if self.is_zero():
            return "0"
        num = self.num.plain(coef=self.coef)
        if not self.den:
            return num
        dens = []
        for p, e in self.den:
            dens.append(f"({p.plain()})" + (f"^{e}" if e > 1 else ""))
        den = "*".join(dens)
        if len(self.num.terms) > 1 or self.coef != 1:
            return f"({num})/{den}"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.plain()


ZERO = Scalar(0, Polynomial.zero(), ())
ONE = Scalar(1, _ONE_POLY, ())


# -- module-level operation surface ------------------------------------------

def scalar_arith(op: str, a: Scalar, b=None) -> Scalar:
    """Field arithmetic dispatch: add, sub, mul, div, neg, pow."""
    if op == "neg":
        return -a
    if op == "pow":
        return a ** b
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")


def partial(f: Scalar, x) -> Scalar:
    return f.partial(x)


def is_zero(f: Scalar) -> bool:
    return f.is_zero()


def scalar_equals(a: Scalar, b: Scalar) -> bool:
    return a.equals(b)


def evaluate(f: Scalar, assignment: Mapping):
    return f.evaluate(assignment)


def max_order(f: Scalar) -> int:
    return f.max_order()


def coordinate_scalar(field: int, *entries: int) -> Scalar:
    """Convenience constructor u^field_{entries}."""
    return Scalar.coordinate(JetCoord.of(field, *entries))
