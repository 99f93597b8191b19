"""Deterministic rendering of scalars and forms: plain text (parseable for
scalars), LaTeX, and the JSON term schema."""

from __future__ import annotations

import json

from .jet_index import code_order, decode
from .symexpr import Scalar, _exact_int
from .forms import Form


def render(x, style: str = "plain") -> str:
    if style == "plain":
        return x.plain()
    if style == "latex":
        return _latex(x)
    if style == "json":
        return json.dumps(_json_data(x), indent=2)
    raise ValueError(f"unknown style {style!r}")


# -- latex ---------------------------------------------------------------------

def _coord_latex(code: int) -> str:
    jc = decode(code)
    if jc.order == 0:
        return f"u^{{{jc.field}}}"
    return f"u^{{{jc.field}}}_{{{jc.index.digits()}}}"


def _monomial_latex(m) -> str:
    out = []
    for i in range(0, len(m), 2):
        body = _coord_latex(m[i])
        if m[i + 1] != 1:
            body = f"({body})^{{{m[i+1]}}}"
        out.append(body)
    return "\\,".join(out)


def _rat_latex(c) -> str:
    c = _exact_int(c)
    if isinstance(c, int):
        return str(c)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _poly_latex(p, coef=1) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.terms_sorted():
        c = c * coef if coef != 1 else c
        neg = c < 0
        c = -c if neg else c
        body = _monomial_latex(m)
        if c != 1 or not body:
            body = _rat_latex(c) + ("\\," + body if body else "")
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


def _scalar_latex(s: Scalar) -> str:
    if s.is_zero():
        return "0"
    num = _poly_latex(s.num, coef=s.coef)
    if not s.den:
        return num
    dens = []
    for p, e in s.den:
        body = _poly_latex(p)
        dens.append(f"({body})^{{{e}}}" if e > 1 else f"({body})")
    return f"\\frac{{{num}}}{{{''.join(dens)}}}"


def _covector_latex(code: int) -> str:
    return "d" + _coord_latex(code)


def _form_latex(f: Form) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for w, c in sorted(f.terms.items()):
        body = "\\wedge ".join(_covector_latex(code) for code in w)
        cs = _scalar_latex(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if cs == "1" and body:
            piece = body
        elif body:
            if " " in cs and not cs.startswith("\\frac"):
                cs = f"\\left({cs}\\right)"
            piece = f"{cs}\\,{body}"
        else:
            piece = cs
        if not pieces:
            pieces.append(("-\\," if neg else "") + piece)
        else:
            pieces.append(("- " if neg else "+ ") + piece)
    return " ".join(pieces)


def _latex(x) -> str:
    if isinstance(x, Form):
        return _form_latex(x)
    return _scalar_latex(x)


# -- json ----------------------------------------------------------------------

def _scalar_json(s: Scalar) -> dict:
    den = "1"
    if s.den:
        den = "*".join(
            f"({p.plain()})" + (f"^{e}" if e > 1 else "") for p, e in s.den
        )
    return {"num": s.num.plain(coef=s.coef), "den": den}


def _json_data(x) -> dict:
    if not isinstance(x, Form):
        d = _scalar_json(x)
        return {"degree": 0, "terms": [{"wedge": [], "coeff_num": d["num"], "coeff_den": d["den"]}]}
    terms = []
    for w, c in sorted(x.terms.items()):
        d = _scalar_json(c)
        terms.append(
            {
                "wedge": [decode(code).name() for code in w],
                "coeff_num": d["num"],
                "coeff_den": d["den"],
            }
        )
    return {"degree": x.degree, "terms": terms}
