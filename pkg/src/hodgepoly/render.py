"""Text, LaTeX and JSON renderers for the assembled polynomials.

Monomials are emitted in descending t-degree, then descending alpha-degree;
a multi-term alpha coefficient is parenthesized next to its t power, e.g.
``t^3 + (-10*alpha - 48)*t^2 + (240*alpha + 240)*t``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List

from .algebra import BiPoly, UniPoly, rational_to_str
from .series import PPolynomial

__all__ = ["render_text", "render_latex", "render_json"]


def _alpha_term(q: Fraction, a_exp: int, t_exp: int, latex: bool) -> str:
    """One signed monomial without the leading-sign bookkeeping."""
    alpha = r"\alpha" if latex else "alpha"
    sep = "" if latex else "*"
    parts: List[str] = []
    if abs(q) != 1 or (a_exp == 0 and t_exp == 0):
        parts.append(rational_to_str(abs(q)))
    if a_exp == 1:
        parts.append(alpha)
    elif a_exp > 1:
        parts.append(f"{alpha}^{a_exp}")
    if t_exp == 1:
        parts.append("t")
    elif t_exp > 1:
        parts.append(f"t^{t_exp}")
    if not parts:
        return "1"
    if latex:
        # a control word eats the following letter; keep "\alpha t" spaced
        return "".join(
            part + " " if part.startswith("\\") and i < len(parts) - 1 else part
            for i, part in enumerate(parts)
        )
    return sep.join(parts)


def _alpha_poly(c: UniPoly, latex: bool) -> str:
    """Render a coefficient polynomial in alpha, descending powers."""
    out = ""
    for a_exp in range(c.degree(), -1, -1):
        q = c.coeff(a_exp)
        if q == 0:
            continue
        body = _alpha_term(q, a_exp, 0, latex)
        if not out:
            out = ("-" if q < 0 else "") + body
        else:
            out += (" - " if q < 0 else " + ") + body
    return out or "0"


def _render(poly: BiPoly, latex: bool) -> str:
    if poly.is_zero():
        return "0"
    chunks: List[str] = []
    for t_exp in range(poly.t_degree(), -1, -1):
        c = poly.t_coeff(t_exp)
        if c.is_zero():
            continue
        terms = sum(1 for q in c.c if q != 0)
        if terms > 1 and t_exp > 0:
            body = f"({_alpha_poly(c, latex)})"
            if not latex:
                body += "*"
            body += "t" if t_exp == 1 else f"t^{t_exp}"
            sign = "+"
        elif terms > 1:
            body = _alpha_poly(c, latex)
            sign = "+"
        else:
            a_exp = c.degree()
            q = c.coeff(a_exp)
            body = _alpha_term(q, a_exp, t_exp, latex)
            sign = "-" if q < 0 else "+"
        if not chunks:
            chunks.append(("-" if sign == "-" else "") + body)
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


def render_text(poly: BiPoly) -> str:
    return _render(poly, latex=False)


def render_latex(poly: BiPoly) -> str:
    return _render(poly, latex=True)


def render_json(p: PPolynomial) -> str:
    """Stable schema: coefficients sorted descending in (t_exp, alpha_exp)."""
    coeffs = [
        [t_exp, a_exp, rational_to_str(q)]
        for (t_exp, a_exp), q in sorted(p.poly.coefficients.items(), reverse=True)
    ]
    return json.dumps(
        {"a": list(p.a), "convention": p.convention, "coeffs": coeffs},
        separators=(", ", ": "),
    )
