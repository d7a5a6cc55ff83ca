"""Dense univariate polynomials as coefficient lists, lowest degree first."""

from __future__ import annotations

import re
from fractions import Fraction


def trim(f, domain):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def poly_add(f, g, domain):
    n = max(len(f), len(g))
    out = [domain.zero] * n
    for i, a in enumerate(f):
        out[i] = out[i] + a
    for i, b in enumerate(g):
        out[i] = out[i] + b
    return trim(out, domain)


def poly_mul(f, g, domain):
    if not f or not g:
        return []
    out = [domain.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out, domain)


def poly_pow(f, n, domain):
    out = [domain.one]
    for _ in range(n):
        out = poly_mul(out, f, domain)
    return out


def poly_divmod(f, g, domain):
    g = trim(g, domain)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    q = [domain.zero] * max(len(f) - len(g) + 1, 0)
    lead = g[-1]
    for i in range(len(r) - len(g), -1, -1):
        c = r[i + len(g) - 1]
        if not c:
            continue
        c = c / lead
        q[i] = c
        for j, b in enumerate(g):
            r[i + j] = r[i + j] - c * b
    return trim(q, domain), trim(r[: len(g) - 1], domain)


def poly_eval(f, x, one):
    acc = one * 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def is_monic(f, domain) -> bool:
    f = trim(f, domain)
    return bool(f) and f[-1] == domain.one


_TERM = re.compile(r"([+-]?)\s*([0-9/]*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str, domain, var: str = "x"):
    """Parse ``x^2 - x - 1`` style polynomials into a coefficient list."""
    s = text.replace(" ", "")
    if var != "x":
        s = s.replace(var, "x")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial {text!r} near offset {pos + 1}")
        sign, num, mon, exp = m.groups()
        if not num and not mon:
            raise ValueError(f"bad polynomial {text!r} near offset {pos + 1}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        deg = 0 if not mon else (int(exp) if exp else 1)
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
        pos = m.end()
    n = max(coeffs) + 1
    return trim([domain(coeffs.get(i, 0)) for i in range(n)], domain)
