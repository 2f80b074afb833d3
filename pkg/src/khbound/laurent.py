"""Integer Laurent polynomials in one variable q, stored as exponent->coefficient dicts.

Every function returns a normalized dict (no zero coefficients), so dict
equality is polynomial equality.  This is all the polynomial machinery the
graded Euler characteristic and the bracket state sum need; pulling in a
symbolic package for it would be overkill.
"""

from __future__ import annotations

Laurent = dict[int, int]


def lp(*pairs: tuple[int, int]) -> Laurent:
    """Build a polynomial from (exponent, coefficient) pairs."""
    out: Laurent = {}
    for e, c in pairs:
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def lp_zero() -> Laurent:
    return {}


def lp_one() -> Laurent:
    return {0: 1}


def lp_add(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def lp_scale(a: Laurent, c: int, shift: int = 0) -> Laurent:
    """c * q^shift * a."""
    if c == 0:
        return {}
    return {e + shift: c * v for e, v in a.items()}


def lp_mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def lp_pow(a: Laurent, n: int) -> Laurent:
    if n < 0:
        raise ValueError("negative power of a Laurent polynomial")
    out = lp_one()
    for _ in range(n):
        out = lp_mul(out, a)
    return out


def lp_divexact(a: Laurent, b: Laurent) -> Laurent:
    """Exact division a / b; raises ValueError when b does not divide a."""
    if not b:
        raise ValueError("division by zero polynomial")
    rem = dict(a)
    quot: Laurent = {}
    b_top = max(b)
    b_lead = b[b_top]
    while rem:
        e = max(rem)
        c = rem[e]
        if c % b_lead:
            raise ValueError("not divisible")
        qe, qc = e - b_top, c // b_lead
        quot[qe] = qc
        for eb, cb in b.items():
            v = rem.get(eb + qe, 0) - cb * qc
            if v:
                rem[eb + qe] = v
            else:
                rem.pop(eb + qe, None)
    return quot


def lp_substitute_sign(a: Laurent) -> Laurent:
    """q -> 1/q."""
    return {-e: c for e, c in a.items()}


def lp_str(a: Laurent) -> str:
    """Human-readable form, exponents ascending, e.g. 'q^-1 + q'."""
    if not a:
        return "0"
    parts = []
    for e in sorted(a):
        c = a[e]
        if e == 0:
            term = str(abs(c))
        else:
            base = "q" if e == 1 else f"q^{e}"
            term = base if abs(c) == 1 else f"{abs(c)}{base}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)
