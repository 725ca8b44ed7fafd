"""Exact integer polynomial arithmetic in one variable.

Polynomials are tuples of ints, constant coefficient first, with no trailing
zeros; the zero polynomial is the empty tuple.  Everything here is small
(degree at most the rank, or a cyclotomic of modest index), so no attempt is
made to be clever.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable

from .errors import DomainError

Poly = tuple[int, ...]

ONE: Poly = (1,)


def poly(coeffs: Iterable[int]) -> Poly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def divmod_exact(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Polynomial division over Z; only valid when q is monic (up to sign)."""
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    if abs(q[-1]) != 1:
        raise DomainError("divisor must have leading coefficient +-1")
    rem = list(p)
    quo = [0] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(rem) >= len(q) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(q):
            break
        shift = len(rem) - len(q)
        c = rem[-1] * lead  # lead is +-1 so this is exact
        quo[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] -= c * b
    return poly(quo), poly(rem)


def divides(q: Poly, p: Poly) -> bool:
    return divmod_exact(p, q)[1] == ()


def evaluate(p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def power_minus_one(m: int) -> Poly:
    """t^m - 1."""
    return poly([-1] + [0] * (m - 1) + [1])


def power_plus_one(m: int) -> Poly:
    """t^m + 1."""
    return poly([1] + [0] * (m - 1) + [1])


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> Poly:
    """The m-th cyclotomic polynomial, by exact division of t^m - 1."""
    if m < 1:
        raise DomainError("cyclotomic index must be positive")
    p = power_minus_one(m)
    for d in range(1, m):
        if m % d == 0:
            q, r = divmod_exact(p, cyclotomic(d))
            assert r == ()
            p = q
    return p


def cyclotomic_factorization(p: Poly, order_bound: int) -> dict[int, int]:
    """Factor a monic polynomial whose roots are roots of unity.

    Tries every cyclotomic index m dividing some candidate up to
    ``order_bound`` (callers pass the order of the matrix whose
    characteristic polynomial this is, so every eigenvalue order divides it).
    Raises if a nontrivial factor remains.
    """
    if not p or p[-1] != 1:
        raise DomainError("expected a monic polynomial")
    factors: dict[int, int] = {}
    rest = p
    for m in sorted(d for d in range(1, order_bound + 1) if order_bound % d == 0):
        phi = cyclotomic(m)
        while divides(phi, rest):
            rest = divmod_exact(rest, phi)[0]
            factors[m] = factors.get(m, 0) + 1
    if rest != ONE:
        raise InvalidCharPoly(f"polynomial is not a product of cyclotomics: {format_poly(p)}")
    return factors


class InvalidCharPoly(DomainError):
    pass


def format_poly(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            tpow = var if i == 1 else f"{var}^{i}"
            term = tpow if abs(c) == 1 else f"{abs(c)}{tpow}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f" + {term}" if c > 0 else f" - {term}")
    return "".join(parts)


def format_factored(factors: dict[int, int] | None, p: Poly) -> str:
    """Render ``p`` as a product of (t^k+1) factors when it is one, else flat."""
    parts = split_plus_one_factors(p)
    if parts is not None:
        return "".join(f"(t^{k}+1)" if k > 1 else "(t+1)" for k in parts)
    return format_poly(p)


def split_plus_one_factors(p: Poly) -> list[int] | None:
    """Write p as prod (t^{k_i}+1) if possible, returning sorted k_i (desc)."""
    ks: list[int] = []
    rest = p
    while rest != ONE:
        if not rest or rest[-1] != 1 or rest[0] != 1:
            return None
        for k in range(degree(rest), 0, -1):
            f = power_plus_one(k)
            if divides(f, rest):
                rest = divmod_exact(rest, f)[0]
                ks.append(k)
                break
        else:
            return None
    return sorted(ks, reverse=True)


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*(t(?:\s*\^\s*(\d+))?)?\s*")


def _parse_plain(text: str) -> Poly:
    """Parse a sum of integer monomials in t, e.g. 't^6 + 1' or '2t^2 - t'."""
    pos = 0
    coeffs: dict[int, int] = {}
    seen_any = False
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise DomainError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, num, tpart, exp = m.groups()
        if num is None and tpart is None:
            raise DomainError(f"cannot parse polynomial near {text[pos:]!r}")
        if seen_any and sign is None:
            raise DomainError(f"missing +/- between terms in {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        if tpart is None:
            k = 0
        elif exp is None:
            if "^" in tpart:
                raise DomainError(f"malformed exponent in {text!r}")
            k = 1
        else:
            k = int(exp)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        seen_any = True
    if not seen_any:
        raise DomainError("empty polynomial")
    return poly(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


def parse_poly(text: str) -> Poly:
    """Parse an ASCII polynomial, either plain or a product of factors.

    Accepts forms like ``t^6+1``, ``(t^3+1)(t^3+1)(t+1)`` or ``(t^2+1)^2``.
    Malformed exponents such as ``t^+1`` are rejected.
    """
    text = text.strip()
    if not text:
        raise DomainError("empty polynomial")
    if "(" not in text:
        return _parse_plain(text)
    out = ONE
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        if text[pos] != "(":
            raise DomainError(f"expected '(' near {text[pos:]!r}")
        close = text.find(")", pos)
        if close < 0:
            raise DomainError("unbalanced parentheses")
        factor = _parse_plain(text[pos + 1 : close])
        pos = close + 1
        reps = 1
        m = re.match(r"\s*\^\s*(\d+)", text[pos:])
        if m:
            reps = int(m.group(1))
            pos += m.end()
        for _ in range(reps):
            out = mul(out, factor)
    return out
