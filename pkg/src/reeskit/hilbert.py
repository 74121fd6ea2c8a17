"""Hilbert series of standard graded quotients and of exact complexes."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .groebner import leading_term_dimension
from .ideal import Ideal


@dataclass(frozen=True)
class HilbertData:
    """Series = numerator(z) / (1 - z)^denominator_exponent.

    ``numerator`` maps exponents (possibly negative) to integer coefficients.
    """

    numerator: dict
    denominator_exponent: int
    dimension: int
    multiplicity: int

    def numerator_list(self) -> list[tuple[int, int]]:
        return sorted(self.numerator.items())


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _minimalize(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def monomial_numerator(mons, nvars: int) -> dict:
    """K-polynomial of k[x]/(mons) with respect to the standard grading."""
    mons = _minimalize(mons)
    return _numerator(tuple(mons), nvars)


def _numerator(mons, nvars):
    if not mons:
        return {0: 1}
    if any(not any(m) for m in mons):
        return {}
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in mons]
    disjoint = True
    seen: set = set()
    for s in supports:
        if s & seen:
            disjoint = False
            break
        seen |= s
    if disjoint:
        out = {0: 1}
        for m in mons:
            out = _poly_mul(out, {0: 1, sum(m): -1})
        return out
    # pivot on x^e taken from a generator that is not a pure power, so that
    # x^e is outside the ideal and both branches are smaller
    mixed = [m for m, s in zip(mons, supports) if len(s) > 1]
    counts = [0] * nvars
    for m in mixed:
        for i, a in enumerate(m):
            if a:
                counts[i] += 1
    var = max(range(nvars), key=lambda i: counts[i])
    e = min(m[var] for m in mixed if m[var])
    pivot = tuple(e if i == var else 0 for i in range(nvars))
    plus = _minimalize(list(mons) + [pivot])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in mons])
    return _poly_add(_numerator(tuple(plus), nvars), _poly_mul({e: 1}, _numerator(tuple(colon), nvars)))


def _from_numerator(num: dict, nvars: int, dim: int | None = None) -> HilbertData:
    """Cancel (1 - z) factors to read off dimension and multiplicity."""
    if not num:
        return HilbertData({}, nvars, -1, 0)
    lo = min(num)
    coeffs = [num.get(k, 0) for k in range(lo, max(num) + 1)]
    cancelled = 0
    # divide by (1 - z) while the value at z = 1 vanishes
    while sum(coeffs) == 0 and any(coeffs):
        q = []
        acc = 0
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        coeffs = q
        cancelled += 1
    d = nvars - cancelled
    mult = sum(coeffs)
    if dim is not None and dim != d:
        raise ArithmeticError("dimension from the series disagrees with the leading-term dimension")
    return HilbertData(dict(num), nvars, d, mult)


def multiplicity_by_derivative(num: dict, nvars: int, dim: int) -> int:
    """(-1)^(n-dim) p^((n-dim))(1) / (n-dim)!, for comparison with the cancellation route."""
    k = nvars - dim
    total = 0
    for e, c in num.items():
        # k-th derivative of z^e at 1 is e(e-1)...(e-k+1)
        fall = 1
        for i in range(k):
            fall *= e - i
        total += c * fall
    val = (-1) ** k * total
    if val % factorial(k):
        raise ArithmeticError("non-integral multiplicity")
    return val // factorial(k)


def hilbert_multiplicity(ideal: Ideal) -> HilbertData:
    """Hilbert data of k[x]/ideal for a homogeneous ideal."""
    ring = ideal.ring
    n = ring.nvars
    for g in ideal.gens:
        if not g.is_homogeneous():
            raise ValueError("hilbert_multiplicity needs a homogeneous ideal")
    if ideal.is_zero():
        return HilbertData({0: 1}, n, n, 1)
    lms = ideal.groebner().leading_monomials()
    dim = leading_term_dimension(lms, n)
    return _from_numerator(monomial_numerator(lms, n), n, None if dim < 0 else dim)


def hilbert_from_shifts(shifts_by_level: list[list[int]], nvars: int) -> HilbertData:
    """Hilbert data of the cokernel of an exact complex of graded free modules.

    ``shifts_by_level[i]`` lists the generator degrees of the i-th module;
    negative degrees give a Laurent numerator.
    """
    num: dict = {}
    for i, shifts in enumerate(shifts_by_level):
        for s in shifts:
            num[s] = num.get(s, 0) + (-1) ** i
    num = {k: v for k, v in num.items() if v}
    return _from_numerator(num, nvars)


def hilbert_function(data: HilbertData, degree: int) -> int:
    """Value of the Hilbert function read off the series."""
    n = data.denominator_exponent
    return sum(c * comb(degree - e + n - 1, n - 1) for e, c in data.numerator.items() if degree - e >= 0)
