"""Ideals with cached Groebner bases and the usual constructions on them."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import GroebnerBasis, buchberger, leading_term_dimension, normal_form
from .poly import MonomialOrder, PolyRing, Polynomial, block_elimination, grevlex


@dataclass(frozen=True)
class HeightResult:
    """Dimension and height of k[x]/I; ``unit`` marks I = (1)."""

    dim: int | None
    height: int | None
    unit: bool = False
    zero: bool = False


class Ideal:
    """An ideal of a polynomial ring given by generators."""

    def __init__(self, gens, ring: PolyRing | None = None, budget: dict | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring needed for an empty generator list")
            ring = gens[0].ring
        self.ring = ring
        self.gens = [g for g in gens if g.terms]
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator from another ring")
        self.budget = budget or {}
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def is_zero(self) -> bool:
        return not self.gens

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis | None:
        order = order or grevlex(self.ring.nvars)
        if not self.gens:
            return None
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.gens, order, max_spairs=self.budget.get("spairs"),
                            max_seconds=self.budget.get("seconds"))
            self._gb[order] = gb
        return gb

    def reduce(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        gb = self.groebner(order)
        return f if gb is None else normal_form(f, gb)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        gb = self.groebner()
        return gb is not None and gb.is_unit()

    def reduced_generators(self, order=None) -> list[Polynomial]:
        gb = self.groebner(order)
        return [] if gb is None else list(gb.elements)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.gens + other.gens, self.ring, self.budget)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.gens for b in other.gens], self.ring, self.budget)

    def power(self, k: int) -> "Ideal":
        out = Ideal([self.ring.one()], self.ring, self.budget)
        for _ in range(k):
            out = Ideal(_dedupe([a * b for a in out.gens for b in self.gens]), self.ring, self.budget)
        return out


def _dedupe(polys):
    seen = set()
    out = []
    for f in polys:
        key = frozenset(f.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def dimension_and_height(ideal: Ideal) -> HeightResult:
    """Krull dimension and height from the GrevLex leading-term ideal."""
    n = ideal.ring.nvars
    if ideal.is_zero():
        return HeightResult(n, 0, zero=True)
    gb = ideal.groebner()
    if gb.is_unit():
        return HeightResult(None, None, unit=True)
    dim = leading_term_dimension(gb.leading_monomials(), n)
    return HeightResult(dim, n - dim)


def eliminate(ideal: Ideal, keep_last: int) -> Ideal:
    """Generators of the ideal intersected with k[last keep_last variables]."""
    n = ideal.ring.nvars
    if not 0 <= keep_last <= n:
        raise ValueError("keep_last out of range")
    if keep_last == n or ideal.is_zero():
        return Ideal(list(ideal.gens), ideal.ring, ideal.budget)
    order = block_elimination(n, n - keep_last)
    gb = ideal.groebner(order)
    drop = range(n - keep_last)
    kept = [g for g in gb.elements if not any(e[i] for e in g.terms for i in drop)]
    return Ideal(kept, ideal.ring, ideal.budget)


def _extended_ring(ring: PolyRing, name: str = "_w") -> PolyRing:
    while name in ring.names:
        name += "_"
    return PolyRing((name,) + ring.names, ring.field)


def _lift(f: Polynomial, big: PolyRing) -> Polynomial:
    return Polynomial(big, {(0,) + e: c for e, c in f.terms.items()})


def _drop(f: Polynomial, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()})


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """a and b intersected, via (w a + (1 - w) b) eliminated against w."""
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal([], ring, a.budget)
    big = _extended_ring(ring)
    w = big.gen(0)
    gens = [w * _lift(f, big) for f in a.gens] + [(big.one() - w) * _lift(g, big) for g in b.gens]
    elim = eliminate(Ideal(gens, big, a.budget), ring.nvars)
    return Ideal([_drop(f, ring) for f in elim.gens], ring, a.budget)


def colon_element(ideal: Ideal, g: Polynomial) -> Ideal:
    """(ideal : g) computed as (ideal intersected with (g)) / g."""
    ring = ideal.ring
    if not g.terms:
        return Ideal([ring.one()], ring, ideal.budget)
    if ideal.contains(g):
        return Ideal([ring.one()], ring, ideal.budget)
    inter = intersect(ideal, Ideal([g], ring))
    return Ideal([f.exact_div(g) for f in inter.gens], ring, ideal.budget)


def colon(ideal: Ideal, by: Ideal) -> Ideal:
    """{f : f * by is contained in ideal}."""
    ring = ideal.ring
    result = None
    for g in by.gens:
        part = colon_element(ideal, g)
        if part.is_unit():
            continue
        result = part if result is None else intersect(result, part)
    if result is None:
        return Ideal([ring.one()], ring, ideal.budget)
    return Ideal(result.reduced_generators(), ring, ideal.budget)


def saturate(ideal: Ideal, by: Ideal, max_steps: int = 50) -> Ideal:
    """ideal : by^infinity, by iterating the colon until it stabilises."""
    cur = ideal
    for _ in range(max_steps):
        nxt = colon(cur, by)
        if cur.contains_ideal(nxt):
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilise")


def radical_membership(f: Polynomial, ideal: Ideal) -> bool:
    """Whether f lies in the radical of ideal (Rabinowitsch trick)."""
    if not f.terms:
        return True
    if ideal.is_zero():
        return False
    if ideal.contains(f):
        return True
    ring = ideal.ring
    big = _extended_ring(ring)
    w = big.gen(0)
    gens = [_lift(g, big) for g in ideal.gens] + [big.one() - w * _lift(f, big)]
    return Ideal(gens, big, ideal.budget).is_unit()
