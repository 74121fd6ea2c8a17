"""Buchberger's algorithm on packed monomials.

Monomials are encoded as Python ints: each row of the order's weight matrix
occupies a 16-bit field, most significant row first, so integer comparison is
the monomial order and multiplication is addition of keys (up to a constant).
A second packing of the raw exponents with guard bits gives a branch-free
divisibility test.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import MonomialOrder, PolyRing, Polynomial

_BITS = 16
_OFF = 1 << (_BITS - 1)
_MASK = (1 << _BITS) - 1


class BudgetExceeded(RuntimeError):
    """An S-pair or wall-clock budget ran out before the basis was complete."""


class _Monomials:
    """Packed keys for one (variable count, order)."""

    def __init__(self, nvars: int, order: MonomialOrder):
        rows = order.weight_rows()
        self.n = nvars
        nr = len(rows)
        self.shifts = [_BITS * (nr - 1 - r) for r in range(nr)]
        self.offsum = sum(_OFF << s for s in self.shifts)
        self.coef = [sum(rows[r][i] << self.shifts[r] for r in range(nr)) for i in range(nvars)]
        self.inv = _inverse(rows)
        self.guard = sum((1 << (_BITS - 1)) << (_BITS * i) for i in range(nvars))
        self._info: dict[int, tuple] = {}

    def pack(self, exps) -> int:
        k = self.offsum
        for e, c in zip(exps, self.coef):
            if e:
                k += e * c
        return k

    def info(self, key: int) -> tuple:
        """(exps, packed exps, degree) of a key."""
        got = self._info.get(key)
        if got is None:
            fields = [((key >> s) & _MASK) - _OFF for s in self.shifts]
            exps = tuple(int(sum(a * f for a, f in zip(row, fields))) for row in self.inv)
            pe = 0
            for i, e in enumerate(exps):
                pe |= e << (_BITS * i)
            got = (exps, pe, sum(exps))
            self._info[key] = got
        return got

    def pexp(self, exps) -> int:
        pe = 0
        for i, e in enumerate(exps):
            pe |= e << (_BITS * i)
        return pe

    def divides(self, pa: int, pb: int) -> bool:
        g = self.guard
        return ((pb | g) - pa) & g == g


def _inverse(rows):
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[int(v) if v.denominator == 1 else v for v in row[n:]] for row in a]


_MONO_CACHE: dict = {}


def _monomials(nvars: int, order: MonomialOrder) -> _Monomials:
    k = (nvars, order)
    m = _MONO_CACHE.get(k)
    if m is None:
        m = _Monomials(nvars, order)
        _MONO_CACHE[k] = m
    return m


class _Elt:
    __slots__ = ("lm", "pe", "exps", "tail", "sugar", "alive")

    def __init__(self, lm, pe, exps, tail, sugar):
        self.lm = lm
        self.pe = pe
        self.exps = exps
        self.tail = tail
        self.sugar = sugar
        self.alive = True


def _reduce(terms: dict, reducers: list, mon: _Monomials, p: int, full: bool = True) -> dict:
    """Normal form of a packed polynomial (dict key -> coeff; consumed)."""
    heap = [-k for k in terms]
    heapq.heapify(heap)
    rem: dict = {}
    g = mon.guard
    info = mon.info
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = terms.pop(k, None)
        if c is None:
            continue
        pb = info(k)[1] | g
        red = None
        for r in reducers:
            if (pb - r.pe) & g == g:
                red = r
                break
        if red is None:
            rem[k] = c
            if not full:
                for kk, cc in terms.items():
                    rem[kk] = cc
                return rem
            continue
        d = k - red.lm
        if p:
            for kt, ct in red.tail:
                nk = kt + d
                v = terms.get(nk)
                if v is None:
                    terms[nk] = (-c * ct) % p
                    push(heap, -nk)
                else:
                    v = (v - c * ct) % p
                    if v:
                        terms[nk] = v
                    else:
                        del terms[nk]
        else:
            for kt, ct in red.tail:
                nk = kt + d
                v = terms.get(nk)
                if v is None:
                    terms[nk] = -c * ct
                    push(heap, -nk)
                else:
                    v = v - c * ct
                    if v:
                        terms[nk] = v
                    else:
                        del terms[nk]
    return rem


def _make_elt(terms: dict, mon: _Monomials, p: int, sugar: int) -> _Elt:
    lm = max(terms)
    lc = terms[lm]
    if p:
        inv = pow(lc, -1, p)
        tail = [(k, c * inv % p) for k, c in terms.items() if k != lm]
    else:
        inv = Fraction(1) / lc
        tail = []
        for k, c in terms.items():
            if k != lm:
                v = c * inv
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = v.numerator
                tail.append((k, v))
    tail.sort(reverse=True)
    exps, pe, _ = mon.info(lm)
    return _Elt(lm, pe, exps, tail, sugar)


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis; elements are monic and sorted by leading term."""

    ring: PolyRing
    order: MonomialOrder
    elements: list
    stats: dict = field(default_factory=dict)
    _packed: list | None = field(default=None, repr=False)

    def leading_monomials(self) -> list[tuple]:
        return [e.exps for e in self._packed]

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leading_monomials())

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self).terms

    def __len__(self):
        return len(self.elements)


def _to_packed(f: Polynomial, mon: _Monomials) -> dict:
    pack = mon.pack
    return {pack(e): c for e, c in f.terms.items()}


def _from_packed(terms, mon: _Monomials, ring: PolyRing) -> Polynomial:
    info = mon.info
    out = {}
    for k, c in terms:
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out[info(k)[0]] = c
    return Polynomial(ring, out)


def buchberger(gens, order: MonomialOrder, *, max_spairs: int | None = None,
               max_seconds: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are chosen by the normal (sugar) strategy and pruned with the
    Gebauer-Moeller criteria, which include Buchberger's product and chain
    criteria.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        raise ValueError("need at least one generator (use Ideal for the zero ideal)")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators over different rings")
    if order.nvars != ring.nvars:
        raise ValueError("order and ring disagree on the variable count")
    p = ring.field.p
    mon = _monomials(ring.nvars, order)
    start = time.monotonic()
    G: list[_Elt] = []
    pairs: list = []
    nsp = 0
    zero_red = 0

    def alive():
        return [e for e in G if e.alive]

    def update(h: _Elt):
        hi = len(G)
        cands = []
        for i, g in enumerate(G):
            if g.alive:
                L = _lcm(g.exps, h.exps)
                cands.append((i, L, mon.pexp(L), _coprime(g.exps, h.exps)))
        keep = []
        for idx, (i, L, pl, cop) in enumerate(cands):
            if cop or not (any(mon.divides(c[2], pl) for c in cands[idx + 1:])
                           or any(mon.divides(c[2], pl) for c in keep)):
                keep.append((i, L, pl, cop))
        new = []
        for i, L, pl, cop in keep:
            if cop:
                continue
            g = G[i]
            dg = sum(L)
            sugar = max(g.sugar + dg - sum(g.exps), h.sugar + dg - sum(h.exps))
            new.append((sugar, mon.pack(L), i, hi, L, pl))
        hpe = h.pe
        kept = []
        for pr in pairs:
            _, _, i, j, L, pl = pr
            if mon.divides(hpe, pl):
                Li = _lcm(G[i].exps, h.exps)
                Lj = _lcm(G[j].exps, h.exps)
                if Li != L and Lj != L:
                    continue
            kept.append(pr)
        pairs[:] = kept + new
        for g in G:
            if g.alive and mon.divides(hpe, g.pe):
                g.alive = False
        G.append(h)

    for f in sorted(gens, key=lambda f: (f.degree(), len(f.terms))):
        t = _reduce(_to_packed(f, mon), alive(), mon, p)
        if t:
            update(_make_elt(t, mon, p, f.degree()))
    while pairs:
        if max_spairs is not None and nsp >= max_spairs:
            raise BudgetExceeded(f"S-pair budget {max_spairs} exhausted")
        if max_seconds is not None and time.monotonic() - start > max_seconds:
            raise BudgetExceeded(f"time budget {max_seconds}s exhausted")
        best = min(range(len(pairs)), key=lambda k: (pairs[k][0], pairs[k][1]))
        sugar, lk, i, j, L, _ = pairs.pop(best)
        nsp += 1
        a, b = G[i], G[j]
        da, db = lk - a.lm, lk - b.lm
        terms = {k + da: c for k, c in a.tail}
        for k, c in b.tail:
            nk = k + db
            v = terms.get(nk, 0) - c
            if p:
                v %= p
            if v:
                terms[nk] = v
            else:
                terms.pop(nk, None)
        h = _reduce(terms, alive(), mon, p)
        if not h:
            zero_red += 1
            continue
        e = _make_elt(h, mon, p, sugar)
        if not any(e.exps):
            G.append(e)
            for g in G[:-1]:
                g.alive = False
            pairs.clear()
            break
        update(e)
    basis = alive()
    final = []
    for k, e in enumerate(basis):
        others = [o for o in basis if o is not e]
        tail = _reduce(dict(e.tail), others, mon, p)
        terms = dict(tail)
        terms[e.lm] = 1
        final.append(_make_elt(terms, mon, p, e.sugar))
    final.sort(key=lambda e: e.lm, reverse=True)
    elements = [_from_packed([(e.lm, 1)] + e.tail, mon, ring) for e in final]
    stats = {"spairs": nsp, "zero_reductions": zero_red, "seconds": time.monotonic() - start}
    return GroebnerBasis(ring, order, elements, stats, final)


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of f modulo the basis."""
    if f.ring != basis.ring:
        raise ValueError("polynomial and basis over different rings")
    if not f.terms:
        return f
    mon = _monomials(basis.ring.nvars, basis.order)
    rem = _reduce(_to_packed(f, mon), basis._packed, mon, basis.ring.field.p)
    return _from_packed(rem.items(), mon, basis.ring)


def leading_term_dimension(lms: list[tuple], nvars: int) -> int:
    """Krull dimension of k[x]/(monomials): the largest variable set
    containing the support of no monomial.  -1 when 1 is among them."""
    if any(not any(m) for m in lms):
        return -1
    supports = sorted({frozenset(i for i, a in enumerate(m) if a) for m in lms}, key=len)
    minimal = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = 0

    def search(i, chosen: set, size):
        nonlocal best
        if size + (nvars - i) <= best:
            return
        if i == nvars:
            best = max(best, size)
            return
        chosen.add(i)
        if not any(s <= chosen for s in minimal):
            search(i + 1, chosen, size + 1)
        chosen.discard(i)
        search(i + 1, chosen, size)

    search(0, set(), 0)
    return best
