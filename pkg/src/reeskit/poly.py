"""Sparse multivariate polynomials over the rationals or a prime field.

A polynomial is a map from exponent tuples to nonzero coefficients.  Rational
coefficients are ``int`` or ``fractions.Fraction``; prime-field coefficients
are ``int`` in ``range(p)``.  Monomial orders are given by weight matrices so
that the Groebner engine can pack exponent vectors into integers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Exponent vectors or points of the wrong length."""


class DivisibilityError(ArithmeticError):
    """Raised by exact division when the divisor does not divide."""


class PolynomialParseError(ValueError):
    def __init__(self, message: str, text: str = "", column: int | None = None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}: {text!r}")


# ---------------------------------------------------------------- fields


class RationalField:
    """Exact rational numbers."""

    characteristic = 0
    p = 0
    name = "QQ"

    def convert(self, value) -> int | Fraction:
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, str):
            return self.convert(Fraction(value))
        raise TypeError(f"cannot convert {value!r} to a rational")

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def symmetric(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field with p elements; elements are ints in range(p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, value) -> int:
        p = self.p
        if isinstance(value, (int, bool)):
            return int(value) % p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, str):
            return self.convert(Fraction(value))
        try:
            return int(value) % p
        except TypeError:
            raise TypeError(f"cannot convert {value!r} to {self.name}") from None

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def symmetric(self, a: int) -> int:
        """Representative in (-p/2, p/2], used for printing."""
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()
DEFAULT_PRIME = 32003


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------- orders


class MonomialOrder:
    """Lex, GrevLex or a two-block elimination order.

    ``perm`` lists variable indices from most to least significant; by default
    the ring order x1 > x2 > ... is used.  ``BlockElimination`` with ``split=k``
    makes the first k variables (in ``perm`` order) dominate, with GrevLex
    inside each block.
    """

    KINDS = ("Lex", "GrevLex", "BlockElimination")

    def __init__(self, kind: str, nvars: int, perm: Sequence[int] | None = None, split: int | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind
        self.nvars = nvars
        self.perm = tuple(range(nvars)) if perm is None else tuple(perm)
        if sorted(self.perm) != list(range(nvars)):
            raise ValueError("perm must be a permutation of the variables")
        if kind == "BlockElimination":
            if split is None or not 0 <= split <= nvars:
                raise ValueError("BlockElimination needs 0 <= split <= nvars")
        self.split = split

    def _ident(self):
        return (self.kind, self.nvars, self.perm, self.split)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        extra = f", split={self.split}" if self.kind == "BlockElimination" else ""
        return f"MonomialOrder({self.kind!r}, {self.nvars}, perm={self.perm}{extra})"

    def weight_rows(self) -> list[list[int]]:
        """A square integer weight matrix realising the order row by row."""
        n, perm = self.nvars, self.perm

        def unit(i, s=1):
            row = [0] * n
            row[i] = s
            return row

        if self.kind == "Lex":
            return [unit(i) for i in perm]

        def grevlex_rows(block):
            if not block:
                return []
            deg = [0] * n
            for i in block:
                deg[i] = 1
            return [deg] + [unit(i, -1) for i in reversed(block[1:])]

        if self.kind == "GrevLex":
            return grevlex_rows(list(perm))
        k = self.split
        return grevlex_rows(list(perm[:k])) + grevlex_rows(list(perm[k:]))

    def key(self, exps: Sequence[int]) -> tuple:
        """Sort key: larger key means larger monomial."""
        if len(exps) != self.nvars:
            raise DimensionError(f"expected {self.nvars} exponents, got {len(exps)}")
        rows = self._rows_cache()
        return tuple(sum(w * e for w, e in zip(row, exps)) for row in rows)

    def _rows_cache(self):
        rows = self.__dict__.get("_rows")
        if rows is None:
            rows = self.weight_rows()
            self.__dict__["_rows"] = rows
        return rows


def lex(n: int, perm=None) -> MonomialOrder:
    return MonomialOrder("Lex", n, perm)


def grevlex(n: int, perm=None) -> MonomialOrder:
    return MonomialOrder("GrevLex", n, perm)


def block_elimination(n: int, split: int, perm=None) -> MonomialOrder:
    return MonomialOrder("BlockElimination", n, perm, split)


def compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as monomial a is less than, equal to or greater than b."""
    if len(a) != len(b):
        raise DimensionError("monomials over different variable counts")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def monomials_of_degree(n: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d in n variables, Lex descending."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return out


# ---------------------------------------------------------------- rings


class PolyRing:
    """k[names]; a light factory for polynomials sharing variables and field."""

    def __init__(self, names: Iterable[str], field=QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.names)
        self.field = field
        self._index = {v: i for i, v in enumerate(self.names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.field!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise DimensionError("wrong exponent length")
        c = self.field.convert(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_terms(self, terms) -> "Polynomial":
        """Build from an iterable of (exps, coeff) or a dict; merges duplicates."""
        items = terms.items() if isinstance(terms, dict) else terms
        conv = self.field.convert
        p = self.field.p
        out: dict = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != self.nvars:
                raise DimensionError("wrong exponent length")
            c = conv(c)
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return self.convert(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Map f into this ring by variable name (and reduce coefficients)."""
        if f.ring == self:
            return f
        idx = []
        for i, name in enumerate(f.ring.names):
            if name in self._index:
                idx.append(self._index[name])
            else:
                idx.append(None)
        terms = []
        for e, c in f.terms.items():
            ne = [0] * self.nvars
            for i, a in enumerate(e):
                if a:
                    j = idx[i]
                    if j is None:
                        raise ValueError(f"variable {f.ring.names[i]} not in target ring")
                    ne[j] = a
            terms.append((tuple(ne), c))
        return self.from_terms(terms)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((sum(w * a for w, a in zip(weights, e)) for e in self.terms), default=-1)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(w * a for w, a in zip(weights, e)) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self, weights=None) -> int | None:
        """The common degree of all terms, None if inhomogeneous, -1 for zero."""
        if not self.terms:
            return -1
        if not self.is_homogeneous(weights):
            return None
        e = next(iter(self.terms))
        return sum(e) if weights is None else sum(w * a for w, a in zip(weights, e))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, a in enumerate(e) if a)
        return out

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or grevlex(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        order = order or grevlex(self.ring.nvars)
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DimensionError("polynomials over different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.field.p
        a, b = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.convert(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=1) -> "Polynomial":
        c = self.ring.field.convert(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        out = {}
        for e, v in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            out[ne] = v * c % p if p else v * c
        return Polynomial(self.ring, out)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        p = self.ring.field.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        """Return q with q*g == self, or raise DivisibilityError."""
        g = self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self.ring.zero()
        field = self.ring.field
        p = field.p
        order = grevlex(self.ring.nvars)
        key = order.key
        lg, lc = max(g.terms.items(), key=lambda t: key(t[0]))
        inv = field.inv(lc)
        gtail = [(e, c) for e, c in g.terms.items() if e != lg]
        rem = dict(self.terms)
        quot = {}
        import heapq

        heap = [(tuple(-v for v in key(e)), e) for e in rem]
        heapq.heapify(heap)
        while heap:
            _, e = heapq.heappop(heap)
            c = rem.pop(e, None)
            if c is None:
                continue
            m = tuple(a - b for a, b in zip(e, lg))
            if min(m) < 0:
                raise DivisibilityError("polynomial is not divisible")
            qc = c * inv % p if p else c * inv
            quot[m] = qc
            for ge, gc in gtail:
                ne = tuple(a + b for a, b in zip(ge, m))
                v = rem.get(ne)
                if v is None:
                    rem[ne] = (-qc * gc) % p if p else -qc * gc
                    heapq.heappush(heap, (tuple(-v for v in key(ne)), ne))
                else:
                    v = v - qc * gc
                    if p:
                        v %= p
                    if v:
                        rem[ne] = v
                    else:
                        del rem[ne]
        return Polynomial(self.ring, quot)

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(self.ring.field.inv(lc))

    def primitive(self) -> "Polynomial":
        """Over QQ: scale to coprime integer coefficients with positive leading
        GrevLex coefficient.  Over a prime field: make monic."""
        if not self.terms or self.ring.field.p:
            return self.monic()
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        ints = {e: int(Fraction(c) * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        _, lc = max(ints.items(), key=lambda t: grevlex(self.ring.nvars).key(t[0]))
        if lc < 0:
            g = -g
        return Polynomial(self.ring, {e: c // g for e, c in ints.items()})

    # -- evaluation and substitution
    def evaluate(self, point: Sequence):
        if len(point) != self.ring.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        field = self.ring.field
        p = field.p
        pt = [field.convert(v) for v in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, a in zip(pt, e):
                if a:
                    t = t * (pow(v, a, p) if p else v ** a)
                    if p:
                        t %= p
            total += t
        if p:
            total %= p
        return field.convert(total)

    def substitute(self, images: Sequence["Polynomial"], ring: PolyRing | None = None) -> "Polynomial":
        """Replace variable i by images[i]; images live in ``ring``."""
        ring = ring or (images[0].ring if images else self.ring)
        if len(images) != self.ring.nvars:
            raise DimensionError("need one image per variable")
        powers: list[dict[int, Polynomial]] = [{0: ring.one()} for _ in images]

        def pw(i, a):
            cache = powers[i]
            if a not in cache:
                b = max(k for k in cache if k < a)
                val = cache[b]
                for _ in range(a - b):
                    val = val * images[i]
                cache[a] = val
            return cache[a]

        result = ring.zero()
        for e, c in self.terms.items():
            t = ring.constant(c)
            for i, a in enumerate(e):
                if a:
                    t = t * pw(i, a)
            result = result + t
        return result

    # -- formatting
    def to_str(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms(order):
            c = field.symmetric(c)
            neg = c < 0
            a = -c if neg else c
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


# ---------------------------------------------------------------- parsing

_NUMBER = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``c*x1^a1*...`` sums; whitespace is ignored."""
    src = text
    s = "".join(text.split())
    if not s:
        raise PolynomialParseError("empty polynomial", src, 0)
    field = ring.field
    pos = 0
    terms: list = []
    n = ring.nvars
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolynomialParseError("expected '+' or '-'", src, pos)
        first = False
        coeff = Fraction(sign)
        exps = [0] * n
        need_factor = True
        while need_factor:
            if pos >= len(s):
                raise PolynomialParseError("unexpected end of input", src, pos)
            m = _NUMBER.match(s, pos)
            if m:
                try:
                    coeff *= Fraction(m.group())
                except ZeroDivisionError:
                    raise PolynomialParseError("zero denominator", src, pos) from None
                pos = m.end()
            else:
                m = _NAME.match(s, pos)
                if not m:
                    raise PolynomialParseError(f"unexpected character {s[pos]!r}", src, pos)
                name = m.group()
                if name not in ring._index:
                    raise PolynomialParseError(f"unknown variable {name!r}", src, pos)
                pos = m.end()
                k = 1
                if pos < len(s) and s[pos] == "^":
                    mi = _INT.match(s, pos + 1)
                    if not mi:
                        raise PolynomialParseError("expected exponent after '^'", src, pos + 1)
                    k = int(mi.group())
                    pos = mi.end()
                exps[ring._index[name]] += k
            if pos < len(s) and s[pos] == "*":
                pos += 1
            else:
                need_factor = False
        terms.append((tuple(exps), field.convert(coeff)))
    return ring.from_terms(terms)
