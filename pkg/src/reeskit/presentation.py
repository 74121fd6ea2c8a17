"""Presentation matrices of height-two perfect ideals, plus the named instances."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .poly import QQ, PolyRing, Polynomial, PolynomialParseError


class InputError(ValueError):
    """Malformed presentation input; ``line``/``column`` locate JSON errors."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)


@dataclass
class PresentationInput:
    """An (n+1) x n matrix over R = k[x_1..x_n] with homogeneous columns."""

    xvars: tuple
    degrees: tuple
    matrix: list  # rows of Polynomial in R
    field: object = QQ
    params: dict = dc_field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.xvars = tuple(self.xvars)
        self.degrees = tuple(self.degrees)
        n = self.n
        if n < 2:
            raise InputError("need at least two x-variables")
        if len(self.matrix) != n + 1 or any(len(r) != n for r in self.matrix):
            raise InputError(f"matrix must be {n + 1} x {n}")
        if len(self.degrees) != n:
            raise InputError(f"expected {n} column degrees")
        if list(self.degrees) != sorted(self.degrees):
            raise InputError("column degrees must be non-decreasing")
        for j in range(n):
            col = [self.matrix[i][j] for i in range(n + 1)]
            if not any(c.terms for c in col):
                raise InputError(f"column {j + 1} is zero")
            for c in col:
                if c.terms and c.homogeneous_degree() != self.degrees[j]:
                    raise InputError(f"column {j + 1} is not homogeneous of degree {self.degrees[j]}")

    @property
    def n(self) -> int:
        return len(self.xvars)

    @property
    def d(self) -> int:
        return sum(self.degrees)

    @property
    def delta(self) -> int:
        return self.d - self.n

    @property
    def R(self) -> PolyRing:
        return self.matrix[0][0].ring

    @property
    def tvars(self) -> tuple:
        return tuple(f"T{i}" for i in range(self.n + 1))

    @property
    def S(self) -> PolyRing:
        return PolyRing(self.tvars, self.field)

    @property
    def B(self) -> PolyRing:
        return PolyRing(self.xvars + self.tvars, self.field)

    def with_field(self, field) -> "PresentationInput":
        R = PolyRing(self.xvars, field)
        mat = [[R.from_terms(c.terms) for c in row] for row in self.matrix]
        return PresentationInput(self.xvars, self.degrees, mat, field, dict(self.params), self.name)

    def l_forms(self) -> list[Polynomial]:
        """[l_1..l_n] = [T_0..T_n] * matrix, in the bigraded ring B."""
        B = self.B
        n = self.n
        T = [B.gen(n + i) for i in range(n + 1)]
        out = []
        for j in range(n):
            acc = B.zero()
            for i in range(n + 1):
                acc = acc + B.convert(self.matrix[i][j]) * T[i]
            out.append(acc)
        return out

    def maximal_minors(self) -> list[Polynomial]:
        """f_0..f_n with f_i = (-1)^i det(matrix with row i deleted)."""
        from .complexes import det_poly

        n = self.n
        out = []
        for i in range(n + 1):
            sub = [self.matrix[r] for r in range(n + 1) if r != i]
            m = det_poly(sub, self.R)
            out.append(m if i % 2 == 0 else -m)
        return out

    def minors(self, size: int) -> list[Polynomial]:
        from .complexes import det_poly

        n = self.n
        out = []
        for rows in combinations(range(n + 1), size):
            for cols in combinations(range(n), size):
                m = det_poly([[self.matrix[r][c] for c in cols] for r in rows], self.R)
                if m.terms:
                    out.append(m)
        return out

    # -- serialisation
    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "vars": list(self.xvars),
            "degrees": list(self.degrees),
            "matrix": [[c.to_str() for c in row] for row in self.matrix],
            "params": dict(self.params),
            **({"name": self.name} if self.name else {}),
        }


def parse_input(text: str, field=QQ) -> PresentationInput:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return input_from_dict(doc, field)


def input_from_dict(doc, field=QQ) -> PresentationInput:
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    for key in ("vars", "degrees", "matrix"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    xvars = doc["vars"]
    if not isinstance(xvars, list) or not all(isinstance(v, str) for v in xvars):
        raise InputError("'vars' must be a list of names")
    if "n" in doc and doc["n"] != len(xvars):
        raise InputError("'n' disagrees with the number of variables")
    R = PolyRing(xvars, field)
    mat = []
    for i, row in enumerate(doc["matrix"]):
        if not isinstance(row, list):
            raise InputError(f"matrix row {i + 1} is not a list")
        out = []
        for j, s in enumerate(row):
            if isinstance(s, int):
                s = str(s)
            if not isinstance(s, str):
                raise InputError(f"entry ({i + 1},{j + 1}) is not a string")
            try:
                out.append(R.parse(s))
            except PolynomialParseError as exc:
                raise InputError(f"entry ({i + 1},{j + 1}): {exc}") from None
        mat.append(out)
    params = doc.get("params") or {}
    return PresentationInput(tuple(xvars), tuple(doc["degrees"]), mat, field, dict(params), doc.get("name", ""))


def load_input(path, field=QQ) -> PresentationInput:
    with open(path) as fh:
        return parse_input(fh.read(), field)


# ---------------------------------------------------------------- instances


def _build(rows, degrees, field, params=None, name="", xvars=("x", "y", "z")):
    R = PolyRing(xvars, field)
    mat = [[R.parse(s) for s in row] for row in rows]
    return PresentationInput(tuple(xvars), tuple(degrees), mat, field, dict(params or {}), name)


def staircase_family(q: int, gamma=1, field=QQ) -> PresentationInput:
    """The type (1, 2, q) family: columns (x,y,z,0), (y^2,z^2,x^2,xy+yz+xz),
    (gamma z^q, y z^(q-1), y^q, 0)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    g = str(gamma)
    rows = [
        ["x", "y^2", f"{g}*z^{q}"],
        ["y", "z^2", f"y*z^{q - 1}"],
        ["z", "x^2", f"y^{q}"],
        ["0", "x*y+y*z+x*z", "0"],
    ]
    return _build(rows, (1, 2, q), field, {"q": q, "gamma": gamma}, f"staircase_q{q}")


def nonbirational_example(field=QQ) -> PresentationInput:
    """Type (2,2,4) matrix whose map has degree 2 onto its image."""
    rows = [
        ["x^2", "0", "x^4"],
        ["y^2", "x^2", "y^4"],
        ["z^2", "y^2", "z^4"],
        ["0", "z^2", "x^3*z"],
    ]
    return _build(rows, (2, 2, 4), field, {}, "nonbirational")


def boundary_example(field=QQ) -> PresentationInput:
    """Type (1,2,3) matrix that is birational although one middle strand is not exact."""
    rows = [
        ["x", "0", "x^3"],
        ["y", "x^2", "0"],
        ["0", "y^2", "z^3"],
        ["0", "z^2", "0"],
    ]
    return _build(rows, (1, 2, 3), field, {}, "boundary")


NAMED = {
    "ex44a": lambda field=QQ: _named(staircase_family(3, 1, field), "ex44a"),
    "ex44b": lambda field=QQ: _named(nonbirational_example(field), "ex44b"),
    "ex62_q3": lambda field=QQ: _named(staircase_family(3, 1, field), "ex62_q3"),
    "ex62_q4": lambda field=QQ: _named(staircase_family(4, 1, field), "ex62_q4"),
    "rem68": lambda field=QQ: _named(boundary_example(field), "rem68"),
}


def _named(inp, name):
    inp.name = name
    return inp
