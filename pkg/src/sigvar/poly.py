"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class Poly:
    """Polynomial in ``nvars`` variables a1..an.

    Stored as a map exponent-vector -> Fraction with zero terms removed.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} does not match {nvars} variables")
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The variable a_{i+1} (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> list["Poly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "Poly":
        return cls(len(exponent), {tuple(exponent): Fraction(coeff)})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.nvars, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        """Exactly one term (coefficient arbitrary nonzero)."""
        return len(self.terms) == 1

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def diff(self, i: int) -> "Poly":
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), 0) + c * e[i]
        return Poly(self.nvars, out)

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t *= x**k
            total += t
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose with a polynomial map a_i -> images[i]."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        out = Poly(nv)
        for e, c in self.terms.items():
            t = Poly.const(nv, c)
            for img, k in zip(images, e):
                if k:
                    t = t * img**k
            out = out + t
        return out

    def divisible_by_monomial(self, exponent: Sequence[int]) -> bool:
        return all(all(a >= b for a, b in zip(e, exponent)) for e in self.terms)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"a{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [[list(e), str(c)] for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly":
        return cls(data["nvars"], {tuple(e): Fraction(c) for e, c in data["terms"]})


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    out: dict[Exponent, Fraction] = {}
    for p in polys:
        for e, c in p.terms.items():
            out[e] = out.get(e, 0) + c
    return Poly(nvars, out)


def leibniz_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by cofactor expansion along the first row."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars
    if n == 1:
        return matrix[0][0]
    total = Poly(nv)
    for j in range(n):
        if matrix[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * leibniz_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
