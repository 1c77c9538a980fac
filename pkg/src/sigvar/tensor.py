"""Truncated tensor series over Q: products, pairing, exp/log, group-likeness."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Mapping

from .words import (
    EMPTY,
    Word,
    WordPolynomial,
    bracketing,
    format_word,
    is_lyndon,
    parse_word,
    shuffle,
)


class OrderMismatch(ValueError):
    pass


class TruncatedTensor:
    """Element of T^m(R^d): a map word -> Fraction for words of length <= m.

    The order m belongs to the value. Arithmetic between different orders is
    refused rather than silently truncated.
    """

    __slots__ = ("order", "entries")

    def __init__(self, order: int, entries: Mapping[Word, Fraction] | None = None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        clean: dict[Word, Fraction] = {}
        for w, c in (entries or {}).items():
            w = tuple(w)
            if len(w) > order:
                raise ValueError(f"word {w} exceeds truncation order {order}")
            c = Fraction(c)
            if c != 0:
                clean[w] = c
        self.entries = clean

    @classmethod
    def unit(cls, order: int) -> "TruncatedTensor":
        return cls(order, {EMPTY: Fraction(1)})

    @classmethod
    def zero(cls, order: int) -> "TruncatedTensor":
        return cls(order)

    @classmethod
    def letter(cls, i: int, order: int, coeff=1) -> "TruncatedTensor":
        return cls(order, {(i,): Fraction(coeff)})

    @classmethod
    def from_word_polynomial(cls, p: WordPolynomial, order: int) -> "TruncatedTensor":
        return cls(order, p.terms)

    def __getitem__(self, w) -> Fraction:
        return self.entries.get(tuple(w), Fraction(0))

    @property
    def constant(self) -> Fraction:
        return self[EMPTY]

    def level(self, k: int) -> dict[Word, Fraction]:
        return {w: c for w, c in self.entries.items() if len(w) == k}

    def _check(self, other: "TruncatedTensor") -> None:
        if not isinstance(other, TruncatedTensor):
            raise TypeError(f"expected TruncatedTensor, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        self._check(other)
        out = dict(self.entries)
        for w, c in other.entries.items():
            out[w] = out.get(w, 0) + c
        return TruncatedTensor(self.order, out)

    def __neg__(self) -> "TruncatedTensor":
        return TruncatedTensor(self.order, {w: -c for w, c in self.entries.items()})

    def __sub__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        return self + (-other)

    def __mul__(self, c) -> "TruncatedTensor":
        if isinstance(c, TruncatedTensor):
            return tensor_product(self, c)
        c = Fraction(c)
        return TruncatedTensor(self.order, {w: v * c for w, v in self.entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        return tensor_product(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedTensor)
            and self.order == other.order
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.order, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{format_word(w) or 'e'}: {c}" for w, c in sorted(self.entries.items()))
        return f"TruncatedTensor(order={self.order}, {{{body}}})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "entries": {format_word(w): str(c) for w, c in sorted(self.entries.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedTensor":
        return cls(
            int(data["order"]),
            {parse_word(k): Fraction(v) for k, v in data["entries"].items()},
        )


def tensor_product(s: TruncatedTensor, t: TruncatedTensor) -> TruncatedTensor:
    """Concatenation product truncated at the common order."""
    s._check(t)
    m = s.order
    out: dict[Word, Fraction] = {}
    by_len: dict[int, list[tuple[Word, Fraction]]] = {}
    for w, c in t.entries.items():
        by_len.setdefault(len(w), []).append((w, c))
    for u, a in s.entries.items():
        room = m - len(u)
        for n in range(room + 1):
            for v, b in by_len.get(n, ()):
                out[u + v] = out.get(u + v, 0) + a * b
    return TruncatedTensor(m, out)


def pairing(t: TruncatedTensor, p: WordPolynomial) -> Fraction:
    """<T, p>, extended linearly from <T, w> = T_w."""
    total = Fraction(0)
    for w, c in p.terms.items():
        if len(w) > t.order:
            raise ValueError(f"word {w} is beyond truncation order {t.order}")
        total += c * t[w]
    return total


@dataclass(frozen=True)
class LieElement:
    """Coordinates in the Lyndon bracket basis of the truncated free Lie algebra."""

    order: int
    coefficients: Mapping[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for w in self.coefficients:
            if not w or not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word")
            if len(w) > self.order:
                raise ValueError(f"Lyndon word {w} exceeds order {self.order}")

    def to_tensor(self) -> TruncatedTensor:
        out = TruncatedTensor.zero(self.order)
        for w, c in self.coefficients.items():
            out = out + TruncatedTensor.from_word_polynomial(bracketing(w), self.order) * c
        return out


def _as_tensor(x) -> TruncatedTensor:
    return x.to_tensor() if isinstance(x, LieElement) else x


def exp_truncated(x, m: int | None = None) -> TruncatedTensor:
    """sum_{n=0}^{m} X^n / n! for X with zero constant term."""
    t = _as_tensor(x)
    if m is not None and m != t.order:
        raise OrderMismatch(f"requested order {m} but argument has order {t.order}")
    if t.constant != 0:
        raise ValueError("exp needs a tensor with zero constant term")
    result = TruncatedTensor.unit(t.order)
    power = TruncatedTensor.unit(t.order)
    for n in range(1, t.order + 1):
        power = tensor_product(power, t)
        if not power.entries:
            break
        result = result + power * Fraction(1, factorial(n))
    return result


def log_truncated(t: TruncatedTensor, m: int | None = None) -> TruncatedTensor:
    """Formal logarithm sum_{n>=1} (-1)^{n+1} (T-1)^n / n for T with T_e = 1."""
    if m is not None and m != t.order:
        raise OrderMismatch(f"requested order {m} but argument has order {t.order}")
    if t.constant != 1:
        raise ValueError("log needs a tensor with constant term 1")
    x = t - TruncatedTensor.unit(t.order)
    result = TruncatedTensor.zero(t.order)
    power = TruncatedTensor.unit(t.order)
    for n in range(1, t.order + 1):
        power = tensor_product(power, x)
        if not power.entries:
            break
        result = result + power * Fraction((-1) ** (n + 1), n)
    return result


def is_group_like(t: TruncatedTensor, d: int | None = None) -> bool:
    """Check T_e = 1 and every shuffle relation with l(v) + l(w) <= order.

    The alphabet defaults to the largest letter present in T.
    """
    if t.constant != 1:
        return False
    if d is None:
        d = max((max(w) for w in t.entries if w), default=1)
    m = t.order
    for lv in range(1, m):
        for v in product(range(1, d + 1), repeat=lv):
            tv = t[v]
            for lw in range(lv, m - lv + 1):
                for w in product(range(1, d + 1), repeat=lw):
                    if pairing(t, shuffle(v, w)) != tv * t[w]:
                        return False
    return True
