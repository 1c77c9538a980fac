"""Words, the shuffle and concatenation products, and Lyndon words.

A word is a tuple of positive integers (letters are 1-based); the empty word
is ``()``.  Tuples compare lexicographically with a proper prefix smaller than
its extensions, which is exactly the order used for Lyndon words.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping

Word = tuple[int, ...]
EMPTY: Word = ()


def parse_word(text: str) -> Word:
    """Parse ``"1,2,1"``; the empty string (or ``"e"``) is the empty word."""
    text = text.strip()
    if text in ("", "e"):
        return EMPTY
    letters = tuple(int(x) for x in text.split(","))
    if any(x < 1 for x in letters):
        raise ValueError(f"letters must be positive: {text!r}")
    return letters


def format_word(w: Word) -> str:
    return ",".join(map(str, w))


def check_word(w: Iterable[int]) -> Word:
    w = tuple(int(x) for x in w)
    if any(x < 1 for x in w):
        raise ValueError(f"letters must be positive: {w}")
    return w


def words_of_length(d: int, n: int) -> Iterator[Word]:
    """All words of length n over {1..d} in lexicographic order."""
    return product(range(1, d + 1), repeat=n)


def words_upto(d: int, m: int) -> Iterator[Word]:
    for n in range(m + 1):
        yield from words_of_length(d, n)


class WordPolynomial:
    """Finite Q-linear combination of words (an element of T(R^d))."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        clean: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[check_word(w)] = clean.get(check_word(w), 0) + c
        self.terms = {w: c for w, c in clean.items() if c != 0}

    @classmethod
    def word(cls, w: Iterable[int], coeff=1) -> "WordPolynomial":
        return cls({tuple(w): Fraction(coeff)})

    @classmethod
    def unit(cls) -> "WordPolynomial":
        return cls({EMPTY: Fraction(1)})

    def __add__(self, other: "WordPolynomial") -> "WordPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return WordPolynomial(out)

    def __neg__(self) -> "WordPolynomial":
        return WordPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "WordPolynomial") -> "WordPolynomial":
        return self + (-other)

    def __mul__(self, c) -> "WordPolynomial":
        if isinstance(c, WordPolynomial):
            raise TypeError("use concat() or shuffle_poly() to multiply word polynomials")
        c = Fraction(c)
        return WordPolynomial({w: v * c for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, WordPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, w: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def mass(self) -> Fraction:
        """Sum of all coefficients."""
        return sum(self.terms.values(), Fraction(0))

    def __repr__(self) -> str:
        return f"WordPolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            name = "".join(map(str, w)) if all(x < 10 for x in w) else format_word(w)
            name = name or "e"
            parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"terms": {format_word(w): str(c) for w, c in sorted(self.terms.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "WordPolynomial":
        return cls({parse_word(k): Fraction(v) for k, v in data["terms"].items()})


def concat(p: WordPolynomial, q: WordPolynomial) -> WordPolynomial:
    """Concatenation (non-commutative) product."""
    out: dict[Word, Fraction] = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            out[u + v] = out.get(u + v, 0) + a * b
    return WordPolynomial(out)


@lru_cache(maxsize=None)
def _shuffle_words(v: Word, w: Word) -> tuple[tuple[Word, int], ...]:
    if not v:
        return ((w, 1),)
    if not w:
        return ((v, 1),)
    # (v'a) ⧢ (w'b) = (v' ⧢ w'b) a + (v'a ⧢ w') b
    out: dict[Word, int] = {}
    for u, c in _shuffle_words(v[:-1], w):
        out[u + v[-1:]] = out.get(u + v[-1:], 0) + c
    for u, c in _shuffle_words(v, w[:-1]):
        out[u + w[-1:]] = out.get(u + w[-1:], 0) + c
    return tuple(sorted(out.items()))


def shuffle(v: Iterable[int], w: Iterable[int]) -> WordPolynomial:
    """Sum of all order-preserving interleavings of v and w, with multiplicity."""
    return WordPolynomial({u: Fraction(c) for u, c in _shuffle_words(tuple(v), tuple(w))})


def shuffle_poly(p: WordPolynomial, q: WordPolynomial) -> WordPolynomial:
    out: dict[Word, Fraction] = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            for x, c in _shuffle_words(u, v):
                out[x] = out.get(x, 0) + a * b * c
    return WordPolynomial(out)


def shuffle_power(p: WordPolynomial, n: int) -> WordPolynomial:
    out = WordPolynomial.unit()
    for _ in range(n):
        out = shuffle_poly(out, p)
    return out


def shuffle_mass(v: Word, w: Word) -> int:
    return comb(len(v) + len(w), len(v))


def is_lyndon(w: Iterable[int]) -> bool:
    """True iff w is strictly smaller than each of its proper suffixes."""
    w = tuple(w)
    if not w:
        raise ValueError("the empty word is not a Lyndon word candidate")
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(d: int, m: int) -> list[Word]:
    """Lyndon words over {1..d} of length at most m, lexicographically sorted.

    Duval's generation algorithm; it emits words in lexicographic order.
    """
    if d < 1 or m < 1:
        raise ValueError("need d >= 1 and m >= 1")
    out: list[Word] = []
    w = [1]
    while w:
        out.append(tuple(w))
        # extend periodically to length m, then strip trailing maximal letters
        n = len(w)
        while len(w) < m:
            w.append(w[len(w) - n])
        while w and w[-1] == d:
            w.pop()
        if w:
            w[-1] += 1
    return out


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """Split a Lyndon word w = pq with q its lexicographically smallest proper suffix."""
    if len(w) < 2:
        raise ValueError("single letters have no standard factorization")
    i = min(range(1, len(w)), key=lambda j: w[j:])
    return w[:i], w[i:]


def bracketing(w: Iterable[int]) -> WordPolynomial:
    """Expand the standard bracketing of a Lyndon word in the concatenation algebra."""
    w = tuple(w)
    if not w or not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    return _bracketing(w)


@lru_cache(maxsize=None)
def _bracketing(w: Word) -> WordPolynomial:
    if len(w) == 1:
        return WordPolynomial.word(w)
    p, q = standard_factorization(w)
    bp, bq = _bracketing(p), _bracketing(q)
    return concat(bp, bq) - concat(bq, bp)


def mobius(t: int) -> int:
    if t < 1:
        raise ValueError("Möbius function is defined on positive integers")
    result = 1
    p = 2
    while p * p <= t:
        if t % p == 0:
            t //= p
            if t % p == 0:
                return 0
            result = -result
        p += 1
    if t > 1:
        result = -result
    return result


def lyndon_count(d: int, length: int) -> int:
    """Number of Lyndon words of exactly the given length (necklace formula)."""
    total = sum(mobius(t) * d ** (length // t) for t in range(1, length + 1) if length % t == 0)
    assert total % length == 0
    return total // length


def lie_dimension(d: int, m: int) -> int:
    """Dimension of the free Lie algebra truncated at degree m."""
    if d < 1 or m < 1:
        raise ValueError("need d >= 1 and m >= 1")
    return sum(lyndon_count(d, n) for n in range(1, m + 1))

