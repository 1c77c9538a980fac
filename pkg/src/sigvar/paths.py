"""Piecewise-linear and axis-parallel paths and their signatures.

Axis-path entries are computed from the combinatorial description: the entry
at a word i_1..i_k sums, over non-decreasing index sequences j_1 <= .. <= j_k
with nu_{j_l} = i_l, the product of the a_{j_l} divided by the factorials of
the run lengths. The same routine runs over Fractions, over ``Poly`` (symbolic
lengths) and over exact jets (value plus gradient), which is how Jacobian
ranks are obtained without any floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Mapping, Sequence

from .linalg import rank as exact_rank
from .poly import Poly
from .tensor import TruncatedTensor, tensor_product
from .words import Word, check_word

DEFAULT_SEED = 20190101
POINT_RANGE = 1000


class FillingExhausted(RuntimeError):
    """Raised when filling_shape still gains rank at ``max_len``."""

    def __init__(self, shape: Word, max_len: int):
        super().__init__(f"rank still increasing at max_len={max_len}; last shape {shape}")
        self.shape = shape
        self.max_len = max_len


@dataclass(frozen=True)
class PLPath:
    d: int
    steps: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        steps = tuple(tuple(Fraction(x) for x in s) for s in self.steps)
        if not steps:
            raise ValueError("a path needs at least one step")
        if any(len(s) != self.d for s in steps):
            raise ValueError(f"every step must have {self.d} coordinates")
        object.__setattr__(self, "steps", steps)

    def concat(self, other: "PLPath") -> "PLPath":
        if other.d != self.d:
            raise ValueError("paths live in different dimensions")
        return PLPath(self.d, self.steps + other.steps)

    def to_json(self) -> dict:
        return {"d": self.d, "steps": [[str(x) for x in s] for s in self.steps]}

    @classmethod
    def from_json(cls, data: Mapping) -> "PLPath":
        return cls(int(data["d"]), tuple(tuple(Fraction(x) for x in s) for s in data["steps"]))


@dataclass(frozen=True)
class AxisPath:
    """Axis-parallel path: step i is lengths[i] times the basis vector e_{shape[i]}."""

    shape: Word
    lengths: tuple[Fraction, ...]

    def __post_init__(self):
        shape = check_word(self.shape)
        if not shape:
            raise ValueError("empty shape")
        lengths = tuple(Fraction(x) for x in self.lengths)
        if len(lengths) != len(shape):
            raise ValueError("shape and lengths differ in length")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "lengths", lengths)

    @property
    def d(self) -> int:
        return max(self.shape)

    def partition(self) -> dict[int, list[int]]:
        """pi_nu: letter -> 1-based step indices carrying that letter."""
        out: dict[int, list[int]] = {i: [] for i in range(1, self.d + 1)}
        for j, letter in enumerate(self.shape, start=1):
            out[letter].append(j)
        return out

    def to_pl(self, d: int | None = None) -> PLPath:
        d = d or self.d
        steps = []
        for letter, a in zip(self.shape, self.lengths):
            v = [Fraction(0)] * d
            v[letter - 1] = a
            steps.append(tuple(v))
        return PLPath(d, tuple(steps))

    def concat(self, other: "AxisPath") -> "AxisPath":
        return AxisPath(self.shape + other.shape, self.lengths + other.lengths)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "lengths": [str(x) for x in self.lengths]}

    @classmethod
    def from_json(cls, data: Mapping) -> "AxisPath":
        return cls(tuple(data["shape"]), tuple(Fraction(x) for x in data["lengths"]))


def segment_signature(v: Sequence, m: int) -> TruncatedTensor:
    """exp of a single linear step: entry at i_1..i_k is v_{i_1}...v_{i_k} / k!."""
    v = [Fraction(x) for x in v]
    d = len(v)
    entries: dict[Word, Fraction] = {(): Fraction(1)}
    prev = {(): Fraction(1)}
    for k in range(1, m + 1):
        cur = {}
        for w, c in prev.items():
            for i in range(d):
                if v[i]:
                    cur[w + (i + 1,)] = c * v[i] / k
        entries.update(cur)
        prev = cur
    return TruncatedTensor(m, entries)


def signature_pl(path: PLPath, m: int) -> TruncatedTensor:
    """Chen's identity: product of the segment signatures, left to right."""
    sig = TruncatedTensor.unit(m)
    for step in path.steps:
        sig = tensor_product(sig, segment_signature(step, m))
    return sig


def _entry(shape: Word, word: Word, a: Sequence, zero, one):
    k, m = len(word), len(shape)
    memo: dict[tuple[int, int], object] = {}

    def g(l: int, start: int):
        if l == k:
            return one
        key = (l, start)
        if key in memo:
            return memo[key]
        total = zero
        letter = word[l]
        for j in range(start, m):
            if shape[j] != letter:
                continue
            p = one
            r = 0
            # a run of r equal indices j contributes a_j^r / r!
            while l + r < k and word[l + r] == letter:
                r += 1
                p = p * a[j]
                total = total + p * Fraction(1, factorial(r)) * g(l + r, j + 1)
        memo[key] = total
        return total

    return g(0, 0)


def axis_signature_entry(shape: Sequence[int], a: Sequence, word: Sequence[int]):
    """Signature entry of an axis path at ``word``.

    ``a`` may hold rationals or ``Poly`` objects; pass ``a=None`` to get the
    entry as a polynomial in the symbolic lengths a_1..a_m.
    """
    shape, word = check_word(shape), check_word(word)
    if a is None:
        a = Poly.variables(len(shape))
    if len(a) != len(shape):
        raise ValueError("need one length per step")
    if isinstance(a[0], Poly):
        nv = a[0].nvars
        return _entry(shape, word, a, Poly(nv), Poly.const(nv, 1))
    a = [Fraction(x) for x in a]
    return _entry(shape, word, a, Fraction(0), Fraction(1))


def axis_signature(shape: Sequence[int], a: Sequence | None, k: int, d: int | None = None) -> dict:
    """Level-k signature g_{nu,k}: all d^k entries, keyed by word."""
    shape = check_word(shape)
    d = d or max(shape)
    if a is None:
        a = Poly.variables(len(shape))
    return {w: axis_signature_entry(shape, a, w) for w in product(range(1, d + 1), repeat=k)}


def axis_signature_tensor(path: AxisPath, m: int, d: int | None = None) -> TruncatedTensor:
    """Full truncated signature up to order m from the closed formula."""
    entries: dict[Word, Fraction] = {(): Fraction(1)}
    for k in range(1, m + 1):
        entries.update(axis_signature(path.shape, path.lengths, k, d))
    return TruncatedTensor(m, entries)


class _Jet:
    """Exact value together with its gradient in the path lengths."""

    __slots__ = ("val", "grad")

    def __init__(self, val: Fraction, grad: tuple[Fraction, ...]):
        self.val = val
        self.grad = grad

    def __add__(self, other: "_Jet") -> "_Jet":
        return _Jet(self.val + other.val, tuple(x + y for x, y in zip(self.grad, other.grad)))

    def __mul__(self, other) -> "_Jet":
        if isinstance(other, _Jet):
            return _Jet(
                self.val * other.val,
                tuple(self.val * y + other.val * x for x, y in zip(self.grad, other.grad)),
            )
        return _Jet(self.val * other, tuple(x * other for x in self.grad))


@dataclass
class SignatureJacobian:
    """d g_{nu,k} / d a at a rational point; rows follow the words in order."""

    shape: Word
    k: int
    point: tuple[Fraction, ...]
    words: list[Word]
    matrix: list[list[Fraction]]

    @classmethod
    def at(cls, shape: Sequence[int], k: int, point: Sequence, d: int | None = None):
        shape = check_word(shape)
        m = len(shape)
        if len(point) != m:
            raise ValueError("point must have one coordinate per step")
        d = d or max(shape)
        pt = tuple(Fraction(x) for x in point)
        zeros = (Fraction(0),) * m
        a = [_Jet(x, tuple(Fraction(int(i == j)) for i in range(m))) for j, x in enumerate(pt)]
        words = list(product(range(1, d + 1), repeat=k))
        rows = [_entry(shape, w, a, _Jet(Fraction(0), zeros), _Jet(Fraction(1), zeros)).grad for w in words]
        return cls(shape, k, pt, words, [list(r) for r in rows])

    def rank(self) -> int:
        return exact_rank(self.matrix)


def random_point(m: int, rng: random.Random) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-POINT_RANGE, POINT_RANGE)) for _ in range(m))


@dataclass
class RankProbe:
    shape: Word
    k: int
    rank: int
    ranks: list[int]
    seed: int | None
    points: list[tuple[Fraction, ...]] = field(repr=False)

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "k": self.k,
            "rank": self.rank,
            "length": len(self.shape),
            "ranks": self.ranks,
            "seed": self.seed,
            "points": [[str(x) for x in p] for p in self.points],
            "kind": "generic rank (probabilistic)" if self.seed is not None else "rank at point",
        }


def rank_probe(
    shape: Sequence[int],
    k: int,
    point: Sequence | None = None,
    trials: int = 3,
    seed: int = DEFAULT_SEED,
    d: int | None = None,
) -> RankProbe:
    shape = check_word(shape)
    if not shape:
        raise ValueError("empty shape")
    if point is not None:
        points = [tuple(Fraction(x) for x in point)]
        seed_used = None
    else:
        rng = random.Random(seed)
        points = [random_point(len(shape), rng) for _ in range(trials)]
        seed_used = seed
    ranks = []
    for p in points:
        ranks.append(SignatureJacobian.at(shape, k, p, d).rank())
        if ranks[-1] == len(shape):
            break  # cannot exceed the number of parameters
    return RankProbe(shape, k, max(ranks), ranks, seed_used, points)


def jacobian_rank(
    shape: Sequence[int],
    k: int,
    point: Sequence | None = None,
    trials: int = 3,
    seed: int = DEFAULT_SEED,
    d: int | None = None,
) -> int:
    """Exact rank of the Jacobian of g_{nu,k}.

    At ``point`` if one is given, otherwise the maximum over ``trials`` seeded
    integer points with coordinates in [-1000, 1000].
    """
    return rank_probe(shape, k, point, trials, seed, d).rank


def is_defective(shape: Sequence[int], k: int, trials: int = 3, seed: int = DEFAULT_SEED) -> bool:
    """True when the generic Jacobian rank is below the number of parameters."""
    return jacobian_rank(shape, k, trials=trials, seed=seed) < len(check_word(shape))


def filling_shape(
    d: int,
    k: int,
    max_len: int = 40,
    seed: int = DEFAULT_SEED,
    rank_fn: Callable[[Word, int], int] | None = None,
) -> Word:
    """Greedy non-defective shape whose rank no single letter can increase.

    Letters that would not raise the rank are never kept, so the returned
    shape always has rank equal to its length.
    """
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    rank_fn = rank_fn or (lambda s, kk: jacobian_rank(s, kk, seed=seed, d=d))
    shape: Word = (1,)
    while True:
        grown = None
        for letter in range(1, d + 1):
            cand = shape + (letter,)
            if rank_fn(cand, k) == len(cand):
                grown = cand
                break
        if grown is None:
            return shape
        if len(grown) > max_len:
            raise FillingExhausted(shape, max_len)
        shape = grown
