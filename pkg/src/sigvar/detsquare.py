"""The second-level signature determinant of axis paths is a square.

For a shape nu over {1..d}, 2^d det(sigma^(2)) equals P(a)^2 where P is the
signed sum over good subshapes. This module builds both sides, the shuffle
version of the identity, the +-1 evaluation point with its Pfaffian, and the
graph expansion of the coefficient of M_nu.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial, prod
from typing import Sequence

from .linalg import det as exact_det
from .paths import DEFAULT_SEED, AxisPath, axis_signature_entry, axis_signature_tensor, random_point
from .poly import Poly, leibniz_det
from .tensor import pairing
from .words import Word, WordPolynomial, check_word, shuffle_poly

TERM_BUDGET = 10**6
DET_SHUFFLE_MAX_D = 4


class DegenerateShape(ValueError):
    pass


def permutation_sign(values: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparable values."""
    values = list(values)
    sign = 1
    seen = [False] * len(values)
    order = {v: i for i, v in enumerate(sorted(values))}
    perm = [order[v] for v in values]
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class GoodSubshape:
    indices: tuple[int, ...]  # 1-based, increasing
    values: tuple[int, ...]
    sign: int

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "values": list(self.values), "sign": self.sign}


def _letters(shape: Word) -> int:
    d = max(shape)
    missing = set(range(1, d + 1)) - set(shape)
    if missing:
        raise DegenerateShape(f"letters {sorted(missing)} missing from shape {shape}")
    return d


def good_subshapes(shape: Sequence[int]) -> list[GoodSubshape]:
    """Increasing index tuples whose letters are a permutation of {1..d}."""
    shape = check_word(shape)
    d = _letters(shape)
    out = []
    for idx in combinations(range(len(shape)), d):
        vals = tuple(shape[i] for i in idx)
        if len(set(vals)) == d:
            out.append(GoodSubshape(tuple(i + 1 for i in idx), vals, permutation_sign(vals)))
    return out


def p_polynomial(shape: Sequence[int]) -> Poly:
    """P(a): signed sum of the products a_{i_1}...a_{i_d} over good subshapes."""
    shape = check_word(shape)
    m = len(shape)
    terms: dict[tuple[int, ...], Fraction] = {}
    for g in good_subshapes(shape):
        e = [0] * m
        for i in g.indices:
            e[i - 1] = 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + g.sign
    return Poly(m, terms)


def second_level_matrix(shape: Sequence[int], a: Sequence | None = None, d: int | None = None):
    """d x d matrix of level-2 signature entries; symbolic when ``a`` is None."""
    shape = check_word(shape)
    d = d or max(shape)
    if a is None:
        a = Poly.variables(len(shape))
    return [[axis_signature_entry(shape, a, (i, j)) for j in range(1, d + 1)] for i in range(1, d + 1)]


def det2(shape: Sequence[int]) -> Poly:
    """Symbolic det sigma^(2) as a polynomial in a_1..a_m."""
    return leibniz_det(second_level_matrix(shape))


def det2_at(shape: Sequence[int], a: Sequence) -> Fraction:
    return exact_det(second_level_matrix(shape, [Fraction(x) for x in a]))


def _p_at(shape: Word, a: Sequence[Fraction]) -> Fraction:
    try:
        subs = good_subshapes(shape)
    except DegenerateShape:
        return Fraction(0)
    return sum((g.sign * prod(a[i - 1] for i in g.indices) for g in subs), Fraction(0))


def symbolic_cost(shape: Sequence[int]) -> int:
    """Rough term count of the symbolic expansion of both sides."""
    shape = check_word(shape)
    d = max(shape)
    counts = [shape.count(i) for i in range(1, d + 1)]
    n_sub = prod(counts)
    # entry (i, j) has at most c_i * c_j monomials
    det_terms = factorial(d) * prod(c * c for c in counts)
    return max(n_sub * n_sub, det_terms)


@dataclass
class DetSquareVerdict:
    shape: Word
    lhs: str
    rhs: str
    equal: bool
    mode: str
    seed: int | None = None
    point: tuple[Fraction, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "shape": list(self.shape),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "mode": self.mode,
            "seed": self.seed,
        }
        if self.point is not None:
            out["point"] = [str(x) for x in self.point]
        return out


def verify_det_square(
    shape: Sequence[int],
    a: Sequence | None = None,
    budget: int = TERM_BUDGET,
    seed: int = DEFAULT_SEED,
) -> DetSquareVerdict:
    """Check 2^d det sigma^(2) = P(a)^2.

    With a point the check is an exact evaluation. Without one it is a
    symbolic comparison, unless the expansion would exceed ``budget`` terms,
    in which case a seeded random integer point is used instead.
    """
    shape = check_word(shape)
    d = max(shape)
    if a is None and symbolic_cost(shape) <= budget:
        lhs = det2(shape) * 2**d
        try:
            p = p_polynomial(shape)
        except DegenerateShape:
            p = Poly(len(shape))
        rhs = p * p
        return DetSquareVerdict(shape, str(lhs), str(rhs), lhs == rhs, "symbolic")
    used_seed = None
    if a is None:
        used_seed = seed
        a = random_point(len(shape), random.Random(seed))
    a = tuple(Fraction(x) for x in a)
    lhs = det2_at(shape, a) * 2**d
    rhs = _p_at(shape, a) ** 2
    return DetSquareVerdict(shape, str(lhs), str(rhs), lhs == rhs, "point", used_seed, a)


def inv(d: int) -> WordPolynomial:
    """Signed sum of the words rho(1)...rho(d) over all permutations rho."""
    if d < 1:
        raise ValueError("d must be positive")
    return WordPolynomial({p: Fraction(permutation_sign(p)) for p in permutations(range(1, d + 1))})


def pairing_inv(shape: Sequence[int], a: Sequence) -> Fraction:
    """<sigma(X), inv_d> for the axis path (shape, a); equals P(a)."""

    path = AxisPath(tuple(shape), tuple(a))
    d = path.d
    return pairing(axis_signature_tensor(path, d), inv(d))


def det_shuffle_size(d: int) -> int:
    """Upper bound on the number of words in the shuffle determinant expansion."""
    return factorial(d) * factorial(2 * d) // 2**d


def det_shuffle(d: int) -> WordPolynomial:
    """Leibniz expansion of det of the word matrix (ij) with shuffle products."""
    if d < 1:
        raise ValueError("d must be positive")
    if d > DET_SHUFFLE_MAX_D:
        raise ValueError(
            f"d={d} exceeds the guard {DET_SHUFFLE_MAX_D}; "
            f"expansion would touch about {det_shuffle_size(d)} words"
        )
    total = WordPolynomial()
    for rho in permutations(range(1, d + 1)):
        term = WordPolynomial.unit()
        for i, j in zip(range(1, d + 1), rho):
            term = shuffle_poly(term, WordPolynomial.word((i, j)))
        total = total + term * permutation_sign(rho)
    return total


def shuffle_square_identity(d: int) -> tuple[WordPolynomial, WordPolynomial, bool]:
    """(2^d det_shuffle(d), inv_d shuffle-squared, equal?)."""
    lhs = det_shuffle(d) * 2**d
    iv = inv(d)
    rhs = shuffle_poly(iv, iv)
    return lhs, rhs, lhs == rhs


def q_point(shape: Sequence[int]) -> tuple[Fraction, ...]:
    """+1 at the first occurrence of each letter, -1 at the second."""
    shape = check_word(shape)
    for letter in set(shape):
        if shape.count(letter) != 2:
            raise ValueError(f"letter {letter} appears {shape.count(letter)} times; need exactly 2")
    seen: set[int] = set()
    out = []
    for letter in shape:
        out.append(Fraction(-1) if letter in seen else Fraction(1))
        seen.add(letter)
    return tuple(out)


def pfaffian(matrix: Sequence[Sequence]) -> Fraction:
    """Pfaffian of an even-size skew-symmetric rational matrix (expansion along row 0)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i, n):
            if m[i][j] != -m[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    if n % 2:
        raise ValueError("Pfaffian needs an even-size matrix")

    def pf(idx: tuple[int, ...]) -> Fraction:
        if not idx:
            return Fraction(1)
        i, rest = idx[0], idx[1:]
        total = Fraction(0)
        for pos, j in enumerate(rest):
            if m[i][j]:
                sub = rest[:pos] + rest[pos + 1:]
                total += (-1) ** pos * m[i][j] * pf(sub)
        return total

    return pf(tuple(range(n)))


@dataclass
class PfaffianCheck:
    shape: Word
    p_at_q: Fraction
    pf: Fraction | None
    holds: bool

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "P(q)": str(self.p_at_q),
            "pfaffian": None if self.pf is None else str(self.pf),
            "holds": self.holds,
        }


def pfaffian_identity(shape: Sequence[int]) -> PfaffianCheck:
    """P(q) = 2^{d/2} Pf(sigma^(2)(q)) for a doubled shape.

    For odd d the matrix has odd size, so the statement becomes P(q) = 0 = det.
    """
    shape = check_word(shape)
    q = q_point(shape)
    d = _letters(shape)
    mat = second_level_matrix(shape, q)
    pq = _p_at(shape, q)
    if d % 2:
        return PfaffianCheck(shape, pq, None, pq == 0 and exact_det(mat) == 0)
    pf = pfaffian(mat)
    return PfaffianCheck(shape, pq, pf, pq == 2 ** (d // 2) * pf)


def doubled_shapes(d: int) -> list[Word]:
    """Shapes with every letter exactly twice, up to relabeling.

    Canonical representatives: first occurrences appear in the order 1, 2, .., d.
    """
    out: list[Word] = []

    def grow(prefix: list[int], used: list[int], opened: int):
        if len(prefix) == 2 * d:
            out.append(tuple(prefix))
            return
        for letter in range(1, opened + 1):
            if used[letter] == 1:
                used[letter] += 1
                prefix.append(letter)
                grow(prefix, used, opened)
                prefix.pop()
                used[letter] -= 1
        if opened < d:
            used[opened + 1] = 1
            prefix.append(opened + 1)
            grow(prefix, used, opened + 1)
            prefix.pop()
            used[opened + 1] = 0

    grow([], [0] * (d + 2), 0)
    return out


def m_exponent(shape: Sequence[int]) -> tuple[int, ...]:
    """Exponent of M_nu: 2 at letters occurring once, 1 at letters occurring twice."""
    shape = check_word(shape)
    counts = {x: shape.count(x) for x in set(shape)}
    if any(c >= 3 for c in counts.values()):
        raise ValueError("shape has a letter occurring three or more times")
    return tuple(2 if counts[x] == 1 else 1 for x in shape)


def det_coefficient_direct(shape: Sequence[int]) -> Fraction:
    return det2(shape).coefficient(m_exponent(shape))


def det_coefficient_via_graphs(shape: Sequence[int]) -> Fraction:
    """Coefficient of M_nu in det sigma^(2) from the directed-graph model.

    Vertices are the positions of nu. A letter occurring twice sends an edge
    out of one position and receives one at the other; a letter occurring once
    does both at its position and may carry a loop. Edges run left to right.
    Each graph adds sign(permutation) / 2^(loops).
    """
    shape = check_word(shape)
    m_exponent(shape)  # rejects triple letters
    d = max(shape)
    pos: dict[int, list[int]] = {i: [] for i in range(1, d + 1)}
    for p, letter in enumerate(shape):
        pos[letter].append(p)
    if any(not v for v in pos.values()):
        return Fraction(0)
    letters = list(range(1, d + 1))
    # each letter picks (out, in) positions
    choices = [
        [(v[0], v[0])] if len(v) == 1 else [(v[0], v[1]), (v[1], v[0])]
        for v in (pos[i] for i in letters)
    ]
    total = Fraction(0)

    def assignments(i: int, acc: list[tuple[int, int]]):
        if i == d:
            yield list(acc)
            return
        for c in choices[i]:
            acc.append(c)
            yield from assignments(i + 1, acc)
            acc.pop()

    for assign in assignments(0, []):
        outs = [o for o, _ in assign]
        ins = [i for _, i in assign]
        once = [len(pos[i]) == 1 for i in letters]

        def allowed(i: int, j: int) -> bool:
            if i == j and once[i]:
                return True
            return outs[i] < ins[j]

        for rho in permutations(range(d)):
            if all(allowed(i, rho[i]) for i in range(d)):
                loops = sum(1 for i in range(d) if rho[i] == i and once[i])
                total += Fraction(permutation_sign(rho), 2**loops)
    return total


def p_square_coefficient(shape: Sequence[int]) -> Fraction:
    p = p_polynomial(shape)
    return (p * p).coefficient(m_exponent(shape))
