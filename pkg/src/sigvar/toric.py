"""Toric-ideal computations on A = lattice points of P(w, k).

Binomials are pairs of multisets of points of A. Degree-bounded generation is
decided on the fiber graph: two multisets are joined when one is obtained
from the other by replacing at most s points with points of equal sum. A is
never enumerated; replacements are drawn from sub-vectors of the sum being
split, which keeps the large one-variable-per-weight instances tractable.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .paths import axis_signature
from .poly import Poly
from .words import Word, check_word, format_word

Point = tuple[int, ...]

FIBER_GUARD = 10**7
RIGIDITY_BUDGET = 10**7
HIGH_DEGREE_MAX_ENTRY = 5000


class MixedAmbient(ValueError):
    pass


def _sum(points: Iterable[Point], r: int) -> Point:
    out = [0] * r
    for p in points:
        for i, x in enumerate(p):
            out[i] += x
    return tuple(out)


@dataclass(frozen=True)
class ExponentMultiset:
    """Multiset of points of A = {t in N^r : w . t = k}, i.e. a monomial in the y_alpha."""

    weights: tuple[int, ...]
    k: int
    points: tuple[Point, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        pts = tuple(sorted(tuple(int(x) for x in p) for p in self.points))
        for p in pts:
            if len(p) != len(w) or min(p) < 0 or sum(a * b for a, b in zip(w, p)) != self.k:
                raise ValueError(f"{p} is not a lattice point of P({w}, {self.k})")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def total(self) -> Point:
        return _sum(self.points, len(self.weights))

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "k": self.k, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "ExponentMultiset":
        return cls(tuple(data["weights"]), int(data["k"]), tuple(tuple(p) for p in data["points"]))


def binomial_in_ideal(left: ExponentMultiset, right: ExponentMultiset) -> bool:
    """y^L - y^R lies in the toric ideal iff |L| = |R| and the point sums agree."""
    if (left.weights, left.k) != (right.weights, right.k):
        raise MixedAmbient("multisets come from different point sets")
    return len(left) == len(right) and left.total() == right.total()


def sub_points(total: Point, weights: Sequence[int], k: int) -> list[Point]:
    """Points p of A with p <= total coordinatewise."""
    support = [i for i, x in enumerate(total) if x]
    r = len(total)
    out: list[Point] = []
    cur = [0] * r

    def rec(pos: int, rem: int):
        if rem == 0:
            out.append(tuple(cur))
            return
        if pos == len(support):
            return
        i = support[pos]
        w = weights[i]
        for t in range(min(total[i], rem // w), -1, -1):
            cur[i] = t
            rec(pos + 1, rem - t * w)
        cur[i] = 0

    rec(0, k)
    return sorted(out)


class _Splitter:
    """All ways to write a vector as an unordered sum of t points of A (memoized)."""

    def __init__(self, weights: Sequence[int], k: int):
        self.weights = tuple(weights)
        self.k = k
        self._memo: dict[tuple[Point, int], list[tuple[Point, ...]]] = {}

    def split(self, total: Point, t: int) -> list[tuple[Point, ...]]:
        key = (total, t)
        if key in self._memo:
            return self._memo[key]
        if t == 1:
            ok = sum(a * b for a, b in zip(self.weights, total)) == self.k
            res = [(total,)] if ok else []
        else:
            res = []
            for p in sub_points(total, self.weights, self.k):
                rest = tuple(a - b for a, b in zip(total, p))
                for tail in self.split(rest, t - 1):
                    # keep each multiset once: p is the smallest summand
                    if p <= tail[0]:
                        res.append((p,) + tail)
        self._memo[key] = res
        return res


@dataclass
class FiberVerdict:
    status: str  # REACHABLE | UNREACHABLE | INDETERMINATE
    s: int
    visited: int
    guard: int
    moves: int | None = None

    def to_json(self) -> dict:
        out = {"status": self.status, "s": self.s, "visited": self.visited, "guard": self.guard}
        if self.status == "INDETERMINATE":
            out["status"] = f"INDETERMINATE({self.guard})"
        if self.moves is not None:
            out["moves"] = self.moves
        return out


def generated_in_degree_upto(
    left: ExponentMultiset,
    right: ExponentMultiset,
    s: int,
    guard: int = FIBER_GUARD,
) -> FiberVerdict:
    """Can L be turned into R by moves touching at most s points at a time?

    Breadth-first search over the connected component of L in the fiber graph.
    UNREACHABLE means the whole component was exhausted without meeting R.
    """
    if not binomial_in_ideal(left, right):
        raise ValueError("y^L - y^R is not in the toric ideal")
    if s < 1:
        raise ValueError("s must be positive")
    start, goal = left.points, right.points
    if start == goal:
        return FiberVerdict("REACHABLE", s, 1, guard, 0)
    splitter = _Splitter(left.weights, left.k)
    r = len(left.weights)
    depth = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        n = len(state)
        for t in range(2, min(s, n) + 1):
            seen_groups = set()
            for idx in combinations(range(n), t):
                group = tuple(state[i] for i in idx)
                if group in seen_groups:
                    continue
                seen_groups.add(group)
                rest = [state[i] for i in range(n) if i not in idx]
                for repl in splitter.split(_sum(group, r), t):
                    if repl == group:
                        continue
                    nxt = tuple(sorted(rest + list(repl)))
                    if nxt in depth:
                        continue
                    depth[nxt] = depth[state] + 1
                    if nxt == goal:
                        return FiberVerdict("REACHABLE", s, len(depth), guard, depth[nxt])
                    if len(depth) > guard:
                        return FiberVerdict("INDETERMINATE", s, len(depth), guard)
                    queue.append(nxt)
    return FiberVerdict("UNREACHABLE", s, len(depth), guard)


# rigid squares ---------------------------------------------------------------

M3 = ((4, 5, 3), (6, 5, 1), (2, 2, 8))
K3 = 12


@dataclass(frozen=True)
class RigidSquare:
    n: int
    k: int
    matrix: tuple[tuple[int, ...], ...]
    lambdas: tuple[int, ...] = ()

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.matrix]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(self.matrix[i][j] for i in range(self.n)) for j in range(self.n)]

    def entries(self) -> list[int]:
        return [x for row in self.matrix for x in row]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "matrix": [list(r) for r in self.matrix], "lambdas": list(self.lambdas)}

    @classmethod
    def from_json(cls, data: dict) -> "RigidSquare":
        return cls(int(data["n"]), int(data["k"]), tuple(tuple(r) for r in data["matrix"]), tuple(data.get("lambdas", ())))


def rigid_square(n: int) -> RigidSquare:
    """M_3 for n = 3, then M_{n+1} = A + B with lambda = n^2 + 2 at each step."""
    if n < 3:
        raise ValueError("rigid squares start at n = 3")
    mat = [list(r) for r in M3]
    k = K3
    lambdas = []
    for size in range(3, n):
        lam = size * size + 2
        lambdas.append(lam)
        new = [[lam * x for x in row] + [0] for row in mat] + [[0] * size + [lam * k]]
        for i in range(size - 1):
            new[i][size] += size + 1
        for j in range(size + 1):
            new[size - 1][j] += 1
            new[size][j] += size
        new[size][size] += -size * size + 1  # corner of B is -n^2 + n + 1
        mat = new
        k = lam * k + size + 1
    return RigidSquare(n, k, tuple(tuple(r) for r in mat), tuple(lambdas))


@dataclass
class RigidityVerdict:
    status: str  # RIGID | NOT_RIGID | INDETERMINATE
    decompositions: int | None
    nodes: int
    sums_ok: bool
    rows_differ_from_columns: bool
    budget: int

    @property
    def rigid(self) -> bool:
        return self.status == "RIGID"

    def to_json(self) -> dict:
        return {
            "status": self.status if self.status != "INDETERMINATE" else f"INDETERMINATE({self.budget})",
            "decompositions": self.decompositions,
            "nodes": self.nodes,
            "sums_ok": self.sums_ok,
            "rows_differ_from_columns": self.rows_differ_from_columns,
        }


class _BudgetExceeded(Exception):
    pass


def equal_sum_partitions(entries: Sequence[int], n: int, k: int, budget: int = RIGIDITY_BUDGET):
    """All partitions of the multiset into n-element blocks each summing to k.

    Returns (set of partitions, nodes visited). Each partition is a sorted
    tuple of sorted blocks. Raises _BudgetExceeded past ``budget`` nodes.
    """
    counter = Counter(entries)
    found: set[tuple[tuple[int, ...], ...]] = set()
    nodes = 0

    def pick(values: list[int], i: int, need: int, rem: int, acc: list[int]):
        """Choose ``need`` more elements from values[i:] (with counter) summing to rem."""
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if need == 0:
            if rem == 0:
                yield list(acc)
            return
        if i == len(values):
            return
        v = values[i]
        avail = counter[v]
        for c in range(min(avail, need, rem // v if v else need), -1, -1):
            if c * v > rem:
                continue
            counter[v] -= c
            acc.extend([v] * c)
            yield from pick(values, i + 1, need - c, rem - c * v, acc)
            del acc[len(acc) - c:]
            counter[v] += c

    def rec(blocks: list[tuple[int, ...]]):
        if not +counter:
            found.add(tuple(sorted(blocks)))
            return
        top = max(v for v, c in counter.items() if c)
        counter[top] -= 1
        values = sorted((v for v, c in counter.items() if c), reverse=True)
        for rest in list(pick(values, 0, n - 1, k - top, [])):
            for v in rest:
                counter[v] -= 1
            rec(blocks + [tuple(sorted([top] + rest))])
            for v in rest:
                counter[v] += 1
        counter[top] += 1

    rec([])
    return found, nodes


def verify_rigidity(square: RigidSquare, budget: int = RIGIDITY_BUDGET) -> RigidityVerdict:
    """Exhaustively check the three rigid-square properties."""
    rows, cols = square.rows(), square.columns()
    n, k = square.n, square.k
    sums_ok = all(sum(r) == k for r in rows) and all(sum(c) == k for c in cols)
    row_sets = {tuple(sorted(r)) for r in rows}
    differ = all(tuple(sorted(c)) not in row_sets for c in cols)
    try:
        found, nodes = equal_sum_partitions(square.entries(), n, k, budget)
    except _BudgetExceeded:
        return RigidityVerdict("INDETERMINATE", None, budget, sums_ok, differ, budget)
    by_rows = tuple(sorted(tuple(sorted(r)) for r in rows))
    by_cols = tuple(sorted(tuple(sorted(c)) for c in cols))
    rigid = sums_ok and differ and by_rows != by_cols and found == {by_rows, by_cols}
    return RigidityVerdict("RIGID" if rigid else "NOT_RIGID", len(found), nodes, sums_ok, differ, budget)


@dataclass
class HighDegreeBinomial:
    n: int
    square: RigidSquare
    weights: tuple[int, ...]
    k: int
    left: ExponentMultiset
    right: ExponentMultiset

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.n + 1,
            "square": self.square.to_json(),
            "A": {"weights": f"1..{len(self.weights)}", "k": self.k},
            "rows": [list(r) for r in self.square.rows()],
            "columns": [list(c) for c in self.square.columns()],
        }


def point_from_parts(parts: Iterable[int], r: int) -> Point:
    """Exponent vector with one variable per weight: coordinate i-1 counts parts equal to i."""
    v = [0] * r
    for x in parts:
        v[x - 1] += 1
    return tuple(v)


def high_degree_binomial(n: int, max_entry: int = HIGH_DEGREE_MAX_ENTRY) -> HighDegreeBinomial:
    """Degree n+1 binomial (row monomials minus column monomials of M_{n+1})."""
    if n < 2:
        raise ValueError("need n >= 2 (the square has size n + 1 >= 3)")
    sq = rigid_square(n + 1)
    top = max(sq.entries())
    if top > max_entry:
        raise ValueError(f"largest entry {top} exceeds the guard {max_entry}")
    w = tuple(range(1, top + 1))
    left = ExponentMultiset(w, sq.k, tuple(point_from_parts(r, top) for r in sq.rows()))
    right = ExponentMultiset(w, sq.k, tuple(point_from_parts(c, top) for c in sq.columns()))
    return HighDegreeBinomial(n, sq, w, sq.k, left, right)


# saturation moves -------------------------------------------------------------


class InsufficientCopies(ValueError):
    def __init__(self, shortfall: int):
        super().__init__(f"need {shortfall} more copies of the base point")
        self.shortfall = shortfall


def is_simple(p: Point) -> bool:
    """At most one nonzero coordinate past the first, and that coordinate is 1."""
    tail = [x for x in p[1:] if x]
    return not tail or tail == [1]


@dataclass
class SaturationResult:
    normal_form: ExponentMultiset
    moves: int
    copies_used: int

    def to_json(self) -> dict:
        return {
            "normal_form": [list(p) for p in self.normal_form.points],
            "moves": self.moves,
            "copies_used": self.copies_used,
        }


def saturation_reduce(multiset: ExponentMultiset, copies: int) -> SaturationResult:
    """Append copies of p = (k, 0, .., 0) and break points into simple pieces.

    Each move replaces p + q by ((k - w_c) e_1 + e_c) + (q - e_c + w_c e_1): one
    unit of q at coordinate c trades against w_c units on the first coordinate.
    Points are processed in sorted order, coordinates left to right.
    """
    w, k = multiset.weights, multiset.k
    if w[0] != 1:
        raise ValueError("the first weight must be 1 so that (k, 0, .., 0) lies in A")
    r = len(w)
    base = (k,) + (0,) * (r - 1)
    needed = sum(sum(p[1:]) - 1 for p in multiset.points if not is_simple(p))
    if needed > copies:
        raise InsufficientCopies(needed - copies)
    out: list[Point] = []
    spare = copies
    moves = 0
    for p in multiset.points:
        q = list(p)
        while not is_simple(tuple(q)):
            c = next(i for i in range(1, r) if q[i])
            piece = [0] * r
            piece[0] = k - w[c]
            piece[c] = 1
            out.append(tuple(piece))
            q[c] -= 1
            q[0] += w[c]
            spare -= 1
            moves += 1
        out.append(tuple(q))
    out.extend([base] * spare)
    return SaturationResult(ExponentMultiset(w, k, tuple(out)), moves, copies - spare)


# monomiality after substitution ----------------------------------------------------


@dataclass
class SubstitutionPair:
    """Invertible sparse changes of coordinates on lengths and on signature entries.

    ``domain[i]`` lists (j, c): the new variable a~_i = sum c * a_j.
    ``codomain[w]`` lists (u, c): the new coordinate at word w is sum c * sigma_u.
    """

    domain: dict[int, list[tuple[int, Fraction]]]
    codomain: dict[Word, list[tuple[Word, Fraction]]]

    def to_json(self) -> dict:
        return {
            "domain": {
                f"a{i}": [[f"a{j}", str(c)] for j, c in terms] for i, terms in sorted(self.domain.items())
            },
            "codomain": {
                format_word(w): [[format_word(u), str(c)] for u, c in terms]
                for w, terms in sorted(self.codomain.items())
            },
        }


@dataclass
class MonomialityCertificate:
    shape: Word
    k: int
    pair: SubstitutionPair
    entries: dict[Word, Poly]
    verified: bool
    failures: list[Word] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "k": self.k,
            "substitution": self.pair.to_json(),
            "entries": {format_word(w): str(p).replace("a", "b") for w, p in sorted(self.entries.items())},
            "verified": self.verified,
            "failures": [format_word(w) for w in self.failures],
        }


def _monomial_or_zero(p: Poly) -> bool:
    return len(p.terms) <= 1


def monomiality_certificate(shape: Sequence[int], k: int = 2, substitute: bool = True) -> MonomialityCertificate:
    """Certificate that the level-k axis signature of nu = (1, .., d, j) is toric.

    The domain change is a~_j = a_j + a_{d+1}. On the codomain each entry that is
    still not a monomial is combined with one monomial entry that is left
    unchanged; the search reports failure rather than asserting anything.
    In the rendered entries, b_i stands for the new variable a~_i.
    """
    shape = check_word(shape)
    d = len(shape) - 1
    j = shape[-1]
    if d < 2 or shape[:d] != tuple(range(1, d + 1)) or not 1 <= j < d:
        raise ValueError("shape must be (1, 2, .., d, j) with 1 <= j < d")
    m = d + 1
    new = Poly.variables(m)
    domain: dict[int, list[tuple[int, Fraction]]] = {i: [(i, Fraction(1))] for i in range(1, m + 1)}
    if substitute:
        # a_j = a~_j - a~_{d+1}, the inverse of a~_j = a_j + a_{d+1}
        images = list(new)
        images[j - 1] = new[j - 1] - new[d]
        domain[j] = [(j, Fraction(1)), (m, Fraction(1))]
    else:
        images = list(new)
    entries = {w: p.substitute(images) for w, p in axis_signature(shape, None, k).items()}
    codomain: dict[Word, list[tuple[Word, Fraction]]] = {w: [(w, Fraction(1))] for w in entries}
    final = dict(entries)
    fixed = {w for w, p in entries.items() if _monomial_or_zero(p)}
    failures = []
    for w in sorted(entries):
        if w in fixed:
            continue
        p = entries[w]
        done = False
        for u in sorted(fixed):
            q = entries[u]
            if not q.terms or u == w:
                continue
            (e, cu), = q.terms.items()
            cw = p.coefficient(e)
            if not cw:
                continue
            coeff = -cw / cu
            cand = p + q * coeff
            if _monomial_or_zero(cand) and not cand.is_zero():
                final[w] = cand
                codomain[w] = [(w, Fraction(1)), (u, coeff)]
                done = True
                break
        if not done:
            failures.append(w)
    verified = not failures and all(_monomial_or_zero(p) for p in final.values())
    return MonomialityCertificate(shape, k, SubstitutionPair(domain, codomain), final, verified, failures)
