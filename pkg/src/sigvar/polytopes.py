"""Weighted lattice polytopes P(w, k) = conv{t in N^r : sum w_i t_i = k}.

Everything that decides a mathematical question is exact. Floating point is
used once, to ask qhull for a candidate boundary triangulation; every facet
it proposes is recomputed from integer vertices and checked against all
lattice points before it is trusted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import floor, gcd, lcm, prod
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import ConvexHull

from .linalg import (
    hermite_rows,
    int_det,
    integer_kernel,
    lattice_index,
    nullspace,
    primitive,
    rank,
    row_echelon,
    solve,
)
from .words import lyndon_count

Point = tuple[int, ...]

MAX_POINTS = 200_000


@lru_cache(maxsize=None)
def _points(weights: tuple[int, ...], k: int) -> tuple[Point, ...]:
    r = len(weights)
    out: list[Point] = []
    cur = [0] * r

    def rec(i: int, rem: int):
        if i == r - 1:
            if rem % weights[i] == 0:
                cur[i] = rem // weights[i]
                out.append(tuple(cur))
            return
        for t in range(rem // weights[i] + 1):
            cur[i] = t
            rec(i + 1, rem - t * weights[i])
        cur[i] = 0

    rec(0, k)
    return tuple(sorted(out))


def lattice_points(weights: Sequence[int], k: int) -> list[Point]:
    """All t in N^r with sum w_i t_i = k, in lexicographic order."""
    weights = tuple(int(x) for x in weights)
    if not weights or any(x < 1 for x in weights):
        raise ValueError("weights must be positive integers")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return list(_points(weights, k))


def count_lattice_points(weights: Sequence[int], k: int) -> int:
    """Number of solutions, by the coin-change recurrence (no enumeration)."""
    ways = [1] + [0] * k
    for w in weights:
        for s in range(w, k + 1):
            ways[s] += ways[s - w]
    return ways[k]


def affine_rank(points: Iterable[Sequence[int]]) -> int:
    """Dimension of the affine span."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    p0 = pts[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]]) if len(pts) > 1 else 0


@dataclass(frozen=True)
class Facet:
    """Inequality normal . y <= offset in lattice coordinates."""

    normal: tuple[int, ...]
    offset: int

    def value(self, y: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, y)), Fraction(0))


class LatticePolytope:
    """Convex hull of integer points, described in its own affine lattice.

    The lattice is Z^r intersected with the linear span of the differences;
    ``basis`` is a Z-basis of it and ``coords`` maps ambient points to Z^n.
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("need at least one point")
        self.points: list[Point] = pts
        self.ambient_dim = len(pts[0])
        self.origin = pts[0]
        diffs = [[a - b for a, b in zip(p, self.origin)] for p in pts[1:]]
        self.dim = rank(diffs) if diffs else 0
        r = self.ambient_dim
        if self.dim == 0:
            self.basis: list[list[int]] = []
            self._cols: list[int] = []
            self._inv: list[list[Fraction]] = []
        else:
            normals = [primitive(v) for v in nullspace(diffs, r)] if self.dim < r else []
            self.basis = integer_kernel(normals, r) if normals else [
                [int(i == j) for j in range(r)] for i in range(r)
            ]
            assert len(self.basis) == self.dim
            # n ambient columns on which the basis is invertible
            _, amb_cols = row_echelon(self.basis)
            self._cols = amb_cols
            sq = [[self.basis[i][c] for i in range(self.dim)] for c in amb_cols]
            inv_rows = []
            for j in range(self.dim):
                e = [Fraction(int(i == j)) for i in range(self.dim)]
                inv_rows.append(solve(sq, e))
            # columns of inverse = solutions; store as matrix
            self._inv = [[inv_rows[j][i] for j in range(self.dim)] for i in range(self.dim)]
        self.lattice_coords: list[tuple[int, ...]] = [self.coords(p) for p in pts]

    # coordinates -------------------------------------------------------
    def coords(self, x: Sequence[int], s: int = 1, check: bool = True) -> tuple:
        """Lattice coordinates of x - s*origin (x taken in the dilation sP)."""
        v = [a - s * b for a, b in zip(x, self.origin)]
        if self.dim == 0:
            if check and any(v):
                raise ValueError("point is off the affine hull")
            return ()
        rhs = [v[c] for c in self._cols]
        y = [sum((row[j] * rhs[j] for j in range(self.dim)), Fraction(0)) for row in self._inv]
        if check:
            back = [sum(y[i] * self.basis[i][c] for i in range(self.dim)) for c in range(self.ambient_dim)]
            if back != v:
                raise ValueError("point is off the affine hull")
        if all(t.denominator == 1 for t in y):
            return tuple(int(t) for t in y)
        return tuple(y)

    def ambient(self, y: Sequence[int], s: int = 0) -> Point:
        """Inverse of coords: s*origin + sum y_i basis_i."""
        return tuple(
            s * self.origin[c] + sum(y[i] * self.basis[i][c] for i in range(self.dim))
            for c in range(self.ambient_dim)
        )

    # hull ------------------------------------------------------------------
    @cached_property
    def _hull(self) -> tuple[list[Facet], list[int], list[tuple[int, ...]]]:
        n = self.dim
        ys = self.lattice_coords
        if n == 0:
            return [], [0], []
        if n == 1:
            vals = [y[0] for y in ys]
            lo, hi = vals.index(min(vals)), vals.index(max(vals))
            facets = [Facet((1,), max(vals)), Facet((-1,), -min(vals))]
            return facets, sorted({lo, hi}), [(lo,), (hi,)]
        arr = np.array(ys, dtype=float)
        hull = ConvexHull(arr)
        facets: dict[tuple[int, ...], Facet] = {}
        for eq in np.unique(np.round(hull.equations, 9), axis=0):
            vals = arr @ eq[:-1] + eq[-1]
            near = [i for i in range(len(ys)) if abs(vals[i]) < 1e-6]
            f = self._exact_facet(near)
            if f is not None:
                facets[f.normal] = f
        facet_list = sorted(facets.values(), key=lambda f: (f.normal, f.offset))
        on = [frozenset(i for i, y in enumerate(ys) if f.value(y) == f.offset) for f in facet_list]
        vertices = [
            i
            for i, y in enumerate(ys)
            if rank([f.normal for f, pts in zip(facet_list, on) if i in pts]) == n
        ]
        vset = set(vertices)
        facet_vertices = [frozenset(pts & vset) for pts in on]
        self._check_ridges(facet_vertices)
        simplices = []
        for fv in facet_vertices:
            simplices.extend(self._triangulate(fv, n - 1, facet_vertices))
        return facet_list, vertices, simplices

    def _exact_facet(self, idx: list[int]) -> Facet | None:
        """Exact supporting hyperplane through the given points, if they span one."""
        ys = self.lattice_coords
        n = self.dim
        if not idx:
            return None
        base = ys[idx[0]]
        rows = [[a - b for a, b in zip(ys[i], base)] for i in idx[1:]]
        if not rows or rank(rows) != n - 1:
            return None
        a = primitive(nullspace(rows, n)[0])
        b = sum(x * y for x, y in zip(a, base))
        vals = [sum(x * y for x, y in zip(a, p)) for p in ys]
        if all(v <= b for v in vals):
            return Facet(tuple(a), b)
        if all(v >= b for v in vals):
            return Facet(tuple(-x for x in a), -b)
        raise RuntimeError("candidate facet is not a supporting hyperplane")

    def _face_rank(self, face: frozenset) -> int:
        ys = self.lattice_coords
        pts = sorted(face)
        if len(pts) < 2:
            return 0 if pts else -1
        return rank([[a - b for a, b in zip(ys[i], ys[pts[0]])] for i in pts[1:]])

    def _subfaces(self, face: frozenset, k: int, facet_vertices) -> set[frozenset]:
        """Facets of a k-face: its intersections with facets of P having dimension k - 1."""
        out = set()
        for fv in facet_vertices:
            g = face & fv
            if g != face and len(g) >= k and self._face_rank(g) == k - 1:
                out.add(g)
        return out

    def _check_ridges(self, facet_vertices) -> None:
        """Every ridge must lie on exactly two facets, else the facet list is incomplete."""
        n = self.dim
        count: dict[frozenset, int] = {}
        for fv in facet_vertices:
            for g in self._subfaces(fv, n - 1, facet_vertices):
                count[g] = count.get(g, 0) + 1
        if any(c != 2 for c in count.values()):
            raise RuntimeError("facet enumeration is incomplete")

    def _triangulate(self, face: frozenset, k: int, facet_vertices) -> list[tuple[int, ...]]:
        """Pulling triangulation of a k-face, apex = smallest vertex index."""
        if k == 0:
            return [tuple(face)]
        memo = self.__dict__.setdefault("_tri_memo", {})
        if face in memo:
            return memo[face]
        if k == 1:
            out = [tuple(sorted(face))]
        else:
            apex = min(face)
            out = []
            for g in self._subfaces(face, k, facet_vertices):
                if apex not in g:
                    out.extend((apex,) + s for s in self._triangulate(g, k - 1, facet_vertices))
        memo[face] = out
        return out

    @property
    def facets(self) -> list[Facet]:
        return self._hull[0]

    @property
    def vertex_indices(self) -> list[int]:
        return self._hull[1]

    @property
    def vertices(self) -> list[Point]:
        return [self.points[i] for i in self.vertex_indices]

    @property
    def boundary_simplices(self) -> list[tuple[int, ...]]:
        return self._hull[2]

    def contains(self, x: Sequence[int], s: int = 1) -> bool:
        """Is the integer point x in the dilation sP?"""
        try:
            y = self.coords(x, s)
        except ValueError:
            return False
        if self.dim == 0:
            return True
        if any(isinstance(t, Fraction) for t in y):
            return False
        return all(f.value(y) <= s * f.offset for f in self.facets)

    def normalized_volume(self) -> int:
        """n! times the Euclidean volume, measured in the hull's own lattice."""
        n = self.dim
        if n == 0:
            return 0
        ys = self.lattice_coords
        if n == 1:
            vals = [y[0] for y in ys]
            return max(vals) - min(vals)
        apex = ys[self.vertex_indices[0]]
        total = 0
        for simplex in self.boundary_simplices:
            rows = [[a - b for a, b in zip(ys[i], apex)] for i in simplex]
            total += abs(int_det(rows))
        return total


def normalized_volume(points: Iterable[Sequence[int]]) -> int:
    """Normalized volume of the convex hull in its affine lattice; 0 for a single point."""
    return LatticePolytope(points).normalized_volume()


@dataclass
class WeightedPolytope:
    weights: tuple[int, ...]
    k: int

    def __post_init__(self):
        self.weights = tuple(int(x) for x in self.weights)

    @cached_property
    def points(self) -> list[Point]:
        n = count_lattice_points(self.weights, self.k)
        if n > MAX_POINTS:
            raise ValueError(f"P(w,k) has {n} lattice points, above the guard {MAX_POINTS}")
        return lattice_points(self.weights, self.k)

    @cached_property
    def polytope(self) -> LatticePolytope:
        return LatticePolytope(self.points)

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def normalized_volume(self) -> int:
        return self.polytope.normalized_volume()

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "k": self.k}


def rough_veronese_weights(d: int, m: int) -> tuple[int, ...]:
    """(1^{a_1}, .., m^{a_m}) with a_i the number of Lyndon words of length i."""
    return tuple(i for i in range(1, m + 1) for _ in range(lyndon_count(d, i)))


def simplex_bound(weights: Sequence[int], k: int) -> Fraction:
    """Normalized volume of conv{(k/w_i) e_i} inside {w.x = k}: prod(k/w_i) gcd(w) / k."""
    g = 0
    for w in weights:
        g = gcd(g, w)
    return prod((Fraction(k, w) for w in weights), start=Fraction(1)) * g / k


@dataclass
class DegreeReport:
    d: int
    k: int
    m: int
    degree: int
    bound: Fraction
    dimension: int

    def to_json(self) -> dict:
        b = self.bound
        return {
            "d": self.d,
            "k": self.k,
            "m": self.m,
            "degree": self.degree,
            "bound": int(b) if b.denominator == 1 else str(b),
            "dimension": self.dimension,
        }


def rough_veronese_degree(d: int, k: int, m: int, max_points: int = MAX_POINTS) -> DegreeReport:
    """Degree of the rough Veronese variety as vol P((1^{a_1},..,m^{a_m}), k)."""
    if d < 2 or m < 1 or k < m:
        raise ValueError("need d >= 2 and k >= m >= 1")
    w = rough_veronese_weights(d, m)
    n = count_lattice_points(w, k)
    if n > max_points:
        raise ValueError(f"P(w,k) has {n} lattice points, above the guard {max_points}")
    poly = LatticePolytope(lattice_points(w, k))
    return DegreeReport(d, k, m, poly.normalized_volume(), simplex_bound(w, k), poly.dim)


def lattice_generation_index(weights: Sequence[int], k: int) -> int:
    """Index in Z^r of the lattice generated by the lattice points of P(w, k)."""
    return lattice_index(lattice_points(weights, k))


# normality -----------------------------------------------------------------


@dataclass
class IdpVerdict:
    weights: tuple[int, ...]
    k: int
    s_max: int
    passed: bool
    counterexample: tuple[int, Point] | None = None
    checked: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "weights": list(self.weights),
            "k": self.k,
            "s_max": self.s_max,
            "verdict": f"PASS({self.s_max})" if self.passed else "COUNTEREXAMPLE",
            "checked": {str(s): c for s, c in self.checked.items()},
        }
        if self.counterexample:
            s, pt = self.counterexample
            out["counterexample"] = {"s": s, "point": list(pt)}
        return out


def idp_check(weights: Sequence[int], k: int, s_max: int) -> IdpVerdict:
    """Bounded IDP test: every lattice point of sP, 2 <= s <= s_max, is a sum of s points of P.

    A counterexample certifies non-normality; PASS is evidence up to s_max only.
    """
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    weights = tuple(int(x) for x in weights)
    pts = lattice_points(weights, k)
    poly = LatticePolytope(pts)
    checked: dict[int, int] = {}
    if poly.dim == 0:
        return IdpVerdict(weights, k, s_max, True, None, checked)
    pset = set(pts)

    @lru_cache(maxsize=None)
    def decomposable(x: Point, s: int) -> bool:
        if s == 1:
            return x in pset
        for p in pts:
            rest = tuple(a - b for a, b in zip(x, p))
            if min(rest) < 0:
                continue
            if poly.contains(rest, s - 1) and decomposable(rest, s - 1):
                return True
        return False

    for s in range(2, s_max + 1):
        cands = [x for x in lattice_points(weights, s * k) if poly.contains(x, s)]
        checked[s] = len(cands)
        for x in cands:
            if not decomposable(x, s):
                return IdpVerdict(weights, k, s_max, False, (s, x), checked)
    return IdpVerdict(weights, k, s_max, True, None, checked)


# very ampleness ------------------------------------------------------------


@dataclass
class HoleCertificate:
    """Witness that P is not very ample.

    ``z`` lies in the real cone at ``vertex`` (z = sum lam_i (u_i - vertex) with
    lam_i >= 0) and in the lattice, yet is not a nonnegative integer combination
    of the vectors p - vertex. ``functional`` is positive on every p - vertex,
    which bounds the search needed to confirm this.
    """

    weights: tuple[int, ...]
    k: int
    vertex: Point
    z: tuple[int, ...]
    cone_generators: list[Point]
    coefficients: list[Fraction]
    functional: tuple[int, ...]
    bound: int

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "k": self.k,
            "vertex": list(self.vertex),
            "z": list(self.z),
            "cone_generators": [list(u) for u in self.cone_generators],
            "coefficients": [str(c) for c in self.coefficients],
            "functional": list(self.functional),
            "bound": self.bound,
        }

    @classmethod
    def from_json(cls, data: dict) -> "HoleCertificate":
        return cls(
            tuple(data["weights"]),
            int(data["k"]),
            tuple(data["vertex"]),
            tuple(data["z"]),
            [tuple(u) for u in data["cone_generators"]],
            [Fraction(c) for c in data["coefficients"]],
            tuple(data["functional"]),
            int(data["bound"]),
        )


@dataclass
class HoleSearch:
    weights: tuple[int, ...]
    k: int
    bound: int
    certificate: HoleCertificate | None
    vertices_checked: int
    smallest_hole_norm: int | None = None

    @property
    def found(self) -> bool:
        return self.certificate is not None

    def to_json(self) -> dict:
        out = {
            "weights": list(self.weights),
            "k": self.k,
            "bound": self.bound,
            "verdict": "HOLE" if self.found else f"NOT_FOUND({self.bound})",
            "vertices_checked": self.vertices_checked,
        }
        if self.certificate:
            out["certificate"] = self.certificate.to_json()
        elif self.smallest_hole_norm is not None:
            out["smallest_hole_norm"] = self.smallest_hole_norm
        return out


def _parallelepiped(gens: list[tuple[int, ...]]) -> Iterable[tuple[int, ...]]:
    """Nonzero lattice points sum lam_i g_i with 0 <= lam_i < 1."""
    n = len(gens)
    h = hermite_rows(gens)
    diag = [h[i][i] for i in range(n)]
    # columns of G are the generators; solve G lam = x
    gcols = [[gens[j][i] for j in range(n)] for i in range(n)]

    def reps(i: int, acc: list[int]):
        if i == n:
            yield tuple(acc)
            return
        for t in range(diag[i]):
            acc.append(t)
            yield from reps(i + 1, acc)
            acc.pop()

    for x in reps(0, []):
        if not any(x):
            continue
        lam = solve(gcols, list(x))
        frac = [c - floor(c) for c in lam]
        pi = tuple(int(sum(frac[j] * gens[j][i] for j in range(n))) for i in range(n))
        if any(pi):
            yield pi


class _VertexCone:
    def __init__(self, poly: LatticePolytope, vi: int):
        self.poly = poly
        ys = poly.lattice_coords
        self.v = ys[vi]
        self.vi = vi
        self.facets = [f for f in poly.facets if f.value(self.v) == f.offset]
        self.ell = tuple(-sum(f.normal[i] for f in self.facets) for i in range(poly.dim))
        gens = {tuple(a - b for a, b in zip(y, self.v)) for y in ys if y != self.v}
        self.gens = sorted(gens, key=lambda g: (self._ell(g), g))
        assert all(self._ell(g) > 0 for g in self.gens)
        self._memo: dict[tuple[int, ...], bool] = {(0,) * poly.dim: True}

    def _ell(self, z: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.ell, z))

    def in_cone(self, z: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(f.normal, z)) <= 0 for f in self.facets)

    def in_semigroup(self, z: tuple[int, ...]) -> bool:
        stack = [z]
        # iterative DFS with memo; a node is true if any child is true
        memo = self._memo
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            pending = False
            result = False
            for g in self.gens:
                nxt = tuple(a - b for a, b in zip(cur, g))
                if self._ell(nxt) < 0 or not self.in_cone(nxt):
                    continue
                if nxt not in memo:
                    stack.append(nxt)
                    pending = True
                    break
                if memo[nxt]:
                    result = True
                    break
            if not pending:
                memo[cur] = result
                stack.pop()
        return memo[z]

    def simplicial_cones(self) -> Iterable[list[int]]:
        """Fan triangulation of the vertex cone via boundary simplices away from v."""
        ys = self.poly.lattice_coords
        for simplex in self.poly.boundary_simplices:
            if self.vi in simplex:
                continue
            rows = [tuple(a - b for a, b in zip(ys[i], self.v)) for i in simplex]
            if int_det(rows) != 0:
                yield list(simplex)

    def minimize_hole(self, z: tuple[int, ...]) -> tuple[int, ...]:
        improved = True
        while improved:
            improved = False
            for g in self.gens:
                nxt = tuple(a - b for a, b in zip(z, g))
                if any(nxt) and self.in_cone(nxt) and not self.in_semigroup(nxt):
                    z = nxt
                    improved = True
                    break
        return z


def very_ample_hole(weights: Sequence[int], k: int, bound: int) -> HoleSearch:
    """Search the vertex cones of P(w, k) for a non-saturation witness.

    Every simplicial cone of a fan triangulation has its fundamental
    parallelepiped scanned, so a hole is found whenever P is not very ample.
    Holes are shrunk by subtracting generators while they stay holes; a
    certificate is returned when the ambient sup-norm of z is at most ``bound``.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    weights = tuple(int(x) for x in weights)
    poly = LatticePolytope(lattice_points(weights, k))
    if poly.dim <= 1:
        return HoleSearch(weights, k, bound, None, len(poly.vertex_indices))
    ys = poly.lattice_coords
    best_norm = None
    for count, vi in enumerate(poly.vertex_indices, start=1):
        cone = _VertexCone(poly, vi)
        for simplex in cone.simplicial_cones():
            gens = [tuple(a - b for a, b in zip(ys[i], cone.v)) for i in simplex]
            for pi in _parallelepiped(gens):
                if cone.in_semigroup(pi):
                    continue
                z = cone.minimize_hole(pi)
                z_amb = poly.ambient(z)
                norm = max(abs(x) for x in z_amb)
                best_norm = norm if best_norm is None else min(best_norm, norm)
                if norm > bound:
                    continue
                cert = _make_certificate(poly, weights, k, cone, simplex, z, bound)
                return HoleSearch(weights, k, bound, cert, count)
    return HoleSearch(weights, k, bound, None, len(poly.vertex_indices), best_norm)


def _make_certificate(poly, weights, k, cone: _VertexCone, simplex, z, bound) -> HoleCertificate:
    ys = poly.lattice_coords
    gens = [tuple(a - b for a, b in zip(ys[i], cone.v)) for i in simplex]
    gcols = [[g[i] for g in gens] for i in range(poly.dim)]
    lam = solve(gcols, list(z))
    # ambient functional f with f . (basis_i) = ell_i, scaled to integers
    f = solve(poly.basis, list(cone.ell))
    f = primitive(f)
    return HoleCertificate(
        weights,
        k,
        poly.points[cone.vi],
        poly.ambient(z),
        [poly.points[i] for i in simplex],
        lam,
        tuple(int(x) for x in f),
        bound,
    )


def verify_hole_certificate(cert: HoleCertificate) -> bool:
    """Independent check of a hole certificate from its integer data alone.

    Uses only the lattice points of P(w, k) and a forward search over sums of
    generators p - v; shares no code with the search that produced it.
    """
    pts = lattice_points(cert.weights, cert.k)
    v = cert.vertex
    if v not in set(pts):
        return False
    r = len(v)
    gens = [tuple(p[i] - v[i] for i in range(r)) for p in pts if p != v]
    f = cert.functional

    def fval(x):
        return sum(a * b for a, b in zip(f, x))

    # f strictly positive on every generator proves v is a vertex and bounds the search
    if any(fval(g) <= 0 for g in gens):
        return False
    # real cone membership with nonnegative coefficients
    if any(c < 0 for c in cert.coefficients):
        return False
    if any(u not in set(pts) for u in cert.cone_generators):
        return False
    comb = [sum(c * (u[i] - v[i]) for c, u in zip(cert.coefficients, cert.cone_generators)) for i in range(r)]
    if comb != list(cert.z):
        return False
    # lattice membership: integral and on the level-0 hyperplane
    if sum(w * x for w, x in zip(cert.weights, cert.z)) != 0:
        return False
    target = tuple(cert.z)
    limit = fval(target)
    # coordinates where v vanishes only grow along generators; prune on them
    zero_coords = [i for i in range(r) if v[i] == 0]
    seen = {(0,) * r}
    queue = deque(seen)
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = tuple(a + b for a, b in zip(cur, g))
            if nxt in seen or fval(nxt) > limit:
                continue
            if any(nxt[i] > target[i] for i in zero_coords):
                continue
            if nxt == target:
                return False
            seen.add(nxt)
            queue.append(nxt)
    return True


# primes ----------------------------------------------------------------------

_PRIME_TABLE = [
    (7, 9, (5, 7)),
    (11, 13, (7, 11)),
    (14, 19, (11, 13)),
    (20, 31, (17, 19)),
    (32, 56, (29, 31)),
]


class LemmaHypothesisError(ValueError):
    pass


def is_prime(n: int) -> bool:
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


def _power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_valid_prime_pair(m: int, p1: int, p2: int) -> bool:
    return (
        p1 != p2
        and is_prime(p1)
        and is_prime(p2)
        and all(2 * p > m and p <= m for p in (p1, p2))
        and not _power_of_two(p1 + p2)
    )


def prime_pair(m: int) -> tuple[int, int]:
    """Two distinct primes in (m/2, m] whose sum is not a power of two.

    Tie-break: the tabulated pair for m <= 56; beyond that the three largest
    primes a < b < c in the range give (b, c), or (a, b) when b + c is a power
    of two.
    """
    if m < 7 or m == 10:
        raise LemmaHypothesisError(f"lemma hypotheses violated: need m >= 7 and m != 10, got {m}")
    for lo, hi, pair in _PRIME_TABLE:
        if lo <= m <= hi:
            return pair
    primes = [p for p in range(m // 2 + 1, m + 1) if is_prime(p)]
    a, b, c = primes[-3:]
    return (a, b) if _power_of_two(b + c) else (b, c)
