"""Simple polytopes as ordered half-space arrangements, and their combinatorics.

Facets are labelled ``1..m`` in the order of the half-spaces; a vertex is the
sorted tuple of the ``n`` facet labels meeting there.  All geometry is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import linalg
from .errors import (
    DegenerateCorner,
    Empty,
    NotAVertex,
    NotSimple,
    PolytopeError,
    Redundant,
    Unbounded,
)

Vertex = tuple  # sorted tuple of 1-based facet labels


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space ``<normal, x> + offset >= 0``."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(linalg.parse_rational(a) for a in self.normal))
        object.__setattr__(self, "offset", linalg.parse_rational(self.offset))
        if not any(self.normal):
            raise PolytopeError("half-space normal must be nonzero")

    def value(self, x: Sequence) -> Fraction:
        return linalg.dot(self.normal, x) + self.offset

    def scaled(self, c) -> "HalfSpace":
        c = Fraction(c)
        return HalfSpace(tuple(c * a for a in self.normal), c * self.offset)


@dataclass(frozen=True)
class CombPolytope:
    """Combinatorial simple polytope: its vertices as n-subsets of ``[m]``."""

    dim: int
    num_facets: int
    vertex_sets: tuple

    def __post_init__(self):
        vs = tuple(sorted(tuple(sorted(int(i) for i in v)) for v in self.vertex_sets))
        object.__setattr__(self, "vertex_sets", vs)
        n, m = self.dim, self.num_facets
        if n < 1 or m < n + 1:
            raise PolytopeError(f"need m >= n + 1 >= 2, got n={n}, m={m}")
        if len(set(vs)) != len(vs):
            raise PolytopeError("repeated vertex")
        if len(vs) < n + 1:
            raise PolytopeError("a simple polytope has at least n + 1 vertices")
        for v in vs:
            if len(v) != n or len(set(v)) != n or v[0] < 1 or v[-1] > m:
                raise PolytopeError(f"bad vertex {v}")
        used = set(itertools.chain.from_iterable(vs))
        if used != set(range(1, m + 1)):
            missing = sorted(set(range(1, m + 1)) - used)
            raise PolytopeError(f"facets {missing} contain no vertex")

    @property
    def m(self) -> int:
        return self.num_facets

    @property
    def n(self) -> int:
        return self.dim

    @property
    def q(self) -> int:
        return len(self.vertex_sets)

    @property
    def is_finely_ordered(self) -> bool:
        return tuple(range(1, self.dim + 1)) in self._vertex_lookup

    @property
    def initial_vertex(self) -> Vertex:
        v = tuple(range(1, self.dim + 1))
        if v not in self._vertex_lookup:
            raise NotAVertex("polytope is not finely ordered")
        return v

    @cached_property
    def _vertex_lookup(self) -> frozenset:
        return frozenset(self.vertex_sets)

    def has_vertex(self, v: Iterable[int]) -> bool:
        return tuple(sorted(v)) in self._vertex_lookup

    def neighbours(self, v: Vertex) -> dict:
        """Map each facet ``i`` of ``v`` to the vertex across the edge leaving ``i``."""
        out = {}
        sv = set(v)
        for w in self.vertex_sets:
            common = sv.intersection(w)
            if len(common) == self.dim - 1:
                (left,) = sv - common
                out[left] = w
        return out

    def is_face(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return any(s.issubset(v) for v in self.vertex_sets)


def check_simple_structure(P: CombPolytope) -> None:
    """Each vertex must have exactly one neighbour across each of its facets."""
    for v in P.vertex_sets:
        nb = P.neighbours(v)
        if set(nb) != set(v):
            raise NotSimple(f"vertex {v} does not have {P.dim} edges")


@dataclass(frozen=True)
class HPolytope:
    """Geometric simple polytope ``A x + b >= 0`` with its enumerated vertices."""

    dim: int
    halfspaces: tuple
    vertices: tuple  # ((vertex set, point), ...) sorted by vertex set

    @property
    def m(self) -> int:
        return len(self.halfspaces)

    @property
    def n(self) -> int:
        return self.dim

    @property
    def q(self) -> int:
        return len(self.vertices)

    @property
    def A(self) -> list:
        return [list(h.normal) for h in self.halfspaces]

    @property
    def b(self) -> list:
        return [h.offset for h in self.halfspaces]

    @property
    def vertex_sets(self) -> tuple:
        return tuple(v for v, _ in self.vertices)

    @property
    def combinatorial(self) -> CombPolytope:
        return CombPolytope(self.dim, self.m, self.vertex_sets)

    @property
    def is_finely_ordered(self) -> bool:
        return self.combinatorial.is_finely_ordered

    def point(self, v: Iterable[int]) -> tuple:
        key = tuple(sorted(v))
        for w, p in self.vertices:
            if w == key:
                return p
        raise NotAVertex(f"{key} is not a vertex")

    def embed(self, x: Sequence) -> list:
        """The affine injection ``x -> A x + b`` into the positive cone."""
        return [h.value(x) for h in self.halfspaces]

    def contains(self, x: Sequence) -> bool:
        return all(h.value(x) >= 0 for h in self.halfspaces)


AnyPolytope = Union[CombPolytope, HPolytope]


def _candidate_vertices(n: int, halfspaces: Sequence[HalfSpace]) -> dict:
    """Feasible intersection points of n hyperplanes, keyed by point -> tight facets."""
    A = [list(h.normal) for h in halfspaces]
    b = [h.offset for h in halfspaces]
    found: dict = {}
    for subset in itertools.combinations(range(len(halfspaces)), n):
        x = linalg.solve([A[i] for i in subset], [-b[i] for i in subset])
        if x is None:
            continue
        x = tuple(x)
        if x in found:
            continue
        values = [h.value(x) for h in halfspaces]
        if min(values) < 0:
            continue
        found[x] = tuple(i + 1 for i, val in enumerate(values) if val == 0)
    return found


def _has_recession_ray(n: int, A: Sequence[Sequence[Fraction]]) -> bool:
    """True iff ``A y >= 0`` has a nonzero solution.

    Lineality (rank A < n) is a ray; otherwise the cone is pointed and is
    nontrivial exactly when it has an extreme ray, which is cut out by n - 1
    independent tight rows.
    """
    if linalg.rank(A) < n:
        return True
    for subset in itertools.combinations(range(len(A)), n - 1):
        rows = [A[i] for i in subset]
        ker = linalg.nullspace(rows, n)
        if len(ker) != 1:
            continue
        r = ker[0]
        values = [linalg.dot(a, r) for a in A]
        if all(v >= 0 for v in values) or all(v <= 0 for v in values):
            return True
    return False


def vertices_from_halfspaces(halfspaces: Sequence[HalfSpace], dim: int | None = None) -> HPolytope:
    """Enumerate the vertices of a simple polytope given by half-spaces.

    Brute force over all n-subsets of facets.  Raises ``NotSimple``,
    ``Unbounded``, ``Redundant`` or ``Empty`` when the arrangement does not
    describe a simple polytope.
    """
    halfspaces = tuple(h if isinstance(h, HalfSpace) else HalfSpace(*h) for h in halfspaces)
    if not halfspaces:
        raise Empty("no half-spaces")
    n = len(halfspaces[0].normal) if dim is None else dim
    if any(len(h.normal) != n for h in halfspaces):
        raise PolytopeError("inconsistent ambient dimension")
    if len(halfspaces) < n:
        raise PolytopeError("need at least n half-spaces")
    A = [list(h.normal) for h in halfspaces]
    found = _candidate_vertices(n, halfspaces)
    if _has_recession_ray(n, A):
        raise Unbounded("intersection is unbounded")
    if not found:
        raise Empty("intersection is empty")
    for x, tight in found.items():
        if len(tight) > n:
            raise NotSimple(f"point {[linalg.format_rational(c) for c in x]} lies on facets {list(tight)}")
    used = set(itertools.chain.from_iterable(found.values()))
    missing = [i for i in range(1, len(halfspaces) + 1) if i not in used]
    if missing:
        raise Redundant(missing)
    vertices = tuple(sorted((tight, x) for x, tight in found.items()))
    return HPolytope(n, halfspaces, vertices)


def face_poset(P: AnyPolytope) -> list:
    """Faces ``F_I`` ranked by codimension ``|I|``, lexicographic within a rank."""
    vs = P.vertex_sets
    ranks = []
    for k in range(P.dim + 1):
        faces = set()
        for v in vs:
            faces.update(itertools.combinations(v, k))
        ranks.append(sorted(faces))
    return ranks


def permute_facets(P: AnyPolytope, order: Sequence[int]):
    """Reorder facets: new facet ``k`` is old facet ``order[k-1]``."""
    m = P.m
    if sorted(order) != list(range(1, m + 1)):
        raise ValueError("order must be a permutation of 1..m")
    new_label = {old: new for new, old in enumerate(order, start=1)}
    if isinstance(P, CombPolytope):
        return CombPolytope(P.dim, m, [tuple(new_label[i] for i in v) for v in P.vertex_sets])
    halfspaces = tuple(P.halfspaces[old - 1] for old in order)
    vertices = tuple(
        sorted((tuple(sorted(new_label[i] for i in v)), x) for v, x in P.vertices)
    )
    return HPolytope(P.dim, halfspaces, vertices)


def fine_order_permutation(P: AnyPolytope, v: Iterable[int]) -> list:
    v = tuple(sorted(v))
    if v not in set(P.vertex_sets):
        raise NotAVertex(f"{v} is not a vertex")
    return list(v) + [i for i in range(1, P.m + 1) if i not in v]


def fine_order(P: AnyPolytope, v: Iterable[int]):
    """Move the facets through ``v`` to positions ``1..n`` (stable otherwise)."""
    return permute_facets(P, fine_order_permutation(P, v))


def product_facet_labels(n1: int, m1: int, n2: int, m2: int) -> tuple[dict, dict]:
    """Label maps of the finely ordered product, for the left and right factor."""
    left = {i: (i if i <= n1 else n2 + i) for i in range(1, m1 + 1)}
    right = {j: (n1 + j if j <= n2 else m1 + j) for j in range(1, m2 + 1)}
    return left, right


def product(P: AnyPolytope, Q: AnyPolytope):
    """Finely ordered product: F_1..F_n, F'_1..F'_n', F_{n+1}..F_m, F'_{n'+1}..F'_m'."""
    if not (P.is_finely_ordered and Q.is_finely_ordered):
        raise PolytopeError("product needs finely ordered factors")
    n1, m1, n2, m2 = P.dim, P.m, Q.dim, Q.m
    left, right = product_facet_labels(n1, m1, n2, m2)
    dim = n1 + n2
    if isinstance(P, HPolytope) and isinstance(Q, HPolytope):
        hs = [None] * (m1 + m2)
        zero1, zero2 = (Fraction(0),) * n1, (Fraction(0),) * n2
        for i, h in enumerate(P.halfspaces, start=1):
            hs[left[i] - 1] = HalfSpace(h.normal + zero2, h.offset)
        for j, h in enumerate(Q.halfspaces, start=1):
            hs[right[j] - 1] = HalfSpace(zero1 + h.normal, h.offset)
        vertices = []
        for (v, x), (w, y) in itertools.product(P.vertices, Q.vertices):
            label = tuple(sorted([left[i] for i in v] + [right[j] for j in w]))
            vertices.append((label, x + y))
        return HPolytope(dim, tuple(hs), tuple(sorted(vertices)))
    vsets = [
        [left[i] for i in v] + [right[j] for j in w]
        for v, w in itertools.product(P.vertex_sets, Q.vertex_sets)
    ]
    return CombPolytope(dim, m1 + m2, vsets)


def normal_form(P: HPolytope) -> HPolytope:
    """Affine change of coordinates putting ``v*`` at 0 and ``a_1..a_n`` at ``e_1..e_n``.

    New coordinates are ``y = A_n x + b_n``; row ``i`` becomes ``a_i A_n^{-1}``.
    """
    n = P.dim
    if not P.is_finely_ordered:
        raise NotAVertex("normal form needs a finely ordered polytope")
    A, b = P.A, P.b
    corner = A[:n]
    if linalg.det(corner) == 0:
        raise DegenerateCorner("first n normals are dependent")
    inv = linalg.inverse(corner)
    shift = linalg.matvec(inv, b[:n])
    hs = []
    for a_i, b_i in zip(A, b):
        row = linalg.matvec(linalg.transpose(inv), a_i)  # a_i A_n^{-1}
        hs.append(HalfSpace(tuple(row), b_i - linalg.dot(a_i, shift)))
    vertices = tuple(
        (v, tuple(linalg.matvec(corner, x)[k] + b[k] for k in range(n))) for v, x in P.vertices
    )
    return HPolytope(n, tuple(hs), vertices)


def is_normal_form(P: HPolytope) -> bool:
    n = P.dim
    A, b = P.A, P.b
    return A[:n] == linalg.identity(n) and all(x == 0 for x in b[:n])


def edge_matrix(P: HPolytope, w: Iterable[int]) -> list:
    """Columns: edge direction at ``w`` leaving the k-th facet of ``w`` (sorted)."""
    w = tuple(sorted(w))
    comb = P.combinatorial
    if not comb.has_vertex(w):
        raise NotAVertex(f"{w} is not a vertex")
    x = P.point(w)
    nb = comb.neighbours(w)
    cols = []
    for i in w:
        y = P.point(nb[i])
        cols.append([yc - xc for yc, xc in zip(y, x)])
    return linalg.transpose(cols)


def orientation_at_vertex(P: HPolytope, w: Iterable[int]) -> int:
    """Sign of the determinant of the edge matrix at ``w``."""
    d = linalg.det(edge_matrix(P, w))
    if d == 0:
        raise NotSimple("degenerate edge frame")
    return 1 if d > 0 else -1


# standard polytopes ------------------------------------------------------


def simplex(n: int) -> HPolytope:
    """``x_i >= 0`` for ``i <= n`` and ``1 - sum x_i >= 0``."""
    hs = [HalfSpace(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    hs.append(HalfSpace((-1,) * n, 1))
    return vertices_from_halfspaces(hs)


def cube(n: int) -> HPolytope:
    """``x_i >= 0`` for ``i <= n`` and ``1 - x_i >= 0`` after them."""
    hs = [HalfSpace(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    hs += [HalfSpace(tuple(-int(i == j) for j in range(n)), 1) for i in range(n)]
    return vertices_from_halfspaces(hs)


def _circle_points(k: int) -> list:
    """k rational points on the unit circle in counter-clockwise order."""
    pts = []
    for i in range(k):
        theta = -math.pi + (2 * i + 1) * math.pi / k
        t = Fraction(math.tan(theta / 2)).limit_denominator(64)
        pts.append(((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    return pts


def polygon_cycle(P: CombPolytope) -> list:
    """Facets of a polygon in cyclic order starting with facet 1, then facet 2."""
    if P.dim != 2:
        raise PolytopeError("not a polygon")
    adj = {i: [] for i in range(1, P.m + 1)}
    for a, b in P.vertex_sets:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(x) != 2 for x in adj.values()):
        raise NotSimple("facet graph of a polygon must be a cycle")
    start = 1
    second = 2 if 2 in adj[1] else min(adj[1])
    cycle = [start, second]
    while len(cycle) < P.m:
        a, b = adj[cycle[-1]]
        nxt = a if a != cycle[-2] else b
        if nxt in cycle:
            raise NotSimple("facet graph of a polygon is disconnected")
        cycle.append(nxt)
    if cycle[0] not in adj[cycle[-1]]:
        raise NotSimple("facet graph of a polygon is not a cycle")
    return cycle


def realize_polygon(P: CombPolytope) -> HPolytope:
    """A rational convex polygon with the facet labels of ``P``.

    Vertices sit on the unit circle; facet ``cycle[k]`` is the edge from
    point ``k`` to point ``k+1``.
    """
    cycle = polygon_cycle(P)
    k = len(cycle)
    pts = _circle_points(k)
    hs = [None] * k
    for idx, facet in enumerate(cycle):
        (px, py), (qx, qy) = pts[idx], pts[(idx + 1) % k]
        normal = (-(qy - py), qx - px)  # inward for counter-clockwise traversal
        offset = -(normal[0] * px + normal[1] * py)
        g = _content(normal + (offset,))
        hs[facet - 1] = HalfSpace(tuple(c / g for c in normal), offset / g)
    H = vertices_from_halfspaces(hs)
    if H.vertex_sets != P.vertex_sets:
        raise PolytopeError("polygon realization failed")
    return H


def _content(values: Sequence[Fraction]) -> Fraction:
    """Positive rational g making ``values / g`` coprime integers."""
    den = math.lcm(*(Fraction(v).denominator for v in values))
    ints = [int(v * den) for v in values]
    num = math.gcd(*ints)
    return Fraction(num, den)
