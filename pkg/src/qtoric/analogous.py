"""Parallel displacement of facets: analogous polytopes and the matrix C.

A shift vector ``h`` moves every half-space ``a_i x + b_i >= 0`` to
``a_i x + b_i + h_i >= 0``.  For a polytope in normal form the matrix
``C = [-A* | I]`` spans the relations among the rows of ``A`` and measures
how far a shifted arrangement is from the initial corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DegenerateCorner, Empty, NotInPolytope, NotNormalForm, PolytopeError
from .polytope import CombPolytope, HalfSpace, HPolytope, face_poset, is_normal_form, vertices_from_halfspaces

ACTUAL = "Actual"
DEGENERATE = "Degenerate"
EMPTY = "Empty"


def _require_normal_form(P: HPolytope) -> None:
    if not P.is_finely_ordered or not is_normal_form(P):
        raise NotNormalForm("polytope must be finely ordered and in normal form")


def c_matrix(P: HPolytope) -> list:
    """``[-A* | I_{m-n}]`` where ``A*`` holds the normals of facets ``n+1..m``."""
    _require_normal_form(P)
    n, m = P.n, P.m
    A = P.A
    return [
        [-A[n + j][k] for k in range(n)] + [Fraction(int(i == j)) for i in range(m - n)]
        for j in range(m - n)
    ]


def _shift(h: Sequence, m: int) -> list:
    h = [linalg.parse_rational(x) for x in h]
    if len(h) != m:
        raise PolytopeError(f"shift vector has length {len(h)}, expected {m}")
    return h


def shifted_halfspaces(P: HPolytope, h: Sequence) -> list:
    h = _shift(h, P.m)
    return [HalfSpace(hs.normal, hs.offset + hi) for hs, hi in zip(P.halfspaces, h)]


def corner_point(P: HPolytope, h: Sequence) -> list:
    """Meeting point of the first n shifted hyperplanes."""
    h = _shift(h, P.m)
    n = P.n
    A, b = P.A, P.b
    x = linalg.solve(A[:n], [-(b[i] + h[i]) for i in range(n)])
    if x is None:
        raise DegenerateCorner("first n hyperplanes do not meet in a point")
    return x


def support_distances(P: HPolytope, h: Sequence) -> list:
    """Signed distances ``<a_i, v*(h)> + b_i + h_i`` from the shifted corner."""
    x = corner_point(P, h)
    h = _shift(h, P.m)
    return [hs.value(x) + hi for hs, hi in zip(P.halfspaces, h)]


def shifted(P: HPolytope, h: Sequence) -> HPolytope:
    """The shifted polytope, when it is a simple polytope with no redundant facet."""
    return vertices_from_halfspaces(shifted_halfspaces(P, h), P.n)


def classify_shift(P: HPolytope, h: Sequence) -> str:
    try:
        Q = shifted(P, h)
    except Empty:
        return EMPTY
    except PolytopeError:
        return DEGENERATE
    return ACTUAL if Q.vertex_sets == P.vertex_sets else DEGENERATE


def minkowski_add(P: HPolytope, h1: Sequence, h2: Sequence) -> list:
    """Shift of the Minkowski sum ``P(h1) + P(h2)``: ``h1 + h2 + b``."""
    h1, h2 = _shift(h1, P.m), _shift(h2, P.m)
    return [x + y + b for x, y, b in zip(h1, h2, P.b)]


def dilate(P: HPolytope, h: Sequence, factor) -> list:
    """Shift of ``factor * P(h)``: ``factor * (b + h) - b``."""
    factor = linalg.parse_rational(factor)
    if factor < 0:
        raise ValueError("dilation factor must be non-negative")
    h = _shift(h, P.m)
    return [factor * (b + x) - b for x, b in zip(h, P.b)]


def minkowski_vertex_check(P: HPolytope, h1: Sequence, h2: Sequence) -> bool:
    """For actual shifts, each vertex of the sum is the sum of matching vertices."""
    total = minkowski_add(P, h1, h2)
    if not all(classify_shift(P, h) == ACTUAL for h in (h1, h2, total)):
        raise PolytopeError("Minkowski vertex check needs actual polytopes")
    Q1, Q2, Q = shifted(P, h1), shifted(P, h2), shifted(P, total)
    return all(
        tuple(a + b for a, b in zip(Q1.point(w), Q2.point(w))) == Q.point(w) for w in P.vertex_sets
    )


@dataclass
class FaceRankReport:
    checked: int
    expected_rank: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def face_rank_check(C: Sequence[Sequence], P: CombPolytope | HPolytope) -> FaceRankReport:
    """Deleting the columns of any face leaves a matrix of rank ``m - n``."""
    m, n = P.m, P.n
    expected = m - n
    checked = 0
    failures = []
    for faces in face_poset(P):
        for face in faces:
            keep = [k for k in range(m) if k + 1 not in face]
            sub = [[row[k] for k in keep] for row in C]
            checked += 1
            r = linalg.rank(sub) if keep else 0
            if r != expected:
                failures.append((face, r))
    return FaceRankReport(checked, expected, failures)


def framing_vectors(P: HPolytope, x: Sequence) -> list:
    """``f_j = c_j * y`` componentwise, with ``y = A x + b``."""
    _require_normal_form(P)
    x = [linalg.parse_rational(c) for c in x]
    if not P.contains(x):
        raise NotInPolytope("point violates an inequality")
    y = P.embed(x)
    return [[c * yk for c, yk in zip(row, y)] for row in c_matrix(P)]
