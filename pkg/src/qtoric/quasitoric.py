"""Omnioriented quasitoric manifolds as combinatorial data.

An :class:`OmniQT` is a finely ordered simple polytope, an integer matrix
``(I_n | lambda_star)`` whose columns at every vertex form a basis of
``Z^n``, and a sign ``+1``/``-1`` at every vertex.  The signs are the primary
record of the orientation.  When a geometric realization is attached, the
orientation of the polytope can be read back from the initial vertex.

Sign rule used everywhere a sign is computed from geometry::

    sign(w) = orientation * sign det E_w * det Lambda_w

with ``E_w`` the edge frame of :func:`polytope.orientation_at_vertex` and
``Lambda_w`` the columns of the characteristic matrix at the facets of ``w``,
both in increasing facet order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    BadParameters,
    DimensionTooLow,
    NoGeometry,
    NotAVertex,
    NotUnimodular,
    SignClash,
)
from .polytope import (
    CombPolytope,
    HPolytope,
    cube,
    fine_order_permutation,
    orientation_at_vertex,
    permute_facets,
    product,
    product_facet_labels,
    realize_polygon,
    simplex,
)


def _columns(char: Sequence[Sequence[int]], facets: Iterable[int]) -> list:
    """Square submatrix of ``char`` on the given 1-based columns."""
    return [[row[i - 1] for i in facets] for row in char]


def vertex_det(char: Sequence[Sequence[int]], w: Iterable[int]) -> int:
    return linalg.det(_columns(char, sorted(w)))


def full_char(lambda_star: Sequence[Sequence[int]]) -> tuple:
    n = len(lambda_star)
    return tuple(
        tuple([int(i == j) for j in range(n)] + [int(x) for x in row])
        for i, row in enumerate(lambda_star)
    )


@dataclass(frozen=True)
class KernelLattice:
    basis: tuple


@dataclass(frozen=True)
class OmniQT:
    """Finely ordered polytope + refined characteristic matrix + vertex signs."""

    polytope: CombPolytope
    char: tuple
    signs: tuple
    geometry: HPolytope | None = field(default=None, compare=False)

    def __post_init__(self):
        P = self.polytope
        n, m = P.dim, P.m
        char = tuple(tuple(int(x) for x in row) for row in self.char)
        object.__setattr__(self, "char", char)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(char) != n or any(len(row) != m for row in char):
            raise BadParameters(f"characteristic matrix must be {n}x{m}")
        if [list(row[:n]) for row in char] != linalg.identity(n):
            raise BadParameters("characteristic matrix is not in refined form")
        if not P.is_finely_ordered:
            raise BadParameters("polytope is not finely ordered")
        if len(self.signs) != P.q or any(s not in (1, -1) for s in self.signs):
            raise BadParameters("need one sign +1/-1 per vertex")
        if self.geometry is not None and self.geometry.vertex_sets != P.vertex_sets:
            raise BadParameters("geometry does not realize the polytope")

    @property
    def n(self) -> int:
        return self.polytope.dim

    @property
    def m(self) -> int:
        return self.polytope.m

    @property
    def q(self) -> int:
        return self.polytope.q

    @property
    def lambda_star(self) -> tuple:
        return tuple(row[self.n:] for row in self.char)

    @property
    def vertex_sets(self) -> tuple:
        return self.polytope.vertex_sets

    def sign(self, w: Iterable[int]) -> int:
        return self.sign_map[tuple(sorted(w))]

    @property
    def sign_map(self) -> dict:
        return dict(zip(self.polytope.vertex_sets, self.signs))

    @property
    def initial_sign(self) -> int:
        return self.signs[0]  # (1..n) sorts first

    @property
    def q_plus(self) -> int:
        return self.signs.count(1)

    @property
    def q_minus(self) -> int:
        return self.signs.count(-1)

    @property
    def sigma_sum(self) -> int:
        return sum(self.signs)


# characteristic matrices -------------------------------------------------


def validate_dichar(P: CombPolytope, char: Sequence[Sequence[int]]) -> list:
    """Vertices where the columns of ``char`` fail to have determinant +-1."""
    bad = []
    for w in P.vertex_sets:
        d = vertex_det(char, w)
        if d not in (1, -1):
            bad.append((w, d))
    return bad


def _refine(P, char, v):
    order = fine_order_permutation(P, v)
    P2 = permute_facets(P, order)
    permuted = [[row[i - 1] for i in order] for row in char]
    n = P.dim
    corner = [row[:n] for row in permuted]
    d = linalg.det(corner)
    if d not in (1, -1):
        raise NotUnimodular(f"columns at {tuple(sorted(v))} have determinant {d}")
    inv = linalg.integer_inverse(corner)
    refined = tuple(tuple(int(x) for x in row) for row in linalg.matmul(inv, permuted))
    return P2, refined, order, d


def refine(P, char: Sequence[Sequence[int]], v: Iterable[int]):
    """Fine-order ``P`` at ``v`` and bring ``char`` to the form ``(I_n | *)``."""
    bad = validate_dichar(P if isinstance(P, CombPolytope) else P.combinatorial, char)
    if bad:
        raise NotUnimodular(f"not a dicharacteristic at {bad[0][0]}")
    P2, refined, _, _ = _refine(P, char, v)
    return P2, refined


def refine_at(M: OmniQT, v: Iterable[int]) -> OmniQT:
    """Make ``v`` the initial vertex; signs follow their vertices unchanged."""
    v = tuple(sorted(v))
    if not M.polytope.has_vertex(v):
        raise NotAVertex(f"{v} is not a vertex")
    P2, refined, order, _ = _refine(M.polytope, M.char, v)
    new_label = {old: new for new, old in enumerate(order, start=1)}
    old_signs = M.sign_map
    relabel = {w: tuple(sorted(new_label[i] for i in w)) for w in M.vertex_sets}
    new_signs = {relabel[w]: s for w, s in old_signs.items()}
    geometry = permute_facets(M.geometry, order) if M.geometry is not None else None
    return OmniQT(P2, refined, tuple(new_signs[w] for w in P2.vertex_sets), geometry)


def kernel_lattice(char: Sequence[Sequence[int]]) -> KernelLattice:
    """Integer basis of ``ker(char: Z^m -> Z^n)`` from the Smith normal form."""
    n, m = len(char), len(char[0])
    u, d, v = linalg.smith_normal_form(char)
    r = sum(1 for i in range(min(n, m)) if d[i][i] != 0)
    basis = tuple(tuple(v[i][j] for i in range(m)) for j in range(r, m))
    return KernelLattice(basis)


def lattice_contains(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Whether ``vec`` is an integer combination of the (independent) basis."""
    k, m = len(basis), len(vec)
    rows = [[basis[j][i] for j in range(k)] + [vec[i]] for i in range(m)]
    red, piv = linalg.rref(rows, k + 1)
    if k in piv:
        return False
    coeffs = [red[i][k] for i in range(len(piv))]
    return all(c.denominator == 1 for c in coeffs)


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return all(lattice_contains(b, v) for v in a) and all(lattice_contains(a, v) for v in b)


# signs --------------------------------------------------------------------


def compute_signs(geometry: HPolytope, char, orientation: int = 1) -> tuple:
    """Signs from the sign rule, aligned with ``geometry.vertex_sets``."""
    if orientation not in (1, -1):
        raise BadParameters("orientation must be +1 or -1")
    out = []
    for w in geometry.vertex_sets:
        d = vertex_det(char, w)
        if d not in (1, -1):
            raise NotUnimodular(f"columns at {w} have determinant {d}")
        out.append(orientation * orientation_at_vertex(geometry, w) * d)
    return tuple(out)


def signs_geometric(M: OmniQT, orientation: int = 1) -> OmniQT:
    if M.geometry is None:
        raise NoGeometry("no geometric realization attached")
    return replace(M, signs=compute_signs(M.geometry, M.char, orientation))


def geometric_orientation(M: OmniQT) -> int:
    """Orientation of the realization implied by the sign of the initial vertex."""
    if M.geometry is None:
        raise NoGeometry("no geometric realization attached")
    return M.initial_sign * orientation_at_vertex(M.geometry, M.polytope.initial_vertex)


def reverse_orientation(M: OmniQT) -> OmniQT:
    return replace(M, signs=tuple(-s for s in M.signs))


def conjugate_facet(M: OmniQT, j: int) -> OmniQT:
    """Conjugate the j-th facial line bundle: negate column j, keep the orientation.

    Every vertex monomial containing ``u_j`` changes sign, so the sign flips
    exactly at the vertices on facet ``j``.
    """
    if not 1 <= j <= M.m:
        raise BadParameters(f"facet {j} out of range")
    char = [list(row) for row in M.char]
    for row in char:
        row[j - 1] = -row[j - 1]
    if j <= M.n:
        char[j - 1] = [-x for x in char[j - 1]]  # premultiply by diag(.., -1, ..)
    signs = tuple(-s if j in w else s for w, s in zip(M.vertex_sets, M.signs))
    return OmniQT(M.polytope, tuple(map(tuple, char)), signs, M.geometry)


# connected sums -----------------------------------------------------------


def _check_sum_dims(M1: OmniQT, M2: OmniQT) -> int:
    if M1.n != M2.n:
        raise BadParameters(f"dimensions differ: {M1.n} vs {M2.n}")
    if M1.n < 2:
        raise DimensionTooLow("connected sum needs n >= 2")
    return M1.n


def _connected_sum(M1: OmniQT, M2: OmniQT):
    """Connected sum at the initial vertices.

    Returns the result and the maps taking surviving vertices of ``M1`` and
    ``M2`` to vertices of the result.
    """
    n = _check_sum_dims(M1, M2)
    if M1.initial_sign != -M2.initial_sign:
        raise SignClash("initial vertices must carry opposite signs")
    m1, m2 = M1.m, M2.m
    m = m1 + m2 - n
    star = M1.polytope.initial_vertex
    left = {i: i for i in range(1, m1 + 1)}
    right = {j: (j if j <= n else m1 + j - n) for j in range(1, m2 + 1)}

    vsets, signs, lmap, rmap = [], {}, {}, {}
    for w, s in zip(M1.vertex_sets, M1.signs):
        if w != star:
            nw = tuple(sorted(left[i] for i in w))
            lmap[w] = nw
            signs[nw] = s
            vsets.append(nw)
    for w, s in zip(M2.vertex_sets, M2.signs):
        if w != star:
            nw = tuple(sorted(right[j] for j in w))
            rmap[w] = nw
            signs[nw] = s
            vsets.append(nw)
    P = CombPolytope(n, m, vsets)
    char = [
        [int(i == k) for k in range(n)] + list(r1[n:]) + list(r2[n:])
        for i, (r1, r2) in enumerate(zip(M1.char, M2.char))
    ]

    # re-refine at the second vertex of the left summand
    second = M1.vertex_sets[1]
    P2, refined, order, _ = _refine(P, char, lmap[second])
    new_label = {old: new for new, old in enumerate(order, start=1)}

    def relabel(w):
        return tuple(sorted(new_label[i] for i in w))

    new_signs = {relabel(w): s for w, s in signs.items()}
    geometry = realize_polygon(P2) if n == 2 else None
    result = OmniQT(P2, refined, tuple(new_signs[w] for w in P2.vertex_sets), geometry)
    return (
        result,
        {w: relabel(x) for w, x in lmap.items()},
        {w: relabel(x) for w, x in rmap.items()},
    )


def connected_sum(M1: OmniQT, M2: OmniQT) -> OmniQT:
    """Omnioriented connected sum at the initial vertices.

    Facets ``1..n`` of both summands merge; the remaining facets of ``M1``
    and then ``M2`` follow.  The result is re-refined at the second vertex of
    ``M1``.  Raises ``SignClash`` unless the initial signs are opposite.
    """
    return _connected_sum(M1, M2)[0]


def _signed_cube(n: int, initial_sign: int) -> OmniQT:
    S = s_product(n)
    return S if S.initial_sign == initial_sign else reverse_orientation(S)


def _pick_vertex(candidates: Iterable, M: OmniQT, sign: int):
    for w in sorted(candidates):
        if M.sign(w) == sign:
            return w
    raise SignClash(f"no candidate vertex of sign {sign:+d}")


def box_sum(M1: OmniQT, M2: OmniQT) -> OmniQT:
    """``M1 # (+-S) # M2`` over ``P1 # I^n # P2``; always defined for n >= 2."""
    n = _check_sum_dims(M1, M2)
    S = _signed_cube(n, -M1.initial_sign)
    X, _, from_cube = _connected_sum(M1, S)
    w = _pick_vertex(from_cube.values(), X, -M2.initial_sign)
    return connected_sum(refine_at(X, w), M2)


def difsi_normalize(M: OmniQT) -> OmniQT:
    """``(+-S) # M``: same cobordism class, both signs present among the vertices."""
    if M.n < 2:
        raise DimensionTooLow("needs n >= 2")
    return connected_sum(_signed_cube(M.n, -M.initial_sign), M)


def add_cobordism(M1: OmniQT, M2: OmniQT) -> OmniQT:
    """A manifold representing the sum of the two cobordism classes.

    ``M2`` is replaced by ``(+-S) # M2``, which is then fine-ordered at a
    cube vertex whose sign is opposite to the initial sign of ``M1``.
    """
    n = _check_sum_dims(M1, M2)
    S = _signed_cube(n, -M2.initial_sign)
    M2p, from_cube, _ = _connected_sum(S, M2)
    w = _pick_vertex(from_cube.values(), M2p, -M1.initial_sign)
    return connected_sum(M1, refine_at(M2p, w))


def product_manifold(M1: OmniQT, M2: OmniQT) -> OmniQT:
    """Cartesian product with the finely ordered product polytope."""
    n1, m1, n2, m2 = M1.n, M1.m, M2.n, M2.m
    left, right = product_facet_labels(n1, m1, n2, m2)
    m = m1 + m2
    char = [[0] * m for _ in range(n1 + n2)]
    for r in range(n1):
        for i in range(1, m1 + 1):
            char[r][left[i] - 1] = M1.char[r][i - 1]
    for r in range(n2):
        for j in range(1, m2 + 1):
            char[n1 + r][right[j] - 1] = M2.char[r][j - 1]
    P = product(M1.polytope, M2.polytope)
    signs = {}
    for (v, s), (w, t) in itertools.product(M1.sign_map.items(), M2.sign_map.items()):
        signs[tuple(sorted([left[i] for i in v] + [right[j] for j in w]))] = s * t
    geometry = None
    if M1.geometry is not None and M2.geometry is not None:
        geometry = product(M1.geometry, M2.geometry)
    return OmniQT(P, tuple(map(tuple, char)), tuple(signs[w] for w in P.vertex_sets), geometry)


# builders -----------------------------------------------------------------


def from_geometry(geometry: HPolytope, lambda_star, orientation: int = 1) -> OmniQT:
    """Signed manifold over a realized polytope; checks the dicharacteristic."""
    char = full_char(lambda_star)
    P = geometry.combinatorial
    if len(char) != P.dim or any(len(r) != P.m for r in char):
        raise BadParameters(f"refined submatrix must be {P.dim}x{P.m - P.dim}")
    bad = validate_dichar(P, char)
    if bad:
        raise BadParameters(f"not a dicharacteristic: det {bad[0][1]} at vertex {bad[0][0]}")
    signs = compute_signs(geometry, char, orientation)
    return OmniQT(P, char, signs, geometry)


def _need(cond: bool, msg: str):
    if not cond:
        raise BadParameters(msg)


def cp(n: int) -> OmniQT:
    """Complex projective space over the simplex."""
    _need(n >= 1, "cp needs n >= 1")
    return from_geometry(simplex(n), [[-1] for _ in range(n)])


def cp_eps(n: int, eps: Sequence[int]) -> OmniQT:
    """Projective space with refined submatrix the +-1 column ``eps``."""
    _need(n >= 1 and len(eps) == n, "cp_eps needs n >= 1 and n signs")
    _need(all(e in (1, -1) for e in eps), "eps entries must be +1 or -1")
    return from_geometry(simplex(n), [[int(e)] for e in eps])


def bott_matrix(n: int, d: Mapping | Sequence | None = None) -> list:
    """Lower triangular ``D`` with ``-1`` on the diagonal and ``d(i, j)`` at row j, column i."""
    D = [[-int(i == j) for j in range(n)] for i in range(n)]
    if d is None:
        return D
    if isinstance(d, Mapping):
        items = d.items()
    else:
        items = (((i, j), d[j - 1][i - 1]) for j in range(1, n + 1) for i in range(1, j))
    for (i, j), val in items:
        _need(1 <= i < j <= n, f"d({i},{j}) needs 1 <= i < j <= n")
        D[j - 1][i - 1] = int(val)
    return D


def bott_tower(n: int, d: Mapping | Sequence | None = None) -> OmniQT:
    """Bott tower over the cube; ``d`` maps ``(i, j)`` with ``i < j`` to integers."""
    _need(n >= 1, "bott_tower needs n >= 1")
    return from_geometry(cube(n), bott_matrix(n, d))


def bounded_flag(n: int) -> OmniQT:
    _need(n >= 1, "bounded_flag needs n >= 1")
    return bott_tower(n, {(j - 1, j): 1 for j in range(2, n + 1)})


def s_product(n: int) -> OmniQT:
    """Product of 2-spheres with the bounding omniorientation ``(I^n, I_n)``."""
    _need(n >= 1, "s_product needs n >= 1")
    return from_geometry(cube(n), linalg.identity(n))


def b_rs_matrix(r: int, s: int) -> list:
    """The refined submatrix of ``B_{r,s}``: an ``(r+s-1) x (r+1)`` integer matrix."""
    J = [[-1 if i == j else (1 if i == j + 1 else 0) for j in range(r)] for i in range(r)]
    rows = [J[i] + [0] for i in range(r)]
    rows += [J[i] + [-1] for i in range(r)]
    rows += [[0] * r + [-1] for _ in range(s - r - 1)]
    return rows


def b_rs(r: int, s: int) -> OmniQT:
    """The ``CP^{s-1}``-bundle over the bounded flag manifold, over ``I^r x Delta(s-1)``."""
    _need(0 <= r < s and s >= 2, "b_rs needs 0 <= r < s and s >= 2")
    if r == 0:
        return cp(s - 1)
    return from_geometry(product(cube(r), simplex(s - 1)), b_rs_matrix(r, s))


def toric_s2_product(n: int) -> OmniQT:
    """``(CP^1)^n`` with its complex structure: the Bott tower with all ``d = 0``."""
    return bott_tower(n)

