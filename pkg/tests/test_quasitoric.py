import itertools

import pytest

from qtoric import linalg
from qtoric import quasitoric as qt
from qtoric.errors import BadParameters, DimensionTooLow, NoGeometry, NotAVertex, NotUnimodular, SignClash
from qtoric.polytope import CombPolytope, cube, simplex


def sign_table(M):
    return dict(zip(M.vertex_sets, M.signs))


# dicharacteristics --------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_validate_simplex(n):
    assert qt.validate_dichar(simplex(n).combinatorial, qt.full_char([[-1]] * n)) == []


def test_validate_bott_any_twist():
    for vals in itertools.product(range(-2, 3), repeat=3):
        D = qt.bott_matrix(3, {(1, 2): vals[0], (1, 3): vals[1], (2, 3): vals[2]})
        assert qt.validate_dichar(cube(3).combinatorial, qt.full_char(D)) == []


def test_validate_reports_violation():
    char = qt.full_char([[2, 0], [1, 1]])  # lambda_3 = (2, 1), lambda_4 = (0, 1)
    bad = qt.validate_dichar(cube(2).combinatorial, char)
    assert ((2, 3), -2) in bad


def test_refine_identity_at_initial_vertex():
    P = simplex(2).combinatorial
    char = qt.full_char([[-1], [-1]])
    P2, refined = qt.refine(P, char, (1, 2))
    assert P2 == P and refined == char


def test_refine_simplex_at_13():
    P = simplex(2).combinatorial
    char = qt.full_char([[-1], [-1]])
    P2, refined = qt.refine(P, char, (1, 3))
    # facets reorder as (1, 3, 2); the corner block G has columns (1, 0), (-1, -1)
    # and G^-1 (0, 1) = (-1, -1), so the simplex keeps its symmetric matrix
    assert refined == ((1, 0, -1), (0, 1, -1))
    assert qt.validate_dichar(P2, refined) == []
    G = [[1, -1], [0, -1]]
    permuted = [[row[i - 1] for i in (1, 3, 2)] for row in char]
    assert linalg.matmul(G, [list(r) for r in refined]) == permuted
    # the transposed block would give (0, -1), which is not a dicharacteristic
    assert qt.validate_dichar(P2, qt.full_char([[0], [-1]])) != []


def test_refine_rejects_bad_matrix():
    with pytest.raises(NotUnimodular):
        qt.refine(cube(2).combinatorial, qt.full_char([[2, 0], [1, 1]]), (1, 2))
    with pytest.raises(NotAVertex):
        qt.refine_at(qt.s_product(2), (1, 3))


@pytest.mark.parametrize("n", [2, 3])
def test_negate_column_then_refine_gives_eps(n):
    """Negating column j <= n and refining puts -1 everywhere except +1 in row j."""
    for j in range(1, n + 1):
        char = [list(r) for r in qt.full_char([[-1]] * n)]
        for row in char:
            row[j - 1] = -row[j - 1]
        _, refined = qt.refine(simplex(n).combinatorial, char, tuple(range(1, n + 1)))
        eps = [row[n] for row in refined]
        assert eps == [1 if i == j else -1 for i in range(1, n + 1)]


# kernels -------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kernel_simplex_diagonal(n):
    K = qt.kernel_lattice(qt.cp(n).char)
    assert qt.same_lattice(K.basis, [[1] * (n + 1)])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kernel_cube(n):
    K = qt.kernel_lattice(qt.bott_tower(n).char)
    expected = [[int(i == k or i == n + k) for i in range(2 * n)] for k in range(n)]
    assert qt.same_lattice(K.basis, expected)


def test_kernel_annihilates_and_saturated():
    for M in [qt.b_rs(1, 3), qt.bounded_flag(3), qt.bott_tower(3, {(1, 3): 5})]:
        K = qt.kernel_lattice(M.char)
        assert len(K.basis) == M.m - M.n
        for v in K.basis:
            assert linalg.matvec(M.char, v) == [0] * M.n
        # saturation: the kernel basis extends to a unimodular matrix, so its SNF is all ones
        _, d, _ = linalg.smith_normal_form([list(v) for v in K.basis])
        assert all(d[i][i] == 1 for i in range(len(K.basis)))


def test_lattice_contains():
    assert qt.lattice_contains([[2, 0], [0, 1]], [4, 3])
    assert not qt.lattice_contains([[2, 0], [0, 1]], [1, 0])


# signs -----------------------------------------------------------------------


def test_cp2_signs():
    M = qt.cp(2)
    assert M.signs == (1, 1, 1) and M.q_minus == 0 and M.sigma_sum == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_signs(n):
    M = qt.s_product(n)
    for w, x in M.geometry.vertices:
        assert M.sign(w) == (-1) ** sum(x)
    assert M.sigma_sum == 0
    assert M.q_minus == M.q_plus == 2 ** (n - 1)


def test_cp_eps_signs():
    M = qt.cp_eps(2, (1, -1))
    assert M.signs == (1, 1, -1) and M.q_minus == 1


def test_nonstandard_cp2_negative_counts():
    counts = sorted(qt.cp_eps(2, eps).q_minus for eps in [(1, -1), (-1, 1), (1, 1)])
    assert counts == [1, 1, 2]


def test_reverse_orientation():
    M = qt.cp(2)
    R = qt.reverse_orientation(M)
    assert R.signs == (-1, -1, -1) and R.char == M.char
    assert qt.reverse_orientation(R) == M
    assert qt.reverse_orientation(qt.s_product(2)).sign((1, 2)) == -1


def test_conjugate_facet_simplex():
    C = qt.conjugate_facet(qt.cp(2), 3)
    assert C.lambda_star == ((1,), (1,))
    assert C.signs == (1, -1, -1) and C.q_minus == 2
    assert qt.validate_dichar(C.polytope, C.char) == []


def test_conjugate_facet_twice_is_identity():
    for M in [qt.cp(3), qt.bott_tower(3, {(1, 2): 2}), qt.b_rs(1, 3)]:
        for j in range(1, M.m + 1):
            assert qt.conjugate_facet(qt.conjugate_facet(M, j), j) == M


@pytest.mark.parametrize("n", [2, 3])
def test_conjugate_cube_flips_first_coordinate_one(n):
    M = qt.s_product(n)
    C = qt.conjugate_facet(M, n + 1)
    points = dict(M.geometry.vertices)
    flipped = [w for w in M.vertex_sets if C.sign(w) != M.sign(w)]
    assert len(flipped) == 2 ** (n - 1)
    assert all(points[w][0] == 1 for w in flipped)


def test_conjugate_matches_geometric_recompute():
    for M in [qt.cp(2), qt.cp(3), qt.bott_tower(2, {(1, 2): 1}), qt.b_rs(1, 2)]:
        for j in range(1, M.m + 1):
            C = qt.conjugate_facet(M, j)
            assert qt.compute_signs(C.geometry, C.char, qt.geometric_orientation(C)) == C.signs


@pytest.mark.parametrize("M", [qt.cp(2), qt.s_product(2), qt.cp_eps(2, (1, -1)), qt.b_rs(1, 2), qt.cp(3)])
def test_refine_at_every_vertex_keeps_sign_function(M):
    for v in M.vertex_sets:
        R = qt.refine_at(M, v)
        assert qt.validate_dichar(R.polytope, R.char) == []
        assert sorted(R.signs) == sorted(M.signs)
        assert qt.compute_signs(R.geometry, R.char, qt.geometric_orientation(R)) == R.signs


def test_signs_geometric_requires_geometry():
    M = qt.connected_sum(qt.cp(3), qt.reverse_orientation(qt.cp(3)))
    assert M.geometry is None
    with pytest.raises(NoGeometry):
        qt.signs_geometric(M)


# sums --------------------------------------------------------------------------


def test_square_bounds():
    M = qt.connected_sum(qt.cp(2), qt.reverse_orientation(qt.cp(2)))
    assert (M.q, M.m) == (4, 4)
    assert sorted(M.signs) == [-1, -1, 1, 1] and M.sigma_sum == 0


def test_direct_sum_clash():
    with pytest.raises(SignClash):
        qt.connected_sum(qt.cp(2), qt.cp(2))


def test_pentagon():
    M = qt.connected_sum(qt.cp(2), qt.reverse_orientation(qt.s_product(2)))
    assert (M.q, M.m, M.sigma_sum) == (5, 5, 3)


def test_sum_dimension_checks():
    with pytest.raises(BadParameters):
        qt.connected_sum(qt.cp(2), qt.reverse_orientation(qt.cp(3)))
    with pytest.raises(DimensionTooLow):
        qt.connected_sum(qt.cp(1), qt.reverse_orientation(qt.cp(1)))
    with pytest.raises(DimensionTooLow):
        qt.box_sum(qt.cp(1), qt.cp(1))
    with pytest.raises(DimensionTooLow):
        qt.difsi_normalize(qt.cp(1))


def test_sum_facet_order():
    M1, M2 = qt.cp(2), qt.reverse_orientation(qt.bott_tower(2))
    _, lmap, rmap = qt._connected_sum(M1, M2)
    # all surviving vertices appear, and the result is refined at the second vertex of M1
    assert len(lmap) == 2 and len(rmap) == 3
    assert lmap[M1.vertex_sets[1]] == (1, 2)


def test_box_sum_hexagon():
    M = qt.box_sum(qt.cp(2), qt.cp(2))
    assert (M.q, M.m) == (6, 6) and set(M.signs) == {1}
    assert M.geometry is not None and M.geometry.vertex_sets == M.vertex_sets


def test_box_sum_polygon_counts():
    for a, b in [(qt.cp(2), qt.bott_tower(2)), (qt.bott_tower(2), qt.b_rs(1, 2)), (qt.cp(2), qt.cp_eps(2, (1, -1)))]:
        M = qt.box_sum(a, b)
        assert M.q == a.q + b.q and M.m == a.m + b.m
        assert M.sigma_sum == a.sigma_sum + b.sigma_sum


def test_box_sum_with_negative_bounds():
    M = qt.cp(3)
    assert qt.box_sum(M, qt.reverse_orientation(M)).sigma_sum == 0


def test_difsi_normalize():
    M = qt.difsi_normalize(qt.cp(2))
    assert (M.q, M.m) == (5, 5)
    assert sorted(M.signs) == [-1, 1, 1, 1, 1]
    R = qt.reverse_orientation(qt.cp(2))
    N = qt.difsi_normalize(R)
    assert N.sigma_sum == -3 and set(N.signs) == {1, -1}


def test_add_cobordism_hexagon():
    M = qt.add_cobordism(qt.cp(2), qt.cp(2))
    assert (M.q, M.m) == (6, 6) and set(M.signs) == {1}


def test_add_cobordism_sigma_additive():
    for a, b in [(qt.cp(3), qt.cp(3)), (qt.cp(3), qt.bott_tower(3)), (qt.s_product(2), qt.cp(2))]:
        assert qt.add_cobordism(a, b).sigma_sum == a.sigma_sum + b.sigma_sum


# builders ---------------------------------------------------------------------------


def test_b12():
    M = qt.b_rs(1, 2)
    assert (M.n, M.m) == (2, 4)
    assert M.lambda_star == ((-1, 0), (-1, -1))
    assert qt.validate_dichar(M.polytope, M.char) == []


@pytest.mark.parametrize("r,s", [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
def test_b_rs_valid(r, s):
    M = qt.b_rs(r, s)
    assert (M.n, M.m) == (r + s - 1, 2 * r + s)
    assert qt.validate_dichar(M.polytope, M.char) == []


def test_b_rs_r_zero_is_projective_space():
    assert qt.b_rs(0, 3) == qt.cp(2)


def test_builder_parameter_errors():
    for call in [
        lambda: qt.cp(0),
        lambda: qt.cp_eps(2, (1,)),
        lambda: qt.cp_eps(2, (1, 2)),
        lambda: qt.b_rs(2, 2),
        lambda: qt.bott_tower(2, {(2, 1): 1}),
        lambda: qt.s_product(0),
    ]:
        with pytest.raises(BadParameters):
            call()


def test_from_geometry_rejects_non_dichar():
    with pytest.raises(BadParameters):
        qt.from_geometry(cube(2), [[2, 0], [1, 1]])


def test_omni_validation():
    P = CombPolytope(2, 3, [(1, 2), (1, 3), (2, 3)])
    with pytest.raises(BadParameters):
        qt.OmniQT(P, ((1, 0, -1), (0, 1, -1)), (1, 1))
    with pytest.raises(BadParameters):
        qt.OmniQT(P, ((0, 1, -1), (1, 0, -1)), (1, 1, 1))


def test_product_manifold():
    M = qt.product_manifold(qt.cp(1), qt.cp(2))
    assert (M.n, M.m, M.q) == (3, 5, 6)
    assert qt.validate_dichar(M.polytope, M.char) == []
    assert qt.compute_signs(M.geometry, M.char) == M.signs
