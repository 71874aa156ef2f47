import numpy as np
import pytest

from bidisk import (
    InvalidInputError,
    RadiusGuardError,
    Series2D,
    build_submodule,
    core_function_eval,
    core_operator_matrix,
    evaluate,
    inner_product,
    kernel_eval,
    multiply,
    parse_polynomial,
    seeded_disk_points,
    shift_compressions,
    szego_kernel,
    wedge,
)


def brute_force_dim(gens: list[Series2D], level: int) -> int:
    """Independent oracle: rank of the stacked candidate coefficient matrix."""
    cols = []
    caps = (
        level + max(g.caps[0] for g in gens),
        level + max(g.caps[1] for g in gens),
    )
    for i in range(level + 1):
        for j in range(level + 1):
            mono = Series2D.monomial(i, j)
            for g in gens:
                cols.append(multiply(mono, g, caps).coeffs.reshape(-1))
    return int(np.linalg.matrix_rank(np.column_stack(cols), tol=1e-9))


class TestBuildSubmodule:
    def test_full_space(self):
        M = build_submodule([parse_polynomial("1")], 2)
        assert M.dim == 9
        for i in range(3):
            for j in range(3):
                assert M.contains(Series2D.monomial(i, j))

    def test_two_monomial_generators(self):
        gens = [parse_polynomial("z"), parse_polynomial("w")]
        expected = brute_force_dim(gens, 1)
        M = build_submodule(gens, 1)
        assert M.dim == expected
        for mono in ["z", "w", "z^2", "z w", "w^2", "z^2 w", "z w^2"]:
            assert M.contains(parse_polynomial(mono))
        assert not M.contains(parse_polynomial("1"))

    def test_difference_generator_rank(self, zw_gen):
        expected = brute_force_dim([zw_gen], 3)
        M = build_submodule([zw_gen], 3)
        assert M.dim == expected

    def test_dependent_generators(self, zw_gen):
        # z^2 multiples overlap (z-w) multiples; rank detection must dedupe
        gens = [zw_gen, parse_polynomial("z^2")]
        expected = brute_force_dim(gens, 3)
        M = build_submodule(gens, 3)
        assert M.dim == expected
        gram = M.basis_matrix.conj().T @ M.basis_matrix
        assert np.linalg.norm(gram - np.eye(M.dim)) < 1e-10

    def test_errors(self):
        with pytest.raises(InvalidInputError):
            build_submodule([], 3)
        with pytest.raises(InvalidInputError):
            build_submodule([Series2D([[0.0]])], 3)
        with pytest.raises(InvalidInputError):
            build_submodule([parse_polynomial("z^4")], 3)

    def test_deterministic_rebuild(self, zw_gen):
        A = build_submodule([zw_gen], 6).basis_matrix
        B = build_submodule([zw_gen], 6).basis_matrix
        assert A.tobytes() == B.tobytes()

    def test_level_inclusion(self, zw_gen):
        # z*M_{N-1} and w*M_{N-1} stay inside M_N
        low = build_submodule([zw_gen], 3)
        high = build_submodule([zw_gen], 4)
        for e in low.basis[:5]:
            ze = multiply(e, parse_polynomial("z"), high.caps)
            we = multiply(e, parse_polynomial("w"), high.caps)
            assert high.contains(ze, tol=1e-9)
            assert high.contains(we, tol=1e-9)

    def test_basis_grammar(self):
        M = build_submodule([parse_polynomial("1")], 1)
        names = [(0, 0), (1, 0), (0, 1), (1, 1)]
        for elem, (i, j) in zip(M.basis, names):
            assert elem.coeffs[i, j] == pytest.approx(1.0)


class TestShiftCompressions:
    def test_h2_level_one(self):
        M = build_submodule([parse_polynomial("1")], 1)
        Rz, Rw = shift_compressions(M)
        # basis order: 1, z, w, zw; z maps 1->z, w->zw, z and zw -> 0
        expected = np.zeros((4, 4))
        expected[1, 0] = 1.0
        expected[3, 2] = 1.0
        assert np.allclose(Rz, expected, atol=1e-12)
        assert np.linalg.norm(Rz, 2) <= 1.0 + 1e-12
        assert np.linalg.norm(Rw, 2) <= 1.0 + 1e-12

    def test_hyponormality_trace(self, zw_gen):
        for level in (2, 3, 5):
            M = build_submodule([zw_gen], level)
            Rz, _ = shift_compressions(M)
            comm = Rz.conj().T @ Rz - Rz @ Rz.conj().T
            assert np.trace(comm).real >= -1e-10


class TestKernel:
    def test_szego_at_origin(self, h2_40):
        assert kernel_eval(h2_40, (0.0, 0.0), (0.0, 0.0)) == pytest.approx(1.0)

    def test_szego_closed_form(self, h2_40):
        val = kernel_eval(h2_40, (0.5, 0.0), (0.5, 0.0))
        assert val == pytest.approx(4.0 / 3.0, abs=1e-6)

    def test_vanishes_on_diagonal(self, zw_30):
        val = kernel_eval(zw_30, (0.3, 0.3), (0.3, 0.3))
        assert abs(val) < 1e-9

    def test_guard(self, zw_30):
        with pytest.raises(RadiusGuardError):
            kernel_eval(zw_30, (0.95, 0.0), (0.0, 0.0))

    def test_reproducing_property(self, zw_gen):
        M = build_submodule([zw_gen], 8)
        p = (0.4, -0.3j)
        vals = np.array([evaluate(e, *p) for e in M.basis])
        kernel_series = Series2D((M.basis_matrix @ vals.conj()).reshape(M._grid_shape))
        for idx in [0, 3, 7]:
            e = M.basis[idx]
            assert inner_product(e, kernel_series) == pytest.approx(
                evaluate(e, *p), abs=1e-12
            )

    def test_kernel_psd(self, zw_30):
        pts = seeded_disk_points(12, radius=0.5)
        G = np.array([[kernel_eval(zw_30, q, p) for q in pts] for p in pts])
        assert np.linalg.norm(G - G.conj().T) < 1e-10
        assert np.linalg.eigvalsh((G + G.conj().T) / 2).min() >= -1e-9


class TestCoreFunction:
    def test_identity_for_h2(self, h2_40):
        for param, arg in [((0.0, 0.0), (0.0, 0.0)), ((0.3, -0.2), (0.1j, 0.4))]:
            assert core_function_eval(h2_40, param, arg) == pytest.approx(1.0, abs=1e-9)

    def test_vanishes_on_diagonal(self, zw_30):
        assert abs(core_function_eval(zw_30, (0.3, 0.3), (0.3, 0.3))) < 1e-12

    def test_beurling_z(self):
        M = build_submodule([parse_polynomial("z")], 40)
        for lam, z in [(0.3, 0.5), (0.2j, -0.4)]:
            val = core_function_eval(M, (lam, 0.1), (z, -0.2))
            assert val == pytest.approx(np.conj(lam) * z, abs=1e-8)

    def test_self_adjointness(self, zw_30, rng):
        for _ in range(5):
            p = tuple(0.5 * (rng.normal(size=2) + 1j * rng.normal(size=2)) / 3)
            q = tuple(0.5 * (rng.normal(size=2) + 1j * rng.normal(size=2)) / 3)
            lhs = core_function_eval(zw_30, p, q)
            rhs = np.conj(core_function_eval(zw_30, q, p))
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_boundary_flatness_proxy(self, zw_gen):
        # G(p, p) -> 1 towards the torus
        vals = []
        for r, level in [(0.8, 40), (0.9, 60)]:
            M = build_submodule([zw_gen], level)
            p = (r * np.exp(0.3j), r * np.exp(2.1j))
            vals.append(abs(core_function_eval(M, p, p) - 1.0))
        assert vals[1] < vals[0] < 0.5


class TestWedge:
    def test_h2_zero_point(self, h2_40):
        W = wedge(h2_40, "z", 0.0)
        assert W.dim == h2_40.caps[0] + 1
        mat = W.matrix.reshape(h2_40._grid_shape[0], h2_40._grid_shape[1], -1)
        assert np.linalg.norm(mat[1:]) < 1e-10  # spans pure-w monomials

    def test_h2_dim_is_cap_plus_one_every_point(self, h2_40):
        for a in (0.0, 0.35, -0.2 + 0.4j):
            assert wedge(h2_40, "z", a).dim == h2_40.caps[0] + 1

    def test_zw_spans_explicit_wedge_basis(self, zw_gen):
        from bidisk import zw_basis

        M = build_submodule([zw_gen], 20)
        W = wedge(M, "z", 0.0)
        assert W.dim == 21
        for n in range(0, 21, 4):
            phi = zw_basis("z-wedge", n, M.caps).realization.coeffs.reshape(-1)
            resid = phi - W.matrix @ (W.matrix.conj().T @ phi)
            assert np.linalg.norm(resid) < 1e-6

    def test_orthogonal_to_shifted_copy(self, zw_gen):
        M = build_submodule([zw_gen], 10)
        a = 0.3 - 0.2j
        W = wedge(M, "z", a)
        low = build_submodule([zw_gen], 9)
        shifted = multiply(low.basis[5], parse_polynomial("z") , M.caps)
        shifted = Series2D(shifted.coeffs - a * low.basis[5].truncate(M.caps).coeffs)
        overlaps = W.matrix.conj().T @ shifted.coeffs.reshape(-1)
        assert np.linalg.norm(overlaps) < 1e-9

    def test_dimension_split(self, zw_gen):
        # dim(wedge) + dim(shifted span) = dim(M) for the realized spaces
        M = build_submodule([zw_gen], 6)
        from bidisk.submodule import _shifted_and_extras

        S, _ = _shifted_and_extras(M, "z", 0.2)
        rank = np.linalg.matrix_rank(S.toarray(), tol=1e-9)
        assert wedge(M, "z", 0.2).dim + rank == M.dim

    def test_invalid_point(self, zw_30):
        with pytest.raises(InvalidInputError):
            wedge(zw_30, "z", 1.0)
        with pytest.raises(InvalidInputError):
            wedge(zw_30, "x", 0.0)


class TestCoreOperatorMatrix:
    def test_h2_rank_one(self, h2_40):
        C = core_operator_matrix(h2_40, 0.0, 0.0)
        assert C.hs_norm_sq() == pytest.approx(1.0, abs=1e-12)
        assert C.trace() == pytest.approx(1.0, abs=1e-12)
        eigs = np.linalg.eigvalsh(C.entries)
        assert eigs.max() == pytest.approx(1.0, abs=1e-10)
        assert abs(eigs[:-1]).max() < 1e-10

    def test_hermitian(self, zw_30):
        C = core_operator_matrix(zw_30, 0.3, -0.2j)
        assert np.linalg.norm(C.entries - C.entries.conj().T) < 1e-10

    def test_matches_displayed_formula_at_origin(self, zw_gen):
        M = build_submodule([zw_gen], 8)
        Rz, Rw = shift_compressions(M)
        eye = np.eye(M.dim)
        direct = (
            eye
            - Rz @ Rz.conj().T
            - Rw @ Rw.conj().T
            + Rz @ Rw @ Rz.conj().T @ Rw.conj().T
        )
        C = core_operator_matrix(M, 0.0, 0.0)
        assert np.abs(C.entries - direct).max() < 1e-9

    def test_sum_module_hs_three(self, zpw_30):
        C = core_operator_matrix(zpw_30, 0.0, 0.0)
        assert C.hs_norm_sq() == pytest.approx(3.0, abs=5e-3)

    def test_zw_hs_converges(self, zw_gen):
        target = np.pi**2 / 3.0 - 1.0
        errs = []
        for level in (16, 28):
            M = build_submodule([zw_gen], level)
            errs.append(abs(core_operator_matrix(M, 0.0, 0.0).hs_norm_sq() - target))
        assert errs[1] < errs[0] < 0.2

    def test_guard(self, zw_30):
        with pytest.raises(RadiusGuardError):
            core_operator_matrix(zw_30, 0.95, 0.0)


def test_szego_kernel_helper():
    assert szego_kernel((0.0, 0.0), (0.3, 0.4)) == pytest.approx(1.0)
    assert szego_kernel((0.5, 0.0), (0.5, 0.0)) == pytest.approx(4.0 / 3.0)
