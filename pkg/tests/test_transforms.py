import itertools

import numpy as np
import pytest

from triconcurrence import (
    Bipartition,
    SubspaceSelector,
    TripartiteDims,
    make_example_state,
    make_named,
    partial_trace,
    partial_transpose,
    project_substate,
    purity_deficits,
    pure_to_density,
    random_product_density,
    random_pure,
    realign,
)
from triconcurrence.linalg import flatten_index, hermiticity_defect, trace_norm
from triconcurrence.states import basis_state, example_feature_state
from triconcurrence.substates import full_selector


def coefficient_difference_deficits(coeffs: np.ndarray) -> tuple[float, float, float]:
    """Oracle: the three halves of summed coefficient-difference squares,
    formed literally term by term."""
    a = coeffs
    prod = np.einsum("ijk,pqt->ijkpqt", a, a)
    groups = (
        np.einsum("pjk,iqt->ijkpqt", a, a),
        np.einsum("iqk,pjt->ijkpqt", a, a),
        np.einsum("ijt,pqk->ijkpqt", a, a),
    )
    return tuple(0.5 * float((np.abs(prod - g) ** 2).sum()) for g in groups)


class TestPartialTrace:
    def test_feature_state_first_subsystem(self):
        rho = pure_to_density(example_feature_state())
        assert np.allclose(partial_trace(rho, 0), np.eye(2) / 2, atol=1e-12)

    def test_max_mixed_third_subsystem(self):
        rho = make_named("max-mixed", TripartiteDims(2, 2, 4))
        assert np.allclose(partial_trace(rho, 2), np.eye(4) / 4, atol=1e-12)

    def test_product_state_middle(self):
        rho = pure_to_density(basis_state(TripartiteDims(2, 2, 2), (0, 0, 0)))
        assert np.allclose(partial_trace(rho, 1), np.diag([1.0, 0.0]), atol=1e-12)

    def test_trace_preserving_hermitian_psd(self):
        rho = pure_to_density(random_pure(TripartiteDims(2, 3, 4), 5))
        for j in range(3):
            red = partial_trace(rho, j)
            assert abs(np.trace(red).real - 1.0) < 1e-12
            assert hermiticity_defect(red) < 1e-12
            assert np.linalg.eigvalsh(red).min() > -1e-12

    def test_invalid_label(self):
        rho = make_named("max-mixed", TripartiteDims(2, 2, 2))
        with pytest.raises(ValueError):
            partial_trace(rho, 3)


class TestPurityDeficits:
    def test_product_state(self):
        d = purity_deficits(basis_state(TripartiteDims(2, 2, 2), (0, 0, 0)))
        assert np.allclose(d, (0, 0, 0), atol=1e-12)

    def test_ghz(self, ghz):
        assert np.allclose(purity_deficits(ghz), (0.5, 0.5, 0.5), atol=1e-12)

    def test_feature_state(self):
        assert np.allclose(purity_deficits(example_feature_state()), (0.5, 0.5, 0.0), atol=1e-12)

    @pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 4), (3, 4, 5)])
    def test_matches_coefficient_difference_sums(self, dims):
        for seed in range(8):
            psi = random_pure(TripartiteDims(*dims), seed)
            got = purity_deficits(psi)
            expected = coefficient_difference_deficits(np.asarray(psi.coeffs))
            assert np.allclose(got, expected, atol=1e-9)
            for dj, d in zip(got, dims):
                assert -1e-12 <= dj <= 1 - 1 / d + 1e-12


class TestPartialTranspose:
    def test_diagonal_fixed_point(self):
        rho = make_named("max-mixed", TripartiteDims(2, 2, 4))
        for j in range(3):
            assert np.allclose(partial_transpose(rho, j), rho.mat, atol=1e-15)

    def test_bell_times_zero_norm(self, bell_times_zero):
        rho = pure_to_density(bell_times_zero)
        assert abs(trace_norm(partial_transpose(rho, 0)) - 2.0) < 1e-9

    def test_ghz_third_subsystem(self, ghz_density):
        pt = partial_transpose(ghz_density, 2)
        assert abs(trace_norm(pt) - 2.0) < 1e-9
        w = np.linalg.eigvalsh(pt)
        assert np.allclose(sorted(w), [-0.5, 0, 0, 0, 0, 0.5, 0.5, 0.5], atol=1e-12)

    def test_involution_trace_hermiticity(self):
        rho = pure_to_density(random_pure(TripartiteDims(2, 3, 4), 9))
        from triconcurrence import DensityMatrix

        for j in range(3):
            pt = partial_transpose(rho, j)
            assert abs(np.trace(pt).real - 1.0) < 1e-12
            assert hermiticity_defect(pt) < 1e-12
            wrapped = DensityMatrix(rho.dims, pt, float(np.trace(pt).real))
            assert np.allclose(partial_transpose(wrapped, j), rho.mat, atol=1e-15)

    def test_invalid_label(self, ghz_density):
        with pytest.raises(ValueError):
            partial_transpose(ghz_density, -1)


class TestRealign:
    def test_product_of_pure_states(self):
        # pure x pure across the solo|rest cut: Schmidt rank 1, norm 1
        dims = TripartiteDims(2, 2, 2)
        psi = basis_state(dims, (0, 1, 0))
        rho = pure_to_density(psi)
        for solo in range(3):
            assert abs(trace_norm(realign(rho, solo)) - 1.0) < 1e-9

    def test_ghz(self, ghz_density):
        assert abs(trace_norm(realign(ghz_density, 0)) - 2.0) < 1e-9

    def test_max_mixed_value_from_definition(self):
        # rank-1 reshuffle with a single singular value; its size follows
        # from the Frobenius norms of the identity factors: sqrt(2)*2 / 8
        rho = make_named("max-mixed", TripartiteDims(2, 2, 2))
        for solo in range(3):
            r = realign(rho, solo)
            s = np.linalg.svd(r, compute_uv=False)
            assert (s > 1e-12).sum() == 1
            assert abs(trace_norm(r) - np.sqrt(2) / 4) < 1e-12

    def test_shape(self):
        rho = make_example_state(0.4)
        assert realign(rho, Bipartition(0)).shape == (4, 64)
        assert realign(rho, 2).shape == (16, 16)

    def test_double_application_recovers_reordered(self):
        rho = pure_to_density(random_pure(TripartiteDims(2, 3, 4), 13))
        dims = rho.dims.as_tuple()
        for solo in range(3):
            part = Bipartition(solo)
            ds = dims[solo]
            dr = dims[part.rest[0]] * dims[part.rest[1]]
            r = realign(rho, part)
            back = r.reshape(ds, ds, dr, dr).transpose(0, 2, 1, 3).reshape(ds * dr, ds * dr)
            order = (solo,) + part.rest
            perm = order + tuple(o + 3 for o in order)
            reordered = rho.mat.reshape(dims + dims).transpose(perm).reshape(ds * dr, ds * dr)
            assert np.array_equal(back, reordered)

    def test_local_unitary_invariance(self):
        from triconcurrence import DensityMatrix
        from triconcurrence.states import haar_unitary

        rng = np.random.default_rng(21)
        dims = TripartiteDims(2, 2, 3)
        rho = pure_to_density(random_pure(dims, 17))
        for solo in range(3):
            part = Bipartition(solo)
            base = trace_norm(realign(rho, part))
            ds = dims.as_tuple()[solo]
            dr = dims.total // ds
            u_solo = haar_unitary(ds, rng)
            u_rest = haar_unitary(dr, rng)
            order = (solo,) + part.rest
            # rotate within the solo and rest blocks, then undo the reorder
            perm = np.argsort(order)
            d_sorted = [dims.as_tuple()[o] for o in order]
            u = np.kron(u_solo, u_rest).reshape(d_sorted + d_sorted)
            u = u.transpose(tuple(perm) + tuple(p + 3 for p in perm)).reshape(dims.total, dims.total)
            rotated = DensityMatrix.from_matrix(dims, u @ rho.mat @ u.conj().T)
            assert abs(trace_norm(realign(rotated, part)) - base) < 1e-8

    def test_invalid_partition(self, ghz_density):
        with pytest.raises(ValueError):
            realign(ghz_density, 5)


class TestProjectSubstate:
    def test_full_selector_identity(self):
        rho = make_example_state(0.3)
        sub = project_substate(rho, full_selector(rho.dims))
        assert np.array_equal(sub.mat, rho.mat)

    def test_unsupported_levels_vanish(self):
        rho = make_example_state(1.0)
        sel = SubspaceSelector((0, 1), (0, 1), (1, 2))
        sub = project_substate(rho, sel)
        assert np.allclose(sub.mat, 0.0, atol=1e-15)
        assert sub.trace_value == 0.0

    def test_supported_pair_structure(self):
        t = 0.4
        rho = make_example_state(t)
        sel = SubspaceSelector((0, 1), (0, 1), (0, 3))
        sub = project_substate(rho, sel)
        assert sub.dims.as_tuple() == (2, 2, 2)
        assert abs(sub.trace_value - (1 + t) / 2) < 1e-12
        # manual extraction oracle
        idx = [flatten_index((i, j, k), (2, 2, 4)) for i in (0, 1) for j in (0, 1) for k in (0, 3)]
        assert np.allclose(sub.mat, rho.mat[np.ix_(idx, idx)], atol=1e-15)

    def test_trace_never_grows(self):
        rho = make_example_state(0.7)
        for shape in itertools.product((1, 2), (1, 2), (1, 2, 3, 4)):
            from triconcurrence import enumerate_selectors

            for sel in enumerate_selectors(rho.dims, shape):
                sub = project_substate(rho, sel)
                assert sub.trace_value <= rho.trace_value + 1e-12

    def test_selector_out_of_dims(self):
        rho = make_named("max-mixed", TripartiteDims(2, 2, 2))
        with pytest.raises(ValueError):
            project_substate(rho, SubspaceSelector((0, 1), (0, 1), (0, 3)))

    def test_empty_selector_rejected(self):
        with pytest.raises(ValueError):
            SubspaceSelector((), (0,), (0,))


class TestSeparableNonDetection:
    @pytest.mark.parametrize("dims", [(2, 2, 2), (2, 2, 4)])
    def test_ppt_and_ccnr_silent(self, dims):
        states = [
            make_named("max-mixed", TripartiteDims(*dims)),
            random_product_density(TripartiteDims(*dims), seed=1),
            random_product_density(TripartiteDims(*dims), seed=2),
        ]
        for rho in states:
            for j in range(3):
                assert trace_norm(partial_transpose(rho, j)) <= rho.trace_value + 1e-9
                assert trace_norm(realign(rho, j)) <= rho.trace_value + 1e-9
