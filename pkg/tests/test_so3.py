import numpy as np
import pytest
from numpy.testing import assert_allclose

from trideco import gl3, o3, sl3, so3
from trideco.tensor import EUCLIDEAN, Metric, Tensor3, Vector3, transform

from helpers import rand_tensor, random_rotation, unit_tensor

DIAG_METRIC = Metric(np.diag([2.0, 1.0, 1.0]))
METRICS = [EUCLIDEAN, DIAG_METRIC]
METRIC_IDS = ["euclid", "diag211"]


class TestSplit:
    def test_zero_input(self):
        parts = sl3.epsilon_contractions(Tensor3.zeros())
        split = so3.so3_split(parts)
        for value in (split.e_mat, split.f_mat, split.beta_vec, split.gamma_vec):
            assert value.max_abs() == 0.0

    @pytest.mark.parametrize("metric", METRICS, ids=METRIC_IDS)
    def test_matrices_symmetric_traceless(self, rng, metric):
        split = so3.so3_split(sl3.epsilon_contractions(rand_tensor(rng)), metric)
        for mat in (split.e_mat, split.f_mat):
            assert_allclose(mat.components, mat.components.T, atol=1e-14)
            # traceless against the metric, the slot-contraction with g_inv
            assert abs(float(np.einsum("ij,ij->", metric.g_inv, mat.components))) < 1e-13

    @pytest.mark.parametrize("metric", METRICS, ids=METRIC_IDS)
    def test_vectors_are_the_trace_vectors(self, rng, metric):
        t = rand_tensor(rng)
        n = gl3.residue_part(t)
        _, _, beta, gamma = o3.n_trace_split(n, metric)
        split = so3.so3_split(sl3.epsilon_contractions(n), metric)
        assert_allclose(split.beta_vec.components, beta.components, atol=1e-13)
        assert_allclose(split.gamma_vec.components, gamma.components, atol=1e-13)

    def test_axial_proportionality_constants(self, rng):
        # the frozen constants hold for every sample, not just one draw
        for _ in range(10):
            t = rand_tensor(rng)
            parts = sl3.epsilon_contractions(t)
            n1, n2 = gl3.n_split(t, "plain")
            beta = np.einsum("ij,ijk->k", EUCLIDEAN.g, n1.components)
            gamma = np.einsum("ij,ikj->k", EUCLIDEAN.g, n2.components)
            b_low = parts.b_check.components  # euclidean: lowering is free
            c_low = parts.c_check.components
            b_axial = np.einsum("ijk,ij->k", sl3.EPSILON, (b_low - b_low.T) / 2.0)
            c_axial = np.einsum("ijk,ij->k", sl3.EPSILON, (c_low - c_low.T) / 2.0)
            assert_allclose(b_axial, so3.AXIAL_FROM_FIRST_TRACE * beta, atol=1e-13)
            assert_allclose(c_axial, so3.AXIAL_FROM_SECOND_TRACE * gamma, atol=1e-13)

    def test_parity_bookkeeping(self, rng):
        split = so3.so3_split(sl3.epsilon_contractions(rand_tensor(rng)))
        assert split.e_mat.parity == 1 and split.f_mat.parity == 1
        assert split.beta_vec.parity == 0 and split.gamma_vec.parity == 0


class TestComponentReconstruction:
    @pytest.mark.parametrize("metric", METRICS, ids=METRIC_IDS)
    def test_traceless_branch_from_matrix_alone(self, rng, metric):
        t = rand_tensor(rng)
        n1, n2 = gl3.n_split(t, "plain")
        m1, p1, m2, p2 = o3.n_family_trace_split(n1, n2, metric)
        split = so3.so3_split(sl3.epsilon_contractions(gl3.residue_part(t)), metric)
        zero = Vector3(np.zeros(3), "upper")
        assert so3.first_component_from(split.e_mat, zero, metric).allclose(p1, 1e-12)
        assert so3.second_component_from(split.f_mat, zero, metric).allclose(p2, 1e-12)

    @pytest.mark.parametrize("metric", METRICS, ids=METRIC_IDS)
    def test_full_branches(self, rng, metric):
        t = rand_tensor(rng)
        n1, n2 = gl3.n_split(t, "plain")
        split = so3.so3_split(sl3.epsilon_contractions(gl3.residue_part(t)), metric)
        rebuilt1 = so3.first_component_from(split.e_mat, split.beta_vec, metric)
        rebuilt2 = so3.second_component_from(split.f_mat, split.gamma_vec, metric)
        assert rebuilt1.allclose(n1, 1e-12)
        assert rebuilt2.allclose(n2, 1e-12)


class TestRepresentation:
    def test_epsilon_is_pure_pseudo_scalar(self):
        rep = so3.so3_representation(Tensor3(sl3.EPSILON))
        assert rep.a_scalar == pytest.approx(1.0)
        for value in (rep.alpha, rep.r_part, rep.e_mat, rep.beta_vec, rep.f_mat, rep.gamma_vec):
            assert value.max_abs() < 1e-14

    def test_traceless_symmetric_is_pure_remainder(self):
        t = Tensor3.single_entry((0, 1, 2), 6.0)
        s = gl3.symmetric_part(t)
        rep = so3.so3_representation(s)
        assert rep.r_part.allclose(s, 1e-13)
        assert rep.a_scalar == pytest.approx(0.0, abs=1e-14)
        for value in (rep.alpha, rep.e_mat, rep.beta_vec, rep.f_mat, rep.gamma_vec):
            assert value.max_abs() < 1e-13

    @pytest.mark.parametrize("metric", METRICS, ids=METRIC_IDS)
    def test_round_trip(self, rng, metric):
        t = rand_tensor(rng)
        rebuilt = so3.reassemble(so3.so3_representation(t, metric), metric)
        assert rebuilt.allclose(t, 1e-11)

    def test_rotation_covariance(self, rng):
        t = unit_tensor(rng)
        for _ in range(10):
            r = random_rotation(rng)
            before = so3.so3_representation(t)
            after = so3.so3_representation(transform(t, r))
            assert after.a_scalar == pytest.approx(before.a_scalar, abs=1e-10)
            for name in ("alpha", "r_part", "e_mat", "beta_vec", "f_mat", "gamma_vec"):
                lhs = getattr(after, name)
                rhs = transform(getattr(before, name), r)
                assert (lhs - rhs).max_abs() < 1e-9

    def test_dimension_bookkeeping(self):
        # 27 = (3 + 7) + 1 + (3 + 5) + (3 + 5) across the representation pieces
        from trideco import oracle

        finest = {
            "k_part": 3,
            "r_part": 7,
            "antisymmetric": 1,
            "m1_part": 3,
            "p1_part": 5,
            "m2_part": 3,
            "p2_part": 5,
        }
        measured = {name: oracle.rank(oracle.materialize(name)) for name in finest}
        assert measured == finest
        assert sum(finest.values()) == 27
