import numpy as np
import pytest

from src.construction import (
    MeasurementFamily, basis_vector, build_measurements, decompose_state, family_state,
    flip_operator, flip_partner, normalize, simplex_rows,
)
from src.errors import DimensionMismatchError, InputFormatError, PreconditionError
from src.graph_core import build_family_graph, family_partitions

SQRT2 = np.sqrt(2)


class TestSimplexRows:

    def test_m2_matches_printed_matrix(self):
        c = simplex_rows(2, -2.0)
        np.testing.assert_allclose(c.rows, [[-SQRT2], [SQRT2]], atol=1e-15)

    def test_m3_matches_printed_matrix(self):
        c = simplex_rows(3, -2.0)
        np.testing.assert_allclose(c.rows, [[-2, 0], [1, -np.sqrt(3)], [1, np.sqrt(3)]], atol=1e-14)

    def test_m1_is_empty(self):
        c = simplex_rows(1, -4.0)
        assert c.rows.shape == (1, 0)
        assert c.satisfies(1e-12)

    @pytest.mark.parametrize("m", range(1, 13))
    @pytest.mark.parametrize("pairwise", [-2.0, -4.0])
    def test_invariants(self, m, pairwise):
        c = simplex_rows(m, pairwise)
        assert c.rows.shape == (m, m - 1)
        assert c.pairwise_error() <= 1e-12
        assert c.column_sum_error() <= 1e-12
        assert c.norm_error() <= 1e-12

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            simplex_rows(0, -2.0)
        with pytest.raises(PreconditionError):
            simplex_rows(3, 0.0)


class TestBuildMeasurements:

    def test_n7_vertex_2_is_basis_zero(self, family7):
        assert family7.d == 5
        np.testing.assert_allclose(family7.vector(2), basis_vector(5, 0))

    def test_n6_template(self):
        fam = build_measurements(6)
        expected = normalize(np.array([0, 1, 1, SQRT2]))
        np.testing.assert_allclose(fam.vector(3), expected, atol=1e-15)
        np.testing.assert_allclose(fam.vector(5), expected[::-1], atol=1e-15)

    def test_n8_shared_vertex(self, family8):
        np.testing.assert_allclose(family8.vector(5), [0, 0, -1 / SQRT2, 1 / SQRT2, 0, 0], atol=1e-15)

    def test_rejects_pentagon(self):
        with pytest.raises(PreconditionError):
            build_measurements(5)

    @pytest.mark.parametrize("n", range(6, 21))
    def test_adjacent_vectors_orthogonal(self, n):
        fam = build_measurements(n)
        g = build_family_graph(n)
        assert fam.d == n - 2
        for i, j in g.edges:
            assert abs(np.vdot(fam.vector(i), fam.vector(j))) < 1e-9

    @pytest.mark.parametrize("n", range(6, 21))
    def test_p11_is_one_ninth(self, n):
        fam = build_measurements(n)
        assert abs(fam.overlap(1)) ** 2 == pytest.approx(1 / 9, abs=1e-12)

    @pytest.mark.parametrize("n", [7, 9, 11, 13])
    def test_cross_partition_template_overlap_is_one(self, n):
        """Unnormalized templates of V_A minus 2 and V_B minus N overlap by exactly 1."""
        fam = build_measurements(n)
        part_a, part_b = family_partitions(n)
        norm_sq = 2 + 2 * (n - 5) / 2
        for i in part_a[1:]:
            for j in part_b[:-1]:
                assert np.vdot(fam.vector(i), fam.vector(j)).real * norm_sq == pytest.approx(1.0, abs=1e-12)

    def test_family_dict_round_trip_is_exact(self, family8):
        again = MeasurementFamily.from_dict(family8.to_dict())
        for i in family8.vectors:
            assert np.array_equal(again.vector(i), family8.vector(i))
        assert np.array_equal(again.state, family8.state)


class TestFlip:

    def test_reverses_amplitudes(self):
        np.testing.assert_array_equal(flip_operator(3)(np.array([1, 2, 3])), [3, 2, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            flip_operator(3)(np.zeros(4))

    def test_matrix_is_an_involution(self):
        x = flip_operator(5).matrix
        np.testing.assert_array_equal(x @ x, np.eye(5))

    @pytest.mark.parametrize("n", range(6, 15))
    def test_state_is_invariant(self, n):
        psi = family_state(n)
        np.testing.assert_allclose(flip_operator(n - 2)(psi), psi, atol=1e-15)

    def test_n7_flip_of_v2_is_v7(self, family7):
        np.testing.assert_allclose(flip_operator(5)(family7.vector(2)), family7.vector(7))

    @pytest.mark.parametrize("n", range(6, 15))
    def test_maps_part_a_onto_part_b(self, n):
        fam = build_measurements(n)
        flip = flip_operator(fam.d)
        part_a, part_b = family_partitions(n)
        for i in part_a:
            j = flip_partner(n, i)
            assert j in part_b
            image = flip(fam.vector(i))
            # the even shared vector is odd under the flip
            assert abs(abs(np.vdot(image, fam.vector(j))) - 1.0) < 1e-12

    def test_partner_map(self):
        assert flip_partner(7, 2) == 7
        assert flip_partner(8, 5) == 5
        with pytest.raises(PreconditionError):
            flip_partner(7, 6)


class TestDecomposition:

    @pytest.mark.parametrize("n", range(6, 21))
    def test_state_in_both_partition_spans(self, n):
        fam = build_measurements(n)
        part_a, part_b = family_partitions(n)
        assert decompose_state(fam.state, fam, part_a).residual < 1e-9
        assert decompose_state(fam.state, fam, part_b).residual < 1e-9

    @pytest.mark.parametrize("n", range(6, 15))
    def test_residual_matches_orthonormal_projection(self, n):
        # partitions are cliques, so their vectors are orthonormal
        fam = build_measurements(n)
        part_a, _ = family_partitions(n)
        state = normalize(np.arange(1, fam.d + 1) + 0.5j)
        captured = sum(abs(np.vdot(fam.vector(i), state)) ** 2 for i in part_a)
        expected = np.sqrt(max(0.0, 1.0 - captured))
        assert decompose_state(state, fam, part_a).residual == pytest.approx(expected, abs=1e-9)

    def test_orthogonal_state_has_zero_coefficient(self, family7):
        state = normalize(np.array([1, 0, 1, 0, 0], dtype=float))
        assert abs(np.vdot(family7.vector(1), state)) < 1e-15
        dec = decompose_state(state, family7, [1])
        assert abs(dec.coefficients[0]) < 1e-12
        assert dec.residual == pytest.approx(1.0)

    def test_empty_subset(self, family7):
        with pytest.raises(PreconditionError):
            decompose_state(family7.state, family7, [])


class TestMeasurementFamily:

    def test_rejects_unnormalized(self, family7):
        with pytest.raises(PreconditionError):
            family7.with_vector(3, np.ones(5))

    def test_rejects_wrong_dimension(self, family7):
        with pytest.raises(DimensionMismatchError):
            family7.with_state(np.array([1.0, 0.0]))

    def test_unknown_vertex(self, family7):
        with pytest.raises(PreconditionError):
            family7.vector(8)

    def test_from_dict_reports_format_errors(self):
        with pytest.raises(InputFormatError):
            MeasurementFamily.from_dict({"n": 6, "d": 4})
        with pytest.raises(InputFormatError):
            MeasurementFamily.from_dict({"n": 1, "d": 2, "state": [[1, 0], [0, 0]], "vectors": {"1": [1, 0]}})
