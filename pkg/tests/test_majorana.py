import math

import numpy as np
import pytest

from src.construction import MeasurementFamily, basis_vector, build_measurements, family_state
from src.errors import DimensionMismatchError, InputFormatError, PreconditionError
from src.majorana import (
    Constellation, StarPoint, angular_distance, constellation, constellations_match,
    family_constellations, flip_constellation, flip_symmetry_report, majorana_polynomial,
    match_constellations, polynomial_roots, reconstruct_state,
)

SQRT2 = math.sqrt(2)


def fidelity(a, b) -> float:
    return float(abs(np.vdot(a, b)))


class TestPolynomial:

    def test_basis_state(self):
        np.testing.assert_allclose(majorana_polynomial(basis_vector(5, 0)), [1, 0, 0, 0, 0])

    def test_qubit(self):
        np.testing.assert_allclose(majorana_polynomial(np.array([1, 1]) / SQRT2), [1 / SQRT2, 1 / SQRT2])

    def test_binomial_weights(self):
        np.testing.assert_allclose(majorana_polynomial(np.array([1, 0, 1]) / SQRT2),
                                   [1 / SQRT2, 0, 1 / SQRT2], atol=1e-15)
        np.testing.assert_allclose(majorana_polynomial(np.ones(4) / 2), [0.5, np.sqrt(3) / 2, np.sqrt(3) / 2, 0.5])

    def test_rejects_d1(self):
        with pytest.raises(PreconditionError):
            majorana_polynomial(np.array([1.0]))


class TestRoots:

    def test_linear(self):
        found = polynomial_roots([-2, 1])
        np.testing.assert_allclose(found.roots, [2])
        assert found.deficiency == 0

    def test_constant_is_all_deficiency(self):
        found = polynomial_roots([1, 0, 0, 0, 0])
        assert found.roots.size == 0
        assert found.deficiency == 4

    def test_monomial_gives_zero_roots(self):
        found = polynomial_roots([0, 0, 0, 0, 1])
        np.testing.assert_array_equal(found.roots, np.zeros(4))
        assert found.deficiency == 0

    def test_cubic(self):
        found = polynomial_roots(np.poly([1.0, -2.0, 3j])[::-1])
        assert sorted(found.roots, key=lambda r: (r.real, r.imag)) == pytest.approx([-2.0, 3j, 1.0], abs=1e-10)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_repeated_root_collapses_to_one_value(self, k):
        found = polynomial_roots(np.poly([0.5] * k)[::-1])
        np.testing.assert_allclose(found.roots, [0.5] * k, atol=1e-9)
        assert np.unique(found.roots).size == 1

    def test_close_distinct_roots_stay_apart(self):
        found = polynomial_roots(np.poly([1.0, 1.001, -2.0])[::-1])
        assert sorted(found.roots.real) == pytest.approx([-2.0, 1.0, 1.001], abs=1e-9)

    def test_all_zero(self):
        with pytest.raises(PreconditionError):
            polynomial_roots([0, 0, 0])


class TestConstellation:

    def test_basis_zero_sits_on_the_south_pole(self):
        c = constellation(basis_vector(5, 0))
        assert c.points == ()
        assert c.south_pole_count == 4

    def test_last_basis_state_sits_on_the_north_pole(self):
        c = constellation(basis_vector(5, 4))
        assert c.south_pole_count == 0
        assert c.points == (StarPoint(0.0, 0.0, 4),)

    def test_qubit_plus_points_along_minus_x(self):
        c = constellation(np.array([1, 1]) / SQRT2)
        (p,) = c.points
        assert p.theta == pytest.approx(math.pi / 2)
        assert p.phi == pytest.approx(math.pi)
        np.testing.assert_allclose(p.cartesian, [-1, 0, 0], atol=1e-12)

    def test_point_count(self, family7):
        for _, c in family_constellations(family7):
            assert sum(p.mult for p in c.points) + c.south_pole_count == 4

    def test_family_panels(self, family8):
        panels = family_constellations(family8)
        assert [label for label, _ in panels] == ["psi"] + [f"v{i}" for i in range(1, 9)]

    def test_v2_of_n7_has_four_south_pole_points(self, family7):
        assert constellation(family7.vector(2)).south_pole_count == 4

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_repeated_root_is_one_point(self, k):
        # (alpha - 1)^k: one k-fold point on the equator
        state = reconstruct_state(Constellation(d=k + 1, points=(StarPoint(math.pi / 2, 0.0, k),)))
        c = constellation(state)
        assert [p.mult for p in c.points] == [k]
        assert c.south_pole_count == 0
        assert c.points[0].theta == pytest.approx(math.pi / 2, abs=1e-9)
        assert fidelity(reconstruct_state(c), state) >= 1 - 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(PreconditionError):
            constellation(np.array([1.0, 1.0]))

    def test_invariants_are_checked(self):
        with pytest.raises(DimensionMismatchError):
            Constellation(d=3, points=(StarPoint(1.0, 0.0),))
        with pytest.raises(PreconditionError):
            Constellation(d=2, points=(StarPoint(float("nan"), 0.0),))

    def test_dict_round_trip(self):
        c = constellation(basis_vector(3, 0))
        doc = c.to_dict()
        assert doc["points"] == [{"theta": math.pi, "phi": 0.0, "mult": 2}]
        assert Constellation.from_dict(doc) == c

    def test_from_dict_rejects_garbage(self):
        with pytest.raises(InputFormatError):
            Constellation.from_dict({"points": []})


class TestReconstruct:

    def test_basis_zero(self):
        again = reconstruct_state(constellation(basis_vector(5, 0)))
        assert fidelity(again, basis_vector(5, 0)) == pytest.approx(1.0, abs=1e-12)

    def test_single_north_pole(self):
        again = reconstruct_state(Constellation(d=2, points=(StarPoint(0.0, 0.0),)))
        np.testing.assert_allclose(again, [0, 1], atol=1e-15)

    def test_family_state(self):
        psi = family_state(7)
        assert fidelity(reconstruct_state(constellation(psi)), psi) >= 1 - 1e-8

    def test_first_amplitude_is_real_positive(self):
        again = reconstruct_state(constellation(np.array([1j, 1, 0]) / SQRT2))
        assert again[0].imag == pytest.approx(0.0, abs=1e-15)
        assert again[0].real > 0

    @pytest.mark.parametrize("d", range(2, 11))
    def test_random_round_trip(self, d):
        rng = np.random.default_rng(1000 + d)
        for _ in range(100):
            state = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            state /= np.linalg.norm(state)
            assert fidelity(reconstruct_state(constellation(state)), state) >= 1 - 1e-8


class TestFlip:

    def test_flip_swaps_poles(self):
        flipped = flip_constellation(constellation(basis_vector(5, 0)))
        assert flipped.south_pole_count == 0
        assert flipped.points == (StarPoint(0.0, 0.0, 4),)
        assert flipped == constellation(basis_vector(5, 4))

    def test_flip_is_an_involution(self, family7):
        c = constellation(family7.vector(3))
        assert constellations_match(flip_constellation(flip_constellation(c)), c, 1e-12)

    def test_matching_counts_must_agree(self):
        with pytest.raises(DimensionMismatchError):
            match_constellations(constellation(basis_vector(2, 0)), constellation(basis_vector(3, 0)))

    def test_matching_distance(self):
        a = Constellation(d=2, points=(StarPoint(math.pi / 2, 0.0),))
        b = Constellation(d=2, points=(StarPoint(math.pi / 2, math.pi / 2),))
        assert match_constellations(a, b).worst == pytest.approx(math.pi / 2)
        assert angular_distance(a.points[0], b.points[0]) == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize("n", range(6, 15))
    def test_family_is_flip_symmetric(self, n):
        report = flip_symmetry_report(build_measurements(n), 1e-6)
        assert report.passed, report.to_dict()
        labels = [c.label for c in report.checks]
        assert labels[:2] == ["psi", "v1"]
        assert f"v2->v{n}" in labels

    def test_needs_a_constructed_family(self, umbrella):
        with pytest.raises(PreconditionError):
            flip_symmetry_report(umbrella)
        square = MeasurementFamily(n=7, d=7, vectors={i: basis_vector(7, i - 1) for i in range(1, 8)},
                                   state=basis_vector(7, 0))
        with pytest.raises(PreconditionError):
            flip_symmetry_report(square)

    def test_broken_partner_is_reported(self, family7):
        broken = family7.with_vector(7, family7.vector(6))
        report = flip_symmetry_report(broken, 1e-6)
        assert not report.passed
        assert [c.label for c in report.checks if not c.passed] == ["v2->v7"]
