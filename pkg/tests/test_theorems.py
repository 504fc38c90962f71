"""Theorem verifiers: spectral gap, the inequality suite, and the product law."""

import math
from fractions import Fraction

import numpy as np
import pytest

from eqcurv import (
    CurvatureStatus,
    apsp,
    cartesian_product,
    check_bonnet_myers,
    check_lichnerowicz,
    check_minimax,
    check_product_curvature,
    check_reverse_bonnet_myers,
    check_theorem5,
    compute_curvature,
    curvature_of_family,
    generate,
    parse_family_spec,
    perron_alignment,
    simplex_measures,
    spectral_criterion,
    spectral_gap,
)


def fam(text):
    return generate(parse_family_spec(text))


def analyzed(text):
    g = fam(text)
    dm = apsp(g)
    return g, dm, compute_curvature(g, dm), spectral_gap(g, dm)


class TestSpectralGap:
    def test_cycle6_gap(self):
        info = spectral_gap(fam("cycle:6"))
        assert abs(info.lambda1 - 4 * math.sin(math.pi / 6) ** 2) <= 1e-8
        assert abs(info.lambda1 - 1.0) <= 1e-8

    def test_complete4_gap(self):
        assert abs(spectral_gap(fam("complete:4")).lambda1 - 4.0) <= 1e-9

    def test_p2_gap(self):
        assert abs(spectral_gap(fam("path:2")).lambda1 - 2.0) <= 1e-12

    def test_smallest_laplacian_eigenvalue_is_zero(self):
        for text in ("cycle:7", "path:6", "erdos_renyi:10,0.5,3"):
            info = spectral_gap(fam(text))
            assert abs(info.laplacian_spectrum[0]) <= 1e-8
            assert info.lambda1 > 0

    def test_perron_data_for_complete_graph(self):
        info = spectral_gap(fam("complete:6"))
        assert abs(info.c_G - 1.0) <= 1e-12
        assert min(info.perron_vector) > 0

    def test_circulant_has_constant_perron_vector(self):
        info = spectral_gap(fam("cycle:8"))
        assert abs(info.c_G - 1.0) <= 1e-9

    def test_p5_alignment_in_range_and_matches_lapack(self):
        g = fam("path:5")
        info = spectral_gap(g)
        d = apsp(g).entries.astype(float)
        lam, vec = np.linalg.eigh(d)
        v = vec[:, -1]
        if v.sum() < 0:
            v = -v
        ref = v.sum() / (np.linalg.norm(v) * math.sqrt(5))
        assert abs(info.c_G - ref) <= 1e-9
        assert 1 / math.sqrt(2) <= info.c_G <= 1.0

    def test_distance_spectrum_descending(self):
        info = spectral_gap(fam("erdos_renyi:9,0.5,1"))
        assert list(info.distance_spectrum) == sorted(info.distance_spectrum, reverse=True)

    def test_single_vertex_rejected(self):
        with pytest.raises(ValueError, match="two vertices"):
            spectral_gap(fam("path:1"))


class TestBonnetMyers:
    def test_q4_equality_and_rigidity(self):
        g, dm, result, _ = analyzed("hypercube:4")
        report = check_bonnet_myers(g, result, dm)
        assert report.hypothesis_satisfied and report.passed
        assert any("diam * K == 2" in n for n in report.notes)
        # rigidity check entry is present and holds
        assert any("constant curvature" in c.label and c.holds for c in report.checks)

    def test_complete5(self):
        g, dm, result, _ = analyzed("complete:5")
        report = check_bonnet_myers(g, result, dm)
        assert report.passed
        # diam = 1 <= 2/(5/4) = 8/5
        first = report.checks[0]
        assert first.lhs.value == 1.0 and first.rhs.exact == "8/5"

    def test_cycle7_closed_forms(self):
        g, dm, result, _ = analyzed("cycle:7")
        assert result.K == Fraction(7, 12)
        report = check_bonnet_myers(g, result, dm)
        assert report.passed
        assert dm.diameter() == 3
        assert Fraction(2) / result.K == Fraction(24, 7)

    def test_zero_curvature_path_hypothesis_met_but_no_rigidity(self):
        g, dm, result, _ = analyzed("path:3")
        report = check_bonnet_myers(g, result, dm)
        assert report.hypothesis_satisfied and report.passed
        assert any("2/K bound is vacuous" in n for n in report.notes)

    def test_inconsistent_graph_not_applicable(self):
        g, dm, result, _ = analyzed("complete_multipartite:1,1,1,4")
        report = check_bonnet_myers(g, result, dm)
        assert not report.hypothesis_satisfied
        assert report.passed and not report.failed


class TestReverseBonnetMyers:
    def test_complete5_equality_detects_completeness(self):
        g, dm, result, _ = analyzed("complete:5")
        report = check_reverse_bonnet_myers(g, result, dm)
        assert report.passed
        assert result.total == Fraction(25, 4)
        assert any("complete" in n for n in report.notes)

    def test_cycle6(self):
        g, dm, result, _ = analyzed("cycle:6")
        report = check_reverse_bonnet_myers(g, result, dm)
        assert report.passed
        assert result.total == 4
        assert report.checks[0].rhs.exact == str(Fraction(36, 5 * 3))

    def test_q3(self):
        g, dm, result, _ = analyzed("hypercube:3")
        report = check_reverse_bonnet_myers(g, result, dm)
        assert report.passed
        assert result.total == Fraction(16, 3)
        assert report.checks[0].rhs.exact == str(Fraction(64, 21))


class TestLichnerowicz:
    def test_cycle12_sharpness_values(self):
        g, dm, result, info = analyzed("cycle:12")
        report = check_lichnerowicz(g, result, info, dm)
        assert report.passed
        expected_gap = 4 * math.sin(math.pi / 12) ** 2
        assert abs(info.lambda1 - expected_gap) <= 1e-8
        assert result.K / (2 * 12) == Fraction(1, 72)

    def test_complete3(self):
        g, dm, result, info = analyzed("complete:3")
        report = check_lichnerowicz(g, result, info, dm)
        assert report.passed
        assert result.K / (2 * 3) == Fraction(1, 4)
        assert abs(info.lambda1 - 3.0) <= 1e-9

    def test_q3_hypercube_gap_is_two(self):
        g, dm, result, info = analyzed("hypercube:3")
        report = check_lichnerowicz(g, result, info, dm)
        assert report.passed
        assert abs(info.lambda1 - 2.0) <= 1e-8
        assert result.total / (2 * 64) == Fraction(1, 24)

    def test_path_hypothesis_unmet(self):
        g, dm, result, info = analyzed("path:4")
        report = check_lichnerowicz(g, result, info, dm)
        assert not report.hypothesis_satisfied
        assert not report.failed


class TestMinimax:
    def test_cycle6_uniform_measure_is_flat(self):
        g, dm, result, _ = analyzed("cycle:6")
        report = check_minimax(g, result, dm=dm)
        assert report.passed
        alpha = Fraction(6) / result.total
        assert alpha == Fraction(3, 2)
        uniform_checks = [c for c in report.checks if c.label.startswith("uniform")]
        assert all(c.holds for c in uniform_checks)
        # constant row sums: both uniform sides equal alpha
        assert uniform_checks[0].lhs.exact == "3/2"
        assert uniform_checks[1].rhs.exact == "3/2"

    def test_q3_sharp_measure(self):
        g, dm, result, _ = analyzed("hypercube:3")
        report = check_minimax(g, result, dm=dm)
        assert report.passed
        assert Fraction(8) / result.total == Fraction(3, 2)
        sharp = [c for c in report.checks if c.label.startswith("nu*")]
        assert len(sharp) == 2 and all(c.holds for c in sharp)

    def test_point_mass_min_side_zero(self):
        g, dm, result, _ = analyzed("complete:4")
        report = check_minimax(g, result, dm=dm)
        zero_check = next(c for c in report.checks if "0 <= alpha" in c.label)
        assert zero_check.holds

    def test_explicit_measures_and_validation(self):
        g, dm, result, _ = analyzed("cycle:5")
        good = [np.full(5, 0.2)]
        assert check_minimax(g, result, measures=good, dm=dm).passed
        with pytest.raises(ValueError, match="sum to 1"):
            check_minimax(g, result, measures=[np.full(5, 0.3)], dm=dm)
        with pytest.raises(ValueError, match="negative"):
            check_minimax(g, result, measures=[np.array([1.5, -0.5, 0, 0, 0])], dm=dm)

    def test_wrong_length_measure(self):
        g, dm, result, _ = analyzed("cycle:5")
        with pytest.raises(ValueError, match="length"):
            check_minimax(g, result, measures=[np.full(4, 0.25)], dm=dm)

    def test_simplex_measures_deterministic(self):
        a = simplex_measures(6, 5, seed=3)
        b = simplex_measures(6, 5, seed=3)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        for nu in a:
            assert abs(nu.sum() - 1.0) <= 1e-12 and nu.min() >= 0

    def test_random_battery_on_sample_graphs(self):
        for text in ("erdos_renyi:9,0.5,7", "johnson:5,2", "cocktail_party:3"):
            g, dm, result, _ = analyzed(text)
            report = check_minimax(g, result, seed=11, n_random=50, dm=dm)
            assert report.hypothesis_satisfied, text
            assert report.passed, text
            assert report.seed == 11

    def test_negative_curvature_not_applicable(self):
        g, dm, result, _ = analyzed("erdos_renyi:9,0.4,5")
        assert result.K < 0
        report = check_minimax(g, result, dm=dm)
        assert not report.hypothesis_satisfied and not report.failed

    def test_uniform_measure_is_flat_on_constant_curvature_graphs(self):
        # constant row sums R make every entry of D(uniform) equal R/n, which
        # must coincide with the game value n/||w||_1
        for text in ("cycle:7", "hypercube:3", "johnson:6,2", "cocktail_party:4"):
            g, dm, result, _ = analyzed(text)
            report = check_minimax(g, result, dm=dm)
            uniform = [c for c in report.checks if c.label.startswith("uniform")]
            alpha = Fraction(g.n) / result.total
            assert Fraction(uniform[0].lhs.exact) == alpha, text
            assert Fraction(uniform[1].rhs.exact) == alpha, text


class TestTheorem5:
    def test_exact_solution_weights_reduce_to_8_over_k(self):
        g, dm, result, info = analyzed("cycle:6")
        report = check_theorem5(g, result.w, info, dm)
        assert report.passed
        # ||Dw||_inf == n, so the bound is diam <= 8/K: 3 <= 12
        diam_check = report.checks[0]
        assert diam_check.lhs.value == 3.0
        assert diam_check.rhs.exact == "12"

    def test_all_ones_on_cycle8(self):
        g, dm, result, info = analyzed("cycle:8")
        report = check_theorem5(g, [1] * 8, info, dm)
        assert report.passed
        # K = 1, ||Dw||_inf = max row sum = floor(64/4) = 16
        assert report.checks[0].rhs.exact == str(Fraction(16, 8) * 8)

    def test_pseudo_solution_on_exceptional_graph(self):
        g, dm, result, info = analyzed("complete_multipartite:1,1,1,4")
        assert result.status is CurvatureStatus.INCONSISTENT
        w = result.w
        assert w.min() > 0  # entries within [0.65, 0.99]
        report = check_theorem5(g, w, info, dm)
        assert report.passed
        assert not report.checks[0].exact_arithmetic

    def test_nonpositive_entry_rejected(self):
        g, dm, result, info = analyzed("cycle:5")
        with pytest.raises(ValueError, match="positive"):
            check_theorem5(g, [1, 1, 0, 1, 1], info, dm)
        with pytest.raises(ValueError, match="positive"):
            check_theorem5(g, [1.0, 1.0, -0.5, 1.0, 1.0], info, dm)


class TestSpectralCriterion:
    def test_complete3_predicts_solvable(self):
        g, dm, result, info = analyzed("complete:3")
        # spectrum (2, -1, -1), v = 1/sqrt(3): lhs 0 < rhs 1/3
        assert np.allclose(info.distance_spectrum, [2.0, -1.0, -1.0], atol=1e-9)
        report = spectral_criterion(info, result.status)
        assert report.hypothesis_satisfied
        assert report.checks[0].holds  # criterion true
        assert report.passed  # and sound

    def test_cycle6_no_contradiction(self):
        g, dm, result, info = analyzed("cycle:6")
        report = spectral_criterion(info, result.status)
        assert report.passed

    def test_lambda2_positive_not_applicable(self):
        # K_{3,3}: distance spectrum has a second positive eigenvalue (+1)
        g, dm, result, info = analyzed("complete_multipartite:3,3")
        assert info.distance_spectrum[1] > 1e-6
        report = spectral_criterion(info, result.status)
        assert not report.hypothesis_satisfied
        assert not report.failed

    def test_sound_on_exceptional_graphs(self):
        for text in (
            "complete_multipartite:1,1,1,4",
            "complete_multipartite:1,1,1,1,3",
            "knight:7,7",
        ):
            g, dm, result, info = analyzed(text)
            assert result.status is CurvatureStatus.INCONSISTENT
            report = spectral_criterion(info, result.status)
            assert report.passed, text  # never predicts solvable for these


class TestPerronAlignment:
    def test_complete_graph_alignment_is_one(self):
        info = spectral_gap(fam("complete:7"))
        report = perron_alignment(info)
        assert report.passed
        assert abs(info.c_G - 1.0) <= 1e-12

    def test_alignment_bound_on_samples(self):
        for text in ("path:9", "erdos_renyi:12,0.3,2", "knight:4,4"):
            report = perron_alignment(spectral_gap(fam(text)))
            assert report.passed, text


class TestProductCurvature:
    def test_c4_times_c4(self):
        report = check_product_curvature(fam("cycle:4"), fam("cycle:4"))
        assert report.hypothesis_satisfied and report.passed
        harmonic = next(c for c in report.checks if "1/K" in c.label)
        assert harmonic.lhs.exact == "2"  # K = 1/2

    def test_q2_times_q2_matches_q4_closed_form(self):
        report = check_product_curvature(fam("hypercube:2"), fam("hypercube:2"))
        assert report.passed
        product = cartesian_product(fam("hypercube:2"), fam("hypercube:2"))
        r = compute_curvature(product)
        assert set(r.w) == {curvature_of_family(parse_family_spec("hypercube:4"))}

    def test_k2_times_k2_is_c4_curvature_one(self):
        report = check_product_curvature(fam("complete:2"), fam("complete:2"))
        assert report.passed
        harmonic = next(c for c in report.checks if "1/K" in c.label)
        assert harmonic.lhs.exact == "1"
        assert curvature_of_family(parse_family_spec("cycle:4")) == 1

    def test_non_constant_factor_not_applicable(self):
        report = check_product_curvature(fam("path:3"), fam("cycle:4"))
        assert not report.hypothesis_satisfied
        assert not report.failed

    @pytest.mark.parametrize("text,expected", [("complete:3", Fraction(1, 2)), ("cycle:4", Fraction(1, 3))])
    def test_cube_power_divides_curvature_by_three(self, text, expected):
        g = fam(text)
        cubed = cartesian_product(cartesian_product(g, g), g)
        r = compute_curvature(cubed)
        assert r.is_exact
        assert set(r.w) == {expected}
        base = curvature_of_family(parse_family_spec(text))
        assert expected == base / 3
