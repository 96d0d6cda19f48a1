import pytest
from hypothesis import given

import oracles
from nhw.conventions import Convention
from nhw.errors import ContractViolation, ZeroWeight
from nhw.exact_algebra import RF_ONE, RF_ZERO, X, Y, LaurentPoly
from nhw.localization import (CHAR_VARS, TangentChar, WeightDict, c00k,
                              correspondence_tangent_character, euler_class, euler_factors,
                              s1_s2_sets, sigma_part_from_sets, tangent_character,
                              verify_correspondence_points, verify_dimensions, verify_fixed_lemmas,
                              verify_fixed_locus)
from nhw.partitions import MultiPartition, covers, enumerate_multipartitions, is_nested
from strategies import multipartitions


def mp(*parts):
    return MultiPartition(parts)


def as_dict(char: TangentChar):
    return {k: int(v) for k, v in char.char.items()}


def cover_pairs(r, n_max):
    for n in range(n_max):
        for mu in enumerate_multipartitions(r, n):
            for lam in enumerate_multipartitions(r, n + 1):
                if covers(mu, lam) is not None:
                    yield mu, lam


class TestTangentCharacter:
    def test_single_box(self):
        assert str(tangent_character(mp((1,))).char) == "q^-1 + t^-1"

    def test_empty(self):
        assert not tangent_character(mp((), (), ())).char

    @pytest.mark.parametrize("r,n_max", [(1, 6), (2, 6), (3, 6)])
    def test_matches_framed_formula(self, r, n_max):
        for n in range(n_max + 1):
            for mu in enumerate_multipartitions(r, n):
                expected = oracles.specialise(oracles.framed_tangent(tuple(tuple(p) for p in mu)))
                assert as_dict(tangent_character(mu)) == expected, mu

    @given(multipartitions(max_size=4))
    def test_dimension_and_positivity(self, mu):
        char = tangent_character(mu)
        assert char.coefficient_sum() == 2 * mu.r * mu.size
        assert char.is_nonnegative()

    def test_shifted_convention_produces_a_trivial_weight(self):
        char = tangent_character(mp((2,)), Convention(arm_leg_offset=-1))
        assert char.char.coefficient((0, 0, 0)) == 1
        with pytest.raises(ZeroWeight):
            euler_factors(char)


class TestCorrespondenceCharacter:
    def test_first_box(self):
        assert str(correspondence_tangent_character(mp(()), mp((1,))).char) == "q^-1 + t^-1"

    def test_requires_a_cover(self):
        with pytest.raises(ContractViolation):
            correspondence_tangent_character(mp((), ()), mp((1,), (1,)))

    @pytest.mark.parametrize("r,n_max", [(1, 5), (2, 3), (3, 2)])
    def test_matches_framed_formula(self, r, n_max):
        for mu, lam in cover_pairs(r, n_max):
            key = (tuple(tuple(p) for p in mu), tuple(tuple(p) for p in lam))
            expected = oracles.specialise(oracles.framed_correspondence(*key))
            assert as_dict(correspondence_tangent_character(mu, lam)) == expected, key

    def test_dimension(self):
        for mu, lam in cover_pairs(2, 4):
            char = correspondence_tangent_character(mu, lam)
            assert char.coefficient_sum() == 4 * mu.size + 3 and char.is_nonnegative()


class TestSigmaPart:
    def test_nested_points_have_none(self):
        for mu in enumerate_multipartitions(3, 4, nested_only=True):
            assert c00k(tangent_character(mu)) == {}
            assert s1_s2_sets(mu) == (set(), set())

    def test_neighbour_of_the_origin(self):
        lam = mp((), (1,))
        assert c00k(tangent_character(lam)) == {1: 1}
        assert s1_s2_sets(lam) == ({(2, 1, (1, 1))}, set())
        assert sigma_part_from_sets(lam) == {1: 1}

    def test_rank_one_is_trivial(self):
        for mu in enumerate_multipartitions(1, 5):
            assert s1_s2_sets(mu) == (set(), set())

    def test_zero_character(self):
        assert c00k(TangentChar((), LaurentPoly.zero(CHAR_VARS))) == {}

    def test_a_rank_three_cover_pair_without_pure_sigma_weight(self):
        # the larger point adds exactly the box that makes the smaller one non-nested
        mu, lam = mp((), (), (1,)), mp((), (1,), (1,))
        assert not is_nested(mu) and not is_nested(lam)
        char = correspondence_tangent_character(mu, lam)
        assert c00k(char) == {}
        key = (((), (), (1,)), ((), (1,), (1,)))
        assert not any(e[0] == e[1] == 0 for e in oracles.specialise(oracles.framed_correspondence(*key)))


class TestEulerClass:
    def test_single_box(self):
        assert euler_class(tangent_character(mp((1,)))) == X * Y

    def test_negated_dictionary_gives_the_same_two_factor_class(self):
        assert euler_class(tangent_character(mp((1,))), WeightDict.standard(-1)) == X * Y

    def test_empty_product(self):
        assert euler_class(tangent_character(mp(()))) == RF_ONE

    def test_zero_weight(self):
        char = TangentChar((), LaurentPoly.constant(CHAR_VARS))
        with pytest.raises(ZeroWeight):
            euler_factors(char)

    def test_nested_points_survive_the_calabi_yau_specialisation(self):
        weights = WeightDict()
        for r in (1, 2, 3):
            for mu in enumerate_multipartitions(r, 4, nested_only=True):
                char = tangent_character(mu)
                assert all(any(weights.specialized_form(e)) for e, _ in char.char.items())
                assert euler_class(char).substitute("z", -(X + Y)) != RF_ZERO

    def test_factors_are_linear_forms(self):
        factors = euler_factors(tangent_character(mp((1,), (1,))))
        assert sum(factors.values()) == 8
        assert all(len(f) == 3 and any(f) for f in factors)


class TestVerifiers:
    def test_fixed_lemmas_rank_two(self):
        reports = verify_fixed_lemmas(2, 6)
        assert reports and all(not rep["violations"] for rep in reports)
        assert {"lemma", "r", "n_max", "checked", "violations"} <= set(reports[0])

    def test_fixed_locus_rank_one(self):
        assert all(not rep["violations"] for rep in verify_fixed_locus(1, 8))

    def test_fixed_locus_rank_three(self):
        assert all(not rep["violations"] for rep in verify_fixed_locus(3, 5))

    def test_correspondence_rank_two(self):
        assert all(not rep["violations"] for rep in verify_correspondence_points(2, 5))

    def test_correspondence_rank_three_reports_counterexamples(self):
        bad = [v for rep in verify_correspondence_points(3, 2) for v in rep["violations"]]
        assert bad
        assert any(v["mu"] == {"r": 3, "parts": [[], [], [1]]}
                   and v["lambda"] == {"r": 3, "parts": [[], [1], [1]]} for v in bad)

    def test_dimensions(self):
        assert all(not rep["violations"] for rep in verify_dimensions(2, 5, 4))

    def test_dimensions_fail_under_shifted_arms(self):
        reports = verify_dimensions(1, 3, 2, Convention(arm_leg_offset=-1))
        assert any(rep["violations"] for rep in reports)
