from fractions import Fraction

import pytest

from nhw.conventions import Convention
from nhw.daha import (SHContext, build_generators, check_heisenberg, check_relations,
                      check_vacuum_and_cyclicity, compute_E, derive_higher_generators, g_series,
                      heisenberg_modes, lowering_sign)
from nhw.errors import CapExceeded, ContractViolation
from nhw.exact_algebra import RF_ONE, X, Y, RatFun
from nhw.hecke import commutator, g0_direct
from nhw.partitions import MultiPartition

ALL = ("diagonal", "cubic", "raise-lower", "serre")


def failing_relations(conv, r=1, cap=5):
    rep = check_relations(SHContext(r, cap, conv), ALL, sha_max=2, shc_max=3)
    return sorted({v["relation"] for v in rep["violations"]})


class TestContext:
    def test_parameters(self):
        ctx = SHContext(3, 4)
        assert ctx.kappa == -Y / X
        assert ctx.central(0) == RatFun.const(3)
        xi = RF_ONE + Y / X
        assert ctx.central(2) == xi ** 2 + (xi * 2) ** 2

    def test_validation(self):
        with pytest.raises(ContractViolation):
            SHContext(0, 3)
        with pytest.raises(ContractViolation):
            SHContext(1, 0)


class TestSeries:
    def test_log_branch(self):
        a = RatFun.const(2)
        series = g_series(0, a, 4)
        assert [c.evaluate({}) for c in series.coeffs] == [0, -2, 2, Fraction(-8, 3)]

    def test_power_branch(self):
        # G_1(1 + s) = 1/(1 + s) - 1
        series = g_series(1, RF_ONE, 5)
        assert [c.evaluate({}) for c in series.coeffs] == [0, -1, 1, -1, 1]


class TestGenerators:
    def test_keys(self):
        gens = build_generators(SHContext(2, 3), 2)
        assert set(gens) == {(1, 0), (1, 1), (1, 2), (-1, 0), (-1, 1), (-1, 2), (0, 1), (0, 2)}

    def test_normalisations(self):
        ctx = SHContext(1, 3)
        gens = build_generators(ctx, 2)
        assert gens[(1, 0)] == g0_direct(1, 0, 3, 1).scale(X * Y)
        assert gens[(0, 1)] == g0_direct(0, 0, 3, 1)
        assert gens[(-1, 2)] == g0_direct(-1, 2, 3, 1).scale(X ** -2 * lowering_sign(ctx))
        assert lowering_sign(ctx) == -1 and lowering_sign(SHContext(2, 3)) == 1

    def test_higher_generators(self):
        gens = build_generators(SHContext(2, 4), 1)
        higher = derive_higher_generators(gens, 3)
        assert higher[(3, 0)].shift == 3 and higher[(-3, 0)].shift == -3
        assert higher[(2, 0)] == commutator(gens[(1, 1)], gens[(1, 0)])
        with pytest.raises(CapExceeded):
            derive_higher_generators(gens, 5)

    def test_diagonal_generators_commute_with_each_other(self):
        gens = build_generators(SHContext(3, 3), 3)
        for l in (1, 2, 3):
            for k in (1, 2, 3):
                assert not any(commutator(gens[(0, l)], gens[(0, k)]).nonzero_entries(n)
                               for n in range(4))

    def test_E_zero_matches_the_first_commutator(self):
        ctx = SHContext(2, 4)
        gens = build_generators(ctx, 3)
        E = compute_E(ctx, gens, 1)
        assert commutator(gens[(-1, 0)], gens[(1, 0)]) == E[0].restrict(range(4))


class TestRelations:
    @pytest.mark.parametrize("r", [1, 2])
    def test_all_relations_hold(self, r):
        rep = check_relations(SHContext(r, 5), ALL, sha_max=2, shc_max=3)
        assert rep["checked"] > 20 and not rep["violations"]
        first = rep["results"][0]
        assert {"relation", "r", "N", "window", "status", "residuals"} <= set(first)

    def test_rank_three_without_raise_lower(self):
        rep = check_relations(SHContext(3, 5), ("diagonal", "cubic", "serre"), sha_max=2)
        assert not rep["violations"]

    def test_unknown_suite(self):
        with pytest.raises(ContractViolation):
            check_relations(SHContext(1, 3), ["jacobi"])

    def test_small_cap_is_an_error_not_a_violation(self):
        with pytest.raises(CapExceeded):
            check_relations(SHContext(1, 2), ["serre"])

    @pytest.mark.parametrize("change,broken", [
        ({"shb_variant": "raising-square"}, ["cubic-lowering"]),
        ({"lowering_sign_shift": 1}, ["raise-lower"]),
        ({"varphi_sign": 1}, ["raise-lower"]),
        ({"content_sign": 1}, ["cubic-lowering", "cubic-raising", "raise-lower"]),
    ])
    def test_each_alternative_choice_breaks_a_relation(self, change, broken):
        assert failing_relations(Convention(**change)) == broken


class TestHeisenberg:
    @pytest.mark.parametrize("r", [1, 2])
    def test_commutators(self, r):
        rep = check_heisenberg(SHContext(r, 5), 2)
        assert rep["checked"] == 6 and not rep["violations"]

    def test_central_value(self):
        ctx = SHContext(2, 4)
        lower, raise_ = heisenberg_modes(ctx, derive_higher_generators(build_generators(ctx, 1), 1), 1)
        comm = commutator(lower[1], raise_[1])
        expected = ctx.kappa.inverse() * 2
        for n in comm.levels:
            for row, col, v in comm.nonzero_entries(n):
                assert row == col and v == expected

    def test_inverse_power_normalisation_fails(self):
        rep = check_heisenberg(SHContext(1, 5, Convention(heisenberg="inverse-powers")), 2)
        assert rep["violations"]


class TestVacuum:
    def test_exact(self):
        rep = check_vacuum_and_cyclicity(SHContext(2, 5), 3)
        assert not rep["violations"]
        assert rep["ranks"] == rep["dims"] == [1, 3, 5]

    def test_evaluation_agrees_with_exact(self):
        ctx = SHContext(3, 5)
        exact = check_vacuum_and_cyclicity(ctx, 3)
        sampled = check_vacuum_and_cyclicity(ctx, 3, method="evaluation", seed=7)
        assert exact["ranks"] == sampled["ranks"] and not sampled["violations"]

    def test_level_bound(self):
        with pytest.raises(ContractViolation):
            check_vacuum_and_cyclicity(SHContext(1, 3), 3)

    def test_vacuum_is_the_empty_tuple(self):
        assert list(SHContext(3, 2).basis.level(0)) == [MultiPartition([(), (), ()])]
