from fractions import Fraction

import pytest
import sympy
from hypothesis import given

import oracles
from nhw.conventions import Convention
from nhw.errors import ContractViolation
from nhw.partitions import (MultiPartition, Partition, arm, central_charge, covers,
                            enumerate_multipartitions, is_nested, leg, macmahon_series,
                            nested_count_series, partitions_of, phi0, phi0_is_injective)
from strategies import multipartitions, partitions

SHIFTED = Convention(arm_leg_offset=-1)


def mp(*parts):
    return MultiPartition(parts)


class TestPartition:
    def test_validation(self):
        with pytest.raises(ContractViolation):
            Partition((1, 2))
        with pytest.raises(ContractViolation):
            Partition((2, 0))

    def test_arm_and_leg(self):
        nu = Partition((2, 1))
        assert (leg(nu, (1, 1)), arm(nu, (1, 1))) == (1, 1)
        assert (leg(Partition(), (1, 1)), arm(Partition(), (1, 1))) == (-1, -1)
        assert (leg(nu, (1, 1), SHIFTED), arm(nu, (1, 1), SHIFTED)) == (0, 0)

    def test_box_coordinates_must_be_positive(self):
        with pytest.raises(ContractViolation):
            leg(Partition((1,)), (0, 1))

    @given(partitions())
    def test_transpose_is_an_involution(self, nu):
        assert nu.transpose().transpose() == nu
        assert nu.transpose().size == nu.size

    @given(partitions())
    def test_hooks_are_positive_inside(self, nu):
        for s in nu.boxes():
            assert arm(nu, s) >= 0 and leg(nu, s) >= 0
            assert s in nu

    @given(partitions())
    def test_add_and_remove_boxes(self, nu):
        for i, j in nu.addable_boxes():
            bigger = nu.add_box(i)
            assert bigger.size == nu.size + 1 and (i, j) in bigger and bigger.contains(nu)
            assert bigger.remove_box(i) == nu
        for i, _ in nu.removable_boxes():
            assert nu.remove_box(i).size == nu.size - 1

    def test_partition_counts(self):
        assert [sum(1 for _ in partitions_of(n)) for n in range(13)] == oracles.partition_numbers(12)


class TestMultiPartition:
    def test_nesting(self):
        assert is_nested(mp((2, 1), (1,)))
        assert not is_nested(mp((1,), (2,)))
        assert is_nested(mp((3, 1)))

    def test_covers(self):
        assert covers(mp((), ()), mp((1,), ())) == (1, (1, 1))
        assert covers(mp((1,), ()), mp((1,), (1,))) == (2, (1, 1))
        assert covers(mp((), ()), mp((1,), (1,))) is None
        with pytest.raises(ContractViolation):
            covers(mp((),), mp((), ()))

    def test_enumeration_examples(self):
        got = enumerate_multipartitions(2, 2, nested_only=True)
        assert got == [mp((2,), ()), mp((1, 1), ()), mp((1,), (1,))]
        assert len(enumerate_multipartitions(3, 3, nested_only=True)) == 6
        assert len(enumerate_multipartitions(1, 4)) == 5
        assert enumerate_multipartitions(3, 0) == [mp((), (), ())]

    @pytest.mark.parametrize("r,n", [(1, 5), (2, 4), (3, 3)])
    def test_enumeration_matches_brute_force(self, r, n):
        ours = enumerate_multipartitions(r, n)
        theirs = {tuple(tuple(p) for p in mu) for mu in oracles.tuples_of_partitions(r, n)}
        assert len(ours) == len(set(ours)) == len(theirs)
        assert {tuple(tuple(p) for p in mu) for mu in ours} == theirs
        nested = enumerate_multipartitions(r, n, nested_only=True)
        assert {tuple(tuple(p) for p in mu) for mu in nested} == {m for m in theirs if oracles.is_chain(m)}

    def test_enumeration_is_deterministic(self):
        assert enumerate_multipartitions(3, 4) == enumerate_multipartitions(3, 4)

    @given(multipartitions())
    def test_json_round_trip(self, mu):
        assert MultiPartition.from_json(mu.to_json()) == mu

    def test_json_shape(self):
        assert mp((2, 1), (1,)).to_json() == {"r": 2, "parts": [[2, 1], [1]]}
        with pytest.raises(ContractViolation):
            MultiPartition.from_json({"r": 3, "parts": [[1]]})


class TestPhi0:
    def test_examples(self):
        assert sorted(phi0(mp((1,), (1,)))) == [(-1, -1), (0, 0)]
        assert phi0(mp((), (), ())) == ()
        assert sorted(phi0(mp((2,), ()))) == [(0, 0), (0, 1)]

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_injective_small(self, r):
        for n in range(6):
            ok, collisions = phi0_is_injective(r, n)
            assert ok and not collisions


class TestSeries:
    def test_examples(self):
        assert nested_count_series(2, 4) == [1, 1, 3, 5, 10]
        assert nested_count_series(1, 5) == [1, 1, 2, 3, 5, 7]
        assert macmahon_series(2, 4) == [1, 1, 3, 5, 10]
        assert macmahon_series(1, 5) == [1, 1, 2, 3, 5, 7]
        assert all(nested_count_series(r, 0) == [1] for r in range(1, 5))

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_against_independent_oracles(self, r):
        order = 7
        brute = [oracles.brute_plane_partitions(n, r) for n in range(order + 1)]
        assert nested_count_series(r, order) == brute
        assert macmahon_series(r, order) == oracles.bounded_macmahon(r, order)

    def test_large_rank_gives_all_plane_partitions(self):
        assert macmahon_series(10, 8) == [1, 1, 3, 6, 13, 24, 48, 86, 160]


class TestCentralCharge:
    def test_examples(self):
        assert central_charge(1, 5) == 0
        assert central_charge(2, -1) == 1
        assert central_charge(2, 2) == Fraction(-25, 2)

    def test_critical_level(self):
        with pytest.raises(ContractViolation):
            central_charge(3, -3)

    def test_symbolic(self):
        k = sympy.Symbol("k")
        c = central_charge(2, k)
        assert sympy.simplify(c.subs(k, 2) - sympy.Rational(-25, 2)) == 0
