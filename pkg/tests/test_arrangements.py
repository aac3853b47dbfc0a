import math

import pytest
from hypothesis import given, strategies as st

from multiport.arrangements import (
    canonical_classical,
    canonical_quantum,
    count_arrangements,
    dihedral_orbit,
    arrangement_from_ports,
    enumerate_arrangements,
    enumerate_classical_classes,
    enumerate_quantum_classes,
    partition_count,
    port_assignment,
    quantum_class_of,
    validate_arrangement,
)
from multiport.errors import InvalidArrangementError, ResourceLimitError


def arrangements(max_n=7):
    """Random valid arrangement: scatter n particles over n ports."""
    return (
        st.integers(min_value=1, max_value=max_n)
        .flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
        .map(lambda hits: tuple(hits.count(j) for j in range(len(hits))))
    )


class TestValidation:
    def test_accepts_valid(self):
        assert validate_arrangement([2, 1, 0, 2, 0]) == (2, 1, 0, 2, 0)

    @pytest.mark.parametrize(
        "bad", [[], [3, 1], [2, 0, 0], [-1, 2], [0, 0, 0]], ids=repr
    )
    def test_rejects_invalid(self, bad):
        with pytest.raises(InvalidArrangementError):
            validate_arrangement(bad)


class TestPortAssignment:
    def test_worked_example(self):
        assert port_assignment((2, 1, 0, 2, 0)) == (1, 1, 2, 4, 4)

    def test_bunching(self):
        assert port_assignment((4, 0, 0, 0)) == (1, 1, 1, 1)

    def test_coincident(self):
        assert port_assignment((1, 1, 1, 1, 1)) == (1, 2, 3, 4, 5)

    def test_rejects_malformed(self):
        with pytest.raises(InvalidArrangementError):
            port_assignment((2, 1))

    @given(arrangements())
    def test_round_trip(self, s):
        d = port_assignment(s)
        assert list(d) == sorted(d)
        assert arrangement_from_ports(d, len(s)) == s


class TestEnumeration:
    @pytest.mark.parametrize("n,total", [(1, 1), (2, 3), (6, 462)])
    def test_counts(self, n, total):
        assert count_arrangements(n) == total
        assert sum(1 for _ in enumerate_arrangements(n)) == total

    @pytest.mark.parametrize("n", range(1, 11))
    def test_count_formula(self, n):
        listed = count_arrangements(n)
        assert listed == math.comb(2 * n - 1, n)
        assert listed == math.factorial(2 * n) // (2 * math.factorial(n) ** 2)

    def test_n2_explicit(self):
        assert list(enumerate_arrangements(2)) == [(2, 0), (1, 1), (0, 2)]

    def test_descending_order_no_duplicates(self):
        seen = list(enumerate_arrangements(5))
        assert seen == sorted(seen, reverse=True)
        assert len(seen) == len(set(seen))
        assert all(sum(s) == 5 and len(s) == 5 for s in seen)

    def test_rejects_zero(self):
        with pytest.raises(InvalidArrangementError):
            next(enumerate_arrangements(0))


class TestClassicalClasses:
    def test_partition_and_member_count(self):
        c = canonical_classical((0, 1, 2, 0, 2, 1))
        assert c.partition == (2, 2, 1, 1, 0, 0)
        # 6! over the multiplicities of the values {2: twice, 1: twice, 0: twice}
        assert c.member_count == math.factorial(6) // (2 * 2 * 2)
        assert c.member_count == 90

    def test_coincident_is_unique(self):
        c = canonical_classical((1, 1, 1, 1))
        assert c.partition == (1, 1, 1, 1)
        assert c.member_count == 1

    @pytest.mark.parametrize("n,expected", [(2, 2), (6, 11), (8, 22)])
    def test_class_counts(self, n, expected):
        assert len(enumerate_classical_classes(n)) == expected
        assert partition_count(n) == expected

    @pytest.mark.parametrize("n", range(2, 15))
    def test_partition_count_matches_census(self, n, census):
        assert partition_count(n) == census[n][1]

    @pytest.mark.parametrize("n", range(2, 8))
    def test_member_counts_cover_everything(self, n):
        classes = enumerate_classical_classes(n)
        assert sum(c.member_count for c in classes) == count_arrangements(n)

    @given(arrangements())
    def test_permutation_invariance(self, s):
        assert canonical_classical(tuple(reversed(s))) == canonical_classical(s)


class TestDihedralOrbits:
    def test_fixed_point(self):
        assert dihedral_orbit((1, 1)) == {(1, 1)}

    def test_period_two(self):
        assert dihedral_orbit((2, 0, 2, 0)) == {(2, 0, 2, 0), (0, 2, 0, 2)}

    def test_singleton_peak(self):
        assert dihedral_orbit((3, 0, 0)) == {(3, 0, 0), (0, 3, 0), (0, 0, 3)}

    @given(arrangements())
    def test_orbit_size_divides_group_order(self, s):
        assert (2 * len(s)) % len(dihedral_orbit(s)) == 0

    @given(arrangements())
    def test_canonical_idempotent_across_orbit(self, s):
        rep = canonical_quantum(s)
        assert all(canonical_quantum(m) == rep for m in dihedral_orbit(s))
        assert rep in dihedral_orbit(s)


class TestQuantumClasses:
    def test_n2(self):
        classes = enumerate_quantum_classes(2)
        assert [(c.representative, c.orbit_size) for c in classes] == [
            ((0, 2), 2),
            ((1, 1), 1),
        ]

    @pytest.mark.parametrize("n", range(2, 9))
    def test_counts_and_coverage(self, n, census):
        classes = enumerate_quantum_classes(n)
        assert len(classes) == census[n][2]
        assert sum(c.orbit_size for c in classes) == count_arrangements(n)

    def test_orbit_size_matches_set(self):
        qc = quantum_class_of((2, 1, 2, 1, 0, 0))
        assert qc.orbit_size == len(dihedral_orbit((2, 1, 2, 1, 0, 0)))

    def test_enumeration_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_quantum_classes(8, max_total=100)
