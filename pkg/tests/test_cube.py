"""Core types: weights, families, measures, and the file format."""

from fractions import Fraction

import pytest

from biasedcube.cube import (
    InputError,
    PreconditionError,
    SetFamily,
    WeightVector,
    bitstring_to_member,
    complement_family,
    coords_of_mask,
    family_from_text,
    family_measure,
    family_to_text,
    format_rational,
    is_simply_rooted,
    is_union_closed,
    mask_from_coords,
    measure_numerators,
    measure_table,
    member_to_bitstring,
    missing_lower_neighbors,
    parse_rational,
    point_measure,
    set_coordinate,
    subfamily_containing,
)


def members(family):
    return set(family.members())


class TestRationals:
    def test_parse_fraction(self):
        assert parse_rational("2/3") == Fraction(2, 3)

    def test_parse_decimal_is_exact(self):
        assert parse_rational("0.125") == Fraction(1, 8)

    def test_parse_integer(self):
        assert parse_rational("1") == Fraction(1)

    def test_parse_garbage(self):
        with pytest.raises(InputError):
            parse_rational("one half")

    def test_format_roundtrip(self):
        assert format_rational(Fraction(2, 3)) == "2/3"
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(0) == "0"


class TestMasks:
    def test_mask_from_coords(self):
        assert mask_from_coords([1, 3], 3) == 0b101

    def test_coords_of_mask(self):
        assert coords_of_mask(0b101) == (1, 3)

    def test_coords_out_of_range(self):
        with pytest.raises(InputError):
            mask_from_coords([4], 3)

    def test_set_coordinate_clears(self):
        # x={1,2}, i=1, b=0 -> {2}
        assert set_coordinate(0b11, 1, 0, 2) == 0b10

    def test_set_coordinate_sets(self):
        # x=empty, i=3, b=1 -> {3} at d=3
        assert set_coordinate(0b000, 3, 1, 3) == 0b100


class TestWeightVector:
    def test_parse_and_str(self):
        w = WeightVector.parse("2/3,3/4")
        assert w.p == (Fraction(2, 3), Fraction(3, 4))
        assert str(w) == "2/3,3/4"

    def test_uniform(self):
        assert WeightVector.uniform(3).p == (Fraction(1, 2),) * 3

    def test_extremes(self):
        w = WeightVector.parse("2/3")
        assert w.p_min == Fraction(2, 3)
        assert w.q_max == Fraction(1, 3)
        assert w.q == (Fraction(1, 3),)

    def test_alpha_sq(self):
        w = WeightVector.parse("2/3")
        assert w.alpha_sq(1) == Fraction(9, 2)

    def test_boundary_weight_allowed_but_not_interior(self):
        w = WeightVector.parse("0,1")
        assert not w.is_interior
        with pytest.raises(PreconditionError):
            w.require_interior("test")

    def test_out_of_range_rejected(self):
        with pytest.raises(InputError):
            WeightVector.parse("3/2")

    def test_q_reciprocal_product(self):
        w = WeightVector.parse("2/3,3/4")
        assert w.q_reciprocal(1) == 3
        assert w.q_reciprocal_product == 12


class TestSetFamily:
    def test_from_members_and_size(self):
        fam = SetFamily.from_members(2, [0b00, 0b11])
        assert fam.size == 2
        assert 0b00 in fam and 0b11 in fam and 0b01 not in fam

    def test_members_ascending(self):
        fam = SetFamily.from_members(2, [0b11, 0b00, 0b10])
        assert list(fam.members()) == [0b00, 0b10, 0b11]

    def test_empty_and_full(self):
        assert SetFamily.empty(2).size == 0
        assert SetFamily.full(2).size == 4

    def test_has_nonempty_member(self):
        assert not SetFamily.from_members(1, [0]).has_nonempty_member()
        assert SetFamily.from_members(1, [0, 1]).has_nonempty_member()

    def test_member_out_of_range(self):
        with pytest.raises(InputError):
            SetFamily.from_members(1, [2])


class TestMeasures:
    def test_point_measure(self):
        w = WeightVector.parse("2/3,3/4")
        # point {1}: p_1 q_2
        assert point_measure(0b01, w) == Fraction(2, 3) * Fraction(1, 4)

    def test_measure_table_sums_to_one(self):
        w = WeightVector.parse("2/3,3/4,1/5")
        assert sum(measure_table(w)) == 1

    def test_measure_numerators_match_table(self):
        w = WeightVector.parse("2/3,3/4,1/5")
        nums, den = measure_numerators(w)
        assert [Fraction(n, den) for n in nums] == measure_table(w)

    def test_family_measure(self):
        w = WeightVector.parse("2/3,3/4")
        fam = SetFamily.from_members(2, [0b00, 0b10, 0b11])
        assert family_measure(fam, w) == Fraction(5, 6)

    def test_full_cube_measure_is_one(self):
        w = WeightVector.parse("1/7,6/11")
        assert family_measure(SetFamily.full(2), w) == 1


class TestSubfamilies:
    # F = {empty, {1}, {1,2}} at d=2
    FAM = SetFamily.from_members(2, [0b00, 0b01, 0b11])

    def test_containing_1(self):
        assert members(subfamily_containing(self.FAM, 1)) == {0b01, 0b11}

    def test_containing_2(self):
        assert members(subfamily_containing(self.FAM, 2)) == {0b11}

    def test_containing_of_singleton_empty(self):
        fam = SetFamily.from_members(1, [0])
        assert subfamily_containing(fam, 1).size == 0

    def test_complement(self):
        assert members(complement_family(self.FAM)) == {0b10}

    def test_complement_of_full_is_empty(self):
        assert complement_family(SetFamily.full(2)).size == 0


class TestPredicates:
    def test_union_closed_triangle(self):
        fam = SetFamily.from_members(2, [0b01, 0b10, 0b11])
        assert is_union_closed(fam)

    def test_not_union_closed(self):
        fam = SetFamily.from_members(2, [0b01, 0b10])
        assert not is_union_closed(fam)

    def test_empty_family_union_closed(self):
        assert is_union_closed(SetFamily.empty(2))

    def test_full_cube_simply_rooted(self):
        assert is_simply_rooted(SetFamily.full(2))

    def test_simply_rooted_example(self):
        assert is_simply_rooted(SetFamily.from_members(2, [0b10]))

    def test_missing_lower_neighbors_full(self):
        full = SetFamily.full(2)
        for x in full.members():
            assert missing_lower_neighbors(full, x) == ()

    def test_missing_lower_neighbors_counts(self):
        fam = SetFamily.from_members(2, [0b11])
        assert missing_lower_neighbors(fam, 0b11) == (1, 2)

    def test_missing_lower_neighbors_requires_membership(self):
        with pytest.raises(InputError):
            missing_lower_neighbors(SetFamily.empty(2), 0b01)


class TestFileFormat:
    def test_bitstring_conventions(self):
        # leftmost char is coordinate 1
        assert member_to_bitstring(0b01, 2) == "10"
        assert member_to_bitstring(0b10, 2) == "01"
        assert bitstring_to_member("10", 2) == 0b01

    def test_roundtrip(self):
        fam = SetFamily.from_members(3, [0b000, 0b101, 0b111])
        assert family_from_text(family_to_text(fam)) == fam

    def test_parse_example(self):
        fam = family_from_text("d=2\n00\n10\n11\n")
        assert members(fam) == {0b00, 0b01, 0b11}

    def test_duplicate_member_rejected(self):
        with pytest.raises(InputError):
            family_from_text("d=2\n00\n00\n")

    def test_missing_header(self):
        with pytest.raises(InputError):
            family_from_text("00\n01\n")

    def test_wrong_width(self):
        with pytest.raises(InputError):
            family_from_text("d=2\n000\n")

    def test_bad_character(self):
        with pytest.raises(InputError):
            family_from_text("d=2\n0x\n")

    def test_blank_lines_ignored(self):
        fam = family_from_text("\nd=1\n\n1\n\n")
        assert members(fam) == {0b1}
