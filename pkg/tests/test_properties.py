"""Property-based checks of the structural and spectral invariants."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from biasedcube.cube import (
    SetFamily,
    WeightVector,
    complement_family,
    family_measure,
    is_simply_rooted,
    is_union_closed,
    measure_table,
    missing_lower_neighbors,
    point_measure,
)
from biasedcube.explore import union_closure
from biasedcube.hitting import (
    enumerate_minimal_hitting_sets,
    is_hitting,
    knill_size_margin,
    weighted_size_margin,
)
from biasedcube.spectral import (
    degree_one_identities,
    indicator,
    influence_level_identity_defect,
    influences,
    low_degree_bound_margin,
    parseval_defect,
    transform,
    transform_naive,
)
from biasedcube.verify import (
    HOLDS,
    verify_karpas_uniform,
    verify_simply_rooted,
    verify_weighted_karpas,
)


def fractions_interior():
    return st.integers(min_value=2, max_value=11).flatmap(
        lambda den: st.integers(min_value=1, max_value=den - 1).map(
            lambda num: Fraction(num, den)
        )
    )


def weight_vectors(d):
    return st.lists(fractions_interior(), min_size=d, max_size=d).map(
        lambda ps: WeightVector(tuple(ps))
    )


def dims():
    return st.integers(min_value=1, max_value=3)


def family_and_weights():
    return dims().flatmap(
        lambda d: st.tuples(
            st.integers(min_value=0, max_value=(1 << (1 << d)) - 1).map(
                lambda t: SetFamily(d, t)
            ),
            weight_vectors(d),
        )
    )


class TestMeasureProperties:
    @given(dims().flatmap(weight_vectors))
    def test_measure_table_sums_to_one(self, w):
        assert sum(measure_table(w)) == 1

    @given(family_and_weights())
    def test_family_measure_is_point_sum(self, pair):
        family, w = pair
        assert family_measure(family, w) == sum(
            (point_measure(x, w) for x in family.members()), Fraction(0)
        )

    @given(family_and_weights())
    def test_complement_measures_sum_to_one(self, pair):
        family, w = pair
        assert family_measure(family, w) + family_measure(complement_family(family), w) == 1


class TestSpectralProperties:
    @given(family_and_weights())
    @settings(max_examples=60)
    def test_butterfly_equals_naive(self, pair):
        family, w = pair
        f = indicator(family)
        assert transform(f, w).kernels == transform_naive(f, w).kernels

    @given(family_and_weights())
    @settings(max_examples=60)
    def test_parseval(self, pair):
        family, w = pair
        assert parseval_defect(indicator(family), w) == 0

    @given(family_and_weights())
    @settings(max_examples=60)
    def test_degree_one_and_level_identities(self, pair):
        family, w = pair
        f = indicator(family)
        assert degree_one_identities(f, w).all_equal
        assert influence_level_identity_defect(f, w) == 0

    @given(family_and_weights())
    @settings(max_examples=40)
    def test_low_degree_margins_nonnegative(self, pair):
        family, w = pair
        f = indicator(family)
        for k in range(1, family.d + 1):
            assert low_degree_bound_margin(f, w, k) >= 0

    @given(dims().flatmap(weight_vectors))
    @settings(max_examples=30)
    def test_kernel_orthogonality(self, w):
        # E[prod_{i in S}(x_i - p_i) * prod_{i in T}(x_i - p_i)] is 0 for
        # S != T and prod p_i q_i on the diagonal
        d = w.d
        table = measure_table(w)
        for s in range(1 << d):
            for t in range(s, 1 << d):
                total = Fraction(0)
                for x in range(1 << d):
                    term = table[x]
                    for i in range(d):
                        bit = (x >> i) & 1
                        factor = Fraction(bit) - w.p[i]
                        if (s >> i) & 1:
                            term *= factor
                        if (t >> i) & 1:
                            term *= factor
                    total += term
                if s == t:
                    expected = Fraction(1)
                    for i in range(d):
                        if (s >> i) & 1:
                            expected *= w.p[i] * (1 - w.p[i])
                    assert total == expected
                else:
                    assert total == 0

    @given(family_and_weights())
    @settings(max_examples=40)
    def test_influences_bounded_by_one(self, pair):
        family, w = pair
        prof = influences(indicator(family), w)
        for plus, minus in zip(prof.plus, prof.minus):
            assert 0 <= plus <= 1 and 0 <= minus <= 1


class TestStructuralProperties:
    @given(dims(), st.integers(min_value=0))
    def test_simply_rooted_members_missing_at_most_one(self, d, seed):
        table = seed % (1 << (1 << d))
        family = SetFamily(d, table)
        if not is_simply_rooted(family):
            return
        for x in family.members():
            assert len(missing_lower_neighbors(family, x)) <= 1

    @given(dims(), st.integers(min_value=0))
    def test_complement_duality(self, d, seed):
        family = SetFamily(d, seed % (1 << (1 << d)))
        assert is_simply_rooted(family) == is_union_closed(complement_family(family))
        assert complement_family(complement_family(family)) == family

    @given(st.lists(st.integers(min_value=1, max_value=7), max_size=4))
    def test_union_closure_idempotent_and_minimal(self, generators):
        fam = union_closure(3, generators)
        assert is_union_closed(fam)
        assert union_closure(3, fam.members()) == fam
        for g in generators:
            assert g in fam


class TestHittingProperties:
    @given(dims(), st.integers(min_value=0))
    def test_hitting_upward_closed(self, d, seed):
        family = SetFamily(d, seed % (1 << (1 << d)))
        for s in range(1 << d):
            if is_hitting(family, s):
                for j in range(d):
                    assert is_hitting(family, s | (1 << j))

    @given(dims(), st.integers(min_value=0))
    def test_minimal_hitting_sets_form_antichain(self, d, seed):
        family = SetFamily(d, seed % (1 << (1 << d)))
        sets = enumerate_minimal_hitting_sets(family)
        assert len(set(sets)) == len(sets)
        for s in sets:
            for t in sets:
                if s != t:
                    assert s & t != s  # no containment either way


class TestVerifierBridges:
    @given(dims(), st.integers(min_value=0), st.data())
    @settings(max_examples=60)
    def test_duality_bridge(self, d, seed, data):
        closed = SetFamily(d, seed % (1 << (1 << d)))
        if not is_union_closed(closed):
            return
        w = data.draw(weight_vectors(d))
        dual = verify_weighted_karpas(closed, w)
        rooted = verify_simply_rooted(complement_family(closed), w)
        assert dual.derived.hypothesis_status == rooted.hypothesis_status
        assert dual.derived.conclusion_status == rooted.conclusion_status
        derived_coords = [wit.coordinate for wit in dual.derived.witnesses]
        rooted_coords = [wit.coordinate for wit in rooted.witnesses]
        assert derived_coords == rooted_coords

    @given(st.integers(min_value=0))
    @settings(max_examples=80)
    def test_uniform_specialization_karpas(self, seed):
        d = 3
        closed = SetFamily(d, seed % (1 << (1 << d)))
        if not is_union_closed(closed):
            return
        w = WeightVector.uniform(d)
        dual = verify_weighted_karpas(closed, w)
        uniform = verify_karpas_uniform(closed)
        # p = q = 1/2 collapses the two forms onto the counting comparison
        assert dual.printed.details["per_coordinate"] == dual.derived.details["per_coordinate"]
        assert dual.derived.hypothesis_status == uniform.hypothesis_status
        if uniform.hypothesis_status == "met":
            assert dual.derived.conclusion_status == uniform.conclusion_status
            assert [w_.coordinate for w_ in dual.derived.witnesses] == [
                w_.coordinate for w_ in uniform.witnesses
            ]

    @given(st.integers(min_value=0))
    @settings(max_examples=80)
    def test_uniform_specialization_size_bound(self, seed):
        d = 3
        family = SetFamily(d, seed % (1 << (1 << d)))
        if not is_union_closed(family) or 0 not in family:
            return
        w = WeightVector.uniform(d)
        for s in enumerate_minimal_hitting_sets(family):
            counting = knill_size_margin(family, s)
            weighted = weighted_size_margin(family, s, w)
            # mu(F) = |F| / 2^d and the q-product is 2^{|S| - d}
            assert weighted.family_weight == Fraction(family.size, 1 << d)
            assert weighted.outside_q_product == Fraction(1, 1 << (d - s.bit_count()))
            assert weighted.holds == counting.holds

    @given(dims(), st.integers(min_value=0), st.data())
    @settings(max_examples=40)
    def test_simply_rooted_exhaustive_mirror(self, d, seed, data):
        family = SetFamily(d, seed % (1 << (1 << d)))
        if not is_simply_rooted(family):
            return
        w = data.draw(weight_vectors(d))
        report = verify_simply_rooted(family, w)
        if report.hypothesis_status == "met" and d >= 2:
            assert report.conclusion_status == HOLDS
