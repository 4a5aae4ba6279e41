import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzym.fuzzy.norms import NormKind
from fuzzym.fuzzy.sets import (
    DegreeError,
    FuzzySet,
    approx_equal,
    format_degree,
    fs_approximately,
    fs_complement,
    fs_intersection,
    fs_union,
    is_degree,
    round_degree,
    to_degree,
)

UNIVERSE = frozenset(range(8))

fuzzy_sets = st.dictionaries(
    st.sampled_from(sorted(UNIVERSE)), st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
).map(lambda members: FuzzySet(members, universe=UNIVERSE))


@pytest.fixture
def q_set():
    """`{2@0.3, 3@0.9, 4@1, 5@0.8, 6@0.5} over {0, ..., 9}`."""
    return FuzzySet({2: 0.3, 3: 0.9, 4: 1, 5: 0.8, 6: 0.5}, universe=range(10))


class TestDegrees:
    @pytest.mark.parametrize("value", [0, 0.5, 1, "0.25"])
    def test_valid(self, value):
        assert 0.0 <= to_degree(value) <= 1.0

    @pytest.mark.parametrize("value", [-0.9, 1.2, float("nan"), float("inf"), "high"])
    def test_invalid(self, value):
        with pytest.raises(DegreeError, match=r"\[0,1\]"):
            to_degree(value)

    @pytest.mark.parametrize(
        "value, expected", [(0, True), (0.5, True), (1, True), (1.2, False), ("0.5", False), (True, False)]
    )
    def test_is_degree_does_not_coerce(self, value, expected):
        assert is_degree(value) is expected

    def test_rounding(self):
        assert format_degree(0.1 + 0.2) == "0.3"
        assert format_degree(1.0) == "1"
        assert round_degree(0.9 * 0.5) == 0.45


class TestFuzzySet:
    def test_membership(self, q_set):
        assert q_set(3) == 0.9
        assert q_set(7) == 0.0
        assert 7 not in q_set
        assert len(q_set) == 5

    def test_zero_degrees_are_not_stored(self):
        A = FuzzySet({"x": 0.0, "y": 0.4}, universe={"x", "y"})
        assert A.support == {"y"}
        assert A.universe == {"x", "y"}

    def test_universe_defaults_to_support(self):
        assert FuzzySet({"x": 0.2}).universe == {"x"}

    def test_element_outside_universe(self):
        with pytest.raises(ValueError, match="not in the universe"):
            FuzzySet({9: 0.5}, universe={1, 2})

    def test_bad_degree(self):
        with pytest.raises(DegreeError):
            FuzzySet({1: 1.5})

    def test_height_and_cuts(self, q_set):
        assert q_set.height == 1.0
        assert FuzzySet().height == 0.0
        assert q_set.alpha_cut(0.8) == {3, 4, 5}
        assert q_set.alpha_cut(0.8, strict=True) == {3, 4}
        assert q_set.alpha_cut(0.0) == frozenset(range(10))

    def test_subset(self, q_set):
        smaller = FuzzySet({3: 0.5, 4: 1.0}, universe=range(10))
        assert smaller.is_subset(q_set)
        assert not q_set.is_subset(smaller)

    def test_equality_and_hash(self):
        A = FuzzySet({1: 0.5}, universe={1, 2})
        B = FuzzySet([(1, 0.5), (2, 0)], universe={2, 1})
        assert A == B
        assert hash(A) == hash(B)
        assert A != FuzzySet({1: 0.5})


class TestOperations:
    def test_minimum_union_and_intersection_match_max_min(self):
        A = FuzzySet({1: 0.2, 2: 0.7}, universe=UNIVERSE)
        B = FuzzySet({2: 0.4, 3: 0.9}, universe=UNIVERSE)
        assert fs_union(A, B) == FuzzySet({1: 0.2, 2: 0.7, 3: 0.9}, universe=UNIVERSE)
        assert fs_intersection(A, B) == FuzzySet({2: 0.4}, universe=UNIVERSE)

    @settings(max_examples=1000)
    @given(A=fuzzy_sets, B=fuzzy_sets)
    def test_minimum_kind_is_pointwise_max_min(self, A, B):
        union, intersection = fs_union(A, B), fs_intersection(A, B)
        for x in UNIVERSE:
            assert union(x) == max(A(x), B(x))
            assert intersection(x) == min(A(x), B(x))

    @settings(max_examples=1000)
    @given(A=fuzzy_sets)
    def test_complement_involution(self, A):
        assert fs_complement(fs_complement(A)).isclose(A)

    @settings(max_examples=1000)
    @given(A=fuzzy_sets, B=fuzzy_sets, kind=st.sampled_from(list(NormKind)))
    def test_de_morgan(self, A, B, kind):
        left = fs_complement(fs_union(A, B, kind))
        right = fs_intersection(fs_complement(A), fs_complement(B), kind)
        assert left.isclose(right)

    def test_complement_covers_universe(self):
        A = FuzzySet({1: 0.25}, universe={1, 2})
        assert fs_complement(A) == FuzzySet({1: 0.75, 2: 1.0}, universe={1, 2})


class TestApproximately:
    def test_triangular_membership(self):
        assert approx_equal(10, 10, 2) == 1.0
        assert approx_equal(9, 10, 2) == 0.5
        assert approx_equal(13, 10, 2) == 0.0

    @pytest.mark.parametrize("delta", [0, -1, float("inf"), float("nan")])
    def test_delta_must_be_positive(self, delta):
        with pytest.raises(ValueError, match="delta"):
            approx_equal(1, 2, delta)

    def test_fuzzy_set(self):
        near_ten = fs_approximately(10, 2, range(21))
        assert near_ten(9) == 0.5
        assert near_ten(13) == 0.0
        assert near_ten.support == {9, 10, 11}
        assert len(near_ten.universe) == 21
