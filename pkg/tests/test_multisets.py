import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzym.fuzzy.multisets import Entry, FuzzyMultiset, fms_cardinality, fms_merge
from fuzzym.fuzzy.norms import NormKind
from fuzzym.fuzzy.sets import DegreeError

multisets = st.dictionaries(
    st.sampled_from("abcdef"),
    st.tuples(st.integers(min_value=0, max_value=20), st.floats(min_value=0.0, max_value=1.0, allow_nan=False)),
).map(FuzzyMultiset)


def test_set_q_at_unit_multiplicities():
    Q = FuzzyMultiset({2: (1, 0.3), 3: (1, 0.9), 4: (1, 1.0), 5: (1, 0.8), 6: (1, 0.5)})
    assert math.isclose(fms_cardinality(Q), 3.5, abs_tol=1e-12)


@settings(max_examples=1000)
@given(A=multisets)
def test_cardinality_matches_copy_expansion(A):
    copies = [entry.degree for entry in A.values() for _ in range(entry.multiplicity)]
    assert math.isclose(fms_cardinality(A), math.fsum(copies), abs_tol=1e-12)
    assert fms_cardinality(A) >= 0.0
    assert (fms_cardinality(A) > 0.0) == (len(A) > 0)


class TestFuzzyMultiset:
    def test_entries(self):
        bag = FuzzyMultiset({"x": (2, 0.5), "y": (3, 1.0)})
        assert bag["x"] == Entry(2, 0.5)
        assert bag.multiplicity("z") == 0
        assert bag.degree("z") == 0.0
        assert bag.size == 5
        assert bag.cardinality == 4.0

    def test_zero_entries_are_dropped(self):
        bag = FuzzyMultiset({"x": (0, 0.5), "y": (3, 0.0), "z": (1, 0.2)})
        assert list(bag) == ["z"]

    def test_crisp(self):
        assert FuzzyMultiset.crisp("abca") == FuzzyMultiset({"a": (2, 1.0), "b": (1, 1.0), "c": (1, 1.0)})

    @pytest.mark.parametrize("multiplicity", [-1, 1.5, True, "2"])
    def test_bad_multiplicity(self, multiplicity):
        with pytest.raises(ValueError, match="nonnegative integer"):
            FuzzyMultiset({"x": (multiplicity, 0.5)})

    def test_bad_degree(self):
        with pytest.raises(DegreeError):
            FuzzyMultiset({"x": (1, 1.5)})

    def test_duplicate_symbol(self):
        with pytest.raises(ValueError, match="listed twice"):
            FuzzyMultiset([("x", (1, 0.5)), ("x", (2, 0.5))])

    def test_remove(self):
        bag = FuzzyMultiset({"x": (2, 0.5), "y": (3, 1.0)})
        assert bag.remove("y", 2) == FuzzyMultiset({"x": (2, 0.5), "y": (1, 1.0)})
        assert "x" not in bag.remove("x", 2)
        with pytest.raises(ValueError, match="only 2 present"):
            bag.remove("x", 3)

    def test_repr_is_sorted(self):
        assert repr(FuzzyMultiset({"b": (1, 1.0), "a": (2, 0.5)})) == "FuzzyMultiset({a:2@0.5, b:1@1})"

    def test_hashable(self):
        assert len({FuzzyMultiset.crisp("ab"), FuzzyMultiset.crisp("ba")}) == 1


class TestMerge:
    def test_disjoint_symbols(self):
        merged = fms_merge(FuzzyMultiset({"a": (1, 0.4)}), FuzzyMultiset({"b": (2, 0.6)}))
        assert merged == FuzzyMultiset({"a": (1, 0.4), "b": (2, 0.6)})

    def test_shared_symbol_uses_conorm(self):
        A, B = FuzzyMultiset({"a": (1, 0.4)}), FuzzyMultiset({"a": (2, 0.6)})
        assert fms_merge(A, B) == FuzzyMultiset({"a": (3, 0.6)})
        product = fms_merge(A, B, NormKind.PRODUCT)
        assert product.multiplicity("a") == 3
        assert math.isclose(product.degree("a"), 0.76)

    @given(A=multisets, B=multisets)
    def test_multiplicities_add(self, A, B):
        merged = fms_merge(A, B)
        for symbol in set(A) | set(B):
            assert merged.multiplicity(symbol) == A.multiplicity(symbol) + B.multiplicity(symbol)
            assert merged.degree(symbol) == max(A.degree(symbol), B.degree(symbol))
