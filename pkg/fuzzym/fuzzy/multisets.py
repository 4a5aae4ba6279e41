from __future__ import annotations

import math
from collections.abc import Mapping
from types import MappingProxyType
from typing import Any, Dict, Generic, Hashable, Iterable, Iterator, NamedTuple, Tuple, TypeVar, Union

from pydantic import GetCoreSchemaHandler
from pydantic_core import core_schema

from .norms import NormKind, tconorm
from .sets import to_degree

__all__ = "Entry", "FuzzyMultiset", "fms_cardinality", "fms_merge"

T = TypeVar("T", bound=Hashable)


class Entry(NamedTuple):
    """`A(x) = (n, i)`: n copies of x, each belonging to the multiset with degree i."""

    multiplicity: int
    degree: float


class FuzzyMultiset(Mapping, Generic[T]):  # type: ignore[type-arg]
    """
    A frozen fuzzy multiset: every symbol maps to a multiplicity and one shared degree.

    Entries with multiplicity 0 or degree 0 are not stored, so equality is
    extensional and a nonempty multiset always has positive cardinality.

    ```python
    bag = FuzzyMultiset({"x": (2, 0.5), "y": (3, 1.0)})

    bag["x"]                  # Entry(multiplicity=2, degree=0.5)
    bag.multiplicity("z")     # 0
    fms_cardinality(bag)      # 4.0
    bag.remove("y", 2)        # {x:2@0.5, y:1@1}
    ```
    """

    __slots__ = ("__entries",)

    def __init__(self, entries: Union[Mapping[T, Any], Iterable[Tuple[T, Any]]] = ()) -> None:
        """
        Args:
            entries: Symbol to `(multiplicity, degree)` pairs.

        Raises:
            ValueError: If a multiplicity is not a nonnegative integer
            DegreeError: If a degree is outside [0,1]
        """
        items = entries.items() if isinstance(entries, Mapping) else entries
        stored: Dict[T, Entry] = {}
        for symbol, (multiplicity, degree) in items:
            if isinstance(multiplicity, bool) or not isinstance(multiplicity, int) or multiplicity < 0:
                raise ValueError(f"Multiplicity of {symbol!r} must be a nonnegative integer, got {multiplicity!r}")
            if symbol in stored:
                raise ValueError(f"Symbol {symbol!r} listed twice")
            value = to_degree(degree)
            if multiplicity and value > 0.0:
                stored[symbol] = Entry(multiplicity, value)
        self.__entries: Mapping[T, Entry] = MappingProxyType(stored)

    @classmethod
    def _trusted(cls, stored: Mapping[T, Entry]) -> FuzzyMultiset[T]:
        instance = cls.__new__(cls)
        instance.__entries = MappingProxyType({s: e for s, e in stored.items() if e.multiplicity and e.degree > 0.0})
        return instance

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.is_instance_schema(cls)

    @classmethod
    def crisp(cls, symbols: Iterable[T]) -> FuzzyMultiset[T]:
        """Multiset of the given symbols, every copy at degree 1."""
        counts: Dict[T, int] = {}
        for symbol in symbols:
            counts[symbol] = counts.get(symbol, 0) + 1
        return cls._trusted({s: Entry(n, 1.0) for s, n in counts.items()})

    def __getitem__(self, symbol: T) -> Entry:
        return self.__entries[symbol]

    def __iter__(self) -> Iterator[T]:
        return iter(self.__entries)

    def __len__(self) -> int:
        return len(self.__entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FuzzyMultiset):
            return dict(self.__entries) == dict(other.items())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.__entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{s}:{e.multiplicity}@{e.degree:g}" for s, e in sorted(self.__entries.items(), key=_key))
        return f"FuzzyMultiset({{{body}}})"

    def multiplicity(self, symbol: T) -> int:
        """`A_m(x)`, 0 for absent symbols."""
        entry = self.__entries.get(symbol)
        return entry.multiplicity if entry else 0

    def degree(self, symbol: T) -> float:
        """`A_mu(x)`, 0 for absent symbols."""
        entry = self.__entries.get(symbol)
        return entry.degree if entry else 0.0

    @property
    def size(self) -> int:
        """Total number of copies."""
        return sum(e.multiplicity for e in self.__entries.values())

    @property
    def cardinality(self) -> float:
        """Shortcut for `fms_cardinality(self)`."""
        return fms_cardinality(self)

    def remove(self, symbol: T, count: int) -> FuzzyMultiset[T]:
        """
        Take `count` copies of `symbol` out; the remaining copies keep their degree.

        Args:
            symbol: Symbol to remove.
            count: Number of copies.

        Returns:
            The reduced multiset.

        Raises:
            ValueError: If fewer than `count` copies are present
        """
        if (have := self.multiplicity(symbol)) < count:
            raise ValueError(f"Cannot remove {count} copies of {symbol!r}, only {have} present")
        stored = dict(self.__entries)
        stored[symbol] = Entry(have - count, self.degree(symbol))
        return FuzzyMultiset._trusted(stored)


def _key(item: Tuple[Any, Entry]) -> str:
    return str(item[0])


def fms_cardinality(A: FuzzyMultiset[Any]) -> float:
    """
    `card A = sum of A_m(a) * A_mu(a)` over the support.

    Args:
        A: The multiset.

    Returns:
        A nonnegative real; 0 exactly when `A` is empty.
    """
    return math.fsum(e.multiplicity * e.degree for e in A.values())


def fms_merge(A: FuzzyMultiset[T], B: FuzzyMultiset[T], kind: NormKind = NormKind.MINIMUM) -> FuzzyMultiset[T]:
    """
    Multiset sum keeping one degree per symbol.

    Multiplicities add; degrees of a symbol present in both combine with the
    t-conorm of `kind`.

    Args:
        A: First multiset.
        B: Second multiset.
        kind: Norm pair whose conorm merges degrees.

    Returns:
        The merged multiset.
    """
    stored: Dict[T, Entry] = dict(A.items())
    for symbol, entry in B.items():
        if (mine := stored.get(symbol)) is None:
            stored[symbol] = entry
        else:
            stored[symbol] = Entry(mine.multiplicity + entry.multiplicity, tconorm(kind, mine.degree, entry.degree))
    return FuzzyMultiset._trusted(stored)
