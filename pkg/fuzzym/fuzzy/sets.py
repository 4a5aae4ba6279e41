from __future__ import annotations

import math
from types import MappingProxyType
from typing import (
    Annotated,
    Any,
    FrozenSet,
    Generic,
    Hashable,
    Iterable,
    Iterator,
    Mapping,
    Tuple,
    TypeVar,
    Union,
)

from pydantic import Field, TypeAdapter
from pydantic import ValidationError as PydanticValidationError

from .norms import NormKind, tconorm, tnorm

__all__ = (
    "Degree",
    "DegreeError",
    "FuzzySet",
    "approx_equal",
    "fs_approximately",
    "fs_complement",
    "fs_intersection",
    "fs_union",
    "format_degree",
    "is_degree",
    "round_degree",
    "to_degree",
)

Degree = Annotated[float, Field(ge=0.0, le=1.0, allow_inf_nan=False)]
"""A membership or plausibility grade in [0,1]."""

_degree_adapter: TypeAdapter[float] = TypeAdapter(Degree)

T = TypeVar("T", bound=Hashable)


class DegreeError(ValueError):
    """Raised when a value cannot be used as a degree."""


def to_degree(value: Any, *, strict: bool = False) -> float:
    """
    Validate a degree.

    Args:
        value: A real number (ints and numeric strings are coerced).
        strict: Accept only ints and floats, no strings or bools.

    Returns:
        The value as a float.

    Raises:
        DegreeError: If the value is not a finite real in [0,1].
    """
    try:
        return float(_degree_adapter.validate_python(value, strict=strict))
    except PydanticValidationError as e:
        raise DegreeError(f"Degree must be in [0,1], got {value!r}") from e


def is_degree(value: Any) -> bool:
    """True when `value` is a number in [0,1] as it stands, without coercion."""
    try:
        to_degree(value, strict=True)
    except DegreeError:
        return False
    return True


def round_degree(value: float) -> float:
    """Round to 12 significant digits, the precision degrees are reported with."""
    return float(format_degree(value))


def format_degree(value: float) -> str:
    """Shortest decimal text of `value` at 12 significant digits (`1`, `0.6`, `0.45`)."""
    return f"{value:.12g}"


class FuzzySet(Generic[T]):
    """
    A finite fuzzy subset of a declared universe.

    Elements outside the support have degree 0 and are never stored, so two sets
    with the same universe and the same stored memberships are equal.

    ```python
    Q = FuzzySet({"2": 0.3, "3": 0.9, "4": 1, "5": 0.8, "6": 0.5}, universe=map(str, range(10)))

    Q("3")          # 0.9
    Q("7")          # 0.0
    Q.height        # 1.0
    Q.alpha_cut(0.8)  # frozenset({"3", "4", "5"})
    fs_complement(Q)("7")  # 1.0
    ```
    """

    __slots__ = ("__membership", "__universe")

    def __init__(
        self,
        membership: Union[Mapping[T, Any], Iterable[Tuple[T, Any]]] = (),
        *,
        universe: Iterable[T] | None = None,
    ) -> None:
        """
        Args:
            membership: Element to degree pairs. Zero degrees are dropped.
            universe: The universe of discourse. Defaults to the support.

        Raises:
            DegreeError: If a degree is outside [0,1]
            ValueError: If a supported element is outside the universe
        """
        items = membership.items() if isinstance(membership, Mapping) else membership
        stored = {}
        for element, value in items:
            if (degree := to_degree(value)) > 0.0:
                stored[element] = degree

        if universe is None:
            domain = frozenset(stored)
        else:
            domain = frozenset(universe)
            if outside := [e for e in stored if e not in domain]:
                raise ValueError(f"Elements {sorted(map(repr, outside))} are not in the universe")

        self.__membership: Mapping[T, float] = MappingProxyType(stored)
        self.__universe: FrozenSet[T] = domain

    @classmethod
    def _trusted(cls, stored: Mapping[T, float], universe: FrozenSet[T]) -> FuzzySet[T]:
        # Bypasses validation for results of closed operations.
        instance = cls.__new__(cls)
        instance.__membership = MappingProxyType({k: v for k, v in stored.items() if v > 0.0})
        instance.__universe = universe
        return instance

    def __call__(self, element: T) -> float:
        """Membership degree A(x); 0 for anything outside the support."""
        return self.__membership.get(element, 0.0)

    def __iter__(self) -> Iterator[T]:
        return iter(self.__membership)

    def __len__(self) -> int:
        return len(self.__membership)

    def __contains__(self, element: object) -> bool:
        return element in self.__membership

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FuzzySet):
            return self.__universe == other.universe and dict(self.__membership) == dict(other.membership)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.__universe, frozenset(self.__membership.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{e!r}@{d:g}" for e, d in sorted(self.__membership.items(), key=lambda kv: repr(kv[0])))
        return f"FuzzySet({{{body}}}, universe_size={len(self.__universe)})"

    @property
    def membership(self) -> Mapping[T, float]:
        """Read-only view of the stored (positive) memberships."""
        return self.__membership

    @property
    def universe(self) -> FrozenSet[T]:
        """The universe of discourse."""
        return self.__universe

    @property
    def support(self) -> FrozenSet[T]:
        """Elements with positive degree."""
        return frozenset(self.__membership)

    @property
    def height(self) -> float:
        """Largest degree in the set, 0 when empty."""
        return max(self.__membership.values(), default=0.0)

    def items(self) -> Iterable[Tuple[T, float]]:
        """Element, degree pairs of the support."""
        return self.__membership.items()

    def alpha_cut(self, alpha: float, *, strict: bool = False) -> FrozenSet[T]:
        """
        Crisp set of elements whose degree reaches `alpha`.

        Args:
            alpha: The threshold degree.
            strict: Use `>` instead of `>=`.

        Returns:
            The alpha-cut (strong alpha-cut when strict).
        """
        alpha = to_degree(alpha)
        if strict:
            return frozenset(e for e, d in self.__membership.items() if d > alpha)
        if alpha == 0.0:
            return self.__universe
        return frozenset(e for e, d in self.__membership.items() if d >= alpha)

    def is_subset(self, other: FuzzySet[T]) -> bool:
        """Zadeh inclusion: A(x) <= B(x) for every x."""
        return all(d <= other(e) for e, d in self.__membership.items())

    def isclose(self, other: FuzzySet[T], *, tol: float = 1e-12) -> bool:
        """Pointwise equality within `tol` over the union of both universes."""
        domain = self.__universe | other.universe
        return all(abs(self(e) - other(e)) <= tol for e in domain)


def _pointwise(A: FuzzySet[T], B: FuzzySet[T], op: Any) -> FuzzySet[T]:
    universe = A.universe | B.universe
    elements = A.support | B.support
    return FuzzySet._trusted({e: op(A(e), B(e)) for e in elements}, universe)


def fs_union(A: FuzzySet[T], B: FuzzySet[T], kind: NormKind = NormKind.MINIMUM) -> FuzzySet[T]:
    """
    Pointwise t-conorm of two fuzzy sets.

    The result universe is the union of both universes.

    Args:
        A: First set.
        B: Second set.
        kind: Norm pair whose conorm is used. `MINIMUM` gives `max{A(x), B(x)}`.

    Returns:
        The union.
    """
    return _pointwise(A, B, lambda a, b: tconorm(kind, a, b))


def fs_intersection(A: FuzzySet[T], B: FuzzySet[T], kind: NormKind = NormKind.MINIMUM) -> FuzzySet[T]:
    """
    Pointwise t-norm of two fuzzy sets.

    Args:
        A: First set.
        B: Second set.
        kind: Norm pair whose t-norm is used. `MINIMUM` gives `min{A(x), B(x)}`.

    Returns:
        The intersection.
    """
    return _pointwise(A, B, lambda a, b: tnorm(kind, a, b))


def fs_complement(A: FuzzySet[T]) -> FuzzySet[T]:
    """
    Standard complement `1 - A(x)`, relative to the universe of `A`.

    Args:
        A: The set to complement.

    Returns:
        The complement over the same universe.
    """
    return FuzzySet._trusted({e: 1.0 - A(e) for e in A.universe}, A.universe)


def approx_equal(x: float, y: float, delta: float) -> float:
    """
    Degree to which `x` is approximately equal to `y`.

    Uses a symmetric triangular membership of half-width `delta`: 1 when `x == y`,
    falling linearly to 0 at `|x - y| >= delta`.

    Args:
        x: First value.
        y: Second value.
        delta: Tolerance half-width, must be positive.

    Returns:
        `max(0, 1 - |x - y| / delta)`

    Raises:
        ValueError: If delta is not a positive finite number.
    """
    if not (math.isfinite(delta) and delta > 0):
        raise ValueError(f"delta must be positive, got {delta!r}")
    return max(0.0, 1.0 - abs(x - y) / delta)


def fs_approximately(center: float, delta: float, universe: Iterable[float]) -> FuzzySet[float]:
    """
    The fuzzy set "approximately `center`" over a numeric universe.

    ```python
    near_ten = fs_approximately(10, 2, range(0, 21))
    near_ten(9)   # 0.5
    near_ten(13)  # 0.0
    ```

    Args:
        center: The value being approximated.
        delta: Tolerance half-width.
        universe: Candidate values.

    Returns:
        Memberships given by `approx_equal(x, center, delta)`.
    """
    domain = frozenset(universe)
    return FuzzySet({x: approx_equal(x, center, delta) for x in domain}, universe=domain)
