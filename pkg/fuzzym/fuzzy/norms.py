from __future__ import annotations

from enum import Enum
from functools import reduce
from typing import Callable, Dict, Iterable, Tuple

__all__ = "NormKind", "tnorm", "tconorm", "tnorm_fold", "tconorm_fold"


class NormKind(str, Enum):
    """
    A (t-norm, dual t-conorm) pair.

    | kind          | t-norm            | t-conorm       |
    |---------------|-------------------|----------------|
    | `MINIMUM`     | `min(a, b)`       | `max(a, b)`    |
    | `PRODUCT`     | `a * b`           | `a + b - a*b`  |
    | `LUKASIEWICZ` | `max(0, a+b-1)`   | `min(1, a+b)`  |

    ```python
    NormKind.parse("min") is NormKind.MINIMUM
    tnorm(NormKind.LUKASIEWICZ, 0.7, 0.6)  # 0.3 (up to rounding)
    ```
    """

    MINIMUM = "min"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    @classmethod
    def parse(cls, name: str) -> NormKind:
        """
        Resolve a norm name.

        Args:
            name: One of `min`, `minimum`, `product`, `lukasiewicz` or `łukasiewicz`.

        Returns:
            The matching kind.

        Raises:
            ValueError: If the name is unknown.
        """
        key = name.strip().lower()
        if (kind := _ALIASES.get(key)) is None:
            choices = ", ".join(repr(k.value) for k in cls)
            raise ValueError(f"Unknown norm {name!r}, expected one of {choices}")
        return kind

    def __str__(self) -> str:
        return self.value


_ALIASES: Dict[str, NormKind] = {
    "min": NormKind.MINIMUM,
    "minimum": NormKind.MINIMUM,
    "product": NormKind.PRODUCT,
    "lukasiewicz": NormKind.LUKASIEWICZ,
    "łukasiewicz": NormKind.LUKASIEWICZ,
}

BinaryOp = Callable[[float, float], float]


def _product_conorm(a: float, b: float) -> float:
    return min(1.0, a + b - a * b)


_OPERATORS: Dict[NormKind, Tuple[BinaryOp, BinaryOp]] = {
    NormKind.MINIMUM: (min, max),
    NormKind.PRODUCT: (lambda a, b: a * b, _product_conorm),
    NormKind.LUKASIEWICZ: (lambda a, b: max(0.0, a - (1.0 - b)), lambda a, b: min(1.0, a + b)),
}


def tnorm(kind: NormKind, a: float, b: float) -> float:
    """
    Combine two degrees conjunctively.

    Args:
        kind: The norm pair to use.
        a: First degree.
        b: Second degree.

    Returns:
        `a * b` under the chosen t-norm; never above `min(a, b)`.
    """
    return _OPERATORS[kind][0](a, b)


def tconorm(kind: NormKind, a: float, b: float) -> float:
    """
    Combine two degrees disjunctively with the conorm dual to `kind`.

    Args:
        kind: The norm pair to use.
        a: First degree.
        b: Second degree.

    Returns:
        The conorm value; never below `max(a, b)`.
    """
    return _OPERATORS[kind][1](a, b)


def tnorm_fold(kind: NormKind, degrees: Iterable[float]) -> float:
    """Left fold of the t-norm over `degrees`, seeded with 1."""
    op = _OPERATORS[kind][0]
    return reduce(op, degrees, 1.0)


def tconorm_fold(kind: NormKind, degrees: Iterable[float]) -> float:
    """Left fold of the t-conorm over `degrees`, seeded with 0."""
    op = _OPERATORS[kind][1]
    return reduce(op, degrees, 0.0)
