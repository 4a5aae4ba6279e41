from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from ..fuzzy.multisets import FuzzyMultiset
from ..fuzzy.norms import NormKind
from ..fuzzy.sets import is_degree
from ..violations import ValidationFailure, Violation

__all__ = (
    "HERE",
    "OUT",
    "Compartment",
    "PSystem",
    "Product",
    "Rule",
    "Target",
    "TargetKind",
    "compartments",
    "ensure_valid_system",
    "find_compartment",
    "validate_system",
)


class TargetKind(str, Enum):
    HERE = "here"
    OUT = "out"
    IN = "in"


class Target(NamedTuple):
    """Where a produced object goes: the same compartment, the parent, or a named child."""

    kind: TargetKind = TargetKind.HERE
    child: Optional[str] = None

    @classmethod
    def into(cls, child: str) -> Target:
        return cls(TargetKind.IN, child)

    def __str__(self) -> str:
        return f"in {self.child}" if self.kind is TargetKind.IN else self.kind.value


HERE = Target(TargetKind.HERE)
OUT = Target(TargetKind.OUT)


class Product(NamedTuple):
    """One object on the right-hand side of a rule."""

    symbol: str
    target: Target = HERE
    degree: float = 1.0


@dataclass(frozen=True)
class Rule:
    """
    A multiset rewriting rule `lhs -> rhs`.

    `lhs` is stored as sorted `(symbol, count)` pairs. The degree of every
    produced object is the t-norm of the consumed degree, `rule_degree` and the
    product's own degree.

    ```python
    Rule.parse_lhs("a a b")                 # (("a", 2), ("b", 1))
    Rule(lhs={"a": 1}, rhs=[Product("b", degree=0.6)])
    Rule(lhs={"c": 1}, rhs=[Product("c", OUT)], rule_degree=0.9)
    ```
    """

    lhs: Tuple[Tuple[str, int], ...]
    rhs: Tuple[Product, ...] = ()
    rule_degree: float = 1.0

    def __init__(
        self,
        lhs: Union[Mapping[str, int], Iterable[str], Iterable[Tuple[str, int]]],
        rhs: Iterable[Union[Product, Tuple]] = (),
        rule_degree: float = 1.0,
    ) -> None:
        object.__setattr__(self, "lhs", self.parse_lhs(lhs))
        object.__setattr__(self, "rhs", tuple(p if isinstance(p, Product) else Product(*p) for p in rhs))
        object.__setattr__(self, "rule_degree", rule_degree)

    @staticmethod
    def parse_lhs(lhs: Union[str, Mapping[str, int], Iterable[str], Iterable[Tuple[str, int]]]) -> Tuple[Tuple[str, int], ...]:
        """Canonical `(symbol, count)` pairs from a mapping, pairs, symbols, or a space separated string."""
        if isinstance(lhs, str):
            counts: Mapping[str, int] = Counter(lhs.split())
        elif isinstance(lhs, Mapping):
            counts = lhs
        else:
            counted: Counter[str] = Counter()
            for item in lhs:
                if isinstance(item, tuple):
                    counted[item[0]] += item[1]
                else:
                    counted[item] += 1
            counts = counted
        return tuple(sorted((s, n) for s, n in counts.items() if n))

    def __str__(self) -> str:
        left = " ".join(s for s, n in self.lhs for _ in range(n))
        right = " ".join(f"{p.symbol}({p.target})@{p.degree:g}" for p in self.rhs)
        return f"{left} -> {right} @@{self.rule_degree:g}".replace("->  @@", "-> @@")


@dataclass(frozen=True)
class Compartment:
    """A membrane with its fuzzy multiset of objects, ordered rules and nested children."""

    id: str  # noqa: A003
    contents: FuzzyMultiset[str] = field(default_factory=FuzzyMultiset)
    rules: Tuple[Rule, ...] = ()
    children: Tuple[Compartment, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "children", tuple(self.children))

    def child(self, id: str) -> Optional[Compartment]:  # noqa: A002
        """Direct child with the given id."""
        return next((c for c in self.children if c.id == id), None)


@dataclass(frozen=True)
class PSystem:
    """
    A fuzzy P-system: a tree of compartments rooted at the skin membrane.

    ```python
    skin = Compartment(
        "skin",
        contents=FuzzyMultiset({"a": (2, 1.0)}),
        rules=(Rule({"a": 1}, [Product("b", degree=0.6)]),),
    )
    system = PSystem(skin, output_id="skin", norm=NormKind.PRODUCT)
    validate_system(system)  # []
    ```
    """

    skin: Compartment
    output_id: str
    norm: NormKind = NormKind.MINIMUM
    clock: int = 0
    name: str = "psystem"

    def __post_init__(self) -> None:
        object.__setattr__(self, "norm", NormKind(self.norm))

    @property
    def output(self) -> Compartment:
        """The designated output compartment."""
        if (found := find_compartment(self, self.output_id)) is None:
            raise LookupError(f"Output compartment {self.output_id!r} does not exist")
        return found


def compartments(P: PSystem) -> Iterator[Tuple[Compartment, Optional[Compartment]]]:
    """Pre-order walk yielding `(compartment, parent)`; the skin has no parent."""
    stack: List[Tuple[Compartment, Optional[Compartment]]] = [(P.skin, None)]
    while stack:
        node, parent = stack.pop()
        yield node, parent
        stack.extend((c, node) for c in reversed(node.children))


def find_compartment(P: PSystem, id: str) -> Optional[Compartment]:  # noqa: A002
    """Compartment with the given id, if any."""
    return next((c for c, _ in compartments(P) if c.id == id), None)


def validate_system(P: PSystem) -> List[Violation]:
    """
    Check the structural invariants of a P-system.

    Args:
        P: The system to check.

    Returns:
        All violations found; empty when the system is well formed.
    """
    violations: List[Violation] = []
    seen: Dict[str, int] = {}

    for node, _ in compartments(P):
        seen[node.id] = seen.get(node.id, 0) + 1
        children = {c.id for c in node.children}
        for index, rule in enumerate(node.rules):
            location = f"membrane {node.id}, rule {index + 1}"
            if not rule.lhs:
                violations.append(Violation("empty-lhs", location, "a rule must consume at least one object"))
            if any(n < 0 for _, n in rule.lhs):
                violations.append(Violation("negative-count", location, "left-hand side counts must be positive"))
            if not is_degree(rule.rule_degree):
                violations.append(Violation("bad-degree", location, f"rule degree must be in [0,1], got {rule.rule_degree!r}"))
            for product in rule.rhs:
                if not is_degree(product.degree):
                    violations.append(
                        Violation("bad-degree", location, f"degree of {product.symbol!r} must be in [0,1], got {product.degree!r}")
                    )
                if product.target.kind is TargetKind.IN and product.target.child not in children:
                    violations.append(
                        Violation(
                            "bad-target",
                            location,
                            f"target 'in {product.target.child}' is not a direct child of {node.id!r}",
                        )
                    )

    for id_, count in sorted(seen.items()):
        if count > 1:
            violations.append(Violation("duplicate-id", f"membrane {id_}", f"id used by {count} compartments"))
    if P.output_id not in seen:
        violations.append(Violation("unknown-output", "output", f"output compartment {P.output_id!r} does not exist"))
    return violations


def ensure_valid_system(P: PSystem) -> PSystem:
    """
    Raise unless the system is well formed.

    Raises:
        ValidationFailure: If `validate_system` reports anything
    """
    if violations := validate_system(P):
        raise ValidationFailure(violations, subject=f"P-system {P.name!r}")
    return P
