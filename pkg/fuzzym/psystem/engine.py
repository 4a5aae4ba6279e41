from __future__ import annotations

import dataclasses
from collections import defaultdict
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from ..fuzzy.multisets import Entry, FuzzyMultiset, fms_cardinality, fms_merge
from ..fuzzy.norms import tnorm
from ..fuzzy.sets import round_degree
from ..logger import Logger
from .system import Compartment, PSystem, Rule, TargetKind, compartments, ensure_valid_system

__all__ = (
    "Application",
    "Deposit",
    "RunResult",
    "Simulator",
    "applicable_rules",
    "halted",
    "run",
    "tick",
    "tick_with_applications",
)


def applicable_rules(C: Compartment) -> List[Tuple[Rule, int]]:
    """
    Rules of `C` whose left-hand side is covered by its contents.

    ```python
    applicable_rules(Compartment("skin", FuzzyMultiset({"a": (2, 1.0)}), rules=(a_to_b,)))
    # [(a_to_b, 2)]
    ```

    Returns:
        `(rule, max_applications)` pairs in rule order; empty when nothing applies.
    """
    result = []
    for rule in C.rules:
        if rule.lhs and (times := _max_applications(C.contents, rule)) > 0:
            result.append((rule, times))
    return result


def _max_applications(contents: FuzzyMultiset[str], rule: Rule) -> int:
    return min(contents.multiplicity(symbol) // count for symbol, count in rule.lhs)


class Deposit(NamedTuple):
    """Copies of a produced object and where they went; `destination` is None for the environment."""

    symbol: str
    copies: int
    degree: float
    destination: Optional[str]


class Application(NamedTuple):
    """One rule fired `times` times in a compartment during a tick."""

    compartment: str
    rule_index: int
    times: int
    consumed_degree: float
    deposits: Tuple[Deposit, ...]


def _fire(
    P: PSystem, node: Compartment, parent: Optional[Compartment]
) -> Tuple[FuzzyMultiset[str], List[Application]]:
    remaining = node.contents
    applications = []
    for index, rule in enumerate(node.rules):
        if not rule.lhs or (times := _max_applications(remaining, rule)) == 0:
            continue
        d_in = min(remaining.degree(symbol) for symbol, _ in rule.lhs)
        for symbol, count in rule.lhs:
            remaining = remaining.remove(symbol, count * times)
        deposits = []
        for product in rule.rhs:
            degree = tnorm(P.norm, d_in, tnorm(P.norm, rule.rule_degree, product.degree))
            if product.target.kind is TargetKind.HERE:
                destination: Optional[str] = node.id
            elif product.target.kind is TargetKind.OUT:
                destination = parent.id if parent is not None else None
            else:
                destination = product.target.child
            deposits.append(Deposit(product.symbol, times, degree, destination))
        applications.append(Application(node.id, index, times, d_in, tuple(deposits)))
    return remaining, applications


def _rebuild(node: Compartment, contents: Dict[str, FuzzyMultiset[str]]) -> Compartment:
    children = tuple(_rebuild(child, contents) for child in node.children)
    return dataclasses.replace(node, contents=contents[node.id], children=children)


def tick_with_applications(P: PSystem) -> Tuple[PSystem, List[Application]]:
    """
    One synchronous step of the whole system, with a record of what fired.

    Every compartment works on its pre-tick contents. Rules fire in listed
    order, each as often as the contents left by earlier rules allow. Produced
    objects are merged into their destination after all compartments fired.

    Args:
        P: The system.

    Returns:
        The successor system and the applications in pre-order, rule order.
        A halted system is returned as is, with no applications.
    """
    if halted(P):
        return P, []

    contents: Dict[str, FuzzyMultiset[str]] = {}
    applications: List[Application] = []
    for node, parent in compartments(P):
        contents[node.id], fired = _fire(P, node, parent)
        applications.extend(fired)

    arrivals: Dict[str, List[Deposit]] = defaultdict(list)
    for application in applications:
        for deposit in application.deposits:
            if deposit.destination is not None:
                arrivals[deposit.destination].append(deposit)
    for destination, deposits in arrivals.items():
        merged = contents[destination]
        for deposit in deposits:
            incoming = FuzzyMultiset._trusted({deposit.symbol: Entry(deposit.copies, deposit.degree)})
            merged = fms_merge(merged, incoming, P.norm)
        contents[destination] = merged

    successor = dataclasses.replace(P, skin=_rebuild(P.skin, contents), clock=P.clock + 1)
    return successor, applications


def tick(P: PSystem) -> PSystem:
    """The successor of `P`; see `tick_with_applications`."""
    return tick_with_applications(P)[0]


def halted(P: PSystem) -> bool:
    """True when no rule applies in any compartment."""
    return not any(applicable_rules(node) for node, _ in compartments(P))


class RunResult(BaseModel):
    """
    Outcome of running a P-system.

    :param result: Cardinality of the output compartment when the run stopped.
    :param halted: Whether the system halted within the tick budget.
    :param ticks_used: Ticks performed.
    :param output_contents: Contents of the output compartment when the run stopped.
    """

    model_config = ConfigDict(frozen=True)

    result: float = Field(ge=0.0, allow_inf_nan=False)
    halted: bool
    ticks_used: int = Field(ge=0)
    output_contents: FuzzyMultiset = Field(default_factory=FuzzyMultiset)

    @field_serializer("result")
    def _serialize_result(self, result: float) -> float:
        return round_degree(result)

    @field_serializer("output_contents")
    def _serialize_contents(self, contents: FuzzyMultiset) -> Dict[str, Dict[str, Any]]:
        return {
            str(symbol): {"multiplicity": entry.multiplicity, "degree": round_degree(entry.degree)}
            for symbol, entry in sorted(contents.items(), key=lambda item: str(item[0]))
        }


class Simulator(Logger):
    """
    Runs a P-system tick by tick.

    ```python
    simulator = Simulator(system)

    for state, applications in simulator.trace(max_ticks=10):
        print(state.clock, len(applications))

    result = simulator.run(max_ticks=10)
    result.result     # card of the output compartment
    result.halted     # True when no rule applies anymore
    ```
    """

    def __init__(self, system: PSystem) -> None:
        """
        Args:
            system: The initial system.

        Raises:
            ValidationFailure: If the system is malformed
        """
        self.__system = ensure_valid_system(system)

    @property
    def system(self) -> PSystem:
        """The current system."""
        return self.__system

    def step(self) -> List[Application]:
        """Advance one tick and return what fired."""
        self.__system, applications = tick_with_applications(self.__system)
        for application in applications:
            self.logger.debug(
                "tick {}: {} rule {} x{}",
                self.__system.clock,
                application.compartment,
                application.rule_index + 1,
                application.times,
            )
        return applications

    def trace(self, max_ticks: int) -> Iterator[Tuple[PSystem, List[Application]]]:
        """
        Yield the system after each tick until it halts or the budget is spent.

        Raises:
            ValueError: If max_ticks is negative
        """
        if max_ticks < 0:
            raise ValueError(f"max_ticks must be nonnegative, got {max_ticks}")
        for _ in range(max_ticks):
            if halted(self.__system):
                return
            applications = self.step()
            yield self.__system, applications

    def run(self, max_ticks: int) -> RunResult:
        """
        Tick until halted or until `max_ticks` ticks were performed.

        When the budget runs out first, `result` describes the snapshot at the
        horizon rather than a halting result.

        Args:
            max_ticks: Tick budget.

        Returns:
            Result, halting flag, ticks used and output contents.
        """
        ticks_used = sum(1 for _ in self.trace(max_ticks))
        output = self.__system.output.contents
        is_halted = halted(self.__system)
        if is_halted:
            self.logger.info("{} halted after {} tick(s)", self.__system.name, ticks_used)
        else:
            self.logger.info("{} still running after {} tick(s)", self.__system.name, ticks_used)
        return RunResult(
            result=fms_cardinality(output),
            halted=is_halted,
            ticks_used=ticks_used,
            output_contents=output,
        )


def run(P: PSystem, max_ticks: int) -> RunResult:
    """
    Run `P` for at most `max_ticks` ticks.

    Raises:
        ValidationFailure: If the system is malformed
    """
    return Simulator(P).run(max_ticks)
