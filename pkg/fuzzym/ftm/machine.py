from __future__ import annotations

import dataclasses
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Tuple

from ..fuzzy.norms import NormKind
from ..fuzzy.sets import is_degree
from ..violations import ValidationFailure, Violation

__all__ = (
    "Machine",
    "Move",
    "Transition",
    "ensure_valid_machine",
    "is_deterministic",
    "validate_machine",
)


class Move(str, Enum):
    """Head movement after a transition."""

    L = "L"
    N = "N"
    R = "R"

    def __str__(self) -> str:
        return self.value


class Transition(NamedTuple):
    """
    `(q_i, t_i, q_{i+1}, t_{i+1}, d)`: in `from_state` reading `read`, enter
    `to_state`, print `write` and move the head by `move`.

    Transitions order by their fields, which fixes the order of successors and
    the tie-break between equally plausible witnesses.
    """

    from_state: str
    read: str
    to_state: str
    write: str
    move: Move

    def __str__(self) -> str:
        return f"({self.from_state}, {self.read}) -> ({self.to_state}, {self.write}, {self.move})"


@dataclass(frozen=True)
class Machine:
    """
    A nondeterministic fuzzy Turing machine with a unidirectional tape.

    `transitions` is the relation Delta and `mu` the fuzzy relation on it; the
    t-norm of `norm` composes degrees along computational paths. Tape symbols
    are single characters. The hash leaves out `mu`, which equality still compares.

    ```python
    a_to_f = Transition("q0", "a", "qf", "a", Move.N)
    a_to_1 = Transition("q0", "a", "q1", "a", Move.N)
    one_to_f = Transition("q1", "a", "qf", "a", Move.N)

    machine = Machine.build(
        states={"q0", "q1", "qf"},
        tape_alphabet={"a", "_"},
        input_alphabet={"a"},
        blank="_",
        start="q0",
        final="qf",
        delta={a_to_f: 0.6, a_to_1: 0.9, one_to_f: 0.5},
        norm=NormKind.PRODUCT,
    )
    validate_machine(machine)  # []
    ```
    """

    states: FrozenSet[str]
    tape_alphabet: FrozenSet[str]
    input_alphabet: FrozenSet[str]
    transitions: Tuple[Transition, ...]
    blank: str
    start: str
    final: str
    mu: Mapping[Transition, float] = field(default_factory=dict, hash=False)
    norm: NormKind = NormKind.MINIMUM
    name: str = "machine"

    def __post_init__(self) -> None:
        set_ = object.__setattr__
        set_(self, "states", frozenset(self.states))
        set_(self, "tape_alphabet", frozenset(self.tape_alphabet))
        set_(self, "input_alphabet", frozenset(self.input_alphabet))
        set_(self, "transitions", tuple(sorted({_coerce(t) for t in self.transitions})))
        set_(self, "mu", MappingProxyType({_coerce(t): d for t, d in self.mu.items()}))
        set_(self, "norm", NormKind(self.norm))

    @classmethod
    def build(
        cls,
        *,
        states: Iterable[str],
        tape_alphabet: Iterable[str],
        input_alphabet: Iterable[str],
        blank: str,
        start: str,
        final: str,
        delta: Mapping[Transition, float] | Iterable[Transition],
        norm: NormKind = NormKind.MINIMUM,
        name: str = "machine",
    ) -> Machine:
        """
        Build a machine from a transition-to-degree mapping.

        Args:
            delta: Transitions with their degrees; a bare iterable of transitions
                gives every transition degree 1.

        Returns:
            The machine. Call `validate_machine` on it before use.
        """
        mu = dict(delta) if isinstance(delta, Mapping) else dict.fromkeys(delta, 1.0)
        return cls(
            states=frozenset(states),
            tape_alphabet=frozenset(tape_alphabet),
            input_alphabet=frozenset(input_alphabet),
            transitions=tuple(mu),
            blank=blank,
            start=start,
            final=final,
            mu=mu,
            norm=norm,
            name=name,
        )

    def with_norm(self, norm: NormKind) -> Machine:
        """Same machine composing degrees with another t-norm."""
        return dataclasses.replace(self, norm=norm)

    def degree(self, transition: Transition) -> float:
        """`mu(transition)`."""
        return self.mu[transition]

    @cached_property
    def index(self) -> Mapping[Tuple[str, str], Tuple[Transition, ...]]:
        """Transitions grouped by `(from_state, read)`, each group in transition order."""
        groups: Dict[Tuple[str, str], List[Transition]] = defaultdict(list)
        for t in self.transitions:
            groups[(t.from_state, t.read)].append(t)
        return MappingProxyType({key: tuple(group) for key, group in groups.items()})


def _coerce(t: Transition) -> Transition:
    t = Transition(*t)
    if not isinstance(t.move, Move) and t.move in Move._value2member_map_:
        return t._replace(move=Move(t.move))
    return t


def validate_machine(M: Machine) -> List[Violation]:
    """
    Check every structural constraint of the machine.

    Args:
        M: The machine to check.

    Returns:
        All violations found; empty when the machine is well formed.
    """
    violations: List[Violation] = []

    def report(code: str, location: str, message: str) -> None:
        violations.append(Violation(code, location, message))

    if not M.states:
        report("no-states", "states", "a machine needs at least one state")
    for symbol in sorted(M.tape_alphabet):
        if len(symbol) != 1:
            report("long-symbol", "tape", f"tape symbol {symbol!r} must be a single character")
    if extra := sorted(M.input_alphabet - M.tape_alphabet):
        report("input-not-in-tape", "input", f"input symbols {extra} are not tape symbols")
    if M.blank not in M.tape_alphabet:
        report("blank-not-in-tape", "blank", f"blank symbol {M.blank!r} is not a tape symbol")
    if M.blank in M.input_alphabet:
        report("blank-in-input", "blank", "blank symbol must not be an input symbol")
    if M.start not in M.states:
        report("unknown-start", "start", f"start state {M.start!r} is not a state")
    if M.final not in M.states:
        report("unknown-final", "final", f"final state {M.final!r} is not a state")

    for t in M.transitions:
        location = f"transition {t}"
        for state in sorted({t.from_state, t.to_state} - M.states):
            report("unknown-state", location, f"unknown state {state!r}")
        for symbol in sorted({t.read, t.write} - M.tape_alphabet):
            report("unknown-symbol", location, f"unknown tape symbol {symbol!r}")
        if not isinstance(t.move, Move):
            report("bad-move", location, f"move must be one of L, N, R, got {t.move!r}")
        if t not in M.mu:
            report("missing-degree", location, "transition has no degree")
        elif not is_degree(M.mu[t]):
            report("bad-degree", location, f"degree must be in [0,1], got {M.mu[t]!r}")

    members = set(M.transitions)
    for t in sorted(set(M.mu) - members):
        report("stray-degree", f"transition {t}", "degree assigned to a transition outside delta")

    return violations


def ensure_valid_machine(M: Machine) -> Machine:
    """
    Raise unless the machine is well formed.

    Returns:
        The machine, unchanged.

    Raises:
        ValidationFailure: If `validate_machine` reports anything
    """
    if violations := validate_machine(M):
        raise ValidationFailure(violations, subject=f"machine {M.name!r}")
    return M


def is_deterministic(M: Machine) -> bool:
    """True when no two transitions share `(from_state, read)`."""
    return all(len(group) == 1 for group in M.index.values())
