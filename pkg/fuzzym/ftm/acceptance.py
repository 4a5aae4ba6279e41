from __future__ import annotations

import heapq
from enum import Enum
from itertools import product
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from ..fuzzy.norms import tnorm, tnorm_fold
from ..fuzzy.sets import Degree, FuzzySet, round_degree
from ..logger import Logger
from .configuration import Configuration, Word, initial_configuration, join_word, split_word, successor
from .machine import Machine, Transition, ensure_valid_machine

__all__ = (
    "AcceptanceResult",
    "AcceptanceSearch",
    "ComputationPath",
    "LanguageEntry",
    "PathEnumerator",
    "PathStatus",
    "WitnessStep",
    "accept_degree",
    "accept_degree_bruteforce",
    "enumerate_paths",
    "fuzzy_language",
    "path_degree",
    "ranked_language",
    "reachable_degrees",
)


def path_degree(M: Machine, alphas: Sequence[float]) -> float:
    """
    Plausibility degree D of a computational path.

    1 for the empty path, otherwise the machine's t-norm folded left over the
    degrees of the transitions taken.

    Args:
        M: The machine, which supplies the t-norm.
        alphas: `alpha_0, ..., alpha_{n-1}`.

    Returns:
        The path degree.
    """
    return tnorm_fold(M.norm, alphas)


class WitnessStep(NamedTuple):
    transition: Transition
    degree: float


class AcceptanceResult(BaseModel):
    """
    Outcome of an acceptance search for one input word.

    :param degree: `e(w)`, 0 when no accepting path exists within the budget.
    :param witness: A best accepting path, empty when `degree` is 0.
    :param paths_explored: Search nodes expanded (best-first) or maximal paths enumerated (oracle).
    :param truncated: The step budget cut at least one branch that was still alive.
    """

    model_config = ConfigDict(frozen=True)

    degree: Degree
    witness: Tuple[WitnessStep, ...] = ()
    paths_explored: int = Field(default=0, ge=0)
    truncated: bool = False

    @field_serializer("degree")
    def _serialize_degree(self, degree: float) -> float:
        return round_degree(degree)

    @field_serializer("witness")
    def _serialize_witness(self, witness: Tuple[WitnessStep, ...]) -> List[List[Any]]:
        return [[*map(str, transition), round_degree(degree)] for transition, degree in witness]

    @property
    def accepted(self) -> bool:
        return self.degree > 0.0


class PathStatus(str, Enum):
    ACCEPTED = "accepted"
    DEAD = "dead"
    CUT = "cut"


class ComputationPath(NamedTuple):
    """A maximal computational path `S_0, ..., S_n` together with the transitions taken."""

    configurations: Tuple[Configuration, ...]
    transitions: Tuple[Transition, ...]
    alphas: Tuple[float, ...]
    degrees: Tuple[float, ...]
    status: PathStatus

    @property
    def degree(self) -> float:
        return self.degrees[-1]


def _moves(M: Machine, config: Configuration, degree: float) -> List[Tuple[Transition, Configuration, float]]:
    """Applicable transitions that keep the path degree positive."""
    moves = []
    for t in M.index.get((config.state, config.read(M.blank)), ()):
        if (alpha := M.mu[t]) <= 0.0 or (nxt := successor(M, config, t)) is None:
            continue
        if (d := tnorm(M.norm, degree, alpha)) > 0.0:
            moves.append((t, nxt, d))
    return moves


def _rank(p: ComputationPath) -> Tuple[float, Tuple[Transition, ...]]:
    return -p.degree, p.transitions


def _witness(M: Machine, path: Sequence[Transition]) -> Tuple[WitnessStep, ...]:
    return tuple(WitnessStep(t, M.mu[t]) for t in path)


class PathEnumerator(Logger):
    """
    Exhaustive depth-first enumeration of computational paths.

    A path stops when it reaches the final state (accepted), when no transition
    applies (dead) or when the step budget is used up while a transition still
    applies (cut). Exponential in the budget; meant as a reference oracle.

    ```python
    enumerator = PathEnumerator(machine)
    for path in enumerator.paths("a", max_steps=3):
        print(path.status, path.degree)

    enumerator.accept("a", max_steps=3).degree  # 0.6
    ```
    """

    def __init__(self, machine: Machine) -> None:
        """
        Args:
            machine: The machine to enumerate.

        Raises:
            ValidationFailure: If the machine is malformed
        """
        self.__machine = ensure_valid_machine(machine)

    @property
    def machine(self) -> Machine:
        return self.__machine

    def paths(self, w: Word, max_steps: int) -> Iterator[ComputationPath]:
        """
        Yield every maximal path from `S_0` in depth-first, transition order.

        Raises:
            InputRejected: If `w` is not over the input alphabet
            ValueError: If max_steps is negative
        """
        if max_steps < 0:
            raise ValueError(f"max_steps must be nonnegative, got {max_steps}")
        M = self.__machine
        start = initial_configuration(M, w)
        stack: List[Tuple[Tuple[Configuration, ...], Tuple[Transition, ...], Tuple[float, ...], Tuple[float, ...]]]
        stack = [((start,), (), (), (1.0,))]
        while stack:
            configs, path, alphas, degrees = stack.pop()
            config = configs[-1]
            if config.state == M.final:
                yield ComputationPath(configs, path, alphas, degrees, PathStatus.ACCEPTED)
                continue
            moves = _moves(M, config, degrees[-1])
            if not moves:
                yield ComputationPath(configs, path, alphas, degrees, PathStatus.DEAD)
            elif len(path) == max_steps:
                yield ComputationPath(configs, path, alphas, degrees, PathStatus.CUT)
            else:
                for t, nxt, d in reversed(moves):
                    stack.append((configs + (nxt,), path + (t,), alphas + (M.mu[t],), degrees + (d,)))

    def accept(self, w: Word, max_steps: int) -> AcceptanceResult:
        """Acceptance degree by enumerating every path; same contract as `AcceptanceSearch.accept`."""
        best: Optional[ComputationPath] = None
        explored, truncated = 0, False
        for p in self.paths(w, max_steps):
            explored += 1
            if p.status is PathStatus.CUT:
                truncated = True
            elif p.status is PathStatus.ACCEPTED and (best is None or _rank(p) < _rank(best)):
                best = p
        self.logger.debug("Enumerated {} path(s) for {!r}", explored, w)
        if best is None:
            return AcceptanceResult(degree=0.0, paths_explored=explored, truncated=truncated)
        return AcceptanceResult(
            degree=best.degree,
            witness=_witness(self.__machine, best.transitions),
            paths_explored=explored,
            truncated=truncated,
        )


class _Node(NamedTuple):
    # Heap order: highest degree first, then least transition sequence.
    neg_degree: float
    path: Tuple[Transition, ...]
    steps: int
    config: Configuration


class AcceptanceSearch(Logger):
    """
    Best-first computation of acceptance degrees.

    Search nodes are keyed by configuration and steps used and expanded in order
    of decreasing path degree, ties in transition order. Since a t-norm never
    raises a degree and a prefix never sorts after its extensions, the first
    accepting node popped carries `e(w)` and the least witness. A node is skipped
    when the same configuration was already expanded with at least its degree,
    no more steps and a smaller path that is not one of its prefixes.

    ```python
    search = AcceptanceSearch(machine)

    result = search.accept("a", max_steps=3)
    result.degree     # e("a")
    result.witness    # best accepting path with per-transition degrees
    result.truncated  # True when the budget cut a live branch

    search.reachable("a", max_steps=3)  # {configuration: d(S)}
    ```
    """

    def __init__(self, machine: Machine) -> None:
        """
        Args:
            machine: The machine to search.

        Raises:
            ValidationFailure: If the machine is malformed
        """
        self.__machine = ensure_valid_machine(machine)

    @property
    def machine(self) -> Machine:
        return self.__machine

    @staticmethod
    def __dominated(seen: List[Tuple[float, int, Tuple[Transition, ...]]], node: _Node) -> bool:
        # Entries on a proper prefix of the path never dominate it.
        degree = -node.neg_degree
        return any(
            d >= degree and s <= node.steps and p <= node.path and p != node.path[: len(p)]
            for d, s, p in seen
        )

    def __run(
        self, w: Word, max_steps: int, *, stop_on_accept: bool
    ) -> Tuple[Optional[_Node], Dict[Configuration, float], int, bool]:
        if max_steps < 0:
            raise ValueError(f"max_steps must be nonnegative, got {max_steps}")
        M = self.__machine
        heap = [_Node(-1.0, (), 0, initial_configuration(M, w))]
        expanded: Dict[Configuration, List[Tuple[float, int, Tuple[Transition, ...]]]] = {}
        reached: Dict[Configuration, float] = {}
        explored, truncated = 0, False

        while heap:
            node = heapq.heappop(heap)
            seen = expanded.setdefault(node.config, [])
            if self.__dominated(seen, node):
                continue
            degree = -node.neg_degree
            seen.append((degree, node.steps, node.path))
            reached.setdefault(node.config, degree)
            explored += 1

            if node.config.state == M.final:
                if stop_on_accept:
                    return node, reached, explored, truncated
                continue
            moves = _moves(M, node.config, degree)
            if node.steps == max_steps:
                truncated = truncated or bool(moves)
                continue
            for t, nxt, d in moves:
                heapq.heappush(heap, _Node(-d, (*node.path, t), node.steps + 1, nxt))

        return None, reached, explored, truncated

    def accept(self, w: Word, max_steps: int) -> AcceptanceResult:
        """
        Acceptance degree `e(w)` over paths of at most `max_steps` steps.

        Args:
            w: The input word.
            max_steps: Longest path considered.

        Returns:
            Degree, witness, nodes expanded and the truncation flag.

        Raises:
            InputRejected: If `w` is not over the input alphabet
        """
        self.logger.debug("Searching {!r} within {} step(s)", w, max_steps)
        node, _, explored, truncated = self.__run(w, max_steps, stop_on_accept=True)
        if node is None:
            self.logger.info("{!r} not accepted ({} node(s) expanded)", w, explored)
            return AcceptanceResult(degree=0.0, paths_explored=explored, truncated=truncated)
        self.logger.info("{!r} accepted with degree {} after {} step(s)", w, -node.neg_degree, node.steps)
        return AcceptanceResult(
            degree=-node.neg_degree,
            witness=_witness(self.__machine, node.path),
            paths_explored=explored,
            truncated=truncated,
        )

    def reachable(self, w: Word, max_steps: int) -> Dict[Configuration, float]:
        """
        `d(S)` for every configuration reachable within `max_steps` steps.

        Paths stop at the final state, as in `accept`.

        Returns:
            Mapping from configuration to its best path degree.
        """
        _, reached, _, _ = self.__run(w, max_steps, stop_on_accept=False)
        return reached


def accept_degree(M: Machine, w: Word, max_steps: int) -> AcceptanceResult:
    """Acceptance degree of `w` by best-first search. See `AcceptanceSearch`."""
    return AcceptanceSearch(M).accept(w, max_steps)


def accept_degree_bruteforce(M: Machine, w: Word, max_steps: int) -> AcceptanceResult:
    """Acceptance degree of `w` by exhaustive path enumeration. See `PathEnumerator`."""
    return PathEnumerator(M).accept(w, max_steps)


def enumerate_paths(M: Machine, w: Word, max_steps: int) -> Iterator[ComputationPath]:
    """Every maximal computational path on `w` within the budget."""
    return PathEnumerator(M).paths(w, max_steps)


def reachable_degrees(M: Machine, w: Word, max_steps: int) -> Dict[Configuration, float]:
    """`d(S)` for every configuration reachable from `S_0` on `w`."""
    return AcceptanceSearch(M).reachable(w, max_steps)


def fuzzy_language(M: Machine, max_len: int, max_steps: int, cutoff: float = 0.0) -> FuzzySet[str]:
    """
    The fuzzy language `L(M)` restricted to words of length at most `max_len`.

    ```python
    language = fuzzy_language(machine, max_len=1, max_steps=3)
    language("a")   # 0.6
    language("")    # 0.0
    ```

    Args:
        M: The machine.
        max_len: Longest word considered.
        max_steps: Step budget per word.
        cutoff: Words must be accepted with a degree above this to be members.

    Returns:
        A fuzzy set whose universe is every word over the input alphabet up to `max_len`.
    """
    if max_len < 0:
        raise ValueError(f"max_len must be nonnegative, got {max_len}")
    search = AcceptanceSearch(M)
    alphabet = sorted(M.input_alphabet)
    words = [join_word(letters) for n in range(max_len + 1) for letters in product(alphabet, repeat=n)]
    members = {}
    for w in words:
        if (degree := search.accept(split_word(w), max_steps).degree) > cutoff:
            members[w] = degree
    search.logger.info("Language holds {} of {} word(s)", len(members), len(words))
    return FuzzySet(members, universe=words)


class LanguageEntry(BaseModel):
    """One word of a fuzzy language with its acceptance degree."""

    model_config = ConfigDict(frozen=True)

    word: str
    degree: Degree

    @field_serializer("degree")
    def _serialize_degree(self, degree: float) -> float:
        return round_degree(degree)


def ranked_language(language: FuzzySet[str]) -> List[LanguageEntry]:
    """Members by decreasing degree, ties in lexicographic order."""
    return [
        LanguageEntry(word=word, degree=degree)
        for word, degree in sorted(language.items(), key=lambda item: (-item[1], item[0]))
    ]
