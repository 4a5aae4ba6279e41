from __future__ import annotations

from typing import List, NamedTuple, Sequence, Tuple, Union

from .machine import Machine, Move, Transition

__all__ = (
    "Configuration",
    "InputRejected",
    "Word",
    "initial_configuration",
    "join_word",
    "split_word",
    "step",
    "successor",
)

Word = Union[str, Sequence[str]]
"""An input string: a `str` read character by character, or a sequence of symbols."""


class InputRejected(ValueError):
    """Raised when an input word holds a symbol outside the input alphabet."""

    def __init__(self, symbol: str, position: int) -> None:
        self.symbol = symbol
        self.position = position
        super().__init__(f"Input symbol {symbol!r} at position {position} is not in the input alphabet")


class Configuration(NamedTuple):
    """
    Tape contents, head position and control state.

    Cells past the end of `tape` hold the blank symbol, and trailing blanks are
    never stored, so equal configurations compare equal.
    """

    tape: Tuple[str, ...]
    head: int
    state: str

    def read(self, blank: str) -> str:
        """Symbol under the head."""
        return self.tape[self.head] if self.head < len(self.tape) else blank

    def render(self, blank: str) -> str:
        """Tape with the scanned cell bracketed, e.g. `1[1]_ @ q1`."""
        cells = list(self.tape) + [blank] * (self.head + 1 - len(self.tape))
        cells[self.head] = f"[{cells[self.head]}]"
        return f"{''.join(cells)} @ {self.state}"


def split_word(word: Word) -> Tuple[str, ...]:
    """Symbols of a word; a string containing whitespace splits on it."""
    if isinstance(word, str):
        return tuple(word.split()) if any(c.isspace() for c in word) else tuple(word)
    return tuple(word)


def join_word(symbols: Sequence[str]) -> str:
    """Inverse of `split_word` for single-character symbols."""
    return "".join(symbols)


def _trim(cells: Sequence[str], blank: str) -> Tuple[str, ...]:
    end = len(cells)
    while end and cells[end - 1] == blank:
        end -= 1
    return tuple(cells[:end])


def initial_configuration(M: Machine, w: Word) -> Configuration:
    """
    The input is printed from the leftmost cell, the head scans that cell and the
    machine is in its start state.

    Args:
        M: The machine.
        w: The input word.

    Returns:
        `S_0` for `w`.

    Raises:
        InputRejected: If a symbol of `w` is not an input symbol
    """
    symbols = split_word(w)
    for position, symbol in enumerate(symbols):
        if symbol not in M.input_alphabet:
            raise InputRejected(symbol, position)
    return Configuration(_trim(symbols, M.blank), 0, M.start)


def successor(M: Machine, c: Configuration, t: Transition) -> Configuration | None:
    """
    Apply one transition.

    Returns:
        The next configuration, or None when the transition does not match `c`
        or would move the head left of cell 0.
    """
    if t.from_state != c.state or t.read != c.read(M.blank):
        return None
    if t.move is Move.L and c.head == 0:
        return None
    cells = list(c.tape)
    if c.head >= len(cells):
        cells.extend([M.blank] * (c.head + 1 - len(cells)))
    cells[c.head] = t.write
    head = c.head + (1 if t.move is Move.R else -1 if t.move is Move.L else 0)
    return Configuration(_trim(cells, M.blank), head, t.to_state)


def step(M: Machine, c: Configuration) -> List[Tuple[Configuration, float]]:
    """
    Every configuration reachable from `c` in one step, with `mu` of the
    transition used.

    ```python
    step(machine, Configuration(("0", "1"), 0, "q0"))
    # [(Configuration(tape=("1", "1"), head=1, state="q1"), 0.8)]
    ```

    Args:
        M: The machine.
        c: The current configuration.

    Returns:
        `(successor, degree)` pairs in transition order; empty on a dead end.
    """
    result = []
    for t in M.index.get((c.state, c.read(M.blank)), ()):
        if (nxt := successor(M, c, t)) is not None:
            result.append((nxt, M.mu[t]))
    return result
