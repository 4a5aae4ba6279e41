from __future__ import annotations

import math
import re
from typing import Any, Callable, Dict, List, Optional, Set, Tuple, TypeVar

from ..ftm.machine import Machine, Move, Transition, validate_machine
from ..fuzzy.multisets import FuzzyMultiset
from ..fuzzy.norms import NormKind
from ..fuzzy.sets import FuzzySet
from ..logger import Logger
from ..psystem.system import Compartment, PSystem, Product, Rule, Target, TargetKind, validate_system
from ..violations import ValidationFailure, Violation
from .lexer import ParseError, SourceSpan, Token, TokenKind, tokenize

__all__ = (
    "Parser",
    "parse_fps",
    "parse_ftm",
    "parse_fuzzy_multiset",
    "parse_fuzzy_set",
)

R = TypeVar("R")

_MACHINE_CLAUSES = ("states", "input", "tape", "blank", "start", "final", "norm", "delta")
_REQUIRED_CLAUSES = ("states", "input", "tape", "blank", "start", "final", "delta")
_INTEGER = re.compile(r"-?\d+")
_SYMBOL_KINDS = (TokenKind.NAME, TokenKind.NUMBER, TokenKind.SYMBOL)


class Parser(Logger):
    """
    Recursive-descent parser for machine, P-system and fuzzy set descriptions.

    Syntax errors raise `ParseError` with the position of the offending token.
    A description that parses but breaks a structural invariant raises
    `ValidationFailure` instead.

    ```python
    machine = Parser('''
        machine two_path {
          states: q0 q1 qf;
          input: a;
          tape: _ a;
          blank: _;
          start: q0;
          final: qf;
          norm: product;
          delta {
            (q0, a) -> (qf, a, N) @ 0.6;
            (q0, a) -> (q1, a, N) @ 0.9;
            (q1, a) -> (qf, a, N) @ 0.5;
          }
        }
    ''').parse_ftm()

    Parser("{2@0.3, 6@0.5}").parse_fuzzy_set()
    Parser("fuzzy set (2,0.3), (6,0.5)").parse_fuzzy_set()  # same set
    ```
    """

    def __init__(self, text: str) -> None:
        """
        Args:
            text: Source text.

        Raises:
            ParseError: If the text holds a character that starts no token
        """
        self.__tokens = tokenize(text)
        self.__index = 0

    # Token cursor

    @property
    def nt(self) -> Token:
        """Next token."""
        return self.__tokens[self.__index]

    def advance(self) -> Token:
        token = self.nt
        if token.kind is not TokenKind.EOF:
            self.__index += 1
        return token

    def peek(self, kind: TokenKind) -> bool:
        return self.nt.kind is kind

    def peek_kw(self, value: str) -> bool:
        return self.nt.kind is TokenKind.NAME and self.nt.text == value

    def error(self, expected: str, note: Optional[str] = None, token: Optional[Token] = None) -> ParseError:
        token = token or self.nt
        return ParseError(token.span, expected, token.describe(), note)

    def match(self, kind: TokenKind) -> Token:
        if not self.peek(kind):
            raise self.error(kind.value)
        return self.advance()

    def match_kw(self, value: str) -> Token:
        if not self.peek_kw(value):
            raise self.error(f"keyword '{value}'")
        return self.advance()

    def match_eof(self) -> None:
        if not self.peek(TokenKind.EOF):
            raise self.error(TokenKind.EOF.value)

    # Terminals

    def ident(self) -> str:
        if self.nt.kind not in (TokenKind.NAME, TokenKind.NUMBER):
            raise self.error("identifier")
        return self.advance().text

    def symbol(self) -> str:
        if self.nt.kind not in _SYMBOL_KINDS:
            raise self.error("symbol")
        return self.advance().text

    def degree(self) -> float:
        if not self.peek(TokenKind.NUMBER):
            raise self.error("degree")
        value = float(self.nt.text)
        if not (math.isfinite(value) and 0.0 <= value <= 1.0):
            raise self.error("degree in [0,1]", "degree must be in [0,1]")
        self.advance()
        return value

    def multiplicity(self) -> int:
        if not (self.peek(TokenKind.NUMBER) and self.nt.text.isdigit()):
            raise self.error("multiplicity", "multiplicity must be a nonnegative integer")
        return int(self.advance().text)

    def norm(self) -> NormKind:
        if not self.peek(TokenKind.NAME):
            raise self.error("norm name")
        try:
            kind = NormKind.parse(self.nt.text)
        except ValueError:
            raise self.error("norm 'min', 'product' or 'lukasiewicz'") from None
        self.advance()
        return kind

    def element(self) -> Any:
        if self.nt.kind not in _SYMBOL_KINDS:
            raise self.error("element")
        token = self.advance()
        if token.kind is TokenKind.NUMBER:
            return int(token.text) if _INTEGER.fullmatch(token.text) else float(token.text)
        return token.text

    def repeat(self, item: Callable[[], R], *, until: TokenKind, at_least: int = 0, what: str = "item") -> List[R]:
        items = []
        while not self.peek(until):
            items.append(item())
        if len(items) < at_least:
            raise self.error(what)
        return items

    # Fuzzy machines

    def parse_ftm(self) -> Machine:
        """
        Parse a `machine name { ... }` block.

        Clauses may come in any order, each exactly once; `norm` defaults to `min`.

        Raises:
            ParseError: On the first syntax error
            ValidationFailure: If the parsed machine is malformed
        """
        self.match_kw("machine")
        name = self.ident()
        self.match(TokenKind.LBRACE)
        clauses: Dict[str, Any] = {}
        violations: List[Violation] = []

        while not self.peek(TokenKind.RBRACE):
            token = self.nt
            if token.kind is not TokenKind.NAME or token.text not in _MACHINE_CLAUSES:
                raise self.error("machine clause or '}'")
            if token.text in clauses:
                raise self.error("machine clause or '}'", f"duplicate '{token.text}' clause")
            self.advance()
            if token.text == "delta":
                clauses["delta"] = self.__delta(violations)
                continue
            self.match(TokenKind.COLON)
            clauses[token.text] = self.__machine_clause(token.text)
            self.match(TokenKind.SEMI)

        for required in _REQUIRED_CLAUSES:
            if required not in clauses:
                raise self.error(f"'{required}' clause", f"machine {name} has no '{required}' clause")
        self.match(TokenKind.RBRACE)
        self.match_eof()

        machine = Machine.build(
            states=clauses["states"],
            tape_alphabet=clauses["tape"],
            input_alphabet=clauses["input"],
            blank=clauses["blank"],
            start=clauses["start"],
            final=clauses["final"],
            delta=clauses["delta"],
            norm=clauses.get("norm", NormKind.MINIMUM),
            name=name,
        )
        if violations := violations + validate_machine(machine):
            raise ValidationFailure(violations, subject=f"machine {name!r}")
        self.logger.debug("Parsed machine {} with {} transition(s)", name, len(machine.transitions))
        return machine

    def __machine_clause(self, keyword: str) -> Any:
        if keyword == "states":
            return self.repeat(self.ident, until=TokenKind.SEMI, at_least=1, what="state name")
        if keyword == "input":
            return self.repeat(self.symbol, until=TokenKind.SEMI)
        if keyword == "tape":
            return self.repeat(self.symbol, until=TokenKind.SEMI, at_least=1, what="tape symbol")
        if keyword == "blank":
            return self.symbol()
        if keyword == "norm":
            return self.norm()
        return self.ident()

    def __delta(self, violations: List[Violation]) -> Dict[Transition, float]:
        self.match(TokenKind.LBRACE)
        mu: Dict[Transition, float] = {}
        while not self.peek(TokenKind.RBRACE):
            start = self.nt
            transition, degree = self.__transition()
            if transition in mu:
                violations.append(
                    Violation("duplicate-transition", f"transition {transition}", f"listed again at {start.span}")
                )
                continue
            mu[transition] = degree
        self.match(TokenKind.RBRACE)
        return mu

    def __transition(self) -> Tuple[Transition, float]:
        self.match(TokenKind.LPAREN)
        from_state = self.ident()
        self.match(TokenKind.COMMA)
        read = self.symbol()
        self.match(TokenKind.RPAREN)
        self.match(TokenKind.ARROW)
        self.match(TokenKind.LPAREN)
        to_state = self.ident()
        self.match(TokenKind.COMMA)
        write = self.symbol()
        self.match(TokenKind.COMMA)
        if not (self.peek(TokenKind.NAME) and self.nt.text in Move._value2member_map_):
            raise self.error("move L, N or R")
        move = Move(self.advance().text)
        self.match(TokenKind.RPAREN)
        degree = 1.0
        if self.peek(TokenKind.AT):
            self.advance()
            degree = self.degree()
        self.match(TokenKind.SEMI)
        return Transition(from_state, read, to_state, write, move), degree

    # Fuzzy P-systems

    def parse_fps(self) -> PSystem:
        """
        Parse a `psystem name { ... }` block holding exactly one skin membrane.

        Raises:
            ParseError: On the first syntax error
            ValidationFailure: If the parsed system is malformed
        """
        self.match_kw("psystem")
        name = self.ident()
        self.match(TokenKind.LBRACE)
        norm: Optional[NormKind] = None
        output: Optional[str] = None
        skin: Optional[Compartment] = None
        spans: Dict[str, List[SourceSpan]] = {}

        while not self.peek(TokenKind.RBRACE):
            token = self.nt
            if self.peek_kw("norm") and norm is None:
                self.advance()
                self.match(TokenKind.COLON)
                norm = self.norm()
                self.match(TokenKind.SEMI)
            elif self.peek_kw("output") and output is None:
                self.advance()
                self.match(TokenKind.COLON)
                output = self.ident()
                self.match(TokenKind.SEMI)
            elif self.peek_kw("membrane") and skin is None:
                skin = self.__membrane(spans)
            elif token.kind is TokenKind.NAME and token.text in ("norm", "output", "membrane"):
                raise self.error("P-system clause or '}'", f"duplicate '{token.text}' clause")
            else:
                raise self.error("P-system clause or '}'")

        if output is None:
            raise self.error("'output' clause", f"psystem {name} has no 'output' clause")
        if skin is None:
            raise self.error("'membrane' block", f"psystem {name} has no skin membrane")
        self.match(TokenKind.RBRACE)
        self.match_eof()

        system = PSystem(skin, output_id=output, norm=norm or NormKind.MINIMUM, name=name)
        duplicates = [
            Violation(
                "duplicate-id",
                f"membrane {id_}",
                "declared at " + " and ".join(str(span) for span in where),
            )
            for id_, where in sorted(spans.items())
            if len(where) > 1
        ]
        violations = duplicates + [v for v in validate_system(system) if v.code != "duplicate-id"]
        if violations:
            raise ValidationFailure(violations, subject=f"P-system {name!r}")
        self.logger.debug("Parsed P-system {} with {} membrane(s)", name, len(spans))
        return system

    def __membrane(self, spans: Dict[str, List[SourceSpan]]) -> Compartment:
        self.match_kw("membrane")
        token = self.nt
        id_ = self.ident()
        spans.setdefault(id_, []).append(token.span)
        self.match(TokenKind.LBRACE)
        contents: Optional[FuzzyMultiset[str]] = None
        rules: List[Rule] = []
        children: List[Compartment] = []

        while not self.peek(TokenKind.RBRACE):
            if self.peek_kw("contents"):
                if contents is not None:
                    raise self.error("membrane item or '}'", "duplicate 'contents' clause")
                self.advance()
                self.match(TokenKind.COLON)
                contents = self.multiset_literal()
                self.match(TokenKind.SEMI)
            elif self.peek_kw("rule"):
                rules.append(self.__rule())
            elif self.peek_kw("membrane"):
                children.append(self.__membrane(spans))
            else:
                raise self.error("'contents', 'rule', 'membrane' or '}'")
        self.match(TokenKind.RBRACE)
        return Compartment(id_, contents or FuzzyMultiset(), tuple(rules), tuple(children))

    def __rule(self) -> Rule:
        self.match_kw("rule")
        self.match(TokenKind.COLON)
        if self.peek(TokenKind.ARROW):
            raise self.error("symbol", "a rule must consume at least one object")
        lhs = self.repeat(self.symbol, until=TokenKind.ARROW)
        self.match(TokenKind.ARROW)
        rhs = []
        while self.nt.kind in _SYMBOL_KINDS:
            rhs.append(self.__product())
        rule_degree = 1.0
        if self.peek(TokenKind.ATAT):
            self.advance()
            rule_degree = self.degree()
        self.match(TokenKind.SEMI)
        return Rule(lhs, rhs, rule_degree)

    def __product(self) -> Product:
        symbol = self.symbol()
        target = Target(TargetKind.HERE)
        if self.peek(TokenKind.LPAREN):
            self.advance()
            if self.peek_kw("here"):
                self.advance()
            elif self.peek_kw("out"):
                self.advance()
                target = Target(TargetKind.OUT)
            elif self.peek_kw("in"):
                self.advance()
                target = Target.into(self.ident())
            else:
                raise self.error("target 'here', 'out' or 'in <id>'")
            self.match(TokenKind.RPAREN)
        degree = 1.0
        if self.peek(TokenKind.AT):
            self.advance()
            degree = self.degree()
        return Product(symbol, target, degree)

    # Literals

    def multiset_literal(self) -> FuzzyMultiset[str]:
        """`{a:2@0.5, b}`; multiplicity and degree default to 1."""
        self.match(TokenKind.LBRACE)
        entries: Dict[str, Tuple[int, float]] = {}
        while not self.peek(TokenKind.RBRACE):
            if entries:
                self.match(TokenKind.COMMA)
            token = self.nt
            symbol = self.symbol()
            if symbol in entries:
                raise self.error("new object", f"object {symbol!r} listed twice", token)
            multiplicity, degree = 1, 1.0
            if self.peek(TokenKind.COLON):
                self.advance()
                multiplicity = self.multiplicity()
            if self.peek(TokenKind.AT):
                self.advance()
                degree = self.degree()
            entries[symbol] = (multiplicity, degree)
        self.match(TokenKind.RBRACE)
        return FuzzyMultiset(entries)

    def parse_fuzzy_multiset(self) -> FuzzyMultiset[str]:
        """Parse a lone fuzzy multiset literal."""
        bag = self.multiset_literal()
        self.match_eof()
        return bag

    def parse_fuzzy_set(self) -> FuzzySet[Any]:
        """
        Parse `{x@d, ...}` or `fuzzy set (x,d), ...`, optionally followed by
        `over {x, ...}` naming the universe.

        Integer and decimal elements become numbers, others stay strings.

        Raises:
            ParseError: On a syntax error, a repeated element or an element outside the universe
        """
        members: List[Tuple[Token, Any, float]] = []
        if self.peek(TokenKind.LBRACE):
            self.advance()
            while not self.peek(TokenKind.RBRACE):
                if members:
                    self.match(TokenKind.COMMA)
                token = self.nt
                element = self.element()
                degree = 1.0
                if self.peek(TokenKind.AT):
                    self.advance()
                    degree = self.degree()
                members.append((token, element, degree))
            self.advance()
        elif self.peek_kw("fuzzy"):
            self.advance()
            self.match_kw("set")
            while True:
                self.match(TokenKind.LPAREN)
                token = self.nt
                element = self.element()
                self.match(TokenKind.COMMA)
                degree = self.degree()
                self.match(TokenKind.RPAREN)
                members.append((token, element, degree))
                if not self.peek(TokenKind.COMMA):
                    break
                self.advance()
        else:
            raise self.error("'{' or 'fuzzy set'")

        seen: Set[Any] = set()
        for token, element, _ in members:
            if element in seen:
                raise self.error("new element", f"element {element!r} listed twice", token)
            seen.add(element)

        universe: Optional[List[Any]] = None
        if self.peek_kw("over"):
            self.advance()
            self.match(TokenKind.LBRACE)
            universe = []
            while not self.peek(TokenKind.RBRACE):
                if universe:
                    self.match(TokenKind.COMMA)
                universe.append(self.element())
            self.advance()
            for token, element, degree in members:
                if degree > 0.0 and element not in universe:
                    raise self.error("element of the universe", "element outside the declared universe", token)
        self.match_eof()
        return FuzzySet(((e, d) for _, e, d in members), universe=universe)


def parse_ftm(text: str) -> Machine:
    """Parse a machine description. See `Parser.parse_ftm`."""
    return Parser(text).parse_ftm()


def parse_fps(text: str) -> PSystem:
    """Parse a P-system description. See `Parser.parse_fps`."""
    return Parser(text).parse_fps()


def parse_fuzzy_set(text: str) -> FuzzySet[Any]:
    """Parse a fuzzy set literal. See `Parser.parse_fuzzy_set`."""
    return Parser(text).parse_fuzzy_set()


def parse_fuzzy_multiset(text: str) -> FuzzyMultiset[str]:
    """Parse a fuzzy multiset literal such as `{a:2@0.5, b}`."""
    return Parser(text).parse_fuzzy_multiset()
