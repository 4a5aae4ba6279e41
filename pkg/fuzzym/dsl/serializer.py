from __future__ import annotations

from typing import Any, Iterable, List, Tuple

from ..ftm.machine import Machine
from ..fuzzy.multisets import FuzzyMultiset
from ..fuzzy.sets import FuzzySet
from ..psystem.system import Compartment, Product, PSystem, Rule, TargetKind

__all__ = (
    "degree_literal",
    "format_fuzzy_multiset",
    "format_fuzzy_set",
    "serialize_fps",
    "serialize_ftm",
)

INDENT = "  "


def degree_literal(value: float) -> str:
    """Exact text of a degree: `repr` without a trailing `.0` (`1`, `0.6`, `1e-05`)."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def _element_key(element: Any) -> Tuple[int, Any]:
    if isinstance(element, (int, float)) and not isinstance(element, bool):
        return 0, element
    return 1, str(element)


def _element_literal(element: Any) -> str:
    return repr(element) if isinstance(element, float) else str(element)


def format_fuzzy_set(A: FuzzySet[Any]) -> str:
    """
    Canonical literal of a fuzzy set, elements in ascending order.

    The universe is appended with `over` when it is larger than the support.

    ```python
    format_fuzzy_set(FuzzySet({6: 0.5, 2: 0.3}))  # '{2@0.3, 6@0.5}'
    ```
    """
    members = ", ".join(
        f"{_element_literal(e)}@{degree_literal(d)}" for e, d in sorted(A.items(), key=lambda item: _element_key(item[0]))
    )
    text = f"{{{members}}}"
    if A.universe != A.support:
        universe = ", ".join(_element_literal(e) for e in sorted(A.universe, key=_element_key))
        text += f" over {{{universe}}}"
    return text


def format_fuzzy_multiset(A: FuzzyMultiset[Any]) -> str:
    """Canonical literal of a fuzzy multiset: `{a:2@0.5, b:1@1}`, symbols sorted."""
    body = ", ".join(
        f"{s}:{e.multiplicity}@{degree_literal(e.degree)}" for s, e in sorted(A.items(), key=lambda item: str(item[0]))
    )
    return f"{{{body}}}"


def serialize_ftm(M: Machine) -> str:
    """
    Canonical text of a machine.

    States, symbols and transitions are sorted and every transition degree is
    written out, so serializing twice gives identical text.
    """
    lines = [
        f"machine {M.name} {{",
        f"{INDENT}states: {' '.join(sorted(M.states))};",
        f"{INDENT}input:{''.join(' ' + s for s in sorted(M.input_alphabet))};",
        f"{INDENT}tape: {' '.join(sorted(M.tape_alphabet))};",
        f"{INDENT}blank: {M.blank};",
        f"{INDENT}start: {M.start};",
        f"{INDENT}final: {M.final};",
        f"{INDENT}norm: {M.norm};",
        f"{INDENT}delta {{",
    ]
    for t in M.transitions:
        lines.append(
            f"{INDENT * 2}({t.from_state}, {t.read}) -> ({t.to_state}, {t.write}, {t.move}) @ {degree_literal(M.mu[t])};"
        )
    lines += [f"{INDENT}}}", "}", ""]
    return "\n".join(lines)


def _product_literal(product: Product) -> str:
    if product.target.kind is TargetKind.IN:
        target = f"in {product.target.child}"
    else:
        target = product.target.kind.value
    return f"{product.symbol}({target}) @ {degree_literal(product.degree)}"


def _rule_literal(rule: Rule) -> str:
    parts: List[str] = [s for s, n in rule.lhs for _ in range(n)]
    parts.append("->")
    parts.extend(_product_literal(p) for p in rule.rhs)
    parts.append(f"@@ {degree_literal(rule.rule_degree)}")
    return " ".join(parts)


def _membrane_lines(C: Compartment, depth: int) -> Iterable[str]:
    pad = INDENT * depth
    yield f"{pad}membrane {C.id} {{"
    yield f"{pad}{INDENT}contents: {format_fuzzy_multiset(C.contents)};"
    for rule in C.rules:
        yield f"{pad}{INDENT}rule: {_rule_literal(rule)};"
    for child in C.children:
        yield from _membrane_lines(child, depth + 1)
    yield f"{pad}}}"


def serialize_fps(P: PSystem) -> str:
    """
    Canonical text of a P-system.

    Children are nested, indented blocks; targets, degrees and rule degrees are
    always written out and empty contents appear as `contents: {}`.
    """
    lines = [f"psystem {P.name} {{", f"{INDENT}norm: {P.norm};", f"{INDENT}output: {P.output_id};"]
    lines.extend(_membrane_lines(P.skin, 1))
    lines += ["}", ""]
    return "\n".join(lines)
