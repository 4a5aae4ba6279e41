from pathlib import Path

import pytest
from loguru import logger

from fuzzym.ftm import Machine, Move, Transition
from fuzzym.fuzzy import FuzzyMultiset, NormKind
from fuzzym.psystem import Compartment, Product, PSystem, Rule

DATA = Path(__file__).parent / "data"

DIRECT = Transition("q0", "a", "qf", "a", Move.N)
DETOUR = Transition("q0", "a", "q1", "a", Move.N)
RETURN = Transition("q1", "a", "qf", "a", Move.N)


@pytest.fixture
def caplog(caplog):
    handler_id = logger.add(caplog.handler, format="{message}")
    yield caplog
    logger.remove(handler_id)


@pytest.fixture
def data_dir() -> Path:
    return DATA


def make_two_path(norm: NormKind = NormKind.PRODUCT, detour: float = 0.9, back: float = 0.5) -> Machine:
    return Machine.build(
        states={"q0", "q1", "qf"},
        tape_alphabet={"_", "a"},
        input_alphabet={"a"},
        blank="_",
        start="q0",
        final="qf",
        delta={DIRECT: 0.6, DETOUR: detour, RETURN: back},
        norm=norm,
        name="two_path",
    )


@pytest.fixture
def two_path() -> Machine:
    """Accepts "a" along a direct 0.6 path or a 0.9 then 0.5 detour."""
    return make_two_path()


@pytest.fixture
def decay() -> PSystem:
    """`{a:2@1}` with `a -> b @ 0.6` under the product norm."""
    skin = Compartment(
        "skin",
        contents=FuzzyMultiset({"a": (2, 1.0)}),
        rules=(Rule({"a": 1}, [Product("b", degree=0.6)]),),
    )
    return PSystem(skin, output_id="skin", norm=NormKind.PRODUCT, name="decay")


@pytest.fixture
def ping_pong() -> PSystem:
    skin = Compartment(
        "skin",
        contents=FuzzyMultiset.crisp(["a"]),
        rules=(Rule(["a"], [Product("b")]), Rule(["b"], [Product("a")])),
    )
    return PSystem(skin, output_id="skin", name="ping_pong")


@pytest.fixture
def two_path_with():
    """Factory for the two-path machine with another norm or detour degrees."""
    return make_two_path
