import itertools
import math

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from fuzzym.ftm import (
    AcceptanceResult,
    AcceptanceSearch,
    Configuration,
    InputRejected,
    Machine,
    Move,
    PathStatus,
    Transition,
    accept_degree,
    accept_degree_bruteforce,
    enumerate_paths,
    ensure_valid_machine,
    fuzzy_language,
    initial_configuration,
    is_deterministic,
    path_degree,
    ranked_language,
    reachable_degrees,
    split_word,
    step,
    successor,
    validate_machine,
)
from fuzzym.fuzzy import NormKind, tnorm_fold
from fuzzym.violations import ValidationFailure

TOL = 1e-12


def machine(delta, *, states=("q0", "q1", "qf"), tape=("_", "0", "1"), inputs=("0", "1"), norm=NormKind.PRODUCT):
    return Machine.build(
        states=states,
        tape_alphabet=tape,
        input_alphabet=inputs,
        blank="_",
        start="q0",
        final="qf",
        delta=delta,
        norm=norm,
    )


class TestValidation:
    def test_well_formed(self, two_path):
        assert validate_machine(two_path) == []
        assert ensure_valid_machine(two_path) is two_path

    def test_blank_in_input(self):
        broken = machine({}, inputs=("0", "_"))
        messages = [v.message for v in validate_machine(broken)]
        assert "blank symbol must not be an input symbol" in messages

    def test_unknown_state_names_the_transition(self):
        stray = Transition("q0", "0", "q9", "0", Move.R)
        violations = validate_machine(machine({stray: 0.5}))
        assert [v.code for v in violations] == ["unknown-state"]
        assert "q9" in violations[0].message
        assert str(stray) in violations[0].location

    def test_structural_problems_are_all_reported(self):
        bad = Machine(
            states=frozenset({"q0"}),
            tape_alphabet=frozenset({"ab", "_"}),
            input_alphabet=frozenset({"c"}),
            transitions=(Transition("q0", "_", "q0", "_", "X"),),
            blank="_",
            start="s",
            final="f",
            mu={Transition("q0", "_", "q0", "_", "X"): 1.5},
        )
        codes = {v.code for v in validate_machine(bad)}
        assert {
            "long-symbol",
            "input-not-in-tape",
            "unknown-start",
            "unknown-final",
            "bad-move",
            "bad-degree",
        } <= codes

    def test_degree_given_as_text_is_rejected(self):
        t = Transition("q0", "0", "qf", "0", Move.N)
        assert [v.code for v in validate_machine(machine({t: "0.5"}))] == ["bad-degree"]

    def test_degree_must_cover_delta_exactly(self):
        t = Transition("q0", "0", "qf", "0", Move.N)
        other = Transition("q0", "1", "qf", "1", Move.N)
        M = Machine(
            states=frozenset({"q0", "qf"}),
            tape_alphabet=frozenset({"_", "0", "1"}),
            input_alphabet=frozenset({"0", "1"}),
            transitions=(t,),
            blank="_",
            start="q0",
            final="qf",
            mu={other: 1.0},
        )
        assert {v.code for v in validate_machine(M)} == {"missing-degree", "stray-degree"}

    def test_ensure_raises(self):
        with pytest.raises(ValidationFailure, match="blank symbol must not be an input symbol") as info:
            ensure_valid_machine(machine({}, inputs=("_",)))
        assert info.value.codes == ["blank-in-input"]

    def test_plain_move_letters_are_coerced(self):
        M = machine({("q0", "0", "qf", "0", "R"): 1.0})
        assert M.transitions[0].move is Move.R
        assert validate_machine(M) == []

    def test_machines_are_hashable(self, two_path):
        twin = Machine.build(
            states=two_path.states,
            tape_alphabet=two_path.tape_alphabet,
            input_alphabet=two_path.input_alphabet,
            blank=two_path.blank,
            start=two_path.start,
            final=two_path.final,
            delta=dict(two_path.mu),
            norm=two_path.norm,
            name=two_path.name,
        )
        assert twin == two_path
        assert hash(twin) == hash(two_path)
        assert len({two_path, twin, two_path.with_norm(NormKind.MINIMUM)}) == 2


class TestDeterminism:
    def test_single_transition(self):
        assert is_deterministic(machine({Transition("q0", "0", "qf", "0", Move.N): 1.0}))

    def test_two_images(self, two_path):
        assert not is_deterministic(two_path)

    def test_empty_delta(self):
        assert is_deterministic(machine({}))


class TestConfigurations:
    def test_initial_configuration(self):
        M = machine({})
        assert initial_configuration(M, "01") == Configuration(("0", "1"), 0, "q0")
        assert initial_configuration(M, "") == Configuration((), 0, "q0")

    def test_input_rejected(self):
        with pytest.raises(InputRejected) as info:
            initial_configuration(machine({}), "0_1")
        assert info.value.symbol == "_"
        assert info.value.position == 1

    def test_words(self):
        assert split_word("ab") == ("a", "b")
        assert split_word("a b") == ("a", "b")
        assert split_word(["a", "b"]) == ("a", "b")

    def test_step(self):
        M = machine({Transition("q0", "0", "q1", "1", Move.R): 0.8})
        assert step(M, Configuration(("0", "1"), 0, "q0")) == [(Configuration(("1", "1"), 1, "q1"), 0.8)]

    def test_dead_end(self):
        M = machine({Transition("q0", "0", "q1", "1", Move.R): 0.8})
        assert step(M, Configuration(("0",), 0, "q1")) == []

    def test_moving_right_reads_blank(self):
        M = machine({Transition("q0", "1", "q1", "1", Move.R): 1.0, Transition("q1", "_", "qf", "0", Move.N): 1.0})
        [(after, _)] = step(M, Configuration(("1",), 0, "q0"))
        assert after.read(M.blank) == "_"
        [(final, _)] = step(M, after)
        assert final == Configuration(("1", "0"), 1, "qf")

    def test_left_at_cell_zero_is_inapplicable(self):
        t = Transition("q0", "0", "q1", "0", Move.L)
        M = machine({t: 1.0})
        assert successor(M, Configuration(("0",), 0, "q0"), t) is None
        assert step(M, Configuration(("0",), 0, "q0")) == []

    def test_trailing_blanks_are_trimmed(self):
        M = machine({Transition("q0", "1", "q1", "_", Move.L): 1.0})
        [(after, _)] = step(M, Configuration(("0", "1"), 1, "q0"))
        assert after == Configuration(("0",), 0, "q1")

    def test_step_order_is_transition_order(self):
        a = Transition("q0", "0", "q1", "0", Move.N)
        b = Transition("q0", "0", "qf", "0", Move.N)
        M = machine({b: 0.3, a: 0.7})
        assert [degree for _, degree in step(M, Configuration(("0",), 0, "q0"))] == [0.7, 0.3]

    def test_render(self):
        assert Configuration(("1", "1"), 2, "q1").render("_") == "11[_] @ q1"


class TestPathDegree:
    def test_examples(self):
        assert path_degree(machine({}), []) == 1.0
        assert path_degree(machine({}, norm=NormKind.PRODUCT), [0.8, 0.5]) == 0.4
        assert path_degree(machine({}, norm=NormKind.MINIMUM), [0.8, 0.5]) == 0.5


class TestAcceptance:
    @pytest.mark.parametrize("engine", [accept_degree, accept_degree_bruteforce])
    @pytest.mark.parametrize("norm", [NormKind.PRODUCT, NormKind.MINIMUM])
    def test_two_path_example(self, two_path, engine, norm):
        result = engine(two_path.with_norm(norm), "a", 3)
        assert result.degree == 0.6
        assert [s.transition for s in result.witness] == [
            Transition("q0", "a", "qf", "a", Move.N)
        ]
        assert not result.truncated

    def test_norm_sensitivity(self, two_path_with):
        flipped = two_path_with(detour=1.0, back=0.7)
        result = accept_degree(flipped, "a", 3)
        assert math.isclose(result.degree, 0.7)
        assert len(result.witness) == 2

    def test_empty_word_not_accepted(self, two_path):
        result = accept_degree(two_path, "", 3)
        assert result.degree == 0.0
        assert result.witness == ()
        assert not result.accepted

    def test_empty_delta(self):
        for engine in (accept_degree, accept_degree_bruteforce):
            result = engine(machine({}), "01", 5)
            assert result.degree == 0.0
            assert not result.truncated

    def test_non_accepting_loop(self):
        loop = machine({Transition("q0", "0", "q0", "0", Move.N): 1.0})
        for engine in (accept_degree, accept_degree_bruteforce):
            result = engine(loop, "0", 10)
            assert result.degree == 0.0
            assert result.truncated

    def test_growing_tape_is_truncated(self):
        runaway = machine({Transition("q0", "_", "q0", "1", Move.R): 1.0})
        for engine in (accept_degree, accept_degree_bruteforce):
            result = engine(runaway, "", 10)
            assert result.degree == 0.0
            assert result.truncated

    def test_deterministic_chain_folds_degrees(self):
        alphas = [0.9, 0.8, 0.7]
        chain = machine(
            {
                Transition("q0", "0", "q1", "0", Move.R): alphas[0],
                Transition("q1", "1", "q2", "1", Move.R): alphas[1],
                Transition("q2", "_", "qf", "_", Move.N): alphas[2],
            },
            states=("q0", "q1", "q2", "qf"),
        )
        for engine in (accept_degree, accept_degree_bruteforce):
            assert engine(chain, "01", 3).degree == tnorm_fold(NormKind.PRODUCT, alphas)
            assert engine(chain, "01", 2).degree == 0.0

    def test_zero_degree_transition_is_skipped(self):
        M = machine({Transition("q0", "0", "qf", "0", Move.N): 0.0})
        assert accept_degree(M, "0", 3).degree == 0.0
        assert list(enumerate_paths(M, "0", 3))[0].status is PathStatus.DEAD

    def test_lukasiewicz_paths_reaching_zero_are_dropped(self):
        M = machine(
            {
                Transition("q0", "0", "q1", "0", Move.N): 0.5,
                Transition("q1", "0", "qf", "0", Move.N): 0.4,
            },
            norm=NormKind.LUKASIEWICZ,
        )
        assert accept_degree(M, "0", 5).degree == 0.0
        assert accept_degree_bruteforce(M, "0", 5).degree == 0.0

    def test_tie_break_prefers_least_transition_sequence(self):
        hop = Transition("q0", "0", "q1", "0", Move.N)
        back = Transition("q1", "0", "qf", "0", Move.N)
        direct = Transition("q0", "0", "qf", "0", Move.R)
        M = machine({hop: 1.0, back: 0.5, direct: 0.5}, norm=NormKind.MINIMUM)
        for engine in (accept_degree, accept_degree_bruteforce):
            result = engine(M, "0", 4)
            assert result.degree == 0.5
            assert [s.transition for s in result.witness] == [hop, back]

    def test_tie_break_follows_a_loop_that_sorts_first(self):
        loop = Transition("q0", "0", "q0", "0", Move.N)
        leave = Transition("q0", "0", "qf", "0", Move.N)
        M = machine({loop: 1.0, leave: 0.5}, norm=NormKind.MINIMUM)
        for engine in (accept_degree, accept_degree_bruteforce):
            assert [s.transition for s in engine(M, "0", 4).witness] == [loop, loop, loop, leave]

    def test_invalid_input_symbol(self, two_path):
        with pytest.raises(InputRejected):
            accept_degree(two_path, "ab", 3)

    def test_invalid_machine(self):
        with pytest.raises(ValidationFailure):
            accept_degree(machine({}, inputs=("_",)), "", 3)

    def test_negative_budget(self, two_path):
        with pytest.raises(ValueError, match="max_steps"):
            accept_degree(two_path, "a", -1)

    def test_result_serialization(self, two_path):
        record = accept_degree(two_path, "a", 3).model_dump(mode="json")
        assert record["degree"] == 0.6
        assert record["witness"] == [["q0", "a", "qf", "a", "N", 0.6]]
        assert record["truncated"] is False

    def test_result_rejects_bad_degree(self):
        with pytest.raises(ValidationError):
            AcceptanceResult(degree=1.5)

    def test_search_logs(self, two_path, caplog):
        AcceptanceSearch(two_path).accept("a", 3)
        assert "accepted with degree 0.6" in caplog.text


class TestReachability:
    def test_best_degree_per_configuration(self, two_path):
        reached = reachable_degrees(two_path, "a", 3)
        assert reached[Configuration(("a",), 0, "q0")] == 1.0
        assert reached[Configuration(("a",), 0, "q1")] == 0.9
        assert reached[Configuration(("a",), 0, "qf")] == 0.6


class TestLanguage:
    def test_two_path_language(self, two_path):
        language = fuzzy_language(two_path, max_len=1, max_steps=3)
        assert dict(language.items()) == {"a": 0.6}
        assert language.universe == {"", "a"}

    def test_cutoff(self, two_path):
        assert len(fuzzy_language(two_path, max_len=1, max_steps=3, cutoff=0.7)) == 0

    def test_empty_delta(self):
        assert len(fuzzy_language(machine({}), max_len=2, max_steps=3)) == 0

    def test_crisp_machine(self):
        # Accepts words that start with 1.
        M = machine({Transition("q0", "1", "qf", "1", Move.N): 1.0})
        language = fuzzy_language(M, max_len=2, max_steps=3)
        assert dict(language.items()) == {"1": 1.0, "10": 1.0, "11": 1.0}

    def test_ranking(self):
        M = machine(
            {
                Transition("q0", "0", "qf", "0", Move.N): 0.4,
                Transition("q0", "1", "qf", "1", Move.N): 0.8,
            }
        )
        entries = ranked_language(fuzzy_language(M, max_len=1, max_steps=2))
        assert [(e.word, e.degree) for e in entries] == [("1", 0.8), ("0", 0.4)]


# Property suites over random small machines.

STATES = ("q0", "q1", "q2", "qf")
SYMBOLS = ("a", "b")


@st.composite
def machines(draw, crisp=False):
    states = ("q0", "qf") + tuple(draw(st.lists(st.sampled_from(("q1", "q2")), unique=True)))
    inputs = tuple(draw(st.lists(st.sampled_from(SYMBOLS), min_size=1, unique=True)))
    tape = ("_",) + inputs
    transition = st.builds(
        Transition,
        st.sampled_from(states),
        st.sampled_from(tape),
        st.sampled_from(states),
        st.sampled_from(tape),
        st.sampled_from(list(Move)),
    )
    degree = st.just(1.0) if crisp else st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
    delta = {}
    per_key = {}
    for t, d in draw(st.lists(st.tuples(transition, degree), max_size=8)):
        # At most two choices per (state, symbol) keeps exhaustive enumeration small.
        key = (t.from_state, t.read)
        if t not in delta and per_key.get(key, 0) < 2:
            per_key[key] = per_key.get(key, 0) + 1
            delta[t] = d
    norm = draw(st.sampled_from(list(NormKind)))
    return Machine.build(
        states=states,
        tape_alphabet=tape,
        input_alphabet=inputs,
        blank="_",
        start="q0",
        final="qf",
        delta=delta,
        norm=norm,
    )


def words(M, max_len=3):
    alphabet = sorted(M.input_alphabet)
    return ["".join(w) for n in range(max_len + 1) for w in itertools.product(alphabet, repeat=n)]


def classical_accepts(M, w, max_steps):
    """Bounded reachability of the final state, written without the fuzzy engines."""
    frontier = {(tuple(w), 0, M.start)}
    for _ in range(max_steps + 1):
        if any(state == M.final for _, _, state in frontier):
            return True
        following = set()
        for tape, head, state in frontier:
            symbol = tape[head] if head < len(tape) else M.blank
            for t in M.transitions:
                if t.from_state != state or t.read != symbol or (t.move is Move.L and head == 0):
                    continue
                cells = list(tape) + [M.blank] * (head + 1 - len(tape))
                cells[head] = t.write
                while cells and cells[-1] == M.blank:
                    cells.pop()
                offset = {Move.L: -1, Move.N: 0, Move.R: 1}[t.move]
                following.add((tuple(cells), head + offset, t.to_state))
        frontier = following
    return False


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(M=machines())
def test_best_first_matches_exhaustive_enumeration(M):
    for w in words(M):
        fast = accept_degree(M, w, 10)
        slow = accept_degree_bruteforce(M, w, 10)
        assert abs(fast.degree - slow.degree) <= TOL
        assert fast.witness == slow.witness
        assert abs(tnorm_fold(M.norm, [s.degree for s in fast.witness]) - fast.degree) <= TOL
        assert (fast.degree == 0.0) == (fast.witness == ())


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(M=machines(crisp=True))
def test_crisp_machines_collapse_to_reachability(M):
    for w in words(M):
        degree = accept_degree(M, w, 10).degree
        assert degree in (0.0, 1.0)
        assert (degree == 1.0) == classical_accepts(M, w, 10)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(M=machines())
def test_path_degrees_never_increase(M):
    for w in words(M):
        for path in enumerate_paths(M, w, 10):
            assert path.degrees[0] == 1.0
            assert all(later <= earlier for earlier, later in zip(path.degrees, path.degrees[1:]))
            assert path.degree == path_degree(M, path.alphas)
            assert all(c.head >= 0 for c in path.configurations)
            if path.status is PathStatus.CUT:
                assert len(path.transitions) == 10
