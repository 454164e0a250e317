import json

import pytest

from modaltab.semantics import (
    FrameCondition,
    InvalidWorld,
    KripkeModel,
    SerialNotClosable,
    evaluate,
    frame_closure,
    frame_satisfies,
    holds_globally,
    model_to_dict,
    model_to_json,
)
from modaltab.syntax import Atom, Box, Diamond, Implies, Not, Or, parse

g = Atom("g")
p = Atom("p")

ONE_WORLD_EMPTY = KripkeModel(1, frozenset(), {"g": frozenset({0})})
# two worlds, w0 -> w1 -> w1, g true only at w1
TWO_WORLD = KripkeModel(1 + 1, frozenset({(0, 1), (1, 1)}), {"g": frozenset({1})})


class TestEvaluate:
    def test_vacuous_box(self):
        assert evaluate(ONE_WORLD_EMPTY, 0, Box(g)) is True

    def test_empty_diamond(self):
        assert evaluate(ONE_WORLD_EMPTY, 0, Diamond(g)) is False

    def test_two_world_model(self):
        assert evaluate(TWO_WORLD, 0, Diamond(g)) is True
        assert evaluate(TWO_WORLD, 0, g) is False
        # recursive oracle spot checks for the same model
        assert evaluate(TWO_WORLD, 1, g) is True
        assert evaluate(TWO_WORLD, 0, Box(g)) is True
        assert evaluate(TWO_WORLD, 1, Box(g)) is True

    def test_absent_atom_is_false(self):
        assert evaluate(ONE_WORLD_EMPTY, 0, Atom("missing")) is False

    def test_invalid_world(self):
        with pytest.raises(InvalidWorld):
            evaluate(ONE_WORLD_EMPTY, 1, g)

    def test_sugar_rejected(self):
        with pytest.raises(TypeError):
            evaluate(ONE_WORLD_EMPTY, 0, parse("p |> q"))


class TestHoldsGlobally:
    def test_tautology(self):
        assert holds_globally(TWO_WORLD, Or(g, Not(g))) is True

    def test_atom_failing_somewhere(self):
        assert holds_globally(TWO_WORLD, g) is False

    def test_necessity_premise(self):
        assert holds_globally(TWO_WORLD, Implies(g, Box(g))) is True


class TestFrameSatisfies:
    def test_asymmetric_euclidean(self):
        m = KripkeModel(2, frozenset({(0, 1), (1, 1)}))
        assert frame_satisfies(m, FrameCondition.EUCLIDEAN) is True
        assert frame_satisfies(m, FrameCondition.SYMMETRIC) is False

    def test_full_relation_is_everything(self):
        m = KripkeModel(2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))
        for cond in FrameCondition:
            assert frame_satisfies(m, cond) is True

    def test_empty_relation(self):
        m = KripkeModel(1, frozenset())
        assert frame_satisfies(m, FrameCondition.SERIAL) is False
        assert frame_satisfies(m, FrameCondition.SYMMETRIC) is True
        assert frame_satisfies(m, FrameCondition.TRANSITIVE) is True
        assert frame_satisfies(m, FrameCondition.EUCLIDEAN) is True


class TestFrameClosure:
    def test_symmetric_pair(self):
        out = frame_closure({(0, 1)}, {FrameCondition.SYMMETRIC}, 2)
        assert out == frozenset({(0, 1), (1, 0)})

    def test_reflexive_diagonal(self):
        out = frame_closure({(0, 1)}, {FrameCondition.REFLEXIVE}, 2)
        assert out == frozenset({(0, 1), (0, 0), (1, 1)})

    def test_euclidean_fixed_point(self):
        out = frame_closure({(0, 1), (0, 2)}, {FrameCondition.EUCLIDEAN}, 3)
        assert out == frozenset({(0, 1), (0, 2), (1, 2), (2, 1), (1, 1), (2, 2)})
        assert frame_satisfies(KripkeModel(3, out), FrameCondition.EUCLIDEAN)

    def test_serial_rejected(self):
        with pytest.raises(SerialNotClosable):
            frame_closure({(0, 1)}, {FrameCondition.SERIAL}, 2)

    def test_idempotent_and_satisfying(self, one_atom_models):
        conditions = [
            frozenset({FrameCondition.SYMMETRIC, FrameCondition.TRANSITIVE}),
            frozenset({FrameCondition.REFLEXIVE, FrameCondition.EUCLIDEAN}),
            frozenset({FrameCondition.TRANSITIVE}),
        ]
        for m in one_atom_models[:: 17]:
            for conds in conditions:
                once = frame_closure(m.access, conds, m.world_count)
                assert frame_closure(once, conds, m.world_count) == once
                assert once >= m.access
                closed = KripkeModel(m.world_count, once)
                for c in conds:
                    assert frame_satisfies(closed, c)


class TestInvariants:
    def test_duality(self, one_atom_models):
        battery = [p, Not(p), Box(p), Diamond(Not(p))]
        for m in one_atom_models:
            for f in battery:
                for w in range(m.world_count):
                    assert evaluate(m, w, Diamond(f)) == evaluate(m, w, Not(Box(Not(f))))

    def test_axiom_k_everywhere(self, small_models):
        k = parse("[](p -> q) -> ([]p -> []q)")
        for m in small_models:
            assert holds_globally(m, k)

    def test_model_level_correspondence(self, one_atom_models):
        axioms = {
            FrameCondition.REFLEXIVE: parse("[]p -> p"),
            FrameCondition.SYMMETRIC: parse("p -> []<>p"),
            FrameCondition.TRANSITIVE: parse("[]p -> [][]p"),
            FrameCondition.EUCLIDEAN: parse("<>p -> []<>p"),
            FrameCondition.SERIAL: parse("[]p -> <>p"),
        }
        for m in one_atom_models:
            for cond, axiom in axioms.items():
                if frame_satisfies(m, cond):
                    assert holds_globally(m, axiom), (m, cond)


class TestModelValidation:
    def test_needs_a_world(self):
        with pytest.raises(ValueError):
            KripkeModel(0, frozenset())

    def test_access_in_range(self):
        with pytest.raises(InvalidWorld):
            KripkeModel(1, frozenset({(0, 1)}))

    def test_valuation_in_range(self):
        with pytest.raises(InvalidWorld):
            KripkeModel(1, frozenset(), {"g": frozenset({3})})


class TestSerialization:
    def test_golden_json(self):
        assert (
            model_to_json(TWO_WORLD)
            == '{"access":[[0,1],[1,1]],"valuation":{"g":[1]},"worlds":2}'
        )

    def test_sorted_and_stable(self):
        m = KripkeModel(
            3,
            frozenset({(2, 1), (0, 2), (1, 1)}),
            {"b": frozenset({2, 0}), "a": frozenset(), "c": frozenset({1})},
        )
        d = model_to_dict(m)
        assert d["access"] == [[0, 2], [1, 1], [2, 1]]
        assert list(d["valuation"]) == ["b", "c"]  # empty sets dropped, keys sorted
        assert d["valuation"]["b"] == [0, 2]
        assert json.loads(model_to_json(m)) == d
