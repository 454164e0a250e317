import pytest

from modaltab import _kernel_py
from modaltab.enumeration import (
    KERNEL,
    CountermodelWitness,
    EnumerationBudget,
    compile_formula,
    enumerate_models,
    find_countermodel,
    frame_mask,
    kernel_backends,
    minimize_countermodel,
)
from modaltab.semantics import (
    FrameCondition,
    evaluate,
    frame_satisfies,
    holds_globally,
    model_to_json,
)
from modaltab.syntax import desugar, parse

K = frozenset()
SYM = frozenset({FrameCondition.SYMMETRIC})
REFL = frozenset({FrameCondition.REFLEXIVE})

ER_PREMISES = [parse("g -> []g"), parse("<>g")]
ER_CONCLUSION = parse("g")


def count(budget, frame):
    return sum(1 for _ in enumerate_models(budget, frame))


class TestEnumerateModels:
    def test_one_world_unconstrained(self):
        # 2 relations x 2 valuations
        assert count(EnumerationBudget(1, ("g",)), K) == 4

    def test_one_world_reflexive(self):
        assert count(EnumerationBudget(1, ("g",)), REFL) == 2

    def test_two_worlds_total(self):
        # 4 + 2^4 * 2^2 models
        assert count(EnumerationBudget(2, ("g",)), K) == 68

    def test_counts_match_formula(self):
        # 2^(n^2) relations x 2^(n*a) valuations, summed over world counts
        for atoms in [(), ("p",), ("p", "q")]:
            expected = sum(2 ** (n * n) * 2 ** (n * len(atoms)) for n in (1, 2))
            assert count(EnumerationBudget(2, atoms), K) == expected

    def test_frame_filter(self):
        for m in enumerate_models(EnumerationBudget(2, ("g",)), SYM):
            assert frame_satisfies(m, FrameCondition.SYMMETRIC)

    def test_deterministic_order(self):
        first = [model_to_json(m) for m in enumerate_models(EnumerationBudget(2, ("g",)), K)]
        second = [model_to_json(m) for m in enumerate_models(EnumerationBudget(2, ("g",)), K)]
        assert first == second
        # order is by world count, then relation bits, then valuation bits
        assert first[0] == '{"access":[],"valuation":{},"worlds":1}'
        assert first[1] == '{"access":[],"valuation":{"g":[0]},"worlds":1}'
        assert first[2] == '{"access":[[0,0]],"valuation":{},"worlds":1}'


class TestFindCountermodel:
    def test_necessity_argument_over_k(self):
        w = find_countermodel(ER_PREMISES, ER_CONCLUSION, K, EnumerationBudget(2, ("g",)))
        assert w is not None
        assert model_to_json(w.model) == '{"access":[[0,1],[1,1]],"valuation":{"g":[1]},"worlds":2}'
        assert w.world == 0

    def test_witness_reverifies(self):
        w = find_countermodel(ER_PREMISES, ER_CONCLUSION, K, EnumerationBudget(3, ("g",)))
        for premise in ER_PREMISES:
            assert holds_globally(w.model, premise)
        assert not evaluate(w.model, w.world, ER_CONCLUSION)

    def test_none_under_symmetry(self):
        assert find_countermodel(ER_PREMISES, ER_CONCLUSION, SYM, EnumerationBudget(3, ("g",))) is None

    def test_tautology_has_no_countermodel(self):
        assert find_countermodel([], parse("g | ~g"), K, EnumerationBudget(3, ("g",))) is None

    def test_determinism(self):
        a = find_countermodel(ER_PREMISES, ER_CONCLUSION, K, EnumerationBudget(3, ("g",)))
        b = find_countermodel(ER_PREMISES, ER_CONCLUSION, K, EnumerationBudget(3, ("g",)))
        assert model_to_json(a.model) == model_to_json(b.model)
        assert a.world == b.world

    def test_sugar_handled(self):
        w = find_countermodel([parse("p |> q")], parse("q"), K, EnumerationBudget(2, ("p", "q")))
        assert w is not None

    def test_atoms_beyond_budget_list(self):
        # formula atoms not in the budget's list still get enumerated
        w = find_countermodel([], parse("extra"), K, EnumerationBudget(1, ()))
        assert w is not None


class TestMinimize:
    def test_shrinks_to_two_worlds(self):
        from modaltab.semantics import KripkeModel

        # a valid 3-world witness, padded with a reflexive g-world
        big = CountermodelWitness(
            KripkeModel(3, frozenset({(0, 1), (1, 1), (2, 2)}), {"g": frozenset({1, 2})}),
            0,
        )
        for premise in ER_PREMISES:
            assert holds_globally(big.model, premise)
        small = minimize_countermodel(big, ER_PREMISES, ER_CONCLUSION, K)
        assert small.model.world_count == 2
        assert model_to_json(small.model) == '{"access":[[0,1],[1,1]],"valuation":{"g":[1]},"worlds":2}'

    def test_idempotent_on_minimal(self):
        w = find_countermodel(ER_PREMISES, ER_CONCLUSION, K, EnumerationBudget(2, ("g",)))
        again = minimize_countermodel(w, ER_PREMISES, ER_CONCLUSION, K)
        assert model_to_json(again.model) == model_to_json(w.model)
        assert again.world == w.world

    def test_tollens_bad_witness(self):
        frame = frozenset(
            {FrameCondition.REFLEXIVE, FrameCondition.SYMMETRIC, FrameCondition.TRANSITIVE}
        )
        conclusion = parse("(p -> q) -> ([]~q -> []~p)")
        w = find_countermodel([], conclusion, frame, EnumerationBudget(3, ("p", "q")))
        small = minimize_countermodel(w, [], conclusion, frame)
        assert (
            model_to_json(small.model)
            == '{"access":[[0,0],[0,1],[1,0],[1,1]],"valuation":{"p":[1]},"worlds":2}'
        )
        assert small.world == 0


class TestKernels:
    def test_selected_kernel_reported(self):
        assert KERNEL in ("compiled", "pure-python")
        assert "pure-python" in kernel_backends()

    def test_backends_agree(self):
        backends = kernel_backends()
        if "compiled" not in backends:
            pytest.skip("compiled kernel not built")
        queries = [
            ([], "[]p -> p", K),
            ([], "[]p -> p", REFL),
            (["g -> []g", "<>g"], "g", K),
            (["g -> []g", "<>g"], "g", SYM),
            ([], "(p -> q) -> ([]~q -> []~p)", frozenset({FrameCondition.REFLEXIVE,
                                                          FrameCondition.SYMMETRIC,
                                                          FrameCondition.TRANSITIVE})),
            ([], "<>p -> []<>q", frozenset({FrameCondition.EUCLIDEAN})),
            ([], "[]p -> <>p", frozenset({FrameCondition.SERIAL})),
        ]
        for raw_premises, raw_conclusion, frame in queries:
            premises = [desugar(parse(s)) for s in raw_premises]
            conclusion = desugar(parse(raw_conclusion))
            atoms = ("g", "p", "q")
            index = {a: i for i, a in enumerate(atoms)}
            compiled_codes = tuple(compile_formula(f, index) for f in premises)
            conclusion_code = compile_formula(conclusion, index)
            results = {
                name: backend.find_first(3, len(atoms), frame_mask(frame), compiled_codes, conclusion_code)
                for name, backend in backends.items()
            }
            assert results["compiled"] == results["pure-python"], (raw_premises, raw_conclusion)

    def test_mask_evaluation_matches_reference(self, small_models):
        battery = [parse(s) for s in ("[]p -> p", "<>p & ~q", "[](p <-> q)", "<>[]p | []~q")]
        atoms = ("p", "q")
        index = {a: i for i, a in enumerate(atoms)}
        for f in battery:
            code = compile_formula(f, index)
            for m in small_models[:: 5]:
                n = m.world_count
                succ = [0] * n
                for i, j in m.access:
                    succ[i] |= 1 << j
                masks = [
                    sum(1 << w for w in m.valuation.get(a, ())) for a in atoms
                ]
                got = _kernel_py.eval_mask(code, succ, masks, n, (1 << n) - 1)
                expected = sum(evaluate(m, w, f) << w for w in range(n))
                assert got == expected
