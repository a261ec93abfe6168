"""Schema instantiation against hand-checked and enumerated expectations."""

from fractions import Fraction
from itertools import combinations

import pytest

from deliberator.core import (
    KnowledgeBase,
    PropFormula,
    Vocabulary,
    assess_eq,
    contr_eq,
    formula,
    holds,
    utility_eq,
)
from deliberator.engine import ArgumentWorkspace, Label, Verdict, justify
from deliberator.model import DecisionModel, expand_event
from deliberator.schemata import (
    AssessedUtility,
    ProbabilityFact,
    comparison_instances,
    contribution_instances,
    expected_utility_instances,
    state_utility_instances,
)


def partition_sums(entries: dict[frozenset, Fraction], atoms: frozenset) -> set[Fraction]:
    """Independent oracle: total contribution over every partition of the
    atom set into blocks that carry direct entries."""

    def rec(remaining: frozenset) -> set[Fraction]:
        if not remaining:
            return {Fraction(0)}
        first = min(remaining)
        totals: set[Fraction] = set()
        rest = remaining - {first}
        for size in range(len(rest) + 1):
            for extra in combinations(sorted(rest), size):
                block = frozenset({first}) | frozenset(extra)
                if block not in entries:
                    continue
                for tail in rec(remaining - block):
                    totals.add(entries[block] + tail)
        return totals

    return rec(atoms)


def contr_kb(entries: dict[tuple, int | Fraction]) -> KnowledgeBase:
    props = sorted({a for key in entries for a in key})
    vocab = Vocabulary(properties=frozenset(props))
    return KnowledgeBase(
        vocabulary=vocab,
        necessary=frozenset(
            contr_eq(PropFormula(tuple(key)), Fraction(v)) for key, v in entries.items()
        ),
    )


class TestContributions:
    def test_pair_sums_to_four(self):
        # oracle first: partitions of {p, q} with entries 3 and 1 admit only 3+1
        entries = {frozenset({"p"}): Fraction(3), frozenset({"q"}): Fraction(1)}
        assert partition_sums(entries, frozenset({"p", "q"})) == {Fraction(4)}
        kb = contr_kb({("p",): 3, ("q",): 1})
        trace = justify(kb, contr_eq(formula("p", "q"), 4))
        assert trace.verdict is Verdict.JUSTIFIED

    def test_exception_beats_addition(self):
        kb = contr_kb({("does_smoke",): -20, ("has_cancer",): -50,
                       ("does_smoke", "has_cancer"): -60})
        sc = formula("does_smoke", "has_cancer")
        assert justify(kb, contr_eq(sc, -60)).verdict is Verdict.JUSTIFIED
        trace = justify(kb, contr_eq(sc, -70))
        assert trace.verdict is Verdict.DENIED
        additive = trace.arguments_for_literal(contr_eq(sc, -70))
        assert additive and all(trace.label_of(a) is Label.DEFEATED for a in additive)

    def test_no_pump(self):
        kb = contr_kb({("p1",): 10})
        ws = ArgumentWorkspace(kb)
        args = ws.arguments_for(contr_eq(formula("p1", "p1"), None))
        assert [a.conclusion.value for a in args] == [Fraction(10)]

    def test_values_match_partition_oracle(self):
        entries = {
            frozenset({"p"}): Fraction(3),
            frozenset({"q"}): Fraction(1),
            frozenset({"r"}): Fraction(-2),
            frozenset({"p", "q"}): Fraction(-60),
        }
        kb = contr_kb({tuple(sorted(k)): v for k, v in entries.items()})
        ws = ArgumentWorkspace(kb)
        for size in (2, 3):
            for subset in combinations(sorted({"p", "q", "r"}), size):
                atoms = frozenset(subset)
                expected = partition_sums(entries, atoms)
                got = {a.conclusion.value
                       for a in ws.arguments_for(contr_eq(PropFormula(subset), None))}
                assert got == expected, subset

    def test_split_instances_exist_for_each_partition(self):
        kb = contr_kb({("p",): 1, ("q",): 2, ("r",): 3})
        ws = ArgumentWorkspace(kb)
        insts = contribution_instances(kb, formula("p", "q", "r"), ws.values_for)
        assert len(insts) == 3  # p|qr, pq|r, pr|q

    def test_nested_exceptions_chain(self):
        # a broader explicit entry out-specializes every finer composition
        kb = contr_kb({("p",): 1, ("q",): 2, ("r",): 3,
                       ("p", "q"): 10, ("p", "q", "r"): -5})
        pqr = formula("p", "q", "r")
        trace = justify(kb, contr_eq(pqr, -5))
        assert trace.verdict is Verdict.JUSTIFIED
        for value in (6, 13):  # 1+2+3 and 10+3
            rivals = trace.arguments_for_literal(contr_eq(pqr, value))
            assert rivals, value
            assert all(trace.label_of(a) is Label.DEFEATED for a in rivals)
        # the intermediate exception still rules its own formula
        assert justify(kb, contr_eq(formula("p", "q"), 10)).verdict is Verdict.JUSTIFIED
        assert justify(kb, contr_eq(formula("p", "q"), 3)).verdict is Verdict.DENIED


def alfa_states() -> tuple[DecisionModel, KnowledgeBase]:
    vocab = Vocabulary(
        properties=frozenset({"expense", "whether_drove_alfa", "how_chairman_reacts"}),
        acts=("rent_alfa", "rent_econo"),
        states=("sA0", "sE0"),
        act_roots={"rent_alfa": "sA0", "rent_econo": "sE0"},
    )
    kb = KnowledgeBase(vocabulary=vocab)
    model = DecisionModel(
        acts=("rent_alfa", "rent_econo"),
        act_roots={"rent_alfa": "sA0", "rent_econo": "sE0"},
        states=("sA0", "sE0"),
        explicit_states=("sA0", "sE0"),
    )
    return expand_event(model, kb, "sA0", "dept_pays", Fraction(2, 5), "sA1", "sA2")


class TestStateUtility:
    def test_larger_basis_wins(self):
        _, kb = alfa_states()
        kb = kb.with_additions(
            contingent=[
                assess_eq("sA1", ["expense", "whether_drove_alfa"], 10),
                assess_eq(
                    "sA1",
                    ["expense", "whether_drove_alfa", "how_chairman_reacts"],
                    8,
                ),
            ]
        )
        assert justify(kb, utility_eq("sA1", 8)).verdict is Verdict.JUSTIFIED
        assert justify(kb, utility_eq("sA1", 10)).verdict is Verdict.DENIED

    def test_single_holds_contribution(self):
        vocab = Vocabulary(properties=frozenset({"p"}), states=("s",))
        kb = KnowledgeBase(
            vocabulary=vocab,
            necessary=frozenset({contr_eq(formula("p"), 5)}),
            contingent=frozenset({holds(formula("p"), "s")}),
        )
        assert justify(kb, utility_eq("s", 5)).verdict is Verdict.JUSTIFIED

    def test_silent_state_has_no_instances(self):
        vocab = Vocabulary(properties=frozenset({"p"}), states=("s",))
        kb = KnowledgeBase(vocabulary=vocab)
        ws = ArgumentWorkspace(kb)
        assert state_utility_instances(kb, "s", ws.values_for) == []


class TestExpectedUtility:
    def test_alfa_model_a_value(self):
        _, kb = alfa_states()
        kb = kb.with_additions(
            contingent=[
                assess_eq("sA1", ["expense", "whether_drove_alfa"], 10),
                assess_eq("sA2", ["expense", "whether_drove_alfa"], -1),
            ]
        )
        ws = ArgumentWorkspace(kb)
        insts = expected_utility_instances(kb, "sA0", ws.values_for)
        assert [i.head.value for i in insts] == [Fraction(17, 5)]

    def test_alfa_model_b_value(self):
        _, kb = alfa_states()
        kb = kb.with_additions(
            contingent=[
                assess_eq("sA1", ["expense", "whether_drove_alfa", "how_chairman_reacts"], 8),
                assess_eq("sA2", ["expense", "whether_drove_alfa", "how_chairman_reacts"], -4),
            ]
        )
        ws = ArgumentWorkspace(kb)
        insts = expected_utility_instances(kb, "sA0", ws.values_for)
        assert [i.head.value for i in insts] == [Fraction(4, 5)]

    def test_degenerate_probability(self):
        vocab = Vocabulary(acts=("a",), states=("s",), act_roots={"a": "s"})
        kb = KnowledgeBase(vocabulary=vocab)
        model = DecisionModel(acts=("a",), act_roots={"a": "s"}, states=("s",),
                              explicit_states=("s",))
        model, kb = expand_event(model, kb, "s", "e", 1, "pos", "neg")
        kb = kb.with_additions(
            contingent=[assess_eq("pos", [], 7), assess_eq("neg", [], -100)]
        )
        assert justify(kb, utility_eq("s", 7)).verdict is Verdict.JUSTIFIED


class TestComparisons:
    def _kb(self, u_alfa, u_econo):
        vocab = Vocabulary(
            acts=("rent_alfa", "rent_econo"),
            states=("ra", "re"),
            act_roots={"rent_alfa": "ra", "rent_econo": "re"},
        )
        kb = KnowledgeBase(
            vocabulary=vocab,
            contingent=frozenset(
                {assess_eq("ra", [], u_alfa), assess_eq("re", [], u_econo)}
            ),
        )
        return kb

    def test_prefers_higher_utility(self):
        kb = self._kb(Fraction(17, 5), 2)
        ws = ArgumentWorkspace(kb)
        insts = comparison_instances(kb, "rent_alfa", True, ws.values_for)
        assert [str(i.head) for i in insts] == ["do(rent_alfa)"]
        assert comparison_instances(kb, "rent_econo", True, ws.values_for) == []

    def test_flip(self):
        from deliberator.core import do

        kb = self._kb(Fraction(4, 5), 2)
        assert justify(kb, do("rent_econo")).verdict is Verdict.JUSTIFIED
        assert justify(kb, do("rent_alfa")).verdict is Verdict.DENIED

    def test_tie_activates_nothing(self):
        kb = self._kb(2, 2)
        ws = ArgumentWorkspace(kb)
        assert comparison_instances(kb, "rent_alfa", True, ws.values_for) == []
        assert comparison_instances(kb, "rent_alfa", False, ws.values_for) == []


class TestValueObjects:
    def test_assessment_needs_basis(self):
        with pytest.raises(ValueError):
            AssessedUtility("s", frozenset(), Fraction(1))

    def test_probability_range(self):
        with pytest.raises(ValueError):
            ProbabilityFact("e", "s", Fraction(3, 2))


class TestSpecSurfaceWrappers:
    def test_contribution_arguments_normalizes(self):
        from deliberator.schemata import contribution_arguments

        kb = contr_kb({("p",): 3, ("q",): 1})
        insts = contribution_arguments(kb, PropFormula(("q", "p", "q")))
        assert [str(i.head) for i in insts] == ["contr(p & q) = 4"]

    def test_expected_utility_instance_requires_expansion(self):
        from deliberator.schemata import expected_utility_instance

        _, kb = alfa_states()
        kb = kb.with_additions(
            contingent=[
                assess_eq("sA1", ["expense", "whether_drove_alfa"], 10),
                assess_eq("sA2", ["expense", "whether_drove_alfa"], -1),
            ]
        )
        insts = expected_utility_instance(kb, "sA0", "dept_pays")
        assert [i.head.value for i in insts] == [Fraction(17, 5)]
        with pytest.raises(ValueError):
            expected_utility_instance(kb, "sE0", "dept_pays")

    def test_comparison_instance_requires_roots(self):
        from deliberator.core import KnowledgeBase as KB
        from deliberator.schemata import comparison_instance

        vocab = Vocabulary(
            acts=("x", "y"),
            states=("sx", "sy"),
            act_roots={"x": "sx", "y": "sy"},
        )
        kb = KB(
            vocabulary=vocab,
            contingent=frozenset({assess_eq("sx", [], 3), assess_eq("sy", [], 1)}),
        )
        insts = comparison_instance(kb, "x", "y")
        assert [str(i.head) for i in insts] == ["do(x)"]
        bad = Vocabulary(acts=("x", "y"), states=("sx",), act_roots={"x": "sx"})
        with pytest.raises(ValueError):
            comparison_instance(KB(vocabulary=bad), "x", "y")

    def test_practical_instances_empty_without_achievements(self):
        from deliberator.schemata import practical_instances

        kb = KnowledgeBase(vocabulary=Vocabulary(acts=("a",)))
        assert practical_instances(kb, "a") == []
