from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deliberator.core import (
    DuplicateEntryError,
    KnowledgeBase,
    MalformedFormulaError,
    PropFormula,
    Rule,
    Strength,
    Vocabulary,
    conj_normalize,
    contr_eq,
    do,
    format_rational,
    formula,
    holds,
    not_do,
    parse_rational,
    utility_eq,
)
from deliberator.core import FALSUM
from deliberator.logic import consistent, entails

ATOMS = ["a", "b", "c", "d", "e"]


class TestFormulas:
    def test_duplicate_atoms_collapse(self):
        assert formula("p1", "p1") == formula("p1")

    def test_identity(self):
        assert conj_normalize(formula("p")) == formula("p")

    def test_commutativity_and_idempotence(self):
        assert formula("q", "p", "q") == formula("p", "q")

    def test_empty_formula_rejected(self):
        with pytest.raises(MalformedFormulaError):
            PropFormula(())

    @given(st.lists(st.sampled_from(ATOMS), min_size=1, max_size=8))
    def test_normalize_idempotent(self, atoms):
        f = PropFormula(tuple(atoms))
        assert conj_normalize(conj_normalize(f)) == conj_normalize(f)

    @given(
        st.lists(st.sampled_from(ATOMS), min_size=1, max_size=8),
        st.randoms(use_true_random=False),
    )
    def test_order_irrelevant(self, atoms, rng):
        shuffled = list(atoms)
        rng.shuffle(shuffled)
        assert PropFormula(tuple(atoms)) == PropFormula(tuple(shuffled))


class TestRationals:
    @pytest.mark.parametrize(
        "text,value",
        [("3", Fraction(3)), ("-20", Fraction(-20)), ("2/5", Fraction(2, 5)), ("0.4", Fraction(2, 5))],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize(
        "value,text",
        [
            (Fraction(3), "3"),
            (Fraction(-20), "-20"),
            (Fraction(2, 5), "0.4"),
            (Fraction(17, 5), "3.4"),
            (Fraction(-1, 4), "-0.25"),
            (Fraction(1, 3), "1/3"),
        ],
    )
    def test_format(self, value, text):
        assert format_rational(value) == text

    @given(st.fractions())
    def test_round_trip(self, value):
        assert parse_rational(format_rational(value)) == value


def tiny_kb(**kwargs) -> KnowledgeBase:
    vocab = Vocabulary(
        properties=frozenset({"p", "q", "r"}),
        acts=("a1",),
        states=("s", "t"),
    )
    return KnowledgeBase(vocabulary=vocab, **kwargs)


class TestEntails:
    def test_conjunct_extraction(self):
        kb = tiny_kb()
        assert entails(kb, {holds(formula("p", "r"), "s")}, holds(formula("p"), "s"))

    def test_empty_closure(self):
        kb = tiny_kb()
        assert not entails(kb, set(), holds(formula("p"), "s"))

    def test_functional_clash_entails_falsum(self):
        kb = tiny_kb()
        assert entails(kb, {utility_eq("s", 3), utility_eq("s", 5)}, FALSUM)

    def test_strict_rule_fires(self):
        rule = Rule("lift", (holds(formula("p"), "s"),), holds(formula("q"), "s"), Strength.STRICT)
        kb = tiny_kb(strict_rules=(rule,))
        assert entails(kb, {holds(formula("p"), "s")}, holds(formula("q"), "s"))

    @given(st.data())
    def test_monotone(self, data):
        kb = tiny_kb()
        facts = data.draw(
            st.sets(
                st.sampled_from(
                    [
                        holds(formula("p"), "s"),
                        holds(formula("q"), "s"),
                        holds(formula("p", "q"), "t"),
                        do("a1"),
                    ]
                ),
                max_size=4,
            )
        )
        more = facts | {holds(formula("r"), "s")}
        goal = holds(formula("p"), "s")
        if entails(kb, facts, goal):
            assert entails(kb, more, goal)


class TestConsistent:
    def test_single_value(self):
        assert consistent(tiny_kb(), {utility_eq("s", Fraction(17, 5))})

    def test_rival_utilities(self):
        assert not consistent(
            tiny_kb(), {utility_eq("s", Fraction(17, 5)), utility_eq("s", Fraction(4, 5))}
        )

    def test_direct_contradiction(self):
        assert not consistent(tiny_kb(), {do("a1"), not_do("a1")})

    def test_empty(self):
        assert consistent(tiny_kb(), set())


class TestKnowledgeBase:
    def test_contr_must_be_necessary(self):
        with pytest.raises(DuplicateEntryError):
            tiny_kb(contingent=frozenset({contr_eq(formula("p"), 1)}))

    def test_conflicting_entries_rejected(self):
        with pytest.raises(DuplicateEntryError):
            tiny_kb(
                necessary=frozenset(
                    {contr_eq(formula("p"), 3), contr_eq(formula("p"), 4)}
                )
            )

    def test_parent_description_from_children(self):
        vocab = Vocabulary(properties=frozenset({"p", "q"}), states=("s", "l", "r"))
        kb = KnowledgeBase(vocabulary=vocab, state_children={"s": ("l", "r")})
        facts = {holds(formula("p", "q"), "l"), holds(formula("p"), "r")}
        assert entails(kb, facts, holds(formula("p"), "s"))
        assert not entails(kb, facts, holds(formula("q"), "s"))

    def test_children_inherit_parent_description(self):
        vocab = Vocabulary(properties=frozenset({"p"}), states=("s", "l", "r"))
        kb = KnowledgeBase(vocabulary=vocab, state_children={"s": ("l", "r")})
        assert entails(kb, {holds(formula("p"), "s")}, holds(formula("p"), "l"))
