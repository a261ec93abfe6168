"""Seeded random generators for property suites.

Two families: conflict-free decision trees (every leaf exactly one
utility source, so the rollback oracle applies) and small mixed
knowledge bases kept within the brute-force oracle's instance budget.
"""

from __future__ import annotations

import random
from fractions import Fraction

from deliberator.core import (
    KnowledgeBase,
    PropFormula,
    Rule,
    Strength,
    Vocabulary,
    achieves,
    assess_eq,
    contr_eq,
    desir,
    holds,
    undesir,
)
from deliberator.model import DecisionModel, expand_event
from deliberator.schemata import enumerate_all_instances


def random_fraction(rng: random.Random, span: int = 12, denominators=(1, 2, 3, 4, 5)) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice(denominators))


def random_probability(rng: random.Random) -> Fraction:
    den = rng.choice([2, 3, 4, 5, 7, 9])
    return Fraction(rng.randint(0, den), den)


def conflict_free_model(
    rng: random.Random,
    max_depth: int = 4,
    max_states: int = 16,
    acts: int = 1,
) -> tuple[DecisionModel, KnowledgeBase]:
    """A chance tree whose every leaf has exactly one utility source."""
    act_names = tuple(f"a{i}" for i in range(acts))
    roots = {a: f"{a}_s" for a in act_names}
    vocab = Vocabulary(
        properties=frozenset(),
        acts=act_names,
        states=tuple(roots.values()),
        act_roots=dict(roots),
    )
    kb = KnowledgeBase(vocabulary=vocab)
    model = DecisionModel(
        acts=act_names,
        act_roots=dict(roots),
        states=tuple(roots.values()),
        explicit_states=tuple(roots.values()),
    )
    counter = [0]

    def grow(state: str, depth: int) -> None:
        nonlocal model, kb
        if depth < max_depth and len(model.states) + 2 <= max_states and rng.random() < 0.6:
            counter[0] += 1
            event = f"e{counter[0]}"
            model2, kb2 = expand_event(
                model, kb, state, event, random_probability(rng)
            )
            model, kb = model2, kb2
            exp = model.expansions[state]
            grow(exp.child_pos, depth + 1)
            grow(exp.child_neg, depth + 1)

    for act in act_names:
        grow(roots[act], 0)

    leaves = [s for s in model.states if s not in model.expansions]
    contingent = []
    necessary = []
    new_props = []
    for i, leaf in enumerate(leaves):
        value = random_fraction(rng)
        style = rng.choice(["utility", "assess", "holds"])
        if style == "utility":
            contingent.append(assess_eq(leaf, [], value))
        elif style == "assess":
            prop = f"c{i}"
            new_props.append(prop)
            contingent.append(assess_eq(leaf, [prop], value))
        else:
            prop = f"h{i}"
            new_props.append(prop)
            contingent.append(holds(PropFormula((prop,)), leaf))
            necessary.append(contr_eq(PropFormula((prop,)), value))
    vocab2 = Vocabulary(
        properties=kb.vocabulary.properties | frozenset(new_props),
        acts=kb.vocabulary.acts,
        states=kb.vocabulary.states,
        events=kb.vocabulary.events,
        act_roots=dict(kb.vocabulary.act_roots),
        joint_acts=dict(kb.vocabulary.joint_acts),
    )
    kb = kb.with_additions(
        necessary=necessary, contingent=contingent, vocabulary=vocab2
    )
    return model, kb


def small_mixed_kb(rng: random.Random, max_instances: int = 12) -> KnowledgeBase:
    """A small knowledge base whose ground instance space stays within the
    brute-force oracle's budget; retries shapes until one fits."""
    for _ in range(60):
        kb = _candidate_kb(rng)
        try:
            count = len(enumerate_all_instances(kb))
        except Exception:
            continue
        if 0 < count <= max_instances:
            return kb
    raise AssertionError("generator failed to fit the oracle budget")


def _candidate_kb(rng: random.Random) -> KnowledgeBase:
    n_props = rng.randint(2, 4)
    props = [f"p{i}" for i in range(n_props)]
    states = [f"s{i}" for i in range(rng.randint(1, 2))]
    acts: list[str] = []
    roots: dict[str, str] = {}
    if rng.random() < 0.4 and len(states) >= 2:
        acts = ["a0", "a1"]
        roots = {"a0": states[0], "a1": states[1]}
    necessary = []
    entered: set[PropFormula] = set()
    for p in props:
        if rng.random() < 0.7:
            f = PropFormula((p,))
            necessary.append(contr_eq(f, random_fraction(rng, 8, (1, 2))))
            entered.add(f)
    if len(props) >= 2 and rng.random() < 0.5:
        pair = PropFormula(tuple(rng.sample(props, 2)))
        if pair not in entered:
            necessary.append(contr_eq(pair, random_fraction(rng, 8, (1, 2))))
    contingent = []
    for s in states:
        described = rng.sample(props, rng.randint(0, min(2, len(props))))
        if described:
            contingent.append(holds(PropFormula(tuple(described)), s))
    rules: list[Rule] = []
    if acts and rng.random() < 0.6:
        goal = PropFormula((rng.choice(props),))
        contingent.append(achieves(acts[0], goal))
        contingent.append(desir(goal) if rng.random() < 0.5 else undesir(goal))
    if rng.random() < 0.3:
        f1 = PropFormula((rng.choice(props),))
        f2 = PropFormula((rng.choice(props),))
        rules.append(
            Rule("lean", (desir(f1),), undesir(f2) if f1 != f2 else desir(f2),
                 Strength.DEFEASIBLE)
        )
        contingent.append(desir(f1))
    vocab = Vocabulary(
        properties=frozenset(props),
        acts=tuple(acts),
        states=tuple(states),
        act_roots=roots,
    )
    try:
        return KnowledgeBase(
            vocabulary=vocab,
            necessary=frozenset(necessary),
            contingent=frozenset(contingent),
            defeasible_rules=tuple(rules),
        )
    except Exception:
        return KnowledgeBase(vocabulary=vocab)


def random_decision_kb(rng: random.Random) -> tuple[DecisionModel, KnowledgeBase]:
    """A two-act quantitative knowledge base for scaling experiments."""
    model, kb = conflict_free_model(rng, max_depth=2, max_states=8, acts=2)
    if rng.random() < 0.5:
        extra_state = kb.vocabulary.act_roots["a0"]
        leafs = [s for s in model.states if s not in model.expansions]
        target = rng.choice(leafs) if leafs else extra_state
        prop = "extra"
        vocab2 = Vocabulary(
            properties=kb.vocabulary.properties | {prop},
            acts=kb.vocabulary.acts,
            states=kb.vocabulary.states,
            events=kb.vocabulary.events,
            act_roots=dict(kb.vocabulary.act_roots),
            joint_acts=dict(kb.vocabulary.joint_acts),
        )
        kb = kb.with_additions(
            contingent=[assess_eq(target, [prop], random_fraction(rng))],
            vocabulary=vocab2,
        )
    return model, kb


def scale_kb(kb: KnowledgeBase, factor: Fraction) -> KnowledgeBase:
    """Multiply every contribution and assessed value by a positive rational."""
    assert factor > 0
    necessary = {
        contr_eq(l.subject[0], l.value * factor) if l.kind.value == "contr" else l
        for l in kb.necessary
    }
    contingent = {
        assess_eq(l.subject[0], l.subject[1], l.value * factor)
        if l.kind.value == "assess"
        else l
        for l in kb.contingent
    }
    return KnowledgeBase(
        vocabulary=kb.vocabulary,
        necessary=frozenset(necessary),
        contingent=frozenset(contingent),
        strict_rules=kb.strict_rules,
        defeasible_rules=kb.defeasible_rules,
        state_children=dict(kb.state_children),
    )
