"""Strict entailment and consistency over ground literal sets.

The closure is deliberately small: user strict rules, functional
dependencies (utility, contribution, probability and assessment are
functions of their subjects), conjunction handling for state
descriptions, conjunct extraction for achievements, and the inference
from both event-children's descriptions to the parent state's.  Nothing
defeasible happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    FALSUM,
    Kind,
    KnowledgeBase,
    Literal,
    PropFormula,
    Rule,
    RuleInstance,
    is_variable,
)


def _ground_rule_instances(kb: KnowledgeBase, rules: Sequence[Rule]) -> list[RuleInstance]:
    """Instantiate user rules over the declared vocabulary."""
    out: list[RuleInstance] = []
    for rule in rules:
        for binding, body, head in ground_substitutions(kb, rule):
            out.append(
                RuleInstance(
                    rid=instance_rid(rule.name, binding),
                    body=frozenset(body),
                    head=head,
                    strength=rule.strength,
                    origin=f"user:{rule.name}",
                )
            )
    return out


def instance_rid(rule_name: str, binding: dict[str, str]) -> str:
    """Canonical id for one grounding, stable across enumeration orders."""
    if not binding:
        return f"user:{rule_name}"
    inner = ",".join(f"{k}={binding[k]}" for k in sorted(binding))
    return f"user:{rule_name}[{inner}]"


def _literal_variables(lit: Literal) -> list[tuple[str, str]]:
    """(variable name, domain) pairs occurring in a literal."""
    found: list[tuple[str, str]] = []
    k = lit.kind
    if k is Kind.HOLDS:
        f, s = lit.subject
        found += [(a, "property") for a in f.atoms if is_variable(a)]
        if is_variable(s):
            found.append((s, "state"))
    elif k is Kind.ACHIEVES:
        a, f = lit.subject
        if is_variable(a):
            found.append((a, "act"))
        found += [(x, "property") for x in f.atoms if is_variable(x)]
    elif k in (Kind.DESIR, Kind.UNDESIR):
        (f,) = lit.subject
        found += [(a, "property") for a in f.atoms if is_variable(a)]
    elif k in (Kind.DO, Kind.NOT_DO):
        (a,) = lit.subject
        if is_variable(a):
            found.append((a, "act"))
    elif k is Kind.CONTR:
        (f,) = lit.subject
        found += [(a, "property") for a in f.atoms if is_variable(a)]
    elif k is Kind.UTILITY:
        (s,) = lit.subject
        if is_variable(s):
            found.append((s, "state"))
    elif k is Kind.PROB:
        e, s = lit.subject
        if is_variable(e):
            found.append((e, "event"))
        if is_variable(s):
            found.append((s, "state"))
    elif k is Kind.ASSESS:
        s, basis = lit.subject
        if is_variable(s):
            found.append((s, "state"))
        found += [(b, "property") for b in basis if is_variable(b)]
    return found


def _substitute(lit: Literal, binding: dict[str, str]) -> Literal:
    def sub_atom(a: str) -> str:
        return binding.get(a, a)

    k = lit.kind
    if k is Kind.HOLDS:
        f, s = lit.subject
        return Literal(k, (PropFormula(tuple(sub_atom(a) for a in f.atoms), f.negated), sub_atom(s)))
    if k is Kind.ACHIEVES:
        a, f = lit.subject
        return Literal(k, (sub_atom(a), PropFormula(tuple(sub_atom(x) for x in f.atoms), f.negated)))
    if k in (Kind.DESIR, Kind.UNDESIR, Kind.CONTR):
        (f,) = lit.subject
        return Literal(k, (PropFormula(tuple(sub_atom(x) for x in f.atoms), f.negated),), lit.value)
    if k in (Kind.DO, Kind.NOT_DO):
        return Literal(k, (sub_atom(lit.subject[0]),))
    if k is Kind.UTILITY:
        return Literal(k, (sub_atom(lit.subject[0]),), lit.value)
    if k is Kind.PROB:
        e, s = lit.subject
        return Literal(k, (sub_atom(e), sub_atom(s)), lit.value)
    if k is Kind.ASSESS:
        s, basis = lit.subject
        return Literal(k, (sub_atom(s), frozenset(sub_atom(b) for b in basis)), lit.value)
    return lit


def ground_substitutions(kb: KnowledgeBase, rule: Rule, seed: Optional[dict[str, str]] = None):
    """Yield (binding, body, head) ground instantiations over the vocabulary."""
    domains = {
        "property": sorted(kb.vocabulary.properties),
        "act": list(kb.vocabulary.acts),
        "state": list(kb.vocabulary.states),
        "event": sorted(kb.vocabulary.events),
    }
    variables: dict[str, str] = {}
    for lit in rule.literals():
        for name, domain in _literal_variables(lit):
            variables.setdefault(name, domain)
    binding = dict(seed or {})
    names = [v for v in sorted(variables) if v not in binding]

    def rec(i: int):
        if i == len(names):
            yield (
                dict(binding),
                tuple(_substitute(b, binding) for b in rule.body),
                _substitute(rule.head, binding),
            )
            return
        name = names[i]
        for value in domains[variables[name]]:
            binding[name] = value
            yield from rec(i + 1)
        del binding[name]

    yield from rec(0)


class Closure:
    """Fixpoint of a fact set under strict rules plus optional instances.

    Holds-descriptions are kept as per-state atom sets (conjunction
    introduction and elimination collapse to subset queries); achievements
    keep their evidence formulas and answer subset queries (elimination
    only: achieving a conjunction does not follow from achieving its parts
    separately).
    """

    def __init__(
        self,
        kb: KnowledgeBase,
        facts: Iterable[Literal],
        instances: Sequence[RuleInstance] = (),
    ) -> None:
        self.kb = kb
        self.atoms_at: dict[str, set[str]] = {}
        self.achieved: dict[str, list[frozenset[str]]] = {}
        self.plain: set[Literal] = set()
        self.values: dict[tuple, set[Fraction]] = {}
        self.inconsistent = False
        for lit in facts:
            self._admit(lit)
        strict_instances = _ground_rule_instances(kb, kb.strict_rules)
        self._run(list(strict_instances) + list(instances))

    def _admit(self, lit: Literal) -> None:
        if lit.kind is Kind.FALSUM:
            self.inconsistent = True
            return
        if lit.kind is Kind.HOLDS and not lit.subject[0].negated:
            f, s = lit.subject
            self.atoms_at.setdefault(s, set()).update(f.atoms)
            return
        if lit.kind is Kind.ACHIEVES and not lit.subject[1].negated:
            a, f = lit.subject
            bucket = self.achieved.setdefault(a, [])
            if f.atom_set not in bucket:
                bucket.append(f.atom_set)
            return
        key = lit.functional_key()
        if key is not None and lit.value is not None:
            self.values.setdefault(key, set()).add(lit.value)
            if len(self.values[key]) > 1:
                self.inconsistent = True
            return
        neg = lit.negation()
        if neg is not None and neg in self.plain:
            self.inconsistent = True
        self.plain.add(lit)

    def derives(self, goal: Literal) -> bool:
        if goal.kind is Kind.FALSUM:
            return self.inconsistent
        if goal.kind is Kind.HOLDS and not goal.subject[0].negated:
            f, s = goal.subject
            return f.atom_set <= self.atoms_at.get(s, set())
        if goal.kind is Kind.ACHIEVES and not goal.subject[1].negated:
            a, f = goal.subject
            return any(f.atom_set <= have for have in self.achieved.get(a, []))
        key = goal.functional_key()
        if key is not None:
            vals = self.values.get(key, set())
            if goal.value is None:
                return bool(vals)
            return goal.value in vals
        return goal in self.plain

    def _run(self, instances: Sequence[RuleInstance]) -> None:
        pending = list(instances)
        changed = True
        while changed:
            changed = False
            # a parent state's description persists into both event-children;
            # a property both children share is forced back onto the parent
            for parent, (left, right) in sorted(self.kb.state_children.items()):
                parent_atoms = self.atoms_at.get(parent, set())
                for child in (left, right):
                    have = self.atoms_at.setdefault(child, set())
                    if not parent_atoms <= have:
                        have |= parent_atoms
                        changed = True
                common = self.atoms_at.get(left, set()) & self.atoms_at.get(right, set())
                have = self.atoms_at.setdefault(parent, set())
                if not common <= have:
                    have |= common
                    changed = True
            fired: list[int] = []
            for i, inst in enumerate(pending):
                if all(self.derives(b) for b in inst.body):
                    if not self.derives(inst.head):
                        self._admit(inst.head)
                        changed = True
                    fired.append(i)
            for i in reversed(fired):
                pending.pop(i)


def entails(kb: KnowledgeBase, facts: Iterable[Literal], goal: Literal) -> bool:
    """True iff `goal` is in the strict closure of `facts`.

    Total: an inconsistent closure entails everything, including falsum.
    """
    closure = Closure(kb, facts)
    if closure.inconsistent:
        return True
    return closure.derives(goal)


def consistent(kb: KnowledgeBase, facts: Iterable[Literal]) -> bool:
    """True iff no literal clashes with its negation or a functional rival."""
    return not Closure(kb, facts).inconsistent


def derives_with(
    kb: KnowledgeBase,
    facts: Iterable[Literal],
    instances: Sequence[RuleInstance],
    goal: Literal,
) -> bool:
    """Derivability when the given instances may fire like strict rules.

    This is the activation test used by specificity: the argument's own
    defeasible rules are granted, and the question is whether the fact set
    suffices to trigger them into the goal.
    """
    return Closure(kb, facts, instances).derives(goal)


def strictly_derives(kb: KnowledgeBase, facts: Iterable[Literal], goal: Literal) -> bool:
    """Derivability without any defeasible help (the triviality test)."""
    return Closure(kb, facts).derives(goal)
