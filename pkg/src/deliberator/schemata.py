"""Built-in reason schemata compiled into ground rule instances on demand.

Five families:

  additive contribution   contr(P) = x & contr(Q) = y  =>  contr(P & Q) = x + y
  direct valuation        holds(P, s) & contr(P) = v   =>  u(s) = v
  assessed valuation      assess(s | basis) = v        =>  u(s) = v
  expected utility        prob(E, s) = k & u(pos) = x & u(neg) = y
                                                       =>  u(s) = kx + (1 - k)y
  practical reasoning     achieves(a, d) & desir(d)    =>  do(a)
                          achieves(a, d) & undesir(d)  =>  not_do(a)
  act comparison          u(ra) = x & u(rb) = y, x > y =>  do(a)  /  not_do(b)

Contribution entries are necessary facts, so arguments built from these
instances owe their specificity entirely to the contingent sentences they
consume.  Exceptions to additivity need no priority mechanism: an
explicitly stated entry for a conjunction out-specializes any additive
split of the same formula.

All instantiation is demand-driven and value-complete: every derivable
value appears as its own instance, and the dialectic sorts out which
survive.  `ValueResolver` is the callback by which emitters ask the
argument engine for candidate values of a sub-goal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .core import (
    DEFAULT_CONFIG,
    EngineConfig,
    Kind,
    KnowledgeBase,
    Literal,
    PropFormula,
    RuleInstance,
    Strength,
    achieves,
    assess_eq,
    contr_eq,
    desir,
    do,
    format_rational,
    holds,
    not_do,
    prob_eq,
    undesir,
    utility_eq,
)
from .logic import Closure, ground_substitutions, instance_rid

ValueResolver = Callable[[Literal], list[Fraction]]


@dataclass(frozen=True)
class ContributionTable:
    """Canonical formula -> exact utility contribution, one entry each."""

    entries: tuple[tuple[PropFormula, Fraction], ...]

    @staticmethod
    def from_kb(kb: KnowledgeBase) -> "ContributionTable":
        items = sorted(kb.contributions().items(), key=lambda kv: str(kv[0]))
        return ContributionTable(tuple(items))

    def lookup(self, f: PropFormula) -> Optional[Fraction]:
        for g, v in self.entries:
            if g == f:
                return v
        return None


@dataclass(frozen=True)
class AssessedUtility:
    """A direct valuation of a state relative to an explicit basis list."""

    state: str
    basis: frozenset[str]
    value: Fraction

    def __post_init__(self) -> None:
        if not self.basis:
            raise ValueError("assessment basis must be non-empty")

    def literal(self) -> Literal:
        return assess_eq(self.state, self.basis, self.value)


@dataclass(frozen=True)
class ProbabilityFact:
    event: str
    state: str
    k: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.k <= 1):
            raise ValueError(f"probability out of range: {self.k}")

    def literal(self) -> Literal:
        return prob_eq(self.event, self.state, self.k)


def _fr(v: Fraction) -> str:
    return format_rational(v)


def _subsets(atoms: Sequence[str], max_size: int) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = []
    for size in range(1, min(len(atoms), max_size) + 1):
        out.extend(combinations(sorted(atoms), size))
    return out


def _binary_partitions(atoms: tuple[str, ...]) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Unordered two-block partitions; the first atom anchors the left block."""
    first, rest = atoms[0], atoms[1:]
    parts = []
    for size in range(0, len(rest)):
        for extra in combinations(rest, size):
            left = tuple(sorted((first,) + extra))
            right = tuple(sorted(set(atoms) - set(left)))
            if right:
                parts.append((left, right))
    return parts


def contribution_instances(
    kb: KnowledgeBase,
    f: PropFormula,
    resolver: ValueResolver,
    config: EngineConfig = DEFAULT_CONFIG,
) -> list[RuleInstance]:
    """Additive-split instances for contr(f).

    The direct entry, when present, is a necessary fact and needs no rule;
    it reaches arguments as evidence.  Splits beyond `max_arity` atoms are
    not attempted.
    """
    atoms = f.atoms
    if f.negated or len(atoms) < 2 or len(atoms) > config.max_arity:
        return []
    out: list[RuleInstance] = []
    for left, right in _binary_partitions(atoms):
        fl, fr_ = PropFormula(left), PropFormula(right)
        for va in resolver(contr_eq(fl, None)):
            for vb in resolver(contr_eq(fr_, None)):
                out.append(
                    RuleInstance(
                        rid=f"ax1:{fl}+{fr_}:{_fr(va)}+{_fr(vb)}",
                        body=frozenset({contr_eq(fl, va), contr_eq(fr_, vb)}),
                        head=contr_eq(f, va + vb),
                        strength=Strength.DEFEASIBLE,
                        origin="ax1",
                        info=("split", fl, fr_),
                    )
                )
    return out


def state_utility_instances(
    kb: KnowledgeBase,
    state: str,
    resolver: Optional[ValueResolver] = None,
    config: EngineConfig = DEFAULT_CONFIG,
    evidence: Optional[Closure] = None,
) -> list[RuleInstance]:
    """Direct valuation instances for u(state): one per provable
    holds-formula with a derivable contribution, plus one per assessment."""
    if resolver is None:
        resolver = _fresh_resolver(kb, config)
    closure = evidence if evidence is not None else Closure(kb, kb.facts())
    out: list[RuleInstance] = []
    atoms = sorted(closure.atoms_at.get(state, set()))
    for subset in _subsets(atoms, config.max_arity):
        f = PropFormula(subset)
        for v in resolver(contr_eq(f, None)):
            out.append(
                RuleInstance(
                    rid=f"ax2:{state}:{f}:{_fr(v)}",
                    body=frozenset({holds(f, state), contr_eq(f, v)}),
                    head=utility_eq(state, v),
                    strength=Strength.DEFEASIBLE,
                    origin="ax2",
                    info=("direct", state, f),
                )
            )
    for lit in kb.assessments(state):
        _, basis = lit.subject
        tag = ",".join(sorted(basis)) or "~"
        out.append(
            RuleInstance(
                rid=f"assess:{state}|{tag}:{_fr(lit.value)}",
                body=frozenset({lit}),
                head=utility_eq(state, lit.value),
                strength=Strength.DEFEASIBLE,
                origin="assess",
                info=("assess", state, frozenset(basis)),
            )
        )
    return out


def expected_utility_instances(
    kb: KnowledgeBase,
    state: str,
    resolver: ValueResolver,
    config: EngineConfig = DEFAULT_CONFIG,
) -> list[RuleInstance]:
    """Expected-utility instances for u(state), one per pair of derivable
    child values.  Requires the expansion's children in the model and a
    probability fact for the expanding event."""
    children = kb.state_children.get(state)
    if children is None:
        return []
    pos, neg = children
    event = None
    k = None
    for lit in kb.necessary:
        if lit.kind is Kind.PROB and lit.subject[1] == state:
            event, k = lit.subject[0], lit.value
            break
    if event is None or k is None:
        return []
    out: list[RuleInstance] = []
    for x in resolver(utility_eq(pos, None)):
        for y in resolver(utility_eq(neg, None)):
            value = k * x + (1 - k) * y
            out.append(
                RuleInstance(
                    rid=f"ax3:{state}:{event}:{_fr(x)}/{_fr(y)}",
                    body=frozenset(
                        {prob_eq(event, state, k), utility_eq(pos, x), utility_eq(neg, y)}
                    ),
                    head=utility_eq(state, value),
                    strength=Strength.DEFEASIBLE,
                    origin="ax3",
                    info=("eu", state, event),
                )
            )
    return out


def _achievement_targets(kb: KnowledgeBase, act: str) -> list[PropFormula]:
    """Formulas the act may be credited with achieving: each achievement
    formula in evidence and every conjunct-subset of it."""
    seen: set[PropFormula] = set()
    for lit in kb.contingent:
        if lit.kind is Kind.ACHIEVES and lit.subject[0] == act and not lit.subject[1].negated:
            f = lit.subject[1]
            for subset in _subsets(f.atoms, len(f.atoms)):
                seen.add(PropFormula(subset))
    return sorted(seen, key=str)


def practical_instances(
    kb: KnowledgeBase,
    act: str,
    config: EngineConfig = DEFAULT_CONFIG,
) -> list[RuleInstance]:
    """Practical-reasoning instances for do(act) and not_do(act), plus
    composition instances for declared joint acts."""
    out: list[RuleInstance] = []
    for d in _achievement_targets(kb, act):
        out.append(
            RuleInstance(
                rid=f"prac+:{act}:{d}",
                body=frozenset({achieves(act, d), desir(d)}),
                head=do(act),
                strength=Strength.DEFEASIBLE,
                origin="practical",
                info=("pro", act, d),
            )
        )
        out.append(
            RuleInstance(
                rid=f"prac-:{act}:{d}",
                body=frozenset({achieves(act, d), undesir(d)}),
                head=not_do(act),
                strength=Strength.DEFEASIBLE,
                origin="practical",
                info=("con", act, d),
            )
        )
    pair = kb.vocabulary.joint_acts.get(act)
    if pair is not None:
        a1, a2 = pair
        out.append(
            RuleInstance(
                rid=f"compose:{act}",
                body=frozenset({do(a1), do(a2)}),
                head=do(act),
                strength=Strength.DEFEASIBLE,
                origin="compose",
                info=("compose", a1, a2),
            )
        )
    return out


def comparison_instances(
    kb: KnowledgeBase,
    act: str,
    positive: bool,
    resolver: ValueResolver,
    config: EngineConfig = DEFAULT_CONFIG,
) -> list[RuleInstance]:
    """Act-comparison instances: a strictly greater root utility is a
    reason to do the winner and a reason against the loser.

    Instantiated over candidate values; an instance whose utility claims
    do not survive the dialectic takes its conclusion down with it.  Equal
    utilities activate nothing (ties are the recommendation layer's job).
    """
    roots = kb.vocabulary.act_roots
    if act not in roots:
        return []
    out: list[RuleInstance] = []
    for other in kb.vocabulary.acts:
        if other == act or other not in roots:
            continue
        if positive:
            winner, loser = act, other
        else:
            winner, loser = other, act
        rw, rl = roots[winner], roots[loser]
        for x in resolver(utility_eq(rw, None)):
            for y in resolver(utility_eq(rl, None)):
                if x <= y:
                    continue
                head = do(winner) if positive else not_do(loser)
                mark = "+" if positive else "-"
                out.append(
                    RuleInstance(
                        rid=f"cmp{mark}:{winner}>{loser}:{_fr(x)}/{_fr(y)}",
                        body=frozenset({utility_eq(rw, x), utility_eq(rl, y)}),
                        head=head,
                        strength=Strength.DEFEASIBLE,
                        origin="comparison",
                        info=("cmp", winner, loser),
                    )
                )
    return out


def _fresh_resolver(kb: KnowledgeBase, config: EngineConfig) -> ValueResolver:
    from .engine import ArgumentWorkspace

    return ArgumentWorkspace(kb, config).values_for


def contribution_arguments(
    kb: KnowledgeBase, f: PropFormula, config: EngineConfig = DEFAULT_CONFIG
) -> list[RuleInstance]:
    """Additive-split instances for a canonical formula, self-resolved."""
    from .core import conj_normalize

    return contribution_instances(kb, conj_normalize(f), _fresh_resolver(kb, config), config)


def expected_utility_instance(
    kb: KnowledgeBase, state: str, event: str, config: EngineConfig = DEFAULT_CONFIG
) -> list[RuleInstance]:
    """Expected-utility instances for one declared expansion of a state."""
    if kb.probability(event, state) is None:
        raise ValueError(f"no probability fact for event {event} at state {state}")
    if state not in kb.state_children:
        raise ValueError(f"state has no expansion children: {state}")
    return expected_utility_instances(kb, state, _fresh_resolver(kb, config), config)


def comparison_instance(
    kb: KnowledgeBase, a: str, b: str, config: EngineConfig = DEFAULT_CONFIG
) -> list[RuleInstance]:
    """Comparison instances for do(a) against one rival act b."""
    roots = kb.vocabulary.act_roots
    for act in (a, b):
        if act not in roots:
            raise ValueError(f"act has no root state in the model: {act}")
    return [
        inst
        for inst in comparison_instances(kb, a, True, _fresh_resolver(kb, config), config)
        if inst.info[2] == b
    ]


def user_rule_instances(kb: KnowledgeBase, pattern: Literal) -> list[RuleInstance]:
    """Ground user rules (both strengths) whose head matches the pattern."""
    out: list[RuleInstance] = []
    for rule in tuple(kb.defeasible_rules) + tuple(kb.strict_rules):
        for binding, body, head in ground_substitutions(kb, rule):
            if not head.matches(pattern) and not pattern.matches(head):
                continue
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


def emit_for(
    kb: KnowledgeBase,
    pattern: Literal,
    resolver: ValueResolver,
    config: EngineConfig = DEFAULT_CONFIG,
    evidence: Optional[Closure] = None,
) -> list[RuleInstance]:
    """All schema instances whose head can match the goal pattern."""
    out: list[RuleInstance] = []
    kind = pattern.kind
    if kind is Kind.CONTR:
        out += contribution_instances(kb, pattern.subject[0], resolver, config)
    elif kind is Kind.UTILITY:
        state = pattern.subject[0]
        out += state_utility_instances(kb, state, resolver, config, evidence)
        out += expected_utility_instances(kb, state, resolver, config)
    elif kind in (Kind.DO, Kind.NOT_DO):
        act = pattern.subject[0]
        out += [
            inst
            for inst in practical_instances(kb, act, config)
            if inst.head.kind is kind
        ]
        out += comparison_instances(kb, act, kind is Kind.DO, resolver, config)
    out += user_rule_instances(kb, pattern)
    if pattern.value is not None:
        out = [inst for inst in out if inst.head.matches(pattern)]
    return out


def enumerate_all_instances(
    kb: KnowledgeBase, config: EngineConfig = DEFAULT_CONFIG
) -> list[RuleInstance]:
    """Exhaustive ground instantiation, independent of any goal.

    Used by the brute-force argument oracle.  Candidate values are closed
    bottom-up: contributions from entries through additive splits, state
    utilities from direct instances through expected-utility combination
    in child-first order.
    """

    closure = Closure(kb, kb.facts())
    instances: list[RuleInstance] = []
    contr_values: dict[PropFormula, set[Fraction]] = {}
    for f, v in kb.contributions().items():
        contr_values.setdefault(f, set()).add(v)
    universe = sorted({a for f in contr_values for a in f.atoms})
    candidates = [PropFormula(s) for s in _subsets(universe, config.max_arity)]
    changed = True
    while changed:
        changed = False
        for f in candidates:
            if len(f.atoms) < 2:
                continue
            for left, right in _binary_partitions(f.atoms):
                for va in sorted(contr_values.get(PropFormula(left), set())):
                    for vb in sorted(contr_values.get(PropFormula(right), set())):
                        vals = contr_values.setdefault(f, set())
                        if va + vb not in vals:
                            vals.add(va + vb)
                            changed = True

    def contr_resolver(pat: Literal) -> list[Fraction]:
        return sorted(contr_values.get(pat.subject[0], set()))

    for f in candidates:
        if len(f.atoms) >= 2:
            instances += contribution_instances(kb, f, contr_resolver, config)

    u_values: dict[str, set[Fraction]] = {}

    def child_first(states: Sequence[str]) -> list[str]:
        order: list[str] = []
        seen: set[str] = set()

        def visit(s: str) -> None:
            if s in seen:
                return
            seen.add(s)
            for child in kb.state_children.get(s, ()):  # children before parent
                visit(child)
            order.append(s)

        for s in states:
            visit(s)
        return order

    def u_resolver(pat: Literal) -> list[Fraction]:
        return sorted(u_values.get(pat.subject[0], set()))

    for state in child_first(kb.vocabulary.states):
        direct = state_utility_instances(kb, state, contr_resolver, config, closure)
        eu = expected_utility_instances(kb, state, u_resolver, config)
        instances += direct + eu
        u_values[state] = {inst.head.value for inst in direct + eu}

    for act in kb.vocabulary.acts:
        instances += practical_instances(kb, act, config)
        instances += comparison_instances(kb, act, True, u_resolver, config)
        instances += comparison_instances(kb, act, False, u_resolver, config)

    for rule in kb.defeasible_rules:
        for binding, body, head in ground_substitutions(kb, rule):
            instances.append(
                RuleInstance(
                    rid=instance_rid(rule.name, binding),
                    body=frozenset(body),
                    head=head,
                    strength=Strength.DEFEASIBLE,
                    origin=f"user:{rule.name}",
                )
            )

    unique: dict[str, RuleInstance] = {}
    for inst in instances:
        unique.setdefault(inst.rid, inst)
    return sorted(unique.values(), key=lambda r: r.rid)
