"""The small world under deliberation: acts, chance expansions, refinement.

A decision model names acts with their root states and grows a binary
event tree under each root.  Refinement is functional: adding an
assessment or expanding an event returns a new (model, knowledge base)
pair, so recommendations before and after stay comparable side by side.

`rollup_oracle` is the classical expected-utility rollback, computed
without the argument engine; on conflict-free models the dialectical
utility must agree with it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .core import (
    DEFAULT_CONFIG,
    DuplicateEntryError,
    EngineConfig,
    Kind,
    KnowledgeBase,
    ModelError,
    PropFormula,
    Vocabulary,
    do,
    format_rational,
    holds,
    prob_eq,
)
from .engine import (
    ArgumentWorkspace,
    Trace,
    Verdict,
    evaluate_utility,
    justify,
)
from .schemata import AssessedUtility


@dataclass(frozen=True)
class Expansion:
    state: str
    event: str
    k: Fraction
    child_pos: str
    child_neg: str


@dataclass(frozen=True, eq=False)
class DecisionModel:
    acts: tuple[str, ...] = ()
    act_roots: Mapping[str, str] = field(default_factory=dict)
    states: tuple[str, ...] = ()
    explicit_states: tuple[str, ...] = ()
    expansions: Mapping[str, Expansion] = field(default_factory=dict)

    def root_of(self, act: str) -> str:
        try:
            return self.act_roots[act]
        except KeyError:
            raise ModelError(f"act has no root state: {act}") from None

    def children_map(self) -> dict[str, tuple[str, str]]:
        return {
            s: (e.child_pos, e.child_neg) for s, e in self.expansions.items()
        }

    def leaves_under(self, state: str) -> list[str]:
        exp = self.expansions.get(state)
        if exp is None or not (
            exp.child_pos in self.states and exp.child_neg in self.states
        ):
            return [state]
        return self.leaves_under(exp.child_pos) + self.leaves_under(exp.child_neg)


def expand_event(
    m: DecisionModel,
    kb: KnowledgeBase,
    state: str,
    event: str,
    k,
    child_pos: Optional[str] = None,
    child_neg: Optional[str] = None,
) -> tuple[DecisionModel, KnowledgeBase]:
    """Split a state on a binary event with probability k.

    One expansion per state; chain further events through the children.
    The children need no copied description: the strict closure lets the
    parent's description persist into them, and the positive child is
    additionally marked with the event when the event names a declared
    property.
    """
    k = Fraction(k)
    if not (0 <= k <= 1):
        raise ModelError(f"probability out of range: {k}")
    if state not in m.states:
        raise ModelError(f"undeclared state: {state}")
    if state in m.expansions:
        raise ModelError(f"state already expanded: {state}")
    pos = child_pos or f"{state}__{event}"
    neg = child_neg or f"{state}__not_{event}"
    for child in (pos, neg):
        if child in m.states:
            raise ModelError(f"expansion child already declared: {child}")
    if pos == neg:
        raise ModelError("expansion children must be distinct")
    expansions = dict(m.expansions)
    expansions[state] = Expansion(state, event, k, pos, neg)
    m2 = DecisionModel(
        acts=m.acts,
        act_roots=dict(m.act_roots),
        states=m.states + (pos, neg),
        explicit_states=m.explicit_states,
        expansions=expansions,
    )
    vocab = kb.vocabulary
    vocab2 = Vocabulary(
        properties=vocab.properties,
        acts=vocab.acts,
        states=vocab.states + (pos, neg),
        events=vocab.events | {event},
        act_roots=dict(vocab.act_roots),
        joint_acts=dict(vocab.joint_acts),
    )
    contingent = []
    if event in vocab.properties:
        contingent.append(holds(PropFormula((event,)), pos))
    children = dict(kb.state_children)
    children[state] = (pos, neg)
    kb2 = kb.with_additions(
        necessary=[prob_eq(event, state, k)],
        contingent=contingent,
        vocabulary=vocab2,
        state_children=children,
    )
    return m2, kb2


def refine_basis(
    m: DecisionModel,
    kb: KnowledgeBase,
    addition: Union[str, AssessedUtility],
) -> tuple[DecisionModel, KnowledgeBase]:
    """Bring one more consideration into play: a property or an assessment.

    Re-adding an assessment identical in basis and value is a no-op;
    a rival value for the same (state, basis) is rejected.
    """
    if isinstance(addition, str):
        if addition in kb.vocabulary.properties:
            return m, kb
        vocab = kb.vocabulary
        vocab2 = Vocabulary(
            properties=vocab.properties | {addition},
            acts=vocab.acts,
            states=vocab.states,
            events=vocab.events,
            act_roots=dict(vocab.act_roots),
            joint_acts=dict(vocab.joint_acts),
        )
        return m, kb.with_additions(vocabulary=vocab2)
    lit = addition.literal()
    if addition.state not in kb.vocabulary.states:
        raise ModelError(f"undeclared state: {addition.state}")
    for prior in kb.assessments(addition.state):
        if prior.subject[1] == frozenset(addition.basis):
            if prior.value == addition.value:
                return m, kb
            raise DuplicateEntryError(
                f"state {addition.state} already assessed on this basis: "
                f"{format_rational(prior.value)} vs {format_rational(addition.value)}"
            )
    return m, kb.with_additions(contingent=[lit])


@dataclass
class Recommendation:
    """The outcome of pitting every act against its rivals."""

    verdict: str  # ACT | INTERFERENCE | NO_ARGUMENT
    act: Optional[str]
    contenders: tuple[str, ...]
    fallback_used: bool
    utilities: dict[str, Optional[Fraction]]
    traces: dict[str, Trace]

    def summary(self) -> str:
        if self.verdict == "ACT":
            text = f"ACT {self.act}"
            known = {a: u for a, u in self.utilities.items() if u is not None}
            if self.act in known and len(known) > 1:
                rest = [
                    format_rational(u)
                    for a, u in known.items()
                    if a != self.act
                ]
                text += f" (u={format_rational(known[self.act])} vs {' vs '.join(rest)})"
            if self.fallback_used:
                text += " [fallback]"
            return text
        if self.verdict == "INTERFERENCE":
            return "INTERFERENCE " + ", ".join(self.contenders)
        return "NO_ARGUMENT"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "act": self.act,
            "contenders": list(self.contenders),
            "fallback_used": self.fallback_used,
            "utilities": {
                a: (format_rational(u) if u is not None else None)
                for a, u in self.utilities.items()
            },
            "summary": self.summary(),
            "traces": {a: t.to_json_dict() for a, t in self.traces.items()},
        }


def recommend(
    m: DecisionModel,
    kb: KnowledgeBase,
    fallback: Optional[Sequence[str]] = None,
    config: EngineConfig = DEFAULT_CONFIG,
) -> Recommendation:
    """Justify do(act) for every act; a single justified act wins.

    Unresolved conflict surfaces as INTERFERENCE listing the contenders;
    a caller-supplied inclination order resolves ties and droughts, and is
    reported as such.
    """
    if not m.acts:
        raise ModelError("recommendation needs at least one act")
    ws = ArgumentWorkspace(kb, config)
    traces: dict[str, Trace] = {}
    utilities: dict[str, Optional[Fraction]] = {}
    for act in m.acts:
        traces[act] = justify(kb, do(act), config.budget, config, workspace=ws)
        root = m.act_roots.get(act)
        utilities[act] = (
            evaluate_utility(kb, root, config, workspace=ws)[0] if root else None
        )
    justified = [a for a in m.acts if traces[a].verdict is Verdict.JUSTIFIED]
    interfering = [a for a in m.acts if traces[a].verdict is Verdict.INTERFERENCE]
    if len(justified) == 1:
        return Recommendation("ACT", justified[0], tuple(justified), False, utilities, traces)
    contenders = tuple(justified) if justified else tuple(interfering)
    if fallback:
        pool = [a for a in fallback if a in (contenders or m.acts)]
        chosen = pool[0] if pool else (contenders[0] if contenders else m.acts[0])
        return Recommendation("ACT", chosen, contenders, True, utilities, traces)
    if contenders:
        return Recommendation("INTERFERENCE", None, contenders, False, utilities, traces)
    return Recommendation("NO_ARGUMENT", None, (), False, utilities, traces)


class RollupError(RuntimeError):
    """The exhaustive oracle refuses models without one clear source per leaf."""


def rollup_oracle(m: DecisionModel, kb: KnowledgeBase) -> dict[str, Fraction]:
    """Classical bottom-up expected utility, bypassing the argument engine.

    Leaves draw their value from exactly one source: an assessment (or
    bare utility declaration) or a description formula with a direct
    contribution entry.  Anything ambiguous is refused.
    """
    contributions = kb.contributions()
    evidence_holds: dict[str, list[PropFormula]] = {}
    for lit in kb.contingent:
        if lit.kind is Kind.HOLDS and not lit.subject[0].negated:
            evidence_holds.setdefault(lit.subject[1], []).append(lit.subject[0])

    def leaf_value(state: str) -> Fraction:
        candidates: set[Fraction] = set()
        for lit in kb.assessments(state):
            candidates.add(lit.value)
        for f in evidence_holds.get(state, []):
            if f in contributions:
                candidates.add(contributions[f])
        if len(candidates) != 1:
            raise RollupError(
                f"leaf {state} needs exactly one utility source, found {len(candidates)}"
            )
        return candidates.pop()

    values: dict[str, Fraction] = {}

    def value_of(state: str) -> Fraction:
        if state in values:
            return values[state]
        exp = m.expansions.get(state)
        if exp is not None and exp.child_pos in m.states and exp.child_neg in m.states:
            v = exp.k * value_of(exp.child_pos) + (1 - exp.k) * value_of(exp.child_neg)
        else:
            v = leaf_value(state)
        values[state] = v
        return v

    for state in m.states:
        value_of(state)
    return values


@dataclass
class SalientResult:
    """Paths to saliently valued states, combined into one pruned model."""

    model: DecisionModel
    salient_states: tuple[str, ...]
    paths: tuple[tuple[str, tuple[str, ...]], ...]
    covered_mass: dict[str, Fraction]
    notice: Optional[str] = None


def salient_paths(
    m: DecisionModel,
    kb: KnowledgeBase,
    threshold,
    depth: int,
) -> SalientResult:
    """Backward-chaining sketch: find states whose valuation magnitude
    reaches the threshold, treat every event as controllable, and keep
    exactly the act-event chains of bounded length that reach them.

    The union of chains forms the returned model.  The covered
    probability mass per act annotates how much of the original tree the
    sketch accounts for; it is a report, not a defeat criterion.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError("salience threshold must be positive")
    contributions = kb.contributions()
    from .logic import Closure

    closure = Closure(kb, kb.facts())
    salient: list[str] = []
    for state in m.states:
        magnitudes = [abs(l.value) for l in kb.assessments(state)]
        atoms = closure.atoms_at.get(state, set())
        for f, v in contributions.items():
            if f.atom_set <= atoms:
                magnitudes.append(abs(v))
        if any(v >= threshold for v in magnitudes):
            salient.append(state)
    if not salient:
        return SalientResult(
            m, (), (), {}, notice="no state reaches the salience threshold"
        )

    salient_set = set(salient)
    paths: list[tuple[str, tuple[str, ...]]] = []

    def walk(act: str, state: str, trail: tuple[str, ...]) -> None:
        trail = trail + (state,)
        if state in salient_set:
            paths.append((act, trail))
        if len(trail) - 1 >= depth:
            return
        exp = m.expansions.get(state)
        if exp is None:
            return
        for child in (exp.child_pos, exp.child_neg):
            if child in m.states:
                walk(act, child, trail)

    for act in m.acts:
        root = m.act_roots.get(act)
        if root:
            walk(act, root, ())

    retained = {s for _, trail in paths for s in trail}
    kept_acts = tuple(a for a in m.acts if m.act_roots.get(a) in retained)
    pruned = DecisionModel(
        acts=kept_acts,
        act_roots={a: m.act_roots[a] for a in kept_acts},
        states=tuple(s for s in m.states if s in retained),
        explicit_states=tuple(s for s in m.explicit_states if s in retained),
        expansions={
            s: e
            for s, e in m.expansions.items()
            if s in retained and (e.child_pos in retained or e.child_neg in retained)
        },
    )
    mass: dict[str, Fraction] = {}
    for act in kept_acts:
        total = Fraction(0)

        def descend(state: str, p: Fraction) -> None:
            nonlocal total
            exp = pruned.expansions.get(state)
            kids = []
            if exp is not None:
                if exp.child_pos in retained:
                    kids.append((exp.child_pos, exp.k))
                if exp.child_neg in retained:
                    kids.append((exp.child_neg, 1 - exp.k))
            if not kids:
                total += p
                return
            for child, branch in kids:
                descend(child, p * branch)

        descend(m.act_roots[act], Fraction(1))
        mass[act] = total
    return SalientResult(pruned, tuple(salient), tuple(paths), mass)
