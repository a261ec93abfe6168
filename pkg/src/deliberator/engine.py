"""Argument construction, counterargument, specificity defeat, grounded labeling.

An argument is a minimal consistent set of defeasible rule instances
that, together with the evidence and strict closure, derives its
conclusion.  Arguments attack each other where conclusions disagree;
an attack is a defeat when the attacker is strictly more specific than
the attacked sub-argument, otherwise the two merely interfere.  Grounded
(bottom-up, skeptical) labeling then decides which survive: an argument
is undefeated once every attacker is defeated, defeated once some
attacker is undefeated, and undecided when a conflict never resolves.

Specificity follows the activation reading of "uses more information":
argument A is strictly more specific than B when every contingent
circumstance that non-trivially triggers A also triggers B, while some
circumstance triggers B alone.  Contribution and probability facts are
necessary knowledge and never count as circumstances.  Three built-in
tie-breakers cover comparisons activation cannot see: expected-utility
arguments beat direct valuations of the same state, assessments with a
strictly larger basis beat smaller ones, and an explicitly entered
contribution beats any additive composition of the same formula.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from . import schemata
from .core import (
    DEFAULT_CONFIG,
    EngineConfig,
    Kind,
    KnowledgeBase,
    Literal,
    PropFormula,
    RuleInstance,
    Strength,
)
from .logic import Closure, derives_with, strictly_derives


class OracleScaleError(RuntimeError):
    """The brute-force oracle refuses beyond desk scale."""


class Argument:
    """A derivation node: evidence leaf or rule application over premises.

    `support` collects the defeasible instances in the whole derivation;
    strict instances may be used but never belong to the support.
    `contingent_base` collects the contingent literals consumed at the
    derivation frontier; these alone drive specificity.
    """

    __slots__ = (
        "conclusion",
        "top_rule",
        "premises",
        "support",
        "contingent_base",
        "sub_conclusions",
        "_key",
    )

    def __init__(
        self,
        conclusion: Literal,
        top_rule: Optional[RuleInstance],
        premises: tuple["Argument", ...],
    ) -> None:
        self.conclusion = conclusion
        self.top_rule = top_rule
        self.premises = premises
        support: set[RuleInstance] = set()
        base: set[Literal] = set()
        subs: set[Literal] = {conclusion} if top_rule is not None else set()
        for p in premises:
            support |= p.support
            base |= p.contingent_base
            subs |= p.sub_conclusions
        if top_rule is not None and top_rule.strength is Strength.DEFEASIBLE:
            support.add(top_rule)
        if top_rule is None and conclusion.is_contingent_kind:
            base.add(conclusion)
        if support:
            subs.add(conclusion)
        self.support = frozenset(support)
        self.contingent_base = frozenset(base)
        self.sub_conclusions = frozenset(subs)
        self._key = (str(conclusion), tuple(sorted(r.rid for r in self.support)))

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Argument) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def is_evidence(self) -> bool:
        return not self.support

    @property
    def top_origin(self) -> str:
        return self.top_rule.origin if self.top_rule is not None else "evidence"

    def nodes(self) -> list["Argument"]:
        """All derivation nodes, depth-first, deduplicated."""
        seen: dict[tuple, Argument] = {}

        def walk(a: "Argument") -> None:
            if a._key in seen:
                return
            seen[a._key] = a
            for p in a.premises:
                walk(p)

        walk(self)
        return list(seen.values())

    def sub_arguments(self) -> list["Argument"]:
        """Proper and improper sub-arguments that carry defeasible support."""
        return [n for n in self.nodes() if n.support]

    def sub_arguments_at(self, point: Literal) -> list["Argument"]:
        return [n for n in self.nodes() if n.support and n.conclusion == point]

    def entry_partition(self) -> frozenset[PropFormula]:
        """Contribution-entry formulas at the derivation frontier."""
        if self.top_rule is None and self.conclusion.kind is Kind.CONTR:
            return frozenset({self.conclusion.subject[0]})
        blocks: set[PropFormula] = set()
        for n in self.nodes():
            if n.top_rule is None and n.conclusion.kind is Kind.CONTR:
                blocks.add(n.conclusion.subject[0])
        return frozenset(blocks)

    def rule_ids(self) -> list[str]:
        return sorted(r.rid for r in self.support)

    def describe(self) -> str:
        kind = "evidence" if self.is_evidence else f"{len(self.support)} rules"
        return f"<{self.conclusion} [{kind}]>"

    __repr__ = describe


class Relation(enum.Enum):
    A_STRICT = "a_strict"
    B_STRICT = "b_strict"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class SpecificityResult:
    relation: Relation
    approximate: bool = False


class EdgeKind(enum.Enum):
    DEFEAT = "defeat"
    INTERFERENCE = "interference"


@dataclass(frozen=True)
class AttackEdge:
    attacker: Argument
    target: Argument
    point: Literal
    kind: EdgeKind


class Label(enum.Enum):
    UNDEFEATED = "UNDEFEATED"
    DEFEATED = "DEFEATED"
    UNDECIDED = "UNDECIDED"


class Verdict(enum.Enum):
    JUSTIFIED = "JUSTIFIED"
    DENIED = "DENIED"
    INTERFERENCE = "INTERFERENCE"
    NO_ARGUMENT = "NO_ARGUMENT"


def disagree(p: Literal, q: Literal) -> bool:
    """Direct conflict: opposite literals or rival values for one function."""
    if p == q:
        return False
    if p.negation() == q:
        return True
    kp, kq = p.functional_key(), q.functional_key()
    return kp is not None and kp == kq and p.value != q.value


@dataclass
class ConstructionResult:
    arguments: tuple[Argument, ...]
    partial: bool


class ArgumentWorkspace:
    """Memoized demand-driven argument construction over one knowledge base.

    The budget counts rule instantiations; exhausting it marks every
    result obtained afterwards as partial, it never raises.
    """

    def __init__(self, kb: KnowledgeBase, config: EngineConfig = DEFAULT_CONFIG) -> None:
        self.kb = kb
        self.config = config
        self.evidence_closure = Closure(kb, kb.facts())
        self._memo: dict[tuple, list[Argument]] = {}
        self._in_progress: set[tuple] = set()
        self.instantiations = 0
        self.partial = False
        self._spec_cache: dict[tuple, SpecificityResult] = {}

    @staticmethod
    def _pattern_key(pattern: Literal) -> tuple:
        return (pattern.kind, pattern.subject)

    def arguments_for(self, goal: Literal) -> list[Argument]:
        """All minimal consistent arguments concluding literals that match
        the goal; a valued goal with an exact value filters the open query."""
        open_args = self._build(goal.pattern())
        if goal.value is None:
            return open_args
        return [a for a in open_args if a.conclusion == goal]

    def values_for(self, pattern: Literal) -> list[Fraction]:
        vals = {a.conclusion.value for a in self._build(pattern.pattern())}
        return sorted(v for v in vals if v is not None)

    def _build(self, pattern: Literal) -> list[Argument]:
        key = self._pattern_key(pattern)
        if key in self._memo:
            return self._memo[key]
        if key in self._in_progress:
            return []
        self._in_progress.add(key)
        try:
            args = self._construct(pattern)
        finally:
            self._in_progress.discard(key)
        self._memo[key] = args
        return args

    def _construct(self, pattern: Literal) -> list[Argument]:
        found: dict[tuple, Argument] = {}

        def consider(arg: Argument) -> None:
            if arg._key not in found and self._consistent(arg):
                found[arg._key] = arg

        for fact in sorted(self.kb.facts(), key=Literal.sort_key):
            if fact.matches(pattern):
                consider(Argument(fact, None, ()))
        ground = pattern.value is not None or not pattern.is_valued
        if ground and not any(a.conclusion == pattern for a in found.values()):
            if self.evidence_closure.derives(pattern):
                consider(Argument(pattern, None, ()))

        instances = schemata.emit_for(
            self.kb, pattern, self.values_for, self.config, self.evidence_closure
        )
        for inst in instances:
            if self.instantiations >= self.config.budget:
                self.partial = True
                break
            self.instantiations += 1
            premise_choices: list[list[Argument]] = []
            feasible = True
            for body_lit in sorted(inst.body, key=Literal.sort_key):
                options = self.arguments_for(body_lit)
                if not options:
                    feasible = False
                    break
                premise_choices.append(options)
            if not feasible:
                continue
            for combo in product(*premise_choices):
                consider(Argument(inst.head, inst, tuple(combo)))

        return self._minimal(list(found.values()))

    def _consistent(self, arg: Argument) -> bool:
        literals: set[Literal] = set()
        for node in arg.nodes():
            literals.add(node.conclusion)
            if node.top_rule is not None:
                literals.update(node.top_rule.body)
        probs = {l for l in self.kb.necessary if l.kind is Kind.PROB}
        facts = self.kb.contingent | probs | literals
        return not Closure(self.kb, facts).inconsistent

    @staticmethod
    def _minimal(args: list[Argument]) -> list[Argument]:
        by_conclusion: dict[Literal, list[Argument]] = {}
        for a in args:
            by_conclusion.setdefault(a.conclusion, []).append(a)
        keep: list[Argument] = []
        for group in by_conclusion.values():
            supports = [frozenset(a.rule_ids()) for a in group]
            for i, a in enumerate(group):
                if any(supports[j] < supports[i] for j in range(len(group))):
                    continue
                keep.append(a)
        keep.sort(key=lambda a: a._key)
        return keep

    # -- specificity ----------------------------------------------------

    def more_specific(self, a: Argument, b: Argument) -> SpecificityResult:
        cache_key = (a._key, b._key)
        hit = self._spec_cache.get(cache_key)
        if hit is not None:
            return hit
        result = self._compare(a, b)
        self._spec_cache[cache_key] = result
        mirror = {
            Relation.A_STRICT: Relation.B_STRICT,
            Relation.B_STRICT: Relation.A_STRICT,
            Relation.EQUIVALENT: Relation.EQUIVALENT,
            Relation.INCOMPARABLE: Relation.INCOMPARABLE,
        }[result.relation]
        self._spec_cache[(b._key, a._key)] = SpecificityResult(mirror, result.approximate)
        return result

    def _compare(self, a: Argument, b: Argument) -> SpecificityResult:
        # specificity ranks rivals: arguments whose conclusions disagree.
        # Unrelated conclusions are incomparable by fiat, which keeps the
        # relation a strict partial order on any pool.
        if a == b:
            return SpecificityResult(Relation.EQUIVALENT)
        if not disagree(a.conclusion, b.conclusion):
            return SpecificityResult(Relation.INCOMPARABLE)
        base = sorted(a.contingent_base | b.contingent_base, key=Literal.sort_key)
        approximate = len(base) > self.config.activation_cap
        if approximate:
            rel = self._syntactic_relation(a, b)
        else:
            rel = self._activation_relation(a, b, base)
        if rel in (Relation.EQUIVALENT, Relation.INCOMPARABLE):
            tie = self._tiebreak(a, b)
            if tie is not None:
                rel = tie
        return SpecificityResult(rel, approximate)

    @staticmethod
    def _syntactic_relation(a: Argument, b: Argument) -> Relation:
        if a.contingent_base == b.contingent_base:
            return Relation.EQUIVALENT
        if a.contingent_base > b.contingent_base:
            return Relation.A_STRICT
        if b.contingent_base > a.contingent_base:
            return Relation.B_STRICT
        return Relation.INCOMPARABLE

    def _activation_relation(self, a: Argument, b: Argument, base: list[Literal]) -> Relation:
        kb = self.kb
        necessary = kb.necessary
        rules_a = tuple(a.support)
        rules_b = tuple(b.support)
        a_nontrivial: list[frozenset[Literal]] = []
        b_nontrivial: list[frozenset[Literal]] = []
        activation: dict[frozenset[Literal], tuple[bool, bool]] = {}
        for size in range(len(base) + 1):
            for subset in combinations(base, size):
                e = frozenset(subset)
                facts = necessary | e
                act_a = derives_with(kb, facts, rules_a, a.conclusion)
                act_b = derives_with(kb, facts, rules_b, b.conclusion)
                activation[e] = (act_a, act_b)
                if act_a and not strictly_derives(kb, facts, a.conclusion):
                    a_nontrivial.append(e)
                if act_b and not strictly_derives(kb, facts, b.conclusion):
                    b_nontrivial.append(e)
        a_le_b = all(activation[e][1] for e in a_nontrivial)
        b_le_a = all(activation[e][0] for e in b_nontrivial)
        if a_le_b and not b_le_a:
            return Relation.A_STRICT
        if b_le_a and not a_le_b:
            return Relation.B_STRICT
        if a_le_b and b_le_a:
            return Relation.EQUIVALENT
        return Relation.INCOMPARABLE

    @staticmethod
    def _tiebreak(a: Argument, b: Argument) -> Optional[Relation]:
        ca, cb = a.conclusion, b.conclusion
        if ca.kind is Kind.UTILITY and cb.kind is Kind.UTILITY and ca.subject == cb.subject:
            oa = a.top_origin
            ob = b.top_origin
            direct = {"ax2", "assess"}
            if oa == "ax3" and ob in direct:
                return Relation.A_STRICT
            if ob == "ax3" and oa in direct:
                return Relation.B_STRICT
            if oa == "assess" and ob == "assess":
                basis_a = a.top_rule.info[2]
                basis_b = b.top_rule.info[2]
                if basis_a > basis_b:
                    return Relation.A_STRICT
                if basis_b > basis_a:
                    return Relation.B_STRICT
        if ca.kind is Kind.CONTR and cb.kind is Kind.CONTR and ca.subject == cb.subject:
            pa, pb = a.entry_partition(), b.entry_partition()
            if pa != pb:
                if _partition_coarsens(pa, pb):
                    return Relation.A_STRICT
                if _partition_coarsens(pb, pa):
                    return Relation.B_STRICT
        return None

    # -- attack and labeling --------------------------------------------

    def attacks(self, attacker: Argument, target: Argument) -> list[AttackEdge]:
        """Edges from one attacker onto every conflicting point of a target.

        A less specific attacker yields no edge at all: its attack fails
        against the better-informed sub-argument.
        """
        edges: list[AttackEdge] = []
        if attacker == target:
            return edges
        for point in sorted(target.sub_conclusions, key=Literal.sort_key):
            if not disagree(attacker.conclusion, point):
                continue
            subs = target.sub_arguments_at(point)
            if not subs:
                continue
            relations = [self.more_specific(attacker, sub).relation for sub in subs]
            if any(rel is Relation.B_STRICT for rel in relations):
                continue
            if all(rel is Relation.A_STRICT for rel in relations):
                kind = EdgeKind.DEFEAT
            else:
                kind = EdgeKind.INTERFERENCE
            edges.append(AttackEdge(attacker, target, point, kind))
        return edges


def _partition_coarsens(pa: frozenset[PropFormula], pb: frozenset[PropFormula]) -> bool:
    """Every block of pb fits inside a block of pa over the same atoms."""
    if {a for f in pa for a in f.atoms} != {a for f in pb for a in f.atoms}:
        return False
    return all(any(g.atom_set <= f.atom_set for f in pa) for g in pb)


def construct_arguments(
    kb: KnowledgeBase,
    goal: Literal,
    budget: int = DEFAULT_CONFIG.budget,
    config: EngineConfig = DEFAULT_CONFIG,
) -> ConstructionResult:
    """All minimal consistent arguments for a ground goal, within budget."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    ws = ArgumentWorkspace(kb, EngineConfig(budget, config.max_arity, config.activation_cap))
    args = ws.arguments_for(goal)
    return ConstructionResult(tuple(args), ws.partial)


def counterarguments(
    kb: KnowledgeBase,
    target: Argument,
    pool: Iterable[Argument],
    config: EngineConfig = DEFAULT_CONFIG,
    workspace: Optional[ArgumentWorkspace] = None,
) -> list[AttackEdge]:
    """Every attack from a pool member onto the target, in stable order."""
    ws = workspace or ArgumentWorkspace(kb, config)
    edges: list[AttackEdge] = []
    for attacker in sorted(pool, key=lambda a: a._key):
        edges.extend(ws.attacks(attacker, target))
    return edges


def more_specific(
    kb: KnowledgeBase,
    a: Argument,
    b: Argument,
    config: EngineConfig = DEFAULT_CONFIG,
    workspace: Optional[ArgumentWorkspace] = None,
) -> SpecificityResult:
    ws = workspace or ArgumentWorkspace(kb, config)
    return ws.more_specific(a, b)


def label_arguments(pool: Iterable[Argument], edges: Iterable[AttackEdge]) -> dict[Argument, Label]:
    """Grounded labeling: the least fixpoint, independent of iteration order."""
    members = sorted(set(pool), key=lambda a: a._key)
    incoming: dict[Argument, list[Argument]] = {a: [] for a in members}
    for e in edges:
        if e.target in incoming and e.attacker in incoming:
            incoming[e.target].append(e.attacker)
    labels: dict[Argument, Label] = {}
    changed = True
    while changed:
        changed = False
        for arg in members:
            if arg in labels:
                continue
            attackers = incoming[arg]
            if all(labels.get(x) is Label.DEFEATED for x in attackers):
                labels[arg] = Label.UNDEFEATED
                changed = True
            elif any(labels.get(x) is Label.UNDEFEATED for x in attackers):
                labels[arg] = Label.DEFEATED
                changed = True
    for arg in members:
        labels.setdefault(arg, Label.UNDECIDED)
    return labels


@dataclass
class Trace:
    """A complete dialectic: pool, attacks, labels, verdict.

    Serializes to a stable JSON shape; `display_view` collapses
    sub-arguments into their maximal containers for rendering.
    """

    goal: Literal
    verdict: Verdict
    pool: list[Argument]
    edges: list[AttackEdge]
    labels: dict[Argument, Label]
    partial: bool
    budget_used: int

    def argument_ids(self) -> dict[Argument, str]:
        ordered = sorted(self.pool, key=lambda a: a._key)
        return {a: f"A{i + 1}" for i, a in enumerate(ordered)}

    def label_of(self, arg: Argument) -> Label:
        return self.labels.get(arg, Label.UNDECIDED)

    def arguments_for_literal(self, lit: Literal) -> list[Argument]:
        return [a for a in self.pool if a.conclusion == lit]

    def display_view(self) -> "DisplayView":
        return build_display_view(self)

    def to_json_dict(self) -> dict:
        ids = self.argument_ids()
        pool = []
        for arg in sorted(self.pool, key=lambda a: a._key):
            pool.append(
                {
                    "id": ids[arg],
                    "conclusion": str(arg.conclusion),
                    "rules": arg.rule_ids(),
                    "contingent_base": sorted(str(l) for l in arg.contingent_base),
                    "sub_conclusions": sorted(str(l) for l in arg.sub_conclusions),
                    "label": self.label_of(arg).value,
                }
            )
        edges = sorted(
            (
                {
                    "attacker": ids[e.attacker],
                    "target": ids[e.target],
                    "point": str(e.point),
                    "kind": e.kind.value,
                }
                for e in self.edges
                if e.attacker in ids and e.target in ids
            ),
            key=lambda d: (d["attacker"], d["target"], d["point"]),
        )
        view = self.display_view()
        return {
            "schema": "dialectic-trace/1",
            "goal": str(self.goal),
            "verdict": self.verdict.value,
            "partial": self.partial,
            "budget_used": self.budget_used,
            "pool": pool,
            "edges": edges,
            "display": view.to_json_dict(ids),
        }


@dataclass
class DisplayEdge:
    attacker: Argument
    target: Argument
    source_literal: Literal
    point: Literal
    kind: EdgeKind
    bidirectional: bool = False


@dataclass
class DisplayView:
    """Maximal arguments only; attack edges lifted into their containers.

    Mutual interference collapses to one bidirectional edge so a rendered
    pair reads as a single conflict.
    """

    clusters: list[Argument]
    edges: list[DisplayEdge]

    def defeat_edges(self) -> list[DisplayEdge]:
        return [e for e in self.edges if e.kind is EdgeKind.DEFEAT]

    def interference_pairs(self) -> list[DisplayEdge]:
        return [e for e in self.edges if e.kind is EdgeKind.INTERFERENCE]

    def to_json_dict(self, ids: dict[Argument, str]) -> dict:
        return {
            "clusters": [ids[a] for a in self.clusters if a in ids],
            "edges": [
                {
                    "attacker": ids[e.attacker],
                    "target": ids[e.target],
                    "source": str(e.source_literal),
                    "point": str(e.point),
                    "kind": e.kind.value,
                    "bidirectional": e.bidirectional,
                }
                for e in self.edges
                if e.attacker in ids and e.target in ids
            ],
            "defeat_edges": len(self.defeat_edges()),
            "interference_pairs": len(self.interference_pairs()),
        }


def build_display_view(trace: Trace) -> DisplayView:
    pool = sorted(set(trace.pool), key=lambda a: a._key)
    descendants: dict[tuple, set[tuple]] = {}
    for arg in pool:
        descendants[arg._key] = {n._key for n in arg.nodes() if n._key != arg._key}
    contained = set().union(*descendants.values()) if descendants else set()
    maximal = [a for a in pool if a._key not in contained]

    def containers(arg: Argument) -> list[Argument]:
        if arg._key not in contained:
            return [arg]
        return [m for m in maximal if arg._key in descendants[m._key]]

    best: dict[tuple, DisplayEdge] = {}
    for e in sorted(
        trace.edges,
        key=lambda e: (len(e.attacker.support), str(e.point), e.attacker._key, e.target._key),
    ):
        for m_att in containers(e.attacker):
            for m_tgt in containers(e.target):
                if m_att == m_tgt:
                    continue
                key = (m_att._key, m_tgt._key, e.kind)
                if key not in best:
                    best[key] = DisplayEdge(
                        m_att, m_tgt, e.attacker.conclusion, e.point, e.kind
                    )
    merged: list[DisplayEdge] = []
    dropped: set[tuple] = set()
    for key in sorted(best, key=lambda k: (k[0], k[1], k[2].value)):
        if key in dropped:
            continue
        edge = best[key]
        reverse = (key[1], key[0], key[2])
        if edge.kind is EdgeKind.INTERFERENCE and reverse in best:
            edge.bidirectional = True
            dropped.add(reverse)
        merged.append(edge)
    return DisplayView(maximal, merged)


def _rival_patterns(lit: Literal) -> list[Literal]:
    out: list[Literal] = []
    neg = lit.negation()
    if neg is not None:
        out.append(neg)
    if lit.functional_key() is not None:
        out.append(lit.pattern())
    return out


def dialectic(
    kb: KnowledgeBase,
    seeds: Sequence[Literal],
    config: EngineConfig = DEFAULT_CONFIG,
    workspace: Optional[ArgumentWorkspace] = None,
) -> tuple[list[Argument], list[AttackEdge], dict[Argument, Label], ArgumentWorkspace]:
    """Build the argument pool reachable from the seed literals, closed
    under sub-arguments and disagreement, then attack and label it."""
    ws = workspace or ArgumentWorkspace(kb, config)
    pool: dict[tuple, Argument] = {}
    processed: set[tuple] = set()
    frontier: list[Argument] = []

    def admit(arg: Argument) -> None:
        if arg._key not in pool:
            pool[arg._key] = arg
            frontier.append(arg)

    for seed in seeds:
        for arg in ws.arguments_for(seed):
            admit(arg)
    while frontier:
        arg = frontier.pop()
        for sub in arg.sub_arguments():
            admit(sub)
        for point in sorted(arg.sub_conclusions, key=Literal.sort_key):
            for pattern in _rival_patterns(point):
                pkey = (pattern.kind, pattern.subject)
                if pkey in processed:
                    continue
                processed.add(pkey)
                # rival values for the same subject attack one another in
                # every combination, so the whole pattern family enters
                for rival in ws.arguments_for(pattern):
                    admit(rival)
    members = sorted(pool.values(), key=lambda a: a._key)
    edges: list[AttackEdge] = []
    for target in members:
        edges.extend(counterarguments(kb, target, members, config, ws))
    labels = label_arguments(members, edges)
    return members, edges, labels, ws


def justify(
    kb: KnowledgeBase,
    goal: Literal,
    budget: int = DEFAULT_CONFIG.budget,
    config: EngineConfig = DEFAULT_CONFIG,
    workspace: Optional[ArgumentWorkspace] = None,
) -> Trace:
    """Dialectical status of a ground goal literal.

    JUSTIFIED requires an undefeated argument for the goal and no
    undefeated argument for a disagreeing literal; an undecided best
    candidate on either side reports INTERFERENCE.
    """
    cfg = EngineConfig(budget, config.max_arity, config.activation_cap)
    pool, edges, labels, ws = dialectic(kb, [goal] + _rival_patterns(goal), cfg, workspace)
    mine = [a for a in pool if a.conclusion == goal]
    rivals = [a for a in pool if disagree(a.conclusion, goal)]
    mine_undefeated = any(labels[a] is Label.UNDEFEATED for a in mine)
    rival_undefeated = any(labels[a] is Label.UNDEFEATED for a in rivals)
    undecided = any(labels[a] is Label.UNDECIDED for a in mine + rivals)
    if mine_undefeated and not rival_undefeated:
        verdict = Verdict.JUSTIFIED
    elif rival_undefeated and not mine_undefeated:
        verdict = Verdict.DENIED
    elif (mine or rivals) and undecided:
        verdict = Verdict.INTERFERENCE
    else:
        verdict = Verdict.NO_ARGUMENT
    return Trace(goal, verdict, pool, edges, labels, ws.partial, ws.instantiations)


def evaluate_utility(
    kb: KnowledgeBase,
    state: str,
    config: EngineConfig = DEFAULT_CONFIG,
    workspace: Optional[ArgumentWorkspace] = None,
) -> tuple[Optional[Fraction], Trace]:
    """The justified utility of a state, if a unique one survives."""
    pattern = Literal(Kind.UTILITY, (state,), None)
    pool, edges, labels, ws = dialectic(kb, [pattern], config, workspace)
    winners = {
        a.conclusion.value
        for a in pool
        if a.conclusion.kind is Kind.UTILITY
        and a.conclusion.subject == (state,)
        and labels[a] is Label.UNDEFEATED
    }
    value = winners.pop() if len(winners) == 1 else None
    trace = Trace(
        pattern,
        Verdict.JUSTIFIED if value is not None else Verdict.NO_ARGUMENT,
        pool,
        edges,
        labels,
        ws.partial,
        ws.instantiations,
    )
    if value is not None:
        trace.goal = Literal(Kind.UTILITY, (state,), value)
    return value, trace


def evaluate_contribution(
    kb: KnowledgeBase,
    f: PropFormula,
    config: EngineConfig = DEFAULT_CONFIG,
    workspace: Optional[ArgumentWorkspace] = None,
) -> tuple[Optional[Fraction], Trace]:
    """The justified contribution of a formula, if a unique one survives."""
    pattern = Literal(Kind.CONTR, (f,), None)
    pool, edges, labels, ws = dialectic(kb, [pattern], config, workspace)
    winners = {
        a.conclusion.value
        for a in pool
        if a.conclusion.kind is Kind.CONTR
        and a.conclusion.subject == (f,)
        and labels[a] is Label.UNDEFEATED
    }
    value = winners.pop() if len(winners) == 1 else None
    trace = Trace(
        pattern if value is None else Literal(Kind.CONTR, (f,), value),
        Verdict.JUSTIFIED if value is not None else Verdict.NO_ARGUMENT,
        pool,
        edges,
        labels,
        ws.partial,
        ws.instantiations,
    )
    return value, trace


@dataclass(frozen=True)
class BruteArgument:
    """Oracle-side argument: conclusion plus support ids, nothing else."""

    conclusion: Literal
    support_ids: frozenset[str]

    def key(self) -> tuple:
        return (str(self.conclusion), tuple(sorted(self.support_ids)))


def enumerate_all_arguments(
    kb: KnowledgeBase,
    size_bound: Optional[int] = None,
    config: EngineConfig = DEFAULT_CONFIG,
    goals: Optional[Sequence[Literal]] = None,
    scale_limit: int = 20,
) -> list[BruteArgument]:
    """Brute-force argument oracle by subset enumeration.

    Entirely independent of the backward-chaining search: instantiate the
    whole ground rule space, walk subsets of defeasible instances in size
    order, and keep the minimal consistent supports for each candidate
    conclusion.  Refuses beyond `scale_limit` instances.
    """
    instances = schemata.enumerate_all_instances(kb, config)
    if len(instances) > scale_limit:
        raise OracleScaleError(
            f"{len(instances)} ground instances exceed the oracle scale of {scale_limit}"
        )
    facts = kb.facts()
    if goals is None:
        candidates = sorted(
            {inst.head for inst in instances} | set(facts), key=Literal.sort_key
        )
    else:
        heads = {inst.head for inst in instances} | set(facts)
        candidates = sorted(
            {h for h in heads for g in goals if h.matches(g)}, key=Literal.sort_key
        )
    probs = {l for l in kb.necessary if l.kind is Kind.PROB}
    bound = len(instances) if size_bound is None else min(size_bound, len(instances))
    results: list[BruteArgument] = []
    minimal_supports: dict[Literal, list[frozenset[str]]] = {}
    closure_cache: dict[frozenset[str], Closure] = {}

    def closure_for(subset: tuple[RuleInstance, ...]) -> Closure:
        key = frozenset(i.rid for i in subset)
        hit = closure_cache.get(key)
        if hit is None:
            hit = Closure(kb, facts, subset)
            closure_cache[key] = hit
        return hit

    def derivable(subset: tuple[RuleInstance, ...], c: Literal) -> bool:
        return closure_for(subset).derives(c)

    for size in range(0, bound + 1):
        for subset in combinations(instances, size):
            ids = frozenset(i.rid for i in subset)
            for c in candidates:
                if any(prior <= ids and prior != ids for prior in minimal_supports.get(c, [])):
                    continue
                if not derivable(subset, c):
                    continue
                if size > 0 and any(
                    derivable(tuple(s for s in subset if s is not skip), c)
                    for skip in subset
                ):
                    continue
                own = set().union(*(set(i.body) | {i.head} for i in subset)) if subset else {c}
                check = kb.contingent | probs | own | {c}
                if Closure(kb, check).inconsistent:
                    continue
                minimal_supports.setdefault(c, []).append(ids)
                results.append(BruteArgument(c, ids))
    results.sort(key=lambda b: b.key())
    return results
