"""Ground conjunctive language underneath the deliberation engine.

States are described by conjunctions of declared properties.  Literals say
what holds where, what acts achieve, what is (un)desirable, which acts to
perform, and make exact-rational claims about utility contributions,
state utilities, assessed valuations, and event probabilities.  All
numeric payloads are `fractions.Fraction`, never floats: defeat between
rival utility claims hinges on exact equality.

Everything here is immutable; sibling modules build new knowledge bases
rather than mutating old ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional


class MalformedFormulaError(ValueError):
    """A conjunction with no atoms."""


class VocabularyError(ValueError):
    """An identifier was used without being declared."""


class DuplicateEntryError(ValueError):
    """A functional fact (contribution, probability, assessment basis) was redeclared."""


class ModelError(ValueError):
    """A decision-model operation violated the tree discipline."""


def parse_rational(text: str) -> Fraction:
    """Parse '3', '-20', '2/5' or '0.4' into an exact Fraction."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Render exactly: integers bare, terminating decimals as decimals, else num/den.

    The choice is stable under round-trips: every rendering parses back to
    the same Fraction.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        digits = max(twos, fives)
        scaled = value * Fraction(10) ** digits
        text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
        sign = "-" if value < 0 else ""
        return f"{sign}{text[:-digits]}.{text[-digits:]}"
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class PropFormula:
    """A conjunction of property atoms, canonicalized on construction.

    Atoms are sorted and deduplicated so P&Q equals Q&P and P&P equals P.
    The `negated` flag negates the formula as a whole; atoms themselves
    are never negated.
    """

    atoms: tuple[str, ...]
    negated: bool = False

    def __post_init__(self) -> None:
        canonical = tuple(sorted(set(self.atoms)))
        if not canonical:
            raise MalformedFormulaError("formula needs at least one atom")
        object.__setattr__(self, "atoms", canonical)

    @property
    def atom_set(self) -> frozenset[str]:
        return frozenset(self.atoms)

    def __str__(self) -> str:
        body = " & ".join(self.atoms)
        return f"!({body})" if self.negated else body


def formula(*atoms: str, negated: bool = False) -> PropFormula:
    return PropFormula(tuple(atoms), negated)


def conj_normalize(f: PropFormula) -> PropFormula:
    """Canonical form of a conjunction; idempotent.

    Construction already canonicalizes, so this validates and returns an
    equal instance; it exists so callers holding raw atom tuples have one
    named place to normalize through.
    """
    if not f.atoms:
        raise MalformedFormulaError("formula needs at least one atom")
    return PropFormula(f.atoms, f.negated)


class Kind(enum.Enum):
    HOLDS = "holds"
    ACHIEVES = "achieves"
    DESIR = "desir"
    UNDESIR = "undesir"
    DO = "do"
    NOT_DO = "not_do"
    CONTR = "contr"
    UTILITY = "u"
    ASSESS = "assess"
    PROB = "prob"
    FALSUM = "falsum"


_VALUED = {Kind.CONTR, Kind.UTILITY, Kind.ASSESS, Kind.PROB}
_CONTINGENT_KINDS = {
    Kind.HOLDS,
    Kind.ACHIEVES,
    Kind.DESIR,
    Kind.UNDESIR,
    Kind.DO,
    Kind.NOT_DO,
    Kind.ASSESS,
}


@dataclass(frozen=True)
class Literal:
    """One ground (or pattern) literal.

    `subject` is kind-specific:
      HOLDS      (formula, state)
      ACHIEVES   (act, formula)
      DESIR/UNDESIR (formula,)
      DO/NOT_DO  (act,)
      CONTR      (formula,)
      UTILITY    (state,)
      ASSESS     (state, frozenset of basis properties)
      PROB       (event, state)
      FALSUM     ()
    Valued kinds carry a Fraction; `value=None` acts as a wildcard pattern
    in queries and never appears in stored facts.
    """

    kind: Kind
    subject: tuple
    value: Optional[Fraction] = None

    @property
    def is_valued(self) -> bool:
        return self.kind in _VALUED

    @property
    def is_contingent_kind(self) -> bool:
        return self.kind in _CONTINGENT_KINDS

    def functional_key(self) -> Optional[tuple]:
        """Key under which at most one value may be claimed consistently."""
        if self.kind in _VALUED:
            return (self.kind, self.subject)
        return None

    def pattern(self) -> "Literal":
        """The open-value pattern for this literal (identity for unvalued kinds)."""
        if self.kind in _VALUED:
            return Literal(self.kind, self.subject, None)
        return self

    def matches(self, pat: "Literal") -> bool:
        if self.kind is not pat.kind or self.subject != pat.subject:
            return False
        return pat.value is None or self.value == pat.value

    def negation(self) -> Optional["Literal"]:
        """The opposite literal, where the language has one."""
        if self.kind is Kind.DO:
            return Literal(Kind.NOT_DO, self.subject)
        if self.kind is Kind.NOT_DO:
            return Literal(Kind.DO, self.subject)
        if self.kind is Kind.DESIR:
            return Literal(Kind.UNDESIR, self.subject)
        if self.kind is Kind.UNDESIR:
            return Literal(Kind.DESIR, self.subject)
        return None

    def __str__(self) -> str:
        k = self.kind
        if k is Kind.HOLDS:
            return f"holds({self.subject[0]}, {self.subject[1]})"
        if k is Kind.ACHIEVES:
            return f"achieves({self.subject[0]}, {self.subject[1]})"
        if k is Kind.DESIR:
            return f"desir({self.subject[0]})"
        if k is Kind.UNDESIR:
            return f"undesir({self.subject[0]})"
        if k is Kind.DO:
            return f"do({self.subject[0]})"
        if k is Kind.NOT_DO:
            return f"not_do({self.subject[0]})"
        if k is Kind.FALSUM:
            return "falsum"
        val = "?" if self.value is None else format_rational(self.value)
        if k is Kind.CONTR:
            return f"contr({self.subject[0]}) = {val}"
        if k is Kind.UTILITY:
            return f"u({self.subject[0]}) = {val}"
        if k is Kind.PROB:
            return f"prob({self.subject[0]}, {self.subject[1]}) = {val}"
        if k is Kind.ASSESS:
            basis = ", ".join(sorted(self.subject[1]))
            return f"assess({self.subject[0]} | {basis}) = {val}"
        raise AssertionError(k)

    def sort_key(self) -> tuple:
        return (self.kind.value, str(self))


FALSUM = Literal(Kind.FALSUM, ())


def holds(f: PropFormula, state: str) -> Literal:
    return Literal(Kind.HOLDS, (conj_normalize(f), state))


def achieves(act: str, f: PropFormula) -> Literal:
    return Literal(Kind.ACHIEVES, (act, conj_normalize(f)))


def desir(f: PropFormula) -> Literal:
    return Literal(Kind.DESIR, (conj_normalize(f),))


def undesir(f: PropFormula) -> Literal:
    return Literal(Kind.UNDESIR, (conj_normalize(f),))


def do(act: str) -> Literal:
    return Literal(Kind.DO, (act,))


def not_do(act: str) -> Literal:
    return Literal(Kind.NOT_DO, (act,))


def contr_eq(f: PropFormula, value) -> Literal:
    v = None if value is None else Fraction(value)
    return Literal(Kind.CONTR, (conj_normalize(f),), v)


def utility_eq(state: str, value) -> Literal:
    v = None if value is None else Fraction(value)
    return Literal(Kind.UTILITY, (state,), v)


def assess_eq(state: str, basis: Iterable[str], value) -> Literal:
    v = None if value is None else Fraction(value)
    return Literal(Kind.ASSESS, (state, frozenset(basis)), v)


def prob_eq(event: str, state: str, value) -> Literal:
    v = None if value is None else Fraction(value)
    return Literal(Kind.PROB, (event, state), v)


class Strength(enum.Enum):
    STRICT = "strict"
    DEFEASIBLE = "defeasible"


def is_variable(name: str) -> bool:
    return bool(name) and name[0].isupper()


@dataclass(frozen=True)
class Rule:
    """A user-level rule; identifiers starting uppercase are variables.

    Variables are instantiated over the declared vocabulary before any
    argument construction: the engine itself only ever sees ground rule
    instances.
    """

    name: str
    body: tuple[Literal, ...]
    head: Literal
    strength: Strength
    origin: str = "user"

    def literals(self) -> tuple[Literal, ...]:
        return self.body + (self.head,)

    def __str__(self) -> str:
        arrow = "->" if self.strength is Strength.STRICT else "=>"
        body = ", ".join(str(b) for b in self.body)
        return f"{self.name}: {body} {arrow} {self.head}"


@dataclass(frozen=True)
class RuleInstance:
    """A fully ground rule ready for argument construction.

    `origin` names the emitting schema ("ax1", "ax2", "assess", "ax3",
    "practical", "comparison", "compose") or "user:<name>".  `info` carries
    schema-specific payload consumed by the specificity tie-breakers.
    """

    rid: str
    body: frozenset[Literal]
    head: Literal
    strength: Strength
    origin: str
    info: tuple = ()

    def __str__(self) -> str:
        arrow = "->" if self.strength is Strength.STRICT else "=>"
        body = ", ".join(str(b) for b in sorted(self.body, key=Literal.sort_key))
        return f"[{self.rid}] {body} {arrow} {self.head}"


@dataclass(frozen=True, eq=False)
class Vocabulary:
    properties: frozenset[str] = frozenset()
    acts: tuple[str, ...] = ()
    states: tuple[str, ...] = ()
    events: frozenset[str] = frozenset()
    act_roots: Mapping[str, str] = field(default_factory=dict)
    joint_acts: Mapping[str, tuple[str, str]] = field(default_factory=dict)

    def check_property(self, name: str) -> None:
        if name not in self.properties:
            raise VocabularyError(f"undeclared property: {name}")

    def check_state(self, name: str) -> None:
        if name not in self.states:
            raise VocabularyError(f"undeclared state: {name}")

    def check_act(self, name: str) -> None:
        if name not in self.acts:
            raise VocabularyError(f"undeclared act: {name}")


@dataclass(frozen=True, eq=False)
class KnowledgeBase:
    """Declared vocabulary plus necessary and contingent knowledge.

    Contribution and probability facts are necessary, never contingent:
    were they contingent they would enter the specificity comparison and
    the defeat patterns over utility arguments would collapse.  The
    contingent side carries what holds, what acts achieve, desirability
    judgments, and assessed valuations.

    `state_children` mirrors the decision model's event expansions so the
    strict closure can infer a parent's description from its children's.
    """

    vocabulary: Vocabulary = field(default_factory=Vocabulary)
    necessary: frozenset[Literal] = frozenset()
    contingent: frozenset[Literal] = frozenset()
    strict_rules: tuple[Rule, ...] = ()
    defeasible_rules: tuple[Rule, ...] = ()
    state_children: Mapping[str, tuple[str, str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for lit in self.contingent:
            if lit.kind in (Kind.CONTR, Kind.PROB):
                raise DuplicateEntryError(
                    f"{lit.kind.value} facts are necessary knowledge, never contingent: {lit}"
                )
        seen: dict[tuple, Fraction] = {}
        for lit in sorted(self.necessary | self.contingent, key=Literal.sort_key):
            key = lit.functional_key()
            if key is None:
                continue
            if lit.value is None:
                raise ValueError(f"stored fact carries no value: {lit}")
            if key in seen and seen[key] != lit.value:
                raise DuplicateEntryError(f"conflicting declarations for {lit.pattern()}")
            seen[key] = lit.value

    def facts(self) -> frozenset[Literal]:
        return self.necessary | self.contingent

    def contributions(self) -> dict[PropFormula, Fraction]:
        return {
            lit.subject[0]: lit.value
            for lit in self.necessary
            if lit.kind is Kind.CONTR
        }

    def assessments(self, state: Optional[str] = None) -> list[Literal]:
        out = [lit for lit in self.contingent if lit.kind is Kind.ASSESS]
        if state is not None:
            out = [lit for lit in out if lit.subject[0] == state]
        return sorted(out, key=Literal.sort_key)

    def probability(self, event: str, state: str) -> Optional[Fraction]:
        for lit in self.necessary:
            if lit.kind is Kind.PROB and lit.subject == (event, state):
                return lit.value
        return None

    def with_additions(
        self,
        necessary: Iterable[Literal] = (),
        contingent: Iterable[Literal] = (),
        strict_rules: Iterable[Rule] = (),
        defeasible_rules: Iterable[Rule] = (),
        vocabulary: Optional[Vocabulary] = None,
        state_children: Optional[Mapping[str, tuple[str, str]]] = None,
    ) -> "KnowledgeBase":
        return KnowledgeBase(
            vocabulary=vocabulary or self.vocabulary,
            necessary=self.necessary | frozenset(necessary),
            contingent=self.contingent | frozenset(contingent),
            strict_rules=self.strict_rules + tuple(strict_rules),
            defeasible_rules=self.defeasible_rules + tuple(defeasible_rules),
            state_children=dict(state_children if state_children is not None else self.state_children),
        )


@dataclass(frozen=True)
class EngineConfig:
    """Caps that keep demand-driven instantiation finite and fast.

    `max_arity` bounds the conjunction size considered for additive
    contribution splits and for holds-formula enumeration; `activation_cap`
    bounds the contingent-base union beyond which specificity falls back
    to the syntactic superset test; `budget` counts rule instantiations.
    """

    budget: int = 100_000
    max_arity: int = 4
    activation_cap: int = 16


DEFAULT_CONFIG = EngineConfig()
