"""Text format for knowledge bases and decision models.

Line-oriented statements, one per line, terminated by a period; `#`
starts a comment.  Numeric literals are exact rationals (integer,
fraction `2/5`, or terminating decimal `0.4`).

    prop expense, whether_drove_alfa.
    act rent_alfa, rent_econo.
    state sA0.
    root rent_alfa = sA0.
    chance sA0 : dept_pays = 2/5 ? sA1 : sA2.
    holds sA1 : expense.
    contr expense = -3.
    assess u(sA1 | expense, whether_drove_alfa) = 10.
    utility sE0 = 2.
    evidence desir(drove_alfa).
    presume combine: desir(drove_alfa), undesir(big_expense)
        => undesir(drove_alfa & big_expense).   # must still fit one line
    strict link: holds(P, S) -> holds(P, S).

Uppercase identifiers inside rules are variables instantiated over the
declared vocabulary.  Serialization is canonical and idempotent:
statement groups appear in a fixed order, acts keep declaration order
(recommendation fallbacks depend on it), and everything else sorts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import (
    DuplicateEntryError,
    Kind,
    KnowledgeBase,
    Literal,
    MalformedFormulaError,
    ModelError,
    PropFormula,
    Rule,
    Strength,
    VocabularyError,
    Vocabulary,
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
from .model import DecisionModel, Expansion


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>-?\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>=>|->)
  | (?P<sym>[(),&|=?:.])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    column: int


def _tokenize(text: str, line: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        tokens.append(Token(kind, m.group(), m.start() + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], line: int) -> None:
        self.tokens = tokens
        self.line = line
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            col = (last.column + len(last.text)) if last else 1
            raise ParseError("unexpected end of statement", self.line, col)
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", self.line, tok.column)
        return tok

    def ident(self) -> Token:
        tok = self.next()
        if tok.kind != "ident":
            raise ParseError(f"expected identifier, found {tok.text!r}", self.line, tok.column)
        return tok

    def rational(self) -> Fraction:
        tok = self.next()
        if tok.kind != "number":
            raise ParseError(f"expected a rational, found {tok.text!r}", self.line, tok.column)
        return Fraction(tok.text)

    def done(self) -> bool:
        return self.i >= len(self.tokens)

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        col = tok.column if tok else 1
        return ParseError(message, self.line, col)


def _formula(cur: _Cursor) -> PropFormula:
    atoms = [cur.ident().text]
    while cur.peek() is not None and cur.peek().text == "&":
        cur.next()
        atoms.append(cur.ident().text)
    return PropFormula(tuple(atoms))


def _id_list(cur: _Cursor) -> list[str]:
    names = [cur.ident().text]
    while cur.peek() is not None and cur.peek().text == ",":
        cur.next()
        names.append(cur.ident().text)
    return names


def _literal(cur: _Cursor) -> Literal:
    head = cur.ident()
    name = head.text
    if name == "holds":
        cur.expect("(")
        f = _formula(cur)
        cur.expect(",")
        state = cur.ident().text
        cur.expect(")")
        return holds(f, state)
    if name == "achieves":
        cur.expect("(")
        act = cur.ident().text
        cur.expect(",")
        f = _formula(cur)
        cur.expect(")")
        return achieves(act, f)
    if name in ("desir", "undesir"):
        cur.expect("(")
        f = _formula(cur)
        cur.expect(")")
        return desir(f) if name == "desir" else undesir(f)
    if name in ("do", "not_do"):
        cur.expect("(")
        act = cur.ident().text
        cur.expect(")")
        return do(act) if name == "do" else not_do(act)
    if name == "contr":
        cur.expect("(")
        f = _formula(cur)
        cur.expect(")")
        cur.expect("=")
        return contr_eq(f, cur.rational())
    if name == "u":
        cur.expect("(")
        state = cur.ident().text
        cur.expect(")")
        cur.expect("=")
        return utility_eq(state, cur.rational())
    if name == "prob":
        cur.expect("(")
        event = cur.ident().text
        cur.expect(",")
        state = cur.ident().text
        cur.expect(")")
        cur.expect("=")
        return prob_eq(event, state, cur.rational())
    if name == "assess":
        cur.expect("(")
        state = cur.ident().text
        cur.expect("|")
        basis = _id_list(cur)
        cur.expect(")")
        cur.expect("=")
        return assess_eq(state, basis, cur.rational())
    raise ParseError(f"unknown literal kind {name!r}", cur.line, head.column)


def parse_literal(text: str, line: int = 1) -> Literal:
    """Parse one literal; the syntax the CLI and query endpoints accept."""
    cur = _Cursor(_tokenize(text, line), line)
    lit = _literal(cur)
    if not cur.done():
        raise cur.error("trailing input after literal")
    return lit


def render_literal(lit: Literal) -> str:
    return str(lit)


@dataclass(frozen=True)
class Statement:
    kind: str
    text: str
    line: int
    payload: tuple


@dataclass(frozen=True, eq=False)
class Document:
    """Parsed statements plus the knowledge base and model they denote."""

    statements: tuple[Statement, ...]
    kb: KnowledgeBase
    model: DecisionModel

    def apply(self, statement_text: str) -> "Document":
        """Extend with one more statement; replaying history re-derives
        exactly this document."""
        new_statements = _scan_statements(statement_text)
        if not new_statements:
            raise ParseError("no statement found", 1, 1)
        if len(new_statements) > 1:
            raise ParseError("one statement at a time", 1, 1)
        text = "\n".join([s.text for s in self.statements] + [new_statements[0].text + "."])
        try:
            return parse(text)
        except ParseError as exc:
            # report the position within the submitted statement
            rebased = max(1, exc.line - len(self.statements))
            raise ParseError(exc.message, rebased, exc.column) from exc


def _scan_statements(text: str) -> list[tuple]:
    """Split raw text into (line_no, statement_text) pairs."""
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        if not body.rstrip().endswith("."):
            raise ParseError("statement must end with '.'", line_no, len(body.rstrip()) + 1)
        stripped = body.rstrip()[:-1]
        if not stripped.strip():
            raise ParseError("empty statement", line_no, 1)
        out.append(_RawStatement(line_no, stripped))
    return out


@dataclass
class _RawStatement:
    line: int
    text: str


class _Builder:
    def __init__(self) -> None:
        self.properties: list[str] = []
        self.acts: list[str] = []
        self.states: list[str] = []
        self.explicit_states: list[str] = []
        self.events: list[str] = []
        self.act_roots: dict[str, str] = {}
        self.expansions: dict[str, Expansion] = {}
        self.holds_facts: dict[str, set[str]] = {}
        self.contr_entries: dict[PropFormula, tuple[Fraction, int]] = {}
        self.assessments: dict[tuple[str, frozenset[str]], tuple[Fraction, int]] = {}
        self.evidence: list[Literal] = []
        self.rules: list[Rule] = []
        self.rule_names: set[str] = set()
        self.statements: list[Statement] = []

    def err(self, message: str, line: int, column: int = 1) -> ParseError:
        return ParseError(message, line, column)

    def check_props(self, atoms: Iterable[str], line: int, allow_vars: bool = False) -> None:
        for a in atoms:
            if allow_vars and a[0].isupper():
                continue
            if a not in self.properties:
                raise self.err(f"undeclared property: {a}", line)

    def check_state(self, name: str, line: int, allow_vars: bool = False) -> None:
        if allow_vars and name[0].isupper():
            return
        if name not in self.states:
            raise self.err(f"undeclared state: {name}", line)

    def check_act(self, name: str, line: int, allow_vars: bool = False) -> None:
        if allow_vars and name[0].isupper():
            return
        if name not in self.acts:
            raise self.err(f"undeclared act: {name}", line)

    def check_literal(self, lit: Literal, line: int, allow_vars: bool = False) -> None:
        k = lit.kind
        if k is Kind.HOLDS:
            self.check_props(lit.subject[0].atoms, line, allow_vars)
            self.check_state(lit.subject[1], line, allow_vars)
        elif k is Kind.ACHIEVES:
            self.check_act(lit.subject[0], line, allow_vars)
            self.check_props(lit.subject[1].atoms, line, allow_vars)
        elif k in (Kind.DESIR, Kind.UNDESIR, Kind.CONTR):
            self.check_props(lit.subject[0].atoms, line, allow_vars)
        elif k in (Kind.DO, Kind.NOT_DO):
            self.check_act(lit.subject[0], line, allow_vars)
        elif k is Kind.UTILITY:
            self.check_state(lit.subject[0], line, allow_vars)
        elif k is Kind.ASSESS:
            self.check_state(lit.subject[0], line, allow_vars)
            self.check_props(lit.subject[1], line, allow_vars)
        elif k is Kind.PROB:
            self.check_state(lit.subject[1], line, allow_vars)

    def fold(self, raw: _RawStatement) -> None:
        cur = _Cursor(_tokenize(raw.text, raw.line), raw.line)
        keyword = cur.ident()
        handler = getattr(self, f"_stmt_{keyword.text}", None)
        if handler is None:
            raise ParseError(f"unknown statement {keyword.text!r}", raw.line, keyword.column)
        handler(cur, raw.line)
        if not cur.done():
            raise cur.error("trailing input after statement")

    def _declare(self, names: list[str], bucket: list[str], what: str, line: int) -> None:
        for n in names:
            if n in self.properties or n in self.acts or n in self.states:
                raise self.err(f"duplicate declaration: {n}", line)
            bucket.append(n)

    def _stmt_prop(self, cur: _Cursor, line: int) -> None:
        names = _id_list(cur)
        self._declare(names, self.properties, "property", line)
        self.statements.append(Statement("prop", f"prop {', '.join(names)}.", line, tuple(names)))

    def _stmt_act(self, cur: _Cursor, line: int) -> None:
        names = _id_list(cur)
        self._declare(names, self.acts, "act", line)
        self.statements.append(Statement("act", f"act {', '.join(names)}.", line, tuple(names)))

    def _stmt_state(self, cur: _Cursor, line: int) -> None:
        names = _id_list(cur)
        self._declare(names, self.states, "state", line)
        self.explicit_states.extend(names)
        self.statements.append(Statement("state", f"state {', '.join(names)}.", line, tuple(names)))

    def _stmt_root(self, cur: _Cursor, line: int) -> None:
        act = cur.ident().text
        cur.expect("=")
        state = cur.ident().text
        self.check_act(act, line)
        self.check_state(state, line)
        if act in self.act_roots:
            raise self.err(f"act already has a root: {act}", line)
        self.act_roots[act] = state
        self.statements.append(Statement("root", f"root {act} = {state}.", line, (act, state)))

    def _stmt_holds(self, cur: _Cursor, line: int) -> None:
        state = cur.ident().text
        cur.expect(":")
        atoms = _id_list(cur)
        self.check_state(state, line)
        self.check_props(atoms, line)
        self.holds_facts.setdefault(state, set()).update(atoms)
        f = PropFormula(tuple(atoms))
        self.statements.append(
            Statement("holds", f"holds {state} : {', '.join(f.atoms)}.", line, (state, f))
        )

    def _stmt_contr(self, cur: _Cursor, line: int) -> None:
        f = _formula(cur)
        cur.expect("=")
        value = cur.rational()
        self.check_props(f.atoms, line)
        if f in self.contr_entries:
            raise self.err(f"duplicate contribution entry for {f}", line)
        self.contr_entries[f] = (value, line)
        self.statements.append(
            Statement("contr", f"contr {f} = {format_rational(value)}.", line, (f, value))
        )

    def _stmt_assess(self, cur: _Cursor, line: int) -> None:
        cur.expect("u")
        cur.expect("(")
        state = cur.ident().text
        cur.expect("|")
        basis = _id_list(cur)
        cur.expect(")")
        cur.expect("=")
        value = cur.rational()
        self.check_state(state, line)
        self.check_props(basis, line)
        key = (state, frozenset(basis))
        if key in self.assessments:
            raise self.err(f"state {state} already assessed on this basis", line)
        self.assessments[key] = (value, line)
        canon = ", ".join(sorted(set(basis)))
        self.statements.append(
            Statement(
                "assess",
                f"assess u({state} | {canon}) = {format_rational(value)}.",
                line,
                (state, frozenset(basis), value),
            )
        )

    def _stmt_utility(self, cur: _Cursor, line: int) -> None:
        state = cur.ident().text
        cur.expect("=")
        value = cur.rational()
        self.check_state(state, line)
        key = (state, frozenset())
        if key in self.assessments:
            raise self.err(f"state {state} already has a bare utility", line)
        self.assessments[key] = (value, line)
        self.statements.append(
            Statement("utility", f"utility {state} = {format_rational(value)}.", line, (state, value))
        )

    def _stmt_chance(self, cur: _Cursor, line: int) -> None:
        state = cur.ident().text
        cur.expect(":")
        event = cur.ident().text
        cur.expect("=")
        k = cur.rational()
        cur.expect("?")
        pos = cur.ident().text
        cur.expect(":")
        neg = cur.ident().text
        self.check_state(state, line)
        if state in self.expansions:
            raise self.err(f"state already expanded: {state}", line)
        if not (0 <= k <= 1):
            raise self.err(f"probability out of range: {format_rational(k)}", line)
        for child in (pos, neg):
            if child in self.states or child in self.properties or child in self.acts:
                raise self.err(f"expansion child already declared: {child}", line)
        if pos == neg:
            raise self.err("expansion children must be distinct", line)
        self.states.extend([pos, neg])
        if event not in self.events:
            self.events.append(event)
        self.expansions[state] = Expansion(state, event, k, pos, neg)
        self.statements.append(
            Statement(
                "chance",
                f"chance {state} : {event} = {format_rational(k)} ? {pos} : {neg}.",
                line,
                (state, event, k, pos, neg),
            )
        )

    def _stmt_evidence(self, cur: _Cursor, line: int) -> None:
        lit = _literal(cur)
        if lit.kind in (Kind.CONTR, Kind.PROB):
            raise self.err(
                f"{lit.kind.value} facts are necessary knowledge; declare them with "
                f"their own statement, not as contingent evidence",
                line,
            )
        if lit.kind in (Kind.UTILITY, Kind.ASSESS):
            raise self.err(
                "use 'utility' or 'assess' statements for valuations", line
            )
        self.check_literal(lit, line)
        self.evidence.append(lit)
        self.statements.append(Statement("evidence", f"evidence {lit}.", line, (lit,)))

    def _rule(self, cur: _Cursor, line: int, strength: Strength) -> None:
        name = cur.ident().text
        if name in self.rule_names:
            raise self.err(f"duplicate rule name: {name}", line)
        cur.expect(":")
        body = [_literal(cur)]
        while cur.peek() is not None and cur.peek().text == ",":
            cur.next()
            body.append(_literal(cur))
        arrow = "->" if strength is Strength.STRICT else "=>"
        tok = cur.next()
        if tok.text != arrow:
            raise ParseError(f"expected {arrow!r}, found {tok.text!r}", line, tok.column)
        head = _literal(cur)
        for lit in body + [head]:
            self.check_literal(lit, line, allow_vars=True)
        self.rule_names.add(name)
        rule = Rule(name, tuple(body), head, strength)
        self.rules.append(rule)
        kw = "strict" if strength is Strength.STRICT else "presume"
        body_text = ", ".join(str(b) for b in body)
        self.statements.append(
            Statement(kw, f"{kw} {name}: {body_text} {arrow} {head}.", line, (rule,))
        )

    def _stmt_presume(self, cur: _Cursor, line: int) -> None:
        self._rule(cur, line, Strength.DEFEASIBLE)

    def _stmt_strict(self, cur: _Cursor, line: int) -> None:
        self._rule(cur, line, Strength.STRICT)

    def build(self) -> Document:
        vocab = Vocabulary(
            properties=frozenset(self.properties),
            acts=tuple(self.acts),
            states=tuple(self.states),
            events=frozenset(self.events),
            act_roots=dict(self.act_roots),
            joint_acts={},
        )
        necessary: set[Literal] = set()
        for f, (v, _line) in self.contr_entries.items():
            necessary.add(contr_eq(f, v))
        for exp in self.expansions.values():
            necessary.add(prob_eq(exp.event, exp.state, exp.k))
        contingent: set[Literal] = set(self.evidence)
        for state, atoms in self.holds_facts.items():
            contingent.add(holds(PropFormula(tuple(sorted(atoms))), state))
        for (state, basis), (v, _line) in self.assessments.items():
            contingent.add(assess_eq(state, basis, v))
        # the positive child of an expansion is marked with its event when
        # the event names a declared property
        children_map = {}
        for exp in self.expansions.values():
            children_map[exp.state] = (exp.child_pos, exp.child_neg)
            if exp.event in vocab.properties:
                contingent.add(holds(PropFormula((exp.event,)), exp.child_pos))
        kb = KnowledgeBase(
            vocabulary=vocab,
            necessary=frozenset(necessary),
            contingent=frozenset(contingent),
            strict_rules=tuple(r for r in self.rules if r.strength is Strength.STRICT),
            defeasible_rules=tuple(r for r in self.rules if r.strength is Strength.DEFEASIBLE),
            state_children=children_map,
        )
        model = DecisionModel(
            acts=tuple(self.acts),
            act_roots=dict(self.act_roots),
            states=tuple(self.states),
            explicit_states=tuple(self.explicit_states),
            expansions=dict(self.expansions),
        )
        return Document(tuple(self.statements), kb, model)


def parse(text: str) -> Document:
    builder = _Builder()
    for raw in _scan_statements(text):
        try:
            builder.fold(raw)
        except (MalformedFormulaError, DuplicateEntryError, VocabularyError, ModelError) as exc:
            raise ParseError(str(exc), raw.line, 1) from exc
    return builder.build()


_GROUP_ORDER = [
    "prop",
    "act",
    "state",
    "root",
    "chance",
    "holds",
    "contr",
    "assess",
    "utility",
    "evidence",
    "strict",
    "presume",
]
_DECLARATION_ORDER_GROUPS = {"act", "root", "chance", "strict", "presume"}


def serialize(document: Document) -> str:
    """Canonical rendering: fixed group order, sorted within each group
    except where declaration order is semantic (acts, roots, expansions,
    rules).  Idempotent: parse-serialize reaches a fixpoint in one step."""
    groups: dict[str, list[Statement]] = {}
    for stmt in document.statements:
        groups.setdefault(stmt.kind, []).append(stmt)
    lines: list[str] = []
    for kind in _GROUP_ORDER:
        stmts = groups.get(kind, [])
        if kind in ("prop", "state"):
            names = sorted({n for s in stmts for n in s.payload})
            if names:
                lines.append(f"{kind} {', '.join(names)}.")
            continue
        if kind == "act":
            names = [n for s in stmts for n in s.payload]
            if names:
                lines.append(f"act {', '.join(names)}.")
            continue
        texts = [s.text for s in stmts]
        if kind not in _DECLARATION_ORDER_GROUPS:
            texts = sorted(texts)
        lines.extend(texts)
    return "\n".join(lines) + ("\n" if lines else "")


def parse_file(path) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())
