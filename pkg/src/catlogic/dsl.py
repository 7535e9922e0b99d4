"""Parser and printer for the textual theory format.

Grammar (keywords are bit-exact; `#` starts a line comment):

    file      := theory+
    theory    := "theory" IDENT ("prop" | "eq") "{" decl* "}"
    decl      := "sort" IDENT ";" | "op" IDENT ":" sorts? "->" IDENT ";"
               | "letters" IDENT ("," IDENT)* ";" | "axiom" formula ";"
               | "rewrite" term "->" term ";"
    sorts     := IDENT ("," IDENT)*
    formula   := "true" | "false" | IDENT | IDENT "(" args ")" | term "=" term
               | "not" "(" formula ")" | "and" "(" formula "," formula ")"
               | "or" "(" formula "," formula ")"
               | "implies" "(" formula "," formula ")"
               | "iff" "(" formula "," formula ")"          # sugar
    term      := IDENT | IDENT "(" term ("," term)* ")"

`iff(a, b)` desugars to `and(implies(a, b), implies(b, a))` at parse time.
Constants are declared `op u : -> X;`. In equational axioms, unquantified
identifiers that are not declared constants are variables; their sorts are
inferred from the positions they occupy.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from .errors import Diagnostic, InvalidTheoryError, SourceSpan, TheorySyntaxError
from .kernel import (
    And,
    App,
    Atom,
    Bottom,
    Equation,
    Formula,
    Fragment,
    FunctionSymbol,
    Implies,
    Not,
    Or,
    RelationSymbol,
    RewriteRule,
    Sort,
    Term,
    Theory,
    Top,
    Variable,
)

KEYWORDS = frozenset(
    "theory prop eq sort op letters axiom rewrite true false not and or implies iff".split()
)

_IDENT_START = frozenset(string.ascii_letters + "_")
_IDENT_CONT = frozenset(string.ascii_letters + string.digits + "_")
_PUNCT = {"{", "}", "(", ")", ";", ",", ":", "="}


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "punct", "arrow", "eof"
    text: str
    span: SourceSpan


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(self._scan())
        self.pos = 0

    def _scan(self):
        text = self.text
        i, line, col = 0, 1, 1
        n = len(text)
        while i < n:
            c = text[i]
            if c == "\n":
                i += 1
                line += 1
                col = 1
                continue
            if c in " \t\r":
                i += 1
                col += 1
                continue
            if c == "#":
                while i < n and text[i] != "\n":
                    i += 1
                continue
            start, sline, scol = i, line, col
            if c in _IDENT_START:
                while i < n and text[i] in _IDENT_CONT:
                    i += 1
                col += i - start
                yield _Token("ident", text[start:i], SourceSpan(sline, scol, start, i))
                continue
            if c == "-" and i + 1 < n and text[i + 1] == ">":
                i += 2
                col += 2
                yield _Token("arrow", "->", SourceSpan(sline, scol, start, i))
                continue
            if c == "." or c == "[" or c == "]":
                # used by the brain format, tokenized here so both parsers share one lexer
                i += 1
                col += 1
                yield _Token("punct", c, SourceSpan(sline, scol, start, i))
                continue
            if c in _PUNCT:
                i += 1
                col += 1
                yield _Token("punct", c, SourceSpan(sline, scol, start, i))
                continue
            if c.isdigit():
                while i < n and text[i].isdigit():
                    i += 1
                col += i - start
                yield _Token("number", text[start:i], SourceSpan(sline, scol, start, i))
                continue
            raise TheorySyntaxError(f"unexpected character {c!r}", SourceSpan(line, col, i, i + 1))
        yield _Token("eof", "", SourceSpan(line, col, n, n))

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise TheorySyntaxError(f"expected {text!r}, found {tok.text!r}", tok.span)
        return tok

    def expect_ident(self, allow_keyword: bool = False) -> _Token:
        tok = self.next()
        if tok.kind != "ident" or (not allow_keyword and tok.text in KEYWORDS):
            raise TheorySyntaxError(f"expected an identifier, found {tok.text!r}", tok.span)
        return tok

    def skip_past(self, text: str) -> None:
        while True:
            tok = self.next()
            if tok.text == text or tok.kind == "eof":
                return


class _ResolveError(Exception):
    """Semantic problem found while resolving a parsed tree; becomes a
    Diagnostic (validation failure), not a syntax error."""

    def __init__(self, code: str, message: str, span: SourceSpan):
        self.diagnostic = Diagnostic(code, message, span=span)
        super().__init__(message)


# ---------------------------------------------------------------------------
# Untyped parse trees for axiom bodies; sorts are resolved in a second pass.


@dataclass(frozen=True)
class _PTerm:
    name: str
    args: tuple | None  # None means a bare identifier
    span: SourceSpan


def _parse_pterm(lx: _Lexer) -> _PTerm:
    head = lx.expect_ident()
    if lx.peek().text == "(":
        lx.next()
        args = [_parse_pterm(lx)]
        while lx.peek().text == ",":
            lx.next()
            args.append(_parse_pterm(lx))
        lx.expect(")")
        return _PTerm(head.text, tuple(args), head.span)
    return _PTerm(head.text, None, head.span)


def _parse_formula(lx: _Lexer, th: "_TheoryBuilder") -> Formula:
    tok = lx.peek()
    if tok.text == "true":
        lx.next()
        return Top()
    if tok.text == "false":
        lx.next()
        return Bottom()
    if tok.text == "not":
        lx.next()
        lx.expect("(")
        sub = _parse_formula(lx, th)
        lx.expect(")")
        return Not(sub)
    if tok.text in ("and", "or", "implies", "iff"):
        op = lx.next().text
        lx.expect("(")
        lhs = _parse_formula(lx, th)
        lx.expect(",")
        rhs = _parse_formula(lx, th)
        lx.expect(")")
        if op == "and":
            return And(lhs, rhs)
        if op == "or":
            return Or(lhs, rhs)
        if op == "implies":
            return Implies(lhs, rhs)
        return And(Implies(lhs, rhs), Implies(rhs, lhs))
    pterm = _parse_pterm(lx)
    if lx.peek().text == "=":
        lx.next()
        rhs = _parse_pterm(lx)
        return th.resolve_equation(pterm, rhs)
    return th.resolve_atom(pterm)


class _TheoryBuilder:
    """Symbol tables, sort inference and diagnostics for one theory block."""

    def __init__(self, name: str, fragment: Fragment, span: SourceSpan):
        self.name = name
        self.fragment = fragment
        self.span = span
        self.sorts: dict[str, Sort] = {}
        self.functions: dict[str, FunctionSymbol] = {}
        self.relations: dict[str, RelationSymbol] = {}
        self.decl_sorts: list[Sort] = []
        self.decl_functions: list[FunctionSymbol] = []
        self.decl_relations: list[RelationSymbol] = []
        self.axioms: list[Formula] = []
        self.axiom_spans: list[SourceSpan] = []
        self.rewrites: list[RewriteRule] = []
        self.diagnostics: list[Diagnostic] = []

    def sort(self, name: str, span: SourceSpan) -> Sort:
        s = self.sorts.get(name)
        if s is None:
            raise _ResolveError("unknown-symbol", f"undeclared sort {name}", span)
        return s

    def resolve_atom(self, p: _PTerm) -> Formula:
        rel = self.relations.get(p.name)
        if rel is None:
            raise _ResolveError(
                "unknown-symbol", f"{p.name} is not a declared letter or relation", p.span
            )
        args = p.args or ()
        if len(args) != rel.arity:
            raise _ResolveError(
                "arity-mismatch", f"{rel.name} expects {rel.arity} argument(s), got {len(args)}", p.span
            )
        terms = tuple(
            self.resolve_term(arg, expected) for arg, expected in zip(args, rel.argument_sorts)
        )
        return Atom(rel, terms)

    def resolve_equation(self, lhs: _PTerm, rhs: _PTerm) -> Formula:
        if self.fragment is not Fragment.EQ:
            raise _ResolveError("fragment-violation", "equation in a prop theory", lhs.span)
        l = self.resolve_term(lhs, None)
        r = self.resolve_term(rhs, None)
        l_sort = self._shallow_sort(l)
        r_sort = self._shallow_sort(r)
        if l_sort is None and r_sort is None:
            if len(self.decl_sorts) == 1:
                only = self.decl_sorts[0]
                l = self._force_var_sort(l, only)
                r = self._force_var_sort(r, only)
            else:
                raise _ResolveError(
                    "sort-mismatch", "cannot infer the sort of either equation side", lhs.span
                )
        elif l_sort is None:
            l = self._force_var_sort(l, r_sort)
        elif r_sort is None:
            r = self._force_var_sort(r, l_sort)
        elif l_sort != r_sort:
            raise _ResolveError(
                "sort-mismatch",
                f"equation sides have sorts {l_sort.name} and {r_sort.name}",
                lhs.span,
            )
        return Equation(l, r)

    def resolve_rewrite(self, lhs: _PTerm, rhs: _PTerm) -> RewriteRule:
        eq = self.resolve_equation(lhs, rhs)
        return RewriteRule(eq.lhs, eq.rhs)

    def resolve_term(self, p: _PTerm, expected: Sort | None) -> Term | Variable:
        fn = self.functions.get(p.name)
        if fn is not None and (p.args is not None or fn.arity == 0):
            args = p.args or ()
            if len(args) != fn.arity:
                raise _ResolveError(
                    "arity-mismatch", f"{fn.name} expects {fn.arity} argument(s), got {len(args)}", p.span
                )
            terms = tuple(self.resolve_term(a, s) for a, s in zip(args, fn.domain))
            if expected is not None and fn.codomain != expected:
                raise _ResolveError(
                    "sort-mismatch",
                    f"{fn.name} returns {fn.codomain.name}, expected {expected.name}",
                    p.span,
                )
            return App(fn, terms)
        if p.args is not None:
            raise _ResolveError("unknown-symbol", f"{p.name} is not a declared op", p.span)
        if fn is not None:
            raise _ResolveError(
                "unknown-symbol", f"{p.name} is an op of arity {fn.arity}, not a variable", p.span
            )
        # a variable; sort comes from the position, or stays open for a later pass
        if expected is None:
            return Variable(p.name, _OPEN_SORT)
        return Variable(p.name, expected)

    def _shallow_sort(self, term: Term) -> Sort | None:
        if isinstance(term, Variable):
            return None if term.sort is _OPEN_SORT else term.sort
        return term.symbol.codomain

    def _force_var_sort(self, term: Term, sort: Sort) -> Term:
        if isinstance(term, Variable) and term.sort is _OPEN_SORT:
            return Variable(term.name, sort)
        return term

    def add_axiom(self, formula: Formula, span: SourceSpan) -> None:
        self.axioms.append(self._close_formula(formula, span))
        self.axiom_spans.append(span)

    def finish(self) -> Theory:
        from .kernel import diagnose

        theory = Theory(
            name=self.name,
            fragment=self.fragment,
            sorts=tuple(self.decl_sorts),
            functions=tuple(self.decl_functions),
            relations=tuple(self.decl_relations),
            axioms=tuple(self.axioms),
            rewrites=tuple(self.rewrites),
            axiom_spans=tuple(self.axiom_spans),
        )
        diagnostics = self.diagnostics + diagnose(theory)
        if diagnostics:
            raise InvalidTheoryError(diagnostics)
        return theory

    def _close_formula(self, formula: Formula, span: SourceSpan) -> Formula:
        # unify variable sorts across one axiom; a variable left open anywhere
        # it occurs takes the sort it got elsewhere in the same axiom
        sorts: dict[str, Sort] = {}
        conflicts: set[str] = set()

        def collect(e):
            if isinstance(e, Variable):
                if e.sort is not _OPEN_SORT:
                    if e.name in sorts and sorts[e.name] != e.sort:
                        conflicts.add(e.name)
                    sorts[e.name] = e.sort
            elif isinstance(e, App):
                for a in e.args:
                    collect(a)
            elif isinstance(e, Atom):
                for a in e.args:
                    collect(a)
            elif isinstance(e, Equation):
                collect(e.lhs)
                collect(e.rhs)
            elif isinstance(e, Not):
                collect(e.operand)
            elif isinstance(e, (And, Or, Implies)):
                collect(e.lhs)
                collect(e.rhs)

        collect(formula)
        if conflicts:
            name = sorted(conflicts)[0]
            raise _ResolveError("sort-mismatch", f"variable {name} used at two different sorts", span)

        def close(e):
            if isinstance(e, Variable):
                if e.sort is not _OPEN_SORT:
                    return e
                sort = sorts.get(e.name)
                if sort is None and len(self.decl_sorts) == 1:
                    sort = self.decl_sorts[0]
                if sort is None:
                    raise _ResolveError(
                        "sort-mismatch", f"cannot infer the sort of variable {e.name}", span
                    )
                return Variable(e.name, sort)
            if isinstance(e, App):
                return App(e.symbol, tuple(close(a) for a in e.args))
            if isinstance(e, Atom):
                return Atom(e.symbol, tuple(close(a) for a in e.args))
            if isinstance(e, Equation):
                return Equation(close(e.lhs), close(e.rhs))
            if isinstance(e, Not):
                return Not(close(e.operand))
            if isinstance(e, (And, Or, Implies)):
                return type(e)(close(e.lhs), close(e.rhs))
            return e

        return close(formula)


_OPEN_SORT = Sort("\x00open")  # parse-time placeholder, never escapes this module


def _parse_theory_block(lx: _Lexer) -> Theory:
    lx.expect("theory")
    name_tok = lx.expect_ident()
    frag_tok = lx.next()
    if frag_tok.text == "prop":
        fragment = Fragment.PROP
    elif frag_tok.text == "eq":
        fragment = Fragment.EQ
    else:
        raise TheorySyntaxError("expected 'prop' or 'eq'", frag_tok.span)
    th = _TheoryBuilder(name_tok.text, fragment, name_tok.span)
    lx.expect("{")
    while lx.peek().text != "}":
        tok = lx.next()
        if tok.text == "sort":
            ident = lx.expect_ident()
            if ident.text in th.sorts:
                th.diagnostics.append(
                    Diagnostic("duplicate-name", f"sort {ident.text} declared twice", span=ident.span)
                )
            else:
                s = Sort(ident.text)
                th.sorts[ident.text] = s
                th.decl_sorts.append(s)
            lx.expect(";")
        elif tok.text == "op":
            try:
                ident = lx.expect_ident()
                lx.expect(":")
                domain = []
                if lx.peek().kind == "ident":
                    s_tok = lx.expect_ident()
                    domain.append(th.sort(s_tok.text, s_tok.span))
                    while lx.peek().text == ",":
                        lx.next()
                        s_tok = lx.expect_ident()
                        domain.append(th.sort(s_tok.text, s_tok.span))
                lx.expect("->")
                cod_tok = lx.expect_ident()
                if ident.text in th.functions:
                    th.diagnostics.append(
                        Diagnostic("duplicate-name", f"op {ident.text} declared twice", span=ident.span)
                    )
                else:
                    fn = FunctionSymbol(
                        ident.text, tuple(domain), th.sort(cod_tok.text, cod_tok.span)
                    )
                    th.functions[ident.text] = fn
                    th.decl_functions.append(fn)
                lx.expect(";")
            except _ResolveError as err:
                th.diagnostics.append(err.diagnostic)
                lx.skip_past(";")
        elif tok.text == "letters":
            while True:
                ident = lx.expect_ident()
                if ident.text in th.relations:
                    th.diagnostics.append(
                        Diagnostic(
                            "duplicate-name", f"letter {ident.text} declared twice", span=ident.span
                        )
                    )
                else:
                    rel = RelationSymbol(ident.text)
                    th.relations[ident.text] = rel
                    th.decl_relations.append(rel)
                if lx.peek().text != ",":
                    break
                lx.next()
            lx.expect(";")
        elif tok.text == "axiom":
            span = lx.peek().span
            try:
                formula = _parse_formula(lx, th)
                th.add_axiom(formula, span)
                lx.expect(";")
            except _ResolveError as err:
                th.diagnostics.append(err.diagnostic)
                lx.skip_past(";")
        elif tok.text == "rewrite":
            try:
                lhs = _parse_pterm(lx)
                lx.expect("->")
                rhs = _parse_pterm(lx)
                th.rewrites.append(th.resolve_rewrite(lhs, rhs))
                lx.expect(";")
            except _ResolveError as err:
                th.diagnostics.append(err.diagnostic)
                lx.skip_past(";")
        else:
            raise TheorySyntaxError(f"expected a declaration, found {tok.text!r}", tok.span)
    lx.expect("}")
    return th.finish()


def parse_file(text: str) -> list[Theory]:
    """Parse every theory in a source text; names must be unique per file."""
    lx = _Lexer(text)
    theories: list[Theory] = []
    names: set[str] = set()
    while lx.peek().kind != "eof":
        start = lx.peek()
        if start.text != "theory":
            raise TheorySyntaxError(f"expected 'theory', found {start.text!r}", start.span)
        t = _parse_theory_block(lx)
        if t.name in names:
            raise TheorySyntaxError(f"theory {t.name} defined twice", start.span)
        names.add(t.name)
        theories.append(t)
    if not theories:
        eof = lx.peek()
        raise TheorySyntaxError("empty input: expected at least one theory", eof.span)
    return theories


def parse_theory(text: str) -> Theory:
    """Parse a source text containing exactly one theory."""
    theories = parse_file(text)
    if len(theories) != 1:
        raise TheorySyntaxError(
            f"expected exactly one theory, found {len(theories)}", SourceSpan(1, 1, 0, 0)
        )
    return theories[0]


# ---------------------------------------------------------------------------
# Printing


def print_term(term: Term) -> str:
    if isinstance(term, Variable):
        return term.name
    if term.args:
        return f"{term.symbol.name}({', '.join(print_term(a) for a in term.args)})"
    return term.symbol.name


def print_formula(formula: Formula) -> str:
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bottom):
        return "false"
    if isinstance(formula, Atom):
        if formula.args:
            return f"{formula.symbol.name}({', '.join(print_term(a) for a in formula.args)})"
        return formula.symbol.name
    if isinstance(formula, Equation):
        return f"{print_term(formula.lhs)} = {print_term(formula.rhs)}"
    if isinstance(formula, Not):
        return f"not({print_formula(formula.operand)})"
    if isinstance(formula, And):
        return f"and({print_formula(formula.lhs)}, {print_formula(formula.rhs)})"
    if isinstance(formula, Or):
        return f"or({print_formula(formula.lhs)}, {print_formula(formula.rhs)})"
    if isinstance(formula, Implies):
        return f"implies({print_formula(formula.lhs)}, {print_formula(formula.rhs)})"
    raise TypeError(f"not a formula: {formula!r}")


def print_theory(theory: Theory) -> str:
    """Deterministic source form; parse_theory(print_theory(t)) == t."""
    lines = [f"theory {theory.name} {theory.fragment.value} {{"]
    for s in theory.sorts:
        lines.append(f"  sort {s.name};")
    for f in theory.functions:
        domain = ", ".join(s.name for s in f.domain)
        sep = " " if domain else ""
        lines.append(f"  op {f.name} :{sep}{domain} -> {f.codomain.name};")
    if theory.relations:
        names = ", ".join(r.name for r in theory.relations)
        lines.append(f"  letters {names};")
    for ax in theory.axioms:
        lines.append(f"  axiom {print_formula(ax)};")
    for rule in theory.rewrites:
        lines.append(f"  rewrite {print_term(rule.lhs)} -> {print_term(rule.rhs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_file(theories: list[Theory]) -> str:
    return "\n".join(print_theory(t) for t in theories)
