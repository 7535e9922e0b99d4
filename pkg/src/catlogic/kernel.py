"""Abstract syntax and sort-checking for multi-sorted propositional and
equational theories.

All values are immutable; every operation here is a pure function, so terms,
formulae and theories can be shared freely.

Conventions:
  * propositional letters are 0-ary relation symbols, so one Theory type
    serves both fragments;
  * equational axioms are implicitly universally closed (there is no
    quantifier node);
  * the connective set is exactly top/bottom/not/and/or/implies, with the
    biconditional handled as surface syntax by the DSL.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Union

from .errors import (
    ArityMismatchError,
    Diagnostic,
    InvalidTheoryError,
    SortMismatchError,
    UnboundVariableError,
)


class Fragment(Enum):
    PROP = "prop"
    EQ = "eq"


@dataclass(frozen=True)
class Sort:
    name: str


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    domain: tuple[Sort, ...]
    codomain: Sort

    @property
    def arity(self) -> int:
        return len(self.domain)


@dataclass(frozen=True)
class RelationSymbol:
    name: str
    argument_sorts: tuple[Sort, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.argument_sorts)


@dataclass(frozen=True)
class Variable:
    name: str
    sort: Sort


@dataclass(frozen=True)
class App:
    symbol: FunctionSymbol
    args: tuple["Term", ...] = ()


Term = Union[Variable, App]


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Atom:
    symbol: RelationSymbol
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


Formula = Union[Top, Bottom, Atom, Equation, Not, And, Or, Implies]

TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class RewriteRule:
    """Oriented equation lhs -> rhs; the user asserts termination/confluence."""

    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Theory:
    name: str
    fragment: Fragment
    sorts: tuple[Sort, ...] = ()
    functions: tuple[FunctionSymbol, ...] = ()
    relations: tuple[RelationSymbol, ...] = ()
    axioms: tuple[Formula, ...] = ()
    rewrites: tuple[RewriteRule, ...] = ()
    # parallel to axioms when the theory came from the DSL; excluded from
    # structural equality so round-tripping compares clean
    axiom_spans: tuple = field(default=(), compare=False, repr=False)

    @property
    def letters(self) -> tuple[str, ...]:
        """Propositional letter names in canonical (sorted) order."""
        return tuple(sorted(r.name for r in self.relations if r.arity == 0))

    def function(self, name: str) -> FunctionSymbol:
        for f in self.functions:
            if f.name == name:
                return f
        raise KeyError(name)


def free_vars(e: Term | Formula) -> frozenset[Variable]:
    """Exact set of variables occurring in a term or formula."""
    if isinstance(e, Variable):
        return frozenset((e,))
    if isinstance(e, App):
        return frozenset().union(*(free_vars(a) for a in e.args)) if e.args else frozenset()
    if isinstance(e, (Top, Bottom)):
        return frozenset()
    if isinstance(e, Atom):
        return frozenset().union(*(free_vars(a) for a in e.args)) if e.args else frozenset()
    if isinstance(e, Equation):
        return free_vars(e.lhs) | free_vars(e.rhs)
    if isinstance(e, Not):
        return free_vars(e.operand)
    if isinstance(e, (And, Or, Implies)):
        return free_vars(e.lhs) | free_vars(e.rhs)
    raise TypeError(f"not a term or formula: {e!r}")


def sort_of_term(term: Term, context: Iterable[Variable]) -> Sort:
    """Sort of a well-formed term over the given context.

    Raises UnboundVariableError for variables outside the context and
    ArityMismatchError/SortMismatchError when an application is ill-formed.
    """
    ctx = {v.name: v for v in context}
    return _sort_of(term, ctx)


def _sort_of(term: Term, ctx: Mapping[str, Variable]) -> Sort:
    if isinstance(term, Variable):
        bound = ctx.get(term.name)
        if bound is None:
            raise UnboundVariableError(f"variable {term.name} not in context")
        if bound.sort != term.sort:
            raise SortMismatchError(
                f"variable {term.name} used at sort {term.sort.name}, bound at {bound.sort.name}"
            )
        return term.sort
    if isinstance(term, App):
        sym = term.symbol
        if len(term.args) != sym.arity:
            raise ArityMismatchError(
                f"{sym.name} expects {sym.arity} argument(s), got {len(term.args)}"
            )
        for i, (arg, want) in enumerate(zip(term.args, sym.domain)):
            got = _sort_of(arg, ctx)
            if got != want:
                raise SortMismatchError(
                    f"argument {i + 1} of {sym.name} has sort {got.name}, expected {want.name}"
                )
        return sym.codomain
    raise TypeError(f"not a term: {term!r}")


def substitute(e, mapping: Mapping[Variable, Term]):
    """Simultaneous, capture-free substitution on a term or formula.

    Variables outside the mapping are unchanged. The mapping must be
    sort-respecting on the variables it actually hits.
    """
    for var, repl in mapping.items():
        if _term_sort_shallow(repl) != var.sort:
            raise SortMismatchError(
                f"substituting a {_term_sort_shallow(repl).name}-term for {var.name}:{var.sort.name}"
            )
    return _subst(e, mapping)


def _term_sort_shallow(term: Term) -> Sort:
    # the sort a term carries on its face (well-formedness is checked elsewhere)
    return term.sort if isinstance(term, Variable) else term.symbol.codomain


def _subst(e, mapping):
    if isinstance(e, Variable):
        return mapping.get(e, e)
    if isinstance(e, App):
        return App(e.symbol, tuple(_subst(a, mapping) for a in e.args))
    if isinstance(e, (Top, Bottom)):
        return e
    if isinstance(e, Atom):
        return Atom(e.symbol, tuple(_subst(a, mapping) for a in e.args))
    if isinstance(e, Equation):
        return Equation(_subst(e.lhs, mapping), _subst(e.rhs, mapping))
    if isinstance(e, Not):
        return Not(_subst(e.operand, mapping))
    if isinstance(e, (And, Or, Implies)):
        return type(e)(_subst(e.lhs, mapping), _subst(e.rhs, mapping))
    raise TypeError(f"not a term or formula: {e!r}")


def diagnose(theory: Theory) -> list[Diagnostic]:
    """All well-formedness findings for a theory (empty list means valid)."""
    out: list[Diagnostic] = []

    seen: set[str] = set()
    for s in theory.sorts:
        if s.name in seen:
            out.append(Diagnostic("duplicate-name", f"sort {s.name} declared twice", f"sort {s.name}"))
        seen.add(s.name)
    seen = set()
    for f in theory.functions:
        if f.name in seen:
            out.append(Diagnostic("duplicate-name", f"op {f.name} declared twice", f"op {f.name}"))
        seen.add(f.name)
        for s in (*f.domain, f.codomain):
            if s not in theory.sorts:
                out.append(
                    Diagnostic("unknown-symbol", f"op {f.name} uses undeclared sort {s.name}", f"op {f.name}")
                )
    seen = set()
    for r in theory.relations:
        if r.name in seen:
            out.append(Diagnostic("duplicate-name", f"relation {r.name} declared twice", f"rel {r.name}"))
        seen.add(r.name)
        for s in r.argument_sorts:
            if s not in theory.sorts:
                out.append(
                    Diagnostic("unknown-symbol", f"relation {r.name} uses undeclared sort {s.name}", f"rel {r.name}")
                )

    if theory.fragment is Fragment.PROP:
        if theory.sorts:
            out.append(Diagnostic("fragment-violation", "PROP theory declares sorts", "sorts"))
        if theory.functions:
            out.append(Diagnostic("fragment-violation", "PROP theory declares function symbols", "ops"))
        for r in theory.relations:
            if r.arity != 0:
                out.append(
                    Diagnostic("fragment-violation", f"letter {r.name} has arity {r.arity}", f"rel {r.name}")
                )
        if theory.rewrites:
            out.append(Diagnostic("fragment-violation", "PROP theory declares rewrite rules", "rewrites"))
    else:
        if theory.relations:
            out.append(Diagnostic("fragment-violation", "EQ theory declares relation symbols", "rels"))

    for i, ax in enumerate(theory.axioms):
        span = theory.axiom_spans[i] if i < len(theory.axiom_spans) else None
        path = f"axiom[{i}]"
        out.extend(_diagnose_formula(theory, ax, path, span, top_level=True))

    for i, rule in enumerate(theory.rewrites):
        path = f"rewrite[{i}]"
        out.extend(_diagnose_rewrite(theory, rule, path))

    return out


def _diagnose_formula(theory, formula, path, span, top_level=False) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    prop = theory.fragment is Fragment.PROP
    if prop and isinstance(formula, Equation):
        return [Diagnostic("fragment-violation", "equation in a PROP theory", path, span)]
    if not prop and top_level and not isinstance(formula, Equation):
        return [Diagnostic("fragment-violation", "EQ axioms must be bare equations", path, span)]

    if isinstance(formula, (Top, Bottom)):
        return out
    if isinstance(formula, Atom):
        if formula.symbol not in theory.relations:
            out.append(Diagnostic("unknown-symbol", f"undeclared relation {formula.symbol.name}", path, span))
            return out
        if len(formula.args) != formula.symbol.arity:
            out.append(
                Diagnostic(
                    "arity-mismatch",
                    f"{formula.symbol.name} expects {formula.symbol.arity} argument(s), got {len(formula.args)}",
                    path,
                    span,
                )
            )
            return out
        ctx = {v.name: v for v in free_vars(formula)}
        for j, (arg, want) in enumerate(zip(formula.args, formula.symbol.argument_sorts)):
            out.extend(_diagnose_term(theory, arg, want, ctx, f"{path}/arg[{j}]", span))
        return out
    if isinstance(formula, Equation):
        ctx = {v.name: v for v in free_vars(formula)}
        l = _diagnose_term(theory, formula.lhs, None, ctx, f"{path}/lhs", span)
        r = _diagnose_term(theory, formula.rhs, None, ctx, f"{path}/rhs", span)
        out.extend(l)
        out.extend(r)
        if not l and not r:
            ls, rs = _term_sort_shallow(formula.lhs), _term_sort_shallow(formula.rhs)
            if ls != rs:
                out.append(
                    Diagnostic("sort-mismatch", f"equation sides have sorts {ls.name} and {rs.name}", path, span)
                )
        return out
    if isinstance(formula, Not):
        return _diagnose_formula(theory, formula.operand, f"{path}/not", span)
    if isinstance(formula, (And, Or, Implies)):
        kind = type(formula).__name__.lower()
        out.extend(_diagnose_formula(theory, formula.lhs, f"{path}/{kind}[0]", span))
        out.extend(_diagnose_formula(theory, formula.rhs, f"{path}/{kind}[1]", span))
        return out
    return [Diagnostic("unknown-symbol", f"unrecognized formula node {formula!r}", path, span)]


def _diagnose_term(theory, term, expected: Sort | None, ctx, path, span) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if isinstance(term, Variable):
        if term.sort not in theory.sorts:
            out.append(Diagnostic("unknown-symbol", f"variable {term.name} has undeclared sort", path, span))
        bound = ctx.get(term.name)
        if bound is not None and bound.sort != term.sort:
            out.append(
                Diagnostic("sort-mismatch", f"variable {term.name} used at two different sorts", path, span)
            )
        if expected is not None and term.sort != expected:
            out.append(
                Diagnostic(
                    "sort-mismatch",
                    f"{term.name} has sort {term.sort.name}, expected {expected.name}",
                    path,
                    span,
                )
            )
        return out
    if isinstance(term, App):
        sym = term.symbol
        if sym not in theory.functions:
            return [Diagnostic("unknown-symbol", f"undeclared op {sym.name}", path, span)]
        if len(term.args) != sym.arity:
            return [
                Diagnostic(
                    "arity-mismatch",
                    f"{sym.name} expects {sym.arity} argument(s), got {len(term.args)}",
                    path,
                    span,
                )
            ]
        if expected is not None and sym.codomain != expected:
            out.append(
                Diagnostic(
                    "sort-mismatch",
                    f"{sym.name} returns {sym.codomain.name}, expected {expected.name}",
                    path,
                    span,
                )
            )
        for j, (arg, want) in enumerate(zip(term.args, sym.domain)):
            out.extend(_diagnose_term(theory, arg, want, ctx, f"{path}/arg[{j}]", span))
        return out
    return [Diagnostic("unknown-symbol", f"unrecognized term node {term!r}", path, span)]


def _diagnose_rewrite(theory, rule, path) -> list[Diagnostic]:
    ctx = {v.name: v for v in free_vars(rule.lhs) | free_vars(rule.rhs)}
    out = _diagnose_term(theory, rule.lhs, None, ctx, f"{path}/lhs", None)
    out += _diagnose_term(theory, rule.rhs, None, ctx, f"{path}/rhs", None)
    if not out:
        extra = free_vars(rule.rhs) - free_vars(rule.lhs)
        if extra:
            names = ", ".join(sorted(v.name for v in extra))
            out.append(Diagnostic("unknown-symbol", f"rewrite rhs introduces variables: {names}", path))
        ls, rs = _term_sort_shallow(rule.lhs), _term_sort_shallow(rule.rhs)
        if ls != rs:
            out.append(Diagnostic("sort-mismatch", f"rewrite sides have sorts {ls.name} and {rs.name}", path))
    return out


def check_well_formed(theory: Theory) -> Theory:
    """Validate a theory; returns it unchanged or raises InvalidTheoryError.

    Idempotent: validating a validated theory succeeds with the same value.
    """
    diagnostics = diagnose(theory)
    if diagnostics:
        raise InvalidTheoryError(diagnostics)
    return theory
