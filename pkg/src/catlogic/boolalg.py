"""Finite Boolean algebras: the Lindenbaum quotient of a propositional
theory, free algebras, entailment, and homomorphism enumeration.

An algebra with n atoms is represented as the powerset of its atom set;
elements are n-bit masks, join is bitwise or, meet bitwise and, complement
bitwise xor with the full mask. All Boolean-algebra laws hold by
construction, and equality of elements is integer equality. Atom order is
canonical (for Lindenbaum algebras: lexicographic on truth assignments), so
every enumeration below is deterministic.

Homomorphisms are encoded dually by their atom maps: a hom B -> C is the
function atoms(C) -> atoms(B) sending each target atom to the unique source
atom whose image lies above it. Composition of homs composes atom maps
contravariantly, and enumeration of all homs is enumeration of all such
functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from . import _core
from .errors import CapacityExceededError, FragmentViolationError, UnknownSymbolError
from .kernel import (
    And,
    Atom,
    Bottom,
    Equation,
    Formula,
    Fragment,
    Implies,
    Not,
    Or,
    Theory,
    Top,
    check_well_formed,
)

DEFAULT_ATOM_BOUND = 20
DEFAULT_HOM_BOUND = 1_000_000


@dataclass(frozen=True)
class TruthAssignment:
    """Total 0/1 valuation of a letter set; letters are kept sorted."""

    letters: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.letters) != len(self.values):
            raise ValueError("letters and values differ in length")

    def value(self, letter: str) -> int:
        try:
            return self.values[self.letters.index(letter)]
        except ValueError:
            raise UnknownSymbolError(f"letter {letter} not assigned") from None

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.letters, self.values))

    def __str__(self) -> str:
        return "(" + ", ".join(f"{l}={v}" for l, v in zip(self.letters, self.values)) + ")"


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    """Powerset algebra on atom_count atoms; elements are bit masks."""

    atom_count: int
    atom_labels: tuple = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.atom_count < 0:
            raise ValueError("negative atom count")
        if self.atom_labels is not None and len(self.atom_labels) != self.atom_count:
            raise ValueError("one label per atom required")

    # -- structure ---------------------------------------------------------

    @property
    def top(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def element_count(self) -> int:
        return 1 << self.atom_count

    @property
    def is_degenerate(self) -> bool:
        return self.atom_count == 0

    def elements(self) -> range:
        return range(1 << self.atom_count)

    def atoms(self) -> Iterator[int]:
        return (1 << i for i in range(self.atom_count))

    def atom(self, index: int) -> int:
        if not 0 <= index < self.atom_count:
            raise IndexError(f"atom index {index} out of range")
        return 1 << index

    # -- operations ---------------------------------------------------------

    def join(self, a: int, b: int) -> int:
        return a | b

    def meet(self, a: int, b: int) -> int:
        return a & b

    def complement(self, a: int) -> int:
        return self.top ^ a

    def implies(self, a: int, b: int) -> int:
        return self.complement(a) | b

    def leq(self, a: int, b: int) -> bool:
        return a | b == b

    def is_atom(self, e: int) -> bool:
        return e != 0 and e & (e - 1) == 0

    def atoms_below(self, e: int) -> list[int]:
        return [i for i in range(self.atom_count) if (e >> i) & 1]

    def check(self, e: int) -> int:
        if not 0 <= e < self.element_count:
            raise ValueError(f"{e} is not an element of this algebra")
        return e


def two() -> FiniteBooleanAlgebra:
    """The two-element algebra of truth values."""
    return FiniteBooleanAlgebra(1)


@dataclass(frozen=True)
class BoolHom:
    """Boolean homomorphism, dual-encoded by its atom map.

    atom_map[j] is the source atom under target atom j; the induced element
    map sends e to the set of target atoms whose source atom lies below e.
    """

    source: FiniteBooleanAlgebra
    target: FiniteBooleanAlgebra
    atom_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.atom_map) != self.target.atom_count:
            raise ValueError("atom_map must cover every target atom")
        for i in self.atom_map:
            if not 0 <= i < self.source.atom_count:
                raise ValueError(f"atom index {i} outside the source algebra")

    def __call__(self, element: int) -> int:
        self.source.check(element)
        out = 0
        for j, i in enumerate(self.atom_map):
            if (element >> i) & 1:
                out |= 1 << j
        return out

    def image_table(self) -> list[int]:
        """Image of every source element, via the backend kernel."""
        return _core.hom_image_table(self.atom_map, self.source.atom_count, self.target.atom_count)

    def compose(self, other: "BoolHom") -> "BoolHom":
        """self after other (other's target must be self's source)."""
        if other.target != self.source:
            raise ValueError("homs not composable")
        return BoolHom(
            other.source, self.target, tuple(other.atom_map[j] for j in self.atom_map)
        )

    @staticmethod
    def identity(algebra: FiniteBooleanAlgebra) -> "BoolHom":
        return BoolHom(algebra, algebra, tuple(range(algebra.atom_count)))

    @property
    def is_isomorphism(self) -> bool:
        return (
            self.source.atom_count == self.target.atom_count
            and sorted(self.atom_map) == list(range(self.source.atom_count))
        )

    def inverse(self) -> "BoolHom":
        if not self.is_isomorphism:
            raise ValueError("hom is not an isomorphism")
        inv = [0] * len(self.atom_map)
        for j, i in enumerate(self.atom_map):
            inv[i] = j
        return BoolHom(self.target, self.source, tuple(inv))


def verify_hom(h: BoolHom, exhaustive: bool = False) -> bool:
    """Check that a hom preserves top, bottom, meet, join and complement.

    The default pass checks complements element-wise plus atomic join
    decompositions, which forces pairwise meet/join preservation; with
    exhaustive=True every element pair is checked directly (quadratic, meant
    for small algebras).
    """
    img = h.image_table()
    if not _core.check_hom_table(img, h.source.atom_count, h.target.atom_count):
        return False
    if exhaustive:
        top_s, top_t = h.source.top, h.target.top
        if img[0] != 0 or img[top_s] != top_t:
            return False
        for a in h.source.elements():
            if img[top_s ^ a] != top_t ^ img[a]:
                return False
            for b in h.source.elements():
                if img[a | b] != img[a] | img[b] or img[a & b] != img[a] & img[b]:
                    return False
    return True


def enumerate_homs(
    B: FiniteBooleanAlgebra,
    C: FiniteBooleanAlgebra,
    bound: int = DEFAULT_HOM_BOUND,
) -> list[BoolHom]:
    """All homomorphisms B -> C, in lexicographic atom-map order.

    There are |atoms(B)| ** |atoms(C)| of them; in particular none when B is
    degenerate and C is not. Every returned hom passes verify_hom.
    """
    m, k = B.atom_count, C.atom_count
    count = m**k
    if count > bound:
        raise CapacityExceededError(f"{count} homs exceed the bound {bound}")
    out = []
    for atom_map in product(range(m), repeat=k):
        h = BoolHom(B, C, atom_map)
        if not verify_hom(h):  # pragma: no cover - defensive; holds by construction
            raise AssertionError(f"enumerated hom failed preservation: {atom_map}")
        out.append(h)
    return out


# ---------------------------------------------------------------------------
# Lindenbaum algebras


def eval_formula(formula: Formula, assignment: TruthAssignment) -> int:
    """Classical truth value (0/1) of a propositional formula."""
    if isinstance(formula, Top):
        return 1
    if isinstance(formula, Bottom):
        return 0
    if isinstance(formula, Atom):
        return assignment.value(formula.symbol.name)
    if isinstance(formula, Not):
        return 1 - eval_formula(formula.operand, assignment)
    if isinstance(formula, And):
        return eval_formula(formula.lhs, assignment) & eval_formula(formula.rhs, assignment)
    if isinstance(formula, Or):
        return eval_formula(formula.lhs, assignment) | eval_formula(formula.rhs, assignment)
    if isinstance(formula, Implies):
        return (1 - eval_formula(formula.lhs, assignment)) | eval_formula(formula.rhs, assignment)
    if isinstance(formula, Equation):
        raise FragmentViolationError("equation in a propositional formula")
    raise TypeError(f"not a formula: {formula!r}")


def _require_prop(theory: Theory) -> Theory:
    if theory.fragment is not Fragment.PROP:
        raise FragmentViolationError(f"theory {theory.name} is not propositional")
    return check_well_formed(theory)


def satisfying_assignments(
    theory: Theory, atom_bound: int = DEFAULT_ATOM_BOUND
) -> list[TruthAssignment]:
    """The assignments making every axiom true, in lexicographic order."""
    _require_prop(theory)
    letters = theory.letters
    if len(letters) > atom_bound:
        raise CapacityExceededError(
            f"{len(letters)} letters exceed the assignment bound {atom_bound}"
        )
    out = []
    for bits in product((0, 1), repeat=len(letters)):
        assignment = TruthAssignment(letters, bits)
        if all(eval_formula(ax, assignment) for ax in theory.axioms):
            out.append(assignment)
    return out


@dataclass(frozen=True)
class LindenbaumAlgebra:
    """F(V)/A for a propositional theory: formulae modulo provable equivalence.

    Atoms are the satisfying assignments; the quotient map sends a formula to
    its truth set, so provably equivalent formulae collapse to the same
    element and every axiom lands on top. An inconsistent theory yields the
    one-element algebra.
    """

    theory: Theory
    algebra: FiniteBooleanAlgebra

    def quotient(self, formula: Formula) -> int:
        for name in sorted(a.symbol.name for a in _atoms_of(formula)):
            if name not in self.theory.letters:
                raise UnknownSymbolError(f"letter {name} not in theory {self.theory.name}")
        mask = 0
        for i, assignment in enumerate(self.algebra.atom_labels):
            if eval_formula(formula, assignment):
                mask |= 1 << i
        return mask


def _atoms_of(formula: Formula) -> list[Atom]:
    if isinstance(formula, Atom):
        return [formula]
    if isinstance(formula, Not):
        return _atoms_of(formula.operand)
    if isinstance(formula, (And, Or, Implies)):
        return _atoms_of(formula.lhs) + _atoms_of(formula.rhs)
    return []


def lindenbaum_algebra(theory: Theory, atom_bound: int = DEFAULT_ATOM_BOUND) -> LindenbaumAlgebra:
    models = satisfying_assignments(theory, atom_bound)
    if len(models) > atom_bound:
        raise CapacityExceededError(f"{len(models)} atoms exceed the bound {atom_bound}")
    algebra = FiniteBooleanAlgebra(len(models), tuple(models))
    return LindenbaumAlgebra(theory, algebra)


@lru_cache(maxsize=None)
def _axiomless_theory(letters: tuple[str, ...]) -> Theory:
    from .kernel import RelationSymbol

    return Theory(
        name="FREE",
        fragment=Fragment.PROP,
        relations=tuple(RelationSymbol(l) for l in letters),
    )


def free_boolean_algebra(
    letters: Iterable[str], atom_bound: int = DEFAULT_ATOM_BOUND
) -> LindenbaumAlgebra:
    """F(V): the Lindenbaum algebra of the axiomless theory on V.

    Carrier size is 2**(2**|V|); raises CapacityExceededError once the atom
    count 2**|V| passes the bound.
    """
    letters = tuple(sorted(letters))
    if 2 ** len(letters) > atom_bound:
        raise CapacityExceededError(
            f"free algebra on {len(letters)} letters needs {2 ** len(letters)} atoms (bound {atom_bound})"
        )
    return lindenbaum_algebra(_axiomless_theory(letters), atom_bound)


def entails(theory: Theory, formula: Formula) -> bool:
    """Whether the axioms semantically force the formula (quotient hits top)."""
    lin = lindenbaum_algebra(theory)
    return lin.quotient(formula) == lin.algebra.top
