"""The Lang and Syn functors between finite Boolean algebras and
propositional theories, with exhaustive verification of the hom-set
bijection THEORIES(Lang(B), T) = CATEGORIES(B, Syn(T)) and its naturality.

Lang takes an algebra to its full diagram theory: one letter per element and
axioms recording the operation tables, so Syn(Lang(B)) is canonically
isomorphic to B. Theory morphisms are defined through Syn, which would make
the bijection definitional if both sides were enumerated the same way; the
check therefore enumerates the right-hand side by a second, independent
method (labelled partitions of the target's atoms) so it has teeth.

Lang is covariant on homs: lang_hom(h: B' -> B) runs Lang(B') -> Lang(B) by
conjugation with the canonical isomorphisms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .boolalg import (
    BoolHom,
    FiniteBooleanAlgebra,
    LindenbaumAlgebra,
    enumerate_homs,
    lindenbaum_algebra,
    verify_hom,
)
from .errors import CapacityExceededError, FragmentViolationError
from .kernel import (
    And,
    Atom,
    Formula,
    Fragment,
    Implies,
    Not,
    Or,
    RelationSymbol,
    Theory,
    check_well_formed,
)

LANG_ATOM_BOUND = 4
BLOCK_ENUM_BOUND = 2**22
DEFAULT_SEED = 20_260_809
NATURALITY_EXHAUSTIVE_LIMIT = 10_000
NATURALITY_SAMPLES = 500


def _iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


@lru_cache(maxsize=None)
def lang(B: FiniteBooleanAlgebra, atom_bound: int = LANG_ATOM_BOUND) -> Theory:
    """The diagram theory of B: a letter per element, axioms per table entry.

    Letters are e0, e1, ... (zero padded) indexed by element mask. The
    Lindenbaum algebra of the result is canonically isomorphic to B; see
    canonical_iso for the verified witness.
    """
    if B.atom_count > atom_bound:
        raise CapacityExceededError(
            f"lang of a {B.atom_count}-atom algebra exceeds the bound {atom_bound}"
        )
    size = B.element_count
    width = len(str(size - 1))
    letters = [RelationSymbol(f"e{i:0{width}d}") for i in range(size)]
    p = [Atom(l) for l in letters]
    axioms: list[Formula] = [p[B.top], Not(p[B.bottom])]
    for a in B.elements():
        axioms.append(_iff(Not(p[a]), p[B.complement(a)]))
    for a in B.elements():
        for b in B.elements():
            axioms.append(_iff(And(p[a], p[b]), p[a & b]))
            axioms.append(_iff(Or(p[a], p[b]), p[a | b]))
    return Theory(
        name=f"LANG{B.atom_count}",
        fragment=Fragment.PROP,
        relations=tuple(letters),
        axioms=tuple(axioms),
    )


def syn(theory: Theory) -> FiniteBooleanAlgebra:
    """Syn of a propositional theory: its Lindenbaum algebra."""
    return _lindenbaum(theory).algebra


@lru_cache(maxsize=None)
def _lindenbaum(theory: Theory) -> LindenbaumAlgebra:
    if theory.fragment is not Fragment.PROP:
        raise FragmentViolationError(f"theory {theory.name} is not propositional")
    return lindenbaum_algebra(check_well_formed(theory))


@lru_cache(maxsize=None)
def canonical_iso(B: FiniteBooleanAlgebra) -> BoolHom:
    """The verified isomorphism B -> Syn(Lang(B)).

    Each satisfying assignment of the diagram theory is a Boolean
    homomorphism B -> 2, i.e. a principal ultrafilter; its generating atom is
    the meet of the elements it sends to true.
    """
    L = _lindenbaum(lang(B))
    atom_map = []
    for assignment in L.algebra.atom_labels:
        acc = B.top
        for e, value in enumerate(assignment.values):
            if value:
                acc &= e
        if not B.is_atom(acc):  # pragma: no cover - diagram axioms force this
            raise AssertionError("diagram-theory assignment is not an ultrafilter")
        atom_map.append(acc.bit_length() - 1)
    iso = BoolHom(B, L.algebra, tuple(atom_map))
    assert iso.is_isomorphism, "Syn(Lang(B)) has the wrong atom count"
    assert verify_hom(iso), "canonical comparison map is not a homomorphism"
    return iso


@dataclass(frozen=True)
class TheoryMorphism:
    """Morphism of propositional theories: a hom between their Syn images."""

    source: Theory
    target: Theory
    hom: BoolHom

    def compose(self, other: "TheoryMorphism") -> "TheoryMorphism":
        """self after other."""
        if other.target != self.source:
            raise ValueError("theory morphisms not composable")
        return TheoryMorphism(other.source, self.target, self.hom.compose(other.hom))

    @staticmethod
    def identity(theory: Theory) -> "TheoryMorphism":
        return TheoryMorphism(theory, theory, BoolHom.identity(syn(theory)))


def theory_morphisms(t1: Theory, t2: Theory) -> list[TheoryMorphism]:
    """All morphisms t1 -> t2, i.e. all homs Syn(t1) -> Syn(t2)."""
    return [TheoryMorphism(t1, t2, h) for h in enumerate_homs(syn(t1), syn(t2))]


def lang_hom(h: BoolHom) -> TheoryMorphism:
    """Lang on homs (covariant): conjugate by the canonical isomorphisms."""
    iso_src = canonical_iso(h.source)
    iso_tgt = canonical_iso(h.target)
    conj = iso_tgt.compose(h).compose(iso_src.inverse())
    return TheoryMorphism(lang(h.source), lang(h.target), conj)


def _transpose_raw(B: FiniteBooleanAlgebra, f: TheoryMorphism) -> BoolHom:
    return f.hom.compose(canonical_iso(B))


def _untranspose_raw(B: FiniteBooleanAlgebra, T: Theory, g: BoolHom) -> TheoryMorphism:
    return TheoryMorphism(lang(B), T, g.compose(canonical_iso(B).inverse()))


def transpose(B: FiniteBooleanAlgebra, f: TheoryMorphism) -> BoolHom:
    """Move f: Lang(B) -> T across the bijection to a hom B -> Syn(T).

    The inverse transposition is applied to the result and compared, so
    every call verifies its own round trip.
    """
    g = _transpose_raw(B, f)
    assert _untranspose_raw(B, f.target, g).hom == f.hom, "transpose round trip failed"
    return g


def untranspose(B: FiniteBooleanAlgebra, T: Theory, g: BoolHom) -> TheoryMorphism:
    """Inverse transposition: a hom B -> Syn(T) as a morphism Lang(B) -> T.

    Verified per call against the forward direction.
    """
    f = _untranspose_raw(B, T, g)
    assert _transpose_raw(B, f) == g, "untranspose round trip failed"
    return f


def enumerate_homs_by_blocks(
    B: FiniteBooleanAlgebra, C: FiniteBooleanAlgebra
) -> list[tuple[int, ...]]:
    """Second, independent hom enumeration: homs B -> C as atom-image tuples.

    A hom is exactly a choice of pairwise-disjoint images for B's atoms that
    join to C's top (a labelled partition of C's atom set). Small instances
    scan all element tuples outright; larger ones build the partitions by
    recursive placement. Neither path shares code with
    boolalg.enumerate_homs, and the two agree (see the test suite).
    """
    m = B.atom_count
    if C.element_count**m <= BLOCK_ENUM_BOUND:
        return _blocks_by_scan(B, C)
    if m**C.atom_count > BLOCK_ENUM_BOUND:
        raise CapacityExceededError("block enumeration out of capacity")
    return _blocks_by_placement(B, C)


def _blocks_by_scan(B: FiniteBooleanAlgebra, C: FiniteBooleanAlgebra) -> list[tuple[int, ...]]:
    out = []
    for images in product(C.elements(), repeat=B.atom_count):
        union = 0
        disjoint = True
        for c in images:
            if union & c:
                disjoint = False
                break
            union |= c
        if disjoint and union == C.top:
            out.append(images)
    return out


def _blocks_by_placement(B: FiniteBooleanAlgebra, C: FiniteBooleanAlgebra) -> list[tuple[int, ...]]:
    m = B.atom_count
    if m == 0:
        return [()] if C.atom_count == 0 else []
    out: list[tuple[int, ...]] = []
    images = [0] * m

    def place(j: int) -> None:
        if j == C.atom_count:
            out.append(tuple(images))
            return
        bit = 1 << j
        for i in range(m):
            images[i] |= bit
            place(j + 1)
            images[i] ^= bit

    place(0)
    out.sort()
    return out


def _hom_from_images(B: FiniteBooleanAlgebra, C: FiniteBooleanAlgebra, images) -> BoolHom:
    atom_map = []
    for j in range(C.atom_count):
        sources = [i for i, c in enumerate(images) if (c >> j) & 1]
        if len(sources) != 1:  # pragma: no cover - images partition the atoms
            raise AssertionError("images do not partition the target atoms")
        atom_map.append(sources[0])
    return BoolHom(B, C, tuple(atom_map))


def _atom_images(g: BoolHom) -> tuple[int, ...]:
    return tuple(g(1 << i) for i in range(g.source.atom_count))


@dataclass
class AdjunctionReport:
    """Both hom-set cardinalities, the transposition pairing, and verdicts.

    `pairing` lists (left index, right index) pairs; verdicts are
    recomputable from it together with the seed.
    """

    left_count: int
    right_count: int
    expected_count: int
    pairing: list[tuple[int, int]]
    bijection_ok: bool
    round_trip_ok: bool
    naturality_ok: bool
    naturality_checked: int
    naturality_total: int
    seed: int
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.bijection_ok
            and self.round_trip_ok
            and self.naturality_ok
            and self.left_count == self.right_count == self.expected_count
        )


def _aux_empty_theory() -> Theory:
    return Theory(name="AUX", fragment=Fragment.PROP)


def check_adjunction(
    B: FiniteBooleanAlgebra,
    T: Theory,
    seed: int = DEFAULT_SEED,
    transpose_fn=None,
) -> AdjunctionReport:
    """Verify the hom-set bijection for one (algebra, theory) pair.

    Enumerates THEORIES(Lang(B), T) and CATEGORIES(B, Syn(T)) by independent
    code paths, checks that transposition is a bijection with inverse
    untransposition, and checks naturality squares
    transpose(t . f . lang(b)) = syn(t) . transpose(f) . b over auxiliary
    objects: exhaustive when at most 10**4 triples exist, else a seeded
    500-triple sample.
    """
    if transpose_fn is None:
        transpose_fn = transpose
    langB = lang(B)
    synT = syn(T)
    counterexamples: list[dict] = []

    left = theory_morphisms(langB, T)
    right = enumerate_homs_by_blocks(B, synT)
    expected = B.atom_count ** synT.atom_count

    right_index = {images: j for j, images in enumerate(right)}
    pairing: list[tuple[int, int]] = []
    seen: set[int] = set()
    bijection_ok = len(left) == len(right)
    for i, f in enumerate(left):
        g = transpose_fn(B, f)
        key = _atom_images(g)
        j = right_index.get(key)
        if j is None or j in seen:
            bijection_ok = False
            counterexamples.append(
                {
                    "id": f"bij:{i}",
                    "kind": "bijection",
                    "left_index": i,
                    "images": list(key),
                    "reason": "duplicate" if j in seen else "not a partition hom",
                }
            )
            continue
        seen.add(j)
        pairing.append((i, j))
    if len(seen) != len(right):
        bijection_ok = False

    round_trip_ok = True
    for i, f in enumerate(left):
        g = transpose_fn(B, f)
        back = untranspose(B, T, g)
        if back.hom != f.hom:
            round_trip_ok = False
            counterexamples.append({"id": f"rt:left:{i}", "kind": "round-trip", "side": "left", "index": i})
    for j, images in enumerate(right):
        g = _hom_from_images(B, synT, images)
        again = transpose_fn(B, untranspose(B, T, g))
        if again != g:
            round_trip_ok = False
            counterexamples.append({"id": f"rt:right:{j}", "kind": "round-trip", "side": "right", "index": j})

    # Naturality: vary B through b: B' -> B and T through t: T -> T'.
    # Keeping T as its own aux target is affordable only while its endo-hom
    # set is small.
    aux_algebras = [FiniteBooleanAlgebra(1), FiniteBooleanAlgebra(2)]
    aux_theories = [_aux_empty_theory()]
    if synT.atom_count <= 2:
        aux_theories.insert(0, T)
    triples = []
    for Bp in aux_algebras:
        for b in enumerate_homs(Bp, B):
            for Tp in aux_theories:
                for t in theory_morphisms(T, Tp):
                    for f in left:
                        triples.append((Bp, b, Tp, t, f))
    total = len(triples)
    if total > NATURALITY_EXHAUSTIVE_LIMIT:
        rng = random.Random(seed)
        triples = [triples[rng.randrange(total)] for _ in range(NATURALITY_SAMPLES)]

    naturality_ok = True
    for idx, (Bp, b, Tp, t, f) in enumerate(triples):
        lhs = transpose_fn(Bp, t.compose(f).compose(lang_hom(b)))
        rhs = t.hom.compose(transpose_fn(B, f)).compose(b)
        if lhs != rhs:
            naturality_ok = False
            counterexamples.append(
                {
                    "id": f"nat:{idx}",
                    "kind": "naturality",
                    "b_atom_map": list(b.atom_map),
                    "b_source_atoms": Bp.atom_count,
                    "t_atom_map": list(t.hom.atom_map),
                    "f_atom_map": list(f.hom.atom_map),
                }
            )

    return AdjunctionReport(
        left_count=len(left),
        right_count=len(right),
        expected_count=expected,
        pairing=pairing,
        bijection_ok=bijection_ok,
        round_trip_ok=round_trip_ok,
        naturality_ok=naturality_ok,
        naturality_checked=len(triples),
        naturality_total=total,
        seed=seed,
        counterexamples=counterexamples,
    )
