"""Neuron networks with per-neuron logic algebras.

A brain is a directed graph: each neuron carries a finite Boolean algebra,
each axon src -> dst carries a Boolean homomorphism dst.logic -> src.logic.
The orientation is deliberate: Stone duality is contravariant, so the dual
of that hom moves prime-filter states in the axon's direction
(presynaptic to postsynaptic). The mind image of a brain applies lang to
every neuron and conjugates every axon hom by the canonical isomorphisms,
preserving the incidence structure exactly.

File format:

    brain <name> {
      neuron <id> atoms=<n>;
      axon <id> <src> -> <dst> hom=[i0, i1, ...];
      composite <id> = <g> . <f>;
    }

The hom list names, for each atom of the source neuron's algebra, the index
of its image atom in the target neuron's algebra (this function is both the
dual atom map of the required hom and the state-push map). An identity axon
id_<neuron> is generated per neuron; a `composite` entry declares that an
existing axon is the composition g-after-f, which is verified.

State propagation: at each step every axon pushes its source neuron's state
(a Stone point, or the explicit `silent` state) through its dual map; a
neuron with several incoming points keeps the first in axon-id order, and
the winning axon is recorded in the trace. Identity axons transmit, so an
undisturbed neuron holds its state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .adjunction import TheoryMorphism, check_adjunction, lang, lang_hom
from .boolalg import BoolHom, FiniteBooleanAlgebra
from .dsl import _Lexer
from .errors import (
    InvalidHomError,
    InvalidStateError,
    MissingIdentityError,
    TheorySyntaxError,
    UnknownNeuronError,
)
from .kernel import Theory


@dataclass(frozen=True)
class Neuron:
    id: str
    logic: FiniteBooleanAlgebra


@dataclass(frozen=True)
class Axon:
    """Directed edge src -> dst carrying a hom dst.logic -> src.logic."""

    id: str
    source: str
    target: str
    hom: BoolHom

    @property
    def push_map(self) -> tuple[int, ...]:
        """Stone dual point function: source-neuron atoms to target atoms."""
        return self.hom.atom_map


@dataclass
class BrainGraph:
    name: str
    neurons: tuple[Neuron, ...]
    axons: tuple[Axon, ...]
    composites: tuple[tuple[str, str, str], ...] = ()  # (composite, g, f): composite = g . f

    def neuron(self, nid: str) -> Neuron:
        for n in self.neurons:
            if n.id == nid:
                return n
        raise UnknownNeuronError(f"no neuron {nid}")

    def axon(self, aid: str) -> Axon:
        for a in self.axons:
            if a.id == aid:
                return a
        raise UnknownNeuronError(f"no axon {aid}")

    def validate(self, strict: bool = True) -> list[dict]:
        """Structural invariants; returns findings, raising when strict.

        Composite disagreements are findings (replayable by id); everything
        else is a hard error in either mode.
        """
        ids = [n.id for n in self.neurons]
        if len(set(ids)) != len(ids):
            raise UnknownNeuronError("duplicate neuron ids")
        aids = [a.id for a in self.axons]
        if len(set(aids)) != len(aids):
            raise InvalidHomError("duplicate axon ids")
        with_identity = set()
        for a in self.axons:
            src = self.neuron(a.source)
            dst = self.neuron(a.target)
            if a.hom.source != dst.logic or a.hom.target != src.logic:
                raise InvalidHomError(
                    f"axon {a.id}: hom endpoints do not match {a.source} -> {a.target}"
                )
            if a.source == a.target and a.hom == BoolHom.identity(src.logic):
                with_identity.add(a.source)
        for n in self.neurons:
            if n.id not in with_identity:
                raise MissingIdentityError(f"neuron {n.id} has no identity axon")

        findings = []
        for cid, gid, fid in self.composites:
            comp, g, f = self.axon(cid), self.axon(gid), self.axon(fid)
            if f.target != g.source or comp.source != f.source or comp.target != g.target:
                raise InvalidHomError(f"composite {cid} = {gid} . {fid} has mismatched endpoints")
            expected = f.hom.compose(g.hom)
            if comp.hom != expected:
                findings.append(
                    {
                        "id": f"composite:{cid}",
                        "kind": "composite-mismatch",
                        "composite": cid,
                        "factors": [gid, fid],
                        "declared": list(comp.hom.atom_map),
                        "actual": list(expected.atom_map),
                    }
                )
        if strict and findings:
            raise InvalidHomError(
                "; ".join(f"{f['composite']} is not the composition of its factors" for f in findings)
            )
        return findings


@dataclass
class MindGraph:
    """Image of a brain under lang: theories on nodes, theory morphisms on
    the same edges (each morphism runs lang(dst) -> lang(src), mirroring the
    brain's dual hom orientation)."""

    name: str
    brain: BrainGraph
    theories: dict[str, Theory]
    morphisms: dict[str, TheoryMorphism]


def load_brain(text: str, strict: bool = True) -> BrainGraph:
    """Parse and validate a brain description."""
    lx = _Lexer(text)
    lx.expect("brain")
    name_tok = lx.next()
    if name_tok.kind != "ident":
        raise TheorySyntaxError("expected a brain name", name_tok.span)
    lx.expect("{")
    neurons: list[Neuron] = []
    by_id: dict[str, Neuron] = {}
    axons: list[Axon] = []
    composites: list[tuple[str, str, str]] = []
    while lx.peek().text != "}":
        tok = lx.next()
        if tok.text == "neuron":
            nid = lx.expect_ident().text
            key = lx.expect_ident()
            if key.text != "atoms":
                raise TheorySyntaxError("expected atoms=<n>", key.span)
            lx.expect("=")
            count_tok = lx.next()
            if count_tok.kind != "number":
                raise TheorySyntaxError("expected an atom count", count_tok.span)
            lx.expect(";")
            if nid in by_id:
                raise TheorySyntaxError(f"neuron {nid} declared twice", tok.span)
            neuron = Neuron(nid, FiniteBooleanAlgebra(int(count_tok.text)))
            by_id[nid] = neuron
            neurons.append(neuron)
        elif tok.text == "axon":
            aid = lx.expect_ident().text
            src_tok = lx.expect_ident()
            lx.expect("->")
            dst_tok = lx.expect_ident()
            key = lx.expect_ident()
            if key.text != "hom":
                raise TheorySyntaxError("expected hom=[...]", key.span)
            lx.expect("=")
            lx.expect("[")
            entries: list[int] = []
            while lx.peek().text != "]":
                num = lx.next()
                if num.kind != "number":
                    raise TheorySyntaxError("expected an atom index", num.span)
                entries.append(int(num.text))
                if lx.peek().text == ",":
                    lx.next()
            lx.expect("]")
            lx.expect(";")
            src = by_id.get(src_tok.text)
            dst = by_id.get(dst_tok.text)
            if src is None:
                raise UnknownNeuronError(f"axon {aid}: unknown neuron {src_tok.text}")
            if dst is None:
                raise UnknownNeuronError(f"axon {aid}: unknown neuron {dst_tok.text}")
            try:
                hom = BoolHom(dst.logic, src.logic, tuple(entries))
            except ValueError as exc:
                raise InvalidHomError(f"axon {aid}: {exc}") from None
            axons.append(Axon(aid, src.id, dst.id, hom))
        elif tok.text == "composite":
            cid = lx.expect_ident().text
            lx.expect("=")
            gid = lx.expect_ident().text
            lx.expect(".")
            fid = lx.expect_ident().text
            lx.expect(";")
            composites.append((cid, gid, fid))
        else:
            raise TheorySyntaxError(f"expected neuron/axon/composite, found {tok.text!r}", tok.span)
    lx.expect("}")
    eof = lx.peek()
    if eof.kind != "eof":
        raise TheorySyntaxError("trailing input after the brain block", eof.span)

    declared = {a.id for a in axons}
    for n in neurons:
        iid = f"id_{n.id}"
        if iid in declared:
            raise TheorySyntaxError(
                f"axon id {iid} collides with the generated identity axon", name_tok.span
            )
        axons.append(Axon(iid, n.id, n.id, BoolHom.identity(n.logic)))

    graph = BrainGraph(name_tok.text, tuple(neurons), tuple(axons), tuple(composites))
    graph.validate(strict=strict)
    return graph


def mind_of_brain(g: BrainGraph) -> MindGraph:
    """Apply lang to every neuron and every axon; shape-preserving."""
    theories = {n.id: lang(n.logic) for n in g.neurons}
    morphisms = {a.id: lang_hom(a.hom) for a in g.axons}
    return MindGraph(g.name, g, theories, morphisms)


def audit_adjunction(g: BrainGraph, seed: int | None = None, transpose_fn=None) -> list[dict]:
    """Run the hom-set bijection audit for every (neuron, neuron) pair.

    Pairs the logic algebra of one neuron with the mind theory of another;
    returns one record per ordered pair with the full report attached.
    """
    from .adjunction import DEFAULT_SEED

    mind = mind_of_brain(g)
    out = []
    for a in g.neurons:
        for b in g.neurons:
            kwargs = {"seed": DEFAULT_SEED if seed is None else seed}
            if transpose_fn is not None:
                kwargs["transpose_fn"] = transpose_fn
            report = check_adjunction(a.logic, mind.theories[b.id], **kwargs)
            out.append(
                {
                    "id": f"adjunction:{a.id}:{b.id}",
                    "algebra_neuron": a.id,
                    "theory_neuron": b.id,
                    "passed": report.passed,
                    "report": report,
                }
            )
    return out


# ---------------------------------------------------------------------------
# State propagation


@dataclass(frozen=True)
class NeuronState:
    """A Stone point of the neuron's logic (by atom index), or silent."""

    neuron: str
    point: int | None

    @property
    def silent(self) -> bool:
        return self.point is None


@dataclass
class StateTrace:
    """Deterministic propagation record: states plus fan-in decisions."""

    initial: dict[str, int | None]
    steps: list[dict[str, int | None]] = field(default_factory=list)
    decisions: list[dict[str, str | None]] = field(default_factory=list)

    def final(self) -> dict[str, int | None]:
        return self.steps[-1] if self.steps else dict(self.initial)


def propagate(g: BrainGraph, initial: list[NeuronState], steps: int) -> StateTrace:
    """Push states along every axon's Stone dual for the given step count.

    Fan-in resolves by axon-id order (prime filters have no canonical
    merge); the winning axon is logged per neuron per step. A neuron whose
    incoming axons are all silent goes silent.
    """
    if steps < 0:
        raise InvalidStateError("steps must be nonnegative")
    state: dict[str, int | None] = {n.id: None for n in g.neurons}
    for s in initial:
        neuron = g.neuron(s.neuron)
        if s.point is not None and not 0 <= s.point < neuron.logic.atom_count:
            raise InvalidStateError(
                f"{s.neuron}: atom {s.point} outside a {neuron.logic.atom_count}-atom algebra"
            )
        state[s.neuron] = s.point

    trace = StateTrace(initial=dict(state))
    ordered_axons = sorted(g.axons, key=lambda a: a.id)
    for _ in range(steps):
        incoming: dict[str, tuple[str, int]] = {}
        for axon in ordered_axons:
            p = state[axon.source]
            if p is None:
                continue
            if axon.target not in incoming:
                incoming[axon.target] = (axon.id, axon.push_map[p])
        state = {
            n.id: incoming[n.id][1] if n.id in incoming else None for n in g.neurons
        }
        trace.steps.append(dict(state))
        trace.decisions.append(
            {n.id: incoming[n.id][0] if n.id in incoming else None for n in g.neurons}
        )
    return trace


# ---------------------------------------------------------------------------
# DOT export


def _dot_quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def export_dot(g: BrainGraph | MindGraph) -> str:
    """DOT digraph with deterministic node and edge order."""
    lines = ["digraph " + _dot_quote(g.name) + " {"]
    if isinstance(g, MindGraph):
        for n in g.brain.neurons:
            letters = len(g.theories[n.id].relations)
            lines.append(f"  {_dot_quote(n.id)} [label={_dot_quote(f'{n.id} (letters={letters})')}];")
        for a in g.brain.axons:
            lines.append(
                f"  {_dot_quote(a.source)} -> {_dot_quote(a.target)} [label={_dot_quote(a.id)}];"
            )
    else:
        for n in g.neurons:
            lines.append(
                f"  {_dot_quote(n.id)} [label={_dot_quote(f'{n.id} (atoms={n.logic.atom_count})')}];"
            )
        for a in g.axons:
            lines.append(
                f"  {_dot_quote(a.source)} -> {_dot_quote(a.target)} [label={_dot_quote(a.id)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
