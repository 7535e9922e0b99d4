import pytest

from catlogic.boolalg import BoolHom, FiniteBooleanAlgebra
from catlogic.brain import (
    Axon,
    BrainGraph,
    Neuron,
    NeuronState,
    audit_adjunction,
    export_dot,
    load_brain,
    mind_of_brain,
    propagate,
)
from catlogic.errors import (
    InvalidHomError,
    InvalidStateError,
    MissingIdentityError,
    TheorySyntaxError,
    UnknownNeuronError,
)

from conftest import fixture_text


@pytest.fixture(scope="module")
def solo():
    return load_brain(fixture_text("brain_one.brain"))


@pytest.fixture(scope="module")
def pair():
    return load_brain(fixture_text("brain_two.brain"))


@pytest.fixture(scope="module")
def chain():
    return load_brain(fixture_text("brain_chain.brain"))


class TestLoad:
    def test_solo(self, solo):
        assert [n.id for n in solo.neurons] == ["n1"]
        assert [a.id for a in solo.axons] == ["id_n1"]

    def test_chain_composite_verified(self, chain):
        assert chain.composites == (("a3", "a2", "a1"),)
        assert chain.validate(strict=True) == []

    def test_axon_hom_composition_associative(self, chain):
        # holds automatically for boolean homs, verified anyway on the chain
        h1 = chain.axon("a1").hom
        h2 = chain.axon("a2").hom
        ident = chain.axon("id_n3").hom
        assert h1.compose(h2.compose(ident)) == h1.compose(h2).compose(ident)

    def test_invalid_hom_rejected(self):
        with pytest.raises(InvalidHomError):
            load_brain(fixture_text("brain_bad_hom.brain"))

    def test_wrong_length_hom_rejected(self):
        text = """
        brain b {
          neuron n1 atoms=2;
          neuron n2 atoms=2;
          axon a1 n1 -> n2 hom=[0];
        }
        """
        with pytest.raises(InvalidHomError):
            load_brain(text)

    def test_unknown_neuron(self):
        text = "brain b { neuron n1 atoms=1; axon a1 n1 -> nX hom=[0]; }"
        with pytest.raises(UnknownNeuronError):
            load_brain(text)

    def test_bad_composite_strict_vs_lenient(self):
        text = fixture_text("brain_bad_composite.brain")
        with pytest.raises(InvalidHomError):
            load_brain(text)
        graph = load_brain(text, strict=False)
        findings = graph.validate(strict=False)
        assert findings and findings[0]["kind"] == "composite-mismatch"

    def test_syntax_error(self):
        with pytest.raises(TheorySyntaxError):
            load_brain("brain b { neuron }")

    def test_missing_identity_on_programmatic_graph(self):
        alg = FiniteBooleanAlgebra(1)
        g = BrainGraph("g", (Neuron("n1", alg),), ())
        with pytest.raises(MissingIdentityError):
            g.validate()

    def test_degenerate_neuron(self):
        # a 0-atom neuron can only be an axon source (no hom leaves the
        # one-element algebra into a nondegenerate one); it never fires
        text = """
        brain degen {
          neuron dead atoms=0;
          neuron live atoms=1;
          axon a1 dead -> live hom=[];
        }
        """
        g = load_brain(text)
        trace = propagate(g, [NeuronState("live", 0)], 2)
        assert trace.steps == [{"dead": None, "live": 0}] * 2
        assert all(a["passed"] for a in audit_adjunction(g))
        with pytest.raises(InvalidHomError):
            load_brain(
                "brain x { neuron live atoms=1; neuron dead atoms=0;"
                " axon a1 live -> dead hom=[]; }"
            )


class TestMind:
    def test_shape_preserved(self, pair):
        mind = mind_of_brain(pair)
        assert set(mind.theories) == {n.id for n in pair.neurons}
        assert set(mind.morphisms) == {a.id for a in pair.axons}
        for a in pair.axons:
            m = mind.morphisms[a.id]
            assert m.source == mind.theories[a.target]
            assert m.target == mind.theories[a.source]

    def test_morphism_is_conjugated_hom(self, pair):
        from catlogic.adjunction import canonical_iso

        mind = mind_of_brain(pair)
        a1 = pair.axon("a1")
        src = pair.neuron(a1.source)
        dst = pair.neuron(a1.target)
        expected = (
            canonical_iso(a1.hom.target)
            .compose(a1.hom)
            .compose(canonical_iso(a1.hom.source).inverse())
        )
        assert mind.morphisms["a1"].hom == expected

    def test_identity_axon_maps_to_identity(self, pair):
        from catlogic.adjunction import TheoryMorphism

        mind = mind_of_brain(pair)
        ident = mind.morphisms["id_n1"]
        assert ident.hom == TheoryMorphism.identity(mind.theories["n1"]).hom

    def test_capacity_exceeded_for_oversized_neuron(self):
        from catlogic.errors import CapacityExceededError

        g = load_brain("brain big { neuron n1 atoms=6; }")
        with pytest.raises(CapacityExceededError):
            mind_of_brain(g)


class TestAudit:
    def test_solo_single_report(self, solo):
        audits = audit_adjunction(solo)
        assert len(audits) == 1 and audits[0]["passed"]

    def test_pair_four_reports(self, pair):
        audits = audit_adjunction(pair)
        assert len(audits) == 4
        assert all(a["passed"] for a in audits)

    def test_broken_transpose_fails_with_counterexample(self, solo):
        from catlogic.adjunction import transpose

        def corrupt(B, f):
            g = transpose(B, f)
            amap = tuple((i + 1) % max(g.source.atom_count, 1) for i in g.atom_map)
            return BoolHom(g.source, g.target, amap) if g.atom_map else g

        audits = audit_adjunction(solo, transpose_fn=corrupt)
        assert not all(a["passed"] for a in audits)
        failing = [a for a in audits if not a["passed"]]
        assert failing[0]["report"].counterexamples


class TestPropagate:
    def test_identity_fixed_point(self, solo):
        trace = propagate(solo, [NeuronState("n1", 0)], 5)
        assert all(step == {"n1": 0} for step in trace.steps)

    def test_collapse_to_terminal(self):
        text = """
        brain collapse {
          neuron big atoms=3;
          neuron tiny atoms=1;
          axon a1 big -> tiny hom=[0, 0, 0];
        }
        """
        g = load_brain(text)
        for start in (0, 1, 2):
            trace = propagate(g, [NeuronState("big", start)], 1)
            assert trace.steps[0]["tiny"] == 0

    def test_swap_pair_alternates_with_period_two(self, pair):
        trace = propagate(pair, [NeuronState("n1", 0), NeuronState("n2", 0)], 6)
        assert [s["n1"] for s in trace.steps] == [1, 0, 1, 0, 1, 0]
        assert [s["n2"] for s in trace.steps] == [1, 0, 1, 0, 1, 0]

    def test_silence_spreads_without_input(self):
        text = """
        brain oneway {
          neuron a atoms=2;
          neuron b atoms=2;
          axon f a -> b hom=[0, 1];
        }
        """
        g = load_brain(text)
        trace = propagate(g, [NeuronState("a", 1)], 2)
        # b receives a's state (axon f beats its identity loop); a keeps its
        # own state through id_a
        assert trace.steps[0] == {"a": 1, "b": 1}
        assert trace.decisions[0] == {"a": "id_a", "b": "f"}

    def test_all_silent_stays_silent(self, pair):
        trace = propagate(pair, [], 3)
        assert all(all(v is None for v in step.values()) for step in trace.steps)

    def test_fan_in_priority_by_axon_id(self):
        text = """
        brain fanin {
          neuron a atoms=2;
          neuron b atoms=2;
          neuron c atoms=2;
          axon p1 a -> c hom=[0, 1];
          axon p2 b -> c hom=[1, 0];
        }
        """
        g = load_brain(text)
        trace = propagate(g, [NeuronState("a", 0), NeuronState("b", 0)], 1)
        assert trace.steps[0]["c"] == 0  # p1 wins over p2
        assert trace.decisions[0]["c"] == "p1"

    def test_composite_equals_two_steps(self, chain):
        # pushing along a3 once agrees with a1 then a2, state by state
        a1, a2, a3 = chain.axon("a1"), chain.axon("a2"), chain.axon("a3")
        for p in range(2):
            assert a3.push_map[p] == a2.push_map[a1.push_map[p]]

    def test_composite_functoriality_three_atom_chain(self):
        text = """
        brain chain3 {
          neuron n1 atoms=3;
          neuron n2 atoms=3;
          neuron n3 atoms=3;
          axon a1 n1 -> n2 hom=[1, 2, 0];
          axon a2 n2 -> n3 hom=[2, 2, 1];
          axon a3 n1 -> n3 hom=[2, 1, 2];
          composite a3 = a2 . a1;
        }
        """
        g = load_brain(text)
        a1, a2, a3 = g.axon("a1"), g.axon("a2"), g.axon("a3")
        for p in range(3):
            assert a3.push_map[p] == a2.push_map[a1.push_map[p]]
            trace = propagate(g, [NeuronState("n1", p)], 2)
            assert trace.steps[0]["n3"] == trace.steps[1]["n3"] == a3.push_map[p]

    def test_identity_axon_dual_is_identity_on_points(self, pair, chain):
        from catlogic.stone import stone_dual_of_hom

        for g in (pair, chain):
            for n in g.neurons:
                ident = g.axon(f"id_{n.id}")
                dual = stone_dual_of_hom(ident.hom)
                assert dual.point_map == tuple(range(n.logic.atom_count))

    def test_invalid_state_rejected(self, solo):
        with pytest.raises(InvalidStateError):
            propagate(solo, [NeuronState("n1", 7)], 1)
        with pytest.raises(InvalidStateError):
            propagate(solo, [NeuronState("n1", 0)], -1)

    def test_deterministic(self, pair):
        a = propagate(pair, [NeuronState("n1", 1)], 4)
        b = propagate(pair, [NeuronState("n1", 1)], 4)
        assert a.steps == b.steps and a.decisions == b.decisions


class TestDot:
    def test_solo_self_loop(self, solo):
        dot = export_dot(solo)
        assert dot.startswith('digraph "solo" {')
        assert '"n1" -> "n1" [label="id_n1"];' in dot

    def test_mind_labels_carry_letter_counts(self, pair):
        dot = export_dot(mind_of_brain(pair))
        assert "letters=4" in dot
        assert '"n1" -> "n2" [label="a1"];' in dot

    def test_empty_brain(self):
        g = BrainGraph("void", (), ())
        assert export_dot(g) == 'digraph "void" {\n}\n'

    def test_deterministic(self, chain):
        assert export_dot(chain) == export_dot(chain)
