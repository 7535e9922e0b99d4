"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Every expected value is exact; each criterion also carries a wall-clock
budget which is asserted. Run with `pytest -s tests/test_acceptance.py` to
see the per-criterion lines.
"""

import json
import random
import time

from catlogic import _core
from catlogic.adjunction import check_adjunction, syn
from catlogic.boolalg import FiniteBooleanAlgebra, lindenbaum_algebra
from catlogic.cli import main as cli_main
from catlogic.dsl import parse_file, parse_theory, print_theory
from catlogic.kernel import App, Variable
from catlogic.models import enumerate_homs, enumerate_models, homs_equal_nat_trans
from catlogic.stone import double_dual_iso, stone_space
from catlogic.syncat import check_category_laws, normalize, syn_eq, syn_prop

from conftest import FIXTURES, fixture_text
from corpus import theory_corpus
from oracles import hom_preserves_everything, reduce_word_random_order

CORPUS_SEED = 20260809


class _Budget:
    def __init__(self, number: int, name: str, seconds: float):
        self.number = number
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.number} ({self.name}): {verdict} in {elapsed:.2f}s")
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.number} exceeded its {self.seconds}s budget: {elapsed:.2f}s"
            )
        return False


def test_criterion_1_stone_double_dual():
    corpus = theory_corpus(seed=CORPUS_SEED, count=200, max_letters=4)
    with _Budget(1, "Stone double dual on 200 random theories", 10.0):
        verified = 0
        for theory in corpus:
            algebra = lindenbaum_algebra(theory).algebra
            iso = double_dual_iso(algebra)  # verifies or raises
            assert iso.is_isomorphism
            assert iso.source.atom_count == iso.target.atom_count == algebra.atom_count
            verified += 1
        assert verified == len(corpus) == 200


def test_criterion_2_paper_example(xor_pair):
    with _Budget(2, "two-letter exclusive pair example", 1.0):
        lin = lindenbaum_algebra(xor_pair)
        realizations = enumerate_models(xor_pair, 0)
        assert len(realizations) == 2
        assert lin.algebra.element_count == 4
        assert stone_space(lin.algebra).point_count == 2


def test_criterion_3_group_realization_counts(group_theory):
    with _Budget(3, "labelled group counts 1,2,3,16 with raw-scan oracle", 60.0):
        expected = {1: 1, 2: 2, 3: 3, 4: 16}
        for size, count in expected.items():
            pruned = enumerate_models(group_theory, size, prune=True)
            assert len(pruned) == count, f"size {size}: {len(pruned)} != {count}"
            if size <= 3:
                raw = enumerate_models(group_theory, size, prune=False)
                assert pruned == raw, f"size {size}: oracle disagrees"


def test_criterion_4_homs_are_natural_transformations(group_theory):
    with _Budget(4, "homomorphisms = natural transformations", 30.0):
        models = []
        for size in (1, 2, 3):
            models.extend(enumerate_models(group_theory, size))
        assert len(models) == 6
        for m in models:
            for n in models:
                report = homs_equal_nat_trans(m, n, depth=3)
                assert report.bijective
                assert report.hom_count == len(enumerate_homs(m, n))


def test_criterion_5_category_laws_and_confluence(group_theory):
    corpus = theory_corpus(seed=CORPUS_SEED, count=200, max_letters=4)
    with _Budget(5, "category laws and free-group confluence", 30.0):
        for theory in corpus:
            report = check_category_laws(syn_prop(theory), sample=20, seed=CORPUS_SEED)
            assert report.passed, theory

        cat = syn_eq(group_theory, 3)
        for a in cat.objects:
            for b in cat.objects:
                for f in cat.hom(a, b):
                    assert cat.compose(cat.identity(b), f) == f
                    assert cat.compose(f, cat.identity(a)) == f
        report = check_category_laws(cat, sample=100, seed=CORPUS_SEED)
        assert report.passed and report.associativity_checked >= 100

        # 10^4 random terms: idempotence plus reduction-order independence
        rng = random.Random(CORPUS_SEED)
        X = group_theory.sorts[0]
        mul = group_theory.function("mul")
        inv = group_theory.function("inv")
        unit = group_theory.function("u")
        pool = [Variable(n, X) for n in ("x", "y")]

        def random_term(depth):
            if depth == 0 or rng.random() < 0.3:
                return rng.choice(pool + [App(unit)])
            if rng.random() < 0.4:
                return App(inv, (random_term(depth - 1),))
            return App(mul, (random_term(depth - 1), random_term(depth - 1)))

        def flatten_raw(t):
            # independent flattener: no cancellation at all
            if isinstance(t, Variable):
                return [1 if t.name == "x" else 2]
            if t.symbol == unit:
                return []
            if t.symbol == inv:
                return [-l for l in reversed(flatten_raw(t.args[0]))]
            return flatten_raw(t.args[0]) + flatten_raw(t.args[1])

        for _ in range(10_000):
            t = random_term(5)
            nf = normalize(group_theory, t)
            assert normalize(group_theory, nf) == nf
            raw = flatten_raw(t)
            assert _core.reduce_word(raw) == reduce_word_random_order(raw, rng)
            assert tuple(flatten_raw(nf)) == _core.reduce_word(raw)


def test_criterion_6_adjunction_bijection():
    rng = random.Random(CORPUS_SEED + 6)
    theories = theory_corpus(seed=CORPUS_SEED + 6, count=50, max_letters=3)
    with _Budget(6, "hom-set bijection on 50 seeded pairs", 30.0):
        for theory in theories:
            B = FiniteBooleanAlgebra(rng.randint(0, 3))
            report = check_adjunction(B, theory, seed=CORPUS_SEED)
            assert report.passed, (theory.name, B.atom_count, report.counterexamples[:2])
            expected = B.atom_count ** syn(theory).atom_count
            assert report.left_count == report.right_count == expected


def test_criterion_7_brain_audits(capsys):
    with _Budget(7, "neuron-network audits and negative control", 30.0):
        for name in ("brain_one.brain", "brain_two.brain", "brain_chain.brain"):
            code = cli_main(["brain", "check", str(FIXTURES / name)])
            captured = capsys.readouterr()
            assert code == 0, f"{name}: {captured.out}"
            report = json.loads(captured.out)
            assert all(v == "pass" for v in report["verdicts"].values())

        # composite-axon functoriality of propagation, exhaustively
        from catlogic.brain import NeuronState, load_brain, propagate

        chain = load_brain(fixture_text("brain_chain.brain"))
        a1, a2, a3 = (chain.axon(a) for a in ("a1", "a2", "a3"))
        for p in range(chain.neuron("n1").logic.atom_count):
            assert a3.push_map[p] == a2.push_map[a1.push_map[p]]
            trace = propagate(chain, [NeuronState("n1", p)], 2)
            assert trace.steps[0]["n3"] == trace.steps[1]["n3"] == a3.push_map[p]

        bad = str(FIXTURES / "brain_bad_composite.brain")
        code = cli_main(["brain", "check", bad])
        captured = capsys.readouterr()
        assert code == 1
        report = json.loads(captured.out)
        ids = [c["id"] for c in report["counterexamples"]]
        assert "composite:a3" in ids
        code = cli_main(["brain", "check", bad, "--replay", "composite:a3"])
        captured = capsys.readouterr()
        assert code == 1
        assert json.loads(captured.out)["reproduced"] is True


def test_criterion_8_presentation_robustness(group_theory, group_alt_theory):
    with _Budget(8, "alternative axiomatization model counts", 30.0):
        for size in (1, 2, 3):
            standard = enumerate_models(group_theory, size)
            alternative = enumerate_models(group_alt_theory, size)
            assert len(standard) == len(alternative) == size


def test_criterion_9_round_trip_and_report_determinism(capsys):
    corpus = theory_corpus(seed=CORPUS_SEED + 9, count=120, max_letters=4)
    with _Budget(9, "round-trips and byte-identical reports", 5.0):
        for theory in corpus:
            assert parse_theory(print_theory(theory)) == theory
        for name in ("group.thy", "group_alt.thy", "props.thy", "idempotent.thy"):
            for theory in parse_file(fixture_text(name)):
                assert parse_theory(print_theory(theory)) == theory

        outputs = []
        for _ in range(2):
            assert cli_main(["stone", str(FIXTURES / "props.thy"), "XOR_PAIR"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
