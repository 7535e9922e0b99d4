"""The compiled kernels and the pure-Python twins must agree bit for bit."""

import random

import pytest

from catlogic._core import BACKEND, pure

native = pytest.importorskip(
    "catlogic._core._native", reason="compiled kernels not built"
)


def test_selected_backend_is_native_when_built():
    import os

    if not os.environ.get("CATLOGIC_PURE"):
        assert BACKEND == "native"


class TestReduceWord:
    def test_random_words_agree(self):
        rng = random.Random(101)
        letters = [s * g for g in (1, 2, 3) for s in (1, -1)]
        for _ in range(3000):
            word = [rng.choice(letters) for _ in range(rng.randint(0, 40))]
            assert pure.reduce_word(word) == native.reduce_word(word)

    def test_zero_rejected_by_both(self):
        for impl in (pure, native):
            with pytest.raises(ValueError):
                impl.reduce_word([1, 0, -1])


GROUP_AXIOMS = [
    (3, (0, 1, 2, -1, -1), (0, 1, -1, 2, -1)),
    (1, (0, -3, -1), (0,)),
    (1, (-3, 0, -1), (0,)),
    (1, (0, 0, -2, -1), (-3,)),
    (1, (0, -2, 0, -1), (-3,)),
]
GROUP_ARITIES = [2, 1, 0]


class TestTableKernels:
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_scan_agrees(self, n):
        assert pure.scan_tables(n, GROUP_ARITIES, GROUP_AXIOMS) == native.scan_tables(
            n, GROUP_ARITIES, GROUP_AXIOMS
        )

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_search_agrees_with_scan(self, n):
        searched = native.search_tables(n, GROUP_ARITIES, GROUP_AXIOMS)
        assert searched == pure.search_tables(n, GROUP_ARITIES, GROUP_AXIOMS)
        if n <= 3:
            assert searched == native.scan_tables(n, GROUP_ARITIES, GROUP_AXIOMS)

    def test_random_unary_theories(self):
        # axioms over a single unary symbol: f(f(x)) = f(x) style
        rng = random.Random(5)
        for _ in range(20):
            reps = rng.randint(1, 3)
            lhs = tuple([0] + [-1] * reps)
            rhs = tuple([0] + [-1] * rng.randint(0, reps))
            axioms = [(1, lhs, rhs)]
            for n in (1, 2, 3):
                assert pure.scan_tables(n, [1], axioms) == native.scan_tables(n, [1], axioms)
                assert pure.search_tables(n, [1], axioms) == native.search_tables(n, [1], axioms)


class TestHomKernels:
    def test_image_tables_agree(self):
        rng = random.Random(77)
        for _ in range(200):
            m = rng.randint(0, 7)
            k = rng.randint(0, 7)
            if m == 0 and k > 0:
                continue
            amap = tuple(rng.randrange(m) for _ in range(k))
            assert pure.hom_image_table(amap, m, k) == native.hom_image_table(amap, m, k)

    def test_check_accepts_real_homs_and_rejects_corrupted(self):
        rng = random.Random(78)
        for _ in range(200):
            m = rng.randint(1, 6)
            k = rng.randint(1, 6)
            amap = tuple(rng.randrange(m) for _ in range(k))
            img = pure.hom_image_table(amap, m, k)
            assert pure.check_hom_table(img, m, k)
            assert native.check_hom_table(img, m, k)
            bad = list(img)
            bad[rng.randrange(1, len(bad))] ^= 1 << rng.randrange(k)
            assert pure.check_hom_table(bad, m, k) == native.check_hom_table(bad, m, k)
