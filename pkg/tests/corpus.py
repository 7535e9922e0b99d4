"""Seeded random propositional theories for the property campaigns."""

import random

from catlogic.kernel import And, Atom, Fragment, Implies, Not, Or, RelationSymbol, Theory


def random_formula(rng: random.Random, relations, depth: int):
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.8:
            return Atom(rng.choice(relations))
        from catlogic.kernel import Bottom, Top

        return Top() if roll < 0.9 else Bottom()
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_formula(rng, relations, depth - 1))
    ctor = (And, Or, Implies)[kind - 1]
    return ctor(
        random_formula(rng, relations, depth - 1),
        random_formula(rng, relations, depth - 1),
    )


def random_prop_theory(rng: random.Random, max_letters: int = 4, name: str = "R") -> Theory:
    k = rng.randint(1, max_letters)
    relations = tuple(RelationSymbol(f"p{i}") for i in range(k))
    n_axioms = rng.randint(0, 3)
    axioms = tuple(random_formula(rng, relations, rng.randint(1, 3)) for _ in range(n_axioms))
    return Theory(name=name, fragment=Fragment.PROP, relations=relations, axioms=axioms)


def theory_corpus(seed: int, count: int, max_letters: int = 4) -> list[Theory]:
    rng = random.Random(seed)
    return [random_prop_theory(rng, max_letters, name=f"R{i}") for i in range(count)]
