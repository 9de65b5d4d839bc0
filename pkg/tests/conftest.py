import random
from fractions import Fraction
from pathlib import Path

import pytest

from infranil.document import parse_input
from infranil.exactalg import Poly, RationalMatrix

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def corpus_docs(include_nonhyperbolic=False):
    paths = sorted(CORPUS.glob("*.json"))
    if include_nonhyperbolic:
        paths += sorted((CORPUS / "nonhyperbolic").glob("*.json"))
    return {p.stem: parse_input(p.read_bytes(), p.stem) for p in paths}


def random_matrix(rng: random.Random, n: int, lo=-5, hi=5, denominators=(1, 1, 2, 3)):
    return RationalMatrix([[Fraction(rng.randint(lo, hi), rng.choice(denominators)) for _ in range(n)]
                           for _ in range(n)])


def random_unit_corpus():
    """Seeded 100 integer polynomials of degree <= 8, about a third with a cyclotomic factor."""
    rng = random.Random(20240611)
    cyclo = [Poly([-1, 1]), Poly([1, 1]), Poly([1, 0, 1]), Poly([1, 1, 1]), Poly([1, -1, 1]),
             Poly([1, 1, 1, 1, 1]), Poly([1, 0, -1, 0, 1])]
    polys = []
    while len(polys) < 100:
        deg = rng.randint(1, 8)
        if rng.random() < 0.35:
            c = rng.choice(cyclo)
            if c.degree > deg:
                continue
            rest = Poly([rng.randint(-6, 6) for _ in range(deg - c.degree)] + [1])
            p = c * rest
        else:
            p = Poly([rng.randint(-6, 6) for _ in range(deg)] + [rng.choice([-3, -1, 1, 2])])
        if p.is_zero() or p.degree < 1:
            continue
        polys.append(p)
    return polys


def clear_caches():
    """Drop memoized powers, Nielsen numbers and root enclosures (for cold timings)."""
    from infranil import nielsen
    from infranil.exactalg import roots
    nielsen._nielsen.cache_clear()
    nielsen._powers.clear()
    roots._isolate_cached.cache_clear()


@pytest.fixture(scope="session")
def corpus():
    return corpus_docs()


@pytest.fixture(scope="session")
def nonhyperbolic_corpus():
    return {p.stem: parse_input(p.read_bytes(), p.stem)
            for p in sorted((CORPUS / "nonhyperbolic").glob("*.json"))}
