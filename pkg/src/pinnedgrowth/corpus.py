"""Built-in input corpora for the verification suites."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .exact import GaussianRational
from .sets import FiniteScalarSet, geometric_set, interval_set, random_gaussian_set, random_set

RANDOM_SEEDS = range(50)
RANDOM_BOUND = 20
GAUSSIAN_SEEDS = range(10)
GAUSSIAN_BOUND = 3


class CorpusEntry(NamedTuple):
    label: str
    seed: int | None
    A: FiniteScalarSet


def random_corpus() -> list:
    """50 seeded integer sets with 2 <= |A| <= 8."""
    return [
        CorpusEntry(f"random(n={2 + seed % 7})", seed, random_set(seed, 2 + seed % 7, RANDOM_BOUND))
        for seed in RANDOM_SEEDS
    ]


def structured_corpus() -> list:
    entries = [CorpusEntry(f"interval({n})", None, interval_set(n)) for n in range(2, 9)]
    entries += [CorpusEntry(f"geometric(2,{n})", None, geometric_set(2, n)) for n in range(2, 7)]
    entries += [
        CorpusEntry("geometric(1/2,4)", None, geometric_set(Fraction(1, 2), 4)),
        CorpusEntry("geometric(-2,5)", None, geometric_set(-2, 5)),
        CorpusEntry("geometric(3,4)", None, geometric_set(3, 4)),
        CorpusEntry("{0,1}", None, FiniteScalarSet([0, 1])),
        CorpusEntry("{0,1,2}", None, FiniteScalarSet([0, 1, 2])),
        CorpusEntry("{1,2,4}", None, FiniteScalarSet([1, 2, 4])),
        CorpusEntry("rationals", None, FiniteScalarSet(
            [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4), Fraction(5)])),
    ]
    return entries


def default_corpus() -> list:
    return structured_corpus() + random_corpus()


def gaussian_corpus() -> list:
    """10 seeded Gaussian-integer sets with 2 <= |A| <= 6, plus two fixed ones."""
    entries = [
        CorpusEntry(f"gaussian-random(n={2 + seed % 5})", seed,
                    random_gaussian_set(seed, 2 + seed % 5, GAUSSIAN_BOUND))
        for seed in GAUSSIAN_SEEDS
    ]
    entries.append(CorpusEntry("{0,1,i,1+i}", None, FiniteScalarSet(
        [GaussianRational(0), GaussianRational(1), GaussianRational(0, 1), GaussianRational(1, 1)])))
    entries.append(CorpusEntry("{1/2+i,2,-i/3}", None, FiniteScalarSet(
        [GaussianRational(Fraction(1, 2), 1), GaussianRational(2), GaussianRational(0, Fraction(-1, 3))])))
    return entries
