"""Shared corpora for the test suite.

Everything is seeded so the suite is reproducible run to run.
"""

import random
import sys
from fractions import Fraction

import pytest

from pdzip.core import ProbabilityDistribution


def pytest_terminal_summary(terminalreporter):
    # acceptance tests queue one line each; echo them past capture
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def near_uniform_weights(rng, n):
    return [rng.randint(900, 1100) for _ in range(n)]


def geometric_weights(rng, n):
    num, den = rng.choice([(2, 1), (3, 2), (3, 1), (5, 4), (5, 2)])
    r = Fraction(num, den)
    weights = [r ** i for i in range(n)]
    if rng.random() < 0.5:
        weights.reverse()
    return weights


def zipf_weights(rng, n):
    a = rng.choice([1, 2])
    return [Fraction(1, i ** a) for i in range(1, n + 1)]


def random_int_weights(rng, n):
    return [rng.randint(1, 10 ** 6) for _ in range(n)]


_FAMILIES = (near_uniform_weights, geometric_weights, zipf_weights,
             random_int_weights)


def random_distribution(rng, n):
    family = rng.choice(_FAMILIES)
    return ProbabilityDistribution.from_weights(family(rng, n))


def corpus_size(rng, hi=512):
    # log-uniform over 1..hi so small and large n both appear
    import math
    return max(1, min(hi, int(2 ** rng.uniform(0.0, math.log2(hi) + 0.01))))


@pytest.fixture(scope="session")
def main_corpus():
    """1000 strictly positive distributions, n in 1..512, mixed shapes."""
    rng = random.Random(0x5EED01)
    out = []
    for n in (1, 2, 3, 4, 7, 16, 100, 511, 512):
        out.append(ProbabilityDistribution.from_weights([1] * n))
    while len(out) < 1000:
        out.append(random_distribution(rng, corpus_size(rng)))
    return out


@pytest.fixture(scope="session")
def zero_corpus():
    """Distributions that contain zero-probability entries."""
    rng = random.Random(0x5EED02)
    out = [ProbabilityDistribution.from_weights([0, 1]),
           ProbabilityDistribution.from_weights([0] * 7 + [1]),
           ProbabilityDistribution.from_weights([1] + [0] * 255)]
    while len(out) < 120:
        n = corpus_size(rng)
        if n == 1:
            continue
        family = rng.choice(_FAMILIES)
        weights = [Fraction(w) for w in family(rng, n)]
        kill = rng.randint(1, max(1, (6 * n) // 10))
        for j in rng.sample(range(n), min(kill, n - 1)):
            weights[j] = Fraction(0)
        if all(w == 0 for w in weights):
            weights[0] = Fraction(1)
        out.append(ProbabilityDistribution.from_weights(weights))
    return out


def random_tree_depths(rng, n, balanced=False):
    """Leaf depths of a random strict binary tree, left to right."""
    depths = []
    stack = [(n, 0)]
    while stack:
        leaves, d = stack.pop()
        if leaves == 1:
            depths.append(d)
            continue
        if balanced:
            lo = max(1, leaves // 4)
            hi = max(lo, (3 * leaves) // 4)
            left = rng.randint(lo, hi)
        else:
            left = rng.randint(1, leaves - 1)
        stack.append((leaves - left, d + 1))
        stack.append((left, d + 1))
    return tuple(depths)
