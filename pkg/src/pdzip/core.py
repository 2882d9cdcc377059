"""Exact probability distributions and information measures.

Probabilities are exact rationals throughout the package; the only values
carried in floating point are logarithmic measures (entropy, divergence)
and the irrational per-symbol values produced by the sparse codec.  All
logarithms are base 2 and results are in bits.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


class DistributionError(ValueError):
    """Raised for inputs that do not describe a probability distribution."""


class InfiniteDivergenceError(ValueError):
    """Raised when D(P||Q) is infinite because some q_i = 0 with p_i > 0."""


@dataclass(frozen=True)
class ProbabilityDistribution:
    """A distribution over symbols 1..n with exact rational entries.

    Entries are non-negative Fractions summing to exactly 1.
    """

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) == 0:
            raise DistributionError("a distribution needs at least one entry")
        total = Fraction(0)
        for p in self.entries:
            if not isinstance(p, Fraction):
                raise DistributionError("entries must be exact rationals")
            if p < 0:
                raise DistributionError("negative probability")
            total += p
        if total != 1:
            raise DistributionError(f"probabilities sum to {total}, not 1")

    @classmethod
    def from_weights(cls, weights: Sequence[Union[int, Fraction]]) -> "ProbabilityDistribution":
        """Normalize non-negative weights by their exact sum."""
        ws = [Fraction(w) for w in weights]
        if not ws:
            raise DistributionError("no weights given")
        for w in ws:
            if w < 0:
                raise DistributionError("negative weight")
        total = sum(ws)
        if total == 0:
            raise DistributionError("all weights are zero")
        return cls(tuple(w / total for w in ws))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def strictly_positive(self) -> bool:
        return all(p > 0 for p in self.entries)


# a numeral is a plain decimal or integer token; no signs, no exponents
_NUMERAL = re.compile(r"^(\d+(\.\d*)?|\.\d+)$")


def parse_distribution(text: str) -> ProbabilityDistribution:
    """Parse the one-weight-per-line text format.

    Lines that are blank or start with '#' are ignored.  Each remaining
    line holds one decimal numeral or integer count; the weights are
    normalized by their exact sum.
    """
    weights: list[Fraction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("-"):
            raise DistributionError(f"line {lineno}: negative value {line!r}")
        if not _NUMERAL.match(line):
            raise DistributionError(f"line {lineno}: unparsable numeral {line!r}")
        weights.append(Fraction(line))
    if not weights:
        raise DistributionError("no weights in input")
    total = sum(weights)
    if total == 0:
        raise DistributionError("weights sum to zero")
    return ProbabilityDistribution(tuple(w / total for w in weights))


DistributionLike = Union[ProbabilityDistribution, Sequence[Union[Fraction, float, int]]]


def _values(dist: DistributionLike) -> Sequence:
    if isinstance(dist, ProbabilityDistribution):
        return dist.entries
    return dist


def log2_fraction(x: Fraction) -> float:
    """log2 of a positive rational, stable for huge numerators/denominators."""
    num, den = x.numerator, x.denominator
    if num <= 0:
        raise ValueError("log2 of a non-positive value")
    # shift so the ratio lands in [1/2, 2); the float division is then exact
    # to one ulp regardless of the operand sizes
    shift = num.bit_length() - den.bit_length()
    if shift > 0:
        den <<= shift
    elif shift < 0:
        num <<= -shift
    return shift + math.log2(num / den)


def _log2_value(q) -> float:
    if isinstance(q, Fraction):
        return log2_fraction(q)
    if isinstance(q, int):
        return log2_fraction(Fraction(q))
    return math.log2(q)


def entropy(dist: DistributionLike) -> float:
    """H(P) = sum p_i log2(1/p_i) in bits, with 0 log 0 = 0."""
    total = 0.0
    for p in _values(dist):
        if p == 0:
            continue
        pf = float(p)
        if pf == 0.0:
            # value too small for float; its entropy term underflows too
            continue
        total -= pf * _log2_value(p)
    return total


def relative_entropy(p_dist: DistributionLike, q_dist: DistributionLike) -> float:
    """D(P||Q) = sum p_i log2(p_i/q_i) in bits, with 0 log 0 = 0.

    Raises InfiniteDivergenceError when some q_i = 0 has p_i > 0.
    """
    ps = _values(p_dist)
    qs = _values(q_dist)
    if len(ps) != len(qs):
        raise DistributionError("distributions have different lengths")
    total = 0.0
    for p, q in zip(ps, qs):
        if p == 0:
            continue
        if q == 0:
            raise InfiniteDivergenceError("q_i = 0 with p_i > 0")
        pf = float(p)
        if pf == 0.0:
            continue
        if isinstance(p, Fraction) and isinstance(q, (Fraction, int)):
            total += pf * log2_fraction(p / Fraction(q))
        else:
            total += pf * (_log2_value(p) - _log2_value(q))
    return total


def max_ratio(p_dist: DistributionLike, q_dist: DistributionLike):
    """max over {i : p_i > 0} of p_i/q_i.

    Exact (a Fraction) when both sides are rational; a float when the
    approximation side carries floats.  Raises InfiniteDivergenceError
    when some q_i = 0 has p_i > 0.
    """
    ps = _values(p_dist)
    qs = _values(q_dist)
    if len(ps) != len(qs):
        raise DistributionError("distributions have different lengths")
    exact = all(isinstance(q, (Fraction, int)) for q in qs) and \
        all(isinstance(p, (Fraction, int)) for p in ps)
    if exact:
        best_num = 0
        best_den = 1
        for p, q in zip(ps, qs):
            p = Fraction(p)
            if p == 0:
                continue
            q = Fraction(q)
            if q == 0:
                raise InfiniteDivergenceError("q_i = 0 with p_i > 0")
            num = p.numerator * q.denominator
            den = p.denominator * q.numerator
            if num * best_den > best_num * den:
                best_num, best_den = num, den
        if best_num == 0:
            raise DistributionError("no positive entries")
        return Fraction(best_num, best_den)
    best = 0.0
    seen = False
    for p, q in zip(ps, qs):
        if p == 0:
            continue
        if q == 0:
            raise InfiniteDivergenceError("q_i = 0 with p_i > 0")
        seen = True
        r = float(p) / float(q)
        if r > best:
            best = r
    if not seen:
        raise DistributionError("no positive entries")
    return best


def ceil_log2_ratio(a: int, b: int) -> int:
    """ceil(log2(a/b)) for positive integers, exactly."""
    if a <= 0 or b <= 0:
        raise ValueError("ratio must be positive")
    e = a.bit_length() - b.bit_length() - 1
    # 2^e <= a/b is now guaranteed; raise e until 2^e >= a/b
    while (b << max(e, 0)) < (a << max(-e, 0)):
        e += 1
    return e
