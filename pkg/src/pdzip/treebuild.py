"""Build a strict binary code tree from a distribution in linear time.

The construction assigns symbol i the first ceil(log2(2/p_i)) bits of the
binary expansion of S_i = p_i/2 + sum_{j<i} p_j.  Those codewords are
prefix-free, and contracting every one-child node of their trie yields a
strict binary tree whose leaf i sits at depth d_i with 2^{d_i} * p_i < 4.

Codewords are held as (value, length) integer pairs so that a codeword of
any length is one bigint, and the contraction works off longest-common-
prefix lengths of consecutive codewords.  This keeps the whole pipeline at
O(n) arithmetic operations instead of one operation per codeword bit,
which matters for skewed inputs whose total codeword length is quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import (
    DistributionError,
    ProbabilityDistribution,
    ceil_log2_ratio,
)


class ZeroProbabilityError(DistributionError):
    """A zero entry has no finite codeword; smooth the distribution first."""


class CodewordSetError(ValueError):
    """Codewords that are not prefix-free and strictly increasing."""


@dataclass(frozen=True)
class PrefixMidpoints:
    """S_i = p_i/2 + sum_{j<i} p_j for each i, strictly increasing in [0, 1)."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        prev = None
        for s in self.values:
            if not 0 <= s < 1:
                raise ValueError("midpoint outside [0, 1)")
            if prev is not None and s <= prev:
                raise ValueError("midpoints must be strictly increasing")
            prev = s

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Codeword:
    """A finite bit string, most significant bit first."""

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0 or self.value < 0 or self.value >> self.length:
            raise ValueError("codeword value does not fit its length")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.length - 1 - i)) & 1
                     for i in range(self.length))

    def to01(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __str__(self) -> str:
        return self.to01()


@dataclass(frozen=True)
class StrictTreeShape:
    """Left-to-right leaf depths of a strict binary tree.

    Validity means the sequence is realizable in this order by some strict
    binary tree, which forces the dyadic weights 2^{-d_i} to sum to exactly
    one.  The check below walks the tree the sequence describes.
    """

    leaf_depths: tuple[int, ...]

    def __post_init__(self) -> None:
        if not _is_strict_tree(self.leaf_depths):
            raise ValueError("leaf depths do not describe a strict binary tree")

    @property
    def n(self) -> int:
        return len(self.leaf_depths)


def _is_strict_tree(depths: Sequence[int]) -> bool:
    n = len(depths)
    if n == 0:
        return False
    # walk leaves left to right; `pending` holds depths of internal nodes
    # whose right subtree has not been visited yet
    pending: list[int] = []
    at = 0
    for i, d in enumerate(depths):
        if d < at:
            return False
        pending.extend(range(at, d))
        if i == n - 1:
            return not pending
        if not pending:
            return False
        at = pending.pop() + 1
    return False


def midpoints(dist: ProbabilityDistribution) -> PrefixMidpoints:
    """The in-order interval midpoints of a strictly positive distribution."""
    vals = []
    acc = Fraction(0)
    for i, p in enumerate(dist.entries):
        if p <= 0:
            raise ZeroProbabilityError(f"entry {i + 1} is zero")
        vals.append(acc + p / 2)
        acc += p
    return PrefixMidpoints(tuple(vals))


def codeword(midpoint: Fraction, prob: Fraction) -> Codeword:
    """The first ceil(log2(2/prob)) bits of midpoint's binary expansion."""
    if not 0 < prob <= 1:
        raise ValueError("probability must be in (0, 1]")
    if not 0 <= midpoint < 1:
        raise ValueError("midpoint must be in [0, 1)")
    length = ceil_log2_ratio(2 * prob.denominator, prob.numerator)
    value = (midpoint.numerator << length) // midpoint.denominator
    return Codeword(value, length)


class _Node:
    __slots__ = ("left", "right")

    def __init__(self) -> None:
        self.left = None
        self.right = None


def contract_to_strict(codewords: Sequence[Codeword]) -> StrictTreeShape:
    """Depths of the codeword trie after removing every one-child node.

    The codewords must be strictly increasing and prefix-free.  Consecutive
    codewords meet at a branching node whose depth is their common prefix
    length; stitching those branching nodes together with a stack builds
    the contracted tree directly, in O(n) node operations.
    """
    n = len(codewords)
    if n == 0:
        raise CodewordSetError("no codewords")
    if n == 1:
        return StrictTreeShape((0,))

    root = _build_contracted(codewords)
    depths: list[int] = []
    stack = [(root, 0)]
    while stack:
        node, d = stack.pop()
        if node.left is None:
            depths.append(d)
        else:
            stack.append((node.right, d + 1))
            stack.append((node.left, d + 1))
    return StrictTreeShape(tuple(depths))


def _build_contracted(codewords: Sequence[Codeword]) -> _Node:
    # stack of (node, prefix length) along the rightmost path, shallow first
    stack: list[tuple[_Node, int]] = [(_Node(), codewords[0].length)]
    prev = codewords[0]
    for cw in codewords[1:]:
        lcp = _lcp(prev, cw)
        carry = None
        while stack and stack[-1][1] > lcp:
            node, _ = stack.pop()
            if carry is not None:
                node.right = carry
            carry = node
        if stack and stack[-1][1] == lcp:
            # a third subtree would hang off one binary node
            raise CodewordSetError("codewords are not prefix-free")
        branch = _Node()
        branch.left = carry
        stack.append((branch, lcp))
        stack.append((_Node(), cw.length))
        prev = cw
    carry = None
    while stack:
        node, _ = stack.pop()
        if carry is not None:
            node.right = carry
        carry = node
    return carry


def _lcp(a: Codeword, b: Codeword) -> int:
    """Common prefix length of two codewords; validates order and freeness."""
    m = min(a.length, b.length)
    x = a.value >> (a.length - m)
    y = b.value >> (b.length - m)
    diff = x ^ y
    if diff == 0:
        raise CodewordSetError("one codeword is a prefix of another")
    lcp = m - diff.bit_length()
    # sortedness: at the first differing bit the earlier word must hold 0
    if not (y >> (m - lcp - 1)) & 1:
        raise CodewordSetError("codewords are not strictly increasing")
    return lcp


def code_tree(dist: ProbabilityDistribution) -> StrictTreeShape:
    """Strict code tree for a strictly positive distribution.

    Composition of midpoints, codeword extraction, and contraction; the
    resulting leaf depths satisfy 2^{d_i} * p_i < 4.  A single-symbol
    distribution maps straight to the one-leaf tree.
    """
    if dist.n == 1:
        if dist.entries[0] <= 0:
            raise ZeroProbabilityError("entry 1 is zero")
        return StrictTreeShape((0,))
    mids = midpoints(dist)
    words = [codeword(s, p) for s, p in zip(mids.values, dist.entries)]
    return contract_to_strict(words)
