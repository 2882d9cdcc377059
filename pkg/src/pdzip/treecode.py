"""Serialize strict binary trees and read back their dyadic distributions.

A strict binary tree with n leaves has 2n-1 nodes.  Writing 1 for each
internal node and 0 for each leaf in preorder gives a 2n-1 bit string
whose final bit is always 0, so only the first 2n-2 bits are stored.  The
leaf depths d_i of such a tree satisfy sum 2^{-d_i} = 1 exactly, so the
tree itself encodes the distribution q_i = 2^{-d_i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bits import Bits
from .core import ProbabilityDistribution
from .treebuild import StrictTreeShape, code_tree


class MalformedPayloadError(ValueError):
    """Payload bits do not describe a strict binary tree."""


@dataclass(frozen=True)
class TreePayload:
    """The stored form of a strict tree: 2n-2 preorder node-kind bits."""

    bits: Bits
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise MalformedPayloadError("leaf count must be at least 1")
        if len(self.bits) != 2 * self.n - 2:
            raise MalformedPayloadError(
                f"expected {2 * self.n - 2} bits for n={self.n}, "
                f"got {len(self.bits)}")


@dataclass(frozen=True)
class DyadicDistribution:
    """The distribution 2^{-d_i} implied by strict-tree leaf depths."""

    depth_exponents: tuple[int, ...]

    def probabilities(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1, 1 << d) for d in self.depth_exponents)

    def to_distribution(self) -> ProbabilityDistribution:
        return ProbabilityDistribution(self.probabilities())


def encode_tree(shape: StrictTreeShape) -> TreePayload:
    """Preorder node-kind bits of the tree, with the forced final 0 dropped."""
    out: list[int] = []
    pending: list[int] = []
    at = 0
    for d in shape.leaf_depths:
        out.extend([1] * (d - at))
        out.append(0)
        pending.extend(range(at, d))
        at = pending.pop() + 1 if pending else 0
    out.pop()  # the last leaf bit is implied
    return TreePayload(Bits.from_iterable(out), shape.n)


def decode_tree(payload: TreePayload) -> StrictTreeShape:
    """Rebuild leaf depths from payload bits.

    The bit string plus its implied trailing 0 must walk a strict tree
    exactly: a leaf may only close the last pending subtree, and pending
    subtrees must all be closed when the bits run out.
    """
    if len(payload.bits) % 2 != 0:
        raise MalformedPayloadError("payload bit length must be even")
    depths: list[int] = []
    pending: list[int] = []
    at = 0
    exhausted = False
    for b in payload.bits:
        if exhausted:
            raise MalformedPayloadError("bits continue after the tree closed")
        if b:
            pending.append(at + 1)
            at += 1
        else:
            depths.append(at)
            if pending:
                at = pending.pop()
            else:
                exhausted = True
    if exhausted:
        raise MalformedPayloadError("tree closed before the implied final leaf")
    # implied final leaf
    depths.append(at)
    if pending:
        raise MalformedPayloadError("bits ran out before the tree closed")
    if len(depths) != payload.n:
        raise MalformedPayloadError(
            f"decoded {len(depths)} leaves, expected {payload.n}")
    return StrictTreeShape(tuple(depths))


def implied_distribution(shape: StrictTreeShape) -> DyadicDistribution:
    return DyadicDistribution(shape.leaf_depths)


def compress_tree(dist: ProbabilityDistribution) -> TreePayload:
    """Tree-method compression: 2n-2 bits, max_i p_i/q_i < 4, D(P||Q) < 2."""
    return encode_tree(code_tree(dist))
