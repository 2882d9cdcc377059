"""On-disk container for compressed distributions.

Layout: 4-byte magic "PDZ1", 1-byte method tag, 8-byte little-endian n,
method parameters (refine: 2-byte k; sparse forms: 8-byte c numerator,
8-byte c denominator, 8-byte t), 8-byte payload bit length, then the
payload packed most-significant-bit-first and zero-padded to a byte
boundary.  The bit length must equal the method's exact formula, so a
size mismatch is reported as corruption.  Header bytes are deliberately
excluded from the size guarantees the codecs make about their payloads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bits import Bits
from .refine import RefinePayload
from .sparse import SparsePayload, SparseQueryTable, index_width, rank_width
from .treecode import TreePayload

MAGIC = b"PDZ1"

METHOD_TREE = 0x01
METHOD_REFINE = 0x02
METHOD_SPARSE = 0x03
METHOD_SPARSE_QUERYABLE = 0x04

METHOD_NAMES = {
    METHOD_TREE: "tree",
    METHOD_REFINE: "refine",
    METHOD_SPARSE: "sparse",
    METHOD_SPARSE_QUERYABLE: "sparse-queryable",
}

_U64_MAX = (1 << 64) - 1


class ContainerFormatError(ValueError):
    """The byte stream is not a valid container."""


def expected_payload_bits(method: int, n: int, k: Optional[int] = None,
                          c: Optional[Fraction] = None,
                          t: Optional[int] = None) -> int:
    if method == METHOD_TREE:
        return 2 * n - 2
    if method == METHOD_REFINE:
        return k * n - 2
    if method == METHOD_SPARSE:
        return t * index_width(n)
    if method == METHOD_SPARSE_QUERYABLE:
        return t * (index_width(n) + rank_width(n, c))
    raise ContainerFormatError(f"unknown method tag {method:#x}")


@dataclass(frozen=True)
class Container:
    method: int
    n: int
    payload: Bits
    k: Optional[int] = None
    c: Optional[Fraction] = None
    t: Optional[int] = None

    def __post_init__(self) -> None:
        if self.method not in METHOD_NAMES:
            raise ContainerFormatError(f"unknown method tag {self.method:#x}")
        if not 1 <= self.n <= _U64_MAX:
            raise ContainerFormatError("n out of range")
        if self.method == METHOD_REFINE:
            if self.k is None or not 2 <= self.k <= 0xFFFF:
                raise ContainerFormatError("refine container needs 2 <= k < 2^16")
            if self.c is not None or self.t is not None:
                raise ContainerFormatError("refine container takes only k")
        elif self.method in (METHOD_SPARSE, METHOD_SPARSE_QUERYABLE):
            if self.c is None or self.t is None:
                raise ContainerFormatError("sparse container needs c and t")
            if self.k is not None:
                raise ContainerFormatError("sparse container takes no k")
            if self.c < 1:
                raise ContainerFormatError("c must be at least 1")
            if not (1 <= self.c.numerator <= _U64_MAX
                    and 1 <= self.c.denominator <= _U64_MAX):
                raise ContainerFormatError("c does not fit the header fields")
            if not 0 <= self.t <= self.n:
                raise ContainerFormatError("t out of range")
        else:
            if self.k is not None or self.c is not None or self.t is not None:
                raise ContainerFormatError("tree container takes no parameters")
        want = expected_payload_bits(self.method, self.n, self.k, self.c, self.t)
        if len(self.payload) != want:
            raise ContainerFormatError(
                f"payload is {len(self.payload)} bits, method requires {want}")

    @property
    def method_name(self) -> str:
        return METHOD_NAMES[self.method]

    def pack(self) -> bytes:
        out = bytearray(MAGIC)
        out.append(self.method)
        out += self.n.to_bytes(8, "little")
        if self.method == METHOD_REFINE:
            out += self.k.to_bytes(2, "little")
        elif self.method in (METHOD_SPARSE, METHOD_SPARSE_QUERYABLE):
            out += self.c.numerator.to_bytes(8, "little")
            out += self.c.denominator.to_bytes(8, "little")
            out += self.t.to_bytes(8, "little")
        out += len(self.payload).to_bytes(8, "little")
        out += self.payload.packed_bytes()
        return bytes(out)


def unpack(data: bytes) -> Container:
    view = memoryview(data)
    if len(view) < 4 or bytes(view[:4]) != MAGIC:
        raise ContainerFormatError("bad magic; not a container file")
    off = 4

    def take(nbytes: int) -> memoryview:
        nonlocal off
        if off + nbytes > len(view):
            raise ContainerFormatError("truncated container")
        chunk = view[off:off + nbytes]
        off += nbytes
        return chunk

    method = take(1)[0]
    if method not in METHOD_NAMES:
        raise ContainerFormatError(f"unknown method tag {method:#x}")
    n = int.from_bytes(take(8), "little")
    if n < 1:
        raise ContainerFormatError("n must be at least 1")
    k = None
    c = None
    t = None
    if method == METHOD_REFINE:
        k = int.from_bytes(take(2), "little")
        if k < 2:
            raise ContainerFormatError("k must be at least 2")
    elif method in (METHOD_SPARSE, METHOD_SPARSE_QUERYABLE):
        c_num = int.from_bytes(take(8), "little")
        c_den = int.from_bytes(take(8), "little")
        if c_den == 0:
            raise ContainerFormatError("c denominator is zero")
        c = Fraction(c_num, c_den)
        if c < 1:
            raise ContainerFormatError("c must be at least 1")
        t = int.from_bytes(take(8), "little")
        if t > n:
            raise ContainerFormatError("t exceeds n")
    bit_length = int.from_bytes(take(8), "little")
    want = expected_payload_bits(method, n, k, c, t)
    if bit_length != want:
        raise ContainerFormatError(
            f"payload bit length {bit_length} does not match the method "
            f"formula {want}; container is corrupt")
    payload_bytes = take((bit_length + 7) // 8)
    if off != len(view):
        raise ContainerFormatError("trailing bytes after the payload")
    try:
        payload = Bits(bytes(payload_bytes), bit_length)
    except ValueError as exc:
        raise ContainerFormatError(f"payload padding: {exc}") from None
    return Container(method, n, payload, k=k, c=c, t=t)


# ----------------------------------------------------------------------
# bridges between payload objects and containers

def container_for_tree(payload: TreePayload) -> Container:
    return Container(METHOD_TREE, payload.n, payload.bits)


def container_for_refined(payload: RefinePayload) -> Container:
    return Container(METHOD_REFINE, payload.n, payload.to_bits(), k=payload.k)


def container_for_sparse(payload: SparsePayload) -> Container:
    return Container(METHOD_SPARSE, payload.n, payload.to_bits(),
                     c=payload.c, t=payload.t)


def container_for_query_table(table: SparseQueryTable) -> Container:
    return Container(METHOD_SPARSE_QUERYABLE, table.n, table.to_bits(),
                     c=table.c, t=table.t)


def tree_payload(container: Container) -> TreePayload:
    _expect(container, METHOD_TREE)
    return TreePayload(container.payload, container.n)


def refine_payload(container: Container) -> RefinePayload:
    _expect(container, METHOD_REFINE)
    return RefinePayload.from_bits(container.payload, container.n, container.k)


def sparse_payload(container: Container) -> SparsePayload:
    _expect(container, METHOD_SPARSE)
    return SparsePayload.from_bits(container.payload, container.n,
                                   container.c, container.t)


def query_table(container: Container) -> SparseQueryTable:
    _expect(container, METHOD_SPARSE_QUERYABLE)
    return SparseQueryTable.from_bits(container.payload, container.n,
                                      container.c, container.t)


def _expect(container: Container, method: int) -> None:
    if container.method != method:
        raise ContainerFormatError(
            f"container holds method {container.method_name}, "
            f"not {METHOD_NAMES[method]}")
