import random
from fractions import Fraction

import pytest

from pdzip.bits import Bits
from pdzip.container import (
    MAGIC,
    METHOD_REFINE,
    METHOD_SPARSE,
    METHOD_SPARSE_QUERYABLE,
    METHOD_TREE,
    Container,
    ContainerFormatError,
    container_for_query_table,
    container_for_refined,
    container_for_sparse,
    container_for_tree,
    expected_payload_bits,
    query_table,
    refine_payload,
    sparse_payload,
    tree_payload,
    unpack,
)
from pdzip.core import ProbabilityDistribution
from pdzip.refine import compress_refined
from pdzip.sparse import build_query_table, select_heavy
from pdzip.treecode import compress_tree
from conftest import random_distribution


def dist(*weights):
    return ProbabilityDistribution.from_weights([Fraction(w) for w in weights])


class TestExpectedBits:
    def test_formulas(self):
        assert expected_payload_bits(METHOD_TREE, 4) == 6
        assert expected_payload_bits(METHOD_REFINE, 10, k=3) == 28
        assert expected_payload_bits(METHOD_SPARSE, 16, c=Fraction(1),
                                     t=2) == 10
        assert expected_payload_bits(METHOD_SPARSE_QUERYABLE, 16,
                                     c=Fraction(1), t=2) == 16


class TestPackUnpack:
    def test_tree_round_trip(self):
        payload = compress_tree(dist(1, 1, 1, 1))
        box = container_for_tree(payload)
        data = box.pack()
        assert data[:4] == MAGIC
        again = unpack(data)
        assert again == box
        assert tree_payload(again) == payload

    def test_refine_round_trip(self):
        payload = compress_refined(dist(7, 3), 4)
        box = container_for_refined(payload)
        again = unpack(box.pack())
        assert refine_payload(again) == payload
        assert again.k == 4

    def test_sparse_round_trip(self):
        payload = select_heavy(dist(13, 1, 1, 1), Fraction(1))
        box = container_for_sparse(payload)
        again = unpack(box.pack())
        assert sparse_payload(again) == payload
        assert again.c == Fraction(1)
        assert again.t == payload.t

    def test_query_table_round_trip(self):
        table = build_query_table(select_heavy(dist(13, 1, 1, 1),
                                               Fraction(1)))
        box = container_for_query_table(table)
        again = unpack(box.pack())
        assert query_table(again) == table

    def test_random_round_trips(self):
        rng = random.Random(163)
        for _ in range(30):
            p = random_distribution(rng, rng.randint(1, 80))
            boxes = [container_for_tree(compress_tree(p))]
            if p.strictly_positive():
                boxes.append(container_for_refined(
                    compress_refined(p, rng.randint(2, 6))))
            c = Fraction(rng.randint(1, 3))
            boxes.append(container_for_sparse(select_heavy(p, c)))
            boxes.append(container_for_query_table(
                build_query_table(select_heavy(p, c))))
            for box in boxes:
                assert unpack(box.pack()) == box

    def test_method_mismatch_on_extract(self):
        box = container_for_tree(compress_tree(dist(1, 1)))
        with pytest.raises(ContainerFormatError, match="method"):
            refine_payload(box)


class TestRejects:
    def make(self):
        return container_for_tree(compress_tree(dist(1, 1, 1, 1))).pack()

    def test_bad_magic(self):
        data = bytearray(self.make())
        data[0] ^= 0xFF
        with pytest.raises(ContainerFormatError, match="magic"):
            unpack(bytes(data))

    def test_truncated(self):
        data = self.make()
        for cut in (0, 3):
            with pytest.raises(ContainerFormatError, match="magic"):
                unpack(data[:cut])
        for cut in (4, 5, 12, len(data) - 1):
            with pytest.raises(ContainerFormatError, match="truncated"):
                unpack(data[:cut])

    def test_trailing_bytes(self):
        with pytest.raises(ContainerFormatError, match="trailing"):
            unpack(self.make() + b"\x00")

    def test_unknown_method(self):
        data = bytearray(self.make())
        data[4] = 0x7F
        with pytest.raises(ContainerFormatError, match="method"):
            unpack(bytes(data))

    def test_wrong_bit_length(self):
        data = bytearray(self.make())
        # payload_bit_length field sits after magic+method+n
        at = 4 + 1 + 8
        data[at] ^= 0x01
        with pytest.raises(ContainerFormatError):
            unpack(bytes(data))

    def test_nonzero_padding(self):
        data = bytearray(self.make())
        data[-1] |= 0x01  # uniform-4 payload is 6 bits, pad is 2 bits
        with pytest.raises(ContainerFormatError, match="padding"):
            unpack(bytes(data))

    def test_zero_n(self):
        data = bytearray(self.make())
        for i in range(5, 13):
            data[i] = 0
        with pytest.raises(ContainerFormatError):
            unpack(bytes(data))

    def test_bad_refine_k(self):
        payload = compress_refined(dist(7, 3), 3)
        data = bytearray(container_for_refined(payload).pack())
        data[13] = 1  # k field, little-endian low byte
        data[14] = 0
        with pytest.raises(ContainerFormatError):
            unpack(bytes(data))

    def test_bad_sparse_fields(self):
        payload = select_heavy(dist(13, 1, 1, 1), Fraction(1))
        good = container_for_sparse(payload).pack()
        # c_den = 0
        data = bytearray(good)
        for i in range(21, 29):
            data[i] = 0
        with pytest.raises(ContainerFormatError):
            unpack(bytes(data))
        # t > n
        data = bytearray(good)
        data[29] = 0xFF
        with pytest.raises(ContainerFormatError):
            unpack(bytes(data))


class TestConstructorChecks:
    def test_payload_length_must_match(self):
        with pytest.raises(ContainerFormatError):
            Container(METHOD_TREE, 4, Bits.from_string("10"))

    def test_tree_takes_no_params(self):
        with pytest.raises(ContainerFormatError):
            Container(METHOD_TREE, 2, Bits.from_string("10"), k=3)

    def test_refine_needs_k(self):
        with pytest.raises(ContainerFormatError):
            Container(METHOD_REFINE, 2, Bits.from_string("1000"))

    def test_sparse_needs_c_and_t(self):
        with pytest.raises(ContainerFormatError):
            Container(METHOD_SPARSE, 4, Bits.empty())

    def test_method_names(self):
        box = container_for_tree(compress_tree(dist(1, 1)))
        assert box.method_name == "tree"
