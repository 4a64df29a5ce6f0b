"""graph6 codec: round trips, known codes, strict error reporting."""

from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitop import (
    DigitalImage,
    Graph6Error,
    cycle_image,
    graph6_decode,
    graph6_encode,
)

from .conftest import edges_of, random_connected_rows


def _random_image(rng, n):
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.5:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return DigitalImage(n, tuple(rows))


@pytest.mark.parametrize(
    "code,n,edges",
    [
        ("@", 1, set()),
        ("A?", 2, set()),
        ("A_", 2, {(0, 1)}),
        ("Bw", 3, {(0, 1), (0, 2), (1, 2)}),
        ("Dhc", 5, {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}),
    ],
    ids=["point", "two-isolated", "edge", "triangle", "five-cycle"],
)
def test_known_codes(code, n, edges):
    image = graph6_decode(code)
    assert image.n == n
    assert edges_of(image.rows) == edges
    assert graph6_encode(image) == code


def test_five_cycle_is_dhc():
    assert graph6_encode(cycle_image(5)) == "Dhc"


def test_header_accepted():
    assert graph6_decode(">>graph6<<Bw").n == 3


@given(st.integers(1, 20), st.randoms(use_true_random=False))
def test_round_trip(n, rand):
    image = _random_image(rand, n)
    assert graph6_decode(graph6_encode(image)) == image


@given(st.integers(2, 20), st.randoms(use_true_random=False))
def test_agrees_with_networkx(n, rand):
    image = _random_image(rand, n)
    code = graph6_encode(image)
    their = nx.from_graph6_bytes(code.encode("ascii"))
    assert set(their.nodes) == set(range(n))
    assert {tuple(sorted(e)) for e in their.edges} == edges_of(image.rows)
    theirs = nx.to_graph6_bytes(their, header=False).decode("ascii").strip()
    assert theirs == code


def test_decode_of_networkx_output(rng):
    for n in (3, 7, 12):
        rows = random_connected_rows(rng, n)
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(sorted(edges_of(rows)))
        code = nx.to_graph6_bytes(g, header=False).decode("ascii").strip()
        assert graph6_decode(code).rows == rows


def test_encode_rejects_oversize():
    with pytest.raises(Graph6Error):
        graph6_encode(DigitalImage(63, tuple([0] * 63)))


@pytest.mark.parametrize(
    "text,offset",
    [
        ("", 0),  # empty
        ("?", 0),  # zero points
        ("~??", 0),  # extended size form
        ("\x1c", 0),  # size char below range
        ("B", 1),  # truncated payload
        ("BwX", 2),  # trailing byte
        ("B\x80", 1),  # payload char out of range
        ("B\x80w", 1),  # invalid char reported before length problems
        ("A" + chr(63 + 16), 1),  # nonzero padding bits for n=2
        (">>graph6<<", 10),  # header only
    ],
)
def test_decode_errors_with_offsets(text, offset):
    with pytest.raises(Graph6Error) as info:
        graph6_decode(text)
    assert info.value.offset == offset


def test_padding_bits_must_be_zero():
    # n=2: one adjacency bit, five padding bits; set a padding bit.
    good = ord("A")
    for bad_bit in range(5):
        text = "A" + chr(63 + (1 << bad_bit))
        with pytest.raises(Graph6Error, match="padding"):
            graph6_decode(text)
    assert graph6_decode(chr(good) + chr(63 + 32)).edge_count == 1
