"""Z^2 constructions: the diagonal embedding, cycle realizations, fixtures."""

import pytest

from digitop.image import (
    LatticeImage,
    are_isomorphic,
    canonical_form,
    graph6_decode,
    is_connected,
    lattice_to_image,
)
from digitop.lattice import (
    FIXTURE_CODES,
    UnrealizableError,
    builtin_fixtures,
    cycle_image,
    embed_4_to_8,
    realize_cycle_4adj,
)

from .conftest import edges_of


def _random_4adj_lattice(rand, n):
    """Grow a random connected 4-adjacency cell set of size n."""
    cells = {(0, 0)}
    while len(cells) < n:
        x, y = rand.choice(sorted(cells))
        dx, dy = rand.choice(((1, 0), (-1, 0), (0, 1), (0, -1)))
        cells.add((x + dx, y + dy))
    return LatticeImage(4, frozenset(cells))


# ---------------------------------------------------------------------------
# diagonal embedding


def test_embedding_rejects_8adjacency_input():
    square = LatticeImage(8, frozenset([(0, 0), (1, 1)]))
    with pytest.raises(ValueError):
        embed_4_to_8(square)


def test_embedding_output_parity():
    lattice = LatticeImage(4, frozenset([(0, 0), (1, 0), (1, 1), (2, 1)]))
    embedded = embed_4_to_8(lattice)
    assert embedded.kind == 8
    for x, y in embedded.points:
        assert (x + y) % 2 == 0


def test_embedding_preserves_adjacency_point_for_point(rng):
    """The map (x, y) -> (x+y, x-y) carries 4-neighbors exactly to 8-neighbors."""
    for _ in range(100):
        lattice = _random_4adj_lattice(rng, rng.randint(1, 12))
        embedded = embed_4_to_8(lattice)
        assert len(embedded.points) == len(lattice.points)
        source = lattice_to_image(lattice)
        target = lattice_to_image(embedded)
        # the coordinate map is not order-preserving, so build the bijection
        src_index = {p: i for i, p in enumerate(lattice.sorted_points())}
        dst_index = {p: i for i, p in enumerate(embedded.sorted_points())}
        relabel = {
            src_index[(x, y)]: dst_index[(x + y, x - y)] for x, y in lattice.points
        }
        mapped = {
            tuple(sorted((relabel[a], relabel[b]))) for a, b in edges_of(source.rows)
        }
        assert mapped == edges_of(target.rows)
        assert canonical_form(source) == canonical_form(target)


# ---------------------------------------------------------------------------
# cycles


def test_cycle_image_shape():
    c5 = cycle_image(5)
    assert c5.n == 5 and c5.edge_count == 5
    assert all(c5.degree(i) == 2 for i in range(5))
    assert is_connected(c5)
    with pytest.raises(ValueError):
        cycle_image(2)


@pytest.mark.parametrize("n", [4, 8, 10, 12, 20])
def test_cycle_realizations(n):
    lattice = realize_cycle_4adj(n)
    assert lattice.kind == 4
    assert len(lattice.points) == n
    image = lattice_to_image(lattice)
    assert are_isomorphic(image, cycle_image(n))


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 9])
def test_unrealizable_cycles(n):
    with pytest.raises(UnrealizableError):
        realize_cycle_4adj(n)


def test_unrealizable_is_a_value_error():
    assert issubclass(UnrealizableError, ValueError)


# ---------------------------------------------------------------------------
# named fixtures


def test_fixture_codes_decode():
    sizes = {"fig1-1": 8, "fig1-2": 9, "fig1-3": 9}
    for name, code in FIXTURE_CODES.items():
        image = graph6_decode(code)
        assert image.n == sizes[name]
        assert is_connected(image)


def test_builtin_fixture_contents():
    fixtures = builtin_fixtures()
    assert set(fixtures) == {"fig1-1", "fig1-2", "fig1-3", "fig2a", "fig2b"}
    assert fixtures["fig2a"].kind == 4 and len(fixtures["fig2a"].points) == 13
    assert fixtures["fig2b"].kind == 8 and len(fixtures["fig2b"].points) == 11
    for name in ("fig2a", "fig2b"):
        assert is_connected(lattice_to_image(fixtures[name]))
    for name in ("fig1-1", "fig1-2", "fig1-3"):
        assert fixtures[name] == graph6_decode(FIXTURE_CODES[name])
