"""Constructions tied to Z^2 geometry: embeddings, cycles, named fixtures."""

from __future__ import annotations

from .image import DigitalImage, LatticeImage, graph6_decode


class UnrealizableError(ValueError):
    """No lattice image with the requested adjacency structure exists."""


def embed_4_to_8(lattice: LatticeImage) -> LatticeImage:
    """Map a 4-adjacency image to an isomorphic 8-adjacency image.

    Sends (x, y) to (x + y, x - y): a unit orthogonal step becomes a unit
    diagonal step, so 4-adjacency of the source is exactly 8-adjacency of
    the target.  Every output point has coordinates of equal parity.
    """
    if lattice.kind != 4:
        raise ValueError("embedding is defined for 4-adjacency images")
    return LatticeImage(8, frozenset((x + y, x - y) for x, y in lattice.points))


def cycle_image(n: int) -> DigitalImage:
    """The abstract cycle on ``n`` points: i adjacent to (i +- 1) mod n."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 points (a 2-cycle would be a double adjacency)")
    return DigitalImage.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def realize_cycle_4adj(n: int) -> LatticeImage:
    """A 4-adjacency lattice image whose adjacency graph is the n-cycle.

    Exists exactly for even n with n >= 4 and n != 6: odd cycles fail because
    the 4-adjacency grid is bipartite, and no 6-point arrangement closes up.
    Construction: the 2x2 square for n = 4, otherwise the boundary cells of a
    3 x ((n - 2) / 2) rectangle, whose perimeter has exactly n cells.
    """
    if n % 2 == 1:
        raise UnrealizableError(f"no 4-adjacency realization of an odd cycle (n={n})")
    if n in (2, 6) or n < 4:
        raise UnrealizableError(f"no 4-adjacency realization of the {n}-cycle exists")
    if n == 4:
        return LatticeImage(4, frozenset([(0, 0), (1, 0), (0, 1), (1, 1)]))
    width = (n - 2) // 2
    cells = {
        (x, y)
        for x in range(width)
        for y in range(3)
        if x in (0, width - 1) or y in (0, 2)
    }
    return LatticeImage(4, frozenset(cells))


# Printed identifier strings for the three smallest non-rigid irreducible
# images beyond the cycles: an 8-cycle with the four antipodal chords, a
# 4-spoke wheel whose hub ring has crossed chords, and a 9-cycle with all
# distance-2 chords.
FIXTURE_CODES = {
    "fig1-1": "GrDKPK",
    "fig1-2": "HhciKeX",
    "fig1-3": "HzSW[Mb",
}

_FIG2A_CELLS = [
    (1, 1), (1, 2), (1, 3), (1, 4),
    (2, 1), (2, 4),
    (3, 1), (3, 3), (3, 4),
    (4, 1), (4, 2), (4, 3), (4, 4),
]

_FIG2B_CELLS = [
    (1, 2), (1, 3), (1, 4),
    (2, 1), (2, 5),
    (3, 1), (3, 3), (3, 5),
    (4, 2), (4, 4),
    (5, 3),
]


def builtin_fixtures() -> dict[str, DigitalImage | LatticeImage]:
    """Named example images under stable names.

    fig1-1/fig1-2/fig1-3 are abstract images decoded from their graph6
    codes; fig2a (13 cells, 4-adjacency) and fig2b (11 cells, 8-adjacency)
    are lattice witnesses of images that are reducible yet pointed
    irreducible.
    """
    fixtures: dict[str, DigitalImage | LatticeImage] = {
        name: graph6_decode(code) for name, code in FIXTURE_CODES.items()
    }
    fixtures["fig2a"] = LatticeImage(4, frozenset(_FIG2A_CELLS))
    fixtures["fig2b"] = LatticeImage(8, frozenset(_FIG2B_CELLS))
    return fixtures
