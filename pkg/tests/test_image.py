"""Image types, validation, connectivity, and planarity.

Planarity goes through an independent oracle here: a graph is planar iff it
has no complete-5 or complete-3-3 minor, and minors are found by breadth
-first search over all edge contractions with a subgraph check at each
stage (contracting the branch sets of any minor exposes it as a subgraph).
"""

from __future__ import annotations

from itertools import combinations

import pytest

from digitop import DigitalImage, LatticeImage, is_connected, is_planar, lattice_to_image
from digitop._pure import canonical_rows

from .conftest import all_labeled_connected, flood_connected, random_connected_rows


# ---------------------------------------------------------------------------
# DigitalImage basics


def test_rejects_empty():
    with pytest.raises(ValueError):
        DigitalImage(0, ())


def test_rejects_self_adjacency():
    with pytest.raises(ValueError):
        DigitalImage(2, (1, 2))


def test_rejects_asymmetry():
    with pytest.raises(ValueError):
        DigitalImage(2, (2, 0))


def test_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        DigitalImage(2, (4, 0))


def test_rejects_bad_row_count():
    with pytest.raises(ValueError):
        DigitalImage(3, (0, 0))


def test_from_edges_and_accessors():
    image = DigitalImage.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert image.edge_count == 3
    assert image.degree(1) == 2
    assert image.neighbors(1) == [0, 2]
    assert image.adjacent(2, 3) and not image.adjacent(0, 3)
    assert sorted(image.edges()) == [(0, 1), (1, 2), (2, 3)]


def test_from_edges_rejects_loops_and_range():
    with pytest.raises(ValueError):
        DigitalImage.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        DigitalImage.from_edges(3, [(0, 3)])


def test_relabeled_is_an_isomorphism(rng):
    for _ in range(20):
        n = rng.randint(2, 8)
        image = DigitalImage(n, random_connected_rows(rng, n))
        perm = rng.sample(range(n), n)
        moved = image.relabeled(perm)
        for a in range(n):
            for b in range(n):
                assert image.adjacent(a, b) == moved.adjacent(perm[a], perm[b])


def test_is_connected_matches_flood_fill(rng):
    for _ in range(60):
        n = rng.randint(1, 9)
        rows = [0] * n
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < 0.25:
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
        image = DigitalImage(n, tuple(rows))
        assert is_connected(image) == flood_connected(rows)


# ---------------------------------------------------------------------------
# LatticeImage


def test_lattice_requires_kind_and_points():
    with pytest.raises(ValueError):
        LatticeImage(5, frozenset({(0, 0)}))
    with pytest.raises(ValueError):
        LatticeImage(4, frozenset())


def test_lattice_sorted_points_fix_labels():
    lattice = LatticeImage(4, frozenset({(1, 0), (0, 0), (0, 1)}))
    assert lattice.sorted_points() == [(0, 0), (0, 1), (1, 0)]
    image = lattice_to_image(lattice)
    # (0,0) is adjacent to both; (0,1) and (1,0) are not adjacent under kind 4
    assert image.adjacent(0, 1) and image.adjacent(0, 2) and not image.adjacent(1, 2)


def test_lattice_translated_preserves_structure():
    lattice = LatticeImage(8, frozenset({(0, 0), (1, 1), (2, 0)}))
    moved = lattice.translated(5, -3)
    assert moved.points == frozenset({(5, -3), (6, -2), (7, -3)})
    assert lattice_to_image(moved) == lattice_to_image(lattice)


def test_adjacency_kinds_differ_on_diagonals():
    points = frozenset({(0, 0), (1, 1)})
    assert lattice_to_image(LatticeImage(4, points)).edge_count == 0
    assert lattice_to_image(LatticeImage(8, points)).edge_count == 1


# ---------------------------------------------------------------------------
# Planarity, with a minor-search oracle


def _has_k5_or_k33_subgraph(rows) -> bool:
    n = len(rows)
    for picked in combinations(range(n), 5):
        if all(rows[a] >> b & 1 for a, b in combinations(picked, 2)):
            return True
    for left in combinations(range(n), 3):
        rest = [v for v in range(n) if v not in left]
        for right in combinations(rest, 3):
            if all(rows[a] >> b & 1 for a in left for b in right):
                return True
    return False


def _contractions(rows):
    n = len(rows)
    for a in range(n):
        for b in range(a + 1, n):
            if not rows[a] >> b & 1:
                continue
            merged = list(rows)
            merged[a] = (rows[a] | rows[b]) & ~(1 << a) & ~(1 << b)
            for v in range(n):
                if v != b and v != a and merged[v] >> b & 1:
                    merged[v] = (merged[v] & ~(1 << b)) | (1 << a)
            keep = [v for v in range(n) if v != b]
            index = {v: i for i, v in enumerate(keep)}
            out = [0] * (n - 1)
            for v in keep:
                r = 0
                remaining = merged[v]
                while remaining:
                    low = remaining & -remaining
                    remaining ^= low
                    r |= 1 << index[low.bit_length() - 1]
                out[index[v]] = r
            yield tuple(out)


def _planar_by_minor_search(rows) -> bool:
    frontier = {tuple(rows)}
    seen = set()
    while frontier:
        level = set()
        for state in frontier:
            code = canonical_rows(len(state), list(state))
            if code in seen:
                continue
            seen.add(code)
            if _has_k5_or_k33_subgraph(state):
                return False
            if len(state) > 5:
                level.update(_contractions(state))
        frontier = level
    return True


def test_planarity_exhaustive_small():
    seen = set()
    for n in range(1, 7):
        for rows in all_labeled_connected(n) if n > 1 else [(0,)]:
            code = canonical_rows(n, list(rows))
            if code in seen:
                continue
            seen.add(code)
            assert is_planar(DigitalImage(n, tuple(rows))) == _planar_by_minor_search(rows)


def test_planarity_sampled_larger(rng):
    for n in (7, 8):
        for _ in range(25):
            rows = random_connected_rows(rng, n, p=0.45)
            image = DigitalImage(n, rows)
            assert is_planar(image) == _planar_by_minor_search(rows)


def test_known_planarity_facts():
    k5 = DigitalImage.from_edges(5, list(combinations(range(5), 2)))
    assert not is_planar(k5)
    k33 = DigitalImage.from_edges(6, [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)])
    assert not is_planar(k33)
    k4 = DigitalImage.from_edges(4, list(combinations(range(4), 2)))
    assert is_planar(k4)
