"""Shared fixtures: the catalog of small matroids every suite runs against,
plus test-side oracles kept independent of the engine paths they check."""

from __future__ import annotations

import pytest

import matroid_arena as ma


def complete_graph_edges(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def build_catalog() -> dict[str, ma.Matroid]:
    return {
        "u13": ma.load_matroid(ma.UniformSpec(3, 1)),
        "u23": ma.load_matroid(ma.UniformSpec(3, 2)),
        "u24": ma.load_matroid(ma.UniformSpec(4, 2)),
        "k3": ma.load_matroid(ma.GraphicSpec(3, complete_graph_edges(3))),
        "k4": ma.load_matroid(ma.GraphicSpec(4, complete_graph_edges(4))),
        "k5": ma.load_matroid(ma.GraphicSpec(5, complete_graph_edges(5))),
        "partition": ma.load_matroid(ma.PartitionSpec(((0, 1, 2), (3, 4)), (1, 2))),
        "gf2": ma.load_matroid(
            ma.LinearSpec(
                2,
                (
                    (0, 0, 1),
                    (0, 1, 0),
                    (0, 1, 1),
                    (1, 0, 0),
                    (1, 0, 1),
                    (1, 1, 0),
                    (1, 1, 1),
                ),
            )
        ),
    }


CATALOG = build_catalog()
CATALOG_NAMES = sorted(CATALOG)

# frozen from the exhaustive max over nonempty A of ceil(|A| / rank(A));
# see formula_chi below, which recomputes them in the covering tests
KNOWN_CHI = {
    "u13": 3,
    "u23": 2,
    "u24": 2,
    "k3": 2,
    "k4": 2,
    "k5": 3,
    "partition": 3,
    "gf2": 3,
}


@pytest.fixture(scope="session")
def catalog() -> dict[str, ma.Matroid]:
    return CATALOG


def names_with(max_n: int) -> list[str]:
    return [name for name in CATALOG_NAMES if CATALOG[name].n <= max_n]


def formula_chi(m: ma.Matroid) -> int:
    """Classical covering identity max_A ceil(|A|/rank(A)), exhaustively.

    Test oracle only; the engine derives the same number by upward search
    over union feasibility.
    """
    ranks = m.ranks()
    best = 0
    for a in range(1, 1 << m.n):
        r = int(ranks[a])
        assert r > 0, "loopless catalog matroids only"
        best = max(best, -(-a.bit_count() // r))
    return best


def assert_cover_valid(m: ma.Matroid, cover: ma.Cover, weights) -> None:
    for part in cover.parts:
        assert m.is_independent(part), f"part {sorted(part)} dependent"
    for e in range(m.n):
        assert cover.multiplicity(e) == weights[e], f"bad multiplicity at {e}"


def assert_layered_cover_valid(m: ma.Matroid, cover: ma.Cover, weights, list_sizes) -> None:
    assert_cover_valid(m, cover, weights)
    for i, part in enumerate(cover.parts, start=1):
        for e in part:
            assert list_sizes[e] >= i, f"element {e} above its list layer"


def assert_game_state_valid(state, config) -> None:
    n = config.matroid.n
    for e in range(n):
        assert len(state.lists[e]) <= config.list_sizes[e]
        assert state.assigned[e] <= state.lists[e]
        assert len(state.assigned[e]) <= config.weights[e]
    colors = set().union(*state.assigned) if n else set()
    for c in colors:
        cls = [e for e in range(n) if c in state.assigned[e]]
        assert config.matroid.is_independent(cls), f"class of color {c} dependent"
