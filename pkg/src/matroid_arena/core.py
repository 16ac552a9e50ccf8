"""Matroid ground sets and independence oracles.

Ground sets are always {0..n-1}; subsets travel as int bitmasks internally
and as iterables of element ids at the public surface.  Five spec variants
(uniform, partition, graphic, linear over GF(p), explicit family) share one
oracle interface; restriction, contraction and element cloning return fresh
matroids on dense index ranges with explicit maps back to the parent.

Loops are rejected at load time only: derived matroids (e.g. contractions)
may legitimately carry loops and the algorithms that build them never touch
those elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from . import kernels
from .errors import (
    DependentContraction,
    LoopDetected,
    NotDownwardClosed,
    OutOfRange,
    SpecInvalid,
)

MAX_GROUND = 64  # oracle paths; masks stay cheap machine-width-ish ints
TABLE_LIMIT = 20  # full 2**n independence tables (and explicit families)


def mask_of(elements: Iterable[int], n: int) -> int:
    """Bitmask of an element collection, validating the [0, n) range."""
    mask = 0
    for e in elements:
        e = int(e)
        if not 0 <= e < n:
            raise OutOfRange(f"element {e} outside ground set of size {n}")
        mask |= 1 << e
    return mask

def elements_of(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def sorted_elements(mask: int) -> list[int]:
    return sorted(elements_of(mask))


# ---------------------------------------------------------------------------
# declarative specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniformSpec:
    n: int
    r: int


@dataclass(frozen=True)
class PartitionSpec:
    blocks: tuple[tuple[int, ...], ...]
    capacities: tuple[int, ...]


@dataclass(frozen=True)
class GraphicSpec:
    vertices: int
    edges: tuple[tuple[int, int], ...]  # edge i is element i


@dataclass(frozen=True)
class LinearSpec:
    prime: int
    columns: tuple[tuple[int, ...], ...]  # column i is element i


@dataclass(frozen=True)
class ExplicitSpec:
    n: int
    independent: tuple[tuple[int, ...], ...]


MatroidSpec = Union[UniformSpec, PartitionSpec, GraphicSpec, LinearSpec, ExplicitSpec]


def spec_to_json(spec: MatroidSpec) -> dict:
    if isinstance(spec, UniformSpec):
        return {"type": "uniform", "n": spec.n, "r": spec.r}
    if isinstance(spec, PartitionSpec):
        return {
            "type": "partition",
            "blocks": [list(b) for b in spec.blocks],
            "capacities": list(spec.capacities),
        }
    if isinstance(spec, GraphicSpec):
        return {
            "type": "graphic",
            "vertices": spec.vertices,
            "edges": [list(e) for e in spec.edges],
        }
    if isinstance(spec, LinearSpec):
        return {
            "type": "linear",
            "prime": spec.prime,
            "columns": [list(c) for c in spec.columns],
        }
    if isinstance(spec, ExplicitSpec):
        return {
            "type": "explicit",
            "n": spec.n,
            "independent": [list(s) for s in spec.independent],
        }
    raise SpecInvalid(f"unknown spec object {spec!r}")


def spec_from_json(obj: dict) -> MatroidSpec:
    if not isinstance(obj, dict):
        raise SpecInvalid("matroid JSON must be an object")
    kind = obj.get("type")
    try:
        if kind == "uniform":
            return UniformSpec(n=int(obj["n"]), r=int(obj["r"]))
        if kind == "partition":
            return PartitionSpec(
                blocks=tuple(tuple(int(e) for e in b) for b in obj["blocks"]),
                capacities=tuple(int(c) for c in obj["capacities"]),
            )
        if kind == "graphic":
            return GraphicSpec(
                vertices=int(obj["vertices"]),
                edges=tuple((int(u), int(v)) for u, v in obj["edges"]),
            )
        if kind == "linear":
            return LinearSpec(
                prime=int(obj["prime"]),
                columns=tuple(tuple(int(x) for x in c) for c in obj["columns"]),
            )
        if kind == "explicit":
            return ExplicitSpec(
                n=int(obj["n"]),
                independent=tuple(
                    tuple(sorted(int(e) for e in s)) for s in obj["independent"]
                ),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecInvalid(f"malformed {kind!r} matroid JSON: {exc}") from exc
    raise SpecInvalid(f"unknown matroid type {kind!r}")


# ---------------------------------------------------------------------------
# the oracle-backed matroid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementMap:
    """Dense relabeling between a derived matroid and its parent."""

    to_parent: tuple[int, ...]

    def parent_mask(self, mask: int) -> int:
        out = 0
        for i, p in enumerate(self.to_parent):
            if mask >> i & 1:
                out |= 1 << p
        return out

    def parent_set(self, elements: Iterable[int]) -> frozenset[int]:
        return frozenset(self.to_parent[e] for e in elements)

    def child_index(self, parent_element: int) -> int:
        return self.to_parent.index(parent_element)


class Matroid:
    """Immutable independence oracle over {0..n-1}.

    ``spec`` is present on loaded matroids and None on derived ones;
    ``element_map`` is the reverse: None on loaded, set on derived.
    """

    __slots__ = ("n", "spec", "element_map", "_fn", "_table", "_ranks", "_full_rank")

    def __init__(
        self,
        n: int,
        indep_mask_fn: Callable[[int], bool],
        spec: MatroidSpec | None = None,
        element_map: ElementMap | None = None,
        table: np.ndarray | None = None,
    ):
        self.n = n
        self.spec = spec
        self.element_map = element_map
        self._fn = indep_mask_fn
        self._table = table
        self._ranks = None
        self._full_rank = None

    # -- oracle ------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def indep_mask(self, mask: int) -> bool:
        if self._table is not None:
            return bool(self._table[mask])
        return self._fn(mask)

    def is_independent(self, elements: Iterable[int]) -> bool:
        return self.indep_mask(mask_of(elements, self.n))

    def rank_mask(self, mask: int) -> int:
        if self._ranks is not None:
            return int(self._ranks[mask])
        # greedy augmentation over ascending ids; exact for matroid oracles
        cur = 0
        m = mask
        while m:
            low = m & -m
            m ^= low
            if self.indep_mask(cur | low):
                cur |= low
        return cur.bit_count()

    def rank(self, elements: Iterable[int]) -> int:
        return self.rank_mask(mask_of(elements, self.n))

    def rank_full(self) -> int:
        if self._full_rank is None:
            self._full_rank = self.rank_mask(self.full_mask)
        return self._full_rank

    # -- full tables (exhaustive paths) -------------------------------------

    def table(self) -> np.ndarray:
        """Full 2**n independence table (uint8), built once on demand."""
        if self._table is None:
            if self.n > TABLE_LIMIT:
                from .errors import TooLarge

                raise TooLarge(f"independence table for n={self.n} > {TABLE_LIMIT}")
            size = 1 << self.n
            tab = np.zeros(size, dtype=np.uint8)
            tab[0] = 1
            for s in range(1, size):
                low = s & -s
                # a superset of a dependent set is dependent; skip the oracle
                if tab[s ^ low]:
                    tab[s] = 1 if self._fn(s) else 0
            self._table = tab
        return self._table

    def ranks(self) -> np.ndarray:
        """Per-mask rank table via the kernel DP."""
        if self._ranks is None:
            self._ranks = kernels.rank_table(self.table(), self.n)
        return self._ranks

    def __repr__(self) -> str:
        tag = spec_to_json(self.spec)["type"] if self.spec is not None else "derived"
        return f"Matroid(n={self.n}, {tag})"


# ---------------------------------------------------------------------------
# loading and validation
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _gf_rank(columns: Sequence[Sequence[int]], p: int) -> int:
    """Rank of the given columns over GF(p) by elimination on exact ints."""
    if not columns:
        return 0
    rows = len(columns[0])
    mat = [[col[r] % p for col in columns] for r in range(rows)]
    rank = 0
    ncols = len(columns)
    for c in range(ncols):
        pivot = next((r for r in range(rank, rows) if mat[r][c]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][c], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for r in range(rows):
            if r != rank and mat[r][c]:
                f = mat[r][c]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _graphic_is_forest(edges: Sequence[tuple[int, int]], vertices: int, mask: int) -> bool:
    parent = list(range(vertices))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    m = mask
    while m:
        low = m & -m
        m ^= low
        u, v = edges[low.bit_length() - 1]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def load_matroid(spec: MatroidSpec) -> Matroid:
    """Validate a spec and return its oracle-backed matroid.

    Rejects structurally broken specs (SpecInvalid) and any spec whose
    matroid would have a loop (LoopDetected), since the whole theory here
    assumes loopless matroids.
    """
    if isinstance(spec, UniformSpec):
        n, r = spec.n, spec.r
        if n < 0 or not 0 <= r <= n:
            raise SpecInvalid(f"uniform needs 0 <= r <= n, got n={n} r={r}")
        if n > MAX_GROUND:
            raise SpecInvalid(f"ground set too large: {n} > {MAX_GROUND}")
        if n > 0 and r == 0:
            raise LoopDetected("uniform matroid with r=0 makes every element a loop")
        return Matroid(n, lambda mask: mask.bit_count() <= r, spec=spec)

    if isinstance(spec, PartitionSpec):
        if len(spec.blocks) != len(spec.capacities):
            raise SpecInvalid("blocks and capacities must pair up")
        if any(c < 0 for c in spec.capacities):
            raise SpecInvalid("capacities must be >= 0")
        seen: set[int] = set()
        total = 0
        for block in spec.blocks:
            for e in block:
                if e < 0 or e in seen:
                    raise SpecInvalid(f"blocks must be disjoint non-negative ids, bad {e}")
                seen.add(e)
            total += len(block)
        if seen != set(range(total)):
            raise SpecInvalid("blocks must partition {0..n-1}")
        if total > MAX_GROUND:
            raise SpecInvalid(f"ground set too large: {total} > {MAX_GROUND}")
        for block, cap in zip(spec.blocks, spec.capacities):
            if block and cap == 0:
                raise LoopDetected(f"zero-capacity block {block} makes loops")
        block_masks = [mask_of(b, total) for b in spec.blocks]
        caps = list(spec.capacities)

        def indep(mask: int, _bm=block_masks, _caps=caps) -> bool:
            return all((mask & bm).bit_count() <= c for bm, c in zip(_bm, _caps))

        return Matroid(total, indep, spec=spec)

    if isinstance(spec, GraphicSpec):
        if spec.vertices < 0:
            raise SpecInvalid("vertex count must be >= 0")
        n = len(spec.edges)
        if n > MAX_GROUND:
            raise SpecInvalid(f"ground set too large: {n} > {MAX_GROUND}")
        for u, v in spec.edges:
            if not (0 <= u < spec.vertices and 0 <= v < spec.vertices):
                raise SpecInvalid(f"edge ({u},{v}) has endpoint outside vertex range")
            if u == v:
                raise LoopDetected(f"self-loop edge ({u},{v})")
        edges = list(spec.edges)
        vertices = spec.vertices
        return Matroid(
            n, lambda mask: _graphic_is_forest(edges, vertices, mask), spec=spec
        )

    if isinstance(spec, LinearSpec):
        p = spec.prime
        if not _is_prime(p) or p >= 1 << 31:
            raise SpecInvalid(f"prime field order required, got {p}")
        n = len(spec.columns)
        if n > MAX_GROUND:
            raise SpecInvalid(f"ground set too large: {n} > {MAX_GROUND}")
        if n:
            dim = len(spec.columns[0])
            for col in spec.columns:
                if len(col) != dim:
                    raise SpecInvalid("columns must share one dimension")
                if any(not 0 <= x < p for x in col):
                    raise SpecInvalid("column entries must lie in [0, p)")
                if all(x == 0 for x in col):
                    raise LoopDetected("zero column is a loop")
        cols = [tuple(c) for c in spec.columns]

        def indep(mask: int, _cols=cols, _p=p) -> bool:
            chosen = [_cols[e] for e in sorted_elements(mask)]
            return _gf_rank(chosen, _p) == len(chosen)

        return Matroid(n, indep, spec=spec)

    if isinstance(spec, ExplicitSpec):
        n = spec.n
        if n < 0 or n > TABLE_LIMIT:
            raise SpecInvalid(f"explicit families limited to 0 <= n <= {TABLE_LIMIT}")
        family = set()
        for s in spec.independent:
            family.add(mask_of(s, n))
        if 0 not in family:
            raise NotDownwardClosed("independent family must contain the empty set")
        for mask in family:
            m = mask
            while m:
                low = m & -m
                m ^= low
                if (mask ^ low) not in family:
                    raise NotDownwardClosed(
                        f"family lacks subset {sorted_elements(mask ^ low)} of "
                        f"{sorted_elements(mask)}"
                    )
        for e in range(n):
            if (1 << e) not in family:
                raise LoopDetected(f"element {e} is a loop (singleton not in family)")
        tab = np.zeros(1 << n, dtype=np.uint8)
        for mask in family:
            tab[mask] = 1
        return Matroid(n, lambda mask: bool(tab[mask]), spec=spec, table=tab)

    raise SpecInvalid(f"unknown spec object {spec!r}")


def load_matroid_json(obj: dict) -> Matroid:
    return load_matroid(spec_from_json(obj))


# ---------------------------------------------------------------------------
# minors and cloning
# ---------------------------------------------------------------------------


def restrict(m: Matroid, keep: Iterable[int]) -> Matroid:
    """Matroid on the relabeled ground set ``keep`` (ascending parent order)."""
    keep_mask = mask_of(keep, m.n)
    to_parent = tuple(sorted_elements(keep_mask))
    emap = ElementMap(to_parent)

    def indep(mask: int) -> bool:
        return m.indep_mask(emap.parent_mask(mask))

    return Matroid(len(to_parent), indep, element_map=emap)


def contract(m: Matroid, contracted: Iterable[int]) -> Matroid:
    """Contract an independent set; ground becomes E minus it, relabeled."""
    c_mask = mask_of(contracted, m.n)
    if not m.indep_mask(c_mask):
        raise DependentContraction(
            f"cannot contract dependent set {sorted_elements(c_mask)}"
        )
    to_parent = tuple(sorted_elements(m.full_mask & ~c_mask))
    emap = ElementMap(to_parent)

    def indep(mask: int) -> bool:
        return m.indep_mask(emap.parent_mask(mask) | c_mask)

    return Matroid(len(to_parent), indep, element_map=emap)


def clone_elements(m: Matroid, mult: Sequence[int]) -> tuple[Matroid, tuple[int, ...]]:
    """Replace each element e by mult[e] parallel copies.

    A copy set is independent iff it takes at most one copy per original and
    the set of originals is independent.  Returns the new matroid and the
    copy map (new id -> original id).
    """
    if len(mult) != m.n:
        raise OutOfRange(f"multiplicity vector sized {len(mult)} for n={m.n}")
    if any(k < 0 for k in mult):
        raise OutOfRange("multiplicities must be >= 0")
    copy_map: list[int] = []
    for e in range(m.n):
        copy_map.extend([e] * int(mult[e]))
    total = len(copy_map)
    group_masks = [0] * m.n
    for i, e in enumerate(copy_map):
        group_masks[e] |= 1 << i

    def indep(mask: int) -> bool:
        originals = 0
        mm = mask
        while mm:
            low = mm & -mm
            mm ^= low
            e = copy_map[low.bit_length() - 1]
            bit = 1 << e
            if originals & bit:
                return False
            originals |= bit
        return m.indep_mask(originals)

    emap = ElementMap(tuple(copy_map))
    return Matroid(total, indep, element_map=emap), tuple(copy_map)
