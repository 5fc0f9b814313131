"""The square grid, its join-congruences, and the quotient construction.

The grid of side n is the direct product of two (n+1)-chains; the element
(i, j) is the join c_i ∨ d_j of the i-th element of the lower-left boundary
chain with the j-th element of the lower-right one, and joins and meets are
coordinatewise maxima and minima.  A join-congruence is an equivalence
compatible with joins; its blocks are automatically convex and join-closed,
so each block carries a unique top element.

For a permutation pi, collapsing for every i the upper edges of the 4-cell
with top (i, pi(i)) generates a cover-preserving join-congruence whose
quotient is a slim semimodular lattice of length n; ``phi0`` returns that
quotient together with the images of the two grid boundary chains.  The
collapsed prime intervals admit a closed form (an edge in the c-direction
with top (i, j) is collapsed iff pi(i) <= j, and dually), which gives a
second, independent route to the same congruence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from slimlat._kernel import closure_labels
from slimlat.lattice import BorderedDiagram, FiniteLattice
from slimlat.perm import LengthMismatch, Permutation

Coord = tuple[int, int]


class CellOutOfRange(ValueError):
    """A 4-cell index lies outside 1..n."""


class NotAPrimeInterval(ValueError):
    """An edge argument is not a covering pair of the grid."""


class HypothesisViolated(ValueError):
    """A congruence does not satisfy the preconditions of regeneration."""


class GridCell(NamedTuple):
    """The 4-cell whose top is the grid element (i, j), 1-based."""

    i: int
    j: int


@dataclass(frozen=True)
class Grid:
    """The square grid of side n (length 2n as a lattice)."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("side must be nonnegative")

    @property
    def side(self) -> int:
        return self.n + 1

    @property
    def size(self) -> int:
        return self.side * self.side

    def index(self, coord: Coord) -> int:
        i, j = coord
        if not (0 <= i <= self.n and 0 <= j <= self.n):
            raise IndexError(f"{coord} outside the grid of side {self.n}")
        return i * self.side + j

    def coords(self, e: int) -> Coord:
        return divmod(e, self.side)

    def join(self, x: Coord, y: Coord) -> Coord:
        return (max(x[0], y[0]), max(x[1], y[1]))

    def meet(self, x: Coord, y: Coord) -> Coord:
        return (min(x[0], y[0]), min(x[1], y[1]))

    def elements(self) -> Iterator[Coord]:
        return itertools.product(range(self.side), repeat=2)

    def prime_intervals(self) -> Iterator[tuple[Coord, Coord]]:
        """All covering pairs: c-direction ((i-1,j),(i,j)), then d-direction."""
        for i in range(1, self.n + 1):
            for j in range(self.n + 1):
                yield ((i - 1, j), (i, j))
        for i in range(self.n + 1):
            for j in range(1, self.n + 1):
                yield ((i, j - 1), (i, j))

    def cells(self) -> Iterator[GridCell]:
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                yield GridCell(i, j)


@dataclass(frozen=True)
class GridCongruence:
    """A partition of the grid elements, normally a join-congruence.

    Labels are canonical: blocks are numbered by first occurrence when
    scanning flat indices upward, so equal congruences compare equal.
    ``from_labels(..., check=False)`` admits raw equivalences, which the
    forbidden-cell detector must be able to inspect.
    """

    n: int
    labels: tuple[int, ...]

    @property
    def grid(self) -> Grid:
        return Grid(self.n)

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1

    def label_of(self, coord: Coord) -> int:
        return self.labels[Grid(self.n).index(coord)]

    def collapses(self, x: Coord, y: Coord) -> bool:
        g = Grid(self.n)
        return self.labels[g.index(x)] == self.labels[g.index(y)]

    def blocks(self) -> tuple[tuple[Coord, ...], ...]:
        out: list[list[Coord]] = [[] for _ in range(self.num_blocks)]
        side = self.n + 1
        for e, lab in enumerate(self.labels):
            out[lab].append(divmod(e, side))
        return tuple(tuple(b) for b in out)

    def block_tops(self) -> tuple[Coord, ...]:
        """The coordinatewise maximum of each block; a member whenever the
        partition is join-compatible."""
        tops = [(-1, -1)] * self.num_blocks
        side = self.n + 1
        for e, lab in enumerate(self.labels):
            i, j = divmod(e, side)
            tops[lab] = (max(tops[lab][0], i), max(tops[lab][1], j))
        return tuple(tops)

    def generator_pairs(self) -> list[tuple[Coord, Coord]]:
        """Pairs spanning every block (first member to each other member)."""
        firsts: dict[int, Coord] = {}
        pairs = []
        side = self.n + 1
        for e, lab in enumerate(self.labels):
            coord = divmod(e, side)
            if lab in firsts:
                pairs.append((firsts[lab], coord))
            else:
                firsts[lab] = coord
        return pairs

    def is_join_compatible(self) -> bool:
        g = self.grid
        for block in self.blocks():
            first = block[0]
            for other in block[1:]:
                for z in g.elements():
                    if not self.collapses(g.join(first, z), g.join(other, z)):
                        return False
        return True

    @classmethod
    def identity(cls, n: int) -> "GridCongruence":
        return cls(n, tuple(range((n + 1) * (n + 1))))

    @classmethod
    def from_labels(cls, n: int, labels: Iterable[int], check: bool = True
                    ) -> "GridCongruence":
        raw = list(labels)
        if len(raw) != (n + 1) * (n + 1):
            raise ValueError(f"expected {(n + 1) * (n + 1)} labels, got {len(raw)}")
        canon: dict[int, int] = {}
        out = []
        for lab in raw:
            if lab not in canon:
                canon[lab] = len(canon)
            out.append(canon[lab])
        result = cls(n, tuple(out))
        if check and not result.is_join_compatible():
            raise ValueError("partition is not join-compatible")
        return result

    def to_json(self) -> dict:
        side = self.n + 1
        return {"n": self.n,
                "blocks": [list(self.labels[i * side:(i + 1) * side]) for i in range(side)]}

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "GridCongruence":
        try:
            n = int(obj["n"])
            labels = [int(x) for row in obj["blocks"] for x in row]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed congruence object: {exc}") from exc
        return cls.from_labels(n, labels, check=check)


# -- constructors ---------------------------------------------------------------

def congruence_closure(grid: Grid, pairs: Iterable[tuple[Coord, Coord]]
                       ) -> GridCongruence:
    """Smallest join-congruence containing the given pairs."""
    flat = [(grid.index(x), grid.index(y)) for x, y in pairs]
    return GridCongruence(grid.n, tuple(closure_labels(grid.n, flat)))


def _cell_generators(cell: GridCell) -> list[tuple[Coord, Coord]]:
    i, j = cell
    return [((i - 1, j), (i, j)), ((i, j - 1), (i, j))]


def jcong_cell(grid: Grid, cell: GridCell) -> GridCongruence:
    """Smallest join-congruence collapsing the upper edges of one 4-cell."""
    i, j = cell
    if not (1 <= i <= grid.n and 1 <= j <= grid.n):
        raise CellOutOfRange(f"cell {tuple(cell)} outside 1..{grid.n}")
    return congruence_closure(grid, _cell_generators(GridCell(i, j)))


@lru_cache(maxsize=None)
def _beta_labels(n: int, images: tuple[int, ...]) -> tuple[int, ...]:
    pairs = []
    for i, j in enumerate(images, start=1):
        for x, y in _cell_generators(GridCell(i, j)):
            pairs.append((x[0] * (n + 1) + x[1], y[0] * (n + 1) + y[1]))
    return tuple(closure_labels(n, pairs))


@lru_cache(maxsize=None)
def _formula_labels(n: int, images: tuple[int, ...]) -> tuple[int, ...]:
    # plain union-find over the collapsed prime intervals; blocks of a
    # join-congruence are convex and join-closed, so its collapsed covering
    # pairs already generate it as an equivalence
    side = n + 1
    parent = list(range(side * side))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    inv = [0] * n
    for i, v in enumerate(images, start=1):
        inv[v - 1] = i
    for i in range(1, side):
        for j in range(side):
            if images[i - 1] <= j:  # c-direction edge ((i-1,j),(i,j))
                a, b = find((i - 1) * side + j), find(i * side + j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    for i in range(side):
        for j in range(1, side):
            if inv[j - 1] <= i:  # d-direction edge ((i,j-1),(i,j))
                a, b = find(i * side + j - 1), find(i * side + j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    canon: dict[int, int] = {}
    out = []
    for e in range(side * side):
        r = find(e)
        if r not in canon:
            canon[r] = len(canon)
        out.append(canon[r])
    return tuple(out)


def beta_from_perm(grid: Grid, pi: Permutation, check: bool | None = None
                   ) -> GridCongruence:
    """The join of the 4-cell congruences at (i, pi(i)), built by closure.

    With check (default: on unless running with -O) the result is compared
    against the closed-form route; a mismatch means a kernel bug.
    """
    if pi.n != grid.n:
        raise LengthMismatch(f"permutation of size {pi.n} on a grid of side {grid.n}")
    labels = _beta_labels(grid.n, pi.images)
    if check is None:
        check = __debug__
    if check and labels != _formula_labels(grid.n, pi.images):
        raise RuntimeError(f"closure and closed-form congruences differ for {pi.images}")
    return GridCongruence(grid.n, labels)


def beta_from_formula(grid: Grid, pi: Permutation) -> GridCongruence:
    """The same congruence assembled from the closed-form edge predicate only."""
    if pi.n != grid.n:
        raise LengthMismatch(f"permutation of size {pi.n} on a grid of side {grid.n}")
    return GridCongruence(grid.n, _formula_labels(grid.n, pi.images))


def beta_formula(n: int, pi: Permutation, edge: tuple[Coord, Coord]) -> bool:
    """Closed-form membership of a prime interval in the congruence of pi."""
    if pi.n != n:
        raise LengthMismatch(f"permutation of size {pi.n}, grid of side {n}")
    (ai, aj), (bi, bj) = edge
    if not (0 <= ai <= n and 0 <= aj <= n and 0 <= bi <= n and 0 <= bj <= n):
        raise NotAPrimeInterval(f"{edge} outside the grid of side {n}")
    if bi == ai + 1 and bj == aj:
        return pi(bi) <= bj
    if bi == ai and bj == aj + 1:
        return pi.inverse()(bj) <= bi
    raise NotAPrimeInterval(f"{edge} is not a covering pair")


# -- cell classification --------------------------------------------------------

def _cell_labels(kappa: GridCongruence, cell: GridCell) -> tuple[int, int, int, int]:
    i, j = cell
    side = kappa.n + 1
    w = kappa.labels[(i - 1) * side + (j - 1)]
    a = kappa.labels[(i - 1) * side + j]
    b = kappa.labels[i * side + (j - 1)]
    t = kappa.labels[i * side + j]
    return w, a, b, t


def forbidden_cells(kappa: GridCongruence) -> frozenset[GridCell]:
    """Cells whose bottom and side blocks are pairwise distinct while the top
    falls into a side block; witnesses that the quotient map breaks a cover."""
    out = []
    for cell in Grid(kappa.n).cells():
        w, a, b, t = _cell_labels(kappa, cell)
        if w != a and w != b and a != b and t in (a, b):
            out.append(cell)
    return frozenset(out)


def is_cover_preserving(kappa: GridCongruence) -> bool:
    return not forbidden_cells(kappa)


def source_cells(kappa: GridCongruence) -> frozenset[GridCell]:
    """Cells whose two side elements merge with the top but not the bottom."""
    out = []
    for cell in Grid(kappa.n).cells():
        w, a, b, t = _cell_labels(kappa, cell)
        if a == b == t != w:
            out.append(cell)
    return frozenset(out)


def regenerate(kappa: GridCongruence) -> GridCongruence:
    """Rebuild a congruence as the join of the cell congruences at its source
    cells.

    Requires a cover-preserving congruence collapsing no boundary edge; under
    those hypotheses the result equals the input.
    """
    side = kappa.n + 1
    for i in range(1, side):
        if kappa.labels[(i - 1) * side] == kappa.labels[i * side]:
            raise HypothesisViolated(f"left boundary edge {i - 1}->{i} collapsed")
        if kappa.labels[i - 1] == kappa.labels[i]:
            raise HypothesisViolated(f"right boundary edge {i - 1}->{i} collapsed")
    if not is_cover_preserving(kappa):
        raise HypothesisViolated("congruence has a forbidden cell")
    pairs = [pair for cell in sorted(source_cells(kappa))
             for pair in _cell_generators(cell)]
    return congruence_closure(Grid(kappa.n), pairs)


# -- the quotient construction ---------------------------------------------------

def quotient(kappa: GridCongruence) -> tuple[FiniteLattice, tuple[Coord, ...]]:
    """The quotient lattice of a join-congruence and the top of each block.

    Block X is below block Y iff joining their tops lands in Y; element ids
    are the canonical block labels.
    """
    g = kappa.grid
    tops = kappa.block_tops()
    nblocks = kappa.num_blocks
    for lab, top in enumerate(tops):
        if kappa.labels[g.index(top)] != lab:
            raise ValueError("partition is not join-closed; no quotient lattice")

    def leq(x: int, y: int) -> bool:
        return kappa.labels[g.index(g.join(tops[x], tops[y]))] == y

    covers = []
    for x in range(nblocks):
        for y in range(nblocks):
            if x != y and leq(x, y):
                if not any(z != x and z != y and leq(x, z) and leq(z, y)
                           for z in range(nblocks)):
                    covers.append((x, y))
    return FiniteLattice(nblocks, covers), tops


@lru_cache(maxsize=None)
def _phi0(n: int, images: tuple[int, ...]) -> BorderedDiagram:
    kappa = GridCongruence(n, _beta_labels(n, images))
    lattice, _ = quotient(kappa)
    side = n + 1
    left = tuple(kappa.labels[i * side] for i in range(side))
    right = tuple(kappa.labels[j] for j in range(side))
    return BorderedDiagram(lattice, left, right)


def phi0(pi: Permutation) -> BorderedDiagram:
    """The quotient of the square grid by the congruence of pi, bordered by
    the images of the two grid boundary chains.

    The result is a slim semimodular lattice of length n; this map is a
    bijection onto bordered diagrams of such lattices, inverted by
    :func:`slimlat.extract.extract_permutation`.
    """
    return _phi0(pi.n, pi.images)


def heuristic_layout(pi: Permutation) -> dict[int, tuple[int, int]]:
    """Drawing hints for phi0(pi): y is the height, x the signed offset j - i
    of the block top.  Purely cosmetic; nothing downstream depends on it."""
    kappa = GridCongruence(pi.n, _beta_labels(pi.n, pi.images))
    lattice, tops = quotient(kappa)
    return {lab: (tops[lab][1] - tops[lab][0], lattice.height[lab])
            for lab in range(lattice.size)}


# -- rendering -------------------------------------------------------------------

def render_ascii(pi: Permutation) -> str:
    """The n x n cell matrix of pi: row i marks the cell (i, pi(i))."""
    return "\n".join(
        "".join("#" if pi(i) == j else "." for j in range(1, pi.n + 1))
        for i in range(1, pi.n + 1)
    )


def grid_dot(pi: Permutation) -> str:
    """Graphviz source for the grid with the collapsed edges of pi's
    congruence drawn dashed."""
    n = pi.n
    g = Grid(n)
    kappa = GridCongruence(n, _beta_labels(n, pi.images))
    lines = [f"digraph grid{n} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, j in g.elements():
        lines.append(f'  g{i}_{j} [label="{i},{j}"];')
    for rank in range(2 * n + 1):
        row = "; ".join(f"g{i}_{rank - i}"
                        for i in range(max(0, rank - n), min(rank, n) + 1))
        lines.append(f"  {{ rank=same; {row}; }}")
    for (ai, aj), (bi, bj) in g.prime_intervals():
        style = ' [style=dashed, color=gray]' if kappa.collapses((ai, aj), (bi, bj)) else ""
        lines.append(f"  g{ai}_{aj} -> g{bi}_{bj}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
