"""Finite lattices given by their cover relations.

Conventions:
    - Elements are the integers ``0..size-1``.
    - ``covers`` holds ordered pairs ``(lower, upper)`` and must be the
      transitive reduction of the reachability order (a Hasse diagram).
    - The reachability order must have a least and a greatest element and
      binary joins and meets everywhere, otherwise construction fails.
    - ``up[x]`` / ``down[x]`` are bitmask encodings of the up-set and
      down-set of ``x``; all order queries run on precomputed tables.

The module also provides the predicates used throughout the package
(semimodularity, slimness, narrows, covering squares), a brute-force
isomorphism oracle with witness maps, and the :class:`BorderedDiagram`
wrapper that fixes a left and a right maximal chain of a lattice, the
combinatorial stand-in for a planar diagram considered up to boundary
similarity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class Cyclic(ValueError):
    """The cover relation has a directed cycle."""


class NotReduced(ValueError):
    """The cover relation contains a transitive (redundant) edge."""


class NotALattice(ValueError):
    """The reachability order is not a lattice."""


class TooLarge(ValueError):
    """Input exceeds a configured size cap."""


class InvalidDiagram(ValueError):
    """Chains do not form a valid bordered diagram of the lattice."""


class FiniteLattice:
    """An immutable finite lattice with eagerly computed order data.

    Validation and the order/join/meet tables cost O(size^3) in the worst
    case, which is fine at the intended scale; every later query is O(1)
    or a bitmask operation.
    """

    __slots__ = ("size", "covers", "covers_up", "covers_down", "up", "down",
                 "height", "bottom", "top", "_joins", "_meets", "_cache")

    def __init__(self, size: int, covers: Iterable[tuple[int, int]]):
        if size < 1:
            raise NotALattice("a lattice needs at least one element")
        cover_set = set()
        for pair in covers:
            a, b = pair
            if not (0 <= a < size and 0 <= b < size):
                raise IndexError(f"cover {pair} outside 0..{size - 1}")
            if a == b:
                raise Cyclic(f"self-loop at {a}")
            cover_set.add((a, b))
        self.size = size
        self.covers = frozenset(cover_set)
        ups = [[] for _ in range(size)]
        downs = [[] for _ in range(size)]
        for a, b in cover_set:
            ups[a].append(b)
            downs[b].append(a)
        self.covers_up = tuple(tuple(sorted(xs)) for xs in ups)
        self.covers_down = tuple(tuple(sorted(xs)) for xs in downs)

        order = self._topological_order()
        self._build_reachability(order)
        self._check_reduced()
        self._find_bounds()
        self._build_heights(order)
        self._build_tables()
        self._cache: dict = {}

    # -- construction internals -------------------------------------------

    def _topological_order(self) -> list[int]:
        indeg = [len(self.covers_down[x]) for x in range(self.size)]
        queue = [x for x in range(self.size) if indeg[x] == 0]
        order = []
        while queue:
            x = queue.pop()
            order.append(x)
            for y in self.covers_up[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if len(order) != self.size:
            raise Cyclic("cover relation has a cycle")
        return order

    def _build_reachability(self, order: list[int]) -> None:
        up = [0] * self.size
        for x in reversed(order):
            mask = 1 << x
            for y in self.covers_up[x]:
                mask |= up[y]
            up[x] = mask
        down = [0] * self.size
        for x in order:
            mask = 1 << x
            for y in self.covers_down[x]:
                mask |= down[y]
            down[x] = mask
        self.up = tuple(up)
        self.down = tuple(down)

    def _check_reduced(self) -> None:
        for a, b in self.covers:
            if self.up[a] & self.down[b] != (1 << a) | (1 << b):
                raise NotReduced(f"cover ({a}, {b}) is a transitive edge")

    def _find_bounds(self) -> None:
        full = (1 << self.size) - 1
        bottoms = [x for x in range(self.size) if self.up[x] == full]
        tops = [x for x in range(self.size) if self.down[x] == full]
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice("order must have a least and a greatest element")
        self.bottom = bottoms[0]
        self.top = tops[0]

    def _build_heights(self, order: list[int]) -> None:
        h = [0] * self.size
        for x in order:
            for y in self.covers_down[x]:
                h[x] = max(h[x], h[y] + 1)
        self.height = tuple(h)

    def _build_tables(self) -> None:
        size = self.size
        joins = [[0] * size for _ in range(size)]
        meets = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i, size):
                joins[i][j] = joins[j][i] = self._bound(i, j, self.up, "join")
                meets[i][j] = meets[j][i] = self._bound(i, j, self.down, "meet")
        self._joins = tuple(map(tuple, joins))
        self._meets = tuple(map(tuple, meets))

    def _bound(self, i: int, j: int, cone: Sequence[int], kind: str) -> int:
        # the join of i,j is the unique u among common upper bounds S with
        # cone(u) == S; same for meets with down-sets
        common = cone[i] & cone[j]
        s = common
        while s:
            bit = s & -s
            u = bit.bit_length() - 1
            if cone[u] == common:
                return u
            s ^= bit
        raise NotALattice(f"elements {i} and {j} have no {kind}")

    # -- queries ------------------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def join(self, x: int, y: int) -> int:
        return self._joins[x][y]

    def meet(self, x: int, y: int) -> int:
        return self._meets[x][y]

    def is_cover(self, x: int, y: int) -> bool:
        return (x, y) in self.covers

    def upper_covers(self, x: int) -> tuple[int, ...]:
        return self.covers_up[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        return self.covers_down[x]

    @property
    def length(self) -> int:
        return self.height[self.top]

    def elements(self) -> range:
        return range(self.size)

    def interval(self, lo: int, hi: int) -> list[int]:
        """Elements of [lo, hi], ascending by (height, id)."""
        mask = self.up[lo] & self.down[hi]
        out = []
        while mask:
            bit = mask & -mask
            out.append(bit.bit_length() - 1)
            mask ^= bit
        out.sort(key=lambda x: (self.height[x], x))
        return out

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteLattice)
                and self.size == other.size and self.covers == other.covers)

    def __hash__(self) -> int:
        return hash((self.size, self.covers))

    def __repr__(self) -> str:
        return f"FiniteLattice(size={self.size}, covers={sorted(self.covers)})"


def from_covers(size: int, covers: Iterable[tuple[int, int]]) -> FiniteLattice:
    """Validate a Hasse diagram and return the lattice it presents.

    Raises Cyclic, NotReduced, or NotALattice when the input is not the
    transitive reduction of a (bounded) lattice order.
    """
    return FiniteLattice(size, covers)


def chain(n: int) -> FiniteLattice:
    """The chain 0 < 1 < ... < n (length n)."""
    return FiniteLattice(n + 1, [(i, i + 1) for i in range(n)])


def _cached(lattice: FiniteLattice, key: str, compute):
    try:
        return lattice._cache[key]
    except KeyError:
        value = compute()
        lattice._cache[key] = value
        return value


def is_semimodular(lattice: FiniteLattice) -> bool:
    """Upper semimodularity: a covered by b implies a∨c is b∨c or covered by it."""
    def compute():
        for a, b in lattice.covers:
            for c in range(lattice.size):
                x = lattice.join(a, c)
                y = lattice.join(b, c)
                if x != y and not lattice.is_cover(x, y):
                    return False
        return True
    return _cached(lattice, "semimodular", compute)


def join_irreducibles(lattice: FiniteLattice) -> tuple[int, ...]:
    """Elements with exactly one lower cover (the bottom is excluded)."""
    def compute():
        return tuple(x for x in range(lattice.size)
                     if x != lattice.bottom and len(lattice.covers_down[x]) == 1)
    return _cached(lattice, "ji", compute)


def meet_irreducibles(lattice: FiniteLattice) -> tuple[int, ...]:
    """Elements with exactly one upper cover (the top is excluded)."""
    def compute():
        return tuple(x for x in range(lattice.size)
                     if x != lattice.top and len(lattice.covers_up[x]) == 1)
    return _cached(lattice, "mi", compute)


def _has_three_antichain(lattice: FiniteLattice, elems: Sequence[int]) -> bool:
    comp = [lattice.up[x] | lattice.down[x] for x in range(lattice.size)]
    for a, b in itertools.combinations(elems, 2):
        if comp[a] >> b & 1:
            continue
        for c in elems:
            if c != a and c != b and not comp[c] >> a & 1 and not comp[c] >> b & 1:
                return True
    return False


def is_slim(lattice: FiniteLattice) -> bool:
    """True iff the join-irreducibles contain no three-element antichain
    (equivalently, they are a union of two chains)."""
    def compute():
        return not _has_three_antichain(lattice, join_irreducibles(lattice))
    return _cached(lattice, "slim", compute)


def is_dually_slim(lattice: FiniteLattice) -> bool:
    return is_slim(dual(lattice))


def narrows(lattice: FiniteLattice) -> tuple[int, ...]:
    """Elements comparable with everything, sorted by height.

    Always contains the bottom and the top; the set is a chain, and the
    intervals between consecutive narrows are the glued-sum components.
    """
    def compute():
        full = (1 << lattice.size) - 1
        out = [x for x in range(lattice.size)
               if lattice.up[x] | lattice.down[x] == full]
        out.sort(key=lambda x: lattice.height[x])
        return tuple(out)
    return _cached(lattice, "narrows", compute)


def is_indecomposable(lattice: FiniteLattice) -> bool:
    """True iff size 1, or exactly two narrows in a lattice of size > 2."""
    return lattice.size == 1 or (len(narrows(lattice)) == 2 and lattice.size > 2)


def dual(lattice: FiniteLattice) -> FiniteLattice:
    """The lattice with the reversed order; an involution on the nose."""
    return FiniteLattice(lattice.size, [(b, a) for a, b in lattice.covers])


def covering_squares(lattice: FiniteLattice) -> frozenset[tuple[int, int, int, int]]:
    """All cover-preserving 4-element sublattices of length two.

    Returned as tuples (w, a, b, t) with w covered by a and b, both covered
    by t, and a < b; t is forced to be the join of a and b, and w their meet.
    """
    def compute():
        squares = set()
        for w in range(lattice.size):
            for a, b in itertools.combinations(lattice.covers_up[w], 2):
                t = lattice.join(a, b)
                if lattice.is_cover(a, t) and lattice.is_cover(b, t):
                    squares.add((w, a, b, t))
        return frozenset(squares)
    return _cached(lattice, "squares", compute)


def interval_sublattice(lattice: FiniteLattice, lo: int, hi: int
                        ) -> tuple[FiniteLattice, tuple[int, ...]]:
    """The interval [lo, hi] as a lattice of its own.

    Returns (sub, elems) where elems[k] is the original id of sub element k;
    covers restrict because anything between two interval members lies in
    the interval.
    """
    if not lattice.leq(lo, hi):
        raise ValueError(f"{lo} is not below {hi}")
    elems = tuple(lattice.interval(lo, hi))
    index = {x: k for k, x in enumerate(elems)}
    covers = [(index[a], index[b]) for a, b in lattice.covers
              if a in index and b in index]
    return FiniteLattice(len(elems), covers), elems


def maximal_chains(lattice: FiniteLattice, lo: int, hi: int) -> list[tuple[int, ...]]:
    """All cover-by-cover chains from lo to hi, in lexicographic order."""
    out: list[tuple[int, ...]] = []

    def walk(x: int, acc: list[int]) -> None:
        if x == hi:
            out.append(tuple(acc))
            return
        for y in lattice.covers_up[x]:
            if lattice.leq(y, hi):
                acc.append(y)
                walk(y, acc)
                acc.pop()

    if lattice.leq(lo, hi):
        walk(lo, [lo])
    return out


# -- isomorphism -------------------------------------------------------------

def _joint_refinement(l1: FiniteLattice, l2: FiniteLattice
                      ) -> Optional[tuple[list[int], list[int]]]:
    """Iterated degree/height refinement over both lattices with a shared
    palette; returns stable color vectors or None if histograms separate."""
    def seed(lat):
        return [(lat.height[x], len(lat.covers_down[x]), len(lat.covers_up[x]))
                for x in range(lat.size)]

    def histogram(colors):
        out: dict = {}
        for c in colors:
            out[c] = out.get(c, 0) + 1
        return out

    c1, c2 = seed(l1), seed(l2)
    while True:
        if histogram(c1) != histogram(c2):
            return None
        k1 = [(c1[x],
               tuple(sorted(c1[u] for u in l1.covers_down[x])),
               tuple(sorted(c1[u] for u in l1.covers_up[x])))
              for x in range(l1.size)]
        k2 = [(c2[x],
               tuple(sorted(c2[u] for u in l2.covers_down[x])),
               tuple(sorted(c2[u] for u in l2.covers_up[x])))
              for x in range(l2.size)]
        palette = {key: i for i, key in enumerate(sorted(set(k1) | set(k2)))}
        n1 = [palette[k] for k in k1]
        n2 = [palette[k] for k in k2]
        if len(set(n1)) == len(set(c1)) and len(set(n2)) == len(set(c2)):
            return n1, n2
        c1, c2 = n1, n2


def _search_isomorphisms(l1: FiniteLattice, l2: FiniteLattice,
                         pinned: Optional[dict[int, int]] = None,
                         limit: Optional[int] = 1) -> Iterator[tuple[int, ...]]:
    """Backtracking search for order isomorphisms l1 -> l2.

    Elements are assigned in height order, so when x is placed all its lower
    covers are already mapped; matching them bijectively onto the candidate's
    lower covers is exactly cover preservation in both directions.
    """
    if l1.size != l2.size or sorted(l1.height) != sorted(l2.height):
        return
    refined = _joint_refinement(l1, l2)
    if refined is None:
        return
    c1, c2 = refined
    if pinned:
        for x, y in pinned.items():
            if c1[x] != c2[y]:
                return

    class_size = {c: sum(1 for d in c1 if d == c) for c in set(c1)}
    order = sorted(range(l1.size), key=lambda x: (l1.height[x], class_size[c1[x]], x))
    candidates = [
        [pinned[x]] if pinned and x in pinned else
        [y for y in range(l2.size) if c2[y] == c1[x]]
        for x in order
    ]
    mapping = [-1] * l1.size
    used = [False] * l2.size
    found = 0

    def place(k: int) -> Iterator[tuple[int, ...]]:
        nonlocal found
        if k == len(order):
            found += 1
            yield tuple(mapping)
            return
        x = order[k]
        down_x = l1.covers_down[x]
        for y in candidates[k]:
            if used[y]:
                continue
            if any(not l2.is_cover(mapping[u], y) for u in down_x):
                continue
            mapping[x] = y
            used[y] = True
            yield from place(k + 1)
            used[y] = False
            mapping[x] = -1
            if limit is not None and found >= limit:
                return

    yield from place(0)


def find_isomorphism(l1: FiniteLattice, l2: FiniteLattice,
                     max_size: int = 200) -> Optional[tuple[int, ...]]:
    """A witness order isomorphism as a tuple (image of each element), or None."""
    if max(l1.size, l2.size) > max_size:
        raise TooLarge(f"size exceeds the isomorphism cap {max_size}")
    for mapping in _search_isomorphisms(l1, l2, limit=1):
        return mapping
    return None


def is_isomorphic(l1: FiniteLattice, l2: FiniteLattice, max_size: int = 200) -> bool:
    return find_isomorphism(l1, l2, max_size=max_size) is not None


def automorphisms(lattice: FiniteLattice) -> tuple[tuple[int, ...], ...]:
    """All order automorphisms (cached on the lattice)."""
    def compute():
        return tuple(_search_isomorphisms(lattice, lattice, limit=None))
    return _cached(lattice, "automorphisms", compute)


# -- bordered diagrams --------------------------------------------------------

@dataclass(frozen=True)
class BorderedDiagram:
    """A lattice with a distinguished left and right maximal chain.

    Both chains must run from bottom to top through covers and together
    contain every join-irreducible element.  With that much, the chains
    intersect exactly in the narrows, and for slim semimodular lattices the
    pair plays the role of a planar diagram up to boundary similarity.
    """

    lattice: FiniteLattice
    left_chain: tuple[int, ...]
    right_chain: tuple[int, ...]

    def __post_init__(self):
        for name, chain_ in (("left", self.left_chain), ("right", self.right_chain)):
            _check_maximal_chain(self.lattice, chain_, name)
        boundary = set(self.left_chain) | set(self.right_chain)
        missing = [x for x in join_irreducibles(self.lattice) if x not in boundary]
        if missing:
            raise InvalidDiagram(f"join-irreducibles {missing} not on either chain")

    @property
    def n(self) -> int:
        return self.lattice.length

    def boundary(self) -> frozenset[int]:
        return frozenset(self.left_chain) | frozenset(self.right_chain)

    def reflected(self) -> "BorderedDiagram":
        return BorderedDiagram(self.lattice, self.right_chain, self.left_chain)


def _check_maximal_chain(lattice: FiniteLattice, chain_: Sequence[int], name: str) -> None:
    if not chain_ or chain_[0] != lattice.bottom or chain_[-1] != lattice.top:
        raise InvalidDiagram(f"{name} chain must run from bottom to top")
    for a, b in zip(chain_, chain_[1:]):
        if not lattice.is_cover(a, b):
            raise InvalidDiagram(f"{name} chain step ({a}, {b}) is not a cover")


# -- serialization -------------------------------------------------------------

def lattice_to_json(lattice: FiniteLattice) -> dict:
    return {"size": lattice.size, "covers": sorted(map(list, lattice.covers))}


def lattice_from_json(obj: dict) -> FiniteLattice:
    try:
        size = obj["size"]
        covers = [(int(a), int(b)) for a, b in obj["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed lattice object: {exc}") from exc
    return FiniteLattice(size, covers)


def diagram_to_json(diagram: BorderedDiagram) -> dict:
    out = lattice_to_json(diagram.lattice)
    out["left_chain"] = list(diagram.left_chain)
    out["right_chain"] = list(diagram.right_chain)
    return out


def diagram_from_json(obj: dict) -> BorderedDiagram:
    lattice = lattice_from_json(obj)
    try:
        left = tuple(int(x) for x in obj["left_chain"])
        right = tuple(int(x) for x in obj["right_chain"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed diagram object: {exc}") from exc
    return BorderedDiagram(lattice, left, right)


def to_dot(lattice: FiniteLattice, labels: Optional[dict[int, str]] = None,
           name: str = "lattice") -> str:
    """Graphviz source: one node per element ranked by height, one edge per cover."""
    if labels is None:
        labels = {}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in range(lattice.size):
        lines.append(f'  n{x} [label="{labels.get(x, x)}"];')
    by_height: dict[int, list[int]] = {}
    for x in range(lattice.size):
        by_height.setdefault(lattice.height[x], []).append(x)
    for h in sorted(by_height):
        row = "; ".join(f"n{x}" for x in sorted(by_height[h]))
        lines.append(f"  {{ rank=same; {row}; }}")
    for a, b in sorted(lattice.covers):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
