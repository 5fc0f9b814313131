"""Recovering the permutation of a bordered diagram, three independent ways.

For a slim semimodular lattice of length n with left chain c_0..c_n and
right chain d_0..d_n, each procedure assigns to every i the index j of a
matching right-chain step:

- ``pi1_trajectories`` follows the edge [c_{i-1}, c_i] across covering
  squares, hopping to the opposite edge each time, until the walk leaves the
  last square on a right-chain edge [d_{j-1}, d_j].  Consecutive-opposite
  adjacency makes this drawing-free: every prime interval lies in at most
  two covering squares, so the walk is forced.
- ``pi2_meet_irreducibles`` takes the largest element u above c_{i-1} but
  not above c_i (a meet-irreducible), and j indexes the smallest d not
  below-or-equal u.
- ``pi3_source_cells`` evaluates the grid-to-lattice join map
  (i, j) -> c_i ∨ d_j and reads j off the unique cell in row i where the two
  side values already agree with the top but not with the bottom.

All three agree on every valid input; ``extract_permutation`` runs the
cheapest one and, by default, cross-checks it against the other two.  The
module also enumerates all bordered diagrams of a lattice up to boundary
similarity by reflecting glued-sum components.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from slimlat.lattice import (BorderedDiagram, FiniteLattice, _cached,
                             _search_isomorphisms, automorphisms,
                             covering_squares, interval_sublattice,
                             is_semimodular, is_slim, join_irreducibles,
                             maximal_chains, narrows)
from slimlat.perm import Permutation, rho_class

Edge = tuple[int, int]


class NotSlimSemimodular(ValueError):
    """The lattice is outside the domain of the extraction procedures."""


class TrajectoryAmbiguous(ValueError):
    """An edge walk did not reach a unique right-boundary edge."""


class UniquenessViolated(ValueError):
    """The filter difference above a left-chain step is not a chain with a
    meet-irreducible maximum."""


class SourceCellMissing(ValueError):
    """No source cell in some row of the join map."""


class SourceCellDuplicated(ValueError):
    """More than one source cell in some row of the join map."""


class ExtractorDisagreement(RuntimeError):
    """The three procedures returned different permutations (a bug, or an
    input violating the preconditions in a way that slipped the checks)."""


@dataclass(frozen=True)
class Trajectory:
    """A maximal walk through opposite edges of covering squares."""

    edges: tuple[Edge, ...]


def _require_slim_semimodular(lattice: FiniteLattice) -> None:
    if not is_slim(lattice):
        raise NotSlimSemimodular("lattice is not slim")
    if not is_semimodular(lattice):
        raise NotSlimSemimodular("lattice is not semimodular")


def _opposite_edges(lattice: FiniteLattice) -> dict[Edge, tuple[Edge, ...]]:
    def compute():
        adj: dict[Edge, list[Edge]] = {}
        for w, a, b, t in covering_squares(lattice):
            for e, f in (((w, a), (b, t)), ((w, b), (a, t))):
                adj.setdefault(e, []).append(f)
                adj.setdefault(f, []).append(e)
        # planarity of slim lattices: an edge borders at most two squares
        assert all(len(v) <= 2 for v in adj.values()), "edge in >2 covering squares"
        return {e: tuple(v) for e, v in adj.items()}
    return _cached(lattice, "opposite_edges", compute)


def trajectory(diagram: BorderedDiagram, i: int) -> Trajectory:
    """The walk starting at the i-th left-chain edge (1-based)."""
    _require_slim_semimodular(diagram.lattice)
    adj = _opposite_edges(diagram.lattice)
    start: Edge = (diagram.left_chain[i - 1], diagram.left_chain[i])
    if len(adj.get(start, ())) > 1:
        raise TrajectoryAmbiguous(f"left edge {start} borders two squares")
    path = [start]
    seen = {start}
    prev: Edge | None = None
    cur = start
    while True:
        nxts = [e for e in adj.get(cur, ()) if e != prev]
        if not nxts:
            return Trajectory(tuple(path))
        nxt = nxts[0]
        if nxt in seen:
            raise TrajectoryAmbiguous(f"walk from {start} revisits {nxt}")
        path.append(nxt)
        seen.add(nxt)
        prev, cur = cur, nxt


def pi1_trajectories(diagram: BorderedDiagram) -> Permutation:
    """Extraction by trajectories."""
    left, right = diagram.left_chain, diagram.right_chain
    left_index = {(left[k - 1], left[k]): k for k in range(1, len(left))}
    right_index = {(right[k - 1], right[k]): k for k in range(1, len(right))}
    images = []
    for i in range(1, diagram.n + 1):
        path = trajectory(diagram, i).edges
        rights = [right_index[e] for e in path if e in right_index]
        lefts = [left_index[e] for e in path if e in left_index]
        if len(rights) != 1 or len(lefts) != 1 or path[-1] not in right_index:
            raise TrajectoryAmbiguous(
                f"trajectory {i} meets left edges {lefts} and right edges {rights}")
        images.append(rights[0])
    return Permutation(tuple(images))


def pi2_meet_irreducibles(diagram: BorderedDiagram) -> Permutation:
    """Extraction by meet-irreducible witnesses."""
    _require_slim_semimodular(diagram.lattice)
    lattice, left, right = diagram.lattice, diagram.left_chain, diagram.right_chain
    images = []
    for i in range(1, diagram.n + 1):
        mask = lattice.up[left[i - 1]] & ~lattice.up[left[i]]
        members = []
        while mask:
            bit = mask & -mask
            members.append(bit.bit_length() - 1)
            mask ^= bit
        if not all(lattice.comparable(x, y)
                   for x, y in itertools.combinations(members, 2)):
            raise UniquenessViolated(f"filter difference at step {i} is not a chain")
        u = max(members, key=lambda x: lattice.height[x])
        if len(lattice.upper_covers(u)) != 1:
            raise UniquenessViolated(f"witness {u} at step {i} is not meet-irreducible")
        j = next(k for k in range(len(right)) if not lattice.leq(right[k], u))
        images.append(j)
    return Permutation(tuple(images))


def pi3_source_cells(diagram: BorderedDiagram) -> Permutation:
    """Extraction through the join map from the grid onto the lattice."""
    _require_slim_semimodular(diagram.lattice)
    lattice, left, right = diagram.lattice, diagram.left_chain, diagram.right_chain
    n = diagram.n
    eta = [[lattice.join(left[i], right[j]) for j in range(n + 1)]
           for i in range(n + 1)]
    images = []
    for i in range(1, n + 1):
        hits = [j for j in range(1, n + 1)
                if eta[i - 1][j] == eta[i][j - 1] == eta[i][j] != eta[i - 1][j - 1]]
        if not hits:
            raise SourceCellMissing(f"no source cell in row {i}")
        if len(hits) > 1:
            raise SourceCellDuplicated(f"multiple source cells {hits} in row {i}")
        images.append(hits[0])
    return Permutation(tuple(images))


def extract_permutation(diagram: BorderedDiagram, verify: bool = True) -> Permutation:
    """The permutation of a bordered diagram.

    Runs the meet-irreducible procedure; with verify (the default) the other
    two run as well and any disagreement raises, which must never happen on
    valid input.
    """
    result = pi2_meet_irreducibles(diagram)
    if verify:
        p1 = pi1_trajectories(diagram)
        p3 = pi3_source_cells(diagram)
        if not (p1 == result == p3):
            raise ExtractorDisagreement(
                f"trajectories {p1.images}, meet-irreducibles {result.images}, "
                f"source cells {p3.images}")
    return result


# -- enumerating diagrams ---------------------------------------------------------

def _component_chain_pair(lattice: FiniteLattice, lo: int, hi: int
                          ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The unique unordered pair of maximal chains of [lo, hi] that together
    cover the component's join-irreducibles."""
    chains = maximal_chains(lattice, lo, hi)
    if len(chains) == 1:
        return chains[0], chains[0]
    sub, elems = interval_sublattice(lattice, lo, hi)
    ji = {elems[x] for x in join_irreducibles(sub)}
    pairs = [(u, v) for u, v in itertools.combinations(chains, 2)
             if ji <= set(u) | set(v)]
    if len(pairs) != 1:
        raise RuntimeError(
            f"component [{lo}, {hi}] has {len(pairs)} boundary chain pairs")
    return pairs[0]


def diagrams_of(lattice: FiniteLattice) -> tuple[BorderedDiagram, ...]:
    """All bordered diagrams of a slim semimodular lattice up to boundary
    similarity.

    Between consecutive narrows the boundary pair of the component is unique
    up to a swap, so candidates are products of per-component orientation
    choices; candidates related by a lattice automorphism fixing the chain
    assignment are identified.
    """
    _require_slim_semimodular(lattice)
    if lattice.size == 1:
        only = (lattice.bottom,)
        return (BorderedDiagram(lattice, only, only),)
    nar = narrows(lattice)
    options = []
    for lo, hi in zip(nar, nar[1:]):
        u, v = _component_chain_pair(lattice, lo, hi)
        options.append([(u, v)] if u == v else [(u, v), (v, u)])

    candidates = []
    for combo in itertools.product(*options):
        left: list[int] = [lattice.bottom]
        right: list[int] = [lattice.bottom]
        for u, v in combo:
            left.extend(u[1:])
            right.extend(v[1:])
        candidates.append(BorderedDiagram(lattice, tuple(left), tuple(right)))
    candidates.sort(key=lambda d: (d.left_chain, d.right_chain))

    autos = automorphisms(lattice)
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    reps = []
    for d in candidates:
        if (d.left_chain, d.right_chain) in seen:
            continue
        reps.append(d)
        for gamma in autos:
            seen.add((tuple(gamma[x] for x in d.left_chain),
                      tuple(gamma[x] for x in d.right_chain)))
    return tuple(reps)


def diagram_count(lattice: FiniteLattice) -> int:
    """|diagrams_of(lattice)|; equals the class size of any of its permutations."""
    return len(diagrams_of(lattice))


def boundarily_similar(d1: BorderedDiagram, d2: BorderedDiagram) -> bool:
    """True iff some lattice isomorphism maps left chain to left chain and
    right chain to right chain."""
    if len(d1.left_chain) != len(d2.left_chain):
        return False
    pinned: dict[int, int] = {}
    for x, y in itertools.chain(zip(d1.left_chain, d2.left_chain),
                                zip(d1.right_chain, d2.right_chain)):
        if pinned.setdefault(x, y) != y:
            return False
    for _ in _search_isomorphisms(d1.lattice, d2.lattice, pinned=pinned, limit=1):
        return True
    return False


def class_of_diagram(diagram: BorderedDiagram) -> frozenset[Permutation]:
    """The equivalence class realized by all diagrams of the same lattice."""
    return rho_class(extract_permutation(diagram))
