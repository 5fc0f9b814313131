"""Permutations of {1, ..., n}, their segments, and the inversion equivalence.

Permutations are kept in one-line notation with 1-based values: the tuple
``(s(1), ..., s(n))``.  An interval ``I`` of the domain is *closed* under a
permutation ``s`` when ``s(I) = I``; it is a *section* when ``I`` and the two
flanks ``{1..min(I)-1}`` and ``{max(I)+1..n}`` are all closed.  The minimal
sections are the *segments*, and they partition the domain.

Two permutations are equivalent here (``rho_equivalent``) when they have the
same segments and, on each segment, one restriction is the other or its
inverse.  Classes of this equivalence are what the :mod:`slimlat.grid` and
:mod:`slimlat.extract` constructions classify.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DuplicateValue(ValueError):
    """A value occurs twice in one-line notation."""


class OutOfRange(ValueError):
    """A value in one-line notation falls outside {1..n}."""


class LengthMismatch(ValueError):
    """Two permutations that must share a domain have different sizes."""


class TooLarge(ValueError):
    """Requested exhaustive enumeration beyond the configured cap."""


class IntervalOutOfRange(ValueError):
    """An interval argument is not an interval of {1..n}."""


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation (n = 0 is allowed).

    >>> s = Permutation((2, 3, 1))
    >>> s(1), s(3)
    (2, 1)
    >>> s.inverse().images
    (3, 1, 2)
    >>> Permutation((1, 1, 3))
    Traceback (most recent call last):
        ...
    slimlat.perm.DuplicateValue: value 1 appears more than once
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        seen = [False] * n
        for v in self.images:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise OutOfRange(f"value {v} outside 1..{n}")
            if seen[v - 1]:
                raise DuplicateValue(f"value {v} appears more than once")
            seen[v - 1] = True

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise OutOfRange(f"argument {i} outside 1..{self.n}")
        return self.images[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def restrict(self, lo: int, hi: int) -> "Permutation":
        """The restriction to a closed interval {lo..hi}, reindexed to {1..hi-lo+1}.

        >>> Permutation((1, 3, 2)).restrict(2, 3).images
        (2, 1)
        """
        if not (1 <= lo and hi <= self.n and lo <= hi):
            raise IntervalOutOfRange(f"{lo}..{hi} is not a nonempty interval of 1..{self.n}")
        if not is_closed(self, range(lo, hi + 1)):
            raise ValueError(f"{lo}..{hi} is not closed under {self.images}")
        return Permutation(tuple(self.images[i - 1] - lo + 1 for i in range(lo, hi + 1)))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles sorted by their minima, fixed points omitted.

        >>> Permutation((2, 3, 1, 4, 6, 7, 5)).cycles()
        ((1, 2, 3), (5, 6, 7))
        """
        out = []
        seen = [False] * self.n
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = []
            i = start
            while not seen[i - 1]:
                seen[i - 1] = True
                cyc.append(i)
                i = self.images[i - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


@dataclass(frozen=True)
class SegmentPartition:
    """An ordered partition of {1..n} into consecutive intervals."""

    segments: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        expect = 1
        for seg in self.segments:
            if not seg or seg[0] != expect or list(seg) != list(range(seg[0], seg[-1] + 1)):
                raise ValueError(f"segments {self.segments} do not tile 1..n consecutively")
            expect = seg[-1] + 1

    @property
    def n(self) -> int:
        return self.segments[-1][-1] if self.segments else 0

    def bounds(self) -> tuple[tuple[int, int], ...]:
        """Each segment as an inclusive (lo, hi) pair."""
        return tuple((seg[0], seg[-1]) for seg in self.segments)

    def maxima(self) -> tuple[int, ...]:
        return tuple(seg[-1] for seg in self.segments)


def validate(images: Iterable[int]) -> Permutation:
    """Check one-line notation and wrap it; raises DuplicateValue / OutOfRange.

    >>> validate([2, 1]).inverse().images
    (2, 1)
    """
    return Permutation(tuple(images))


def is_closed(sigma: Permutation, interval: Iterable[int]) -> bool:
    """True iff sigma maps the interval into itself; the empty interval is closed.

    >>> is_closed(Permutation((1, 7, 4, 5, 3, 6, 2, 9, 8)), range(2, 8))
    True
    >>> is_closed(Permutation((2, 3, 1)), [1])
    False
    """
    members = sorted(interval)
    if not members:
        return True
    lo, hi = members[0], members[-1]
    if lo < 1 or hi > sigma.n:
        raise IntervalOutOfRange(f"{members} not within 1..{sigma.n}")
    if members != list(range(lo, hi + 1)):
        raise IntervalOutOfRange(f"{members} is not an interval")
    return all(lo <= sigma.images[i - 1] <= hi for i in members)


def segments(sigma: Permutation) -> SegmentPartition:
    """The partition of {1..n} into minimal sections of sigma.

    A prefix {1..k} of a bijection is closed iff max(s(1..k)) == k, and then it
    is automatically closed under the inverse as well, so one running-maximum
    scan finds every cut point.

    >>> segments(Permutation((1, 7, 4, 5, 3, 6, 2, 9, 8))).bounds()
    ((1, 1), (2, 7), (8, 9))
    >>> segments(Permutation((2, 3, 1))).bounds()
    ((1, 3),)
    """
    parts = []
    start = 1
    running = 0
    for k, v in enumerate(sigma.images, start=1):
        running = max(running, v)
        if running == k:
            parts.append(tuple(range(start, k + 1)))
            start = k + 1
    return SegmentPartition(tuple(parts))


def _restriction(images: Sequence[int], lo: int, hi: int) -> tuple[int, ...]:
    return tuple(images[i - 1] for i in range(lo, hi + 1))


def _restriction_inverse(images: Sequence[int], lo: int, hi: int) -> tuple[int, ...]:
    # positions of lo..hi; valid because the interval is closed
    inv = [0] * (hi - lo + 1)
    for i in range(lo, hi + 1):
        inv[images[i - 1] - lo] = i
    return tuple(inv)


def rho_equivalent(sigma: Permutation, mu: Permutation) -> bool:
    """True iff sigma and mu have the same segments and agree on each segment
    up to inversion.

    >>> s = Permutation((1, 7, 4, 5, 3, 6, 2, 9, 8))
    >>> rho_equivalent(s, s.inverse())
    True
    >>> rho_equivalent(Permutation((1, 2)), Permutation((2, 1)))
    False
    """
    if sigma.n != mu.n:
        raise LengthMismatch(f"sizes differ: {sigma.n} vs {mu.n}")
    segs = segments(sigma)
    if segs != segments(mu):
        return False
    for lo, hi in segs.bounds():
        fwd = _restriction(sigma.images, lo, hi)
        if _restriction(mu.images, lo, hi) not in (fwd, _restriction_inverse(sigma.images, lo, hi)):
            return False
    return True


def rho_class(sigma: Permutation) -> frozenset[Permutation]:
    """All members of sigma's class: every segment independently kept or inverted.

    >>> sorted(p.images for p in rho_class(Permutation((2, 3, 1))))
    [(2, 3, 1), (3, 1, 2)]
    >>> len(rho_class(Permutation((2, 1))))
    1
    """
    choices = []
    for lo, hi in segments(sigma).bounds():
        fwd = _restriction(sigma.images, lo, hi)
        bwd = _restriction_inverse(sigma.images, lo, hi)
        choices.append((fwd,) if fwd == bwd else (fwd, bwd))
    return frozenset(
        Permutation(tuple(itertools.chain.from_iterable(combo)))
        for combo in itertools.product(*choices)
    )


def canonical_rep(sigma: Permutation) -> Permutation:
    """The lexicographically least member of sigma's class.

    Segments occupy disjoint position blocks, so the global minimum is the
    segment-wise minimum of each restriction and its inverse.
    """
    pieces = []
    for lo, hi in segments(sigma).bounds():
        fwd = _restriction(sigma.images, lo, hi)
        pieces.append(min(fwd, _restriction_inverse(sigma.images, lo, hi)))
    return Permutation(tuple(itertools.chain.from_iterable(pieces)))


def is_canonical(sigma: Permutation) -> bool:
    return canonical_rep(sigma) == sigma


def _images_canonical(images: tuple[int, ...]) -> bool:
    # inlined segment scan + per-segment comparison against the inverse
    n = len(images)
    inv = [0] * n
    for i, v in enumerate(images, start=1):
        inv[v - 1] = i
    start = 0  # 0-based segment start
    running = 0
    for k in range(n):
        running = max(running, images[k])
        if running == k + 1:
            if images[start : k + 1] > tuple(inv[start : k + 1]):
                return False
            start = k + 1
    return True


def _iter_canonical_images(n: int) -> Iterator[tuple[int, ...]]:
    # itertools.permutations already yields in lexicographic order
    return filter(_images_canonical, itertools.permutations(range(1, n + 1)))


def _count_canonical_with_first(n: int, first: int) -> int:
    """Canonical representatives starting with a fixed value (worker-pool chunk)."""
    rest = [v for v in range(1, n + 1) if v != first]
    return sum(1 for tail in itertools.permutations(rest)
               if _images_canonical((first, *tail)))


def enumerate_reps(n: int, max_n: int = 9) -> list[Permutation]:
    """Canonical class representatives in lexicographic order."""
    if n < 0:
        raise OutOfRange("n must be nonnegative")
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration cap {max_n}")
    return [Permutation(images) for images in _iter_canonical_images(n)]


def count_classes(n: int, max_n: int = 9) -> int:
    """Number of equivalence classes in S_n; always at most n!.

    >>> [count_classes(n) for n in range(4)]
    [1, 1, 2, 5]
    """
    if n < 0:
        raise OutOfRange("n must be nonnegative")
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration cap {max_n}")
    return sum(1 for _ in _iter_canonical_images(n))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order (raw iteration helper)."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)
