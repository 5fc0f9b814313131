"""Composition series of finite cyclic groups of squarefree order.

Subgroups of a cyclic group of order N correspond to divisors of N, with
intersection as gcd and product as lcm, so everything here is exact divisor
arithmetic.  For pairwise distinct primes p_1..p_n and a permutation pi,
``csl_build`` fixes two composition series of the cyclic group of order
p_1...p_n: H is the prefix chain H_i = p_1 * ... * p_i, and K rearranges the
same primes so that, walking both series downward from the whole group, the
i-th step on the H side and the pi(i)-th step on the K side carry the same
prime.

The intersections gcd(H_i, K_j), ordered by divisibility, form a lattice
whose dual is slim and semimodular.  Bordered by the reversed H chain on the
left and the reversed K chain on the right, the dual extracts back exactly
pi, which is also the unique permutation matching factors of H to factors of
K of equal order (the classical refinement of counting composition factors).
The downward walk matches the bottom-up orientation of bordered diagrams:
the dual lattice starts at the whole group, so its i-th boundary step is the
i-th downward step of a series.

>>> inst = csl_build((2, 3), Permutation((2, 1)))
>>> inst.elements
(1, 2, 3, 6)
>>> jordan_holder_permutation(inst).images
(2, 1)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from slimlat.lattice import BorderedDiagram, FiniteLattice
from slimlat.perm import LengthMismatch, Permutation

_ORDER_CAP = 2 ** 63  # keep orders inside 64-bit machine integers


class DuplicatePrime(ValueError):
    """The same prime occurs twice."""


class NotPrime(ValueError):
    """A claimed prime is not prime."""


class Overflow(ValueError):
    """The group order would not fit a 64-bit machine integer."""


class FactorMismatch(ValueError):
    """The two requested composition steps have different prime quotients."""


@dataclass(frozen=True)
class CyclicCslInstance:
    """Two composition series of one cyclic group, given by their orders."""

    primes: tuple[int, ...]
    pi: Permutation
    h_orders: tuple[int, ...]
    k_orders: tuple[int, ...]
    elements: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.primes)

    @property
    def group_order(self) -> int:
        return self.h_orders[-1]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def first_primes(n: int) -> tuple[int, ...]:
    """The n smallest primes.

    >>> first_primes(5)
    (2, 3, 5, 7, 11)
    """
    out: list[int] = []
    p = 2
    while len(out) < n:
        if _is_prime(p):
            out.append(p)
        p += 1
    return tuple(out)


def csl_build(primes: Sequence[int], pi: Permutation) -> CyclicCslInstance:
    """The intersection lattice of the two composition series fixed by
    primes and pi."""
    primes = tuple(primes)
    if len(primes) != pi.n:
        raise LengthMismatch(f"{len(primes)} primes for a permutation of size {pi.n}")
    if len(set(primes)) != len(primes):
        raise DuplicatePrime(f"primes {primes} are not pairwise distinct")
    for p in primes:
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
    order = 1
    for p in primes:
        order *= p
        if order >= _ORDER_CAP:
            raise Overflow(f"group order exceeds {_ORDER_CAP}")

    h_orders = [1]
    for p in primes:
        h_orders.append(h_orders[-1] * p)
    # downward step i of H carries p_{n+1-i}; the j-th downward step of K must
    # repeat the prime of the pi^{-1}(j)-th downward step of H, which makes
    # the j-th upward step carry p_{n+1-pi^{-1}(n+1-j)}
    n = pi.n
    inv = pi.inverse()
    k_orders = [1]
    for j in range(1, n + 1):
        k_orders.append(k_orders[-1] * primes[n - inv(n + 1 - j)])
    elements = sorted({math.gcd(h, k) for h in h_orders for k in k_orders})
    return CyclicCslInstance(primes, pi, tuple(h_orders), tuple(k_orders),
                             tuple(elements))


def csl_lattice(inst: CyclicCslInstance) -> FiniteLattice:
    """The intersections ordered by divisibility; element k is inst.elements[k]."""
    return _divisor_lattice(inst.elements, reverse=False)


def csl_dual_diagram(inst: CyclicCslInstance) -> BorderedDiagram:
    """The order-reversed intersection lattice, bordered by the reversed
    H chain on the left and the reversed K chain on the right."""
    lattice = _divisor_lattice(inst.elements, reverse=True)
    index = {d: k for k, d in enumerate(inst.elements)}
    left = tuple(index[d] for d in reversed(inst.h_orders))
    right = tuple(index[d] for d in reversed(inst.k_orders))
    return BorderedDiagram(lattice, left, right)


def _divisor_lattice(divisors: Sequence[int], reverse: bool) -> FiniteLattice:
    def leq(a: int, b: int) -> bool:
        return a % b == 0 if reverse else b % a == 0

    m = len(divisors)
    covers = []
    for x in range(m):
        for y in range(m):
            if x != y and leq(divisors[x], divisors[y]):
                if not any(z != x and z != y
                           and leq(divisors[x], divisors[z])
                           and leq(divisors[z], divisors[y])
                           for z in range(m)):
                    covers.append((x, y))
    return FiniteLattice(m, covers)


def jordan_holder_permutation(inst: CyclicCslInstance) -> Permutation:
    """Match each downward step of H to the downward step of K with the same
    prime quotient; distinct primes make the matching unique.

    Computed from the stored orders alone; it coincides with the permutation
    extracted from the bordered dual diagram.
    """
    n = inst.n
    k_steps = {inst.k_orders[n + 1 - j] // inst.k_orders[n - j]: j
               for j in range(1, n + 1)}
    images = []
    for i in range(1, n + 1):
        p = inst.h_orders[n + 1 - i] // inst.h_orders[n - i]
        images.append(k_steps[p])
    return Permutation(tuple(images))


def projectivity_witness(inst: CyclicCslInstance, i: int, j: int) -> tuple[int, int]:
    """Divisors (x, y) witnessing that step i of H and step j of K are
    perspective: lcm with y climbs each step and gcd with y drops to x.

    Requires the two steps to carry the same prime; the four divisor
    identities are then checked outright.
    """
    if not (1 <= i <= inst.n and 1 <= j <= inst.n):
        raise IndexError(f"steps ({i}, {j}) outside 1..{inst.n}")
    p = inst.h_orders[i] // inst.h_orders[i - 1]
    q = inst.k_orders[j] // inst.k_orders[j - 1]
    if p != q:
        raise FactorMismatch(f"step primes differ: {p} vs {q}")
    x = math.gcd(inst.h_orders[i - 1], inst.k_orders[j - 1])
    y = p * x
    checks = (
        math.lcm(inst.h_orders[i - 1], y) == inst.h_orders[i],
        math.gcd(inst.h_orders[i - 1], y) == x,
        math.lcm(inst.k_orders[j - 1], y) == inst.k_orders[j],
        math.gcd(inst.k_orders[j - 1], y) == x,
    )
    if not all(checks):
        raise RuntimeError(f"witness equations failed for steps ({i}, {j}): {checks}")
    return x, y
