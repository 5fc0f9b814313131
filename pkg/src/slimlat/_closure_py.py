"""Pure-Python join-congruence closure on a square grid.

Reference implementation of the kernel in slimlat._closure; both must
produce identical labelings.  Elements of the (n+1) x (n+1) grid are flat
indices e = i*(n+1) + j, the join is the coordinatewise maximum.

The closure is the smallest equivalence containing the generator pairs and
compatible with joins.  Union-find with a worklist: whenever two blocks
actually merge through a pair (x, y), the translated pairs (x∨z, y∨z) for
every z are enqueued.  Chains of merges compose transitively, so translating
only the pairs that cause a merge is enough, and the partition can only
coarsen, so the loop terminates.
"""
from __future__ import annotations

from typing import Iterable


def closure_labels(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Block labels of the generated join-congruence, in canonical form
    (blocks numbered by first occurrence in flat element order)."""
    m = n + 1
    nelem = m * m
    parent = list(range(nelem))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    stack = [(x, y) for x, y in pairs]
    while stack:
        x, y = stack.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        ix, jx = divmod(x, m)
        iy, jy = divmod(y, m)
        for iz in range(m):
            for jz in range(m):
                a = (ix if ix > iz else iz) * m + (jx if jx > jz else jz)
                b = (iy if iy > iz else iz) * m + (jy if jy > jz else jz)
                if a != b and find(a) != find(b):
                    stack.append((a, b))

    labels = [-1] * nelem
    root_label: dict[int, int] = {}
    for e in range(nelem):
        r = find(e)
        if r not in root_label:
            root_label[r] = len(root_label)
        labels[e] = root_label[r]
    return labels
