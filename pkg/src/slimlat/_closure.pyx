# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled join-congruence closure on a square grid.

Same algorithm and same canonical output as slimlat._closure_py; see that
module for the correctness argument.  This is the hot loop of every grid
quotient, so it runs on flat C arrays.
"""
from libc.stdlib cimport free, malloc


cdef inline int find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def closure_labels(int n, pairs):
    """Block labels of the generated join-congruence, in canonical form."""
    cdef int m = n + 1
    cdef int nelem = m * m
    cdef Py_ssize_t npairs = len(pairs)
    # every effective union pushes at most nelem translated pairs
    cdef Py_ssize_t cap = npairs + (<Py_ssize_t> nelem) * nelem + 1
    cdef int* parent = <int*> malloc(nelem * sizeof(int))
    cdef int* qx = <int*> malloc(cap * sizeof(int))
    cdef int* qy = <int*> malloc(cap * sizeof(int))
    cdef int* root_label = <int*> malloc(nelem * sizeof(int))
    if parent == NULL or qx == NULL or qy == NULL or root_label == NULL:
        free(parent); free(qx); free(qy); free(root_label)
        raise MemoryError()

    cdef Py_ssize_t sp = 0, k
    cdef int x, y, rx, ry, ix, jx, iy, jy, iz, jz, a, b, e, r, nxt
    try:
        for e in range(nelem):
            parent[e] = e
        for k in range(npairs):
            x, y = pairs[k]
            if not (0 <= x < nelem and 0 <= y < nelem):
                raise IndexError(f"element {x if not 0 <= x < nelem else y} outside grid")
            qx[sp] = x
            qy[sp] = y
            sp += 1

        while sp > 0:
            sp -= 1
            x = qx[sp]
            y = qy[sp]
            rx = find(parent, x)
            ry = find(parent, y)
            if rx == ry:
                continue
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry
            ix = x // m
            jx = x % m
            iy = y // m
            jy = y % m
            for iz in range(m):
                for jz in range(m):
                    a = (ix if ix > iz else iz) * m + (jx if jx > jz else jz)
                    b = (iy if iy > iz else iz) * m + (jy if jy > jz else jz)
                    if a != b and find(parent, a) != find(parent, b):
                        qx[sp] = a
                        qy[sp] = b
                        sp += 1

        labels = [0] * nelem
        for e in range(nelem):
            root_label[e] = -1
        nxt = 0
        for e in range(nelem):
            r = find(parent, e)
            if root_label[r] < 0:
                root_label[r] = nxt
                nxt += 1
            labels[e] = root_label[r]
        return labels
    finally:
        free(parent)
        free(qx)
        free(qy)
        free(root_label)
