# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernel.

Literal transcription of _core_py.rref_ints with typed indices; the integer
arithmetic itself stays exact (Python bignums), the win is loop and indexing
overhead on the large structured matrices produced by the cochain calculus.
"""

from math import gcd


cdef void _reduce_row(list row, Py_ssize_t lead, Py_ssize_t ncols):
    cdef Py_ssize_t i
    cdef object g = 0
    cdef object x
    for i in range(ncols):
        x = row[i]
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g == 0:
        return
    if row[lead] < 0:
        g = -g
    if g != 1:
        for i in range(ncols):
            row[i] = row[i] // g


def rref_ints(list rows, Py_ssize_t ncols):
    """Integer Gauss-Jordan; same contract as the pure backend."""
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list pivots = []
    cdef list prow, row
    cdef object a, b, pj
    for c in range(ncols):
        p = -1
        for i in range(r, m):
            if (<list>rows[i])[c]:
                p = i
                break
        if p < 0:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = <list>rows[r]
        _reduce_row(prow, c, ncols)
        a = prow[c]
        for i in range(m):
            if i == r:
                continue
            row = <list>rows[i]
            b = row[c]
            if not b:
                continue
            for j in range(ncols):
                pj = prow[j]
                if pj:
                    row[j] = a * row[j] - b * pj
                else:
                    row[j] = a * row[j]
            _reduce_row(row, c, ncols)
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows[:r], pivots
