# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contract as :mod:`fcompat._pykernels`.

Coefficients are handled as C ``long long`` (p < 2**31 keeps every product
below 2**62); packed monomials stay Python ints because their width depends
on the number of variables.
"""

from heapq import heapify, heappop, heappush


cdef inline long long _mod(long long a, long long p):
    a %= p
    if a < 0:
        a += p
    return a


def poly_add(dict f, dict g, long long p):
    cdef long long v
    if len(f) < len(g):
        f, g = g, f
    cdef dict out = dict(f)
    for m, c in g.items():
        old = out.get(m)
        if old is None:
            out[m] = c
        else:
            v = _mod(<long long>old + <long long>c, p)
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def poly_sub_scaled(dict f, dict g, long long c, shift, long long p):
    cdef long long v
    cdef dict out = dict(f)
    for m, gc in g.items():
        nm = m + shift
        v = _mod(<long long>out.get(nm, 0) - c * <long long>gc, p)
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def poly_scale(dict f, long long c, shift, long long p):
    c = _mod(c, p)
    if c == 0:
        return {}
    return {m + shift: _mod(<long long>v * c, p) for m, v in f.items()}


def poly_mul(dict f, dict g, long long p):
    cdef long long cf, cg
    cdef dict out = {}
    if len(f) < len(g):
        f, g = g, f
    cdef list fitems = list(f.items())
    for mg, og in g.items():
        cg = og
        for mf, of in fitems:
            cf = of
            m = mf + mg
            out[m] = _mod(<long long>out.get(m, 0) + cf * cg, p)
    return {m: c for m, c in out.items() if c}


def reduce_full(dict f, list leads, list tails, guard, long long p):
    cdef dict work = dict(f)
    cdef list heap = [-m for m in work]
    cdef dict rem = {}
    cdef long long c, tc, v, steps = 0
    cdef Py_ssize_t i, nb = len(leads)
    cdef bint hit
    heapify(heap)
    while heap:
        m = -heappop(heap)
        o = work.pop(m, 0)
        c = o
        if c == 0:
            continue
        mg = m | guard
        hit = False
        for i in range(nb):
            lead = leads[i]
            if (mg - lead) & guard == guard:
                shift = m - lead
                for tm, otc in <list>tails[i]:
                    tc = otc
                    nm = tm + shift
                    old = work.get(nm)
                    if old is None:
                        work[nm] = _mod(-c * tc, p)
                        heappush(heap, -nm)
                    else:
                        v = _mod(<long long>old - c * tc, p)
                        if v:
                            work[nm] = v
                        else:
                            del work[nm]
                steps += 1
                hit = True
                break
        if not hit:
            rem[m] = c
    return rem, steps


def divides(a, b, guard):
    return ((b | guard) - a) & guard == guard
