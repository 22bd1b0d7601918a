"""Pure-Python hot kernels on packed sparse polynomials.

A polynomial here is a plain ``dict`` mapping packed monomials (see
:class:`fcompat.poly.MonomialCodec`) to nonzero coefficients in ``[0, p)``.
Packed monomials compare like the term order, multiply by integer addition
and test divisibility with one masked subtraction against ``guard``.

The compiled module ``_ckernels`` exports the same functions with the same
semantics; :mod:`fcompat.kernels` picks one at import time.
"""

from heapq import heapify, heappop, heappush


def poly_add(f, g, p):
    """Return f + g."""
    if len(f) < len(g):
        f, g = g, f
    out = dict(f)
    for m, c in g.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v = (v + c) % p
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def poly_sub_scaled(f, g, c, shift, p):
    """Return f - c * x^shift * g."""
    out = dict(f)
    for m, gc in g.items():
        nm = m + shift
        v = (out.get(nm, 0) - c * gc) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def poly_scale(f, c, shift, p):
    """Return c * x^shift * f."""
    if c % p == 0:
        return {}
    return {m + shift: (v * c) % p for m, v in f.items()}


def poly_mul(f, g, p):
    """Return f * g."""
    if len(f) < len(g):
        f, g = g, f
    out = {}
    get = out.get
    for mg, cg in g.items():
        for mf, cf in f.items():
            m = mf + mg
            out[m] = (get(m, 0) + cf * cg) % p
    return {m: c for m, c in out.items() if c}


def reduce_full(f, leads, tails, guard, p):
    """Fully reduce f modulo a monic basis.

    ``leads[i]`` is the packed leading monomial of basis element i and
    ``tails[i]`` its remaining terms as ``(monomial, coefficient)`` pairs.
    Returns ``(remainder, steps)`` where steps counts reduction steps.
    """
    work = dict(f)
    heap = [-m for m in work]
    heapify(heap)
    rem = {}
    steps = 0
    nb = len(leads)
    while heap:
        m = -heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        for i in range(nb):
            lead = leads[i]
            if (mg - lead) & guard == guard:
                shift = m - lead
                for tm, tc in tails[i]:
                    nm = tm + shift
                    old = work.get(nm)
                    if old is None:
                        work[nm] = (-c * tc) % p
                        heappush(heap, -nm)
                    else:
                        v = (old - c * tc) % p
                        if v:
                            work[nm] = v
                        else:
                            del work[nm]
                steps += 1
                break
        else:
            rem[m] = c
    return rem, steps


def divides(a, b, guard):
    """True when monomial a divides monomial b."""
    return ((b | guard) - a) & guard == guard
