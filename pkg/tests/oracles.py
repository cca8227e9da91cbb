"""Brute-force reference implementations used by the tests.

Each oracle is written from the definition, sharing no code with the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def floor_root(x: int, k: int) -> int:
    """Largest r with r**k <= x, by bisection on Python ints."""
    lo, hi = 0, 1
    while hi**k <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k <= x:
            lo = mid
        else:
            hi = mid
    return lo


def floor_power(n: int, alpha: Fraction) -> int:
    """floor(n**(p/q)) = floor_root(n**p, q)."""
    return floor_root(n**alpha.numerator, alpha.denominator)


def convolve(f, g, n):
    return max(min(f[i], g[n - i]) for i in range(n + 1))


def running_max(vals):
    out, m = [], None
    for v in vals:
        m = v if m is None else max(m, v)
        out.append(m)
    return out


def cyclic_tensor(i, j):
    """R/x^i (x) R/x^j = R/x^min(i, j), as a list of orders."""
    return [min(i, j)] if min(i, j) > 0 else []


def module_tensor(m, n):
    """(free, torsion) pairs; bilinearity over summands."""
    fm, tm = m
    fn, tn = n
    tors = []
    for a in tm:
        for b in tn:
            tors += cyclic_tensor(a, b)
    tors += list(tm) * fn + list(tn) * fm
    return fm * fn, sorted(tors, reverse=True)


def module_tor1(m, n):
    tors = []
    for a in m[1]:
        for b in n[1]:
            tors += cyclic_tensor(a, b)
    return 0, sorted(tors, reverse=True)


def kunneth(hx, hy, n):
    """H_n of a tensor product of split complexes given as {degree: (free, torsion)}."""
    free, tors = 0, []
    for i, mi in hx.items():
        for j, mj in hy.items():
            if i + j == n:
                f, t = module_tensor(mi, mj)
            elif i + j == n - 1:
                f, t = module_tor1(mi, mj)
            else:
                continue
            free += f
            tors += t
    return free, sorted(tors, reverse=True)


def downsets(elements, le):
    """All down-sets by brute force over subsets."""
    out = []
    for bits in product((0, 1), repeat=len(elements)):
        s = {e for e, b in zip(elements, bits) if b}
        if all(x in s for y in s for x in elements if le(x, y)):
            out.append(frozenset(s))
    return out


def prime_ideals(elements, le, meet, join):
    top = [x for x in elements if all(le(y, x) for y in elements)][0]
    out = []
    for s in downsets(elements, le):
        if not s or top in s:
            continue
        if any(join(a, b) not in s for a in s for b in s):
            continue
        if all(a in s or b in s for a in elements for b in elements if meet(a, b) in s):
            out.append(s)
    return out
