"""Exact integer helpers: roots and rational powers."""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2


def iroot(y: int, q: int) -> int:
    """Floor of the q-th root of a natural number."""
    if y < 0 or q < 1:
        raise ValueError("iroot needs y >= 0 and q >= 1")
    if q == 1:
        return y
    return int(gmpy2.iroot(y, q)[0])


def ceil_root(y: int, q: int) -> int:
    r = iroot(y, q)
    return r if r**q == y else r + 1


def perfect_power_base(b: int) -> tuple[int, int]:
    """Write b = c**t with t maximal and return (c, t)."""
    if b < 2:
        raise ValueError("base must be at least 2")
    for t in range(b.bit_length(), 1, -1):
        c = iroot(b, t)
        if c >= 2 and c**t == b:
            return c, t
    return b, 1


def pow_frac_upper(b: int, e: Fraction) -> Fraction:
    """A rational number >= b**e, exact when b**e is rational."""
    e = Fraction(e)
    if e.denominator == 1:
        return Fraction(b) ** e.numerator
    if e < 0:
        return 1 / pow_frac_lower(b, -e)
    return Fraction(ceil_root(b**e.numerator, e.denominator))


def pow_frac_lower(b: int, e: Fraction) -> Fraction:
    """A positive rational number <= b**e, exact when b**e is rational."""
    e = Fraction(e)
    if e.denominator == 1:
        return Fraction(b) ** e.numerator
    if e < 0:
        return 1 / pow_frac_upper(b, -e)
    p, q = e.numerator, e.denominator
    # scale by 2**(q*m) to get m binary digits below the point
    for m in (16, 64, 256, 1024):
        r = iroot(b**p << (q * m), q)
        val = Fraction(r, 1 << m)
        if val > 0 and (e == 0 or val > 1):
            return val
    return Fraction(1)


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def log2_ceil(x: int) -> int:
    """Smallest t with 2**t >= x, for x >= 1."""
    return max(0, (x - 1).bit_length())


def ilog_ceil(base: int, x: Fraction) -> int:
    """Smallest integer t with base**t >= x (x > 0)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    t = 0
    if x > 1:
        t = max(0, math.floor(math.log(float(x), base)) - 1) if x < 2**1000 else 0
        while Fraction(base) ** t < x:
            t += 1
        return t
    while Fraction(base) ** (t - 1) >= x:
        t -= 1
    return t
