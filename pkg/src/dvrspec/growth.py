"""Closed-form growth envelopes.

An envelope records ``lo * L(n) <= f(n) <= hi * U(n)`` for all ``n >= n0``
where ``L`` and ``U`` are canonical growth functions:

* ZERO        n -> 0
* BOUNDED     n -> 1
* POLY(a)     n -> n**a                    (a > 0 rational)
* EXP(b, r)   n -> (b**r)**n               (b >= 2 not a perfect power, r > 0)
* FACT(a, j)  n -> floor(a*n + j)!         (a > 0, j rational)

Every rule below is an elementary inequality; all constants are exact
rationals, so the witnesses built from them can be trusted as proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import seqcore as sc
from .intmath import ceil_frac, ceil_root, iroot, perfect_power_base, pow_frac_lower, pow_frac_upper

ZERO, BOUNDED, POLY, EXP, FACT = range(5)
KIND_NAMES = {ZERO: "zero", BOUNDED: "bounded", POLY: "poly", EXP: "exp", FACT: "fact"}


@dataclass(frozen=True)
class Canon:
    kind: int
    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def describe(self) -> str:
        if self.kind == POLY:
            return f"n^{self.p}"
        if self.kind == EXP:
            return f"({self.p}^{self.q})^n"
        if self.kind == FACT:
            return f"floor({self.p}n + {self.q})!"
        return KIND_NAMES[self.kind]

    def domain(self) -> int:
        """First n where the canonical function is defined and positive."""
        if self.kind == POLY:
            return 1
        if self.kind == FACT:
            a, j = self.p, self.q
            return 0 if j >= 0 else ceil_frac(-j / a)
        return 0


CZERO = Canon(ZERO)
CBOUNDED = Canon(BOUNDED)


def cpoly(a) -> Canon:
    a = Fraction(a)
    return CBOUNDED if a == 0 else Canon(POLY, a)


def cexp(b: int, r=Fraction(1)) -> Canon:
    c, t = perfect_power_base(b)
    return Canon(EXP, Fraction(c), Fraction(r) * t)


def cfact(a=Fraction(1), j=Fraction(0)) -> Canon:
    return Canon(FACT, Fraction(a), Fraction(j))


@dataclass(frozen=True)
class Envelope:
    lower: Canon
    lo: Fraction
    upper: Canon
    hi: Fraction
    n0: int

    def __post_init__(self):
        n0 = max(self.n0, self.lower.domain(), self.upper.domain(), 0)
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))


# ---------------------------------------------------------------- comparisons of canonical functions


def _exp_cmp(c1: Canon, c2: Canon) -> int | None:
    """Sign of b1**r1 - b2**r2, or None if it cannot be settled cheaply."""
    b1, r1, b2, r2 = int(c1.p), c1.q, int(c2.p), c2.q
    if b1 == b2:
        return (r1 > r2) - (r1 < r2)
    l1 = float(r1) * math.log2(b1)
    l2 = float(r2) * math.log2(b2)
    if abs(l1 - l2) > 1e-9 * max(l1, l2, 1.0):
        return 1 if l1 > l2 else -1
    # b1**(p1*q2) vs b2**(p2*q1); distinct reduced bases never tie
    e1 = r1.numerator * r2.denominator
    e2 = r2.numerator * r1.denominator
    if max(e1, e2) > 100_000:
        return None
    x, y = b1**e1, b2**e2
    return (x > y) - (x < y)


def _poly_exp_constant(alpha: Fraction, ce: Canon) -> Fraction | None:
    """C with n**alpha <= C * (b**r)**n for n >= 1."""
    d = ceil_frac(alpha)
    beta = pow_frac_lower(int(ce.p), ce.q)
    if beta <= 1:
        return None
    # ((n+1)/n)**d <= beta from some N on; past it n**d / beta**n decreases
    def ok(n):
        return Fraction(n + 1, n) ** d <= beta

    hi = 1
    while not ok(hi):
        hi *= 2
        if hi > 1 << 22:
            return None
    lo = max(1, hi // 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    best, bp = Fraction(0), Fraction(1)
    for n in range(1, hi + 1):
        bp *= beta
        best = max(best, Fraction(n**d) / bp)
    return Fraction(ceil_frac(best)) if best > 0 else Fraction(1)


def _exp_fact_constant(ce: Canon, cf: Canon) -> Fraction | None:
    """C with (b**r)**n <= C * floor(a*n+j)! on the factorial's domain."""
    b, r = int(ce.p), ce.q
    a, j = cf.p, cf.q
    g = r / a  # gamma = b**g
    # B**B / B! grows like e**B, so keep B small
    if float(g) * math.log2(b) > 12:
        return None
    B = max(1, ceil_root(b**g.numerator, g.denominator))
    cb = Fraction(B**B, math.factorial(B))
    return cb * pow_frac_upper(b, g * (1 - j))


def dominated(h1: Canon, h2: Canon) -> tuple[Fraction, int] | None:
    """Return (C, n1) with h1(n) <= C*h2(n) for all n >= n1, if known."""
    k1, k2 = h1.kind, h2.kind
    if k1 == ZERO:
        return Fraction(1), 0
    if k2 == ZERO:
        return None
    if k1 == BOUNDED:
        return Fraction(1), h2.domain()
    if k1 > k2:
        return None
    if k1 == POLY:
        if k2 == POLY:
            return (Fraction(1), 1) if h1.p <= h2.p else None
        if k2 == EXP:
            c = _poly_exp_constant(h1.p, h2)
            return None if c is None else (c, 1)
        mid = cexp(2)
        r1, r2 = dominated(h1, mid), dominated(mid, h2)
        if r1 is None or r2 is None:
            return None
        return r1[0] * r2[0], max(r1[1], r2[1])
    if k1 == EXP:
        if k2 == EXP:
            s = _exp_cmp(h1, h2)
            return (Fraction(1), 0) if s is not None and s <= 0 else None
        c = _exp_fact_constant(h1, h2)
        return None if c is None else (c, h2.domain())
    # both factorial-type
    a1, j1, a2, j2 = h1.p, h1.q, h2.p, h2.q
    n1 = max(h1.domain(), h2.domain())
    if a1 == a2:
        return (Fraction(1), n1) if j1 <= j2 else None
    if a1 < a2:
        return Fraction(1), max(n1, ceil_frac((j1 - j2) / (a2 - a1)))
    return None


def strictly_greater(h1: Canon, h2: Canon) -> bool:
    """True when h1(n) / h2(n) tends to infinity (h2 = 0 counts)."""
    k1, k2 = h1.kind, h2.kind
    if k1 != k2:
        return k1 > k2
    if k1 in (ZERO, BOUNDED):
        return False
    if k1 == POLY:
        return h1.p > h2.p
    if k1 == EXP:
        return _exp_cmp(h1, h2) == 1
    return h1.p > h2.p or (h1.p == h2.p and h1.q - h2.q >= 1)


# ---------------------------------------------------------------- operator rules


def _sigma_canon(c: Canon, k: int, side: str) -> tuple[Canon, Fraction]:
    if c.kind == POLY:
        if side == "hi":
            return c, Fraction(1 + k) ** ceil_frac(c.p)
        return c, Fraction(1)
    if c.kind == EXP:
        e = c.q * k
        b = int(c.p)
        return c, pow_frac_upper(b, e) if side == "hi" else pow_frac_lower(b, e)
    if c.kind == FACT:
        return Canon(FACT, c.p, c.q + c.p * k), Fraction(1)
    return c, Fraction(1)


def sigma_env(e: Envelope, k: int) -> Envelope:
    if k == 0:
        return e
    lc, lf = _sigma_canon(e.lower, k, "lo")
    uc, uf = _sigma_canon(e.upper, k, "hi")
    return Envelope(lc, e.lo * lf, uc, e.hi * uf, max(e.n0 - k, 0))


def _mu_canon(c: Canon, k: int, side: str) -> tuple[Canon, Fraction]:
    if c.kind == POLY:
        e = c.p * k
        return c, pow_frac_upper(2, e) if side == "hi" else pow_frac_lower(2, e)
    if c.kind == EXP:
        return Canon(EXP, c.p, c.q * (1 << k)), Fraction(1)
    if c.kind == FACT:
        return Canon(FACT, c.p * (1 << k), c.q), Fraction(1)
    return c, Fraction(1)


def mu_env(e: Envelope, k: int) -> Envelope:
    if k == 0:
        return e
    lc, lf = _mu_canon(e.lower, k, "lo")
    uc, uf = _mu_canon(e.upper, k, "hi")
    n0 = -(-e.n0 // (1 << k))
    return Envelope(lc, e.lo * lf, uc, e.hi * uf, n0)


def _split_canon(c: Canon, side: str) -> tuple[Canon, Fraction]:
    # m = floor(n/2) lies in [(n-1)/2, n/2]; for n >= 2, (n-1)/2 >= n/4
    if c.kind == POLY:
        if side == "hi":
            return c, pow_frac_upper(2, -c.p)
        return c, pow_frac_lower(2, -2 * c.p)
    if c.kind == EXP:
        b = int(c.p)
        nc = Canon(EXP, c.p, c.q / 2)
        return nc, Fraction(1) if side == "hi" else pow_frac_lower(b, -c.q / 2)
    if c.kind == FACT:
        if side == "hi":
            return Canon(FACT, c.p / 2, c.q), Fraction(1)
        return Canon(FACT, c.p / 2, c.q - c.p / 2), Fraction(1)
    return c, Fraction(1)


def split_env(e: Envelope) -> Envelope:
    lc, lf = _split_canon(e.lower, "lo")
    uc, uf = _split_canon(e.upper, "hi")
    return Envelope(lc, e.lo * lf, uc, e.hi * uf, max(2 * e.n0, 2))


def _larger_lower(a: Envelope, b: Envelope) -> tuple[Canon, Fraction, int]:
    """A valid lower bound for anything that is >= both a and b."""
    if dominated(a.lower, b.lower) is not None:
        return b.lower, b.lo, 0
    return a.lower, a.lo, 0


def _covering_upper(a: Envelope, b: Envelope, combine) -> tuple[Canon, Fraction, int] | None:
    r = dominated(b.upper, a.upper)
    if r is not None:
        c, n1 = r
        return a.upper, combine(a.hi, b.hi * c), n1
    r = dominated(a.upper, b.upper)
    if r is not None:
        c, n1 = r
        return b.upper, combine(b.hi, a.hi * c), n1
    return None


def sum_env(a: Envelope, b: Envelope, is_max: bool) -> Envelope | None:
    lc, lo, _ = _larger_lower(a, b)
    up = _covering_upper(a, b, max if is_max else (lambda x, y: x + y))
    if up is None:
        return None
    uc, hi, n1 = up
    return Envelope(lc, lo, uc, hi, max(a.n0, b.n0, n1))


def meet_env(a: Envelope, b: Envelope) -> Envelope | None:
    # lower: the smaller of the two lowers, constant adjusted
    r = dominated(a.lower, b.lower)
    if r is not None:
        c, n1 = r
        lc, lo = a.lower, min(a.lo, b.lo / c)
    else:
        r = dominated(b.lower, a.lower)
        if r is None:
            return None
        c, n1 = r
        lc, lo = b.lower, min(b.lo, a.lo / c)
    if lc.kind == ZERO:
        lo = Fraction(1)
    # upper: min <= either one; pick the smaller
    if dominated(a.upper, b.upper) is not None:
        uc, hi = a.upper, a.hi
    else:
        uc, hi = b.upper, b.hi
    return Envelope(lc, lo, uc, hi, max(a.n0, b.n0, n1))


# ---------------------------------------------------------------- envelope of an expression


def envelope(f: sc.SeqExpr) -> Envelope | None:
    """Exact growth envelope of ``f``, or None when ``f`` is outside the closed family."""
    cached = _ENV_CACHE.get(f)
    if cached is not None or f in _ENV_CACHE:
        return cached
    try:
        e = _envelope(f)
    except (ValueError, OverflowError, ZeroDivisionError):
        e = None
    if len(_ENV_CACHE) < 10_000:
        _ENV_CACHE[f] = e
    return e


_ENV_CACHE: dict = {}


def _envelope(f):
    one = Fraction(1)
    if isinstance(f, sc.Zero):
        return Envelope(CZERO, one, CZERO, one, 0)
    if isinstance(f, sc.Const):
        return Envelope(CBOUNDED, f.c, CBOUNDED, f.c, 0)
    if isinstance(f, sc.Poly):
        if f.degree == 0:
            c = f.coeffs[0]
            return Envelope(CBOUNDED, c, CBOUNDED, c, 0)
        return Envelope(cpoly(f.degree), f.coeffs[-1], cpoly(f.degree), sum(f.coeffs), 1)
    if isinstance(f, sc.PowerFloor):
        if f.alpha == 0:
            return Envelope(CBOUNDED, one, CBOUNDED, one, 0)
        # floor(x) >= x/2 once x >= 1
        return Envelope(cpoly(f.alpha), Fraction(1, 2), cpoly(f.alpha), one, 1)
    if isinstance(f, sc.Exp):
        c = cexp(f.base)
        return Envelope(c, one, c, one, 0)
    if isinstance(f, sc.Factorial):
        c = cfact()
        return Envelope(c, one, c, one, 0)
    if isinstance(f, sc.WindowExt):
        if f.tail != sc.HOLD_LAST:
            return None
        last = f.values[-1]
        n0 = len(f.values) - 1
        if last == 0:
            return Envelope(CZERO, one, CZERO, one, n0)
        return Envelope(CBOUNDED, last, CBOUNDED, last, n0)
    if isinstance(f, sc.SigmaShift):
        e = envelope(f.of)
        return None if e is None else sigma_env(e, f.k)
    if isinstance(f, sc.MuDilate):
        e = envelope(f.of)
        return None if e is None else mu_env(e, f.k)
    if isinstance(f, sc.SplitStretch):
        e = envelope(f.of)
        return None if e is None else split_env(e)
    if isinstance(f, sc.Scale):
        e = envelope(f.of)
        if e is None:
            return None
        return Envelope(e.lower, e.lo * f.a, e.upper, e.hi * f.a, e.n0)
    if isinstance(f, (sc.Sum, sc.Join, sc.Meet)):
        a, b = envelope(f.l), envelope(f.r)
        if a is None or b is None:
            return None
        if isinstance(f, sc.Meet):
            return meet_env(a, b)
        return sum_env(a, b, isinstance(f, sc.Join))
    if isinstance(f, sc.Convolve):
        if not (sc.is_structurally_monotone(f.l) and sc.is_structurally_monotone(f.r)):
            return None
        a, b = envelope(f.l), envelope(f.r)
        if a is None or b is None:
            return None
        up = meet_env(a, b)
        down = meet_env(split_env(a), split_env(b))
        if up is None or down is None:
            return None
        return Envelope(down.lower, down.lo, up.upper, up.hi, max(up.n0, down.n0))
    if isinstance(f, sc.RunningMax):
        if sc.is_structurally_monotone(f.of):
            return envelope(f.of)
        w = f.of
        if isinstance(w, sc.WindowExt) and w.tail == sc.HOLD_LAST:
            top = max(w.values)
            if top == 0:
                return Envelope(CZERO, one, CZERO, one, 0)
            # constant from the first index where the maximum is reached
            return Envelope(CBOUNDED, top, CBOUNDED, top, w.values.index(top))
        return None
    return None


# ---------------------------------------------------------------- public descriptor


@dataclass(frozen=True)
class GrowthDescriptor:
    """Coarse growth class of a sequence.

    ``kind`` is one of Zero, Bounded, PolyDeg, ExpBase, FactorialLike, Opaque.
    ``param`` is the degree for PolyDeg and the base for ExpBase (a Fraction
    when the base is rational, otherwise the pair (b, r) meaning b**r).
    """

    kind: str
    param: object = None

    def to_dict(self):
        p = self.param
        if isinstance(p, tuple):
            p = f"{p[0]}^({p[1]})"
        elif p is not None:
            p = str(p)
        return {"kind": self.kind, "param": p}


def growth_class(f: sc.SeqExpr) -> GrowthDescriptor:
    e = envelope(f)
    if e is None:
        return GrowthDescriptor("Opaque")
    lo, up = e.lower, e.upper
    if lo.kind != up.kind:
        return GrowthDescriptor("Opaque")
    if up.kind == ZERO:
        return GrowthDescriptor("Zero")
    if up.kind == BOUNDED:
        return GrowthDescriptor("Bounded")
    if lo != up:
        return GrowthDescriptor("FactorialLike") if up.kind == FACT else GrowthDescriptor("Opaque")
    if up.kind == POLY:
        return GrowthDescriptor("PolyDeg", up.p)
    if up.kind == EXP:
        b, r = int(up.p), up.q
        if r.denominator == 1:
            return GrowthDescriptor("ExpBase", Fraction(b) ** r.numerator)
        root = iroot(b**r.numerator, r.denominator)
        if root ** r.denominator == b**r.numerator:
            return GrowthDescriptor("ExpBase", Fraction(root))
        return GrowthDescriptor("ExpBase", (b, r))
    return GrowthDescriptor("FactorialLike")
