"""Symbolic nondecreasing sequences of naturals with exact evaluation.

Every sequence is an immutable expression tree. ``evaluate(f, n)`` returns
the exact value as a Python int; no floating point is used anywhere.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, ClassVar

import gmpy2

from .errors import BudgetExhausted, HorizonExceeded, MalformedInput
from .intmath import iroot

_DECODERS: dict[str, Callable[[dict], "SeqExpr"]] = {}


def _register(op: str):
    def deco(cls):
        cls.op = op
        _DECODERS[op] = cls._from_dict
        return cls

    return deco


def _nat(x, what="value") -> int:
    if isinstance(x, bool):
        raise MalformedInput(f"{what}: expected a natural, got a boolean")
    if isinstance(x, int):
        v = x
    elif isinstance(x, str) and x.strip().isdigit():
        v = int(x)
    else:
        raise MalformedInput(f"{what}: expected a natural, got {x!r}")
    if v < 0:
        raise MalformedInput(f"{what}: expected a natural, got {v}")
    return v


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"sequences are indexed by naturals, got {n!r}")


# Largest value (in bits) that evaluation will materialize.
MAX_VALUE_BITS = 1 << 25


def _too_big(bits: int, what: str) -> None:
    if bits > MAX_VALUE_BITS:
        raise BudgetExhausted(f"{what} would need about {bits} bits")


class SeqExpr:
    """Base class of all sequence expression nodes."""

    op: ClassVar[str] = "?"

    def __call__(self, n: int) -> int:
        _check_n(n)
        return self._eval(n)

    def _eval(self, n: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_dict(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError

    def children(self) -> tuple["SeqExpr", ...]:
        return ()


def evaluate(f: SeqExpr, n: int) -> int:
    """Exact value of ``f`` at the natural ``n``."""
    return f(n)


# ---------------------------------------------------------------- leaves


@_register("zero")
@dataclass(frozen=True)
class Zero(SeqExpr):
    def _eval(self, n):
        return 0

    def to_dict(self):
        return {"op": "zero"}

    @classmethod
    def _from_dict(cls, d):
        return cls()


@_register("const")
@dataclass(frozen=True)
class Const(SeqExpr):
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("Const needs c >= 1 (use Zero for 0)")

    def _eval(self, n):
        return self.c

    def to_dict(self):
        return {"op": "const", "c": str(self.c)}

    @classmethod
    def _from_dict(cls, d):
        return cls(_nat(d.get("c"), "const.c"))


@_register("poly")
@dataclass(frozen=True)
class Poly(SeqExpr):
    """Polynomial with natural coefficients, constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[-1] < 1 or any(c < 0 for c in self.coeffs):
            raise ValueError("Poly needs natural coefficients with leading coefficient >= 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _eval(self, n):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def to_dict(self):
        return {"op": "poly", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def _from_dict(cls, d):
        cs = d.get("coeffs")
        if not isinstance(cs, list):
            raise MalformedInput("poly.coeffs: expected a list")
        return cls(tuple(_nat(c, "poly.coeffs") for c in cs))


def identity() -> Poly:
    return Poly((0, 1))


def monomial(d: int) -> Poly:
    return Poly((0,) * d + (1,))


@_register("power")
@dataclass(frozen=True)
class PowerFloor(SeqExpr):
    """n -> floor(n**alpha) for a rational alpha >= 0."""

    alpha: Fraction

    def __post_init__(self):
        a = Fraction(self.alpha)
        if a < 0:
            raise ValueError("PowerFloor needs alpha >= 0")
        object.__setattr__(self, "alpha", a)

    def _eval(self, n):
        p, q = self.alpha.numerator, self.alpha.denominator
        return iroot(n**p, q)

    def to_dict(self):
        return {"op": "power", "alpha": str(self.alpha)}

    @classmethod
    def _from_dict(cls, d):
        try:
            return cls(Fraction(str(d.get("alpha"))))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"power.alpha: {exc}") from None


@_register("exp")
@dataclass(frozen=True)
class Exp(SeqExpr):
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("Exp needs base >= 2")

    def _eval(self, n):
        _too_big(n * self.base.bit_length(), f"{self.base}**{n}")
        return self.base**n

    def to_dict(self):
        return {"op": "exp", "base": str(self.base)}

    @classmethod
    def _from_dict(cls, d):
        return cls(_nat(d.get("base"), "exp.base"))


@_register("factorial")
@dataclass(frozen=True)
class Factorial(SeqExpr):
    def _eval(self, n):
        _too_big(n * n.bit_length(), f"{n}!")
        return int(gmpy2.fac(n))

    def to_dict(self):
        return {"op": "factorial"}

    @classmethod
    def _from_dict(cls, d):
        return cls()


@dataclass(frozen=True)
class SeqWindow:
    """A finite prefix of a sequence."""

    values: tuple[int, ...]
    monotone_flag: bool = False

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("window values must be naturals")
        object.__setattr__(self, "values", vals)
        if self.monotone_flag and not _nondecreasing(vals):
            raise ValueError("monotone_flag set on a non-monotone window")

    @classmethod
    def of(cls, values) -> "SeqWindow":
        vals = tuple(values)
        return cls(vals, _nondecreasing(vals))

    def __len__(self):
        return len(self.values)


def _nondecreasing(vals) -> bool:
    return all(a <= b for a, b in zip(vals, vals[1:]))


def monotonize(w: SeqWindow) -> SeqWindow:
    """Running maximum of a window."""
    out, best = [], 0
    for v in w.values:
        best = max(best, v)
        out.append(best)
    return SeqWindow(tuple(out), True)


HOLD_LAST = "hold"
UNDEFINED = "undefined"


@_register("window")
@dataclass(frozen=True)
class WindowExt(SeqExpr):
    """A finite window extended past its end by holding the last value,
    or left undefined there."""

    window: SeqWindow
    tail: str = HOLD_LAST

    def __post_init__(self):
        if not isinstance(self.window, SeqWindow):
            object.__setattr__(self, "window", SeqWindow.of(self.window))
        if self.tail not in (HOLD_LAST, UNDEFINED):
            raise ValueError(f"unknown tail mode {self.tail!r}")
        if not self.window.values:
            raise ValueError("window must be nonempty")

    @property
    def values(self):
        return self.window.values

    def _eval(self, n):
        vals = self.window.values
        if n < len(vals):
            return vals[n]
        if self.tail == UNDEFINED:
            raise HorizonExceeded(f"window of length {len(vals)} is undefined at n={n}")
        return vals[-1]

    def to_dict(self):
        return {"op": "window", "values": [str(v) for v in self.window.values], "tail": self.tail}

    @classmethod
    def _from_dict(cls, d):
        vals = d.get("values")
        if not isinstance(vals, list) or not vals:
            raise MalformedInput("window.values: expected a nonempty list")
        tail = d.get("tail", HOLD_LAST)
        if tail not in (HOLD_LAST, UNDEFINED):
            raise MalformedInput(f"window.tail: unknown mode {tail!r}")
        return cls(SeqWindow.of([_nat(v, "window.values") for v in vals]), tail)


def window_ext(values, tail: str = HOLD_LAST) -> WindowExt:
    return WindowExt(SeqWindow.of(values), tail)


# ---------------------------------------------------------------- operators


@_register("sigma")
@dataclass(frozen=True)
class SigmaShift(SeqExpr):
    """n -> of(n + k)."""

    of: SeqExpr
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("shift needs k >= 1")

    def _eval(self, n):
        return self.of._eval(n + self.k)

    def children(self):
        return (self.of,)

    def to_dict(self):
        return {"op": "sigma", "of": self.of.to_dict(), "k": str(self.k)}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("of")), _nat(d.get("k", 1), "sigma.k"))


@_register("mu")
@dataclass(frozen=True)
class MuDilate(SeqExpr):
    """n -> of(2**k * n)."""

    of: SeqExpr
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("dilation needs k >= 1")

    def _eval(self, n):
        return self.of._eval(n << self.k)

    def children(self):
        return (self.of,)

    def to_dict(self):
        return {"op": "mu", "of": self.of.to_dict(), "k": str(self.k)}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("of")), _nat(d.get("k", 1), "mu.k"))


def sigma(f: SeqExpr, k: int = 1) -> SeqExpr:
    """Shift by k >= 0, merging nested shifts."""
    if k == 0:
        return f
    if isinstance(f, SigmaShift):
        return SigmaShift(f.of, f.k + k)
    return SigmaShift(f, k)


def mu(f: SeqExpr, k: int = 1) -> SeqExpr:
    """Dilate by 2**k, k >= 0, merging nested dilations."""
    if k == 0:
        return f
    if isinstance(f, MuDilate):
        return MuDilate(f.of, f.k + k)
    return MuDilate(f, k)


class _Binary(SeqExpr):
    l: SeqExpr
    r: SeqExpr

    def children(self):
        return (self.l, self.r)

    def to_dict(self):
        return {"op": self.op, "l": self.l.to_dict(), "r": self.r.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("l")), from_dict(d.get("r")))


@_register("join")
@dataclass(frozen=True)
class Join(_Binary):
    l: SeqExpr
    r: SeqExpr

    def _eval(self, n):
        return max(self.l._eval(n), self.r._eval(n))


@_register("meet")
@dataclass(frozen=True)
class Meet(_Binary):
    l: SeqExpr
    r: SeqExpr

    def _eval(self, n):
        return min(self.l._eval(n), self.r._eval(n))


@_register("sum")
@dataclass(frozen=True)
class Sum(_Binary):
    l: SeqExpr
    r: SeqExpr

    def _eval(self, n):
        return self.l._eval(n) + self.r._eval(n)


@_register("scale")
@dataclass(frozen=True)
class Scale(SeqExpr):
    a: int
    of: SeqExpr

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("Scale needs A >= 1")

    def _eval(self, n):
        return self.a * self.of._eval(n)

    def children(self):
        return (self.of,)

    def to_dict(self):
        return {"op": "scale", "A": str(self.a), "of": self.of.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(_nat(d.get("A"), "scale.A"), from_dict(d.get("of")))


class _Memo:
    """Per-node value cache. Plain dict reads and writes are atomic under
    the interpreter lock, and values are pure, so races only redo work."""

    __slots__ = ("data",)

    def __init__(self):
        self.data = {}

    def __eq__(self, other):
        return True

    def __hash__(self):
        return 0

    def __repr__(self):
        return "_Memo()"


@_register("convolve")
@dataclass(frozen=True)
class Convolve(_Binary):
    """Max-min convolution n -> max_i min(l(i), r(n - i))."""

    l: SeqExpr
    r: SeqExpr
    _memo: _Memo = field(default_factory=_Memo, compare=False, repr=False)

    def _eval(self, n):
        memo = self._memo.data
        v = memo.get(n)
        if v is None:
            if is_structurally_monotone(self.l) and is_structurally_monotone(self.r):
                v = _convolve_crossing(self.l, self.r, n)
            else:
                v = _convolve_naive(self.l, self.r, n)
            memo[n] = v
        return v


@_register("split")
@dataclass(frozen=True)
class SplitStretch(SeqExpr):
    """n -> of(floor(n / 2))."""

    of: SeqExpr

    def _eval(self, n):
        return self.of._eval(n >> 1)

    def children(self):
        return (self.of,)

    def to_dict(self):
        return {"op": "split", "of": self.of.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("of")))


@_register("spread")
@dataclass(frozen=True)
class EvenSpread(SeqExpr):
    """n -> of(n/2) at even n and 0 at odd n. Its running maximum is
    ``SplitStretch(of)``."""

    of: SeqExpr

    def _eval(self, n):
        return 0 if n % 2 else self.of._eval(n >> 1)

    def children(self):
        return (self.of,)

    def to_dict(self):
        return {"op": "spread", "of": self.of.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("of")))


@_register("compose")
@dataclass(frozen=True)
class Compose(SeqExpr):
    """n -> outer(inner(n)); used for towers such as 2**(4**n)."""

    outer: SeqExpr
    inner: SeqExpr

    def _eval(self, n):
        return self.outer._eval(self.inner._eval(n))

    def children(self):
        return (self.outer, self.inner)

    def to_dict(self):
        return {"op": "compose", "outer": self.outer.to_dict(), "inner": self.inner.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("outer")), from_dict(d.get("inner")))


@_register("mono")
@dataclass(frozen=True)
class RunningMax(SeqExpr):
    """n -> max of of(0..n)."""

    of: SeqExpr
    _memo: _Memo = field(default_factory=_Memo, compare=False, repr=False)

    def _eval(self, n):
        if is_structurally_monotone(self.of):
            return self.of._eval(n)
        memo = self._memo.data
        v = memo.get(n)
        if v is None:
            start = max((m for m in memo if m < n), default=-1)
            best = memo[start] if start >= 0 else 0
            for i in range(start + 1, n + 1):
                best = max(best, self.of._eval(i))
                memo[i] = best
            v = best
        return v

    def children(self):
        return (self.of,)

    def to_dict(self):
        return {"op": "mono", "of": self.of.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(from_dict(d.get("of")))


def mono(f: SeqExpr) -> SeqExpr:
    """Monotone hull of ``f``; returns ``f`` itself when it is structurally monotone."""
    if isinstance(f, EvenSpread) and is_structurally_monotone(f.of):
        return SplitStretch(f.of)
    return f if is_structurally_monotone(f) else RunningMax(f)


# ---------------------------------------------------------------- index sets


@dataclass(frozen=True)
class SubsetSpec:
    """A subset of the naturals: empty, all, evens, odds or a finite set."""

    kind: str
    indices: frozenset[int] = frozenset()

    KINDS: ClassVar[tuple[str, ...]] = ("empty", "all", "evens", "odds", "finite")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown subset kind {self.kind!r}")
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))
        if self.kind != "finite" and self.indices:
            raise ValueError("indices only apply to finite subsets")

    def __contains__(self, i: int) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "all":
            return True
        if self.kind == "evens":
            return i % 2 == 0
        if self.kind == "odds":
            return i % 2 == 1
        return i in self.indices

    @property
    def is_finite(self) -> bool:
        return self.kind in ("empty", "finite")

    def max_index(self) -> int | None:
        if self.kind == "finite" and self.indices:
            return max(self.indices)
        return None

    def next_at_least(self, i: int) -> int | None:
        """Least member >= i, or None."""
        if self.kind == "empty":
            return None
        if self.kind == "all":
            return i
        if self.kind == "evens":
            return i + (i % 2)
        if self.kind == "odds":
            return i if i % 2 else i + 1
        cands = [j for j in self.indices if j >= i]
        return min(cands) if cands else None

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == "finite":
            d["indices"] = [str(i) for i in sorted(self.indices)]
        return d

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or d.get("kind") not in cls.KINDS:
            raise MalformedInput(f"subset: expected kind in {cls.KINDS}")
        idx = d.get("indices", [])
        if d["kind"] == "finite":
            vals = [_nat(i, "subset.indices") for i in idx]
            if len(set(vals)) != len(vals):
                raise MalformedInput("subset.indices: duplicates")
            return cls("finite", frozenset(vals))
        return cls(d["kind"])


EMPTY = SubsetSpec("empty")
ALL = SubsetSpec("all")
EVENS = SubsetSpec("evens")
ODDS = SubsetSpec("odds")


def finite_set(indices) -> SubsetSpec:
    return SubsetSpec("finite", frozenset(indices))


# ---------------------------------------------------------------- interleaving


class BlockSource:
    """Something that can supply block boundaries k_0 < k_1 < ... lazily."""

    def breakpoint(self, i: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def block_of(self, n: int) -> int | None:
        """Index i with k_i <= n < k_{i+1}, or None when n < k_0."""
        if n < self.breakpoint(0):
            return None
        lo, hi = 0, 1
        while self.breakpoint(hi) <= n:
            lo, hi = hi, hi * 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.breakpoint(mid) <= n:
                lo = mid
            else:
                hi = mid
        return lo


@_register("fs")
@dataclass(frozen=True)
class PiecewiseFS(SeqExpr):
    """Interleave f0 and f1 along breakpoints k_0 < k_1 < ...

    On [k_i, k_{i+1}) the value is f1 when i is in s and f0 otherwise;
    below k_0 it is f0. With ``breakpoints=None`` the boundaries are taken
    from ``f1``, which must then be a ``TogetherF1`` node.
    """

    f0: SeqExpr
    f1: SeqExpr
    breakpoints: tuple[int, ...] | None
    s: SubsetSpec

    def __post_init__(self):
        if self.breakpoints is not None:
            ks = tuple(int(k) for k in self.breakpoints)
            if not ks or any(k < 0 for k in ks) or any(a >= b for a, b in zip(ks, ks[1:])):
                raise ValueError("breakpoints must be nonempty, natural and strictly increasing")
            object.__setattr__(self, "breakpoints", ks)
        elif not hasattr(self.f1, "breakpoint"):
            raise ValueError("derived breakpoints need f1 to carry its own block structure")

    def block_of(self, n: int) -> int | None:
        if self.breakpoints is None:
            return self.f1.block_of(n)
        i = bisect.bisect_right(self.breakpoints, n) - 1
        return None if i < 0 else i

    def breakpoint(self, i: int) -> int:
        if self.breakpoints is None:
            return self.f1.breakpoint(i)
        return self.breakpoints[i]

    def _eval(self, n):
        i = self.block_of(n)
        if i is not None and i in self.s:
            return self.f1._eval(n)
        return self.f0._eval(n)

    def children(self):
        return (self.f0, self.f1)

    def to_dict(self):
        ks = "auto" if self.breakpoints is None else [str(k) for k in self.breakpoints]
        return {"op": "fs", "f0": self.f0.to_dict(), "f1": self.f1.to_dict(), "ks": ks, "s": self.s.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        ks = d.get("ks", "auto")
        if ks == "auto" or ks is None:
            bps = None
        elif isinstance(ks, list):
            bps = tuple(_nat(k, "fs.ks") for k in ks)
        else:
            raise MalformedInput("fs.ks: expected a list or \"auto\"")
        try:
            return cls(from_dict(d.get("f0")), from_dict(d.get("f1")), bps, SubsetSpec.from_dict(d.get("s")))
        except ValueError as exc:
            raise MalformedInput(f"fs: {exc}") from None


def fs_violation(spec: PiecewiseFS, horizon: int) -> int | None:
    """Index of the first breakpoint up to ``horizon`` where the gluing
    conditions fail, -1 if a piece is not monotone on [0, horizon], or None."""
    f0, f1 = spec.f0, spec.f1
    for g in (f0, f1):
        prev = g(0)
        for n in range(1, horizon + 1):
            cur = g(n)
            if cur < prev:
                return -1
            prev = cur
    i = 0
    while True:
        try:
            k = spec.breakpoint(i)
        except IndexError:
            return None
        if k > horizon:
            return None
        if k > 0:
            if f0(k - 1) > f1(k):
                return i
            if i > 0 and f1(k - 1) > f0(k):
                return i
        i += 1


def validate_fs(spec: PiecewiseFS, horizon: int) -> bool:
    """Check the gluing conditions at every breakpoint up to ``horizon``.

    Both pieces are also scanned for monotonicity on [0, horizon], so a
    True result means ``spec`` is nondecreasing there.
    """
    return fs_violation(spec, horizon) is None


# ---------------------------------------------------------------- convolution


def _convolve_naive(f: SeqExpr, g: SeqExpr, n: int) -> int:
    return max(min(f._eval(i), g._eval(n - i)) for i in range(n + 1))


def _convolve_crossing(f: SeqExpr, g: SeqExpr, n: int) -> int:
    # f(i) rises and g(n-i) falls in i; the max of the min sits at the crossing
    lo, hi = 0, n + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if f._eval(mid) >= g._eval(n - mid):
            hi = mid
        else:
            lo = mid + 1
    best = 0
    if lo <= n:
        best = min(f._eval(lo), g._eval(n - lo))
    if lo >= 1:
        best = max(best, min(f._eval(lo - 1), g._eval(n - lo + 1)))
    return best


def convolve_at(f: SeqExpr, g: SeqExpr, n: int, method: str = "auto") -> int:
    """Max-min convolution of f and g at n.

    ``method`` is "naive" for the O(n) scan, "crossing" for the binary
    search (valid for nondecreasing inputs) or "auto".
    """
    _check_n(n)
    if method == "naive":
        return _convolve_naive(f, g, n)
    if method == "crossing":
        return _convolve_crossing(f, g, n)
    if is_structurally_monotone(f) and is_structurally_monotone(g):
        return _convolve_crossing(f, g, n)
    return _convolve_naive(f, g, n)


def fsplit_mono(f: SeqExpr) -> SeqExpr:
    """Monotone hull of the even/odd split sequence: n -> f(floor(n/2))."""
    return SplitStretch(f)


# ---------------------------------------------------------------- structure


_MONO_LEAVES = (Zero, Const, Poly, PowerFloor, Exp, Factorial)
_MONO_OPS = (SigmaShift, MuDilate, Join, Meet, Sum, Scale, Convolve, SplitStretch, RunningMax)


def is_structurally_monotone(f: SeqExpr) -> bool:
    """True when ``f`` is nondecreasing by construction alone."""
    if isinstance(f, _MONO_LEAVES):
        return True
    if isinstance(f, WindowExt):
        return f.window.monotone_flag and f.tail == HOLD_LAST
    if isinstance(f, RunningMax):
        return True
    if isinstance(f, Compose):
        return is_structurally_monotone(f.outer) and is_structurally_monotone(f.inner)
    if isinstance(f, _MONO_OPS):
        return all(is_structurally_monotone(c) for c in f.children())
    return bool(getattr(f, "structurally_monotone", False))


# ---------------------------------------------------------------- JSON


def from_dict(d) -> SeqExpr:
    """Decode a tagged JSON tree into a sequence expression."""
    if not isinstance(d, dict):
        raise MalformedInput(f"sequence: expected an object, got {type(d).__name__}")
    op = d.get("op")
    dec = _DECODERS.get(op)
    if dec is None:
        raise MalformedInput(f"sequence: unknown op {op!r}")
    try:
        return dec(d)
    except ValueError as exc:
        raise MalformedInput(f"{op}: {exc}") from None


def to_dict(f: SeqExpr) -> dict:
    return f.to_dict()


def register_decoder(op: str, decoder: Callable[[dict], SeqExpr]) -> None:
    """Let other modules add node kinds to the JSON codec."""
    _DECODERS[op] = decoder

