"""Modules and split complexes over a discrete valuation ring R with uniformizer x.

A finitely generated module is R^free plus a sum of cyclic modules R/x^k.
Because R is hereditary every complex is quasi-isomorphic to the sum of its
shifted homology, so a complex is stored as its graded homology only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar

from . import seqcore as sc
from .errors import HorizonExceeded, MalformedInput, NotFiniteLength, ZeroComplex

INF_SEARCH_CAP = 4096


@dataclass(frozen=True)
class FinModule:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be a natural")
        tors = tuple(sorted((int(t) for t in self.torsion), reverse=True))
        if any(t < 0 for t in tors):
            raise ValueError("torsion orders must be naturals")
        # R/x^0 is the zero module
        object.__setattr__(self, "torsion", tuple(t for t in tors if t > 0))

    @classmethod
    def cyclic(cls, k: int, copies: int = 1) -> "FinModule":
        return cls(0, (k,) * copies)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def summands(self) -> int:
        return self.free_rank + len(self.torsion)

    def __add__(self, other: "FinModule") -> "FinModule":
        return FinModule(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def times(self, m: int) -> "FinModule":
        """Direct sum of m copies."""
        return FinModule(self.free_rank * m, self.torsion * m)

    def to_dict(self):
        return {"free": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise MalformedInput("module: expected an object")
        try:
            free = sc._nat(d.get("free", 0), "module.free")
            tors = [sc._nat(t, "module.torsion") for t in d.get("torsion", [])]
        except TypeError:
            raise MalformedInput("module.torsion: expected a list") from None
        return cls(free, tuple(tors))


ZERO_MODULE = FinModule()
R = FinModule(1)


def direct_sum(*mods: FinModule) -> FinModule:
    out = ZERO_MODULE
    for m in mods:
        out = out + m
    return out


def loewy_length(m: FinModule) -> int:
    """Largest torsion order; 0 for the zero module."""
    if m.free_rank:
        raise NotFiniteLength("module has a free summand")
    return m.torsion[0] if m.torsion else 0


def tensor_modules(m: FinModule, n: FinModule) -> FinModule:
    tors = [min(a, b) for a in m.torsion for b in n.torsion]
    tors += list(n.torsion) * m.free_rank + list(m.torsion) * n.free_rank
    return FinModule(m.free_rank * n.free_rank, tuple(tors))


def tor1_modules(m: FinModule, n: FinModule) -> FinModule:
    return FinModule(0, tuple(min(a, b) for a in m.torsion for b in n.torsion))


# ---------------------------------------------------------------- complexes


_COMPLEX_DECODERS = {}


def _kind(name):
    def deco(cls):
        cls.kind = name
        _COMPLEX_DECODERS[name] = cls._from_dict
        return cls

    return deco


class Complex:
    """Graded homology of a split complex, bounded below."""

    kind: ClassVar[str] = "?"

    def homology_at(self, n: int) -> FinModule:  # pragma: no cover - abstract
        raise NotImplementedError

    def inf_bound(self) -> int:
        """A degree below which the homology vanishes."""
        raise NotImplementedError  # pragma: no cover

    def sup_bound(self) -> int | None:
        """A degree above which the homology vanishes, or None."""
        return None

    def is_zero(self) -> bool:
        """True when the complex is structurally zero."""
        return False

    def to_dict(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


def homology_at(x: Complex, n: int) -> FinModule:
    return x.homology_at(n)


@_kind("finite")
@dataclass(frozen=True)
class FiniteComplex(Complex):
    parts: tuple[tuple[int, FinModule], ...] = ()

    def __post_init__(self):
        src = self.parts.items() if isinstance(self.parts, dict) else self.parts
        acc: dict[int, FinModule] = {}
        for d, m in src:
            acc[int(d)] = acc.get(int(d), ZERO_MODULE) + m
        object.__setattr__(self, "parts", tuple(sorted((d, m) for d, m in acc.items() if not m.is_zero)))

    def homology_at(self, n):
        for d, m in self.parts:
            if d == n:
                return m
        return ZERO_MODULE

    def inf_bound(self):
        return self.parts[0][0] if self.parts else 0

    def sup_bound(self):
        return self.parts[-1][0] if self.parts else 0

    def is_zero(self):
        return not self.parts

    def to_dict(self):
        return {"kind": "finite", "parts": [{"degree": str(d), "module": m.to_dict()} for d, m in self.parts]}

    @classmethod
    def _from_dict(cls, d):
        parts = d.get("parts", [])
        if not isinstance(parts, list):
            raise MalformedInput("finite.parts: expected a list")
        try:
            return cls(tuple((int(p["degree"]), FinModule.from_dict(p["module"])) for p in parts))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"finite.parts: {exc}") from None


def unit_complex() -> FiniteComplex:
    """R concentrated in degree 0."""
    return FiniteComplex(((0, R),))


ZERO_COMPLEX = FiniteComplex()


@_kind("generated")
@dataclass(frozen=True)
class Generated(Complex):
    """Sum over n >= 0 of (R/x^f(n))^mult(n) placed in degree n + base."""

    f: sc.SeqExpr
    mult: sc.SeqExpr
    base: int = 0

    def homology_at(self, n):
        i = n - self.base
        if i < 0:
            return ZERO_MODULE
        m = self.mult(i)
        if m == 0:
            return ZERO_MODULE
        return FinModule.cyclic(self.f(i), m)

    def inf_bound(self):
        return self.base

    def is_zero(self):
        return isinstance(self.mult, sc.Zero) or isinstance(self.f, sc.Zero)

    def sup_bound(self):
        return self.base if self.is_zero() else None

    def to_dict(self):
        return {"kind": "generated", "f": self.f.to_dict(), "mult": self.mult.to_dict(), "base": str(self.base)}

    @classmethod
    def _from_dict(cls, d):
        return cls(sc.from_dict(d.get("f")), sc.from_dict(d.get("mult", {"op": "const", "c": 1})), int(d.get("base", 0)))


@_kind("free_tower")
@dataclass(frozen=True)
class FreeTower(Complex):
    """R in every degree >= base."""

    base: int = 0

    def homology_at(self, n):
        return R if n >= self.base else ZERO_MODULE

    def inf_bound(self):
        return self.base

    def to_dict(self):
        return {"kind": "free_tower", "base": str(self.base)}

    @classmethod
    def _from_dict(cls, d):
        return cls(int(d.get("base", 0)))


@_kind("sum")
@dataclass(frozen=True)
class DirectSum(Complex):
    items: tuple[Complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def homology_at(self, n):
        return direct_sum(*(x.homology_at(n) for x in self.items))

    def inf_bound(self):
        live = [x.inf_bound() for x in self.items if not x.is_zero()]
        return min(live) if live else 0

    def sup_bound(self):
        sups = [x.sup_bound() for x in self.items if not x.is_zero()]
        if any(s is None for s in sups):
            return None
        return max(sups) if sups else 0

    def is_zero(self):
        return all(x.is_zero() for x in self.items)

    def to_dict(self):
        return {"kind": "sum", "items": [x.to_dict() for x in self.items]}

    @classmethod
    def _from_dict(cls, d):
        items = d.get("items")
        if not isinstance(items, list):
            raise MalformedInput("sum.items: expected a list")
        return cls(tuple(complex_from_dict(x) for x in items))


@_kind("shift")
@dataclass(frozen=True)
class Shift(Complex):
    """X[k]: homology in degree n is that of X in degree n - k."""

    of: Complex
    k: int

    def homology_at(self, n):
        return self.of.homology_at(n - self.k)

    def inf_bound(self):
        return self.of.inf_bound() + self.k

    def sup_bound(self):
        s = self.of.sup_bound()
        return None if s is None else s + self.k

    def is_zero(self):
        return self.of.is_zero()

    def to_dict(self):
        return {"kind": "shift", "of": self.of.to_dict(), "k": str(self.k)}

    @classmethod
    def _from_dict(cls, d):
        return cls(complex_from_dict(d.get("of")), int(d.get("k", 0)))


@_kind("truncated")
@dataclass(frozen=True)
class Truncated(Complex):
    """Good truncation X_{>=n}; for split complexes this drops low degrees."""

    of: Complex
    n: int

    def homology_at(self, m):
        return self.of.homology_at(m) if m >= self.n else ZERO_MODULE

    def inf_bound(self):
        return max(self.n, self.of.inf_bound())

    def sup_bound(self):
        return self.of.sup_bound()

    def is_zero(self):
        s = self.of.sup_bound()
        return self.of.is_zero() or (s is not None and s < self.n)

    def to_dict(self):
        return {"kind": "truncated", "of": self.of.to_dict(), "n": str(self.n)}

    @classmethod
    def _from_dict(cls, d):
        return cls(complex_from_dict(d.get("of")), int(d.get("n", 0)))


@_kind("exploded")
@dataclass(frozen=True)
class Exploded(Complex):
    """Sum over n >= 0 of H_n(X)^a(n) placed in degree n."""

    of: Complex
    a: sc.SeqExpr

    def homology_at(self, n):
        if n < 0:
            return ZERO_MODULE
        m = self.a(n)
        return self.of.homology_at(n).times(m) if m else ZERO_MODULE

    def inf_bound(self):
        return max(0, self.of.inf_bound())

    def sup_bound(self):
        return self.of.sup_bound()

    def is_zero(self):
        return self.of.is_zero() or isinstance(self.a, sc.Zero)

    def to_dict(self):
        return {"kind": "exploded", "of": self.of.to_dict(), "a": self.a.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(complex_from_dict(d.get("of")), sc.from_dict(d.get("a")))


@_kind("regraded")
@dataclass(frozen=True)
class Regraded(Complex):
    """Split part (E_i in degree 2i), even part (E_2i in degree i) or odd
    part (E_{2i+1} in degree i)."""

    of: Complex
    mode: str

    def __post_init__(self):
        if self.mode not in ("split", "even", "odd"):
            raise ValueError(f"unknown regrading {self.mode!r}")

    def homology_at(self, n):
        if self.mode == "split":
            return ZERO_MODULE if n % 2 else self.of.homology_at(n // 2)
        if self.mode == "even":
            return self.of.homology_at(2 * n)
        return self.of.homology_at(2 * n + 1)

    def _map_bound(self, b):
        if self.mode == "split":
            return 2 * b
        if self.mode == "even":
            return -(-b // 2)
        return -(-(b - 1) // 2)

    def inf_bound(self):
        return self._map_bound(self.of.inf_bound())

    def sup_bound(self):
        s = self.of.sup_bound()
        if s is None:
            return None
        return 2 * s if self.mode == "split" else s // 2

    def is_zero(self):
        return self.of.is_zero()

    def to_dict(self):
        return {"kind": "regraded", "of": self.of.to_dict(), "mode": self.mode}

    @classmethod
    def _from_dict(cls, d):
        return cls(complex_from_dict(d.get("of")), d.get("mode"))


@_kind("tensor")
@dataclass(frozen=True)
class Tensor(Complex):
    """Derived tensor product, computed degreewise by the Kunneth splitting."""

    l: Complex
    r: Complex

    def homology_at(self, n):
        return homology_tensor(self.l, self.r, n)

    def inf_bound(self):
        return self.l.inf_bound() + self.r.inf_bound()

    def sup_bound(self):
        a, b = self.l.sup_bound(), self.r.sup_bound()
        return None if a is None or b is None else a + b + 1

    def is_zero(self):
        return self.l.is_zero() or self.r.is_zero()

    def to_dict(self):
        return {"kind": "tensor", "l": self.l.to_dict(), "r": self.r.to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(complex_from_dict(d.get("l")), complex_from_dict(d.get("r")))


def complex_from_dict(d) -> Complex:
    if not isinstance(d, dict):
        raise MalformedInput("complex: expected an object")
    dec = _COMPLEX_DECODERS.get(d.get("kind"))
    if dec is None:
        raise MalformedInput(f"complex: unknown kind {d.get('kind')!r}")
    try:
        return dec(d)
    except ValueError as exc:
        raise MalformedInput(f"{d.get('kind')}: {exc}") from None


# ---------------------------------------------------------------- operations


def homology_tensor(x: Complex, y: Complex, n: int) -> FinModule:
    """H_n(X (x) Y) = sum_{i+j=n} H_i(X) (x) H_j(Y) + sum_{i+j=n-1} Tor_1(H_i(X), H_j(Y))."""
    if x.is_zero() or y.is_zero():
        return ZERO_MODULE
    bx, by = x.inf_bound(), y.inf_bound()
    out = ZERO_MODULE
    for i in range(bx, n - by + 1):
        out = out + tensor_modules(x.homology_at(i), y.homology_at(n - i))
    for i in range(bx, n - 1 - by + 1):
        out = out + tor1_modules(x.homology_at(i), y.homology_at(n - 1 - i))
    return out


def tensor(x: Complex, y: Complex) -> Complex:
    return Tensor(x, y)


def rxf(f: sc.SeqExpr) -> Generated:
    """R/x^f: the cyclic module R/x^f(n) in each degree n >= 0."""
    return Generated(f, sc.Const(1), 0)


def r_up() -> FreeTower:
    return FreeTower(0)


def shift(x: Complex, k: int) -> Complex:
    if k == 0:
        return x
    if isinstance(x, FiniteComplex):
        return FiniteComplex(tuple((d + k, m) for d, m in x.parts))
    if isinstance(x, Generated):
        return Generated(x.f, x.mult, x.base + k)
    if isinstance(x, FreeTower):
        return FreeTower(x.base + k)
    if isinstance(x, Shift):
        return shift(x.of, x.k + k)
    return Shift(x, k)


def truncate_geq(x: Complex, n: int) -> Complex:
    if isinstance(x, FiniteComplex):
        return FiniteComplex(tuple((d, m) for d, m in x.parts if d >= n))
    if x.is_zero() or n <= x.inf_bound():
        return x
    if isinstance(x, FreeTower):
        return FreeTower(n)
    return Truncated(x, n)


def explode(x: Complex, a: sc.SeqExpr) -> Complex:
    """X^(+a): H_n(X)^a(n) in degree n for n >= 0 (X truncated at 0 first)."""
    if x.is_zero() or isinstance(a, sc.Zero):
        return ZERO_COMPLEX
    if isinstance(x, Generated) and x.base == 0 and x.mult == sc.Const(1):
        return Generated(x.f, a, 0)
    return Exploded(x, a)


def split_even_odd(e: Complex) -> tuple[Complex, Complex, Complex]:
    """Return (E_split, E_even, E_odd)."""
    if e.is_zero():
        return ZERO_COMPLEX, ZERO_COMPLEX, ZERO_COMPLEX
    if isinstance(e, Generated) and e.base == 0 and e.mult == sc.Const(1):
        f = e.f
        return rxf(sc.EvenSpread(f)), rxf(sc.mu(f, 1)), rxf(sc.mu(sc.sigma(f, 1), 1))
    return Regraded(e, "split"), Regraded(e, "even"), Regraded(e, "odd")


def is_zero_complex(x: Complex) -> bool:
    if x.is_zero():
        return True
    try:
        inf_degree(x)
    except ZeroComplex:
        return True
    return False


def inf_degree(x: Complex) -> int:
    """Least degree with nonzero homology."""
    if x.is_zero():
        raise ZeroComplex("the zero complex has no infimum")
    lo, hi = x.inf_bound(), x.sup_bound()
    stop = hi if hi is not None else lo + INF_SEARCH_CAP
    for n in range(lo, stop + 1):
        if not x.homology_at(n).is_zero:
            return n
    if hi is not None:
        raise ZeroComplex("no nonzero homology in the support range")
    raise HorizonExceeded(f"no nonzero homology in degrees {lo}..{stop}")


def _first_positive(f: sc.SeqExpr) -> int:
    for n in range(INF_SEARCH_CAP + 1):
        if f(n) > 0:
            return n
    raise HorizonExceeded("sequence is zero on the whole search range")


def _positive_mult(m: sc.SeqExpr) -> bool:
    return sc.is_structurally_monotone(m) and m(0) >= 1


@sc._register("complex_stat")
@dataclass(frozen=True)
class ComplexStat(sc.SeqExpr):
    """A numerical invariant of a complex read off degree by degree.

    ``stat`` is "loewy" (Loewy length at degree n + inf), "loewy_raw"
    (Loewy length at degree n, n >= 0) or "count" (number of indecomposable
    summands at degree n + inf).
    """

    complex: Complex
    stat: str
    _inf: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def _offset(self):
        if self.stat == "loewy_raw":
            return 0
        v = self._inf.get("inf")
        if v is None:
            v = inf_degree(self.complex)
            self._inf["inf"] = v
        return v

    def _eval(self, n):
        m = self.complex.homology_at(n + self._offset())
        return m.summands if self.stat == "count" else loewy_length(m)

    def to_dict(self):
        return {"op": "complex_stat", "complex": self.complex.to_dict(), "stat": self.stat}

    @classmethod
    def _from_dict(cls, d):
        if d.get("stat") not in ("loewy", "loewy_raw", "count"):
            raise MalformedInput("complex_stat.stat: unknown statistic")
        return cls(complex_from_dict(d.get("complex")), d["stat"])


def _finite_window(x: FiniteComplex, start: int, stat) -> sc.SeqExpr:
    hi = x.sup_bound()
    vals = [stat(x.homology_at(d)) for d in range(start, hi + 1)] + [0]
    return sc.WindowExt(sc.SeqWindow.of(vals))


def loewy_seq(x: Complex) -> sc.SeqExpr:
    """n -> Loewy length of H_{n + inf X}; Zero for the zero complex."""
    if is_zero_complex(x):
        return sc.Zero()
    while isinstance(x, Shift):
        x = x.of
    if isinstance(x, Generated) and _positive_mult(x.mult) and sc.is_structurally_monotone(x.f):
        return sc.sigma(x.f, _first_positive(x.f))
    if isinstance(x, FiniteComplex):
        for _, m in x.parts:
            loewy_length(m)
        return _finite_window(x, inf_degree(x), loewy_length)
    return ComplexStat(x, "loewy")


def loewy_seq_raw(x: Complex) -> sc.SeqExpr:
    """n -> Loewy length of H_n for n >= 0."""
    if x.is_zero():
        return sc.Zero()
    if isinstance(x, Generated) and x.base == 0 and _positive_mult(x.mult):
        return x.f
    if isinstance(x, FiniteComplex):
        for _, m in x.parts:
            loewy_length(m)
        if x.sup_bound() < 0:
            return sc.Zero()
        return _finite_window(x, 0, loewy_length)
    return ComplexStat(x, "loewy_raw")


def summand_count_seq(x: Complex) -> sc.SeqExpr:
    """n -> number of indecomposable summands of H_{n + inf X}."""
    if is_zero_complex(x):
        return sc.Zero()
    while isinstance(x, Shift):
        x = x.of
    if isinstance(x, Generated) and sc.is_structurally_monotone(x.f) and x.f(0) >= 1 and _positive_mult(x.mult):
        return x.mult
    if isinstance(x, FiniteComplex):
        return _finite_window(x, inf_degree(x), lambda m: m.summands)
    return ComplexStat(x, "count")
