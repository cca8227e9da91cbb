"""Interleaved sequences and the certificates that show a class is not prime.

Given an unbounded nondecreasing f0, the doubling construction produces a
step function f1 >= f0 and breakpoints k_0 < k_1 < ...  Interleaving f0 and
f1 along the even or the odd blocks gives two sequences whose meet is f0
while neither is bounded by a dilation of f0.

Values such as 2**i * f0(2**i * k_i) outgrow machine memory quickly when f0
is exponential, so exponential f0 are handled in closed form through
``PowerValue``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import total_ordering

from . import seqcore as sc
from .errors import BudgetExhausted, CertificateFailed, FiniteS, HorizonExceeded, InvalidConstruction, MalformedInput

# doubling steps allowed when searching for the next breakpoint
SEARCH_DOUBLINGS = 400


@total_ordering
@dataclass(frozen=True, eq=False)
class PowerValue:
    """The natural number coef * base**exp, kept symbolic."""

    coef: int
    base: int
    exp: int

    def __post_init__(self):
        if self.coef < 0 or self.base < 2 or self.exp < 0:
            raise ValueError("PowerValue needs coef >= 0, base >= 2, exp >= 0")

    def scaled(self, m: int) -> "PowerValue":
        return PowerValue(self.coef * m, self.base, self.exp)

    def to_int(self) -> int:
        sc._too_big(self.exp * self.base.bit_length() + self.coef.bit_length(), "power value")
        return self.coef * self.base**self.exp

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            other = PowerValue(other, self.base, 0)
        if other.base != self.base:
            if self.exp == 0 and other.exp == 0:
                return (self.coef > other.coef) - (self.coef < other.coef)
            raise TypeError("cannot compare power values with different bases")
        return _cmp_scaled(self.coef, other.coef, self.base, self.exp - other.exp)

    def __eq__(self, other):
        if not isinstance(other, (int, PowerValue)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (int, PowerValue)):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.coef, self.base, self.exp))

    def to_dict(self):
        return {"coef": str(self.coef), "base": str(self.base), "exp": str(self.exp)}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["coef"]), int(d["base"]), int(d["exp"]))

    def __str__(self):
        return f"{self.coef}*{self.base}^{self.exp}"


def _cmp_scaled(c1: int, c2: int, b: int, d: int) -> int:
    """Sign of c1 * b**d - c2 for an integer d of either sign."""
    if d < 0:
        return -_cmp_scaled(c2, c1, b, -d)
    if c1 == 0:
        return -1 if c2 > 0 else 0
    # b**d alone already beats c2 when d*log2(b) clears its bit length
    if (d * (b.bit_length() - 1)) > c2.bit_length() + 1:
        return 1
    x = c1 * b**d
    return (x > c2) - (x < c2)


@total_ordering
@dataclass(frozen=True, eq=False)
class FactValue:
    """The natural number coef * (arg)!, kept symbolic."""

    coef: int
    arg: int

    def __post_init__(self):
        if self.coef < 0 or self.arg < 0:
            raise ValueError("FactValue needs coef >= 0 and arg >= 0")

    def scaled(self, m: int) -> "FactValue":
        return FactValue(self.coef * m, self.arg)

    def to_int(self) -> int:
        return self.coef * sc.Factorial()(self.arg)

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            other = FactValue(other, 0)
        if not isinstance(other, FactValue):
            raise TypeError("cannot compare factorial and power values")
        return _cmp_fact(self.coef, self.arg, other.coef, other.arg)

    def __eq__(self, other):
        if not isinstance(other, (int, FactValue)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (int, FactValue)):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.coef, self.arg))

    def to_dict(self):
        return {"coef": str(self.coef), "fact": str(self.arg)}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["coef"]), int(d["fact"]))

    def __str__(self):
        return f"{self.coef}*({self.arg})!"


def _cmp_fact(c1: int, x1: int, c2: int, x2: int) -> int:
    """Sign of c1 * x1! - c2 * x2!."""
    if x1 < x2:
        return -_cmp_fact(c2, x2, c1, x1)
    if c1 == 0:
        return -1 if c2 > 0 else 0
    acc = c1
    for m in range(x2 + 1, x1 + 1):
        acc *= m
        if acc > c2:
            return 1
    return (acc > c2) - (acc < c2)


def value_from_dict(d):
    if isinstance(d, str):
        return int(d)
    return FactValue.from_dict(d) if "fact" in d else PowerValue.from_dict(d)


def vmul(v, m: int):
    return v * m if isinstance(v, int) else v.scaled(m)


def vgt(x, y) -> bool:
    if isinstance(x, int) and isinstance(y, int):
        return x > y
    if isinstance(x, int):
        return y < x
    return x > y  # symbolic values compare exactly


def as_int(v) -> int:
    return v if isinstance(v, int) else v.to_int()


# ---------------------------------------------------------------- value models for f0


class _GenericModel:
    def __init__(self, f0: sc.SeqExpr):
        self.f0 = f0

    def value(self, n: int):
        return self.f0(n)

    def first_exceeding(self, t, start: int) -> int:
        """Least n >= start with f0(n) > t, assuming f0 nondecreasing."""
        f0 = self.f0
        if f0(start) > t:
            return start
        lo, step = start, 1
        for _ in range(SEARCH_DOUBLINGS):
            hi = start + step
            if f0(hi) > t:
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    if f0(mid) > t:
                        hi = mid
                    else:
                        lo = mid
                return hi
            lo, step = hi, step * 2
        raise HorizonExceeded(f"f0 never exceeds {t} below index {start + step}; it looks bounded")


@dataclass(frozen=True)
class ExpForm:
    """f0(n) = c * b**(m*n + o)."""

    c: int
    b: int
    m: int
    o: int


def exp_form(f: sc.SeqExpr) -> ExpForm | None:
    if isinstance(f, sc.Exp):
        return ExpForm(1, f.base, 1, 0)
    if isinstance(f, sc.Scale):
        e = exp_form(f.of)
        return None if e is None else ExpForm(e.c * f.a, e.b, e.m, e.o)
    if isinstance(f, sc.SigmaShift):
        e = exp_form(f.of)
        return None if e is None else ExpForm(e.c, e.b, e.m, e.o + e.m * f.k)
    if isinstance(f, sc.MuDilate):
        e = exp_form(f.of)
        return None if e is None else ExpForm(e.c, e.b, e.m << f.k, e.o)
    return None


class _ExpModel:
    def __init__(self, form: ExpForm):
        self.form = form

    def value(self, n: int) -> PowerValue:
        e = self.form
        return PowerValue(e.c, e.b, e.m * n + e.o)

    def first_exceeding(self, t, start: int) -> int:
        e = self.form
        if isinstance(t, int):
            t = PowerValue(t, e.b, 0)
        if t.base != e.b:
            raise TypeError("threshold has a foreign base")
        ct, et = t.coef, t.exp
        # least integer y with c*b**y > ct
        if ct == 0:
            return start
        if e.c > ct:
            y, scaled = 0, ct
            while e.c > scaled * e.b:
                scaled *= e.b
                y -= 1
        else:
            y, scaled = 1, e.c * e.b
            while scaled <= ct:
                scaled *= e.b
                y += 1
        x = y + et
        n = -(-(x - e.o) // e.m)
        return max(n, start)


@dataclass(frozen=True)
class FactForm:
    """f0(n) = c * (m*n + o)!."""

    c: int
    m: int
    o: int


def fact_form(f: sc.SeqExpr) -> FactForm | None:
    if isinstance(f, sc.Factorial):
        return FactForm(1, 1, 0)
    if isinstance(f, sc.Scale):
        e = fact_form(f.of)
        return None if e is None else FactForm(e.c * f.a, e.m, e.o)
    if isinstance(f, sc.SigmaShift):
        e = fact_form(f.of)
        return None if e is None else FactForm(e.c, e.m, e.o + e.m * f.k)
    if isinstance(f, sc.MuDilate):
        e = fact_form(f.of)
        return None if e is None else FactForm(e.c, e.m << f.k, e.o)
    return None


class _FactModel:
    def __init__(self, form: FactForm):
        self.form = form

    def value(self, n: int) -> FactValue:
        e = self.form
        return FactValue(e.c, e.m * n + e.o)

    def first_exceeding(self, t, start: int) -> int:
        e = self.form
        if isinstance(t, int):
            t = FactValue(t, 0)
        # least x with c * x! > t, then least n with m*n + o >= x
        x = t.arg
        if _cmp_fact(e.c, x, t.coef, t.arg) > 0:
            while x > 0 and _cmp_fact(e.c, x - 1, t.coef, t.arg) > 0:
                x -= 1
        else:
            x += 1
            while _cmp_fact(e.c, x, t.coef, t.arg) <= 0:
                x += 1
        n = -(-(x - e.o) // e.m)
        return max(n, start)


def value_model(f0: sc.SeqExpr):
    form = exp_form(f0)
    if form is not None:
        return _ExpModel(form)
    ff = fact_form(f0)
    return _FactModel(ff) if ff is not None else _GenericModel(f0)


# ---------------------------------------------------------------- the doubling construction


ADDITIVE = "additive"
MU = "mu"


class _Construction:
    """Breakpoints and block values for one (f0, variant), extended on demand."""

    def __init__(self, f0: sc.SeqExpr, variant: str):
        self.model = value_model(f0)
        self.variant = variant
        self.ks: list[int] = []
        self.vals: list = []
        self.lock = threading.Lock()
        self.failure: Exception | None = None

    def _block_value(self, i: int, k: int):
        idx = k if self.variant == ADDITIVE else k << i
        return vmul(self.model.value(idx), 1 << i)

    def _extend(self) -> None:
        if self.failure is not None:
            raise self.failure
        try:
            if not self.ks:
                k = self.model.first_exceeding(0, 0)
            else:
                k = self.model.first_exceeding(self.vals[-1], self.ks[-1] + 1)
            v = self._block_value(len(self.ks), k)
        except HorizonExceeded as exc:
            self.failure = exc
            raise
        self.ks.append(k)
        self.vals.append(v)

    def ensure(self, i: int) -> None:
        if i < len(self.ks):
            return
        with self.lock:
            while len(self.ks) <= i:
                self._extend()

    def breakpoint(self, i: int) -> int:
        self.ensure(i)
        return self.ks[i]

    def value(self, i: int):
        self.ensure(i)
        return self.vals[i]

    def block_of(self, n: int) -> int | None:
        if n < self.breakpoint(0):
            return None
        i = 0
        while self.breakpoint(i + 1) <= n:
            i += 1
        return i


_CONSTRUCTIONS: dict[tuple, _Construction] = {}
_CONS_LOCK = threading.Lock()


def _construction(f0, variant) -> _Construction:
    key = (f0, variant)
    c = _CONSTRUCTIONS.get(key)
    if c is None:
        with _CONS_LOCK:
            c = _CONSTRUCTIONS.setdefault(key, _Construction(f0, variant))
    return c


@sc._register("together")
@dataclass(frozen=True)
class TogetherF1(sc.SeqExpr):
    """The step function of the doubling construction over f0.

    On block [k_i, k_{i+1}) it takes the value 2**i * f0(k_i) (additive
    variant) or 2**i * f0(2**i * k_i) (mu variant); below k_0 it is 0.
    Block 0 uses the i = 0 value.
    """

    f0: sc.SeqExpr
    variant: str = MU

    structurally_monotone = True

    def __post_init__(self):
        if self.variant not in (ADDITIVE, MU):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def construction(self) -> _Construction:
        return _construction(self.f0, self.variant)

    def breakpoint(self, i: int) -> int:
        return self.construction.breakpoint(i)

    def block_of(self, n: int) -> int | None:
        return self.construction.block_of(n)

    def block_value(self, i: int):
        return self.construction.value(i)

    def _eval(self, n):
        i = self.block_of(n)
        return 0 if i is None else as_int(self.block_value(i))

    def children(self):
        return (self.f0,)

    def to_dict(self):
        return {"op": "together", "f0": self.f0.to_dict(), "variant": self.variant}

    @classmethod
    def _from_dict(cls, d):
        if d.get("variant", MU) not in (ADDITIVE, MU):
            raise MalformedInput("together.variant: expected additive or mu")
        return cls(sc.from_dict(d.get("f0")), d.get("variant", MU))


def _breakpoints_upto(f1: TogetherF1, horizon: int) -> tuple[int, ...]:
    ks, i = [], 0
    while True:
        k = f1.breakpoint(i)
        ks.append(k)
        if k > horizon:
            return tuple(ks)
        i += 1


def breakpoints_additive(f0: sc.SeqExpr, horizon: int) -> tuple[tuple[int, ...], TogetherF1]:
    """Breakpoints up to and including the first one past ``horizon``, and f1.

    k_0 is the first n with f0(n) != 0 and k_{i+1} the first n with
    f0(n) > 2**i * f0(k_i).
    """
    f1 = TogetherF1(f0, ADDITIVE)
    return _breakpoints_upto(f1, horizon), f1


def breakpoints_mu(f0: sc.SeqExpr, horizon: int) -> tuple[tuple[int, ...], TogetherF1]:
    """As ``breakpoints_additive`` with k_{i+1} the first n with f0(n) > 2**i * f0(2**i * k_i)."""
    f1 = TogetherF1(f0, MU)
    return _breakpoints_upto(f1, horizon), f1


def general_fs(f0, f1, ks, s: sc.SubsetSpec, horizon: int | None = None) -> sc.PiecewiseFS:
    """Interleave f0 and f1 along ``ks``, checking the gluing conditions."""
    spec = sc.PiecewiseFS(f0, f1, None if ks is None else tuple(ks), s)
    if horizon is None:
        horizon = (spec.breakpoints[-1] if spec.breakpoints else spec.breakpoint(1)) + 1
    bad = sc.fs_violation(spec, horizon)
    if bad is not None:
        what = "a piece is not monotone" if bad < 0 else f"gluing fails at breakpoint index {bad}"
        raise InvalidConstruction(what, bad)
    return spec


def nonprime_pair(f0: sc.SeqExpr, horizon: int) -> tuple[sc.PiecewiseFS, sc.PiecewiseFS]:
    """(f_even, f_odd): the mu construction interleaved along even and odd blocks."""
    _, f1 = breakpoints_mu(f0, horizon)
    f1.breakpoint(1)  # fails for bounded f0
    return sc.PiecewiseFS(f0, f1, None, sc.EVENS), sc.PiecewiseFS(f0, f1, None, sc.ODDS)


@dataclass(frozen=True)
class MeetCertificate:
    a: int
    n_start: int
    horizon: int
    block0_rule: str = "block 0 takes the i = 0 value"

    def to_dict(self):
        return {"A": str(self.a), "N": str(self.n_start), "horizon": str(self.horizon), "block0": self.block0_rule}


def meet_equiv_certificate(pair, f0: sc.SeqExpr, horizon: int, n_start: int = 0, a_max: int = 1 << 20) -> MeetCertificate:
    """Least A with min(pair) <= f0 <= A * min(pair) on [n_start, horizon]."""
    fe, fo = pair
    need = 1
    for n in range(n_start, horizon + 1):
        m = min(fe(n), fo(n))
        v = f0(n)
        if m > v:
            raise CertificateFailed(f"meet exceeds f0 at n={n}")
        if v > 0:
            if m == 0:
                raise CertificateFailed(f"meet vanishes where f0 does not, at n={n}")
            need = max(need, -(-v // m))
            if need > a_max:
                raise CertificateFailed(f"constant exceeds {a_max} at n={n}")
    return MeetCertificate(need, n_start, horizon)


@dataclass(frozen=True)
class RefutationIndex:
    """f_S(k_i) = lhs > rhs = A * f0(2**k * k_i)."""

    i: int
    n: int
    lhs: object
    rhs: object


def _mu_construction_of(fs) -> TogetherF1:
    if not (isinstance(fs, sc.PiecewiseFS) and fs.breakpoints is None and isinstance(fs.f1, TogetherF1)
            and fs.f1.variant == MU and fs.f1.f0 == fs.f0):
        raise ValueError("expected an interleaving built from the mu construction")
    return fs.f1


def mu_refutation_index(fs: sc.PiecewiseFS, f0: sc.SeqExpr, a: int, k: int, n_min: int = 0) -> RefutationIndex:
    """Least block i in S with 2**i > A, i > k and k_i > n_min, with the exact
    values showing f_S(k_i) > A * f0(2**k * k_i)."""
    f1 = _mu_construction_of(fs)
    if fs.f0 != f0:
        raise ValueError("f0 does not match the construction")
    if fs.s.is_finite:
        raise FiniteS("a finite index set gives a sequence equivalent to f0")
    cons = f1.construction
    i = fs.s.next_at_least(max(a.bit_length(), k + 1))
    while cons.breakpoint(i) <= n_min:
        i = fs.s.next_at_least(i + 1)
    ki = cons.breakpoint(i)
    lhs = cons.value(i)
    rhs = vmul(cons.model.value(ki << k), a)
    if not vgt(lhs, rhs):
        raise CertificateFailed(f"inequality failed at block {i}")
    return RefutationIndex(i, ki, lhs, rhs)


def finite_support_certificate(fs: sc.PiecewiseFS, horizon: int) -> int:
    """For finite S, the index N past which f_S equals f0; checked exactly up to ``horizon``."""
    if not fs.s.is_finite:
        raise ValueError("the index set is infinite")
    last = fs.s.max_index()
    n_start = 0 if last is None else fs.breakpoint(last + 1)
    for n in range(n_start, horizon + 1):
        if fs(n) != fs.f0(n):
            raise CertificateFailed(f"f_S differs from f0 at n={n}")
    return n_start


def refutation_table(fs, f0, a_max_exp: int, k_max: int) -> list[RefutationIndex]:
    return [mu_refutation_index(fs, f0, 1 << e, k) for k in range(k_max + 1) for e in range(a_max_exp + 1)]


def value_json(v):
    return str(v) if isinstance(v, int) else v.to_dict()


def is_unbounded_hint(f0: sc.SeqExpr) -> bool:
    try:
        _construction(f0, MU).ensure(2)
    except (HorizonExceeded, BudgetExhausted):
        return False
    return True
