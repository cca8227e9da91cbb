"""Deciders for the asymptotic pre-orders on nondecreasing sequences.

Three relations are supported:

* Plain: f(n) <= A*g(n) for n >= n0
* Sigma: f(n) <= A*g(n+k) for n >= n0
* Mu:    f(n) <= A*g(2**k * n) for n >= n0

A verdict is Proved or Refuted only when an exact rule applies (closed-form
growth envelopes, structural identities or a registered divergence
argument). Anything else is reported as WindowEvidence from a finite scan.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

from . import growth as gr
from . import seqcore as sc
from .errors import BudgetExhausted, HorizonExceeded, MalformedInput
from .intmath import ceil_frac


class Status(str, Enum):
    PROVED = "Proved"
    REFUTED = "Refuted"
    WINDOW = "WindowEvidence"


class Relation(str, Enum):
    PLAIN = "Plain"
    SIGMA = "Sigma"
    MU = "Mu"

    @classmethod
    def parse(cls, s) -> "Relation":
        if isinstance(s, Relation):
            return s
        for r in cls:
            if str(s).lower() == r.value.lower():
                return r
        raise MalformedInput(f"unknown relation {s!r}")


PLAIN, SIGMA, MU = Relation.PLAIN, Relation.SIGMA, Relation.MU
PROVED, REFUTED, WINDOW = Status.PROVED, Status.REFUTED, Status.WINDOW


@dataclass(frozen=True)
class SearchBudget:
    """Search limits.

    ``amax``/``kmax`` bound the constant 2**amax and the shift k; ``n0`` and
    ``horizon`` bound window scans. ``max_window_index`` caps the largest
    index evaluated in a Mu window scan and ``index_cap`` caps the search for
    counterexample indices.
    """

    amax: int = 20
    kmax: int = 32
    n0: int = 0
    horizon: int = 512
    max_window_index: int = 1 << 14
    index_cap: int = 1 << 64


DEFAULT_BUDGET = SearchBudget()


def shifted(g: sc.SeqExpr, rel: Relation, k: int) -> sc.SeqExpr:
    """g(n), g(n+k) or g(2**k n) according to the relation."""
    if rel is PLAIN or k == 0:
        return g
    return sc.sigma(g, k) if rel is SIGMA else sc.mu(g, k)


@dataclass(frozen=True)
class BoundWitness:
    """Claims f(n) <= A * shifted(g, k)(n) for every n >= n0."""

    a: int
    k: int
    n0: int
    rule_id: str

    def check(self, f, g, rel, lo: int, hi: int) -> bool:
        """Replay the inequality exactly on [max(lo, n0), hi]."""
        gk = shifted(g, Relation.parse(rel), self.k)
        return all(f(n) <= self.a * gk(n) for n in range(max(lo, self.n0), hi + 1))

    def to_dict(self):
        return {"A": str(self.a), "k": str(self.k), "n0": str(self.n0), "rule": self.rule_id}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["A"]), int(d["k"]), int(d["n0"]), d["rule"])


@dataclass(frozen=True)
class GridRow:
    a: int
    k: int
    n: int
    lhs: object
    rhs: object

    def to_dict(self):
        return {"A": str(self.a), "k": str(self.k), "n": str(self.n), "lhs": _num(self.lhs), "rhs": _num(self.rhs)}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["A"]), int(d["k"]), int(d["n"]), _unnum(d["lhs"]), _unnum(d["rhs"]))


def _num(v):
    if isinstance(v, int):
        return str(v)
    return v.to_dict()


def _unnum(v):
    if isinstance(v, str):
        return int(v)
    from .witness import value_from_dict

    return value_from_dict(v)


@dataclass(frozen=True)
class RefutationCertificate:
    """Produces, for each (A, k), an index where the bound fails.

    ``kind`` is RatioUnbounded, GrowthClassRule or Construction. ``finder``
    maps (A, k) to a grid row whose inequality lhs > rhs holds exactly.
    """

    kind: str
    rule_id: str
    description: str
    grid: tuple[GridRow, ...] = ()
    finder: Callable[[int, int], GridRow] | None = field(default=None, compare=False, repr=False)

    def index_for(self, a: int, k: int) -> GridRow:
        if self.finder is None:
            for row in self.grid:
                if row.a == a and row.k == k:
                    return row
            raise BudgetExhausted("certificate was deserialized without a live index finder")
        return self.finder(a, k)

    def with_grid(self, amax: int, kmax: int, a_values=None) -> "RefutationCertificate":
        avals = a_values if a_values is not None else [1 << i for i in range(amax + 1)]
        rows = tuple(self.index_for(a, k) for k in range(kmax + 1) for a in avals)
        return replace(self, grid=rows)

    def to_dict(self):
        d = {"kind": self.kind, "rule": self.rule_id, "description": self.description}
        if self.grid:
            d["grid"] = [r.to_dict() for r in self.grid]
        return d

    @classmethod
    def from_dict(cls, d):
        rows = tuple(GridRow.from_dict(r) for r in d.get("grid", []))
        return cls(d["kind"], d["rule"], d["description"], rows)


@dataclass(frozen=True)
class WindowReport:
    holds: bool
    a: int | None
    k: int | None
    n0: int
    horizon: int

    def to_dict(self):
        s = lambda v: None if v is None else str(v)  # noqa: E731
        return {"holds": self.holds, "A": s(self.a), "k": s(self.k), "n0": str(self.n0), "horizon": str(self.horizon)}

    @classmethod
    def from_dict(cls, d):
        i = lambda v: None if v is None else int(v)  # noqa: E731
        return cls(bool(d["holds"]), i(d["A"]), i(d["k"]), int(d["n0"]), int(d["horizon"]))


@dataclass(frozen=True)
class Verdict:
    status: Status
    relation: Relation
    witness: BoundWitness | None = None
    certificate: RefutationCertificate | None = None
    window_report: WindowReport | None = None
    parts: tuple["Verdict", ...] = ()
    label: str = ""

    def __post_init__(self):
        if self.status is PROVED and self.witness is None and not self.parts:
            raise ValueError("a proved verdict needs a witness")
        if self.status is REFUTED and self.certificate is None and not self.parts:
            raise ValueError("a refuted verdict needs a certificate")
        if self.status is WINDOW and self.window_report is None and not self.parts:
            raise ValueError("window evidence needs a report")

    @property
    def proved(self) -> bool:
        return self.status is PROVED

    @property
    def refuted(self) -> bool:
        return self.status is REFUTED

    def with_grid(self, amax: int, kmax: int) -> "Verdict":
        """Copy with every certificate replayed on the (A, k) grid."""
        cert = self.certificate
        if cert is not None and cert.finder is not None:
            k_hi = 0 if self.relation is PLAIN else kmax
            cert = cert.with_grid(amax, k_hi)
        parts = tuple(p.with_grid(amax, kmax) for p in self.parts)
        return replace(self, certificate=cert, parts=parts)

    def to_dict(self) -> dict:
        d = {"status": self.status.value, "relation": self.relation.value}
        if self.label:
            d["label"] = self.label
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        if self.window_report is not None:
            d["window"] = self.window_report.to_dict()
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d) -> "Verdict":
        return cls(
            Status(d["status"]),
            Relation(d["relation"]),
            BoundWitness.from_dict(d["witness"]) if "witness" in d else None,
            RefutationCertificate.from_dict(d["certificate"]) if "certificate" in d else None,
            WindowReport.from_dict(d["window"]) if "window" in d else None,
            tuple(cls.from_dict(p) for p in d.get("parts", [])),
            d.get("label", ""),
        )


# ---------------------------------------------------------------- counterexample search


def search_violation(f, gk, a: int, start: int = 0, cap: int = DEFAULT_BUDGET.index_cap) -> tuple[int, int, int]:
    """Find n >= start with f(n) > a*gk(n); scans a short stretch, then doubles."""
    cands = list(range(start, start + 16))
    n = start + 16
    while n <= cap:
        cands.append(n)
        n = 2 * n + 1
    if cands[-1] < cap:
        cands.append(cap)
    for n in cands:
        lhs, rhs = f(n), a * gk(n)
        if lhs > rhs:
            return n, lhs, rhs
    raise BudgetExhausted(f"no violation found below index {cap} for A={a}")


def _search_finder(f, g, rel, start, cap):
    def finder(a, k):
        gk = shifted(g, rel, k)
        n, lhs, rhs = search_violation(f, gk, a, start, cap)
        return GridRow(a, k, n, lhs, rhs)

    return finder


# ---------------------------------------------------------------- registered divergence rules


@dataclass(frozen=True)
class RatioRule:
    rule_id: str
    description: str
    index: Callable[[int, int], int]


_RATIO_RULES: dict[tuple, RatioRule] = {}


def register_ratio_rule(f, g, rel, rule: RatioRule) -> None:
    """Register a hand-proved divergence f(n)/shifted(g)(n) -> infinity."""
    _RATIO_RULES[(f, g, Relation.parse(rel))] = rule


def mu_not_injective_pair() -> tuple[sc.SeqExpr, sc.SeqExpr]:
    """f(n) = n! at even n and (n+1)! at odd n, together with g = n!.

    Their dilations agree pointwise, yet f is not bounded by any multiple of g.
    """
    f = sc.SigmaShift(sc.SplitStretch(sc.MuDilate(sc.Factorial(), 1)), 1)
    return f, sc.Factorial()


def double_exponential_pair() -> tuple[sc.SeqExpr, sc.SeqExpr]:
    """f(n) = 2**(2**(2n + (-1)**n)) and g(n) = 2**(4**n).

    Each is the square of the other on alternating parities, so neither
    bounds the other.
    """
    two = sc.Exp(2)
    f = sc.Compose(two, sc.Scale(2, sc.SplitStretch(sc.Exp(16))))
    g = sc.Compose(two, sc.Exp(4))
    return f, g


def _install_rules():
    f, g = mu_not_injective_pair()

    def odd_above(a, k):
        n = a + 1
        return n if n % 2 else n + 1

    register_ratio_rule(f, g, PLAIN, RatioRule(
        "ratio.even_odd_factorial", "smallest odd n > A: f(n)/g(n) = n + 1", odd_above))

    df, dg = double_exponential_pair()

    def even_g_exceeds(a, k):
        n, bits = 0, a.bit_length()
        while 4**n < bits:
            n += 2
        return n

    def odd_f_exceeds(a, k):
        n, bits = 1, a.bit_length()
        while 2 * 16 ** ((n - 1) // 2) < bits:
            n += 2
        return n

    register_ratio_rule(df, dg, PLAIN, RatioRule(
        "ratio.double_exp_even", "smallest even n with g(n) > A: f(n) = g(n)^2 there", even_g_exceeds))
    register_ratio_rule(dg, df, PLAIN, RatioRule(
        "ratio.double_exp_odd", "smallest odd n with f(n) > A: g(n) = f(n)^2 there", odd_f_exceeds))


_install_rules()


# ---------------------------------------------------------------- decision procedure


def _proved(rel, a, k, n0, rule):
    return Verdict(PROVED, rel, witness=BoundWitness(max(1, a), k, max(0, n0), rule))


def _k_range(rel: Relation, kmax: int):
    return range(0, 1) if rel is PLAIN else range(0, kmax + 1)


def _structural(f, g, rel) -> Verdict | None:
    if isinstance(f, sc.Zero):
        return _proved(rel, 1, 0, 0, "struct.zero_below")
    if f == g:
        return _proved(rel, 1, 0, 0, "struct.reflexive")
    if rel is SIGMA and isinstance(f, sc.SigmaShift) and f.of == g:
        return _proved(rel, 1, f.k, 0, "struct.shift_of")
    if rel is MU and isinstance(f, sc.MuDilate) and f.of == g:
        return _proved(rel, 1, f.k, 0, "struct.dilate_of")
    if isinstance(f, sc.Scale) and f.of == g:
        return _proved(rel, f.a, 0, 0, "struct.scale_of")
    return None


def _envelope_decide(f, g, rel, budget: SearchBudget) -> Verdict | None:
    ef, eg = gr.envelope(f), gr.envelope(g)
    if ef is None or eg is None:
        return None
    move = {PLAIN: lambda e, k: e, SIGMA: gr.sigma_env, MU: gr.mu_env}[rel]
    for k in _k_range(rel, budget.kmax):
        eg_k = move(eg, k)
        if eg_k.lower.kind == gr.ZERO and ef.upper.kind != gr.ZERO:
            continue
        r = gr.dominated(ef.upper, eg_k.lower)
        if r is None:
            continue
        c, n1 = r
        a = ceil_frac(ef.hi * c / eg_k.lo) if ef.upper.kind != gr.ZERO else 1
        n0 = max(ef.n0, eg_k.n0, n1)
        return _proved(rel, a, k, n0, f"envelope.{gr.KIND_NAMES[ef.upper.kind]}_le_{gr.KIND_NAMES[eg_k.lower.kind]}")
    lf, ug = ef.lower, eg.upper
    refutable = gr.strictly_greater(lf, ug)
    if refutable and rel is SIGMA and lf.kind == ug.kind == gr.FACT:
        refutable = lf.p > ug.p
    if refutable and rel is MU and lf.kind == ug.kind and lf.kind in (gr.EXP, gr.FACT):
        refutable = False
    if refutable:
        rule = f"envelope.{gr.KIND_NAMES[lf.kind]}_gt_{gr.KIND_NAMES[ug.kind]}"
        desc = f"{lf.describe()} outgrows every admissible multiple of {ug.describe()}"
        start = max(ef.n0, budget.n0)
        cert = RefutationCertificate("GrowthClassRule", rule, desc, (), _search_finder(f, g, rel, start, budget.index_cap))
        return Verdict(REFUTED, rel, certificate=cert)
    if rel is not PLAIN:
        k_big = 8 * budget.kmax + 64
        eg_k = move(eg, k_big)
        if gr.dominated(ef.upper, eg_k.lower) is not None:
            raise BudgetExhausted(f"a bound exists only with k > kmax={budget.kmax}")
    return None


def _registered(f, g, rel, budget) -> Verdict | None:
    rule = _RATIO_RULES.get((f, g, rel))
    if rule is None:
        return None

    def finder(a, k):
        n = max(rule.index(a, k), budget.n0)
        gk = shifted(g, rel, k)
        lhs, rhs = f(n), a * gk(n)
        if lhs <= rhs:
            raise BudgetExhausted(f"registered rule {rule.rule_id} failed to replay at A={a}, k={k}")
        return GridRow(a, k, n, lhs, rhs)

    cert = RefutationCertificate("RatioUnbounded", rule.rule_id, rule.description, (), finder)
    return Verdict(REFUTED, rel, certificate=cert)


def window_search(f, g, rel, budget: SearchBudget = DEFAULT_BUDGET) -> WindowReport:
    """Look for the least (k, A = 2**i) that works on the finite window."""
    rel = Relation.parse(rel)
    n0, horizon = budget.n0, budget.horizon
    fv = []
    eff = horizon
    for n in range(n0, horizon + 1):
        try:
            fv.append(f(n))
        except (BudgetExhausted, HorizonExceeded):
            eff = n - 1
            break
    if eff < n0:
        raise BudgetExhausted("window is empty: values cannot be materialized")
    for k in _k_range(rel, budget.kmax):
        if rel is MU and (eff << k) > budget.max_window_index and k > 0:
            break
        gk = shifted(g, rel, k)
        need = 1
        ok = True
        for n in range(n0, eff + 1):
            lhs = fv[n - n0]
            if lhs == 0:
                continue
            try:
                rhs = gk(n)
            except (BudgetExhausted, HorizonExceeded):
                ok = False
                break
            if rhs == 0:
                ok = False
                break
            need = max(need, -(-lhs // rhs))
            if need > 1 << budget.amax:
                ok = False
                break
        if ok:
            a = 1 << max(0, (need - 1).bit_length())
            return WindowReport(True, a, k, n0, eff)
    return WindowReport(False, None, None, n0, eff)


def compare(f: sc.SeqExpr, g: sc.SeqExpr, rel=PLAIN, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Decide whether f is bounded by g under the given relation."""
    rel = Relation.parse(rel)
    for step in (_structural, lambda *a: _envelope_decide(*a, budget), lambda *a: _registered(*a, budget)):
        v = step(f, g, rel)
        if v is not None:
            return v
    return Verdict(WINDOW, rel, window_report=window_search(f, g, rel, budget))


def is_stable(f: sc.SeqExpr, mode=SIGMA, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """sigma f <= f (mode Sigma) or mu f <= f (mode Mu), as a Plain comparison."""
    mode = Relation.parse(mode)
    if mode is PLAIN:
        raise ValueError("stability is defined for Sigma and Mu only")
    lifted = sc.SigmaShift(f, 1) if mode is SIGMA else sc.MuDilate(f, 1)
    v = compare(lifted, f, PLAIN, budget)
    return replace(v, label=f"stable.{mode.value.lower()}")


def combine_all(parts, rel, label="") -> Verdict:
    """Conjunction of verdicts, exact only when every part is exact."""
    parts = tuple(parts)
    refuted = [p for p in parts if p.status is REFUTED]
    if refuted:
        return Verdict(REFUTED, rel, certificate=refuted[0].certificate, parts=parts, label=label)
    windows = [p for p in parts if p.status is WINDOW]
    if windows:
        holds = all(w.window_report.holds for w in windows if w.window_report is not None)
        w0 = windows[0].window_report
        rep = None if w0 is None else replace(w0, holds=holds)
        return Verdict(WINDOW, rel, window_report=rep, parts=parts, label=label)
    return Verdict(PROVED, rel, witness=parts[0].witness, parts=parts, label=label)


def equiv(f: sc.SeqExpr, g: sc.SeqExpr, rel=PLAIN, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    rel = Relation.parse(rel)
    return combine_all([compare(f, g, rel, budget), compare(g, f, rel, budget)], rel, "equiv")


growth_class = gr.growth_class
