"""Membership deciders for thick and radical tensor ideals of perfect complexes.

Thick membership of R/x^f in the ideal generated by R/x^g is the shifted
order f <=_sigma g; radical membership is the dilated order f <=_mu g.
"""

from __future__ import annotations

from dataclasses import replace

from . import asymorder as ao
from . import dvralg as dv
from . import growth as gr
from . import seqcore as sc
from . import witness as wt
from .asymorder import DEFAULT_BUDGET, MU, PLAIN, PROVED, REFUTED, SIGMA, WINDOW, SearchBudget, Verdict
from .errors import HorizonExceeded, PreconditionUnproved


def thick_membership_principal(f, g, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Is R/x^f in the thick ideal generated by R/x^g?"""
    return replace(ao.compare(f, g, SIGMA, budget), label="thick")


def radical_membership_principal(f, g, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Is R/x^f in the radical ideal generated by R/x^g?"""
    return replace(ao.compare(f, g, MU, budget), label="radical")


def radical_membership(e: dv.Complex, x: dv.Complex, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Is E in the radical ideal generated by X? Compares monotone hulls of
    the Loewy sequences under the dilated order."""
    le = sc.mono(dv.loewy_seq(e))
    lx = sc.mono(dv.loewy_seq(x))
    return replace(ao.compare(le, lx, MU, budget), label="radical")


def ideal_membership_mu_stable(e: dv.Complex, f: sc.SeqExpr, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Is E in the ideal generated by R/x^f, for a mu-stable f?"""
    stable = ao.is_stable(f, MU, budget)
    if stable.status is not PROVED:
        raise PreconditionUnproved(f"stability under dilation is {stable.status.value}, not Proved")
    le = sc.mono(dv.loewy_seq(e))
    return replace(ao.compare(le, f, PLAIN, budget), label="member")


def is_radical_principal(f, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    return replace(ao.is_stable(f, MU, budget), label="radical_principal")


def mt1(f, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """mu f <=_sigma f and mu sigma f <=_sigma f."""
    parts = [ao.compare(sc.MuDilate(f, 1), f, SIGMA, budget),
             ao.compare(sc.MuDilate(sc.SigmaShift(f, 1), 1), f, SIGMA, budget)]
    return ao.combine_all(parts, SIGMA, "mt1")


def mt2(f, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """f <=_sigma the monotone hull of its even/odd split."""
    return replace(ao.compare(f, sc.fsplit_mono(f), SIGMA, budget), label="mt2")


def radical_meet_generator(f, g) -> sc.SeqExpr:
    return sc.Meet(f, g)


def radical_join_generator(f, g) -> sc.SeqExpr:
    return sc.Join(f, g)


def _construction_certificate(f, budget) -> ao.RefutationCertificate:
    def finder(a, k):
        f_even, _ = wt.nonprime_pair(f, 0)
        r = wt.mu_refutation_index(f_even, f, a, k, budget.n0)
        return ao.GridRow(a, k, r.n, r.lhs, r.rhs)

    desc = ("f_even = interleaving of f with its doubling step function on even blocks; "
            "meet(f_even, f_odd) = f, yet f_even(k_i) > A f(2^k k_i) on a late even block i. "
            "Block 0 takes the i = 0 value.")
    return ao.RefutationCertificate("Construction", "construction.even_odd_interleave", desc, (), finder)


def is_prime_principal(f, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Does R/x^f generate a prime radical ideal?

    Proved for the zero and bounded classes (the witness records the bound
    f <= A * 1 from n0 on); Refuted for provably unbounded f, with the even/odd
    interleaving as a lazily evaluated certificate.
    """
    env = gr.envelope(f)
    if env is not None and env.upper.kind in (gr.ZERO, gr.BOUNDED):
        a = 1 if env.upper.kind == gr.ZERO else max(1, -(-env.hi.numerator // env.hi.denominator))
        rule = "prime.zero_class" if env.upper.kind == gr.ZERO else "prime.bounded_class"
        return Verdict(PROVED, MU, witness=ao.BoundWitness(a, 0, env.n0, rule), label="prime")
    if env is not None and env.lower.kind >= gr.POLY:
        return Verdict(REFUTED, MU, certificate=_construction_certificate(f, budget), label="prime")
    report = ao.window_search(f, sc.Const(1), PLAIN, budget)
    return Verdict(WINDOW, MU, window_report=report, label="prime")


# ---------------------------------------------------------------- dominating recursion


def _ext(values, n):
    if n < 0:
        return 0
    return values[n] if n < len(values) else values[-1]


def dominating_sequence(f0: sc.SeqWindow, s: int, k: int) -> sc.SeqWindow:
    """f_k(n) = f_{k-1}(n) + f_{k-1}(n - s), f0 extended by 0 below 0 and by
    its last value past the window; returned on the same index range."""
    vals = f0.values
    if not vals:
        raise ValueError("empty window")
    if k == 0:
        return f0
    cache: dict[tuple[int, int], int] = {}

    def fk(j, n):
        if j == 0:
            return _ext(vals, n)
        key = (j, n)
        v = cache.get(key)
        if v is None:
            v = fk(j - 1, n) + fk(j - 1, n - s)
            cache[key] = v
        return v

    return sc.SeqWindow.of(fk(k, n) for n in range(len(vals)))


def domination_bound_check(f0: sc.SeqWindow, s: int, k: int, strict: bool = False) -> bool:
    """Check f_k(n) <= 2**k * f0(n + k|s|) on the window.

    With ``strict`` the right side may not use the last-value extension and
    HorizonExceeded is raised when n + k|s| leaves the window.
    """
    vals = f0.values
    fk = dominating_sequence(f0, s, k).values
    reach = k * abs(s)
    for n, v in enumerate(fk):
        m = n + reach
        if strict and m >= len(vals):
            raise HorizonExceeded(f"index {m} is past the window of length {len(vals)}")
        if v > (1 << k) * _ext(vals, m):
            return False
    return True

