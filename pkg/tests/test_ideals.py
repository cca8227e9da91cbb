import pytest
from fractions import Fraction

from dvrspec import asymorder as ao
from dvrspec import dvralg as dv
from dvrspec import ideals as idl
from dvrspec import seqcore as sc
from dvrspec.errors import HorizonExceeded, PreconditionUnproved

P, R, W = ao.PROVED, ao.REFUTED, ao.WINDOW


def test_thick_membership():
    n, n2 = sc.identity(), sc.monomial(2)
    assert idl.thick_membership_principal(n, n2).status is P
    v = idl.thick_membership_principal(sc.SigmaShift(n2, 3), n2)
    assert v.proved and v.witness.a == 1
    assert idl.thick_membership_principal(sc.Exp(4), sc.Exp(2)).status is R


def test_radical_membership_principal():
    assert idl.radical_membership_principal(sc.Exp(4), sc.Exp(2)).status is P
    assert idl.radical_membership_principal(sc.Exp(3), sc.Exp(3)).status is P
    assert idl.radical_membership_principal(sc.Factorial(), sc.identity()).status is R


def test_radical_membership_complexes():
    f = sc.Poly((1, 1))
    assert idl.radical_membership(dv.explode(dv.rxf(f), sc.Exp(2)), dv.rxf(f)).status is P
    assert idl.radical_membership(dv.ZERO_COMPLEX, dv.rxf(sc.Const(1))).status is P
    v = idl.radical_membership(dv.rxf(sc.Exp(2)), dv.rxf(sc.identity()))
    assert v.status is R
    row = v.certificate.index_for(4, 2)
    assert row.lhs > row.rhs


def test_membership_against_mu_stable_generator():
    e = dv.FiniteComplex(((0, dv.FinModule.cyclic(3)), (2, dv.FinModule(0, (5, 1)))))
    assert idl.ideal_membership_mu_stable(e, sc.Const(1)).status is P
    assert idl.ideal_membership_mu_stable(dv.rxf(sc.monomial(2)), sc.identity()).status is R
    assert idl.ideal_membership_mu_stable(dv.ZERO_COMPLEX, sc.identity()).status is P
    with pytest.raises(PreconditionUnproved):
        idl.ideal_membership_mu_stable(e, sc.Exp(2))


@pytest.mark.parametrize("f, status", [(sc.monomial(2), P), (sc.Exp(2), R), (sc.Zero(), P), (sc.Const(4), P)])
def test_radical_principal(f, status):
    assert idl.is_radical_principal(f).status is status


FAMILY = [sc.Zero(), sc.Const(1), sc.identity(), sc.monomial(2), sc.Exp(2), sc.Factorial(),
          sc.PowerFloor(Fraction(3, 2))]


@pytest.mark.parametrize("f", FAMILY, ids=lambda f: type(f).__name__)
def test_mt_conditions_agree_with_mu_stability(f):
    s = ao.is_stable(f, ao.MU).status
    assert idl.mt1(f).status is s
    assert idl.mt2(f).status is s


def test_meet_generator():
    f, g = sc.monomial(2), sc.Exp(2)
    m = idl.radical_meet_generator(f, g)
    assert isinstance(m, sc.Meet)
    assert ao.equiv(m, sc.Convolve(f, g), ao.MU).proved
    assert ao.equiv(idl.radical_meet_generator(f, sc.Zero()), sc.Zero(), ao.PLAIN).proved
    assert isinstance(idl.radical_join_generator(f, g), sc.Join)


@pytest.mark.parametrize("f", [sc.Zero(), sc.Const(1), sc.Const(7)])
def test_bounded_classes_are_prime(f):
    v = idl.is_prime_principal(f)
    assert v.status is P
    assert v.witness.check(f, sc.Const(1), ao.PLAIN, 0, 200)


@pytest.mark.parametrize("f", [sc.identity(), sc.monomial(2), sc.Exp(2), sc.Factorial(), sc.PowerFloor(Fraction(1, 2))],
                         ids=lambda f: type(f).__name__)
def test_unbounded_classes_are_not_prime(f):
    v = idl.is_prime_principal(f).with_grid(3, 2)
    assert v.status is R
    assert len(v.certificate.grid) == 4 * 3
    assert all(row.lhs > row.rhs for row in v.certificate.grid)


def test_opaque_prime_gets_window_evidence():
    f = sc.PiecewiseFS(sc.identity(), sc.identity(), (1, 4), sc.EVENS)
    assert idl.is_prime_principal(f).status is W


def test_dominating_sequence():
    f0 = sc.SeqWindow.of([1, 2, 3, 5, 8])
    assert idl.dominating_sequence(f0, 2, 0) == f0
    assert idl.dominating_sequence(f0, 1, 1).values == (1, 3, 5, 8, 13)
    assert idl.domination_bound_check(f0, -2, 3)
    assert idl.domination_bound_check(f0, 0, 2)


def test_domination_strict_window():
    f0 = sc.SeqWindow.of([1, 2, 3])
    with pytest.raises(HorizonExceeded):
        idl.domination_bound_check(f0, 1, 2, strict=True)
