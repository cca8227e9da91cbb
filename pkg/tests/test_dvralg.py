import itertools
import json

import pytest
from hypothesis import given, strategies as st

from dvrspec import dvralg as dv
from dvrspec import seqcore as sc
from dvrspec.errors import MalformedInput, NotFiniteLength, ZeroComplex
from oracles import kunneth, module_tensor, module_tor1
from strategies import monotone_lists

modules = st.builds(lambda f, t: dv.FinModule(f, tuple(t)), st.integers(0, 2), st.lists(st.integers(0, 8), max_size=4))


def _pair(m):
    return m.free_rank, list(m.torsion)


def test_loewy_length_examples():
    assert dv.loewy_length(dv.FinModule(0, (3, 5, 2))) == 5
    assert dv.loewy_length(dv.ZERO_MODULE) == 0
    assert dv.loewy_length(dv.FinModule.cyclic(7)) == 7
    with pytest.raises(NotFiniteLength):
        dv.loewy_length(dv.R)


def test_tensor_tor_examples():
    c2, c3 = dv.FinModule.cyclic(2), dv.FinModule.cyclic(3)
    assert dv.tensor_modules(c2, c3) == c2
    assert dv.tor1_modules(c2, c3) == c2
    assert dv.tensor_modules(dv.FinModule(0, (2, 4)), c3) == dv.FinModule(0, (3, 2))
    assert dv.tensor_modules(dv.R, dv.FinModule.cyclic(6)) == dv.FinModule.cyclic(6)
    assert dv.tor1_modules(dv.R, dv.FinModule.cyclic(6)).is_zero


@given(modules, modules)
def test_tensor_and_tor_match_bilinear_oracle(m, n):
    assert _pair(dv.tensor_modules(m, n)) == module_tensor(_pair(m), _pair(n))
    assert _pair(dv.tor1_modules(m, n)) == module_tor1(_pair(m), _pair(n))


def test_loewy_laws_exhaustive():
    multisets = [t for size in range(1, 5) for t in itertools.combinations_with_replacement(range(1, 9), size)]
    sample = multisets[::7]
    for a in sample:
        for b in sample:
            m, n = dv.FinModule(0, a), dv.FinModule(0, b)
            la, lb = max(a), max(b)
            assert dv.loewy_length(m + n) == max(la, lb)
            assert dv.loewy_length(dv.tensor_modules(m, n)) == min(la, lb)
            assert dv.loewy_length(dv.tor1_modules(m, n)) == min(la, lb)


def test_homology_examples():
    assert dv.homology_at(dv.rxf(sc.identity()), 3) == dv.FinModule.cyclic(3)
    tower = dv.r_up()
    assert all(dv.homology_at(tower, n) == dv.R for n in range(5))
    assert dv.homology_at(tower, -1).is_zero


def test_homology_tensor_of_unit_towers():
    x = dv.rxf(sc.Const(1))
    # H_1 = (k(x)k)^2 from (0,1), (1,0) plus Tor_1(k, k) from (0,0)
    assert dv.homology_tensor(x, x, 1) == dv.FinModule(0, (1, 1, 1))
    assert dv.homology_tensor(x, x, 0) == dv.FinModule(0, (1,))


def test_tensor_with_free_tower():
    f = sc.window_ext([1, 3, 4, 4, 7])
    for n in range(8):
        expected = dv.FinModule(0, tuple(f(i) for i in range(n + 1)))
        assert dv.homology_tensor(dv.rxf(f), dv.r_up(), n) == expected


finite_complexes = st.dictionaries(st.integers(-2, 4), modules, max_size=4).map(lambda d: dv.FiniteComplex(tuple(d.items())))


@given(finite_complexes, finite_complexes)
def test_homology_tensor_matches_kunneth_oracle(x, y):
    hx = {d: _pair(m) for d, m in x.parts}
    hy = {d: _pair(m) for d, m in y.parts}
    for n in range(-5, 10):
        assert _pair(dv.homology_tensor(x, y, n)) == kunneth(hx, hy, n)


def test_loewy_seq_rules():
    f = sc.Poly((1, 1))
    assert dv.loewy_seq(dv.rxf(f)) == f
    assert dv.loewy_seq(dv.ZERO_COMPLEX) == sc.Zero()
    x = dv.FiniteComplex(((2, dv.FinModule.cyclic(3)), (4, dv.FinModule.cyclic(5))))
    base = [dv.loewy_seq(x)(n) for n in range(6)]
    assert base == [3, 0, 5, 0, 0, 0]
    assert [dv.loewy_seq(dv.shift(x, 7))(n) for n in range(6)] == base
    with pytest.raises(NotFiniteLength):
        dv.loewy_seq(dv.unit_complex())


def test_loewy_seq_skips_leading_zeros():
    f = sc.window_ext([0, 0, 2, 5])
    assert [dv.loewy_seq(dv.rxf(f))(n) for n in range(3)] == [2, 5, 5]
    assert [dv.loewy_seq_raw(dv.rxf(f))(n) for n in range(3)] == [0, 0, 2]


def test_explode():
    f, a = sc.identity(), sc.window_ext([2, 0, 3])
    e = dv.explode(dv.rxf(f), a)
    assert dv.homology_at(e, 2) == dv.FinModule(0, (2, 2, 2))
    assert dv.homology_at(e, 1).is_zero
    assert dv.explode(dv.rxf(f), sc.Zero()).is_zero()
    x = dv.FiniteComplex(((-1, dv.FinModule.cyclic(4)), (0, dv.FinModule.cyclic(2)), (3, dv.FinModule(0, (1, 5)))))
    one = dv.explode(x, sc.Const(1))
    t = dv.truncate_geq(x, 0)
    assert all(dv.homology_at(one, n) == dv.homology_at(t, n) for n in range(-3, 6))
    g = sc.Poly((1, 1))
    assert dv.summand_count_seq(dv.explode(dv.rxf(g), sc.Poly((2, 1)))) == sc.Poly((2, 1))


def test_split_even_odd_for_rxf():
    f = sc.Poly((1, 2, 1))
    sp, ev, od = dv.split_even_odd(dv.rxf(f))
    for i in range(6):
        assert dv.homology_at(sp, 2 * i) == dv.FinModule.cyclic(f(i))
        assert dv.homology_at(sp, 2 * i + 1).is_zero
        assert dv.homology_at(ev, i) == dv.FinModule.cyclic(f(2 * i))
        assert dv.homology_at(od, i) == dv.FinModule.cyclic(f(2 * i + 1))
    assert all(c.is_zero() for c in dv.split_even_odd(dv.ZERO_COMPLEX))


def test_split_even_odd_general():
    x = dv.FiniteComplex(((0, dv.FinModule.cyclic(1)), (1, dv.FinModule.cyclic(2)), (2, dv.FinModule.cyclic(3))))
    sp, ev, od = dv.split_even_odd(x)
    assert [dv.homology_at(sp, n) for n in range(5)] == [dv.FinModule.cyclic(1), dv.ZERO_MODULE, dv.FinModule.cyclic(2),
                                                          dv.ZERO_MODULE, dv.FinModule.cyclic(3)]
    assert [dv.homology_at(ev, n) for n in range(2)] == [dv.FinModule.cyclic(1), dv.FinModule.cyclic(3)]
    assert dv.homology_at(od, 0) == dv.FinModule.cyclic(2)


def test_inf_degree():
    assert dv.inf_degree(dv.shift(dv.rxf(sc.Const(1)), 5)) == 5
    with pytest.raises(ZeroComplex):
        dv.inf_degree(dv.ZERO_COMPLEX)


def test_truncate():
    f = sc.identity()
    t = dv.truncate_geq(dv.rxf(f), 3)
    assert dv.homology_at(t, 2).is_zero
    assert all(dv.homology_at(t, n) == dv.FinModule.cyclic(n) for n in range(3, 8))


@given(monotone_lists, finite_complexes)
def test_complex_json_round_trip(vals, x):
    for c in (x, dv.rxf(sc.window_ext(vals)), dv.Tensor(x, dv.r_up()), dv.explode(x, sc.Const(2)),
              dv.split_even_odd(x)[1], dv.shift(x, 3), dv.DirectSum((x, dv.rxf(sc.Const(2))))):
        back = dv.complex_from_dict(json.loads(json.dumps(c.to_dict())))
        assert back == c


def test_module_json():
    m = dv.FinModule(1, (4, 2))
    assert dv.FinModule.from_dict(m.to_dict()) == m
    with pytest.raises(MalformedInput):
        dv.FinModule.from_dict({"torsion": ["x"]})
    with pytest.raises(MalformedInput):
        dv.complex_from_dict({"kind": "mystery"})
