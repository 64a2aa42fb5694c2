import numpy as np
import pytest
from hypothesis import given, strategies as st

from fewweight.cyclotomic import CycInt
from fewweight.errors import ParameterOutsideField
from fewweight.field import make_field
from fewweight.walsh import (TableSpec, TraceSpec, ZeroSpec, classify, make_pfunction,
                             norm_total, parseval_check, spectrum_distribution, tabulate,
                             walsh_full, walsh_naive, walsh_naive_all)

SMALL = [(3, 2), (3, 3), (5, 2), (7, 2), (3, 4), (5, 3)]


def _complex_oracle(f, a):
    """Floating-point sum of exp(2 pi i (f(x) - Tr(ax)) / p)."""
    ctx = f.ctx
    tr = ctx.trace(ctx.mul(a, ctx.codes()))
    return np.exp(2j * np.pi * ((f.table - tr) % ctx.p) / ctx.p).sum()


def _random_function(ctx, seed):
    rng = np.random.default_rng(seed)
    return make_pfunction(ctx, rng.integers(0, ctx.p, ctx.q))


@given(st.sampled_from(SMALL), st.integers(0, 2 ** 32 - 1))
def test_fast_transform_equals_defining_sum(pm, seed):
    ctx = make_field(*pm)
    f = _random_function(ctx, seed)
    fast = walsh_full(f)
    assert np.array_equal(fast.values, walsh_naive_all(f).values)
    for a in (0, 1, ctx.q - 1, seed % ctx.q):
        assert fast[a] == walsh_naive(f, a)
        assert abs(fast[a].approx() - _complex_oracle(f, a)) < 1e-6


@pytest.mark.parametrize("p,m", [(3, 7), (5, 4)])
def test_fast_transform_larger_fields(p, m):
    ctx = make_field(p, m)
    f = _random_function(ctx, p + m)
    assert np.array_equal(walsh_full(f).values, walsh_naive_all(f).values)


@given(st.sampled_from(SMALL), st.integers(0, 2 ** 32 - 1))
def test_parseval(pm, seed):
    ctx = make_field(*pm)
    s = walsh_full(_random_function(ctx, seed))
    assert parseval_check(s)
    assert norm_total(s) == ctx.q ** 2


def test_linear_function_spectrum_is_a_delta():
    ctx = make_field(3, 3)
    c = ctx.element(7)
    s = walsh_full(tabulate(TraceSpec(c), ctx))
    assert s[c] == ctx.q
    assert sum(1 for a in range(ctx.q) if s[a] != 0) == 1
    assert str(classify(s)) == "3-plateaued [degenerate]"


def test_zero_function_is_degenerate():
    ctx = make_field(3, 2)
    s = walsh_full(tabulate(ZeroSpec(), ctx))
    cls = classify(s)
    assert cls.kind == "plateaued" and cls.level == 2 and cls.degenerate
    assert spectrum_distribution(s) == {CycInt.integer(3, 9): 1, CycInt.integer(3, 0): 8}


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_square_trace_is_bent(p, m):
    ctx = make_field(p, m)
    x = ctx.codes()
    f = make_pfunction(ctx, ctx.trace(ctx.mul(x, x)))
    cls = classify(walsh_full(f))
    assert cls.bent and cls.level == 0


def test_quarter_power_monomial_spectrum_at_m4():
    ctx = make_field(3, 4)
    x = ctx.codes()
    f = make_pfunction(ctx, ctx.trace(ctx.power(x, 20)))
    dist = spectrum_distribution(walsh_full(f))
    assert dist == {CycInt.integer(3, 21): 1, CycInt.integer(3, -6): 40,
                    CycInt(3, [3, -9]): 20, CycInt(3, [12, 9]): 20}
    assert classify(walsh_full(f)).kind == "neither"


def test_table_spec_validation():
    ctx = make_field(3, 2)
    assert tabulate(TableSpec((0,) * 9), ctx).even
    with pytest.raises(ParameterOutsideField):
        tabulate(TableSpec((0,) * 8), ctx)
    with pytest.raises(ParameterOutsideField):
        tabulate(TableSpec((5,) * 9), ctx)
