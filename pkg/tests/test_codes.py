import numpy as np
import pytest
from hypothesis import given, strategies as st

from fewweight import errors
from fewweight.codes import (CodeSummary, DefiningSet, WeightEnumerator, build_code_direct,
                             build_code_via_walsh, build_gold_code_via_weil,
                             build_half_code_via_walsh, defining_set_db, defining_set_gold,
                             dual_a2, dual_a2_bruteforce, griesmer_max_d, griesmer_sum, half_set,
                             pless_check, weights_direct)
from fewweight.families import (admissible_gold_lambdas, admissible_monomial_lambdas,
                                check_monomial_admissible, check_quadproduct_case,
                                sample_quadproduct)
from fewweight.field import make_field
from fewweight.walsh import TraceSpec, ZeroSpec, make_pfunction, tabulate


@pytest.fixture(scope="module")
def mono4(f81):
    return tabulate(check_monomial_admissible(f81.scalar(1), f81), f81)


@pytest.fixture(scope="module")
def quad4(f81):
    one = f81.scalar(1)
    return tabulate(check_quadproduct_case(one, -one, one, f81), f81)


def test_db_sizes(mono4, f81):
    assert len(defining_set_db(mono4, 0)) == 40
    assert len(defining_set_db(mono4, 1)) == 20
    assert len(defining_set_db(tabulate(ZeroSpec(), f81), 1)) == 0


def test_gold_set_sizes():
    ctx = make_field(3, 8)
    assert len(defining_set_gold(ctx.scalar(1), 2, ctx)) == 1700
    ctx = make_field(5, 6, "x^6+x^4-x^3+x^2+2")
    assert len(defining_set_gold(ctx.generator ** 3, 1, ctx)) == 3624


def test_half_set(quad4, f81):
    D = defining_set_db(quad4, 0)
    H = half_set(D)
    assert len(H) == 13 == len(D) // 2
    assert set(H.elements) | set(f81.neg(H.elements)) == set(D.elements)
    x = 5
    assert len(half_set(DefiningSet.from_codes(f81, [x, f81.neg(x)]))) == 1
    with pytest.raises(errors.NotNegationClosed):
        half_set(DefiningSet.from_codes(f81, [1, 2, 5]))


def test_defining_set_invariants(f81):
    with pytest.raises(ValueError):
        DefiningSet(f81, np.array([3, 2]))
    assert list(DefiningSet.from_codes(f81, [5, 0, 3, 5]).elements) == [3, 5]


def test_direct_builds_match_stated_enumerators(quad4):
    code = build_code_direct(defining_set_db(quad4, 0))
    assert (code.n, code.dimension, code.min_distance) == (26, 4, 12)
    assert str(code.enumerator()) == "1 + 12z^12 + 62z^18 + 6z^24"
    ctx = make_field(3, 4, "x^4-x^3-1")
    a = ctx.generator
    f = tabulate(check_quadproduct_case(a, a ** 16, a ** 8, ctx), ctx)
    assert str(build_code_direct(defining_set_db(f, 0)).enumerator()) == "1 + 4z^18 + 72z^30 + 4z^36"
    with pytest.raises(errors.EmptyDefiningSet):
        build_code_direct(DefiningSet(ctx, np.array([], dtype=np.int64)))


def test_direct_weights_against_explicit_codewords(quad4, f81):
    D = defining_set_db(quad4, 0)
    w = weights_direct(D)
    for a in (1, 7, 80):
        row = [int(f81.trace(f81.mul(a, d))) for d in D.elements]
        assert w[a - 1] == sum(1 for t in row if t)


def test_via_walsh_matches_direct_all_b(mono4, quad4):
    for f in (mono4, quad4):
        for b in range(3):
            D = defining_set_db(f, b)
            if len(D) == 0:
                continue
            assert build_code_via_walsh(f, b).same_code_data(build_code_direct(D))
    assert str(build_code_via_walsh(mono4, 0).enumerator()) == "1 + 40z^24 + 40z^30"


def test_via_walsh_preconditions():
    ctx = make_field(3, 3)
    odd = tabulate(TraceSpec(ctx.scalar(1)), ctx)
    with pytest.raises(errors.NotEven):
        build_code_via_walsh(odd, 0)
    shifted = make_pfunction(ctx, np.ones(ctx.q, dtype=np.int64))
    with pytest.raises(errors.NonzeroAtOrigin):
        build_code_via_walsh(shifted, 0)
    ctx5 = make_field(5, 2)
    with pytest.raises(errors.WrongCharacteristic):
        build_code_via_walsh(tabulate(ZeroSpec(), ctx5), 0)


def test_empty_db_reports_status(f81):
    code = build_code_via_walsh(tabulate(ZeroSpec(), f81), 1)
    assert code.n == 0 and code.status == "empty"


def test_non_injective_code_dimension():
    ctx = make_field(3, 3)
    # D inside the F_3-line through 1: every codeword is a multiple of (Tr(a), ...)
    D = DefiningSet.from_codes(ctx, [ctx.one, int(ctx.neg(ctx.one))])
    code = build_code_direct(D)
    assert code.dimension == 1 and not code.injective
    assert sum(code.weight_dist.values()) == 2


@pytest.mark.parametrize("m", [5, 6])
def test_half_code_weights_are_halved(m):
    ctx = make_field(3, m)
    for l, u, v in sample_quadproduct(ctx, "I", count=4, seed=1):
        el = ctx.element
        f = tabulate(check_quadproduct_case(el(l), el(u), el(v), ctx), ctx)
        D = defining_set_db(f, 0)
        assert np.array_equal(weights_direct(D), 2 * weights_direct(half_set(D)))
        assert build_half_code_via_walsh(f).same_code_data(build_code_direct(half_set(D)))


def test_gold_weil_matches_direct():
    for p, m, h in [(3, 4, 1), (3, 6, 1), (5, 4, 1)]:
        ctx = make_field(p, m)
        for lam in admissible_gold_lambdas(ctx, h)[:2]:
            lam = ctx.element(int(lam))
            via = build_gold_code_via_weil(lam, h, ctx)
            assert via.same_code_data(build_code_direct(defining_set_gold(lam, h, ctx)))
    ctx = make_field(3, 4)
    bad = next(c for c in range(1, 81) if int(ctx.power(c, 20)) != ctx.one)
    with pytest.raises(errors.NotAdmissible):
        build_gold_code_via_weil(ctx.element(bad), 1, ctx)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2)])
def test_dual_a2_against_enumeration(p, m):
    ctx = make_field(p, m)
    rng = np.random.default_rng(p + m)
    for _ in range(5):
        D = DefiningSet.from_codes(ctx, rng.choice(np.arange(1, ctx.q), size=min(7, ctx.q - 1), replace=False))
        assert dual_a2(D) == dual_a2_bruteforce(D)


def test_dual_a2_known_values(quad4, f81):
    D = defining_set_db(quad4, 0)
    assert dual_a2(D) == len(D)
    assert dual_a2(half_set(D)) == 0
    ctx = make_field(5, 4)
    lam = ctx.element(int(admissible_gold_lambdas(ctx, 1)[0]))
    G = defining_set_gold(lam, 1, ctx)
    assert dual_a2(G) == 6 * len(G)


def test_pless_check(quad4):
    D = defining_set_db(quad4, 0)
    code = build_code_direct(D)
    assert pless_check(code, dual_a2(D))
    bumped = CodeSummary(code.n, code.p, code.dimension, dict(code.weight_dist), True)
    bumped.weight_dist[12] += 1
    assert not pless_check(bumped, dual_a2(D))
    with pytest.raises(errors.MomentViolation) as exc:
        pless_check(bumped, dual_a2(D), raise_on_failure=True)
    assert exc.value.moment == 1


def test_pless_on_gold_example():
    ctx = make_field(3, 8)
    code = build_gold_code_via_weil(ctx.scalar(1), 2, ctx)
    assert pless_check(code, 1 * 1700)


def test_griesmer():
    assert griesmer_max_d(20, 4, 3) == 12
    assert griesmer_max_d(13, 4, 3) == 8
    assert griesmer_max_d(31, 5, 3) == 19
    assert griesmer_sum(19, 5, 3) == 31
    for n in (1, 5, 40):
        assert griesmer_max_d(n, 1, 3) == n


@given(st.dictionaries(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), min_size=1, max_size=6))
def test_enumerator_text_roundtrip(dist):
    cs = CodeSummary(max(dist), 3, 4, dict(sorted(dist.items())), True)
    text = str(cs.enumerator())
    assert text.startswith("1 + ")
    assert WeightEnumerator.parse(text).as_dict() == cs.weight_dist
    assert WeightEnumerator.parse(text) == cs.enumerator()


def test_summary_json(mono4):
    cs = build_code_via_walsh(mono4, 1)
    assert cs.to_json() == {"n": 20, "p": 3, "dim": 4, "dist": [[12, 60], [18, 20]], "injective": True}


def test_monomial_via_walsh_exhaustive_m4(f81):
    for lam in admissible_monomial_lambdas(f81)[::5]:
        f = tabulate(check_monomial_admissible(f81.element(int(lam)), f81), f81)
        for b in range(3):
            assert build_code_via_walsh(f, b).same_code_data(build_code_direct(defining_set_db(f, b)))
