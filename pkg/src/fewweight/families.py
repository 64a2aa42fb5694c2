"""The three function families, their closed-form Walsh predictions, and
Weil sums of Gold functions (direct and closed form).

Families:

* quarter-power monomial  ``Tr(lam x^{(3^m-1)/4})`` over F_{3^m}, m = 2k
* quadratic-plus-product  ``Tr(lam x^2) + Tr(u x) Tr(v x)`` over F_{3^m}
* Gold                    ``Tr(lam x^{p^h+1})`` over F_{p^m}, m = 2k
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import cyclotomic as cyc
from . import linalg
from .cyclotomic import CycInt, root_power, sqrt_minus3
from .errors import (CaseOther, ClosedFormMismatch, DegreeTooSmall, KDivisibleBy3,
                     NotAdmissible, OddDegree, WrongCharacteristic, ZeroParameter)
from .field import is_square_in_subfield, rel_trace


def _nonzero(ctx, **named):
    for name, e in named.items():
        ctx._check(e)
        if e.code == 0:
            raise ZeroParameter("%s must be nonzero" % name)


# ---------------------------------------------------------------------------
# quarter-power monomial

@dataclass(frozen=True)
class MonomialQuarterSpec:
    ctx: object
    lam: object
    exponent: int
    k: int
    admissible: bool
    square_in_f3: bool  # Tr_2^m(lam) == 1, the stricter "square in F_3^*" reading

    @property
    def k_parity(self):
        return "even" if self.k % 2 == 0 else "odd"

    def evaluate(self, ctx):
        return ctx.trace(ctx.mul(self.lam.code, ctx.power(ctx.codes(), self.exponent)))

    def describe(self):
        return "monomial24 lambda=%s" % list(self.lam.coeffs)


def _check_monomial_field(ctx):
    if ctx.p != 3:
        raise WrongCharacteristic("the quarter-power monomial family needs p = 3")
    if ctx.m % 2:
        raise OddDegree("m must be even, got %d" % ctx.m)
    if (ctx.m // 2) % 3 == 0:
        raise KDivisibleBy3("k = %d is divisible by 3" % (ctx.m // 2))


def check_monomial_admissible(lam, ctx):
    _check_monomial_field(ctx)
    _nonzero(ctx, lam=lam)
    t = rel_trace(lam, 2)
    admissible = t.code != 0 and is_square_in_subfield(t, 2)
    return MonomialQuarterSpec(ctx, lam, (3 ** ctx.m - 1) // 4, ctx.m // 2, admissible,
                               t == ctx.scalar(1))


def predicted_distribution_lemma21(spec):
    """Four-valued Walsh distribution of an admissible quarter-power monomial."""
    if not spec.admissible:
        raise NotAdmissible("Tr_2^m(lambda) is not a square in F_9^*")
    m, k = spec.ctx.m, spec.k
    w = root_power(3, 1)
    w2 = root_power(3, 2)
    if k % 2 == 0:
        c = (3 ** k + 3) // 4
        vals = [CycInt.integer(3, -3 ** k + c), w.scale(-3 ** k) + c, w2.scale(-3 ** k) + c]
    else:
        c = (3 ** k - 3) // 4
        vals = [CycInt.integer(3, 3 ** k - c), w.scale(3 ** k) - c, w2.scale(3 ** k) - c]
    return Counter({CycInt.integer(3, (3 ** m + 3) // 4): 1,
                    vals[0]: (3 ** m - 1) // 2,
                    vals[1]: (3 ** m - 1) // 4,
                    vals[2]: (3 ** m - 1) // 4})


def admissible_monomial_lambdas(ctx):
    """Codes of admissible lambda, in generator-power order."""
    _check_monomial_field(ctx)
    lams = ctx.gen_powers()
    t = ctx.rel_trace(lams, 2)
    ok = (t != 0) & (ctx.power(t, 4) == ctx.one)
    return lams[ok]


# ---------------------------------------------------------------------------
# quadratic plus product of traces

CASE_TRACES = {"I": (2, 1, 1), "II": (1, 0, 0)}


@dataclass(frozen=True)
class QuadProductSpec:
    ctx: object
    lam: object
    u: object
    v: object
    case: str  # "I" | "II" | "other"
    eta: int   # quadratic character of lam

    def evaluate(self, ctx):
        x = ctx.codes()
        return (ctx.trace(ctx.mul(self.lam.code, ctx.mul(x, x)))
                + ctx.trace(ctx.mul(self.u.code, x)) * ctx.trace(ctx.mul(self.v.code, x)))

    def describe(self):
        return "quadprod lambda=%s u=%s v=%s" % (list(self.lam.coeffs), list(self.u.coeffs),
                                                  list(self.v.coeffs))


def check_quadproduct_case(lam, u, v, ctx):
    if ctx.p != 3:
        raise WrongCharacteristic("the quadratic-plus-product family needs p = 3")
    if ctx.m <= 3:
        raise DegreeTooSmall("m must exceed 3, got %d" % ctx.m)
    _nonzero(ctx, lam=lam, u=u, v=v)
    li = lam.inverse()
    traces = tuple(int(ctx.trace(e.code)) for e in (u * v * li, u * u * li, v * v * li))
    case = next((c for c, t in CASE_TRACES.items() if t == traces), "other")
    return QuadProductSpec(ctx, lam, u, v, case, int(ctx.eta(lam.code)))


def lemma26_prefactor(spec):
    """The constant in front of w^{-Tr(a^2/lam)}, realized in Z[w_3].

    Case I:  eta (-1)^m i^{m+1} 3^{(m+1)/2}
    Case II: eta (-1)^{m-1} i^m 3^{m/2+1}
    Whenever a lone i*sqrt(3) survives it is written as 1 + 2w.
    """
    m, eta = spec.ctx.m, spec.eta
    if spec.case == "I":
        if m % 2:
            return CycInt.integer(3, eta * -1 * (-1) ** ((m + 1) // 2) * 3 ** ((m + 1) // 2))
        return sqrt_minus3().scale(eta * (-1) ** (m // 2) * 3 ** (m // 2))
    if spec.case == "II":
        if m % 2 == 0:
            return CycInt.integer(3, eta * -1 * (-1) ** (m // 2) * 3 ** (m // 2 + 1))
        return sqrt_minus3().scale(eta * (-1) ** ((m - 1) // 2) * 3 ** ((m + 1) // 2))
    raise CaseOther("no closed form outside cases I and II")


def _lemma26_parts(spec, a_codes):
    ctx = spec.ctx
    li = ctx.inv(spec.lam.code)
    au = ctx.trace(ctx.mul(ctx.mul(a_codes, spec.u.code), li))
    av = ctx.trace(ctx.mul(ctx.mul(a_codes, spec.v.code), li))
    sq = ctx.trace(ctx.mul(ctx.mul(a_codes, a_codes), li))
    if spec.case == "I":
        zero = (au == 0) & (av == 0)
        diag = (au == av) & (au != 0)
        live = zero | diag
        shift = (-sq + diag) % 3
    else:
        live = (au == 0) & (av == 0)
        shift = (-sq) % 3
    return live, shift


def predicted_walsh_lemma26(spec, a):
    pre = lemma26_prefactor(spec)
    live, shift = _lemma26_parts(spec, a.code)
    if not live:
        return CycInt.integer(3, 0)
    return pre.times_root(int(shift))


def predicted_walsh_lemma26_all(spec):
    """Predicted spectrum as a (q, 3) array, rows in canonical order."""
    pre = cyc.from_cycint(lemma26_prefactor(spec))
    live, shift = _lemma26_parts(spec, spec.ctx.codes())
    out = np.zeros((spec.ctx.q, 3), dtype=np.int64)
    for s in range(3):
        rows = live & (shift == s)
        out[rows] = cyc.shift_array(pre, s)
    return cyc.normalize_array(out)


def quadproduct_pairs(ctx, lam_code, case):
    """All admissible (u, v) code pairs for a given lambda, sorted."""
    t_uv, t_uu, t_vv = CASE_TRACES[case]
    li = ctx.inv(lam_code)
    x = np.arange(1, ctx.q, dtype=np.int64)
    sq = ctx.trace(ctx.mul(ctx.mul(x, x), li))
    us = x[sq == t_uu]
    vs = x[sq == t_vv]
    cross = ctx.trace(ctx.mul(ctx.mul(us[:, None], vs[None, :]), li))
    iu, iv = np.nonzero(cross == t_uv)
    return np.stack([us[iu], vs[iv]], axis=1)


def sample_quadproduct(ctx, case, count=None, eta=None, seed=0):
    """Deterministic (lam, u, v) samples: lambdas in generator-power order,
    round-robin, one pseudo-randomly chosen pair per lambda per round.

    ``count=None`` returns every admissible triple.  ``eta`` restricts lambda
    to squares (+1) or non-squares (-1).
    """
    rng = np.random.default_rng(seed)
    lams = ctx.gen_powers()
    if eta is not None:
        lams = lams[ctx.eta(lams) == eta]
    if count is None:
        return [(int(l), int(u), int(v)) for l in lams for u, v in quadproduct_pairs(ctx, l, case)]
    pairs = {}
    out = []
    rnd = 0
    while len(out) < count:
        progressed = False
        for l in lams:
            l = int(l)
            if l not in pairs:
                pp = quadproduct_pairs(ctx, l, case)
                pairs[l] = pp[rng.permutation(len(pp))]
            if rnd < len(pairs[l]):
                u, v = pairs[l][rnd]
                out.append((l, int(u), int(v)))
                progressed = True
                if len(out) == count:
                    break
        if not progressed:
            break
        rnd += 1
    return out


# ---------------------------------------------------------------------------
# Gold functions and Weil sums

@dataclass(frozen=True)
class GoldSpec:
    ctx: object
    lam: object
    h: int
    d: int
    k: int
    admissible: bool

    @property
    def sign(self):
        """(-1)^{k/d}."""
        return -1 if (self.k // self.d) % 2 else 1

    @property
    def magnitude(self):
        return self.ctx.p ** (self.k + self.d)

    def evaluate(self, ctx):
        return ctx.trace(ctx.mul(self.lam.code, ctx.power(ctx.codes(), ctx.p ** self.h + 1)))

    def describe(self):
        return "gold lambda=%s h=%d" % (list(self.lam.coeffs), self.h)


def gold_exponent_condition(ctx, lam_codes, h):
    """Vectorized admissibility: m/d even and lam^{(q-1)/(p^d+1)} = (-1)^{k/d}."""
    m, p = ctx.m, ctx.p
    d = math.gcd(h, m)
    lam_codes = np.asarray(lam_codes, dtype=np.int64)
    if m % 2 or (m // d) % 2:
        return np.zeros(lam_codes.shape, dtype=bool)
    k = m // 2
    target = ctx.one if (k // d) % 2 == 0 else int(ctx.neg(ctx.one))
    return (lam_codes != 0) & (ctx.power(lam_codes, (ctx.q - 1) // (p ** d + 1)) == target)


def check_gold_admissible(lam, h, ctx):
    if ctx.m % 2:
        raise OddDegree("Gold family needs m = 2k, got m = %d" % ctx.m)
    if h < 1:
        raise ValueError("h must be positive")
    _nonzero(ctx, lam=lam)
    d = math.gcd(h, ctx.m)
    return GoldSpec(ctx, lam, h, d, ctx.m // 2, bool(gold_exponent_condition(ctx, lam.code, h)))


def admissible_gold_lambdas(ctx, h):
    lams = ctx.gen_powers()
    return lams[gold_exponent_condition(ctx, lams, h)]


def weil_sum_direct(lam, h, a, ctx):
    """Sum over x of w^{Tr(lam x^{p^h+1} + a x)} by exhaustive summation."""
    x = ctx.codes()
    e = ctx.add(ctx.mul(lam.code, ctx.power(x, ctx.p ** h + 1)), ctx.mul(a.code, x))
    return CycInt(ctx.p, np.bincount(ctx.trace(e), minlength=ctx.p).tolist())


def weil_sum_direct_table(lam, h, ctx):
    """Direct sums for every a at once, as a (q, p) array."""
    from .walsh import make_pfunction, walsh_naive_all
    f = make_pfunction(ctx, ctx.trace(ctx.mul(lam.code, ctx.power(ctx.codes(), ctx.p ** h + 1))))
    # S(lam, a) is the Walsh coefficient at -a
    return walsh_naive_all(f).values[ctx.neg(ctx.codes())]


class LinearizedMap:
    """g(x) = lam^{p^h} x^{p^{2h}} + lam x as an F_p-linear map."""

    def __init__(self, lam_code, h, ctx):
        self.ctx = ctx
        self.lam = int(lam_code)
        self.h = h
        c = int(ctx.power(self.lam, ctx.p ** h))
        e = ctx.p ** (2 * h)
        self.matrix = ctx.linear_map_matrix(
            lambda x: ctx.add(ctx.mul(c, ctx.power(x, e)), ctx.mul(self.lam, x)))
        self.solver = linalg.AffineSolver(self.matrix, ctx.p)
        kb = self.solver.kernel
        if len(kb):
            combos = np.array(list(itertools.product(range(ctx.p), repeat=len(kb))), dtype=np.int64)
            vecs = combos @ kb % ctx.p
        else:
            vecs = np.zeros((1, ctx.m), dtype=np.int64)
        self.kernel_codes = np.sort(ctx.encode(vecs))

    @property
    def kernel_dim(self):
        return len(self.solver.kernel)

    def apply(self, x):
        return self.ctx.encode(self.ctx.digits(x) @ self.matrix.T)

    def particular(self, rhs_codes):
        """(solvable mask, one solution per rhs) for a batch of right-hand sides."""
        ok, X = self.solver.solve(self.ctx.digits(np.atleast_1d(rhs_codes)))
        return ok, self.ctx.encode(X)


def solve_linearized(lam, h, rhs, ctx):
    """All solutions of lam^{p^h} x^{p^{2h}} + lam x = rhs, sorted canonically."""
    g = LinearizedMap(lam.code, h, ctx)
    ok, x0 = g.particular(rhs.code)
    if not ok[0]:
        return []
    sols = np.sort(ctx.add(int(x0[0]), g.kernel_codes))
    return [ctx.element(c) for c in sols]


def _require_admissible(lam_code, h, ctx):
    spec = check_gold_admissible(ctx.element(lam_code), h, ctx)
    if not spec.admissible:
        raise NotAdmissible("lambda does not satisfy the Gold admissibility condition (h=%d)" % h)
    return spec


def weil_sum_closed(lam, h, a, ctx):
    """S_h(lam, a) from the explicit evaluations (admissible lam only)."""
    spec = _require_admissible(lam.code, h, ctx)
    if a.code == 0:
        return CycInt.integer(ctx.p, -spec.sign * spec.magnitude)
    rhs = ctx.element(ctx.neg(ctx.power(a.code, ctx.p ** h)))
    sols = solve_linearized(lam, h, rhs, ctx)
    if not sols:
        return CycInt.integer(ctx.p, 0)
    e = ctx.p ** h + 1
    trs = {int(ctx.trace(ctx.mul(lam.code, ctx.power(x.code, e)))) for x in sols}
    if len(trs) != 1:
        raise ClosedFormMismatch("Tr(lam x0^{p^h+1}) depends on the solution x0")
    t = int(ctx.trace(ctx.mul(lam.code, ctx.power(sols[0].code, e))))
    return root_power(ctx.p, -t).scale(-spec.sign * spec.magnitude)


def weil_sum_closed_table(lam_code, h, ctx):
    """Closed-form S_h(lam, a) for every a, as a (q, p) array.

    Raises ClosedFormMismatch if the value would depend on the chosen root.
    """
    spec = _require_admissible(lam_code, h, ctx)
    p = ctx.p
    g = LinearizedMap(lam_code, h, ctx)
    a = ctx.codes()
    ok, x0 = g.particular(ctx.neg(ctx.power(a, p ** h)))
    e = p ** h + 1
    idx = np.nonzero(ok)[0]
    x0 = x0[idx]
    t = ctx.trace(ctx.mul(lam_code, ctx.power(x0, e)))
    # every translate by the kernel must give the same exponent
    for kc in g.kernel_codes:
        tk = ctx.trace(ctx.mul(lam_code, ctx.power(ctx.add(x0, int(kc)), e)))
        if np.any(tk != t):
            raise ClosedFormMismatch("Tr(lam x0^{p^h+1}) depends on the solution x0")
    out = np.zeros((ctx.q, p), dtype=np.int64)
    c = -spec.sign * spec.magnitude
    out[idx, (-t) % p] = c
    out[0] = 0
    out[0, 0] = c
    return cyc.normalize_array(out)


def lemma34_check(lam, h, ctx):
    """True iff S_h(c lam, 0) is the same for every c in F_p^*."""
    vals = {weil_sum_direct(lam * c, h, ctx.zero, ctx) for c in range(1, ctx.p)}
    return len(vals) == 1


def lemma35_values(spec):
    p, s, mag = spec.ctx.p, spec.sign, spec.magnitude
    return {0, -s * (p - 1) ** 2 * mag, s * (p - 1) * mag}


def lemma35_triple_sum(lam, h, a, ctx, method="closed"):
    """Sum over y, z in F_p^* of S_h(y lam, z a)."""
    if a.code == 0:
        raise ValueError("a must be nonzero")
    spec = _require_admissible(lam.code, h, ctx)
    weil = weil_sum_closed if method == "closed" else (lambda l, hh, aa, c: weil_sum_direct(l, hh, aa, c))
    total = CycInt.integer(ctx.p, 0)
    for y in range(1, ctx.p):
        for z in range(1, ctx.p):
            total = total + weil(lam * y, h, a * z, ctx)
    v = total.is_rational()
    if v is None or v not in lemma35_values(spec):
        raise ClosedFormMismatch("triple sum %s outside the three admissible values" % total)
    return total


def lemma35_table(lam_code, h, ctx):
    """Triple sums for every a (index 0 meaningless), as integers."""
    p = ctx.p
    a = ctx.codes()
    total = np.zeros((ctx.q, p), dtype=np.int64)
    for y in range(1, p):
        S = weil_sum_closed_table(int(ctx.scale(y, lam_code)), h, ctx)
        for z in range(1, p):
            total += S[ctx.scale(z, a)]
    return cyc.rational_array(total)
