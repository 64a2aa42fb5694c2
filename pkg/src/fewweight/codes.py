"""Defining sets, the trace codes C_D = {(Tr(a d))_{d in D} : a in F_q}, and
their weight distributions.

Three independent routes to a weight distribution:

* :func:`build_code_direct` counts Tr(a d) != 0 for every a and d.
* :func:`build_code_via_walsh` (p = 3, even f with f(0) = 0) turns one Walsh
  spectrum into every weight through the character-sum counting formulas.
* :func:`build_gold_code_via_weil` does the same for Gold defining sets
  from closed-form Weil sums.

Codes are never materialized; only (n, dimension, distribution) is kept.
"""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import cyclotomic as cyc
from .errors import (EmptyDefiningSet, MomentViolation, NonzeroAtOrigin, NotEven,
                     NotNegationClosed, WrongCharacteristic, NotAdmissible)
from .families import check_gold_admissible, lemma35_table, weil_sum_closed
from .walsh import walsh_full

DIRECT_CHUNK = 1 << 22


@dataclass(frozen=True, eq=False)
class DefiningSet:
    ctx: object
    elements: np.ndarray  # sorted distinct nonzero codes
    provenance: tuple = ("explicit",)

    def __post_init__(self):
        e = self.elements
        if len(e) and (e[0] == 0 or np.any(np.diff(e) <= 0)):
            raise ValueError("defining set must be sorted, distinct and exclude 0")

    def __len__(self):
        return len(self.elements)

    @classmethod
    def from_codes(cls, ctx, codes, provenance=("explicit",)):
        codes = np.unique(np.asarray(codes, dtype=np.int64))
        return cls(ctx, codes[codes != 0], provenance)

    def is_negation_closed(self):
        neg = np.sort(self.ctx.neg(self.elements))
        return bool(np.array_equal(neg, self.elements))


@dataclass
class CodeSummary:
    n: int
    p: int
    dimension: int
    weight_dist: dict
    injective: bool
    route: str = ""
    status: str = "ok"

    @property
    def min_distance(self):
        return min(self.weight_dist) if self.weight_dist else 0

    @property
    def total(self):
        return sum(self.weight_dist.values())

    def params(self):
        return "[%d, %d, %d]" % (self.n, self.dimension, self.min_distance)

    def enumerator(self):
        return WeightEnumerator.from_summary(self)

    def same_code_data(self, other):
        return (self.n, self.p, self.dimension, self.weight_dist, self.injective) == \
            (other.n, other.p, other.dimension, other.weight_dist, other.injective)

    def to_json(self):
        return {"n": self.n, "p": self.p, "dim": self.dimension,
                "dist": [[w, a] for w, a in sorted(self.weight_dist.items())],
                "injective": self.injective}


@dataclass(frozen=True)
class WeightEnumerator:
    terms: tuple  # ((0, 1), (w1, A1), ...), weights increasing

    @classmethod
    def from_summary(cls, cs):
        return cls(((0, 1),) + tuple(sorted(cs.weight_dist.items())))

    @classmethod
    def parse(cls, text):
        terms = []
        for t in text.replace(" ", "").split("+"):
            if "z" not in t:
                terms.append((0, int(t)))
                continue
            coef, _, w = t.partition("z")
            w = int(w.lstrip("^")) if w else 1
            terms.append((w, int(coef) if coef else 1))
        return cls(tuple(sorted(terms)))

    def as_dict(self):
        return {w: a for w, a in self.terms if w}

    def __str__(self):
        out = []
        for w, a in self.terms:
            if w == 0:
                out.append(str(a))
            else:
                out.append("%sz^%d" % ("" if a == 1 else a, w))
        return " + ".join(out)


# ---------------------------------------------------------------------------
# defining sets

def defining_set_db(f, b):
    """Nonzero x with f(x) = b."""
    ctx = f.ctx
    b = int(b) % ctx.p
    codes = np.nonzero(f.table == b)[0]
    return DefiningSet(ctx, codes[codes != 0].astype(np.int64), ("Db", b))


def defining_set_gold(lam, h, ctx):
    """Nonzero x with Tr(lam x^{p^h+1}) = 0."""
    x = ctx.codes()
    tr = ctx.trace(ctx.mul(lam.code, ctx.power(x, ctx.p ** h + 1)))
    codes = np.nonzero(tr == 0)[0]
    return DefiningSet(ctx, codes[codes != 0].astype(np.int64), ("Gold", lam.code, h))


def half_set(D):
    """One representative (the smaller code) of each pair {x, -x}."""
    if not D.is_negation_closed():
        raise NotNegationClosed("defining set is not closed under negation")
    neg = D.ctx.neg(D.elements)
    keep = D.elements[D.elements < neg]
    return DefiningSet(D.ctx, keep, ("HalfSet",) + tuple(D.provenance))


# ---------------------------------------------------------------------------
# weight distributions

def _summarize(weights, n, ctx, route):
    """Distribution over distinct nonzero codewords from wt(c_a), a != 0."""
    weights = np.asarray(weights)
    zero = int(np.count_nonzero(weights == 0))
    if np.any(weights < 0) or np.any(weights > n):
        raise AssertionError("weight outside [0, n]")
    kernel = zero + 1  # size of {a : c_a = 0}, a subspace
    dim_drop = round(math.log(kernel, ctx.p))
    if ctx.p ** dim_drop != kernel:
        raise AssertionError("zero-weight a do not form a subspace")
    dist = Counter(int(w) for w in weights[weights > 0])
    dist = {w: c // kernel for w, c in sorted(dist.items())}
    return CodeSummary(n, ctx.p, ctx.m - dim_drop, dist, zero == 0, route)


def weights_direct(D):
    """wt(c_a) for a = 1 .. q-1 by exhaustive evaluation of Tr(a d)."""
    ctx = D.ctx
    if len(D) == 0:
        raise EmptyDefiningSet("empty defining set")
    a_all = np.arange(1, ctx.q, dtype=np.int64)
    out = np.empty(len(a_all), dtype=np.int64)
    step = max(1, DIRECT_CHUNK // len(D))
    d = D.elements[None, :]
    for s in range(0, len(a_all), step):
        a = a_all[s:s + step, None]
        out[s:s + step] = np.count_nonzero(ctx.trace(ctx.mul(a, d)), axis=1)
    return out


def build_code_direct(D):
    if len(D) == 0:
        raise EmptyDefiningSet("empty defining set")
    return _summarize(weights_direct(D), len(D), D.ctx, "direct")


def _re2(arr, b):
    """Integer w^{-b} z + w^b conj(z) for each z in a (..., 3) array."""
    s = cyc.shift_array(arr, -b)
    return cyc.rational_array(s + cyc.conj_array(s))


def weights_via_walsh(f, b, spectrum=None):
    """(n_b, wt(c_a) for a = 1..q-1) from the ternary counting formulas."""
    ctx = f.ctx
    if ctx.p != 3:
        raise WrongCharacteristic("the Walsh counting route is implemented for p = 3")
    if not f.even:
        raise NotEven("f(-x) != f(x) for some x")
    if f.table[0] != 0:
        raise NonzeroAtOrigin("f(0) must be 0")
    b = int(b) % 3
    m = ctx.m
    s = spectrum if spectrum is not None else walsh_full(f)
    r0 = int(_re2(s.values[0], b))
    if b == 0:
        num_n, base_n = r0, 3 ** (m - 1) - 1
        base_N = 3 ** (m - 2) - 1
    else:
        num_n, base_n = r0, 3 ** (m - 1)
        base_N = 3 ** (m - 2)
    if num_n % 3:
        raise AssertionError("length formula is not integral")
    n = base_n + num_n // 3
    ra = _re2(s.values[1:], b)
    num = r0 + 2 * ra
    if np.any(num % 9):
        raise AssertionError("N_a formula is not integral")
    N = base_N + num // 9
    return n, n - N


def build_code_via_walsh(f, b, spectrum=None):
    n, w = weights_via_walsh(f, b, spectrum)
    if n == 0:
        return CodeSummary(0, 3, 0, {}, False, "walsh", status="empty")
    return _summarize(w, n, f.ctx, "walsh")


def build_half_code_via_walsh(f, b=0, spectrum=None):
    """Code of the half set of D_b: every weight of C_{D_b} halved."""
    n, w = weights_via_walsh(f, b, spectrum)
    if n % 2 or np.any(w % 2):
        raise AssertionError("odd weight in a negation-closed code")
    return _summarize(w // 2, n // 2, f.ctx, "walsh-half")


def gold_length(spec):
    """(n_D including 0) from sum over y of S_h(y lam, 0)."""
    ctx = spec.ctx
    tot = sum(weil_sum_closed(spec.lam * y, spec.h, ctx.zero, ctx).is_rational()
              for y in range(1, ctx.p))
    if tot % ctx.p:
        raise AssertionError("Gold length formula is not integral")
    return ctx.p ** (ctx.m - 1) + tot // ctx.p, tot


def build_gold_code_via_weil(lam, h, ctx):
    spec = check_gold_admissible(lam, h, ctx)
    if not spec.admissible:
        raise NotAdmissible("lambda fails the Gold admissibility condition for h=%d" % h)
    p, m = ctx.p, ctx.m
    nD, s0 = gold_length(spec)
    triple = lemma35_table(lam.code, h, ctx)[1:]
    num = s0 + triple
    if np.any(num % (p * p)):
        raise AssertionError("N_a formula is not integral")
    N = p ** (m - 2) + num // (p * p)
    return _summarize(nD - N, nD - 1, ctx, "weil")


# ---------------------------------------------------------------------------
# dual-code and bound checks

def dual_a2(D):
    """Weight-2 codewords of the dual: p-1 for each position pair whose
    elements are F_p^*-multiples of each other."""
    ctx = D.ctx
    # canonical projective representative: smallest code among c*d, c in F_p^*
    reps = np.min(np.stack([ctx.scale(c, D.elements) for c in range(1, ctx.p)]), axis=0)
    _, sizes = np.unique(reps, return_counts=True)
    return int(sum(s * (s - 1) // 2 for s in sizes)) * (ctx.p - 1)


def dual_a2_bruteforce(D):
    """Count (i < j, c_i, c_j nonzero) with c_i d_i + c_j d_j = 0 by enumeration."""
    ctx = D.ctx
    el = [int(e) for e in D.elements]
    count = 0
    for i in range(len(el)):
        for j in range(i + 1, len(el)):
            for ci in range(1, ctx.p):
                for cj in range(1, ctx.p):
                    if int(ctx.add(ctx.scale(ci, el[i]), ctx.scale(cj, el[j]))) == 0:
                        count += 1
    return count


def pless_moments(dist, n, p, k, a2_dual):
    """The three (lhs, rhs) pairs of the first Pless power moments (A_1^perp = 0)."""
    q = p
    return [
        (sum(dist.values()), q ** k - 1),
        (sum(w * a for w, a in dist.items()), (q - 1) * n * q ** (k - 1)),
        (sum(w * w * a for w, a in dist.items()),
         ((q - 1) * n * ((q - 1) * n + 1) + 2 * a2_dual) * q ** (k - 2)),
    ]


def pless_check(cs, a2_dual, raise_on_failure=False):
    for i, (lhs, rhs) in enumerate(pless_moments(cs.weight_dist, cs.n, cs.p, cs.dimension, a2_dual)):
        if lhs != rhs:
            if raise_on_failure:
                raise MomentViolation(i + 1, lhs, rhs)
            return False
    return True


def griesmer_sum(d, k, p):
    return sum(-(-d // p ** i) for i in range(k))


def griesmer_max_d(n, k, p):
    """Largest d with sum_{i<k} ceil(d / p^i) <= n."""
    d = 0
    while griesmer_sum(d + 1, k, p) <= n:
        d += 1
    return d
