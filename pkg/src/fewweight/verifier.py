"""Closed-form weight-distribution tables and their verification against
computed codes.

Table identifiers ``T1`` .. ``T13``:

==========  =============================================  =====================
id          construction                                   field
==========  =============================================  =====================
T1          quarter-power monomial, D_0                    3^m, m = 2k, 3 !| k
T2 / T3     quarter-power monomial, D_b (b != 0)           k even / k odd
T4 / T5     quadratic-plus-product case I, D_0             m even / m odd
T6 / T7     quadratic-plus-product case II, D_0            m even / m odd
T8 .. T11   half sets of the T4 .. T7 defining sets
T12 / T13   Gold, Tr(lam x^{p^h+1}) = 0                    k/d odd / k/d even
==========  =============================================  =====================
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import sympy

from .codes import (build_code_direct, build_code_via_walsh, build_gold_code_via_weil,
                    defining_set_db, half_set, pless_moments)
from .errors import HypothesisUnmet, TableTranscriptionError
from .families import (admissible_gold_lambdas, admissible_monomial_lambdas,
                       check_gold_admissible, check_monomial_admissible,
                       check_quadproduct_case, sample_quadproduct)
from .field import make_field
from .walsh import tabulate

SOURCES = tuple("T%d" % i for i in range(1, 14))
MONOMIAL = ("T1", "T2", "T3")
QUADPROD = {"T4": ("I", 0), "T5": ("I", 1), "T6": ("II", 0), "T7": ("II", 1)}
HALVED = {"T8": "T4", "T9": "T5", "T10": "T6", "T11": "T7"}
GOLD = ("T12", "T13")
JOBS_ENV = "FEWWEIGHT_JOBS"


@dataclass
class Prediction:
    source: str
    params: dict
    n: int
    dimension: int
    dist: dict
    a2_dual: int
    moment_solved: dict = None

    def __post_init__(self):
        p, m = self.params["p"], self.params["m"]
        if len(set(self.dist)) != len(self.dist) or min(self.dist) <= 0:
            raise TableTranscriptionError("%s: weights must be distinct and positive" % self.source)
        if sum(self.dist.values()) != p ** m - 1:
            raise TableTranscriptionError("%s: multiplicities do not sum to p^m - 1" % self.source)

    @property
    def min_distance(self):
        return min(self.dist)

    @property
    def printed_matches_moments(self):
        return self.moment_solved is None or self.moment_solved == self.dist

    def to_json(self):
        out = {"n": self.n, "dim": self.dimension,
               "dist": [[w, a] for w, a in sorted(self.dist.items())]}
        if self.moment_solved is not None:
            out["moment_solved"] = [[w, a] for w, a in sorted(self.moment_solved.items())]
        return out


def _div(num, den, where):
    q, r = divmod(num, den)
    if r:
        raise TableTranscriptionError("%s: %d / %d is not an integer" % (where, num, den))
    return q


def _need(cond, source, text):
    if not cond:
        raise HypothesisUnmet(source, text)


def _sorted(rows):
    dist = {}
    for w, a in rows:
        if a:
            dist[w] = dist.get(w, 0) + a
    return dict(sorted(dist.items()))


def _sign(m, odd):
    """The epsilon of the sign rules: +1 for m = 1 (odd) or 0 (even) mod 4."""
    return 1 if m % 4 == (1 if odd else 0) else -1


def _monomial_rows(source, m):
    k = m // 2
    if source == "T1":
        return ((3 ** m - 1) // 2,
                [(3 ** (m - 1) - 3 ** (k - 1), (3 ** m - 1) // 2),
                 (3 ** (m - 1) + 3 ** (k - 1), (3 ** m - 1) // 2)])
    s = 1 if source == "T2" else -1
    n = (3 ** m - 1) // 4
    return n, [(_div(3 ** (m - 1) - s * 3 ** (k - 1), 2, source), _div(3 ** (m + 1) - 3, 4, source)),
               (_div(3 ** (m - 1) + s * 3 ** k, 2, source), n)]


def _quadprod_rows(source, m, eta):
    t = 3 ** (m - 2)
    if source == "T4":
        e = eta * 3 ** (m // 2 - 1)
        return 3 ** (m - 1) - 1, [(2 * t - 2 * e, t + e), (2 * t, 3 ** m - 1 - 2 * t),
                                  (2 * t + 2 * e, t - e)]
    if source == "T5":
        e = _sign(m, True) * eta * 3 ** ((m - 3) // 2)
        return (3 ** (m - 1) + 2 * e * 3 - 1,
                [(2 * t + 4 * e, 2 * 3 ** (m - 1)), (2 * t, t + 2 * e - 1), (2 * t + 6 * e, 2 * t - 2 * e)])
    if source == "T6":
        es = _sign(m, False) * eta
        e1, e2 = es * 3 ** (m // 2 - 1), es * 3 ** (m // 2 - 2)
        return (3 ** (m - 1) - 2 * es * 3 ** (m // 2) - 1,
                [(2 * t - 4 * e1, 3 ** m - t), (2 * t, 3 ** (m - 3) - 2 * e2 - 1),
                 (2 * t - 6 * e1, 2 * 3 ** (m - 3) + 2 * e2)])
    # T7
    e1, e2 = eta * 3 ** ((m + 1) // 2 - 1), eta * 3 ** ((m - 3) // 2)
    return 3 ** (m - 1) - 1, [(2 * t - 2 * e1, 3 ** (m - 3) + e2), (2 * t, 3 ** m - 2 * 3 ** (m - 3) - 1),
                              (2 * t + 2 * e1, 3 ** (m - 3) - e2)]


def _halved_rows(source, m, eta):
    """Half-set tables written out in their own closed forms."""
    t = 3 ** (m - 2)
    if source == "T8":
        e = eta * 3 ** (m // 2 - 1)
        return (3 ** (m - 1) - 1) // 2, [(t - e, t + e), (t, 3 ** m - 1 - 2 * t), (t + e, t - e)]
    if source == "T9":
        e = _sign(m, True) * eta * 3 ** ((m - 3) // 2)
        return ((3 ** (m - 1) - 1) // 2 + 3 * e,
                [(t + 2 * e, 2 * 3 ** (m - 1)), (t, t + 2 * e - 1), (t + 3 * e, 2 * t - 2 * e)])
    if source == "T10":
        es = _sign(m, False) * eta
        e1, e2 = es * 3 ** (m // 2 - 1), es * 3 ** (m // 2 - 2)
        return ((3 ** (m - 1) - 1) // 2 - es * 3 ** (m // 2),
                [(t - 2 * e1, 3 ** m - t), (t, 3 ** (m - 3) - 2 * e2 - 1),
                 (t - 3 * e1, 2 * 3 ** (m - 3) + 2 * e2)])
    e1, e2 = eta * 3 ** ((m + 1) // 2 - 1), eta * 3 ** ((m - 3) // 2)
    return (3 ** (m - 1) - 1) // 2, [(t - e1, 3 ** (m - 3) + e2), (t, 3 ** m - 2 * 3 ** (m - 3) - 1),
                                     (t + e1, 3 ** (m - 3) - e2)]


def _gold_rows(source, p, m, k, d):
    P = p ** (k + d - 2)
    den = p ** (m + 2 * d - 3)
    base = (p - 1) * p ** (m - 2)
    if source == "T12":
        n = p ** (m - 1) + (p - 1) * p ** (k + d - 1) - 1
        rows = [(base, _div((p ** (m - 2) + p ** (k + d - 1)) * (p ** (m - 2) - P), den, source)),
                (base + (p - 1) ** 2 * P,
                 p ** m - 1 - _div((p ** (m - 1) + p ** (k + d - 1)) * (p ** (m - 2) - P), den, source)),
                (base + p * (p - 1) * P, _div((p - 1) * p ** (m - 2) * (p ** (m - 2) - P), den, source))]
    else:
        n = p ** (m - 1) - (p - 1) * p ** (k + d - 1) - 1
        rows = [(base - p * (p - 1) * P, _div((p - 1) * p ** (m - 2) * (p ** (m - 2) + P), den, source)),
                (base - (p - 1) ** 2 * P,
                 p ** m - 1 - _div((p ** (m - 1) - p ** (k + d - 1)) * (p ** (m - 2) + P), den, source)),
                (base, _div((p ** (m - 2) - p ** (k + d - 1)) * (p ** (m - 2) + P), den, source))]
    return n, rows


def check_hypotheses(source, params):
    """Normalized parameters of a table, or HypothesisUnmet naming the failed condition."""
    if source not in SOURCES:
        raise HypothesisUnmet(source, "unknown table id")
    p, m = params.get("p", 3), params["m"]
    out = {"p": p, "m": m}
    if source not in GOLD:
        _need(p == 3, source, "p = 3")
    if source in MONOMIAL:
        _need(m % 2 == 0 and m >= 2, source, "m = 2k even")
        k = m // 2
        _need(math.gcd(k, 3) == 1, source, "gcd(k, 3) = 1")
        if source == "T2":
            _need(k % 2 == 0, source, "k even")
        if source == "T3":
            _need(k % 2 == 1, source, "k odd")
        out["k"] = k
        return out
    if source in GOLD:
        h = params["h"]
        _need(p % 2 == 1 and sympy.isprime(p), source, "p an odd prime")
        _need(m % 2 == 0 and m > 4, source, "m = 2k > 4")
        k = m // 2
        _need(1 <= h < k, source, "1 <= h < k")
        d = math.gcd(h, m)
        _need((m // d) % 2 == 0, source, "m/d even")
        _need((k // d) % 2 == (1 if source == "T12" else 0), source,
              "k/d odd" if source == "T12" else "k/d even")
        out.update(k=k, h=h, d=d)
        return out
    eta = params["eta"]
    _need(eta in (1, -1), source, "eta(lambda) in {1, -1}")
    base = HALVED.get(source, source)
    odd = QUADPROD[base][1]
    _need(m % 2 == odd, source, "m odd" if odd else "m even")
    if QUADPROD[base][0] == "I":
        _need(m > 3, source, "m > 3")
    elif odd:
        _need(m > 4, source, "m > 4")
    else:
        _need(m > 4 or (m == 4 and eta == -1), source, "m > 4, or m = 4 with lambda a nonsquare")
    out["eta"] = eta
    if base in ("T5", "T6"):
        out["eps"] = _sign(m, odd)
    return out


def theory_a2_dual(source, n, p):
    """A_2 of the dual of the predicted code."""
    if source in GOLD:
        return math.comb(p - 1, 2) * n
    if source in HALVED:
        return 0
    return n


def moment_solve(weights, n, p, m, a2_dual):
    """Multiplicities forced by the first Pless moments for the given weights."""
    ws = sorted(weights)
    rhs = [r for _, r in pless_moments({}, n, p, m, a2_dual)][:len(ws)]
    M = sympy.Matrix([[sympy.Integer(w) ** i for w in ws] for i in range(len(ws))])
    sol = M.LUsolve(sympy.Matrix(rhs))
    return {w: (int(a) if a.is_integer else a) for w, a in zip(ws, sol)}


def predict(source, params):
    params = check_hypotheses(source, params)
    p, m = params["p"], params["m"]
    if source in MONOMIAL:
        n, rows = _monomial_rows(source, m)
    elif source in QUADPROD:
        n, rows = _quadprod_rows(source, m, params["eta"])
    elif source in HALVED:
        n, rows = _halved_rows(source, m, params["eta"])
    else:
        n, rows = _gold_rows(source, p, m, params["k"], params["d"])
    dist = _sorted(rows)
    a2 = theory_a2_dual(source, n, p)
    pred = Prediction(source, params, n, m, dist, a2)
    for i, (lhs, rhs) in enumerate(pless_moments(dist, n, p, m, a2)):
        if lhs != rhs:
            raise TableTranscriptionError("%s %s: moment %d gives %d, expected %d"
                                          % (source, params, i + 1, lhs, rhs))
    if source in GOLD:
        pred.moment_solved = moment_solve(dist, n, p, m, a2)
    return pred


def halving_relation_holds(source, params):
    """True iff a half-set table equals its full-set table with weights and length halved."""
    cor = predict(source, params)
    thm = predict(HALVED[source], params)
    return cor.n * 2 == thm.n and cor.dist == {w // 2: a for w, a in thm.dist.items()} \
        and all(w % 2 == 0 for w in thm.dist)


# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    prediction: Prediction
    computed: object
    verdict: str  # match | length-mismatch | distribution-mismatch | hypothesis-unmet
    details: list = field(default_factory=list)
    instance: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict == "match"

    def to_json(self):
        return {"source": self.prediction.source if self.prediction else None,
                "params": dict(self.prediction.params if self.prediction else {}, **self.instance),
                "verdict": self.verdict,
                "expected": self.prediction.to_json() if self.prediction else None,
                "got": self.computed.to_json() if self.computed else None}


def verify(pred, computed, instance=None):
    details = []
    if computed.n != pred.n:
        verdict = "length-mismatch"
        details.append(("n", pred.n, computed.n))
    else:
        for w in sorted(set(pred.dist) | set(computed.weight_dist)):
            a, b = pred.dist.get(w, 0), computed.weight_dist.get(w, 0)
            if a != b:
                details.append((w, a, b))
        if computed.dimension != pred.dimension:
            details.append(("dim", pred.dimension, computed.dimension))
        verdict = "distribution-mismatch" if details else "match"
    return VerificationReport(pred, computed, verdict, details, dict(instance or {}))


# ---------------------------------------------------------------------------
# sweeps

@dataclass
class SweepResult:
    source: str
    field: tuple
    reports: list
    exhaustive: bool
    hypothesis: str = None
    total_instances: int = 0

    @property
    def counterexamples(self):
        return [r for r in self.reports if not r.ok]

    @property
    def passed(self):
        return self.hypothesis is None and bool(self.reports) and not self.counterexamples

    def to_json(self):
        return {"source": self.source, "field": list(self.field), "exhaustive": self.exhaustive,
                "instances": len(self.reports), "available": self.total_instances,
                "passed": self.passed, "hypothesis_unmet": self.hypothesis,
                "counterexamples": [r.to_json() for r in self.counterexamples]}


def _spread(items, count):
    """count items evenly spaced through the list, order preserved."""
    if count is None or count >= len(items):
        return list(items)
    idx = np.unique(np.linspace(0, len(items) - 1, count).round().astype(int))
    return [items[i] for i in idx]


def sweep_instances(source, ctx, samples=100, exhaustive=False, h=None, seed=0):
    """(instances, total available or None) for a table over one field."""
    count = None if exhaustive else samples
    if source in MONOMIAL:
        lams = [int(c) for c in admissible_monomial_lambdas(ctx)]
        bs = (0,) if source == "T1" else (1, 2)
        inst = [{"lam": l, "b": b} for l in lams for b in bs]
        return _spread(inst, count), len(inst)
    if source in GOLD:
        k = ctx.m // 2
        hs = [h] if h else range(1, k)
        inst = []
        for hh in hs:
            try:
                check_hypotheses(source, {"p": ctx.p, "m": ctx.m, "h": hh})
            except HypothesisUnmet:
                continue
            inst += [{"lam": int(l), "h": hh} for l in admissible_gold_lambdas(ctx, hh)]
        return _spread(inst, count), len(inst)
    case, _ = QUADPROD[HALVED.get(source, source)]
    eta = -1 if source in ("T6", "T10") and ctx.m == 4 else None
    trip = sample_quadproduct(ctx, case, count=count, eta=eta, seed=seed)
    return [{"lam": l, "u": u, "v": v} for l, u, v in trip], None


def run_instance(source, ctx, inst):
    """Build the instance's code on the fast path and verify it against its table."""
    el = ctx.element
    if source in MONOMIAL:
        spec = check_monomial_admissible(el(inst["lam"]), ctx)
        params = {"p": 3, "m": ctx.m}
        if not spec.admissible:
            raise HypothesisUnmet(source, "Tr_2^m(lambda) a nonzero square in F_9")
        code = build_code_via_walsh(tabulate(spec, ctx), inst["b"])
    elif source in GOLD:
        spec = check_gold_admissible(el(inst["lam"]), inst["h"], ctx)
        if not spec.admissible:
            raise HypothesisUnmet(source, "lambda^{(p^m-1)/(p^d+1)} = (-1)^{k/d}")
        params = {"p": ctx.p, "m": ctx.m, "h": inst["h"]}
        code = build_gold_code_via_weil(spec.lam, spec.h, ctx)
    else:
        spec = check_quadproduct_case(el(inst["lam"]), el(inst["u"]), el(inst["v"]), ctx)
        want = QUADPROD[HALVED.get(source, source)][0]
        if spec.case != want:
            raise HypothesisUnmet(source, "trace conditions of case %s" % want)
        params = {"p": 3, "m": ctx.m, "eta": spec.eta}
        f = tabulate(spec, ctx)
        if source in HALVED:
            code = build_code_direct(half_set(defining_set_db(f, 0)))
        else:
            code = build_code_via_walsh(f, 0)
    return verify(predict(source, params), code, inst)


def _worker(args):
    source, p, m, modulus, chunk = args
    ctx = make_field(p, m, modulus)
    return [run_instance(source, ctx, inst) for inst in chunk]


def default_jobs():
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def sweep(source, ctx, samples=100, exhaustive=False, jobs=None, h=None, seed=0):
    key = (ctx.p, ctx.m, ctx.modulus)
    try:
        if source in GOLD:
            hs = [h] if h else list(range(1, ctx.m // 2)) or [1]
            errs = []
            for hh in hs:
                try:
                    check_hypotheses(source, {"p": ctx.p, "m": ctx.m, "h": hh})
                except HypothesisUnmet as e:
                    errs.append(e)
            if len(errs) == len(hs):
                raise errs[0]
        else:
            check_hypotheses(source, {"p": ctx.p, "m": ctx.m, "eta": -1})
    except HypothesisUnmet as e:
        return SweepResult(source, key, [], exhaustive, hypothesis=str(e))
    instances, total = sweep_instances(source, ctx, samples, exhaustive, h, seed)
    jobs = jobs or default_jobs()
    if jobs > 1 and len(instances) > 1:
        chunks = [instances[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_worker, [(source, ctx.p, ctx.m, ctx.modulus, c) for c in chunks]))
        reports = [r for part in parts for r in part]
        order = {repr(sorted(inst.items())): i for i, inst in enumerate(instances)}
        reports.sort(key=lambda r: order[repr(sorted(r.instance.items()))])
    else:
        reports = [run_instance(source, ctx, inst) for inst in instances]
    return SweepResult(source, key, reports, exhaustive, total_instances=total or len(instances))
