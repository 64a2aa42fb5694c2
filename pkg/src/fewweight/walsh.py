"""Walsh transforms of tabulated functions F_{p^m} -> F_p.

The transform uses the kernel w^{f(x) - Tr(ax)}.  Values are exact
elements of Z[w]; a spectrum is stored as an ``(q, p)`` int64 array in
normal form, row ``a`` holding the coefficient at element code ``a``.
"""

import functools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import cyclotomic as cyc
from .cyclotomic import CycInt
from .errors import ParameterOutsideField

NAIVE_MATRIX_LIMIT = 3 ** 7


@dataclass(frozen=True)
class ZeroSpec:
    def evaluate(self, ctx):
        return np.zeros(ctx.q, dtype=np.int64)

    def describe(self):
        return "zero"


@dataclass(frozen=True)
class TableSpec:
    """Explicit values in canonical element order."""
    values: tuple
    source: str = ""

    def evaluate(self, ctx):
        v = np.asarray(self.values, dtype=np.int64)
        if v.shape != (ctx.q,):
            raise ParameterOutsideField("table has %d entries, field has %d" % (len(v), ctx.q))
        if np.any((v < 0) | (v >= ctx.p)):
            raise ParameterOutsideField("table values must lie in [0, %d)" % ctx.p)
        return v

    def describe(self):
        return "table file=%s" % self.source if self.source else "table"


@dataclass(frozen=True)
class TraceSpec:
    """x -> Tr(c x) + const, handy for checks."""
    c: object
    const: int = 0

    def evaluate(self, ctx):
        return (ctx.trace(ctx.mul(ctx.codes(), self.c.code)) + self.const) % ctx.p

    def describe(self):
        return "trace c=%s" % (list(self.c.coeffs),)


@dataclass(frozen=True, eq=False)
class PFunction:
    ctx: object
    table: np.ndarray
    family: object = None
    even: bool = False

    def __call__(self, x):
        return int(self.table[x.code if hasattr(x, "code") else int(x)])

    def __add__(self, other):
        table = (self.table + np.asarray(other.table)) % self.ctx.p
        return make_pfunction(self.ctx, table)


def _is_even(ctx, table):
    return bool(np.array_equal(table, table[ctx.neg(ctx.codes())]))


def make_pfunction(ctx, table, family=None):
    table = np.asarray(table, dtype=np.int64) % ctx.p
    table.setflags(write=False)
    return PFunction(ctx, table, family, _is_even(ctx, table))


def tabulate(spec, ctx):
    """Evaluate a function description on every element of the field."""
    return make_pfunction(ctx, spec.evaluate(ctx), family=spec)


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    ctx: object
    values: np.ndarray  # (q, p), normal form

    def __getitem__(self, a):
        code = a.code if hasattr(a, "code") else int(a)
        return CycInt(self.ctx.p, self.values[code].tolist())

    def __len__(self):
        return len(self.values)


# ---------------------------------------------------------------------------

def walsh_naive(f, a):
    """One coefficient by the defining sum, O(p^m)."""
    ctx = f.ctx
    code = a.code if hasattr(a, "code") else int(a)
    tr = ctx.trace(ctx.mul(code, ctx.codes()))
    counts = np.bincount((f.table - tr) % ctx.p, minlength=ctx.p)
    return CycInt(ctx.p, counts.tolist())


@functools.lru_cache(maxsize=2)
def _trace_indicators(ctx):
    # M[t][a, x] = [Tr(ax) = t], float64 so the products are exact BLAS sums
    codes = ctx.codes()
    T = ctx.trace(ctx.mul(codes[:, None], codes[None, :]))
    return [(T == t).astype(np.float64) for t in range(ctx.p)]


def walsh_naive_all(f):
    """Every coefficient by the defining sum (no dual basis, no fast transform).

    counts[a, j] = #{x : f(x) - Tr(ax) = j}, accumulated as
    sum_t [Tr(ax) = t] * [f(x) = j + t] over x.
    """
    ctx = f.ctx
    p, q = ctx.p, ctx.q
    out = np.zeros((q, p), dtype=np.int64)
    if q <= NAIVE_MATRIX_LIMIT:
        onehot = np.zeros((q, p))
        onehot[np.arange(q), f.table] = 1.0
        for t, M in enumerate(_trace_indicators(ctx)):
            out += np.roll(np.rint(M @ onehot).astype(np.int64), -t, axis=1)
    else:
        codes = ctx.codes()
        for a in range(q):
            tr = ctx.trace(ctx.mul(a, codes))
            out[a] = np.bincount((f.table - tr) % p, minlength=p)
    return WalshSpectrum(ctx, cyc.normalize_array(out))


def walsh_full(f):
    """All p^m coefficients with the p-ary fast transform.

    x is indexed by its coordinates in the trace-dual basis of the power
    basis, so Tr(ax) becomes the dot product of a's power-basis digits with
    x's dual coordinates; the transform is then m length-p DFTs, one per
    axis, with kernel w^{-a_i x_i} acting as a cyclic shift on Z[w].
    """
    ctx = f.ctx
    p, m, q = ctx.p, ctx.m, ctx.q
    dual = ctx.dual_coordinates(ctx.codes())
    # C-order flat index of dual coordinates (x_0 slowest), same convention as codes
    flat = dual @ (p ** np.arange(m - 1, -1, -1, dtype=np.int64))
    A = np.zeros((q, p), dtype=np.int64)
    A[flat, f.table] = 1
    A = A.reshape((p,) * m + (p,))
    for axis in range(m):
        A = np.moveaxis(A, axis, 0)
        out = np.zeros_like(A)
        for a in range(p):
            for x in range(p):
                out[a] += np.roll(A[x], (-a * x) % p, axis=-1)
        A = np.moveaxis(out, 0, axis)
    return WalshSpectrum(ctx, cyc.normalize_array(A.reshape(q, p)))


def spectrum_distribution(s):
    rows, counts = np.unique(s.values, axis=0, return_counts=True)
    p = s.ctx.p
    return Counter({CycInt(p, r.tolist()): int(c) for r, c in zip(rows, counts)})


@dataclass(frozen=True)
class Classification:
    kind: str  # "bent" | "plateaued" | "neither"
    level: object = None  # l for plateaued (0 for bent)
    bent: bool = False
    degenerate: bool = False

    def __str__(self):
        if self.kind == "neither":
            return "neither"
        s = "bent" if self.bent else "%d-plateaued" % self.level
        if self.level == 1:
            s += " (near-bent)"
        if self.degenerate:
            s += " [degenerate]"
        return s

    def to_json(self):
        return {"kind": self.kind, "level": self.level, "bent": self.bent,
                "degenerate": self.degenerate}


def classify(s):
    """bent, l-plateaued (|value|^2 in {0, p^{m+l}}) or neither."""
    ctx = s.ctx
    p, m = ctx.p, ctx.m
    norms = set()
    for z in spectrum_distribution(s):
        n = z.norm_squared()
        if n is None:
            return Classification("neither")
        norms.add(n)
    nonzero = norms - {0}
    if len(nonzero) != 1:
        return Classification("neither")
    (n,) = nonzero
    for l in range(0, m + 1):
        if n == p ** (m + l):
            return Classification("plateaued", l, bent=(l == 0), degenerate=(l == m))
    return Classification("neither")


def norm_total(s):
    """Sum over a of z_a * conj(z_a), as a CycInt."""
    vals = s.values
    if s.ctx.q > 2 ** 19:
        vals = vals.astype(object)
    prod = cyc.mul_array(vals, cyc.conj_array(vals))
    return CycInt(s.ctx.p, [int(v) for v in prod.sum(axis=0)])


def parseval_check(s):
    return norm_total(s) == s.ctx.p ** (2 * s.ctx.m)
