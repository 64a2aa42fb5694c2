"""Arithmetic in F_{p^m} for odd p.

Elements are stored as integer *codes*: the coefficient vector
``(c_0, ..., c_{m-1})`` of ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` read as a
base-p numeral with ``c_0`` most significant.  Integer order on codes is
therefore the lexicographic order of coefficient vectors compared
low-degree-first, which is the canonical element order used everywhere
(enumeration, canonical representatives, generator search).

Every arithmetic method on :class:`FieldCtx` accepts ints or numpy arrays of
codes and broadcasts; :class:`FieldElement` is a thin scalar wrapper.
"""

import functools
import itertools
import re

import numpy as np
import sympy

from . import linalg
from .errors import (DivisionByZero, EvenCharacteristic, FewWeightError, MixedContexts,
                     NotADivisor, NotInSubfield, NotPrime, ParseError, ReducibleModulus,
                     SizeCapExceeded, ZeroInput)

DEFAULT_SIZE_CAP = 2 ** 26
TABLE_LIMIT = 2 ** 20


class NotAGenerator(FewWeightError):
    pass


# ---------------------------------------------------------------------------
# polynomials over F_p as little-endian coefficient lists

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = [c % p for c in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df]) if len(a) >= df else _trim(a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p):
    """Rabin's test for a monic polynomial ``f`` (little-endian) over F_p."""
    f = [c % p for c in f]
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    x = [0, 1]
    # x^{p^m} = x (mod f)
    xp = x
    powers = {0: x}
    for i in range(1, m + 1):
        xp = _ppowmod(xp, p, f, p)
        powers[i] = xp
    if _trim(powers[m]) != _pmod(x, f, p):
        return False
    for r in sympy.primefactors(m):
        h = list(powers[m // r]) + [0] * 2
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _trim(h), p)) > 1:
            return False
    return True


def irreducible_polynomials(p, m):
    """Monic irreducibles of degree m in lexicographic order (low degree compared first)."""
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue
        f = list(low) + [1]
        if is_irreducible(f, p):
            yield tuple(f)


_TERM = re.compile(r"^([+-]?)\s*(\d*)\s*\*?\s*(?:([xX])\s*(?:(?:\^|\*\*)\s*(\d+))?)?$")


def parse_polynomial(text, p):
    """Parse ``c0 + c1*x + ... + cm*x^m`` or ``[c0,c1,...,cm]`` into a coefficient list."""
    if isinstance(text, (list, tuple)):
        return [int(c) % p for c in text]
    s = text.strip()
    if s.startswith("["):
        try:
            return [int(c) % p for c in s.strip("[]").split(",") if c.strip()]
        except ValueError:
            raise ParseError("bad coefficient list %r" % text) from None
    s = s.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    coeffs = {}
    for t in terms:
        mt = _TERM.match(t)
        if not mt or (not mt.group(2) and not mt.group(3)):
            raise ParseError("cannot parse term %r in %r" % (t, text))
        sign, c, var, e = mt.groups()
        c = int(c) if c else 1
        if sign == "-":
            c = -c
        deg = (int(e) if e else 1) if var else 0
        coeffs[deg] = coeffs.get(deg, 0) + c
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c % p
    return out


def format_polynomial(f):
    terms = []
    for d in range(len(f) - 1, -1, -1):
        c = f[d]
        if c == 0:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else "x^%d" % d)
        if mono and c == 1:
            terms.append(mono)
        else:
            terms.append("%d%s" % (c, ("*" + mono) if mono else ""))
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------

class FieldCtx:
    """A concrete F_{p^m} = F_p[x]/(modulus).  Immutable after construction."""

    def __init__(self, p, m, modulus, generator=None, size_cap=DEFAULT_SIZE_CAP):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(int(c) % p for c in modulus)
        self.size_cap = size_cap
        self._w = p ** np.arange(m - 1, -1, -1, dtype=np.int64)
        self._mod_low = np.array(self.modulus[:m], dtype=np.int64)
        self._exp = self._log = self._tr = None
        self.one = int(self._w[0])
        self.x = int(self._w[1])
        self._trace_vec = np.array(
            [self._slow_trace(self._power_slow(self.x, i)) for i in range(m)], dtype=np.int64)
        self._order_primes = sympy.primefactors(self.q - 1)
        if generator is not None:
            g = self._code_of(generator)
            if not self.is_primitive(g):
                raise NotAGenerator("%s does not have order %d" % (generator, self.q - 1))
        elif self.is_primitive(self.x):
            g = self.x
        else:
            g = self._smallest_primitive()
        self.gen = int(g)
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- identity ---------------------------------------------------------
    @property
    def key(self):
        return (self.p, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "FieldCtx(p=%d, m=%d, modulus=%s)" % (self.p, self.m, format_polynomial(self.modulus))

    # -- encoding ---------------------------------------------------------
    def digits(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._w) % self.p

    def encode(self, digs):
        return (np.asarray(digs, dtype=np.int64) % self.p) @ self._w

    def _code_of(self, v):
        if isinstance(v, FieldElement):
            self._check(v)
            return v.code
        return int(v)

    def _check(self, e):
        if e.ctx is not self and e.ctx != self:
            raise MixedContexts("element of %r used in %r" % (e.ctx, self))

    # -- element constructors -------------------------------------------
    def element(self, code):
        return FieldElement(self, int(code))

    def scalar(self, c):
        """The prime-field element c * 1."""
        return FieldElement(self, (int(c) % self.p) * self.one)

    def from_coeffs(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > self.m:
            coeffs = _pmod(coeffs, list(self.modulus), self.p)
        coeffs = coeffs + [0] * (self.m - len(coeffs))
        return FieldElement(self, int(self.encode(coeffs)))

    def gen_power(self, k):
        return FieldElement(self, int(self.power(self.gen, k)))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def generator(self):
        return FieldElement(self, self.gen)

    def codes(self):
        return np.arange(self.q, dtype=np.int64)

    def parse_element(self, text):
        """Element literal: an integer (prime subfield), ``a^k`` / ``-a^k`` for
        generator powers, ``[c0,c1,...]`` coefficients, or a polynomial in x."""
        s = str(text).strip().replace(" ", "")
        mt = re.fullmatch(r"([+-]?)(?:a|g|alpha)(?:(?:\^|\*\*)(-?\d+))?", s)
        if mt:
            e = self.gen_power(int(mt.group(2)) if mt.group(2) else 1)
            return -e if mt.group(1) == "-" else e
        if re.fullmatch(r"[+-]?\d+", s):
            return self.scalar(int(s))
        try:
            return self.from_coeffs(parse_polynomial(s, self.p))
        except ParseError:
            raise ParseError("cannot parse field element %r" % text) from None

    # -- arithmetic (vectorized over codes) -------------------------------
    def add(self, a, b):
        return self.encode(self.digits(a) + self.digits(b))

    def sub(self, a, b):
        return self.encode(self.digits(a) - self.digits(b))

    def neg(self, a):
        return self.encode(-self.digits(a))

    def scale(self, c, a):
        """Multiply by a prime-field scalar c."""
        return self.encode(self.digits(a) * int(c))

    def _polymul(self, A, B):
        A, B = np.broadcast_arrays(A, B)
        m, p = self.m, self.p
        res = np.zeros(A.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            res[..., i:i + m] += A[..., i:i + 1] * B
        res %= p
        for deg in range(2 * m - 2, m - 1, -1):
            c = res[..., deg]
            res[..., deg - m:deg] -= c[..., None] * self._mod_low
            res[..., deg - m:deg] %= p
        return res[..., :m]

    def _mul_slow(self, a, b):
        return self.encode(self._polymul(self.digits(a), self.digits(b)))

    def mul(self, a, b):
        if self._exp is None:
            return self._mul_slow(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def _power_slow(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        result = np.full(a.shape, self.one, dtype=np.int64)
        base = a
        e = int(e)
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def power(self, a, e):
        e = int(e)
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return np.full(a.shape, self.one, dtype=np.int64)
        if self._exp is None:
            return self._power_slow(a, e)
        r = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero in %r" % self)
        if self._exp is None:
            return self._power_slow(a, self.q - 2)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def frobenius(self, a, times=1):
        return self.power(a, self.p ** (times % self.m))

    def _slow_trace(self, a):
        acc = np.asarray(a, dtype=np.int64)
        t = acc
        for _ in range(self.m - 1):
            t = self._power_slow(t, self.p)
            acc = self.add(acc, t)
        # the trace lies in F_p: code is c * p^{m-1}
        return int(acc) // int(self._w[0])

    def trace(self, a):
        """Absolute trace, as integers in [0, p)."""
        if self._tr is not None:
            return self._tr[np.asarray(a, dtype=np.int64)]
        return (self.digits(a) @ self._trace_vec) % self.p

    def rel_trace(self, a, k):
        if k <= 0 or self.m % k:
            raise NotADivisor("%d does not divide %d" % (k, self.m))
        acc = np.asarray(a, dtype=np.int64)
        t = acc
        for _ in range(self.m // k - 1):
            t = self.power(t, self.p ** k)
            acc = self.add(acc, t)
        return acc

    def eta(self, a):
        """Quadratic character: 0, +1 or -1."""
        a = np.asarray(a, dtype=np.int64)
        r = self.power(a, (self.q - 1) // 2)
        return np.where(a == 0, 0, np.where(r == self.one, 1, -1))

    def prime_value(self, a):
        """Value c of an element known to lie in F_p (code c * p^{m-1})."""
        a = np.asarray(a, dtype=np.int64)
        return a // int(self._w[0])

    # -- multiplicative structure -----------------------------------------
    def is_primitive(self, a):
        a = int(a)
        if a == 0:
            return False
        if int(self._power_slow(a, self.q - 1)) != self.one:
            return False
        return all(int(self._power_slow(a, (self.q - 1) // r)) != self.one
                   for r in self._order_primes)

    def _smallest_primitive(self):
        for c in range(1, self.q):
            if self.is_primitive(c):
                return c
        raise AssertionError("no primitive element found")

    def _build_tables(self):
        q, g = self.q, self.gen
        n = q - 1
        B = int(np.ceil(np.sqrt(n)))
        first = np.empty(B, dtype=np.int64)
        cur = self.one
        for i in range(B):
            first[i] = cur
            cur = int(self._mul_slow(cur, g))
        step = cur  # g^B
        nblocks = -(-n // B)
        starts = np.empty(nblocks, dtype=np.int64)
        cur = self.one
        for j in range(nblocks):
            starts[j] = cur
            cur = int(self._mul_slow(cur, step))
        full = self._mul_slow(starts[:, None], first[None, :]).reshape(-1)[:n]
        log = np.zeros(q, dtype=np.int64)
        log[full] = np.arange(n, dtype=np.int64)
        if len(np.unique(full)) != n:
            raise AssertionError("generator powers are not distinct")
        self._exp = full
        self._log = log
        self._tr = self.trace(np.arange(q, dtype=np.int64))

    def gen_powers(self):
        """g^0, g^1, ..., g^{q-2} for the context generator g."""
        if self._exp is not None:
            return self._exp.copy()
        out = np.empty(self.q - 1, dtype=np.int64)
        cur = self.one
        for i in range(self.q - 1):
            out[i] = cur
            cur = int(self._mul_slow(cur, self.gen))
        return out

    def log(self, a):
        """Discrete logarithm to the base of the context generator."""
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("log of zero")
        if self._log is None:
            raise NotImplementedError("discrete log needs tables (q <= %d)" % TABLE_LIMIT)
        return self._log[a]

    # -- trace duality ------------------------------------------------------
    def _x_powers(self, n):
        return np.array([int(self.power(self.x, i)) for i in range(n)], dtype=np.int64)

    @functools.cached_property
    def trace_gram(self):
        """Matrix T[i, j] = Tr(x^{i+j}) of the trace form on the power basis."""
        tr = self.trace(self._x_powers(2 * self.m - 1))
        i = np.arange(self.m)
        return tr[i[:, None] + i[None, :]]

    @functools.cached_property
    def dual_basis(self):
        """Codes of gamma_0..gamma_{m-1} with Tr(x^i gamma_j) = delta_ij."""
        Tinv = linalg.inverse(self.trace_gram, self.p)
        # gamma_j has power-basis coordinates given by column j of T^{-1}
        return self.encode(Tinv.T)

    def dual_coordinates(self, a):
        """Coordinates of a in the trace-dual basis: a_j = Tr(x^j a)."""
        return (self.digits(a) @ self.trace_gram.T) % self.p

    def linear_map_matrix(self, fn):
        """Matrix over F_p (power basis) of an F_p-linear map given on codes."""
        basis = self._x_powers(self.m)
        images = np.asarray(fn(basis), dtype=np.int64)
        return self.digits(images).T

    def subfields(self):
        return [(k, self.p ** k) for k in range(1, self.m + 1) if self.m % k == 0]


class FieldElement:
    __slots__ = ("ctx", "code")

    def __init__(self, ctx, code):
        self.ctx = ctx
        self.code = int(code)

    def _other(self, o):
        if isinstance(o, FieldElement):
            self.ctx._check(o)
            return o.code
        if isinstance(o, (int, np.integer)):
            return self.ctx.scalar(int(o)).code
        return NotImplemented

    def __add__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.code, c))

    def __rsub__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FieldElement(self.ctx, self.ctx.sub(c, self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, o):
        c = self._other(o)
        return NotImplemented if c is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.code, c))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def __truediv__(self, o):
        c = self._other(o)
        if c is NotImplemented:
            return NotImplemented
        return self * FieldElement(self.ctx, self.ctx.inv(c))

    def __pow__(self, e):
        return FieldElement(self.ctx, self.ctx.power(self.code, e))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.ctx == o.ctx and self.code == o.code
        if isinstance(o, (int, np.integer)):
            return self.code == self.ctx.scalar(int(o)).code
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.code))

    def __lt__(self, o):
        return self.code < o.code

    def __bool__(self):
        return self.code != 0

    @property
    def coeffs(self):
        return tuple(int(c) for c in self.ctx.digits(self.code))

    def __repr__(self):
        return "FieldElement(%s)" % list(self.coeffs)

    def to_json(self):
        return list(self.coeffs)


# ---------------------------------------------------------------------------
# module-level operations

def _as_poly(modulus, p):
    if isinstance(modulus, str):
        return parse_polynomial(modulus, p)
    return [int(c) % p for c in modulus]


@functools.lru_cache(maxsize=32)
def _make_field_cached(p, m, modulus, generator, size_cap):
    return FieldCtx(p, m, modulus, generator, size_cap)


def make_field(p, m, modulus=None, generator=None, size_cap=DEFAULT_SIZE_CAP):
    """Validated F_{p^m}.  Without a modulus, the lexicographically smallest
    monic irreducible of degree m is used.

    ``generator`` optionally fixes the context generator (the meaning of
    ``a`` in element literals); by default it is the class of x when x is
    primitive, otherwise :func:`find_generator`'s choice.
    """
    p, m = int(p), int(m)
    if p < 2 or not sympy.isprime(p):
        raise NotPrime("%d is not prime" % p)
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if m < 2:
        raise FewWeightError("extension degree must be at least 2, got %d" % m)
    if p ** m > size_cap:
        raise SizeCapExceeded("p^m = %d exceeds the size cap %d" % (p ** m, size_cap))
    if modulus is None:
        f = next(irreducible_polynomials(p, m))
    else:
        f = _as_poly(modulus, p)
        f = _trim(f)
        if len(f) - 1 != m or f[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree %d: %s" % (m, format_polynomial(f)))
        if not is_irreducible(f, p):
            raise ReducibleModulus("%s is reducible over F_%d" % (format_polynomial(f), p))
    if generator is not None and not isinstance(generator, int):
        generator = int(np.asarray(generator.code if isinstance(generator, FieldElement) else generator))
    return _make_field_cached(p, m, tuple(f), generator, size_cap)


def find_generator(ctx):
    """Smallest element (canonical order) of multiplicative order p^m - 1."""
    return FieldElement(ctx, ctx._smallest_primitive())


def enumerate_elements(ctx):
    for c in range(ctx.q):
        yield FieldElement(ctx, c)


def abs_trace(x):
    return int(x.ctx.trace(x.code))


def rel_trace(x, k):
    return FieldElement(x.ctx, x.ctx.rel_trace(x.code, k))


def quadratic_character(x):
    return int(x.ctx.eta(x.code))


def is_square_in_subfield(x, k):
    ctx = x.ctx
    if k <= 0 or ctx.m % k:
        raise NotADivisor("%d does not divide %d" % (k, ctx.m))
    if x.code == 0:
        raise ZeroInput("zero has no quadratic character")
    if int(ctx.power(x.code, ctx.p ** k)) != x.code:
        raise NotInSubfield("%r is not in the subfield of order %d^%d" % (x, ctx.p, k))
    return int(ctx.power(x.code, (ctx.p ** k - 1) // 2)) == ctx.one


def multiplicative_order(x):
    ctx = x.ctx
    if x.code == 0:
        raise ZeroInput("zero has no multiplicative order")
    n = ctx.q - 1
    for r, e in sympy.factorint(n).items():
        for _ in range(e):
            if int(ctx.power(x.code, n // r)) == ctx.one:
                n //= r
            else:
                break
    return n
