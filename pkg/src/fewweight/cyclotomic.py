"""Exact arithmetic in Z[w], w a primitive p-th root of unity.

A :class:`CycInt` is a coefficient vector ``(c_0, ..., c_{p-1})`` meaning
``sum c_j w^j``.  The normal form subtracts ``c_{p-1}`` from every entry
(using ``1 + w + ... + w^{p-1} = 0``) so the last coefficient is always 0;
two values are equal iff their normal forms agree.

Bulk data (whole Walsh spectra) is kept as int64 arrays of shape
``(..., p)`` and handled by the ``*_array`` helpers at the bottom.
Coefficients there are bounded by the field size, which the size cap keeps
below 2**26, so int64 cannot overflow.
"""

import cmath

import numpy as np

from .errors import MixedPrime


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs=()):
        c = [0] * p
        for j, v in enumerate(coeffs):
            c[j % p] += int(v)
        top = c[p - 1]
        if top:
            c = [v - top for v in c]
        self.p = p
        self.coeffs = tuple(c)

    @classmethod
    def integer(cls, p, n):
        return cls(p, (n,))

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise MixedPrime("cannot combine Z[w_%d] with Z[w_%d]" % (self.p, other.p))
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def scale(self, n):
        return CycInt(self.p, [n * a for a in self.coeffs])

    def conj(self):
        """Complex conjugation, w^j -> w^{p-j}."""
        p = self.p
        out = [0] * p
        for j, a in enumerate(self.coeffs):
            out[(-j) % p] += a
        return CycInt(p, out)

    def times_root(self, j):
        """Multiply by w^j (a cyclic shift of the coefficients)."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            out[(i + j) % p] += a
        return CycInt(p, out)

    def is_rational(self):
        """The integer c if this equals c*1, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def norm_squared(self):
        """|z|^2 as an integer when it is rational, else None."""
        return (self * self.conj()).is_rational()

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (CycInt, int, np.integer)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def approx(self):
        """Floating-point complex value (display only)."""
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(c * w ** j for j, c in enumerate(self.coeffs))

    def __repr__(self):
        return "CycInt(%d, %s)" % (self.p, list(self.coeffs[:-1]))

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("w" if j == 1 else "w^%d" % j)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append("%d%s" % (c, mono))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self):
        return {"p": self.p, "coeffs": list(self.coeffs[:-1])}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["p"], obj["coeffs"])


def root_power(p, j):
    """w_p^j in normal form."""
    c = [0] * p
    c[j % p] = 1
    return CycInt(p, c)


def sqrt_minus3():
    """The element 1 + 2w of Z[w_3]; it squares to -3 and equals i*sqrt(3)
    under w = exp(2*pi*i/3)."""
    return CycInt(3, (1, 2))


# ---------------------------------------------------------------------------
# array form: shape (..., p), integer dtype

def normalize_array(arr):
    arr = np.asarray(arr)
    return arr - arr[..., -1:]


def conj_array(arr):
    p = arr.shape[-1]
    idx = (-np.arange(p)) % p
    out = np.zeros_like(arr)
    out[..., idx] = arr
    return normalize_array(out)


def shift_array(arr, j):
    """Multiply every entry by w^j."""
    return np.roll(arr, j % arr.shape[-1], axis=-1)


def mul_array(a, b):
    a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
    p = a.shape[-1]
    out = np.zeros(a.shape, dtype=np.result_type(a, b))
    for i in range(p):
        out += a[..., i:i + 1] * np.roll(b, i, axis=-1)
    return normalize_array(out)


def rational_array(arr):
    """Integer values of entries that are rational; raises if any is not."""
    arr = normalize_array(arr)
    if np.any(arr[..., 1:]):
        raise ValueError("array holds irrational cyclotomic values")
    return arr[..., 0]


def to_cycints(arr):
    arr = np.asarray(arr)
    p = arr.shape[-1]
    return [CycInt(p, row.tolist()) for row in arr.reshape(-1, p)]


def from_cycint(z):
    return np.array(z.coeffs, dtype=np.int64)
