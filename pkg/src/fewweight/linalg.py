"""Dense linear algebra over the prime field F_p.

Matrices are small (m x m, m the extension degree) except for rank
computations over a defining set, so plain row reduction on int64
arrays is enough.
"""

import numpy as np


def _inv(x, p):
    return pow(int(x), -1, p)


def rref(M, p):
    """Reduced row echelon form of ``M`` over F_p.

    Returns ``(R, pivots, E)`` with ``E @ M % p == R`` and ``pivots`` the
    pivot column of each of the first ``len(pivots)`` rows of ``R``.
    """
    M = np.asarray(M, dtype=np.int64) % p
    rows, cols = M.shape
    R = M.copy()
    E = np.eye(rows, dtype=np.int64)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
            E[[r, i]] = E[[i, r]]
        s = _inv(R[r, c], p)
        R[r] = R[r] * s % p
        E[r] = E[r] * s % p
        f = R[:, c].copy()
        f[r] = 0
        R = (R - np.outer(f, R[r])) % p
        E = (E - np.outer(f, E[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots, E


def rank(M, p):
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    # row-reducing the transpose keeps the working matrix small when M is tall
    if M.shape[0] > M.shape[1]:
        M = _column_reduce(M, p)
    return len(rref(M, p)[1])


def _column_reduce(M, p):
    # Gaussian elimination over the (few) columns of a tall matrix; returns
    # a square matrix with the same row space.
    M = np.asarray(M, dtype=np.int64) % p
    n, cols = M.shape
    basis = []
    work = M.copy()
    for c in range(cols):
        nz = np.nonzero(work[:, c])[0]
        if len(nz) == 0:
            continue
        row = work[nz[0]] * _inv(work[nz[0], c], p) % p
        basis.append(row)
        work = (work - np.outer(work[:, c], row)) % p
    if not basis:
        return np.zeros((1, cols), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


def inverse(M, p):
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    R, pivots, E = rref(M, p)
    if len(pivots) != n:
        raise np.linalg.LinAlgError("matrix is singular over F_%d" % p)
    return E


def kernel(M, p):
    """Basis of {x : M x = 0} over F_p, one vector per row."""
    M = np.asarray(M, dtype=np.int64) % p
    cols = M.shape[1]
    R, pivots, _ = rref(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, fc]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


class AffineSolver:
    """Solve ``M x = b`` over F_p for many right-hand sides at once.

    ``solve`` takes a stack of right-hand sides (shape ``(N, rows)``) and
    returns a boolean consistency mask together with one particular
    solution per row (free variables set to zero).
    """

    def __init__(self, M, p):
        self.p = p
        self.M = np.asarray(M, dtype=np.int64) % p
        self.R, self.pivots, self.E = rref(self.M, p)
        self.rank = len(self.pivots)
        self.kernel = kernel(self.M, p)

    def solve(self, B):
        p = self.p
        B = np.atleast_2d(np.asarray(B, dtype=np.int64))
        Bt = B @ self.E.T % p
        ok = np.all(Bt[:, self.rank:] == 0, axis=1)
        X = np.zeros((B.shape[0], self.M.shape[1]), dtype=np.int64)
        for i, pc in enumerate(self.pivots):
            X[:, pc] = Bt[:, i]
        return ok, X
