"""Dense linear algebra over prime fields GF(p).

Everything here is exact: entries are int64 residues in ``[0, p)`` and every
operation reduces mod p.  ``FieldMatrix`` is the public, immutable matrix
type; the ``*_array`` helpers operate on raw numpy arrays and are what the
hot loops in the rest of the package call.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

MAX_MODULUS = 1 << 16


class FieldError(ValueError):
    """Raised for an invalid field modulus."""


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`invert` on a singular matrix."""

    def __init__(self, msg: str = "singular"):
        super().__init__(msg)


class ShapeError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def validate_modulus(p: int) -> int:
    """Return ``p`` if it is a usable prime modulus, else raise FieldError."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise FieldError(f"field modulus must be an integer, got {p!r}")
    p = int(p)
    if p > MAX_MODULUS:
        raise FieldError(f"field modulus {p} exceeds 2^16")
    if not is_prime(p):
        raise FieldError(f"field modulus {p} is not prime")
    return p


def inverse_mod(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(x, p - 2, p)


# ---------------------------------------------------------------------------
# array-level kernels

def as_array(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    arr = np.array(rows, dtype=np.int64)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.ndim != 2:
        if arr.size == 0 and shape is None:
            arr = arr.reshape(0, 0)
        else:
            raise ShapeError(f"expected a 2-d matrix, got shape {arr.shape}")
    return np.mod(arr, p)


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod p and its pivot columns.

    Leftmost pivot column first; within a column the topmost candidate row
    is used.  The input is not modified.
    """
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = inverse_mod(int(m[r, c]), p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        if col.any():
            m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_array(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_array(a, p)[1])


def nullspace_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Basis of ``{x : a x = 0}`` as the columns of the returned matrix.

    Basis vector k has a 1 at the k-th free column and 0 at every other free
    column, so the coordinates of any kernel vector are its free entries.
    Returns ``(basis, free_columns)``.
    """
    rows, cols = a.shape
    r, pivots = rref_array(a, p)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r[i, f]) % p
    return basis, free


def column_echelon_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Canonical basis of the column span of ``a``.

    The basis is the transpose of the nonzero rows of rref(a^T); its
    ``pivot_rows`` carry an identity pattern, lowest index first.
    """
    n = a.shape[0]
    if a.size == 0:
        return np.zeros((n, 0), dtype=np.int64), []
    r, piv = rref_array(a.T, p)
    return np.ascontiguousarray(r[: len(piv)].T), piv


def invert_array(a: np.ndarray, p: int) -> np.ndarray:
    n, m = a.shape
    if n != m:
        raise ShapeError(f"cannot invert a {n}x{m} matrix")
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref_array(aug, p)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError()
    return r[:, n:].copy()


def matmul_array(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[-1] != b.shape[-2]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return np.matmul(a, b) % p


def batch_power(x: np.ndarray, e: int, p: int) -> np.ndarray:
    """``x**e`` mod p for a stack of square matrices of shape (B, n, n)."""
    n = x.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), x.shape).copy()
    base = x % p
    while e:
        if e & 1:
            result = np.matmul(result, base) % p
        e >>= 1
        if e:
            base = np.matmul(base, base) % p
    return result


@lru_cache(maxsize=None)
def gl_exponent(n: int, p: int) -> int:
    """Exponent of GL_n(p), made at least n.

    For every n x n matrix X over GF(p), ``X**gl_exponent(n, p)`` is the
    Fitting idempotent of X: identity on the invertible part, zero on the
    nilpotent part.  Equals ``p^ceil(log_p n) * lcm(p^i - 1, i <= n)``.
    """
    if n <= 0:
        return 1
    lcm = 1
    for i in range(1, n + 1):
        q = p**i - 1
        lcm = lcm * q // gcd(lcm, q)
    pk = 1
    while pk < n:
        pk *= p
    return pk * lcm


def all_matrices(rows: int, cols: int, p: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Matrices with index in ``[start, stop)`` in lexicographic entry order.

    Index ``i`` is read as a base-p numeral with the (0,0) entry most
    significant, entries row-major.  Shape ``(stop - start, rows, cols)``.
    """
    k = rows * cols
    total = p**k
    if stop is None:
        stop = total
    idx = np.arange(start, stop, dtype=np.int64)
    count = idx.size
    digits = np.empty((count, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        digits[:, j] = idx % p
        idx = idx // p
    return digits.reshape(count, rows, cols)


def coefficient_block(start: int, stop: int, d: int, p: int) -> np.ndarray:
    """Coefficient vectors ``start..stop-1`` of GF(p)^d in lexicographic order."""
    return all_matrices(1, d, p, start, stop).reshape(stop - start, d)


# ---------------------------------------------------------------------------
# public matrix type

class FieldMatrix:
    """Immutable dense matrix over GF(p).

    >>> A = FieldMatrix([[1, 1], [0, 1]], 2)
    >>> (A @ A) == FieldMatrix.identity(2, 2)
    True
    """

    __slots__ = ("p", "_a", "_key")

    def __init__(self, rows, p: int, shape: tuple[int, int] | None = None):
        self.p = validate_modulus(p)
        a = as_array(rows, self.p, shape)
        a.setflags(write=False)
        self._a = a
        self._key = None

    @classmethod
    def _wrap(cls, a: np.ndarray, p: int) -> "FieldMatrix":
        obj = cls.__new__(cls)
        obj.p = p
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        obj._a = a
        obj._key = None
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FieldMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), validate_modulus(p))

    @classmethod
    def identity(cls, n: int, p: int) -> "FieldMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64), validate_modulus(p))

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view of the entries."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.ravel())

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix._wrap(self._a.T, self.p)

    def _check(self, other: "FieldMatrix") -> None:
        if not isinstance(other, FieldMatrix):
            raise TypeError(f"expected FieldMatrix, got {type(other).__name__}")
        if other.p != self.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return matmul(self, other)

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add shapes {self.shape} and {other.shape}")
        return FieldMatrix._wrap((self._a + other._a) % self.p, self.p)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract shapes {self.shape} and {other.shape}")
        return FieldMatrix._wrap((self._a - other._a) % self.p, self.p)

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix._wrap((-self._a) % self.p, self.p)

    def __mul__(self, scalar: int) -> "FieldMatrix":
        return FieldMatrix._wrap((self._a * (int(scalar) % self.p)) % self.p, self.p)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        if self._key is None:
            self._key = hash((self.p, self.shape, self._a.tobytes()))
        return self._key

    def is_zero(self) -> bool:
        return not self._a.any()

    def __repr__(self) -> str:
        return f"FieldMatrix({self._a.tolist()}, p={self.p}, shape={self.shape})"


def _fm(x, p: int | None = None) -> FieldMatrix:
    if isinstance(x, FieldMatrix):
        return x
    if p is None:
        raise TypeError("a modulus is required for non-FieldMatrix input")
    return FieldMatrix(x, p)


def rref(M: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    """Reduced row echelon form and ordered pivot columns."""
    r, piv = rref_array(M.array, M.p)
    return FieldMatrix._wrap(r, M.p), piv


def rank(M: FieldMatrix) -> int:
    return rank_array(M.array, M.p)


def nullspace_basis(M: FieldMatrix) -> list[FieldMatrix]:
    """Kernel basis as column vectors, ordered by free column index."""
    basis, _ = nullspace_array(M.array, M.p)
    return [FieldMatrix._wrap(basis[:, [k]], M.p) for k in range(basis.shape[1])]


def is_invertible(M: FieldMatrix) -> bool:
    if M.rows != M.cols:
        raise ShapeError(f"is_invertible needs a square matrix, got {M.shape}")
    return rank(M) == M.rows


def invert(M: FieldMatrix) -> FieldMatrix:
    return FieldMatrix._wrap(invert_array(M.array, M.p), M.p)


def matmul(A: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    A._check(B)
    return FieldMatrix._wrap(matmul_array(A.array, B.array, A.p), A.p)


def hstack(mats: Sequence[FieldMatrix], rows: int, p: int) -> FieldMatrix:
    if not mats:
        return FieldMatrix.zeros(rows, 0, p)
    return FieldMatrix._wrap(np.concatenate([m.array for m in mats], axis=1), p)


def block_diag(blocks: Iterable[np.ndarray]) -> np.ndarray:
    blocks = list(blocks)
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out
