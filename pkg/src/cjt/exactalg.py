"""Exact arithmetic over GF(p^e) and dense linear algebra on top of it.

Elements of GF(p^e) are stored as integer *codes* in [0, p^e): the base-p
digits of a code are the coordinates of the element in the power basis of
the modulus polynomial (low degree first).  All matrix kernels below are
vectorized over numpy int64 arrays of codes; nothing is ever floating
point, so every comparison in this package is exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Field",
    "FieldElement",
    "Matrix",
    "SolveResult",
    "make_field",
    "rank",
    "solve_linear",
    "nullspace",
]


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p) (coefficient tuples, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    a = list(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and _poly_trim(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = (a[-1] * lead_inv) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_powmod(a: Sequence[int], n: int, m: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _poly_mod(a, m, p)
    while n:
        if n & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        n >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_minus_x(k: int, poly: Sequence[int], p: int) -> tuple[int, ...]:
    """x^(p^k) - x reduced mod poly."""
    t = list(_poly_powmod((0, 1), p**k, poly, p))
    t += [0] * max(0, 2 - len(t))
    t[1] = (t[1] - 1) % p
    return _poly_trim(t)


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p) via Frobenius gcds."""
    e = len(poly) - 1
    if e == 1:
        return True
    if _frobenius_minus_x(e, poly, p):
        return False
    for ell in _prime_factors(e):
        if len(_poly_gcd(_frobenius_minus_x(e // ell, poly, p), poly, p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# the field itself
# ---------------------------------------------------------------------------

class Field:
    """GF(p^e) with an explicit monic modulus polynomial.

    This object doubles as the arithmetic kernel: all ``add``/``mul``/...
    methods accept numpy arrays of element codes (broadcasting like numpy)
    and are the only arithmetic the linear algebra layer uses.  Values are
    immutable; the discrete-log tables are a lazily built, idempotent
    cache, so sharing a field across workers stays safe.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree e = {e} must be >= 1")
        modulus = tuple(int(c) % p for c in modulus)
        if e == 1:
            if modulus != (0, 1):
                raise ValueError("degree-1 modulus must be x")
        else:
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e")
            if not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self._red: np.ndarray | None = None

    # -- identity ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e})"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    # -- discrete log tables (e >= 2 only) ----------------------------------
    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            gp = self._code_to_poly(g)
            if all(
                self._poly_to_code(_poly_powmod(gp, (q - 1) // ell, self.modulus, p)) != 1
                for ell in factors
            ):
                break
        else:  # pragma: no cover - a generator always exists
            raise RuntimeError("no multiplicative generator found")
        val = (1,)
        for i in range(q - 1):
            code = self._poly_to_code(val)
            exp[i] = code
            log[code] = i
            val = _poly_mod(_poly_mul(val, gp, p), self.modulus, p)
        self._exp = exp
        self._log = log
        # reduction rows: coefficients of x^m mod modulus for m in [e, 2e-2]
        red = np.zeros((2 * e - 1, e), dtype=np.int64)
        for m in range(2 * e - 1):
            r = _poly_mod((0,) * m + (1,), self.modulus, p)
            red[m, : len(r)] = r
        self._red = red

    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._exp is None:
            self._build_tables()
        return self._exp, self._log  # type: ignore[return-value]

    def _code_to_poly(self, code: int) -> tuple[int, ...]:
        p, out = self.p, []
        while code:
            out.append(code % p)
            code //= p
        return _poly_trim(out)

    def _poly_to_code(self, poly: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(poly)):
            code = code * self.p + (c % self.p)
        return code

    # -- elementwise arithmetic on code arrays ------------------------------
    def add(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        x, y = a.copy(), b.copy()
        for k in range(self.e):
            out += ((x + y) % self.p) * self.p**k
            x //= self.p
            y //= self.p
        return out

    def neg(self, a):
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        a = np.asarray(a)
        out = np.zeros(a.shape, dtype=np.int64)
        x = a.copy()
        for k in range(self.e):
            out += ((-x) % self.p) * self.p**k
            x //= self.p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        exp, log = self._tables()
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        m = (a != 0) & (b != 0)
        out[m] = exp[(log[a[m]] + log[b[m]]) % (self.q - 1)]
        return out

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return np.vectorize(lambda x: pow(int(x), self.p - 2, self.p))(a).astype(np.int64) \
                if a.ndim else np.int64(pow(int(a), self.p - 2, self.p))
        exp, log = self._tables()
        return exp[(-log[a]) % (self.q - 1)]

    def inv_scalar(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return pow(int(a), self.p - 2, self.p)
        exp, log = self._tables()
        return int(exp[(-log[a]) % (self.q - 1)])

    def pow_scalar(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(int(a), n, self.p)
        exp, log = self._tables()
        return int(exp[(int(log[a]) * n) % (self.q - 1)])

    def pow_array(self, a, n: int):
        """Elementwise n-th power of a code array (n >= 0)."""
        a = np.asarray(a)
        if n == 0:
            return np.ones(a.shape, dtype=np.int64)
        if self.e == 1:
            out = np.ones(a.shape, dtype=np.int64)
            base = a % self.p
            k = n
            while k:
                if k & 1:
                    out = (out * base) % self.p
                base = (base * base) % self.p
                k >>= 1
            return out
        exp, log = self._tables()
        out = np.zeros(a.shape, dtype=np.int64)
        m = a != 0
        out[m] = exp[(log[a[m]] * n) % (self.q - 1)]
        return out

    def frobenius(self, a):
        """x -> x^p, vectorized over code arrays."""
        if self.e == 1:
            return np.asarray(a)
        exp, log = self._tables()
        a = np.asarray(a)
        out = np.zeros(a.shape, dtype=np.int64)
        m = a != 0
        out[m] = exp[(log[a[m]] * self.p) % (self.q - 1)]
        return out

    def in_subfield(self, code: int, d: int) -> bool:
        """Whether the element lies in the subfield GF(p^d) (d must divide e)."""
        x = np.int64(code)
        for _ in range(d):
            x = self.frobenius(x)
        return int(x) == code

    # -- matrix kernels ------------------------------------------------------
    def _planes(self, a: np.ndarray) -> list[np.ndarray]:
        out = []
        x = a.copy()
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return out

    def _recompose(self, planes: list[np.ndarray]) -> np.ndarray:
        out = np.zeros(planes[0].shape, dtype=np.int64)
        for k in range(self.e - 1, -1, -1):
            out = out * self.p + planes[k] % self.p
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            # go through BLAS: with entries below p the accumulated dot
            # products stay far below 2^53, so float64 arithmetic is exact
            if a.shape[1] * (self.p - 1) ** 2 < (1 << 53):
                prod = (a % self.p).astype(np.float64) @ (b % self.p).astype(np.float64)
                return prod.astype(np.int64) % self.p
            return (a @ b) % self.p
        if self._red is None:
            self._build_tables()
        ap = [x.astype(np.float64) for x in self._planes(a)]
        bp = [x.astype(np.float64) for x in self._planes(b)]
        acc = [None] * (2 * self.e - 1)
        for k in range(self.e):
            for l in range(self.e):
                prod = ap[k] @ bp[l]
                m = k + l
                acc[m] = prod if acc[m] is None else acc[m] + prod
        acc = [x.astype(np.int64) % self.p for x in acc]
        planes = [acc[k] for k in range(self.e)]
        for m in range(self.e, 2 * self.e - 1):
            row = self._red[m]  # type: ignore[index]
            for k in range(self.e):
                if row[k]:
                    planes[k] = planes[k] + int(row[k]) * acc[m]
        return self._recompose([x % self.p for x in planes])

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return np.kron(a, b) % self.p
        if self._red is None:
            self._build_tables()
        ap, bp = self._planes(a), self._planes(b)
        acc = [None] * (2 * self.e - 1)
        for k in range(self.e):
            for l in range(self.e):
                prod = np.kron(ap[k], bp[l])
                m = k + l
                acc[m] = prod if acc[m] is None else acc[m] + prod
        acc = [x % self.p for x in acc]
        planes = [acc[k] for k in range(self.e)]
        for m in range(self.e, 2 * self.e - 1):
            row = self._red[m]  # type: ignore[index]
            for k in range(self.e):
                if row[k]:
                    planes[k] = planes[k] + int(row[k]) * acc[m]
        return self._recompose([x % self.p for x in planes])

    # -- element bookkeeping -------------------------------------------------
    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.code_of(value))

    def code_of(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element from a different field")
            return value.code
        if isinstance(value, (int, np.integer)):
            if self.e == 1:
                return int(value) % self.p
            v = int(value)
            if not 0 <= v < self.q:
                raise ValueError(f"code {v} out of range for GF({self.p}^{self.e})")
            return v
        # coefficient list, low degree first
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        return self._poly_to_code(coeffs)

    def serialize_code(self, code: int):
        if self.e == 1:
            return int(code)
        coeffs = list(self._code_to_poly(int(code)))
        return coeffs + [0] * (self.e - len(coeffs))

    def ordered_codes(self) -> np.ndarray:
        """All element codes, sorted by serialized coefficient vectors
        (low-degree coefficient most significant)."""
        codes = np.arange(self.q, dtype=np.int64)
        if self.e == 1:
            return codes
        key = np.zeros(self.q, dtype=np.int64)
        x = codes.copy()
        for _ in range(self.e):
            key = key * self.p + x % self.p
            x //= self.p
        return codes[np.argsort(key, kind="stable")]


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> Field:
    """GF(p^e) with the lexicographically smallest monic irreducible modulus.

    Coefficient lists are compared low-degree-first, so the chosen modulus
    is deterministic across runs and serialized data stays portable.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree e = {e} must be >= 1")
    if e == 1:
        return Field(p, 1, (0, 1))
    # candidates (c_0, ..., c_{e-1}, 1) in lexicographic order on the low-first
    # coefficient list: the last index moves fastest
    def candidates():
        idx = [0] * e
        while True:
            yield tuple(idx) + (1,)
            j = e - 1
            while j >= 0 and idx[j] == p - 1:
                idx[j] = 0
                j -= 1
            if j < 0:
                return
            idx[j] += 1

    for cand in candidates():
        if _is_irreducible(cand, p):
            return Field(p, e, cand)
    raise RuntimeError("unreachable: irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FieldElement:
    """A single element of GF(p^e), stored by its integer code."""

    field: Field
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        c = self.field._code_to_poly(self.code)
        return c + (0,) * (self.field.e - len(c))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, int(self.field.add(self.code, self._c(other))))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, int(self.field.sub(self.code, self._c(other))))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, int(self.field.mul(self.code, self._c(other))))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.neg(self.code)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_scalar(self.code))

    def __pow__(self, n: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow_scalar(self.code, n))

    def _c(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.code
        return self.field.code_of(other)

    def __bool__(self) -> bool:
        return self.code != 0

    def serialize(self):
        return self.field.serialize_code(self.code)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Dense matrix over a Field; entries are element codes in an int64 array."""

    __slots__ = ("field", "array")

    def __init__(self, field: Field, array: np.ndarray):
        array = np.ascontiguousarray(np.asarray(array, dtype=np.int64))
        if array.ndim != 2:
            raise ValueError("matrix array must be 2-dimensional")
        self.field = field
        self.array = array

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        data = [[field.code_of(v) for v in row] for row in rows]
        arr = np.array(data, dtype=np.int64) if data else np.zeros((0, 0), dtype=np.int64)
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, int(self.array[i, j]))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        return Matrix(self.field, self.field.matmul(self.array, other.array))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.add(self.array, other.array))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.sub(self.array, other.array))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.neg(self.array))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.array.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.array.shape == other.array.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __hash__(self):  # pragma: no cover
        raise TypeError("matrices are not hashable")

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.array.copy())

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over GF({self.field.p}^{self.field.e}))"


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _echelonize(field: Field, a: np.ndarray, width: int) -> list[int]:
    """In-place forward elimination with unit pivots on columns [0, width).

    Pivot choice is the first row with a nonzero entry in the current
    column, scanning columns left to right; rows below each pivot are
    cleared.  Returns the pivot column indices.
    """
    rows = a.shape[0]
    piv_cols: list[int] = []
    r = 0
    for c in range(width):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        pivot = int(a[r, c])
        if pivot != 1:
            a[r, c:] = field.mul(a[r, c:], field.inv_scalar(pivot))
        below = np.nonzero(a[r + 1 :, c])[0]
        if below.size:
            idx = r + 1 + below
            factors = a[idx, c]
            a[idx, c:] = field.sub(a[idx, c:], field.mul(factors[:, None], a[r, c:][None, :]))
        piv_cols.append(c)
        r += 1
    return piv_cols


def _reduce_above(field: Field, a: np.ndarray, piv_cols: list[int]) -> None:
    """Clear entries above each pivot, completing reduced row echelon form."""
    for r in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[r]
        above = np.nonzero(a[:r, c])[0]
        if above.size:
            factors = a[above, c]
            a[above, c:] = field.sub(a[above, c:], field.mul(factors[:, None], a[r, c:][None, :]))


def rref_array(field: Field, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (unit pivots, zeros above and below)."""
    a = np.array(arr, dtype=np.int64)
    piv = _echelonize(field, a, a.shape[1])
    _reduce_above(field, a, piv)
    return a[: len(piv)], piv


def column_space(field: Field, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Canonical reduced basis of the column space, as matrix columns.

    The returned basis B satisfies B[pivot_rows, :] = I, so coordinates of
    any vector in the span can be read off at the pivot rows.
    """
    rows, piv = rref_array(field, arr.T)
    return rows.T, piv


def rank(m: Matrix) -> int:
    """Rank over the matrix's field, by Gaussian elimination."""
    a = m.array.copy()
    return len(_echelonize(m.field, a, a.shape[1]))


def rank_array(field: Field, arr: np.ndarray) -> int:
    a = np.array(arr, dtype=np.int64)
    return len(_echelonize(field, a, a.shape[1]))


def _kernel_from_echelon(
    field: Field, a: np.ndarray, piv_cols: list[int], ncols: int
) -> np.ndarray:
    """Nullspace basis from an echelonized matrix; columns are basis vectors.

    Each free column f yields the basis vector with coordinate 1 at f, 0 at
    the other free columns, making the basis order (and the row-identity
    structure on free coordinates) deterministic.
    """
    k = len(piv_cols)
    free = [c for c in range(ncols) if c not in set(piv_cols)]
    nf = len(free)
    basis = np.zeros((ncols, nf), dtype=np.int64)
    if nf == 0:
        return basis
    basis[free, np.arange(nf)] = 1
    if k:
        piv_arr = np.array(piv_cols)
        if field.e == 1 and k * (field.p - 1) ** 2 < (1 << 53):
            # back-substitute in float64 (exact: entries below p, short sums)
            coeff = a[:k][:, piv_arr].astype(np.float64)
            rhs0 = a[:k][:, free].astype(np.float64)
            vals_f = np.zeros((k, nf), dtype=np.float64)
            for i in range(k - 1, -1, -1):
                acc = rhs0[i]
                if i + 1 < k:
                    acc = acc + coeff[i, i + 1 :] @ vals_f[i + 1 :]
                vals_f[i] = (-acc.astype(np.int64)) % field.p
            vals = vals_f.astype(np.int64)
        else:
            vals = np.zeros((k, nf), dtype=np.int64)
            for i in range(k - 1, -1, -1):
                rhs = a[i, free].copy()
                if i + 1 < k:
                    rhs = field.add(
                        rhs,
                        field.matmul(a[i, piv_arr[i + 1 :]].reshape(1, -1), vals[i + 1 :]).ravel(),
                    )
                vals[i] = field.neg(rhs)
        basis[piv_arr] = vals
    return basis


def nullspace(m: Matrix) -> Matrix:
    """Basis of the right nullspace, as matrix columns (deterministic order)."""
    a = m.array.copy()
    piv = _echelonize(m.field, a, a.shape[1])
    return Matrix(m.field, _kernel_from_echelon(m.field, a, piv, a.shape[1]))


def nullspace_array(field: Field, arr: np.ndarray) -> np.ndarray:
    a = np.array(arr, dtype=np.int64)
    piv = _echelonize(field, a, a.shape[1])
    return _kernel_from_echelon(field, a, piv, a.shape[1])


@dataclass
class SolveResult:
    """Outcome of solve_linear: particular solution plus nullspace basis.

    ``consistent`` distinguishes an unsolvable system from one whose kernel
    happens to be trivial.
    """

    consistent: bool
    solution: Matrix | None
    kernel: Matrix


def solve_linear(a: Matrix, b: Matrix) -> SolveResult:
    """Solve a X = b; returns one particular solution and a kernel basis.

    Pivoting is deterministic (first nonzero in column order).  When the
    system is inconsistent the solution is None but the kernel of ``a`` is
    still reported.
    """
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch: a has {a.rows} rows, b has {b.rows}")
    field = a.field
    n = a.cols
    aug = np.hstack([a.array, b.array]).astype(np.int64)
    piv = _echelonize(field, aug, n)
    k = len(piv)
    # rows below the pivot rows must have zero right-hand side
    consistent = not np.any(aug[k:, n:])
    kernel = Matrix(field, _kernel_from_echelon(field, aug[:, :n], piv, n))
    if not consistent:
        return SolveResult(False, None, kernel)
    sol = np.zeros((n, b.cols), dtype=np.int64)
    if k:
        piv_arr = np.array(piv)
        for i in range(k - 1, -1, -1):
            rhs = aug[i, n:].copy()
            if i + 1 < k:
                rhs = field.sub(
                    rhs,
                    field.matmul(aug[i, piv_arr[i + 1 :]].reshape(1, -1), sol[piv_arr[i + 1 :]]).ravel(),
                )
            sol[piv[i]] = rhs
    return SolveResult(True, Matrix(field, sol), kernel)
