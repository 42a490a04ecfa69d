"""Finite-dimensional modules over k[t_1..t_r]/(t_1^p..t_r^p).

A module is given by r pairwise-commuting nilpotent matrices recording the
generator actions, together with a coproduct convention that fixes the
tensor and dual formulas.  All constructions here (tensor, dual, radical,
free splitting, minimal covers and their kernels, extensions) are exact
linear algebra over the module's field.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from itertools import product as _iproduct

from cjt.exactalg import (
    Field,
    Matrix,
    _echelonize,
    _kernel_from_echelon,
    column_space,
    nullspace_array,
    rank_array,
    rref_array,
    solve_linear,
)
from cjt.jordan import from_nilpotent

__all__ = [
    "Convention",
    "ModuleRep",
    "ModuleHom",
    "ValidationReport",
    "validate",
    "trivial_module",
    "free_module",
    "jordan_block_module",
    "direct_sum",
    "tensor",
    "dual",
    "hom",
    "hom_space",
    "radical_socle",
    "split_free",
    "projective_cover_omega",
    "omega_n",
    "factors_through_projective",
    "build_extension",
    "is_isomorphic",
]

DIM_SOFT_CAP = 4000


class Convention(Enum):
    """Coproduct convention for the generator elements t_i.

    PRIMITIVE: t primitive, tensor action t (x) 1 + 1 (x) t, antipode -t.
    GROUP: t = g - 1 for group-like g, tensor action adds t (x) t, antipode
    (1+t)^(-1) - 1.
    """

    PRIMITIVE = "primitive"
    GROUP = "group"


class ModuleRep:
    """r commuting nilpotent generator actions on a finite-dimensional space."""

    __slots__ = ("field", "r", "dim", "gens", "convention")

    def __init__(
        self,
        field: Field,
        gens: Sequence[np.ndarray | Matrix],
        convention: Convention = Convention.PRIMITIVE,
        allow_large: bool = False,
    ):
        if len(gens) < 1:
            raise ValueError("need at least one generator action")
        arrays = []
        for g in gens:
            a = g.array if isinstance(g, Matrix) else np.asarray(g, dtype=np.int64)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ValueError("generator actions must be square matrices")
            arrays.append(np.ascontiguousarray(a, dtype=np.int64))
        dim = arrays[0].shape[0]
        if any(a.shape[0] != dim for a in arrays):
            raise ValueError("generator actions must share one dimension")
        if dim > DIM_SOFT_CAP and not allow_large:
            raise ValueError(
                f"module dimension {dim} exceeds the soft cap {DIM_SOFT_CAP}; "
                "pass allow_large=True to override"
            )
        self.field = field
        self.r = len(arrays)
        self.dim = dim
        self.gens = tuple(arrays)
        self.convention = convention

    def gen(self, i: int) -> Matrix:
        return Matrix(self.field, self.gens[i])

    @property
    def p(self) -> int:
        return self.field.p

    def same_category(self, other: "ModuleRep") -> bool:
        return (
            self.field == other.field
            and self.r == other.r
            and self.convention == other.convention
        )

    def __repr__(self) -> str:
        return (
            f"ModuleRep(dim={self.dim}, r={self.r}, "
            f"GF({self.field.p}^{self.field.e}), {self.convention.value})"
        )


@dataclass
class ModuleHom:
    """A linear map target <- source commuting with the generator actions."""

    source: ModuleRep
    target: ModuleRep
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.ascontiguousarray(np.asarray(self.matrix, dtype=np.int64))
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(
                f"hom matrix must be {self.target.dim} x {self.source.dim}, "
                f"got {self.matrix.shape}"
            )

    def is_intertwiner(self) -> bool:
        f = self.source.field
        for a_src, a_tgt in zip(self.source.gens, self.target.gens):
            if not np.array_equal(f.matmul(self.matrix, a_src), f.matmul(a_tgt, self.matrix)):
                return False
        return True

    def require_intertwiner(self) -> "ModuleHom":
        if not self.is_intertwiner():
            raise ValueError("matrix does not commute with the generator actions")
        return self

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self after other."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("composition shape mismatch")
        f = self.source.field
        return ModuleHom(other.source, self.target, f.matmul(self.matrix, other.matrix))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    failure: str | None = None
    index: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _mat_pow(field: Field, a: np.ndarray, n: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a
    while n:
        if n & 1:
            out = field.matmul(out, base)
        base = field.matmul(base, base)
        n >>= 1
    return out


def validate(m: ModuleRep) -> ValidationReport:
    """Confirm commuting and nilpotency; reports the first failing index."""
    f = m.field
    for i in range(m.r):
        for j in range(i + 1, m.r):
            ab = f.matmul(m.gens[i], m.gens[j])
            ba = f.matmul(m.gens[j], m.gens[i])
            if not np.array_equal(ab, ba):
                return ValidationReport(False, "generators do not commute", (i, j))
    for i in range(m.r):
        if np.any(_mat_pow(f, m.gens[i], m.p)):
            return ValidationReport(False, "generator is not nilpotent of order <= p", (i,))
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# basic constructors
# ---------------------------------------------------------------------------

def trivial_module(
    field: Field, r: int, n: int = 1, convention: Convention = Convention.PRIMITIVE
) -> ModuleRep:
    return ModuleRep(field, [np.zeros((n, n), dtype=np.int64)] * r, convention)


def jordan_block_module(
    field: Field, size: int, convention: Convention = Convention.PRIMITIVE
) -> ModuleRep:
    """The r = 1 indecomposable [size], 1 <= size <= p."""
    if not 1 <= size <= field.p:
        raise ValueError(f"block size {size} out of range [1, {field.p}]")
    a = np.zeros((size, size), dtype=np.int64)
    for i in range(size - 1):
        a[i + 1, i] = 1
    return ModuleRep(field, [a], convention)


def _monomial_count(p: int, r: int) -> int:
    return p**r


def _monomial_shift_index(p: int, r: int, i: int) -> np.ndarray:
    """For each monomial index, the index of its product with t_i (-1 if zero).

    Monomial exponents are mixed-radix base p, exponent of t_1 least
    significant.
    """
    count = p**r
    idx = np.arange(count)
    digit = (idx // p**i) % p
    out = np.where(digit < p - 1, idx + p**i, -1)
    return out


def free_module(
    field: Field, r: int, rank_: int, convention: Convention = Convention.PRIMITIVE
) -> ModuleRep:
    """Free module of the given rank: regular representation per generator."""
    p = field.p
    count = _monomial_count(p, r)
    dim = count * rank_
    gens = []
    for i in range(r):
        shift = _monomial_shift_index(p, r, i)
        a = np.zeros((dim, dim), dtype=np.int64)
        for j in range(rank_):
            base = j * count
            src = np.nonzero(shift >= 0)[0]
            a[base + shift[src], base + src] = 1
        gens.append(a)
    return ModuleRep(field, gens, convention, allow_large=dim > DIM_SOFT_CAP)


def direct_sum(mods: Sequence[ModuleRep]) -> ModuleRep:
    if not mods:
        raise ValueError("empty direct sum")
    first = mods[0]
    if any(not first.same_category(m) for m in mods):
        raise ValueError("direct sum requires matching field, r and convention")
    dim = sum(m.dim for m in mods)
    gens = []
    for i in range(first.r):
        a = np.zeros((dim, dim), dtype=np.int64)
        off = 0
        for m in mods:
            a[off : off + m.dim, off : off + m.dim] = m.gens[i]
            off += m.dim
        gens.append(a)
    return ModuleRep(first.field, gens, first.convention, allow_large=dim > DIM_SOFT_CAP)


# ---------------------------------------------------------------------------
# tensor, dual, hom
# ---------------------------------------------------------------------------

def tensor(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    """Tensor product; the generator action depends on the convention."""
    if not m.same_category(n):
        raise ValueError("tensor requires matching field, r and convention")
    f = m.field
    im = np.eye(m.dim, dtype=np.int64)
    in_ = np.eye(n.dim, dtype=np.int64)
    gens = []
    for a, b in zip(m.gens, n.gens):
        g = f.add(f.kron(a, in_), f.kron(im, b))
        if m.convention is Convention.GROUP:
            g = f.add(g, f.kron(a, b))
        gens.append(g)
    return ModuleRep(f, gens, m.convention, allow_large=m.dim * n.dim > DIM_SOFT_CAP)


def _unipotent_inverse(field: Field, a: np.ndarray) -> np.ndarray:
    """(I + a)^(-1) for nilpotent a, via the geometric series."""
    n = a.shape[0]
    out = np.eye(n, dtype=np.int64)
    term = np.eye(n, dtype=np.int64)
    while True:
        term = field.neg(field.matmul(term, a))
        if not np.any(term):
            break
        out = field.add(out, term)
    return out


def dual(m: ModuleRep) -> ModuleRep:
    """Linear dual; contragredient action through the antipode."""
    f = m.field
    gens = []
    for a in m.gens:
        if m.convention is Convention.PRIMITIVE:
            gens.append(f.neg(a.T))
        else:
            inv = _unipotent_inverse(f, a)
            gens.append(f.sub(inv, np.eye(m.dim, dtype=np.int64)).T)
    return ModuleRep(f, gens, m.convention, allow_large=m.dim > DIM_SOFT_CAP)


def hom(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    """Internal hom as a module: dual(m) tensor n."""
    return tensor(dual(m), n)


def hom_space(m: ModuleRep, n: ModuleRep) -> list[ModuleHom]:
    """Basis of module homomorphisms m -> n, in deterministic order.

    Solves the stacked intertwining system X A_i = B_i X over the field.
    """
    if m.field != n.field or m.r != n.r:
        raise ValueError("hom_space requires matching field and r")
    f = m.field
    blocks = []
    i_n = np.eye(n.dim, dtype=np.int64)
    i_m = np.eye(m.dim, dtype=np.int64)
    for a, b in zip(m.gens, n.gens):
        # row-major vec: vec(XA) = (I (x) A^T) vec X, vec(BX) = (B (x) I) vec X
        blocks.append(f.sub(np.kron(i_n, a.T), np.kron(b, i_m)))
    system = np.vstack(blocks)
    basis = nullspace_array(f, system)
    out = []
    for j in range(basis.shape[1]):
        out.append(ModuleHom(m, n, basis[:, j].reshape(n.dim, m.dim)))
    return out


# ---------------------------------------------------------------------------
# radical, socle, submodules and quotients
# ---------------------------------------------------------------------------

def radical_socle(m: ModuleRep) -> tuple[Matrix, Matrix]:
    """Bases of rad M = sum of generator images and soc M = joint kernel."""
    f = m.field
    stacked = np.hstack(m.gens)
    rad, _ = column_space(f, stacked)
    soc = nullspace_array(f, np.vstack(m.gens))
    return Matrix(f, rad), Matrix(f, soc)


@dataclass
class Submodule:
    """A submodule with its inclusion data.

    ``basis`` columns span the subspace and satisfy basis[pivot_rows] = I,
    so coordinates in the submodule are read off at the pivot rows.
    """

    module: ModuleRep
    basis: np.ndarray
    pivot_rows: list[int]


def submodule(m: ModuleRep, basis: np.ndarray, pivot_rows: list[int] | None = None) -> Submodule:
    """Induced module structure on an invariant subspace.

    The basis must be reduced (identity at the pivot rows); raises if the
    subspace is not invariant under the generator actions.
    """
    f = m.field
    if pivot_rows is None:
        reduced, piv = rref_array(f, basis.T)
        basis = reduced.T
        pivot_rows = piv
    gens = []
    for a in m.gens:
        img = f.matmul(a, basis)
        coeffs = img[pivot_rows]
        if not np.array_equal(f.matmul(basis, coeffs), img):
            raise ValueError("subspace is not invariant under the generator actions")
        gens.append(coeffs)
    sub = ModuleRep(f, gens, m.convention, allow_large=True)
    return Submodule(sub, basis, list(pivot_rows))


@dataclass
class Quotient:
    """A quotient module with projection and a linear section."""

    module: ModuleRep
    projection: np.ndarray  # quotient_dim x ambient_dim
    section: np.ndarray  # ambient_dim x quotient_dim


def quotient_module(m: ModuleRep, subspace: np.ndarray) -> Quotient:
    """Quotient of m by an invariant subspace (columns)."""
    f = m.field
    rows, piv = rref_array(f, subspace.T)
    free = [j for j in range(m.dim) if j not in set(piv)]
    proj = np.zeros((len(free), m.dim), dtype=np.int64)
    proj[np.arange(len(free)), free] = 1
    if piv:
        # v mod subspace: subtract pivot-coordinate multiples of the reduced rows
        proj[:, piv] = f.neg(rows[:, free].T)
    section = np.zeros((m.dim, len(free)), dtype=np.int64)
    section[free, np.arange(len(free))] = 1
    gens = []
    for a in m.gens:
        if np.any(f.matmul(proj, f.matmul(a, rows.T))):
            raise ValueError("subspace is not invariant under the generator actions")
        gens.append(f.matmul(proj, f.matmul(a, section)))
    quot = ModuleRep(f, gens, m.convention, allow_large=True)
    return Quotient(quot, proj, section)


# ---------------------------------------------------------------------------
# free summand splitting
# ---------------------------------------------------------------------------

def _monomial_columns(m: ModuleRep, vectors: np.ndarray) -> np.ndarray:
    """Columns A^mu v_j for all monomials mu and the given vectors v_j.

    Column order: vector index outermost, monomial index (mixed radix,
    exponent of t_1 least significant) innermost.  Columns are produced one
    total-degree level at a time so each generator is applied in a single
    batched product per level.
    """
    f = m.field
    p, r = m.p, m.r
    count = _monomial_count(p, r)
    nvec = vectors.shape[1]
    if m.dim == 0 or nvec == 0:
        return np.zeros((m.dim, nvec * count), dtype=np.int64)
    degrees = np.zeros(count, dtype=np.int64)
    first_gen = np.zeros(count, dtype=np.int64)
    for i in range(r):
        digit = (np.arange(count) // p**i) % p
        degrees += digit
        first_gen[(first_gen == 0) & (digit > 0) & (np.arange(count) > 0)] = i + 1
    max_deg = int(degrees.max())
    by_level: dict[int, dict[int, list[int]]] = {}
    for idx in range(1, count):
        by_level.setdefault(int(degrees[idx]), {}).setdefault(int(first_gen[idx]) - 1, []).append(idx)
    blocks = np.zeros((m.dim, count, nvec), dtype=np.int64)
    blocks[:, 0, :] = vectors
    use_float = f.is_prime_field and m.dim * (p - 1) ** 2 < (1 << 53)
    gens_f = [(a % p).astype(np.float64) for a in m.gens] if use_float else None
    for level in range(1, max_deg + 1):
        for i, idxs in by_level.get(level, {}).items():
            srcs = [idx - p**i for idx in idxs]
            src_mat = blocks[:, srcs, :].reshape(m.dim, -1)
            if use_float:
                prod = (gens_f[i] @ src_mat.astype(np.float64)).astype(np.int64) % p
            else:
                prod = f.matmul(m.gens[i], src_mat)
            blocks[:, idxs, :] = prod.reshape(m.dim, len(idxs), nvec)
    return blocks.transpose(0, 2, 1).reshape(m.dim, nvec * count)


def _theta(m: ModuleRep) -> np.ndarray:
    """Product of all generator actions, each to the (p-1)-st power."""
    f = m.field
    out = np.eye(m.dim, dtype=np.int64)
    for a in m.gens:
        out = f.matmul(out, _mat_pow(f, a, m.p - 1))
    return out


@dataclass
class SplitResult:
    free_rank: int
    core: ModuleRep
    core_basis: np.ndarray  # columns in the ambient module
    core_pivot_rows: list[int]
    core_projection: np.ndarray  # core coords of the complement projection


def split_free(m: ModuleRep) -> SplitResult:
    """Split off the maximal free direct summand.

    The free rank is the rank of theta = (t_1 ... t_r)^(p-1).  A retraction
    onto the free part is assembled from dual functionals of the theta
    images (socle coordinates), which avoids solving a large intertwining
    system; the remaining summand is the kernel of that retraction.
    """
    f = m.field
    p, r = m.p, m.r
    count = _monomial_count(p, r)
    theta = _theta(m)
    work = theta.copy()
    piv_cols = _echelonize(f, work, m.dim)
    t = len(piv_cols)
    if t == 0:
        basis = np.eye(m.dim, dtype=np.int64)
        return SplitResult(0, m, basis, list(range(m.dim)), basis)
    vectors = np.zeros((m.dim, t), dtype=np.int64)
    vectors[piv_cols, np.arange(t)] = 1
    free_cols = _monomial_columns(m, vectors)
    if rank_array(f, free_cols) != t * count:
        raise AssertionError("theta-independent vectors failed to generate freely")
    # extend the free basis to the whole space by standard vectors
    reduced, piv_rows = rref_array(f, free_cols.T)
    complement = [j for j in range(m.dim) if j not in set(piv_rows)]
    g = np.zeros((m.dim, m.dim), dtype=np.int64)
    g[:, : t * count] = free_cols
    for k, j in enumerate(complement):
        g[j, t * count + k] = 1
    ginv = solve_linear(Matrix(f, g), Matrix.identity(f, m.dim)).solution
    assert ginv is not None
    # psi_j = coordinate functional of the socle column A^(p-1,...,p-1) v_j
    retraction = np.zeros((m.dim, m.dim), dtype=np.int64)
    for j in range(t):
        psi = ginv.array[j * count + count - 1]
        # row for monomial mu is psi composed with A^(full - mu), filled from
        # the top monomial down: row(mu) = row(mu + e_i) @ A_i
        rows = np.zeros((count, m.dim), dtype=np.int64)
        rows[count - 1] = psi
        for idx in range(count - 2, -1, -1):
            for i in range(r):
                if (idx // p**i) % p < p - 1:
                    rows[idx] = f.matmul(rows[idx + p**i].reshape(1, -1), m.gens[i]).ravel()
                    break
        retraction = f.add(retraction, f.matmul(free_cols[:, j * count : (j + 1) * count], rows))
    core_basis = nullspace_array(f, retraction)
    if core_basis.shape[1] != m.dim - t * count:
        raise AssertionError("free splitting lost dimensions")
    reduced_b, piv_b = rref_array(f, core_basis.T)
    sub = submodule(m, reduced_b.T, piv_b)
    if rank_array(f, _theta(sub.module)) != 0:
        raise AssertionError("core still contains a free summand")
    # core coordinates of id - retraction: a module projection onto the core
    complement_proj = np.eye(m.dim, dtype=np.int64)
    complement_proj = f.sub(complement_proj, retraction)[piv_b, :]
    return SplitResult(t, sub.module, sub.basis, sub.pivot_rows, complement_proj)


# ---------------------------------------------------------------------------
# minimal projective covers and Heller shifts
# ---------------------------------------------------------------------------

@dataclass
class CoverData:
    """Internal cover/kernel data, free source kept structural.

    cover_matrix sends the free module of the given rank onto the module;
    kernel_basis columns (with identity at kernel_pivot_rows) present the
    Heller shift inside the free source.
    """

    module: ModuleRep
    rank: int
    cover_matrix: np.ndarray  # module.dim x (rank * p^r)
    kernel_basis: np.ndarray
    kernel_pivot_rows: list[int]
    omega: ModuleRep


def _apply_free_generator(field: Field, p: int, r: int, rank_: int, i: int, mat: np.ndarray) -> np.ndarray:
    """Left-multiply a (rank * p^r)-row matrix by the free generator t_i."""
    count = p**r
    shift = _monomial_shift_index(p, r, i)
    out = np.zeros_like(mat)
    src = np.nonzero(shift >= 0)[0]
    for j in range(rank_):
        base = j * count
        out[base + shift[src]] = mat[base + src]
    return out


def _cover_kernel(m: ModuleRep) -> CoverData:
    """Minimal projective cover of m and the kernel with its induced action."""
    f = m.field
    p, r = m.p, m.r
    count = _monomial_count(p, r)
    rad, _ = column_space(f, np.hstack(m.gens))
    _, rad_piv = rref_array(f, rad.T)
    lift_idx = [j for j in range(m.dim) if j not in set(rad_piv)]
    d = len(lift_idx)
    vectors = np.zeros((m.dim, d), dtype=np.int64)
    vectors[lift_idx, np.arange(d)] = 1
    cover = _monomial_columns(m, vectors)
    work = cover.copy()
    piv = _echelonize(f, work, cover.shape[1])
    if len(piv) != m.dim:
        raise AssertionError("cover map is not surjective")
    kernel = _kernel_from_echelon(f, work, piv, cover.shape[1])
    # the nullspace basis carries an identity block on the free columns
    kernel_piv_rows = [j for j in range(cover.shape[1]) if j not in set(piv)]
    gens = []
    for i in range(r):
        shifted = _apply_free_generator(f, p, r, d, i, kernel)
        gens.append(shifted[kernel_piv_rows])
    omega = ModuleRep(f, gens, m.convention, allow_large=True)
    return CoverData(m, d, cover, kernel, kernel_piv_rows, omega)


@dataclass
class CoverResult:
    """Public result of projective_cover_omega."""

    cover: ModuleHom
    omega: ModuleRep
    inclusion: ModuleHom  # omega -> free source


def projective_cover_omega(m: ModuleRep) -> CoverResult:
    """Minimal projective cover and its kernel (the first Heller shift).

    The cover is a free module of rank dim(m / rad m); generator j maps to
    the lift of the j-th basis vector of m/rad m (first standard-vector
    extension in column order).  The kernel is asserted projective-free.
    """
    data = _cover_kernel(m)
    source = free_module(m.field, m.r, data.rank, m.convention)
    cover = ModuleHom(source, m, data.cover_matrix)
    inclusion = ModuleHom(data.omega, source, data.kernel_basis)
    if rank_array(m.field, _theta(data.omega)) != 0:
        raise AssertionError("Heller shift of a minimal cover must be projective-free")
    return CoverResult(cover, data.omega, inclusion)


def _omega_minus_one(m: ModuleRep) -> ModuleRep:
    return dual(_cover_kernel(dual(m)).omega)


def omega_n(m: ModuleRep, n: int) -> ModuleRep:
    """Iterated Heller shift of the projective-free core of m."""
    current = split_free(m).core
    if n >= 0:
        for _ in range(n):
            current = _cover_kernel(current).omega
    else:
        for _ in range(-n):
            current = _omega_minus_one(current)
    return current


# ---------------------------------------------------------------------------
# stable vanishing and extensions
# ---------------------------------------------------------------------------

def factors_through_projective(fmap: ModuleHom) -> bool:
    """Whether fmap factors through the projective cover of its target.

    Reduces to linear solvability: find h with cover . h = fmap and h an
    intertwiner; detects stably-zero maps.
    """
    if fmap.is_zero():
        return True
    m, n = fmap.source, fmap.target
    f = m.field
    if n.dim == 1 and not any(np.any(a) for a in n.gens):
        # functional target: any factoring map through the rank-one cover is
        # forced to be (top functional) . theta, so membership in the row
        # space of theta decides
        theta = _theta(m)
        base = rank_array(f, theta)
        stacked = np.vstack([theta, fmap.matrix])
        return rank_array(f, stacked) == base
    data = _cover_kernel(n)
    fdim = data.rank * _monomial_count(m.p, m.r)
    # unknowns: h (fdim x m.dim), row-major vec
    blocks = []
    rhs_blocks = []
    i_f = np.eye(fdim, dtype=np.int64)
    for i in range(m.r):
        # h A_i = F_i h where F_i is the free-source generator
        left = np.kron(i_f, m.gens[i].T)
        fi = _apply_free_generator(f, m.p, m.r, data.rank, i, i_f)
        right = np.kron(fi, np.eye(m.dim, dtype=np.int64))
        blocks.append(f.sub(left, right))
        rhs_blocks.append(np.zeros((fdim * m.dim, 1), dtype=np.int64))
    blocks.append(np.kron(data.cover_matrix, np.eye(m.dim, dtype=np.int64)))
    rhs_blocks.append(fmap.matrix.reshape(-1, 1))
    system = Matrix(f, np.vstack(blocks))
    rhs = Matrix(f, np.vstack(rhs_blocks))
    return solve_linear(system, rhs).consistent


@dataclass
class ExtensionResult:
    middle: ModuleRep
    include: ModuleHom  # left end -> middle
    project: ModuleHom  # middle -> right end


def build_extension(fmap: ModuleHom, right: ModuleRep) -> ExtensionResult:
    """Extension of `right` by fmap.target along fmap: Omega^1(right) -> target.

    The middle term is (M + P)/{(f(w), -w)} for P the minimal cover of
    `right`; its class is the one represented by fmap.
    """
    m = fmap.target
    f = m.field
    fmap.require_intertwiner()
    data = _cover_kernel(right)
    if fmap.source.dim != data.omega.dim or any(
        not np.array_equal(a, b) for a, b in zip(fmap.source.gens, data.omega.gens)
    ):
        raise ValueError("fmap source must be the first Heller shift of `right`")
    ambient = direct_sum([m, free_module(f, m.r, data.rank, m.convention)])
    graph = np.vstack([fmap.matrix, f.neg(data.kernel_basis)])
    quot = quotient_module(ambient, graph)
    middle = quot.module
    if middle.dim != m.dim + right.dim:
        raise AssertionError("extension middle term has the wrong dimension")
    incl_matrix = quot.projection[:, : m.dim]
    include = ModuleHom(m, middle, incl_matrix).require_intertwiner()
    proj_matrix = f.matmul(data.cover_matrix, quot.section[m.dim :])
    project = ModuleHom(middle, right, proj_matrix).require_intertwiner()
    if rank_array(f, incl_matrix) != m.dim:
        raise AssertionError("left end does not embed")
    if rank_array(f, proj_matrix) != right.dim:
        raise AssertionError("projection to the right end is not surjective")
    if np.any(f.matmul(proj_matrix, incl_matrix)):
        raise AssertionError("extension maps do not compose to zero")
    return ExtensionResult(middle, include, project)


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------

@dataclass
class IsoResult:
    isomorphic: bool
    inconclusive: bool = False
    witness: ModuleHom | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _normalized_tuples(p: int, r: int) -> list[tuple[int, ...]]:
    """Normalized projective points over the prime field (first nonzero
    coordinate 1), in ascending lexicographic order of the full tuple."""
    out = []
    for pivot in range(r):
        tail_len = r - pivot - 1
        for tail in _iproduct(range(p), repeat=tail_len):
            out.append((0,) * pivot + (1,) + tail)
    return sorted(out)


def _rational_type_signature(m: ModuleRep):
    """Jordan types at all normalized rational linear points, for fast
    non-isomorphism detection."""
    f = m.field
    sig = []
    for coords in _normalized_tuples(f.p, m.r):
        mat = np.zeros((m.dim, m.dim), dtype=np.int64)
        for c, a in zip(coords, m.gens):
            if c:
                mat = f.add(mat, f.mul(np.int64(c), a))
        sig.append(from_nilpotent(Matrix(f, mat), m.p))
    return sig


def is_isomorphic(m: ModuleRep, n: ModuleRep, seed: int = 0) -> IsoResult:
    """Las Vegas isomorphism test.

    Fast false on dimension or rational-point Jordan-type mismatch; then
    searches hom_space(m, n) for an invertible element: basis elements,
    seeded random combinations (200 draws), then exhaustive combinations
    when the field has at most 9 elements and the hom space has dimension
    at most 4.  A miss is reported as inconclusive.
    """
    if m.dim != n.dim:
        return IsoResult(False)
    if m.field != n.field or m.r != n.r or m.convention != n.convention:
        raise ValueError("modules live in different categories")
    if m.dim == 0:
        return IsoResult(True)
    if _rational_type_signature(m) != _rational_type_signature(n):
        return IsoResult(False)
    f = m.field
    basis = hom_space(m, n)
    for h in basis:
        if rank_array(f, h.matrix) == m.dim:
            return IsoResult(True, witness=h)
    rng = np.random.default_rng(seed)
    stacked = np.stack([h.matrix for h in basis]) if basis else None
    if stacked is not None:
        for _ in range(200):
            coeffs = rng.integers(0, f.q, len(basis))
            mat = np.zeros((n.dim, m.dim), dtype=np.int64)
            for c, hm in zip(coeffs, stacked):
                if c:
                    mat = f.add(mat, f.mul(np.int64(int(c)), hm))
            if rank_array(f, mat) == m.dim:
                return IsoResult(True, witness=ModuleHom(m, n, mat))
        if f.q <= 9 and len(basis) <= 4:
            for coeffs in _iproduct(range(f.q), repeat=len(basis)):
                if not any(coeffs):
                    continue
                mat = np.zeros((n.dim, m.dim), dtype=np.int64)
                for c, hm in zip(coeffs, stacked):
                    if c:
                        mat = f.add(mat, f.mul(np.int64(c), hm))
                if rank_array(f, mat) == m.dim:
                    return IsoResult(True, witness=ModuleHom(m, n, mat))
            return IsoResult(False)
    return IsoResult(False, inconclusive=True)
