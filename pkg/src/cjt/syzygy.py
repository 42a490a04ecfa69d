"""Heller shifts of the trivial module and degree-n cocycles.

A degree-n cocycle is carried by an on-the-nose module map from the n-th
Heller shift of the trivial module to the trivial module; the space of
such maps has the binomial dimension of degree-n cohomology, which is the
cross-check that the kernel chain lost nothing.  Coordinate ("factor-i")
generators in degrees one and two are built from explicit chain lifts into
the rank-one subalgebra quotient, and restriction of a cocycle to a point
is a row-space membership test after evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from cjt.constancy import PiPoint, evaluate
from cjt.exactalg import Field, Matrix, rank_array, solve_linear
from cjt.modrep import (
    Convention,
    ModuleHom,
    ModuleRep,
    _apply_free_generator,
    _cover_kernel,
    _mat_pow,
    _monomial_count,
    _omega_minus_one,
    factors_through_projective,
    hom_space,
    radical_socle,
    trivial_module,
)

__all__ = [
    "CocycleClass",
    "omega_k",
    "omega_dim_formula",
    "cohomology_basis",
    "restrict_cocycle",
    "factor_generator",
    "cocycle_product",
    "shift_hom",
]


@dataclass
class CocycleClass:
    degree: int
    carrier: ModuleHom
    tag: str = ""

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("cocycle degree must be >= 1")
        if self.carrier.target.dim != 1:
            raise ValueError("cocycle carrier must map to the trivial module")


_omega_cache: dict[tuple, dict[int, ModuleRep]] = {}


def _cache_key(field: Field, r: int, convention: Convention) -> tuple:
    return (field.p, field.e, field.modulus, r, convention)


def omega_k(field: Field, r: int, n: int, convention: Convention = Convention.PRIMITIVE) -> ModuleRep:
    """n-th Heller shift of the trivial module, with cached iteration.

    Dimensions are asserted against the closed alternating-binomial
    formula for n > 0 and against shift symmetry for n < 0.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    key = _cache_key(field, r, convention)
    tower = _omega_cache.setdefault(key, {0: trivial_module(field, r, 1, convention)})
    if n not in tower:
        if n > 0:
            top = max(k for k in tower if 0 <= k <= n)
            current = tower[top]
            for k in range(top + 1, n + 1):
                current = _cover_kernel(current).omega
                tower[k] = current
        else:
            bottom = min(k for k in tower if n <= k <= 0)
            current = tower[bottom]
            for k in range(bottom - 1, n - 1, -1):
                current = _omega_minus_one(current)
                tower[k] = current
    result = tower[n]
    if n > 0:
        expected = omega_dim_formula(field.p, r, n)
        if result.dim != expected:
            raise AssertionError(
                f"dim of shift {n} is {result.dim}, closed formula gives {expected}"
            )
    elif n < 0:
        if result.dim != omega_k(field, r, -n, convention).dim:
            raise AssertionError("negative and positive shifts must share dimensions")
    return result


def omega_dim_formula(p: int, r: int, n: int) -> int:
    """p^r * (alternating sum of binomials) + (-1)^n, for n > 0."""
    if n <= 0:
        raise ValueError("closed formula applies to positive degrees")
    acc = 0
    for i in range(n):
        acc += (-1) ** i * comb(n - 1 - i + r - 1, r - 1)
    return p**r * acc + (-1) ** n


def cohomology_basis(
    field: Field, r: int, n: int, convention: Convention = Convention.PRIMITIVE
) -> list[CocycleClass]:
    """Basis of degree-n cocycles as maps out of the n-th Heller shift.

    All intertwiners to the trivial module are stably nonzero here (the
    shift is a minimal kernel), which the binomial count certifies.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    source = omega_k(field, r, n, convention)
    k = trivial_module(field, r, 1, convention)
    classes = []
    for idx, h in enumerate(hom_space(source, k)):
        if factors_through_projective(h):
            continue
        classes.append(CocycleClass(n, h, tag=f"deg{n}-basis-{idx}"))
    expected = comb(n + r - 1, r - 1)
    if len(classes) != expected:
        raise AssertionError(
            f"found {len(classes)} stably nonzero cocycles in degree {n}, expected {expected}"
        )
    return classes


def restrict_cocycle(c: CocycleClass, q: PiPoint) -> str:
    """ZERO or NONZERO: whether the class dies at the restriction point.

    Along a point, a functional is stably zero iff it lies in the row space
    of the (p-1)-st power of the point's matrix on the carrier source.
    """
    if q.tail:
        raise ValueError("cocycle restriction is defined at linear points")
    value = evaluate(c.carrier.source, q)
    field_q, a = value.field, value.array
    top = _mat_pow(field_q, a, field_q.p - 1)
    row = c.carrier.matrix % field_q.p
    base = rank_array(field_q, top)
    stacked = np.vstack([top, row])
    return "ZERO" if rank_array(field_q, stacked) == base else "NONZERO"


# ---------------------------------------------------------------------------
# coordinate generators via the rank-one quotient
# ---------------------------------------------------------------------------

def _rank_one_quotient(field: Field, r: int, i: int, convention: Convention) -> tuple[ModuleRep, np.ndarray]:
    """The p-dimensional module where t_i shifts and the others act by
    zero, together with the algebra projection from the rank-r free module
    of rank one (monomial coordinates)."""
    p = field.p
    shift = np.zeros((p, p), dtype=np.int64)
    for s in range(p - 1):
        shift[s + 1, s] = 1
    gens = [shift if j == i else np.zeros((p, p), dtype=np.int64) for j in range(r)]
    v = ModuleRep(field, gens, convention)
    count = _monomial_count(p, r)
    proj = np.zeros((p, count), dtype=np.int64)
    for idx in range(count):
        exps = [(idx // p**j) % p for j in range(r)]
        if all(e == 0 for j, e in enumerate(exps) if j != i):
            proj[exps[i], idx] = 1
    return v, proj


def factor_generator(
    field: Field, r: int, i: int, degree: int, convention: Convention = Convention.PRIMITIVE
) -> CocycleClass:
    """The coordinate cocycle of the i-th generator direction.

    Degree 1: the functional dual to t_i on the first shift modulo its
    radical.  Degree 2: chain lift of the two-step periodic resolution of
    the rank-one quotient algebra; its restriction dies exactly where the
    i-th coordinate of the point vanishes.
    """
    if not 0 <= i < r:
        raise ValueError(f"generator index {i} out of range")
    p = field.p
    k = trivial_module(field, r, 1, convention)
    if degree == 1:
        omega1 = omega_k(field, r, 1, convention)
        data1 = _cover_kernel(k)
        count = _monomial_count(p, r)
        tvecs = np.zeros((count, r), dtype=np.int64)
        for j in range(r):
            tvecs[p**j, j] = 1
        coords = tvecs[data1.kernel_pivot_rows]  # t_j in shift coordinates
        rad, _ = radical_socle(omega1)
        lhs = np.hstack([coords, rad.array])
        rhs = np.zeros((r + rad.cols, 1), dtype=np.int64)
        rhs[i, 0] = 1
        sol = solve_linear(Matrix(field, lhs.T), Matrix(field, rhs))
        if not sol.consistent:
            raise AssertionError("dual functional of a generator direction must exist")
        carrier = ModuleHom(omega1, k, sol.solution.array.T).require_intertwiner()
        return CocycleClass(1, carrier, tag=f"factor-{i+1} degree-1 generator")
    if degree == 2:
        v, proj = _rank_one_quotient(field, r, i, convention)
        data1 = _cover_kernel(k)
        omega1 = data1.omega
        data2 = _cover_kernel(omega1)
        # psi: second cover -> rank-one quotient, through the first kernel
        psi = field.matmul(proj, field.matmul(data1.kernel_basis, data2.cover_matrix))
        count = _monomial_count(p, r)
        shift = v.gens[i]
        g1 = np.zeros((p, data2.rank * count), dtype=np.int64)
        for j in range(data2.rank):
            rhs = Matrix(field, psi[:, j * count].reshape(-1, 1))
            sol = solve_linear(Matrix(field, shift), rhs)
            if not sol.consistent:
                raise AssertionError("chain lift must exist: image lies in the shift image")
            w = sol.solution.array.ravel()
            block = np.zeros((p, count), dtype=np.int64)
            for idx in range(count):
                exps = [(idx // p**jj) % p for jj in range(r)]
                if all(e == 0 for jj, e in enumerate(exps) if jj != i):
                    block[:, idx] = _shift_power_apply(field, shift, exps[i], w)
            g1[:, j * count : (j + 1) * count] = block
        socle_row = field.matmul(g1, data2.kernel_basis)[p - 1].reshape(1, -1)
        if not np.any(socle_row):
            raise AssertionError("coordinate cocycle must be nonzero")
        omega2 = omega_k(field, r, 2, convention)
        carrier = ModuleHom(omega2, k, socle_row).require_intertwiner()
        return CocycleClass(2, carrier, tag=f"factor-{i+1} degree-2 generator")
    raise ValueError("factor generators are provided in degrees 1 and 2")


def _shift_power_apply(field: Field, shift: np.ndarray, e: int, w: np.ndarray) -> np.ndarray:
    out = w.copy()
    for _ in range(e):
        out = field.matmul(shift, out.reshape(-1, 1)).ravel()
    return out


# ---------------------------------------------------------------------------
# shifting maps and multiplying cocycles
# ---------------------------------------------------------------------------

def shift_hom(fmap: ModuleHom) -> ModuleHom:
    """First Heller shift of a map between projective-free modules."""
    src, tgt = fmap.source, fmap.target
    f = src.field
    data_s = _cover_kernel(src)
    data_t = _cover_kernel(tgt)
    p, r = src.p, src.r
    count = _monomial_count(p, r)
    rhs_all = f.matmul(fmap.matrix, data_s.cover_matrix)
    lifted = np.zeros((data_t.rank * count, data_s.rank * count), dtype=np.int64)
    for j in range(data_s.rank):
        col = rhs_all[:, j * count].reshape(-1, 1)
        sol = solve_linear(Matrix(f, data_t.cover_matrix), Matrix(f, col))
        if not sol.consistent:
            raise AssertionError("covers are surjective; generator images must lift")
        lifted[:, j * count] = sol.solution.array.ravel()
    # extend to all monomial columns through the free-module action
    for idx in range(1, count):
        for i in range(r):
            d = (idx // p**i) % p
            if d:
                prev = idx - p**i
                cols_prev = lifted[:, prev :: count][:, : data_s.rank]
                moved = _apply_free_generator(f, p, r, data_t.rank, i, cols_prev)
                for j in range(data_s.rank):
                    lifted[:, j * count + idx] = moved[:, j]
                break
    shifted = f.matmul(lifted, data_s.kernel_basis)[data_t.kernel_pivot_rows]
    return ModuleHom(data_s.omega, data_t.omega, shifted).require_intertwiner()


def cocycle_product(outer: CocycleClass, inner: CocycleClass) -> CocycleClass:
    """Product class: shift the inner carrier by the outer degree, then
    compose with the outer carrier."""
    shifted = inner.carrier
    for _ in range(outer.degree):
        shifted = shift_hom(shifted)
    carrier = outer.carrier.compose(shifted)
    tag = f"({outer.tag})*({inner.tag})"
    return CocycleClass(outer.degree + inner.degree, carrier, tag)
