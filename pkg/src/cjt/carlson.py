"""Kernel constructions from cocycle data, and the endotriviality test.

A grid of maps between Heller shifts assembles into one map of direct
sums; its kernel inherits a module structure.  The per-point hypothesis
("full rank after restriction" in the stable sense) is checked by
splitting free summands off the restricted modules and asking the induced
map of cores to be surjective — a quotient of projective-free modules has
Loewy length below p, so its cokernel is projective exactly when it is 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cjt.constancy import PiPoint, jordan_at, restrict_to_point, sweep_points
from cjt.exactalg import nullspace_array, rank_array, rref_array
from cjt.jordan import JordanType, stable
from cjt.modrep import (
    ModuleHom,
    ModuleRep,
    direct_sum,
    hom,
    split_free,
    submodule,
    validate,
)
from cjt.syzygy import CocycleClass

__all__ = [
    "KernelResult",
    "HypothesisReport",
    "kernel_of_hom_matrix",
    "l_xi",
    "EndoEvidence",
    "endotrivial_check",
]


@dataclass
class HypothesisReport:
    """Per-point outcome of the stable-rank hypothesis."""

    points: list[tuple[PiPoint, bool]]
    holds_everywhere: bool


@dataclass
class KernelResult:
    kernel: ModuleRep
    map: ModuleHom
    report: HypothesisReport


def _stable_rank_full(phi: ModuleHom, q: PiPoint) -> bool:
    """Whether the restriction of phi at q is surjective on stable cores."""
    src = restrict_to_point(phi.source, q)
    tgt = restrict_to_point(phi.target, q)
    field = src.field
    split_s = split_free(src)
    split_t = split_free(tgt)
    if split_t.core.dim == 0:
        return True
    core_map = field.matmul(
        split_t.core_projection, field.matmul(phi.matrix % field.p, split_s.core_basis)
    )
    return rank_array(field, core_map) == split_t.core.dim


def kernel_of_hom_matrix(
    grid: list[list[ModuleHom]],
    sources: list[ModuleRep],
    targets: list[ModuleRep],
    max_e: int = 1,
) -> KernelResult:
    """Kernel of the assembled map (sum of sources) -> (sum of targets).

    grid[i][j] maps sources[j] to targets[i].  The hypothesis report checks
    at every swept rational point that the restricted map still has full
    stable rank; a failure is recorded, not raised.
    """
    if not grid or not sources or not targets:
        raise ValueError("grid, sources and targets must be nonempty")
    if len(grid) != len(targets) or any(len(row) != len(sources) for row in grid):
        raise ValueError("grid shape must be (targets) x (sources)")
    for i, row in enumerate(grid):
        for j, h in enumerate(row):
            if h.source is not sources[j] and h.source.dim != sources[j].dim:
                raise ValueError(f"grid[{i}][{j}] source mismatch")
            if h.target is not targets[i] and h.target.dim != targets[i].dim:
                raise ValueError(f"grid[{i}][{j}] target mismatch")
    source_sum = direct_sum(sources)
    target_sum = direct_sum(targets)
    blocks = [[grid[i][j].matrix for j in range(len(sources))] for i in range(len(targets))]
    phi_matrix = np.block(blocks)
    phi = ModuleHom(source_sum, target_sum, phi_matrix).require_intertwiner()
    basis = nullspace_array(source_sum.field, phi_matrix)
    reduced, piv = rref_array(source_sum.field, basis.T)
    sub = submodule(source_sum, reduced.T, piv)
    points = []
    ok = True
    for e in range(1, max_e + 1):
        for q in sweep_points(source_sum.field, source_sum.r, e):
            holds = _stable_rank_full(phi, q)
            ok = ok and holds
            points.append((q, holds))
    return KernelResult(sub.module, phi, HypothesisReport(points, ok))


def l_xi(classes: list[CocycleClass], max_e: int = 1) -> ModuleRep:
    """Kernel of the joint cocycle map from the sum of Heller shifts to k.

    The classes must not all be zero (the assembled map would fail to be
    surjective).  The kernel dimension is one less than the sum of the
    shift dimensions.
    """
    if not classes:
        raise ValueError("need at least one cocycle class")
    if all(c.carrier.is_zero() for c in classes):
        raise ValueError("all classes are zero; the joint map is not surjective")
    sources = [c.carrier.source for c in classes]
    target = classes[0].carrier.target
    grid = [[c.carrier for c in classes]]
    result = kernel_of_hom_matrix(grid, sources, [target], max_e=max_e)
    expected = sum(s.dim for s in sources) - 1
    if result.kernel.dim != expected:
        raise AssertionError(
            f"kernel dimension {result.kernel.dim} does not match {expected}"
        )
    if not validate(result.kernel).ok:
        raise AssertionError("kernel module failed validation")
    return result.kernel


@dataclass
class EndoEvidence:
    global_verdict: bool
    local_verdict: bool
    endo_free_rank: int
    endo_core_dim: int
    stable_types: list[tuple[PiPoint, JordanType]]


def endotrivial_check(m: ModuleRep, max_e: int = 1) -> tuple[bool, EndoEvidence]:
    """Whether the endomorphism module is trivial plus projective.

    The global test splits the free part off hom(m, m) and asks for a
    one-dimensional trivial core.  The local test asks the stable type at
    every swept point to be a single block of size 1 or p-1.  The two must
    agree.
    """
    endo = hom(m, m)
    res = split_free(endo)
    global_ok = res.core.dim == 1 and not any(np.any(a) for a in res.core.gens)
    p = m.p
    allowed = {
        JordanType.from_blocks(p, {1: 1}),
        JordanType.from_blocks(p, {p - 1: 1}) if p > 1 else None,
    }
    local_ok = True
    types = []
    for e in range(1, max_e + 1):
        for q in sweep_points(m.field, m.r, e):
            st = stable(jordan_at(m, q))
            types.append((q, st))
            if st not in allowed:
                local_ok = False
    if global_ok != local_ok:
        raise AssertionError(
            "global and local endotriviality tests disagree: "
            f"global={global_ok}, local={local_ok}"
        )
    return global_ok, EndoEvidence(global_ok, local_ok, res.free_rank, res.core.dim, types)
