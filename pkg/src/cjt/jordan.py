"""Jordan types: block-count vectors, dominance, stability, tensor formula.

A Jordan type over cap p is the multiset of Jordan block sizes (all <= p)
of a nilpotent operator, stored as counts a_1..a_p where a_i is the number
of blocks of size i.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from cjt.exactalg import Matrix, _echelonize

__all__ = [
    "JordanType",
    "Dominance",
    "from_nilpotent",
    "dominance_compare",
    "stable",
    "tensor_type",
    "power_ranks",
]


class Dominance(Enum):
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    LESS = "LESS"
    INCOMPARABLE = "INCOMPARABLE"


@dataclass(frozen=True)
class JordanType:
    """Counts a_1..a_p of Jordan blocks of each size, with cap p."""

    p: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.p:
            raise ValueError(f"need exactly {self.p} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("block counts must be nonnegative")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    @classmethod
    def from_blocks(cls, p: int, blocks: dict[int, int] | list[int]) -> "JordanType":
        counts = [0] * p
        if isinstance(blocks, dict):
            items = blocks.items()
        else:
            items = ((b, 1) for b in blocks)
        for size, mult in items:
            if not 1 <= size <= p:
                raise ValueError(f"block size {size} out of range [1, {p}]")
            counts[size - 1] += mult
        return cls(p, tuple(counts))

    @property
    def dim(self) -> int:
        return sum(i * a for i, a in enumerate(self.counts, start=1))

    def count(self, size: int) -> int:
        return self.counts[size - 1]

    def __str__(self) -> str:
        parts = [f"{a}[{i}]" for i, a in reversed(list(enumerate(self.counts, start=1))) if a]
        return " + ".join(parts) if parts else "0"

    def power_rank(self, j: int) -> int:
        """Rank of the j-th power of any nilpotent matrix with this type."""
        return sum(max(i - j, 0) * a for i, a in enumerate(self.counts, start=1))

    def __add__(self, other: "JordanType") -> "JordanType":
        if self.p != other.p:
            raise ValueError("block-size cap mismatch")
        return JordanType(self.p, tuple(a + b for a, b in zip(self.counts, other.counts)))


def power_ranks(m: Matrix, p: int) -> list[int]:
    """Ranks of m^0, m^1, ..., m^p via the image chain im(A^{j+1}) = A im(A^j).

    Cheaper than eliminating each power separately: the bases shrink.
    """
    field = m.field
    n = m.rows
    ranks = [n]
    basis = None
    for _ in range(p):
        img = m.array if basis is None else field.matmul(m.array, basis)
        work = img.T.copy()
        piv = _echelonize(field, work, n)
        r = len(piv)
        basis = work[:r].T.copy()
        ranks.append(r)
        if r == 0:
            ranks.extend([0] * (p - len(ranks) + 1))
            break
    return ranks


def from_nilpotent(a: Matrix, p: int) -> JordanType:
    """Jordan type of a nilpotent matrix, from the ranks of its powers.

    a_j = rank(A^(j-1)) - 2 rank(A^j) + rank(A^(j+1)); raises if A^p != 0.
    """
    if a.rows != a.cols:
        raise ValueError("matrix must be square")
    ranks = power_ranks(a, p)
    if ranks[p] != 0:
        raise ValueError(f"matrix is not nilpotent of order <= {p}")
    counts = []
    for j in range(1, p + 1):
        above = ranks[j + 1] if j + 1 <= p else 0
        counts.append(ranks[j - 1] - 2 * ranks[j] + above)
    jt = JordanType(p, tuple(counts))
    if jt.dim != a.rows:
        raise AssertionError("second differences of ranks lost dimension")
    return jt


def dominance_compare(a: JordanType, b: JordanType) -> Dominance:
    """Usual dominance order on partitions, via ranks of powers.

    a >= b iff rank of the j-th power under a is >= the one under b for
    every 1 <= j < p; types of different total dimension do not compare.
    """
    if a.p != b.p:
        raise ValueError("block-size cap mismatch")
    if a.dim != b.dim:
        raise ValueError(f"total dimensions differ: {a.dim} vs {b.dim}")
    if a.counts == b.counts:
        return Dominance.EQUAL
    ge = all(a.power_rank(j) >= b.power_rank(j) for j in range(1, a.p))
    le = all(a.power_rank(j) <= b.power_rank(j) for j in range(1, a.p))
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def stable(a: JordanType) -> JordanType:
    """Drop the projective part: blocks of size p are forgotten."""
    return JordanType(a.p, a.counts[:-1] + (0,))


def _tensor_blocks(i: int, j: int, p: int) -> list[tuple[int, int]]:
    """Block decomposition of [i] (x) [j] for single blocks, i <= j."""
    out = []
    if i + j <= p:
        for s in range(j - i + 1, j + i, 2):
            out.append((s, 1))
    else:
        for s in range(j - i + 1, 2 * p - i - j, 2):
            out.append((s, 1))
        out.append((p, i + j - p))
    return out


def tensor_type(a: JordanType, b: JordanType) -> JordanType:
    """Jordan type of a tensor product, by bilinear extension of the
    closed form for pairs of single blocks."""
    if a.p != b.p:
        raise ValueError("block-size cap mismatch")
    p = a.p
    counts = [0] * p
    for i, ai in enumerate(a.counts, start=1):
        if not ai:
            continue
        for j, bj in enumerate(b.counts, start=1):
            if not bj:
                continue
            lo, hi = min(i, j), max(i, j)
            for size, mult in _tensor_blocks(lo, hi, p):
                counts[size - 1] += ai * bj * mult
    out = JordanType(p, tuple(counts))
    if out.dim != a.dim * b.dim:
        raise AssertionError("tensor formula lost dimension")
    return out
