"""Restriction points, generic Jordan type, and the constancy checker.

A linear restriction point is a nonzero vector of coefficients over some
GF(p^e): the module generators combine into a single nilpotent matrix
whose Jordan type is the local invariant.  Constancy of that invariant is
decided exactly for two generators (via minor gcds of the symbolic pencil
powers) and tested by point sweeps otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from cjt.exactalg import Field, Matrix, make_field
from cjt.jordan import Dominance, JordanType, dominance_compare, from_nilpotent
from cjt.modrep import ModuleRep
from cjt.polymat import HomPoly, PolyMatrix, bivariate_minor_gcd, generic_rank, projective_points

__all__ = [
    "PiPoint",
    "CjtReport",
    "GammaLocus",
    "evaluate",
    "jordan_at",
    "restrict_to_point",
    "pencil",
    "generic_type",
    "check_constant",
    "gamma_locus",
    "pi_support",
    "sweep_points",
]


@dataclass(frozen=True)
class PiPoint:
    """A restriction point: linear coefficients over an extension field,
    plus an optional higher-order tail of (exponent vector, coefficient)
    terms with total degree >= 2 and each exponent below p."""

    field: Field
    linear: tuple[int, ...]
    tail: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(int(c) for c in self.linear))
        if not any(self.linear):
            raise ValueError("the linear part of a restriction point must be nonzero")
        p = self.field.p
        tail = []
        for exps, coef in self.tail:
            exps = tuple(int(x) for x in exps)
            if len(exps) != len(self.linear):
                raise ValueError("tail exponent length must match the number of generators")
            if sum(exps) < 2:
                raise ValueError("tail terms must have total degree >= 2")
            if any(x >= p or x < 0 for x in exps):
                raise ValueError(f"tail exponents must lie in [0, {p})")
            tail.append((exps, int(coef)))
        object.__setattr__(self, "tail", tuple(tail))

    @property
    def extension(self) -> int:
        return self.field.e

    def serialize(self):
        out = {
            "e": self.field.e,
            "coords": [self.field.serialize_code(c) for c in self.linear],
        }
        if self.tail:
            out["tail"] = [
                {"exps": list(exps), "coef": self.field.serialize_code(c)}
                for exps, c in self.tail
            ]
        return out

    def __str__(self) -> str:
        inner = ":".join(str(self.field.serialize_code(c)) for c in self.linear)
        return f"[{inner}]" + (f"+tail({len(self.tail)})" if self.tail else "")


def _point_field_for(m: ModuleRep, q: PiPoint) -> Field:
    if q.field.p != m.field.p:
        raise ValueError("characteristic mismatch between module and point")
    if q.field == m.field:
        return q.field
    if m.field.is_prime_field:
        # prime-field entries are constant codes in any extension
        return q.field
    raise ValueError(
        "modules over a proper extension only accept points over the same field"
    )


def evaluate(m: ModuleRep, q: PiPoint) -> Matrix:
    """Matrix of the point on the module: sum of scaled generators plus
    tail monomials in the commuting generator actions."""
    if len(q.linear) != m.r:
        raise ValueError(f"point has {len(q.linear)} coefficients, module has r={m.r}")
    f = _point_field_for(m, q)
    out = np.zeros((m.dim, m.dim), dtype=np.int64)
    for c, a in zip(q.linear, m.gens):
        if c:
            out = f.add(out, f.mul(np.int64(c), a))
    for exps, coef in q.tail:
        if not coef:
            continue
        mono = np.eye(m.dim, dtype=np.int64)
        for a, x in zip(m.gens, exps):
            for _ in range(x):
                mono = f.matmul(mono, a)
        out = f.add(out, f.mul(np.int64(coef), mono))
    return Matrix(f, out)


def jordan_at(m: ModuleRep, q: PiPoint) -> JordanType:
    return from_nilpotent(evaluate(m, q), m.p)


def restrict_to_point(m: ModuleRep, q: PiPoint) -> ModuleRep:
    """The module viewed over a single generator acting as the point matrix."""
    val = evaluate(m, q)
    return ModuleRep(val.field, [val.array], m.convention, allow_large=True)


# ---------------------------------------------------------------------------
# point sweeps
# ---------------------------------------------------------------------------

def sweep_points(
    m_field: Field, r: int, e: int, dedup: bool = True
) -> list[PiPoint]:
    """Normalized linear points over GF(p^e) in sweep order.

    With dedup (the default), points whose coordinates all lie in a proper
    subfield are skipped (they already appeared at a lower level), and only
    the first representative of each Frobenius orbit is kept; conjugate
    points have equal Jordan types on any module defined over the prime
    field.
    """
    field = make_field(m_field.p, e)
    if not dedup or e == 1:
        return [PiPoint(field, pt) for pt in projective_points(field, r)]
    if r * np.log2(float(field.q)) >= 62:
        return _sweep_points_scalar(field, r, e)
    from cjt.polymat import _point_blocks

    order_index = np.zeros(field.q, dtype=np.int64)
    order_index[field.ordered_codes()] = np.arange(field.q)
    weights = field.q ** np.arange(r - 1, -1, -1, dtype=np.int64)

    def encode(arr: np.ndarray) -> np.ndarray:
        return order_index[arr] @ weights

    divisors = [d for d in range(1, e) if e % d == 0]
    out = []
    for block in _point_blocks(field, r):
        keep = np.ones(block.shape[0], dtype=bool)
        for d in divisors:
            x = block
            for _ in range(d):
                x = field.frobenius(x)
            keep &= ~np.all(x == block, axis=1)
        # Frobenius preserves normalization (fixes 0 and 1), so orbit members
        # are themselves sweep points; keep the orbit minimum only
        base_key = encode(block)
        x = block
        for _ in range(e - 1):
            x = field.frobenius(x)
            keep &= encode(x) >= base_key
        for coords in block[keep]:
            out.append(PiPoint(field, tuple(int(c) for c in coords)))
    return out


def _sweep_points_scalar(field: Field, r: int, e: int) -> list[PiPoint]:
    order_index = np.zeros(field.q, dtype=np.int64)
    order_index[field.ordered_codes()] = np.arange(field.q)

    def key(pt):
        return tuple(int(order_index[c]) for c in pt)

    divisors = [d for d in range(1, e) if e % d == 0]
    out = []
    for pt in projective_points(field, r):
        if any(all(field.in_subfield(c, d) for c in pt) for d in divisors):
            continue
        orbit_pt = pt
        minimal = True
        for _ in range(e - 1):
            orbit_pt = tuple(int(field.frobenius(np.int64(c))) for c in orbit_pt)
            if key(orbit_pt) < key(pt):
                minimal = False
                break
        if minimal:
            out.append(PiPoint(field, pt))
    return out


# ---------------------------------------------------------------------------
# generic type from the symbolic pencil
# ---------------------------------------------------------------------------

def pencil(m: ModuleRep) -> PolyMatrix:
    """The symbolic linear combination of generators as a PolyMatrix."""
    if not m.field.is_prime_field:
        raise ValueError("pencils are formed over the prime field")
    p, r = m.p, m.r
    entries = []
    for i in range(m.dim):
        row = []
        for j in range(m.dim):
            terms = {}
            for k in range(r):
                c = int(m.gens[k][i, j])
                if c:
                    exps = [0] * r
                    exps[k] = 1
                    terms[tuple(exps)] = c
            row.append(HomPoly(p, r, terms))
        entries.append(row)
    return PolyMatrix(p, r, entries)


def generic_type(m: ModuleRep) -> JordanType:
    """Jordan type at the generic point of the pencil, over the rational
    function field; dominates every rational specialization."""
    if m.dim == 0:
        return JordanType(m.p, (0,) * m.p)
    p = m.p
    pen = pencil(m)
    ranks = [m.dim]
    power = pen
    for j in range(1, p):
        if ranks[-1] == 0:
            ranks.append(0)
            continue
        if j > 1:
            power = power.matmul(pen)
        ranks.append(generic_rank(power))
    ranks.extend([0, 0])  # nilpotency forces rank zero at powers p and above
    counts = []
    for j in range(1, p + 1):
        counts.append(ranks[j - 1] - 2 * ranks[j] + ranks[j + 1])
    jt = JordanType(p, tuple(counts))
    if jt.dim != m.dim:
        raise AssertionError("generic ranks are not the power ranks of a nilpotent matrix")
    return jt


# ---------------------------------------------------------------------------
# the constancy checker
# ---------------------------------------------------------------------------

@dataclass
class CjtReport:
    verdict: str  # CONSTANT_EXACT | CONSTANT_ON_TESTED | NOT_CONSTANT
    type: JordanType
    witnesses: list[tuple[PiPoint, JordanType]]
    method: str  # RANK2_GCD | SWEEP
    extensions: list[int]

    def serialize(self):
        return {
            "verdict": self.verdict,
            "type": str(self.type),
            "counts": list(self.type.counts),
            "p": self.type.p,
            "witnesses": [
                {"point": q.serialize(), "type": str(t)} for q, t in self.witnesses
            ],
            "method": self.method,
            "extensions": self.extensions,
        }


@dataclass
class GammaLocus:
    points: list[PiPoint]
    generic: JordanType
    observed: dict[PiPoint, JordanType] = dc_field(default_factory=dict)


def _sweep_types(m: ModuleRep, e: int) -> list[tuple[PiPoint, JordanType]]:
    return [(q, jordan_at(m, q)) for q in sweep_points(m.field, m.r, e)]


def _dominance_max(types: list[JordanType]) -> JordanType:
    """A dominance-maximal element; ties broken by descending count vectors."""
    best = types[0]
    for t in types[1:]:
        cmp = dominance_compare(t, best)
        if cmp == Dominance.GREATER:
            best = t
        elif cmp == Dominance.INCOMPARABLE:
            if tuple(reversed(t.counts)) > tuple(reversed(best.counts)):
                best = t
    return best


def _min_witness_extension(g: HomPoly) -> int:
    """Smallest extension degree carrying a projective zero of a nonzero
    homogeneous bivariate polynomial (minimal irreducible factor degree)."""
    if g.is_zero:
        return 1
    u = np.zeros(g.degree + 1, dtype=np.int64)
    for (a1, _), c in g.terms.items():
        u[a1] = c
    if u[g.degree] == 0:
        return 1  # divisible by the second variable: zero at [1:0]
    from cjt.exactalg import _poly_gcd, _poly_powmod, _poly_trim

    p = g.p
    poly = tuple(int(c) for c in u)
    for d in range(1, g.degree + 1):
        t = list(_poly_powmod((0, 1), p**d, poly, p))
        t += [0] * max(0, 2 - len(t))
        t[1] = (t[1] - 1) % p
        if len(_poly_gcd(_poly_trim(t), poly, p)) > 1:
            return d
    raise AssertionError("a nonconstant polynomial has roots in some extension")


def check_constant(m: ModuleRep, max_e: int = 2, exact: bool = False) -> CjtReport:
    """Decide or test whether the Jordan type is the same at every linear
    restriction point.

    With ``exact`` and two generators over the prime field, the decision is
    over the algebraic closure: the type is constant iff for each power j
    the gcd of the maximal minors of the pencil power is constant.
    Otherwise all normalized points over GF(p^e), e = 1..max_e, are swept;
    a deviation is reported with witnesses after its extension level
    completes.
    """
    if max_e < 1:
        raise ValueError("max_e must be >= 1")
    if m.r == 1:
        q = PiPoint(m.field, (1,))
        return CjtReport("CONSTANT_EXACT", jordan_at(m, q), [], "SWEEP", [1])
    exact_known_nonconstant = False
    witness_level = None
    if exact and m.r == 2 and m.field.is_prime_field and m.dim > 0:
        pen = pencil(m)
        power = pen
        all_constant = True
        for j in range(1, m.p):
            if j > 1:
                power = power.matmul(pen)
            rho = generic_rank(power)
            if rho == 0:
                continue
            g = bivariate_minor_gcd(power, rho)
            if not (not g.is_zero and g.degree == 0):
                all_constant = False
                lvl = _min_witness_extension(g)
                witness_level = lvl if witness_level is None else min(witness_level, lvl)
        if all_constant:
            return CjtReport("CONSTANT_EXACT", generic_type(m), [], "RANK2_GCD", [])
        exact_known_nonconstant = True

    observed: dict[JordanType, PiPoint] = {}
    per_point: list[tuple[PiPoint, JordanType]] = []
    extensions = []
    # an exact nonconstancy certificate pins an extension where a witness
    # point must show up; sweep at least that deep
    limit = max_e if witness_level is None else max(max_e, witness_level)
    for e in range(1, limit + 1):
        extensions.append(e)
        for q, t in _sweep_types(m, e):
            per_point.append((q, t))
            observed.setdefault(t, q)
        if len(observed) > 1:
            break
    types = [t for _, t in per_point]
    method = "RANK2_GCD" if exact_known_nonconstant else "SWEEP"
    if len(observed) == 1:
        if exact_known_nonconstant:
            raise AssertionError(
                "exact path certified nonconstancy but the sweep found no witness"
            )
        return CjtReport("CONSTANT_ON_TESTED", types[0], [], method, extensions)
    top = _dominance_max(types)
    witnesses = [(q, t) for q, t in per_point if t != top]
    return CjtReport("NOT_CONSTANT", top, witnesses, method, extensions)


def gamma_locus(m: ModuleRep, e: int) -> GammaLocus:
    """Rational points of the given extension whose type is below generic."""
    gen = generic_type(m)
    points = []
    observed = {}
    for q in sweep_points(m.field, m.r, e):
        t = jordan_at(m, q)
        if t != gen:
            cmp = dominance_compare(gen, t)
            if cmp == Dominance.LESS:
                raise AssertionError(
                    "a specialization dominates the generic type; semicontinuity violated"
                )
            points.append(q)
            observed[q] = t
    return GammaLocus(points, gen, observed)


def pi_support(m: ModuleRep, e: int) -> list[PiPoint]:
    """Points where the restricted module is not projective."""
    out = []
    for q in sweep_points(m.field, m.r, e):
        t = jordan_at(m, q)
        if any(t.counts[i] for i in range(m.p - 1)):
            out.append(q)
    return out
