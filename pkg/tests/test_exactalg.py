import numpy as np
import pytest

from cjt.exactalg import (
    Field,
    Matrix,
    make_field,
    nullspace,
    rank,
    solve_linear,
)


def naive_rank_mod_p(rows, p):
    """Reference rank over GF(p), scalar row reduction with no numpy tricks."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rk = 0
    for c in range(ncols):
        piv = None
        for r in range(rk, nrows):
            if m[r][c] % p:
                piv = r
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][c], p - 2, p)
        m[rk] = [(x * inv) % p for x in m[rk]]
        for r in range(nrows):
            if r != rk and m[r][c] % p:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rk])]
        rk += 1
    return rk


def brute_force_smallest_irreducible(p, e):
    """Exhaustive search over all monic degree-e polynomials, trial division."""

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def all_monic(d):
        for code in range(p**d):
            c, coeffs = code, []
            for _ in range(d):
                coeffs.append(c % p)
                c //= p
            yield coeffs + [1]

    def reducible(f):
        for d in range(1, e // 2 + 1):
            for g in all_monic(d):
                # trial divide f by g
                r = list(f)
                while len(r) >= len(g) and any(r):
                    if r[-1] == 0:
                        r.pop()
                        continue
                    lead = r[-1]
                    shift = len(r) - len(g)
                    for i, gi in enumerate(g):
                        r[shift + i] = (r[shift + i] - lead * gi) % p
                    r.pop()
                while r and r[-1] == 0:
                    r.pop()
                if not r:
                    return True
        return False

    best = None
    for f in all_monic(e):
        key = tuple(f[:-1])
        if (best is None or key < best[0]) and not reducible(f):
            best = (key, tuple(f))
    return best[1]


class TestMakeField:
    def test_prime_field_modulus_is_x(self):
        f = make_field(5, 1)
        assert (f.p, f.e, f.modulus) == (5, 1, (0, 1))

    def test_gf4_modulus_unique(self):
        f = make_field(2, 2)
        assert f.modulus == (1, 1, 1)

    def test_gf25_modulus_matches_exhaustive_search(self):
        assert make_field(5, 2).modulus == brute_force_smallest_irreducible(5, 2)

    @pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (3, 3), (7, 2)])
    def test_small_moduli_match_exhaustive_search(self, p, e):
        assert make_field(p, e).modulus == brute_force_smallest_irreducible(p, e)

    def test_rejects_composite_p(self):
        with pytest.raises(ValueError):
            make_field(6, 1)

    def test_rejects_bad_degree(self):
        with pytest.raises(ValueError):
            make_field(5, 0)

    def test_rejects_reducible_modulus(self):
        with pytest.raises(ValueError):
            Field(5, 2, (0, 0, 1))  # x^2 factors


class TestFieldArithmetic:
    @pytest.mark.parametrize("p,e", [(2, 1), (5, 1), (2, 4), (3, 2), (5, 2), (7, 2), (2, 8)])
    def test_inverses_and_frobenius_exhaustive(self, p, e):
        f = make_field(p, e)
        codes = np.arange(1, f.q, dtype=np.int64)
        assert np.all(f.mul(codes, f.inv(codes)) == 1)
        a = np.repeat(np.arange(f.q, dtype=np.int64), f.q)
        b = np.tile(np.arange(f.q, dtype=np.int64), f.q)
        # Frobenius is additive and multiplicative
        assert np.array_equal(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)))
        assert np.array_equal(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)))
        # x^(p^e) = x
        x = np.arange(f.q, dtype=np.int64)
        for _ in range(e):
            x = f.frobenius(x)
        assert np.array_equal(x, np.arange(f.q))

    def test_associativity_distributivity_sampled(self):
        f = make_field(3, 3)
        rng = np.random.default_rng(0)
        a, b, c = (rng.integers(0, f.q, 200) for _ in range(3))
        assert np.array_equal(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c))
        assert np.array_equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)))

    def test_element_coeffs_roundtrip(self):
        f = make_field(5, 2)
        for code in range(f.q):
            el = f.element(f.element(code).coeffs)
            assert el.code == code

    def test_element_serialization_shape(self):
        assert make_field(7, 1).element(3).serialize() == 3
        assert make_field(2, 2).element([1, 1]).serialize() == [1, 1]

    def test_matmul_extension_field_matches_elementwise(self):
        f = make_field(3, 2)
        rng = np.random.default_rng(1)
        a = rng.integers(0, f.q, (6, 5)).astype(np.int64)
        b = rng.integers(0, f.q, (5, 4)).astype(np.int64)
        got = f.matmul(a, b)
        want = np.zeros((6, 4), dtype=np.int64)
        for i in range(6):
            for j in range(4):
                acc = np.int64(0)
                for k in range(5):
                    acc = f.add(acc, f.mul(a[i, k], b[k, j]))
                want[i, j] = acc
        assert np.array_equal(got, want)

    def test_ordered_codes_prime_field(self):
        assert list(make_field(5, 1).ordered_codes()) == [0, 1, 2, 3, 4]

    def test_ordered_codes_sorts_by_serialized_coeffs(self):
        f = make_field(3, 2)
        order = [tuple(f.serialize_code(int(c))) for c in f.ordered_codes()]
        assert order == sorted(order)


def J(field, n):
    """Single nilpotent Jordan block of size n (ones on the subdiagonal)."""
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i + 1, i] = 1
    return Matrix(field, a)


class TestRank:
    def test_zero_matrix(self):
        f = make_field(5, 1)
        assert rank(Matrix.zeros(f, 3, 3)) == 0

    @pytest.mark.parametrize("n", [1, 4, 9])
    def test_identity(self, n):
        f = make_field(3, 1)
        assert rank(Matrix.identity(f, n)) == n

    def test_jordan_block_rank(self):
        f = make_field(5, 1)
        assert rank(J(f, 5)) == 4

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_matches_naive_reference(self, p):
        f = make_field(p, 1)
        rng = np.random.default_rng(p)
        for _ in range(12):
            m = rng.integers(0, p, (rng.integers(1, 9), rng.integers(1, 9)))
            assert rank(Matrix(f, m)) == naive_rank_mod_p(m.tolist(), p)

    def test_rank_plus_nullity(self):
        f = make_field(3, 2)
        rng = np.random.default_rng(7)
        for _ in range(10):
            m = Matrix(f, rng.integers(0, f.q, (6, 8)))
            assert rank(m) + nullspace(m).cols == m.cols

    def test_rank_of_product_bound(self):
        f = make_field(5, 1)
        rng = np.random.default_rng(3)
        for _ in range(10):
            a = Matrix(f, rng.integers(0, 5, (5, 4)))
            b = Matrix(f, rng.integers(0, 5, (4, 6)))
            assert rank(a @ b) <= min(rank(a), rank(b))


class TestSolveLinear:
    def test_identity_system(self):
        f = make_field(7, 1)
        b = Matrix.from_rows(f, [[1], [2], [3]])
        res = solve_linear(Matrix.identity(f, 3), b)
        assert res.consistent and res.solution == b and res.kernel.cols == 0

    def test_zero_system_full_kernel(self):
        f = make_field(3, 1)
        res = solve_linear(Matrix.zeros(f, 2, 4), Matrix.zeros(f, 2, 1))
        assert res.consistent
        assert res.kernel.cols == 4
        assert rank(res.kernel) == 4

    def test_jordan_block_misses_top_vector(self):
        # J_3 over GF(3): the image is spanned by e_2, e_3, so e_1 has no preimage
        f = make_field(3, 1)
        e1 = Matrix.from_rows(f, [[1], [0], [0]])
        res = solve_linear(J(f, 3), e1)
        assert not res.consistent and res.solution is None
        assert res.kernel.cols == 1

    def test_solution_is_verified(self):
        f = make_field(5, 2)
        rng = np.random.default_rng(11)
        a = Matrix(f, rng.integers(0, f.q, (5, 7)))
        x = Matrix(f, rng.integers(0, f.q, (7, 2)))
        b = a @ x
        res = solve_linear(a, b)
        assert res.consistent
        assert a @ res.solution == b
        # kernel columns really solve the homogeneous system
        if res.kernel.cols:
            assert np.all((a @ res.kernel).array == 0)

    def test_kernel_basis_is_deterministic(self):
        f = make_field(3, 1)
        m = Matrix.from_rows(f, [[1, 2, 0, 1], [0, 0, 1, 1]])
        k1 = nullspace(m).array
        k2 = nullspace(m).array
        assert np.array_equal(k1, k2)
