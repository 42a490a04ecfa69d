import numpy as np
import pytest

from cjt.exactalg import Matrix, make_field, rank_array
from cjt.jordan import JordanType, from_nilpotent
from cjt.modrep import (
    Convention,
    ModuleHom,
    build_extension,
    direct_sum,
    dual,
    factors_through_projective,
    free_module,
    hom,
    hom_space,
    is_isomorphic,
    jordan_block_module,
    omega_n,
    projective_cover_omega,
    radical_socle,
    split_free,
    tensor,
    trivial_module,
    validate,
)


def ke_mod_i2(field, r, convention=Convention.PRIMITIVE):
    """kE/I^2: generator i sends the cyclic generator to the i-th radical line."""
    gens = []
    for i in range(r):
        a = np.zeros((r + 1, r + 1), dtype=np.int64)
        a[i + 1, 0] = 1
        gens.append(a)
    from cjt.modrep import ModuleRep

    return ModuleRep(field, gens, convention)


def evaluate_at(m, coords):
    f = m.field
    out = np.zeros((m.dim, m.dim), dtype=np.int64)
    for c, a in zip(coords, m.gens):
        if c:
            out = f.add(out, f.mul(np.int64(c), a))
    return Matrix(f, out)


def jt(p, blocks):
    return JordanType.from_blocks(p, blocks)


class TestValidate:
    def test_trivial_module_ok(self):
        f = make_field(5, 1)
        assert validate(trivial_module(f, 2, 4)).ok

    def test_regular_block_ok(self):
        f = make_field(5, 1)
        assert validate(jordan_block_module(f, 5)).ok

    def test_non_commuting_pair_reported(self):
        f = make_field(3, 1)
        a = np.zeros((3, 3), dtype=np.int64)
        a[1, 0] = 1
        b = np.zeros((3, 3), dtype=np.int64)
        b[2, 1] = 1
        from cjt.modrep import ModuleRep

        rep = validate(ModuleRep(f, [a, b]))
        assert not rep.ok and rep.index == (0, 1)

    def test_non_nilpotent_reported(self):
        f = make_field(3, 1)
        from cjt.modrep import ModuleRep

        rep = validate(ModuleRep(f, [np.eye(2, dtype=np.int64)]))
        assert not rep.ok and rep.index == (0,)

    def test_free_module_validates(self):
        f = make_field(3, 1)
        assert validate(free_module(f, 2, 1)).ok


class TestTensor:
    def test_two_by_two_primitive(self):
        f = make_field(5, 1)
        t = tensor(jordan_block_module(f, 2), jordan_block_module(f, 2))
        assert from_nilpotent(t.gen(0), 5) == jt(5, {3: 1, 1: 1})

    def test_top_block_tensor(self):
        f = make_field(5, 1)
        t = tensor(jordan_block_module(f, 4), jordan_block_module(f, 4))
        assert from_nilpotent(t.gen(0), 5) == jt(5, {5: 3, 1: 1})

    def test_unit_object(self):
        f = make_field(3, 1)
        m = ke_mod_i2(f, 2)
        k = trivial_module(f, 2, 1)
        t = tensor(k, m)
        for a, b in zip(t.gens, m.gens):
            assert np.array_equal(a, b)

    def test_group_convention_matches_primitive_types_rank_one(self):
        for p in (2, 3, 5):
            f = make_field(p, 1)
            for i in range(1, p + 1):
                for j in range(1, p + 1):
                    tp = tensor(
                        jordan_block_module(f, i), jordan_block_module(f, j)
                    )
                    tg = tensor(
                        jordan_block_module(f, i, Convention.GROUP),
                        jordan_block_module(f, j, Convention.GROUP),
                    )
                    assert from_nilpotent(tp.gen(0), p) == from_nilpotent(tg.gen(0), p)

    def test_convention_mismatch_raises(self):
        f = make_field(3, 1)
        with pytest.raises(ValueError):
            tensor(jordan_block_module(f, 2), jordan_block_module(f, 2, Convention.GROUP))

    def test_pointwise_kronecker_sum_identity(self):
        # at any linear point, the restricted tensor matrix is the Kronecker
        # sum of the restricted matrices (PRIMITIVE convention)
        f = make_field(3, 1)
        m = ke_mod_i2(f, 2)
        n = free_module(f, 2, 1)
        t = tensor(m, n)
        for coords in [(1, 0), (0, 1), (1, 1), (1, 2)]:
            am = evaluate_at(m, coords).array
            an = evaluate_at(n, coords).array
            at = evaluate_at(t, coords).array
            want = f.add(f.kron(am, np.eye(n.dim, dtype=np.int64)), f.kron(np.eye(m.dim, dtype=np.int64), an))
            assert np.array_equal(at, want)

    def test_results_validate(self):
        f = make_field(3, 1)
        t = tensor(ke_mod_i2(f, 2), ke_mod_i2(f, 2))
        assert validate(t).ok


class TestDual:
    def test_trivial_selfdual(self):
        f = make_field(5, 1)
        k3 = trivial_module(f, 2, 3)
        d = dual(k3)
        assert all(np.array_equal(a, b) for a, b in zip(d.gens, k3.gens))

    @pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
    def test_blocks_selfdual_type(self, i):
        f = make_field(5, 1)
        d = dual(jordan_block_module(f, i))
        assert from_nilpotent(d.gen(0), 5) == jt(5, {i: 1})

    @pytest.mark.parametrize("conv", [Convention.PRIMITIVE, Convention.GROUP])
    def test_double_dual_identity(self, conv):
        f = make_field(5, 1)
        m = ke_mod_i2(f, 3, conv)
        dd = dual(dual(m))
        assert all(np.array_equal(a, b) for a, b in zip(dd.gens, m.gens))

    def test_dual_of_cyclic_quotient_same_type_at_points(self):
        f = make_field(5, 1)
        m = ke_mod_i2(f, 2)
        d = dual(m)
        for coords in [(1, 0), (0, 1), (1, 3)]:
            tm = from_nilpotent(evaluate_at(m, coords), 5)
            td = from_nilpotent(evaluate_at(d, coords), 5)
            assert tm == td == jt(5, {2: 1, 1: 1})

    def test_group_dual_formula_is_involutive_on_free(self):
        f = make_field(3, 1)
        m = free_module(f, 2, 1, Convention.GROUP)
        dd = dual(dual(m))
        assert all(np.array_equal(a, b) for a, b in zip(dd.gens, m.gens))

    def test_primitive_dual_type_matches_at_every_point(self):
        # the restricted dual matrix is a negative transpose, so the type
        # agrees pointwise even off the maximal locus
        from cjt.zoo import w_module

        f = make_field(7, 1)
        m = w_module(f)
        d = dual(m)
        for coords in [(1, 0), (0, 1), (1, 1), (1, 3)]:
            assert from_nilpotent(evaluate_at(m, coords), 7) == from_nilpotent(
                evaluate_at(d, coords), 7
            )

    def test_group_dual_type_at_maximal_points(self):
        # for the group-like convention equality is asserted where the type
        # is maximal; a constant-type module is maximal everywhere
        f = make_field(3, 1)
        m = ke_mod_i2(f, 2, Convention.GROUP)
        d = dual(m)
        for coords in [(1, 0), (0, 1), (1, 1), (1, 2)]:
            assert from_nilpotent(evaluate_at(m, coords), 3) == from_nilpotent(
                evaluate_at(d, coords), 3
            )


class TestHom:
    def test_hom_from_trivial(self):
        f = make_field(5, 1)
        m = ke_mod_i2(f, 2)
        h = hom(trivial_module(f, 2, 1), m)
        for a, b in zip(h.gens, m.gens):
            assert np.array_equal(a, b)

    def test_hom_to_trivial_is_dual(self):
        f = make_field(5, 1)
        m = ke_mod_i2(f, 2)
        h = hom(m, trivial_module(f, 2, 1))
        for a, b in zip(h.gens, dual(m).gens):
            assert np.array_equal(a, b)

    def test_hom_of_blocks(self):
        f = make_field(5, 1)
        h = hom(jordan_block_module(f, 2), jordan_block_module(f, 2))
        assert from_nilpotent(h.gen(0), 5) == jt(5, {3: 1, 1: 1})


class TestHomSpace:
    def test_trivial_endomorphisms(self):
        f = make_field(3, 1)
        k = trivial_module(f, 2, 1)
        assert len(hom_space(k, k)) == 1

    def test_free_endomorphisms_have_group_algebra_dimension(self):
        f = make_field(3, 1)
        fr = free_module(f, 2, 1)
        assert len(hom_space(fr, fr)) == 9

    def test_cyclic_to_trivial(self):
        f = make_field(3, 1)
        assert len(hom_space(ke_mod_i2(f, 2), trivial_module(f, 2, 1))) == 1

    def test_basis_members_are_intertwiners(self):
        f = make_field(3, 1)
        m, n = ke_mod_i2(f, 2), free_module(f, 2, 1)
        for h in hom_space(m, n):
            assert h.is_intertwiner()


class TestRadicalSocle:
    def test_trivial(self):
        f = make_field(3, 1)
        rad, soc = radical_socle(trivial_module(f, 2, 4))
        assert rad.cols == 0 and soc.cols == 4

    def test_free_rank_one(self):
        f = make_field(3, 1)
        rad, soc = radical_socle(free_module(f, 2, 1))
        assert rad.cols == 8 and soc.cols == 1

    def test_cyclic_quotient_rank_three(self):
        f = make_field(5, 1)
        rad, soc = radical_socle(ke_mod_i2(f, 3))
        assert rad.cols == 3 and soc.cols == 3

    def test_generator_count(self):
        # dim(M / rad M) = minimal number of generators: 1 for a cyclic module
        f = make_field(5, 1)
        m = ke_mod_i2(f, 3)
        rad, _ = radical_socle(m)
        assert m.dim - rad.cols == 1


class TestSplitFree:
    def test_free_rank_two(self):
        f = make_field(3, 1)
        res = split_free(free_module(f, 2, 2))
        assert res.free_rank == 2 and res.core.dim == 0

    def test_trivial_plus_free(self):
        f = make_field(3, 1)
        m = direct_sum([trivial_module(f, 2, 1), free_module(f, 2, 1)])
        res = split_free(m)
        assert res.free_rank == 1
        assert res.core.dim == 1 and not np.any(res.core.gens[0])

    def test_point_restriction_of_first_shift(self):
        # Omega^1(k) for r=2, p=5 restricted to the first generator splits as
        # 4 free blocks plus a [4]
        f = make_field(5, 1)
        omega1 = omega_n(trivial_module(f, 2, 1), 1)
        assert omega1.dim == 24
        from cjt.modrep import ModuleRep

        restricted = ModuleRep(f, [omega1.gens[0]])
        res = split_free(restricted)
        assert res.free_rank == 4
        assert from_nilpotent(res.core.gen(0), 5) == jt(5, {4: 1})

    def test_dimension_accounting(self):
        f = make_field(3, 1)
        m = direct_sum([ke_mod_i2(f, 2), free_module(f, 2, 2)])
        res = split_free(m)
        assert m.dim == res.free_rank * 9 + res.core.dim
        assert validate(res.core).ok


class TestCoverOmega:
    def test_omega_of_trivial(self):
        f = make_field(5, 1)
        res = projective_cover_omega(trivial_module(f, 2, 1))
        assert res.omega.dim == 24
        assert res.cover.is_intertwiner()
        assert res.inclusion.is_intertwiner()

    def test_omega_of_free_is_zero(self):
        f = make_field(3, 1)
        res = projective_cover_omega(free_module(f, 2, 1))
        assert res.omega.dim == 0

    def test_second_shift_dimension(self):
        f = make_field(5, 1)
        omega1 = omega_n(trivial_module(f, 2, 1), 1)
        res = projective_cover_omega(omega1)
        assert res.omega.dim == 26

    def test_omega_n_values(self):
        f3 = make_field(3, 1)
        assert omega_n(trivial_module(f3, 3, 1), 2).dim == 55
        k = trivial_module(f3, 2, 1)
        zero_shift = omega_n(k, 0)
        assert zero_shift.dim == 1 and not np.any(zero_shift.gens[0])
        f5 = make_field(5, 1)
        assert omega_n(trivial_module(f5, 2, 1), -2).dim == 26

    def test_negative_and_positive_shifts_match_dimensions(self):
        f = make_field(3, 1)
        k = trivial_module(f, 2, 1)
        for n in (1, 2, 3):
            assert omega_n(k, n).dim == omega_n(k, -n).dim


class TestFactorsThroughProjective:
    def test_identity_on_trivial_is_stably_nonzero(self):
        f = make_field(3, 1)
        k = trivial_module(f, 2, 1)
        h = ModuleHom(k, k, np.eye(1, dtype=np.int64))
        assert not factors_through_projective(h)

    def test_map_from_free_factors(self):
        f = make_field(3, 1)
        fr = free_module(f, 2, 1)
        k = trivial_module(f, 2, 1)
        for h in hom_space(fr, k):
            assert factors_through_projective(h)

    def test_nonzero_degree_one_cocycle_is_stably_nonzero(self):
        f = make_field(3, 1)
        k = trivial_module(f, 2, 1)
        omega1 = omega_n(k, 1)
        cocycles = [h for h in hom_space(omega1, k) if not h.is_zero()]
        assert cocycles
        assert not factors_through_projective(cocycles[0])


class TestBuildExtension:
    def test_zero_class_splits_pointwise(self):
        f = make_field(3, 1)
        k = trivial_module(f, 2, 1)
        m = ke_mod_i2(f, 2)
        omega1k = omega_n(k, 1)
        zero = ModuleHom(omega1k, m, np.zeros((m.dim, omega1k.dim), dtype=np.int64))
        ext = build_extension(zero, k)
        assert ext.middle.dim == m.dim + 1
        for coords in [(1, 0), (0, 1), (1, 1), (1, 2)]:
            tb = from_nilpotent(evaluate_at(ext.middle, coords), 3)
            tm = from_nilpotent(evaluate_at(m, coords), 3)
            assert tb == tm + jt(3, {1: 1})

    def test_nonsplit_self_extension_of_trivial_rank_one(self):
        f = make_field(3, 1)
        k = trivial_module(f, 1, 1)
        omega1k = omega_n(k, 1)
        witness = [h for h in hom_space(omega1k, k) if not h.is_zero()][0]
        ext = build_extension(witness, k)
        assert ext.middle.dim == 2
        assert from_nilpotent(ext.middle.gen(0), 3) == jt(3, {2: 1})

    def test_rejects_non_intertwiner(self):
        f = make_field(3, 1)
        k = trivial_module(f, 2, 1)
        m = ke_mod_i2(f, 2)
        omega1k = omega_n(k, 1)
        bad = np.zeros((m.dim, omega1k.dim), dtype=np.int64)
        bad[0, 0] = 1
        bad[2, 3] = 1
        hom_bad = ModuleHom(omega1k, m, bad)
        if not hom_bad.is_intertwiner():
            with pytest.raises(ValueError):
                build_extension(hom_bad, k)


class TestConstructorClosure:
    @pytest.mark.parametrize("conv", [Convention.PRIMITIVE, Convention.GROUP])
    def test_all_constructors_return_valid_modules(self, conv):
        f = make_field(3, 1)
        m = ke_mod_i2(f, 2, conv)
        n = free_module(f, 2, 1, conv)
        k = trivial_module(f, 2, 1, conv)
        assert validate(tensor(m, n)).ok
        assert validate(dual(m)).ok
        assert validate(hom(m, n)).ok
        assert validate(omega_n(k, 2)).ok
        assert validate(omega_n(k, -1)).ok
        omega1k = omega_n(k, 1)
        zero = ModuleHom(omega1k, m, np.zeros((m.dim, omega1k.dim), dtype=np.int64))
        assert validate(build_extension(zero, k).middle).ok


class TestIsIsomorphic:
    def test_literal_equality(self):
        f = make_field(3, 1)
        m = ke_mod_i2(f, 2)
        assert is_isomorphic(m, m).isomorphic

    def test_dimension_mismatch(self):
        f = make_field(3, 1)
        res = is_isomorphic(trivial_module(f, 1, 1), jordan_block_module(f, 2))
        assert not res.isomorphic and not res.inconclusive

    def test_conjugated_module_is_isomorphic(self):
        f = make_field(3, 1)
        m = ke_mod_i2(f, 2)
        rng = np.random.default_rng(2)
        while True:
            g = rng.integers(0, 3, (3, 3)).astype(np.int64)
            if rank_array(f, g) == 3:
                break
        from cjt.exactalg import solve_linear
        from cjt.modrep import ModuleRep

        ginv = solve_linear(Matrix(f, g), Matrix.identity(f, 3)).solution.array
        conj = ModuleRep(f, [f.matmul(g, f.matmul(a, ginv)) for a in m.gens])
        res = is_isomorphic(m, conj, seed=0)
        assert res.isomorphic

    def test_same_type_non_isomorphic_pair_is_not_conflated(self):
        # kE/I^2 and its dual share all local Jordan types but are not
        # isomorphic (one is generated by a single vector, the other is not)
        f = make_field(5, 1)
        m = ke_mod_i2(f, 2)
        res = is_isomorphic(m, dual(m), seed=0)
        assert not res.isomorphic
