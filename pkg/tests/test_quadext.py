import random
from fractions import Fraction

import pytest
from conftest import r3_pair

from mslaw.catalog import (
    WITT, complex_block, default_entries, instantiate, perturbed_section, sample_pair, BaseChoice,
)
from mslaw.cochain import (
    Cochain, MorphismOfPairs, QuadCocycle, TransformPair, act, check_ZQplus, sigma,
)
from mslaw.errors import DomainError
from mslaw.lie import (
    LieAlgebra, MetricLieAlgebra, PairLDA, Subspace, canonical_isotropic_ideal, check_ad_invariant,
    check_jacobi, direct_sum, is_derivation, is_skewsymmetric,
)
from mslaw.linalg import Matrix, jordan_chevalley, signature, unit_vec
from mslaw.quadext import (
    EquivalenceWitness, IsomorphismWitness, build_standard_model, canonical_extension_of,
    check_balanced, check_extension, extract_cocycle, standard_extension, verify_decomposition,
    verify_equivalence, verify_isomorphism,
)
from mslaw.sampling import random_cocycle, random_matrix, random_transform

F = Fraction
DIM6_PAIR = r3_pair(Matrix.diag(-3, 1, 2))
SIGMA123 = sigma(3, 1, 2, 3)


def dim6_cocycle(k=1) -> QuadCocycle:
    return QuadCocycle.zero(3, 0).replace(gamma=SIGMA123.scale(k))


def rotation_pair():
    Dl = Matrix([[1, -1, 0], [1, 1, 0], [0, 0, -1]])
    return r3_pair(Dl, Matrix.identity(2), complex_block(0, 1))


def rotation_cocycle():
    alpha = sigma(3, 1, 3).tensor((1, 0)) + sigma(3, 2, 3).tensor((0, 1))
    return QuadCocycle.zero(3, 2).replace(alpha=alpha)


# ---------------------------------------------------------------- standard model

class TestBuild:
    def test_dim6(self):
        sm = build_standard_model(DIM6_PAIR, dim6_cocycle())
        g = sm.model.algebra
        Z = lambda k: unit_vec(6, k - 1)  # noqa: E731
        assert g.structure[3][4] == Z(3)
        assert g.structure[3][5] == tuple(-x for x in Z(2))
        assert g.structure[4][5] == Z(1)
        assert len(g.nonzero_brackets) == 3
        assert sm.derivation == Matrix.diag(3, -1, -2, -3, 1, 2)
        assert signature(sm.model.gram) == (3, 3, 0)

    def test_index3(self):
        sm = build_standard_model(rotation_pair(), rotation_cocycle())
        assert sm.dim == 8
        assert signature(sm.model.gram) == (3, 5, 0)

    def test_gram_blocks(self):
        e = instantiate("dim8-w2")
        sm = build_standard_model(e.pair, e.cocycle)
        G = sm.model.gram
        assert G.submatrix(range(3), range(5, 8)) == Matrix.identity(3)
        assert G.submatrix(range(3, 5), range(3, 5)) == WITT
        assert G.submatrix(range(3), range(3)).is_zero()

    def test_not_a_cocycle(self):
        e = instantiate("dim8-w4")
        bad = e.cocycle.replace(alpha=e.cocycle.alpha + sigma(3, 1, 3).tensor((0, 1)))
        with pytest.raises(DomainError, match="dδ ≠ D°α"):
            build_standard_model(e.pair, bad)

    def test_random_cocycles_build(self, pairs):
        rng = random.Random(11)
        for p in pairs.values():
            for _ in range(4):
                c = random_cocycle(rng, p)
                sm = build_standard_model(p, c)
                assert check_jacobi(sm.model.algebra)
                assert check_ad_invariant(sm.model)
                assert is_derivation(sm.model.algebra, sm.derivation)
                assert is_skewsymmetric(sm.model.gram, sm.derivation)


# ---------------------------------------------------------------- balanced

class TestBalanced:
    def test_dim6(self):
        assert check_balanced(DIM6_PAIR, dim6_cocycle())

    def test_zero_cocycle(self):
        result = check_balanced(DIM6_PAIR, QuadCocycle.zero(3, 0))
        assert not result and result.detail == "(A_0)"

    def test_line(self):
        pair = PairLDA(LieAlgebra.abelian(1), Matrix.identity(1), WITT, Matrix.diag(1, -1))
        delta = sigma(1, 1).tensor((1, 0))
        for c in (QuadCocycle.zero(1, 2), QuadCocycle.zero(1, 2).replace(delta=delta)):
            assert check_ZQplus(pair, c)
            assert not check_balanced(pair, c)

    def test_preconditions(self):
        with pytest.raises(DomainError):
            check_balanced(r3_pair(Matrix.diag(0, 1, -1)), QuadCocycle.zero(3, 0))

    def test_catalog_balanced(self, catalog):
        for e in catalog:
            assert check_balanced(e.pair, e.cocycle), e.name

    def test_balanced_iff_ideal_is_dual_block(self, catalog):
        cases = [(e.pair, e.cocycle) for e in catalog]
        cases.append((DIM6_PAIR, QuadCocycle.zero(3, 0)))
        cases.append((DIM6_PAIR, dim6_cocycle(5)))
        rng = random.Random(4)
        for choice in BaseChoice:
            for _ in range(6):
                p = sample_pair(rng, choice)
                cases.append((p, random_cocycle(rng, p)))
        seen = set()
        for pair, c in cases:
            sm = build_standard_model(pair, c)
            balanced = bool(check_balanced(pair, c))
            assert balanced == (canonical_isotropic_ideal(sm.model) == sm.dual_block())
            seen.add(balanced)
        assert seen == {True, False}


# ---------------------------------------------------------------- extensions and extraction

class TestExtension:
    def test_abelian_2_2(self):
        R = Matrix([[0, -1], [1, 0]])
        g = MetricLieAlgebra(LieAlgebra.abelian(4), Matrix.diag(1, 1, -1, -1))
        ext = canonical_extension_of(g, Matrix.block_diag(R, R))
        assert ext.ideal.dim == 0 and ext.n == 0 and ext.m == 4

    def test_dim6(self):
        sm = build_standard_model(DIM6_PAIR, dim6_cocycle())
        ext = canonical_extension_of(sm.model, sm.derivation)
        assert ext.ideal == sm.dual_block()
        assert (ext.n, ext.m) == (3, 0)
        assert ext.pair.l.is_abelian

    def test_index3(self):
        sm = build_standard_model(rotation_pair(), rotation_cocycle())
        ext = canonical_extension_of(sm.model, sm.derivation)
        assert (ext.n, ext.m) == (3, 2)
        assert ext.pair.Da.charpoly() == complex_block(0, 1).charpoly()
        assert signature(ext.pair.a_gram) == (0, 2, 0)

    def test_preconditions(self):
        sm = build_standard_model(DIM6_PAIR, dim6_cocycle())
        with pytest.raises(DomainError):
            canonical_extension_of(sm.model, Matrix.identity(6))

    def test_semisimple_part_still_valid(self, catalog):
        for e in catalog:
            sm = build_standard_model(e.pair, e.cocycle)
            for ext in (canonical_extension_of(sm.model, sm.derivation), standard_extension(sm)):
                assert check_extension(ext)
                assert check_extension(ext, jordan_chevalley(sm.derivation)[0])


class TestExtraction:
    def test_roundtrip_catalog(self, catalog):
        for e in catalog:
            sm = build_standard_model(e.pair, e.cocycle)
            assert extract_cocycle(standard_extension(sm)) == e.cocycle, e.name
            n, m = sm.n, sm.m
            own = Matrix.from_columns([unit_vec(sm.dim, n + m + j) for j in range(n)], sm.dim)
            assert extract_cocycle(standard_extension(sm), own) == e.cocycle

    def test_roundtrip_random(self, pairs):
        rng = random.Random(12)
        for p in pairs.values():
            for _ in range(3):
                c = random_cocycle(rng, p)
                assert extract_cocycle(standard_extension(build_standard_model(p, c))) == c

    def test_abelian_1_1(self):
        g = MetricLieAlgebra(LieAlgebra.abelian(2), WITT)
        ext = canonical_extension_of(g, Matrix.diag(1, -1))
        assert extract_cocycle(ext) == QuadCocycle.zero(0, 2)

    def test_canonical_extension_gives_cocycle(self, catalog):
        for e in catalog:
            sm = build_standard_model(e.pair, e.cocycle)
            ext = canonical_extension_of(sm.model, sm.derivation)
            assert check_ZQplus(ext.pair, extract_cocycle(ext))

    def test_perturbed_section(self, catalog):
        rng = random.Random(13)
        nontrivial = 0
        for e in catalog:
            sm = build_standard_model(e.pair, e.cocycle)
            t = random_transform(rng, e.pair)
            nontrivial += not (t.tau.is_zero() and t.sigma.is_zero())
            got = extract_cocycle(standard_extension(sm), perturbed_section(sm, t))
            assert got == act(e.pair, e.cocycle, t)
            assert verify_equivalence(e.pair, got, e.cocycle, EquivalenceWitness(t))
        assert nontrivial > 0

    def test_bad_sections(self):
        sm = build_standard_model(DIM6_PAIR, dim6_cocycle())
        ext = standard_extension(sm)
        col = lambda *ks: tuple(F(int(i in ks)) for i in range(6))  # noqa: E731
        not_isotropic = Matrix.from_columns([col(3, 0), col(4), col(5)], 6)
        with pytest.raises(DomainError, match="isotropic"):
            extract_cocycle(ext, not_isotropic)
        shifted = Matrix.from_columns(
            [col(3, 1), tuple(a - b for a, b in zip(col(4), col(0))), col(5)], 6)
        with pytest.raises(DomainError, match="invariant"):
            extract_cocycle(ext, shifted)
        wrong_projection = Matrix.from_columns([col(4), col(3), col(5)], 6)
        with pytest.raises(DomainError, match="projection"):
            extract_cocycle(ext, wrong_projection)


# ---------------------------------------------------------------- witnesses

class TestEquivalence:
    def test_identity(self):
        w = EquivalenceWitness(TransformPair.identity(3, 0))
        assert verify_equivalence(DIM6_PAIR, dim6_cocycle(), dim6_cocycle(), w)

    def test_random_transforms(self, catalog):
        rng = random.Random(14)
        for e in catalog:
            for _ in range(2):
                t = random_transform(rng, e.pair)
                c1 = act(e.pair, e.cocycle, t)
                assert verify_equivalence(e.pair, c1, e.cocycle, EquivalenceWitness(t))

    def test_different_gamma(self):
        w = EquivalenceWitness(TransformPair.identity(3, 0))
        assert not verify_equivalence(DIM6_PAIR, dim6_cocycle(1), dim6_cocycle(2), w)

    def test_invalid_witness(self):
        e = instantiate("dim8-w1")
        bad = TransformPair(sigma(3, 1).tensor((1, 0)), Cochain.zero(3, 2, None))
        with pytest.raises(DomainError):
            verify_equivalence(e.pair, e.cocycle, e.cocycle, EquivalenceWitness(bad))


class TestIsomorphism:
    def test_identity(self):
        m = MorphismOfPairs(Matrix.identity(3), Matrix.zeros(0), DIM6_PAIR, DIM6_PAIR)
        w = IsomorphismWitness(m, TransformPair.identity(3, 0))
        assert verify_isomorphism(DIM6_PAIR, dim6_cocycle(), DIM6_PAIR, dim6_cocycle(), w)

    def test_scaling(self):
        m = MorphismOfPairs(Matrix.identity(3) * F(1, 2), Matrix.zeros(0), DIM6_PAIR, DIM6_PAIR)
        w = IsomorphismWitness(m, TransformPair.identity(3, 0))
        assert verify_isomorphism(DIM6_PAIR, dim6_cocycle(1), DIM6_PAIR, dim6_cocycle(8), w)
        assert not verify_isomorphism(DIM6_PAIR, dim6_cocycle(2), DIM6_PAIR, dim6_cocycle(8), w)

    def test_permutation_between_pairs(self):
        p2 = r3_pair(Matrix.diag(1, -3, 2))
        S = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        m = MorphismOfPairs(S, Matrix.zeros(0), DIM6_PAIR, p2)
        w = IsomorphismWitness(m, TransformPair.identity(3, 0))
        assert verify_isomorphism(DIM6_PAIR, dim6_cocycle(-1), p2, dim6_cocycle(1), w)

    def test_different_charpoly(self):
        p2 = r3_pair(Matrix.diag(-5, 2, 3))
        m = MorphismOfPairs(Matrix.identity(3), Matrix.zeros(0), DIM6_PAIR, p2)
        w = IsomorphismWitness(m, TransformPair.identity(3, 0))
        assert not verify_isomorphism(DIM6_PAIR, dim6_cocycle(), p2, dim6_cocycle(), w)

    def test_unbalanced_rejected(self):
        m = MorphismOfPairs(Matrix.identity(3), Matrix.zeros(0), DIM6_PAIR, DIM6_PAIR)
        w = IsomorphismWitness(m, TransformPair.identity(3, 0))
        zero = QuadCocycle.zero(3, 0)
        with pytest.raises(DomainError):
            verify_isomorphism(DIM6_PAIR, zero, DIM6_PAIR, zero, w)

    def test_invalid_morphism(self):
        p2 = r3_pair(Matrix.diag(1, -3, 2))
        m = MorphismOfPairs(Matrix.identity(3), Matrix.zeros(0), DIM6_PAIR, p2)
        w = IsomorphismWitness(m, TransformPair.identity(3, 0))
        with pytest.raises(DomainError):
            verify_isomorphism(DIM6_PAIR, dim6_cocycle(), p2, dim6_cocycle(), w)

    def test_catalog_with_transform(self, catalog):
        rng = random.Random(15)
        for e in catalog:
            p = e.pair
            t = random_transform(rng, p)
            m = MorphismOfPairs(Matrix.identity(p.n), Matrix.identity(p.a_dim), p, p)
            c1 = act(p, e.cocycle, t)
            assert verify_isomorphism(p, c1, p, e.cocycle, IsomorphismWitness(m, t))


class TestDecomposition:
    def test_direct_sum(self):
        sm = build_standard_model(DIM6_PAIR, dim6_cocycle())
        total = direct_sum(sm.model, MetricLieAlgebra(LieAlgebra.abelian(2), WITT))
        D = Matrix.block_diag(sm.derivation, Matrix.diag(1, -1))
        first, second = Subspace.coordinate(8, range(6)), Subspace.coordinate(8, [6, 7])
        assert verify_decomposition((total, D), first, second)

    def test_hyperbolic_planes(self):
        g = MetricLieAlgebra(LieAlgebra.abelian(4), Matrix.block_diag(WITT, WITT))
        D = Matrix.diag(1, -1, 2, -2)
        assert verify_decomposition((g, D), Subspace.coordinate(4, [0, 1]),
                                    Subspace.coordinate(4, [2, 3]))

    def test_random_splittings_of_dim6(self):
        sm = build_standard_model(DIM6_PAIR, dim6_cocycle())
        rng = random.Random(16)
        for trial in range(100):
            k = rng.randint(1, 5)
            M = random_matrix(rng, 6, 6)
            while not M.is_invertible():
                M = random_matrix(rng, 6, 6)
            if trial % 4 == 0:
                # coordinate-aligned splittings are the most plausible candidates
                perm = list(range(6))
                rng.shuffle(perm)
                M = Matrix.from_columns([unit_vec(6, i) for i in perm], 6)
            cols = M.columns()
            first = Subspace.span(6, cols[:k])
            second = Subspace.span(6, cols[k:])
            assert not verify_decomposition(sm, first, second)

    def test_degenerate_summand_reported(self):
        g = MetricLieAlgebra(LieAlgebra.abelian(2), WITT)
        result = verify_decomposition(g, Subspace.coordinate(2, [0]), Subspace.coordinate(2, [1]))
        assert not result
        assert "first summand is degenerate" in result.failures


def test_every_catalog_model_is_balanced_extension():
    for e in default_entries():
        sm = build_standard_model(e.pair, e.cocycle)
        assert canonical_isotropic_ideal(sm.model) == sm.dual_block()
