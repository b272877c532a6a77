import itertools
import random
from fractions import Fraction

import pytest
from conftest import automorphism, make_pairs, r3_pair

from mslaw.catalog import WITT, instantiate
from mslaw.cochain import (
    Cochain, MorphismOfPairs, QuadCocycle, TransformPair, act, check_CQ, check_morphism,
    check_ZQ, check_ZQplus, dcirc, differential, group_inverse, group_mul, pullback,
    pullback_cochain, pullback_transform, sigma, wedge_pair,
)
from mslaw.errors import DomainError, UsageError
from mslaw.lie import LieAlgebra, PairLDA
from mslaw.linalg import Matrix, dot, solve_vec, unit_vec
from mslaw.sampling import random_cochain, random_cocycle, random_transform, to_coords

F = Fraction
PAIRS = make_pairs()
SAMPLES_PER_PAIR = 15


def cochains(rng, pair, degree, real, count=SAMPLES_PER_PAIR):
    target = None if real else pair.a_dim
    return [random_cochain(rng, pair.n, degree, target) for _ in range(count)]


# ---------------------------------------------------------------- differential

class TestDifferential:
    def test_abelian_is_zero(self, rng):
        p = PAIRS["r3-witt"]
        for c in cochains(rng, p, 1, False) + cochains(rng, p, 2, True):
            assert differential(p, c).is_zero()

    def test_heisenberg_dual(self):
        p = PAIRS["h3-trivial"]
        d = differential(p, sigma(3, 3))
        assert d.scalar((0, 1)) == -1
        assert d.values == {(0, 1): (F(-1),)}

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_d_squared(self, rng, name):
        p = PAIRS[name]
        for deg in (0, 1, 2):
            for real in (True, False):
                for c in cochains(rng, p, deg, real, 5):
                    assert differential(p, differential(p, c)).is_zero()

    def test_wrong_base(self):
        with pytest.raises(UsageError):
            differential(PAIRS["h3-trivial"], sigma(4, 1))


# ---------------------------------------------------------------- wedge pairing

def shuffle_oracle(G: Matrix, x: Cochain, y: Cochain, args) -> Fraction:
    """Full permutation sum divided by p! q!."""
    p, r = x.degree, y.degree
    total = F(0)
    for perm in itertools.permutations(range(p + r)):
        inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        vx = x.evaluate([args[perm[i]] for i in range(p)])
        vy = y.evaluate([args[perm[p + i]] for i in range(r)])
        total += (-1) ** inv * dot(vx, G.apply(vy))
    fact = lambda k: 1 if k <= 1 else k * fact(k - 1)  # noqa: E731
    return total / (fact(p) * fact(r))


class TestWedge:
    def test_example(self):
        G = Matrix.identity(1)
        tau = sigma(2, 1).tensor((1,))
        ups = sigma(2, 2).tensor((1,))
        w = wedge_pair(G, tau, ups)
        assert w.values == {(0, 1): (F(1),)}

    def test_tau_wedge_tau_vanishes(self, rng):
        for p in PAIRS.values():
            for t in cochains(rng, p, 1, False):
                assert wedge_pair(p.a_gram, t, t).is_zero()

    def test_top_degree_overflow(self):
        alpha = sigma(3, 1, 3).tensor((1, 0)) + sigma(3, 2, 3).tensor((0, 1))
        w = wedge_pair(Matrix.identity(2), alpha, alpha)
        assert w.degree == 4 and w.is_zero()

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_against_permutation_sum(self, rng, name):
        p = PAIRS[name]
        for dx, dy in ((1, 1), (1, 2), (2, 1)):
            for _ in range(4):
                x = random_cochain(rng, p.n, dx, p.a_dim)
                y = random_cochain(rng, p.n, dy, p.a_dim)
                w = wedge_pair(p.a_gram, x, y)
                for idx in itertools.combinations(range(p.n), dx + dy):
                    args = [unit_vec(p.n, i) for i in idx]
                    assert w.scalar(idx) == shuffle_oracle(p.a_gram, x, y, args)

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_graded_symmetry(self, rng, name):
        p = PAIRS[name]
        for dx, dy in ((1, 1), (1, 2), (2, 1)):
            for _ in range(SAMPLES_PER_PAIR):
                x = random_cochain(rng, p.n, dx, p.a_dim)
                y = random_cochain(rng, p.n, dy, p.a_dim)
                sign = (-1) ** (dx * dy)
                assert wedge_pair(p.a_gram, x, y) == wedge_pair(p.a_gram, y, x).scale(sign)

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_leibniz(self, rng, name):
        p = PAIRS[name]
        G = p.a_gram
        for dx, dy in ((1, 1), (1, 0), (0, 2)):
            for _ in range(SAMPLES_PER_PAIR):
                x = random_cochain(rng, p.n, dx, p.a_dim)
                y = random_cochain(rng, p.n, dy, p.a_dim)
                lhs = differential(p, wedge_pair(G, x, y))
                rhs = wedge_pair(G, differential(p, x), y) + \
                    wedge_pair(G, x, differential(p, y)).scale((-1) ** dx)
                assert lhs == rhs


# ---------------------------------------------------------------- D° and D°_s

def dcirc_oracle(pair: PairLDA, c: Cochain) -> Cochain:
    """Linear coefficient in t of (I - t Dl, I + t Da)^* c, by exact interpolation."""
    n, m = pair.n, pair.a_dim
    samples = []
    ts = range(c.degree + 2)
    for t in ts:
        S = Matrix.identity(n) - pair.Dl * t
        U = Matrix.identity(m) + pair.Da * t
        samples.append(to_coords(pullback_cochain(c, S, U)))
    vander = Matrix([[F(t) ** k for k in range(len(ts))] for t in ts])
    linear = []
    for coord in range(len(samples[0])):
        coeffs = solve_vec(vander, [s[coord] for s in samples])
        linear.append(coeffs[1])
    out = Cochain.zero(n, c.degree, c.target)
    keys = list(itertools.combinations(range(n), c.degree))
    w = c.width
    values = {k: tuple(linear[i * w:(i + 1) * w]) for i, k in enumerate(keys)}
    return out + Cochain(n, c.degree, c.target, values)


class TestDcirc:
    def test_scaling(self):
        lam, mu = F(2), F(-3)
        pair = PairLDA(LieAlgebra.abelian(3), Matrix.identity(3) * lam, Matrix.identity(2),
                       Matrix.identity(2) * mu)
        rng = random.Random(3)
        for p in (1, 2, 3):
            c = random_cochain(rng, 3, p, 2)
            assert dcirc(pair, c) == c.scale(mu - p * lam)

    def test_rotation_alpha_semisimple(self):
        Dl = Matrix([[1, -1, 0], [1, 1, 0], [0, 0, -1]])
        pair = r3_pair(Dl, Matrix.identity(2), Matrix([[0, -1], [1, 0]]))
        alpha = sigma(3, 1, 3).tensor((1, 0)) + sigma(3, 2, 3).tensor((0, 1))
        assert dcirc(pair, alpha, True).is_zero()
        assert check_ZQ(pair, alpha, Cochain.zero(3, 3, None))

    def test_trace_on_top_form(self):
        pair = r3_pair(Matrix.diag(-3, 1, 2))
        assert dcirc(pair, sigma(3, 1, 2, 3)).is_zero()

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_against_interpolation(self, rng, name):
        p = PAIRS[name]
        for deg in (1, 2):
            for real in (True, False):
                for c in cochains(rng, p, deg, real, 4):
                    assert dcirc(p, c) == dcirc_oracle(p, c)

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_leibniz(self, rng, name):
        p = PAIRS[name]
        G = p.a_gram
        for _ in range(SAMPLES_PER_PAIR):
            x = random_cochain(rng, p.n, 1, p.a_dim)
            y = random_cochain(rng, p.n, 2, p.a_dim)
            lhs = dcirc(p, wedge_pair(G, x, y))
            assert lhs == wedge_pair(G, dcirc(p, x), y) + wedge_pair(G, x, dcirc(p, y))

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_commutes_with_d(self, rng, name):
        p = PAIRS[name]
        for deg in (0, 1, 2):
            for real in (True, False):
                for c in cochains(rng, p, deg, real, 5):
                    assert dcirc(p, differential(p, c)) == differential(p, dcirc(p, c))
                    assert dcirc(p, differential(p, c), True) == \
                        differential(p, dcirc(p, c, True))


# ---------------------------------------------------------------- Z_Q, C_Q, Z_Q+

class TestMembership:
    def test_dim6(self):
        pair = r3_pair(Matrix.diag(-3, 1, 2))
        c = QuadCocycle.zero(3, 0).replace(gamma=sigma(3, 1, 2, 3))
        assert check_ZQ(pair, c.alpha, c.gamma)
        assert check_ZQplus(pair, c)

    def test_wrong_trace(self):
        pair = r3_pair(Matrix.diag(1, 1, 1))
        result = check_ZQ(pair, Cochain.zero(3, 2, 0), sigma(3, 1, 2, 3))
        assert not result and "D°_s γ" in result.detail

    def test_cq_examples(self):
        tau = sigma(3, 3).tensor((1, 0))
        sig0 = Cochain.zero(3, 2, None)
        good = r3_pair(Matrix.diag(1, 2, -1), WITT, Matrix.diag(-1, 1))
        bad = r3_pair(Matrix.diag(1, 2, 3), WITT, Matrix.diag(-1, 1))
        assert check_CQ(good, TransformPair.identity(3, 2))
        assert check_CQ(good, TransformPair(tau, sig0))
        assert not check_CQ(bad, TransformPair(tau, sig0))

    def test_dim8_w2(self):
        e = instantiate("dim8-w2")
        assert e.pair.Dl == Matrix.diag(-1, 2, -3)
        assert e.pair.Da == Matrix.diag(1, -1)
        assert check_ZQplus(e.pair, e.cocycle)

    def test_malformed_delta(self):
        pair = r3_pair(Matrix.diag(-3, 1, 2))
        with pytest.raises(UsageError):
            QuadCocycle.zero(3, 0).replace(delta=sigma(3, 1).tensor((1,)))

    def test_failure_tags(self):
        # W4 has a nilpotent part in D_l, so D°α differs from D°_s α
        e = instantiate("dim8-w4")
        bad = e.cocycle.replace(alpha=e.cocycle.alpha + sigma(3, 1, 3).tensor((0, 1)))
        result = check_ZQplus(e.pair, bad)
        assert "dδ ≠ D°α" in result.detail


# ---------------------------------------------------------------- group and action

def random_pair_transform(rng, p) -> TransformPair:
    return TransformPair(random_cochain(rng, p.n, 1, p.a_dim), random_cochain(rng, p.n, 2, None))


class TestGroup:
    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_axioms(self, rng, name):
        p = PAIRS[name]
        G = p.a_gram
        e = TransformPair.identity(p.n, p.a_dim)
        for _ in range(SAMPLES_PER_PAIR):
            t1, t2, t3 = (random_pair_transform(rng, p) for _ in range(3))
            assert group_mul(G, t1, e) == t1 == group_mul(G, e, t1)
            assert group_mul(G, t1, group_inverse(t1)) == e
            assert group_mul(G, group_mul(G, t1, t2), t3) == group_mul(G, t1, group_mul(G, t2, t3))


class TestAction:
    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_action_axioms_and_invariance(self, rng, name):
        p = PAIRS[name]
        e = TransformPair.identity(p.n, p.a_dim)
        nonzero = 0
        for _ in range(SAMPLES_PER_PAIR):
            c = random_cocycle(rng, p)
            assert check_ZQplus(p, c)
            nonzero += any(not x.is_zero() for x in c.parts())
            t1, t2 = random_transform(rng, p), random_transform(rng, p)
            assert act(p, c, e) == c
            moved = act(p, c, t1)
            assert check_ZQplus(p, moved)
            assert act(p, moved, t2) == act(p, c, group_mul(p.a_gram, t1, t2))
        assert nonzero > 0

    def test_delta_component(self, rng):
        for p in PAIRS.values():
            c = random_cocycle(rng, p)
            t = random_transform(rng, p)
            out = act(p, c, t)
            for j in range(p.n):
                ej = unit_vec(p.n, j)
                expect = [a + b - x for a, b, x in zip(
                    c.delta.value((j,)), p.Da.apply(t.tau.value((j,))),
                    t.tau.evaluate([p.Dl.apply(ej)]))]
                assert list(out.delta.value((j,))) == expect

    def test_rejects_non_cq(self):
        p = PAIRS["r3-witt"]
        c = QuadCocycle.zero(3, 2)
        t = TransformPair(sigma(3, 1).tensor((1, 0)), Cochain.zero(3, 2, None))
        assert not check_CQ(p, t)
        with pytest.raises(DomainError):
            act(p, c, t)


# ---------------------------------------------------------------- pull-backs

class TestPullback:
    def test_identity(self, rng):
        for name, p in PAIRS.items():
            m = MorphismOfPairs(Matrix.identity(p.n), Matrix.identity(p.a_dim), p, p)
            c = random_cocycle(rng, p)
            assert pullback(m, c) == c

    def test_worked_example(self):
        pair = r3_pair(Matrix.diag(-3, 1, 2))
        m = MorphismOfPairs(Matrix.identity(3) * F(1, 2), Matrix.zeros(0), pair, pair)
        c8 = QuadCocycle.zero(3, 0).replace(gamma=sigma(3, 1, 2, 3, coef=8))
        assert pullback(m, c8) == QuadCocycle.zero(3, 0).replace(gamma=sigma(3, 1, 2, 3))

    def test_invalid_morphism(self):
        p = PAIRS["r3-witt"]
        m = MorphismOfPairs(Matrix.identity(3), Matrix.identity(2) * 2, p, p)
        assert not check_morphism(m)
        with pytest.raises(DomainError):
            pullback(m, QuadCocycle.zero(3, 2))

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_commutes_with_d_and_dcirc(self, rng, name):
        p = PAIRS[name]
        for _ in range(SAMPLES_PER_PAIR):
            m = automorphism(rng, name)
            for deg, real in ((1, False), (2, True), (2, False)):
                c = random_cochain(rng, p.n, deg, None if real else p.a_dim)
                pb = lambda x: pullback_cochain(x, m.S, m.U)  # noqa: E731
                assert pb(differential(p, c)) == differential(p, pb(c))
                assert pb(dcirc(p, c)) == dcirc(p, pb(c))

    @pytest.mark.parametrize("name", sorted(PAIRS))
    def test_commutes_with_action(self, rng, name):
        p = PAIRS[name]
        for _ in range(5):
            m = automorphism(rng, name)
            c = random_cocycle(rng, p)
            t = random_transform(rng, p)
            lhs = pullback(m, act(p, c, t))
            rhs = act(p, pullback(m, c), pullback_transform(m, t))
            assert lhs == rhs
            assert check_ZQplus(p, pullback(m, c))


def test_cochain_canonicalisation():
    c = Cochain(3, 2, None, {(1, 0): 2, (0, 2): 1, (2, 0): 1})
    assert c.values == {(0, 1): (F(-2),)}
    assert Cochain(3, 2, None, {(1, 1): 5}).is_zero()
    with pytest.raises(UsageError):
        Cochain(3, 2, 2, {(0, 1): (1,)})
