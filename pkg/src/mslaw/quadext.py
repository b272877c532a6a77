"""Standard models d_{alpha,gamma}(l, a) with D_{delta,epsilon}, balancedness, extraction, witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cochain import (
    Cochain, MorphismOfPairs, QuadCocycle, TransformPair, act, check_CQ, check_morphism,
    check_ZQplus, pullback,
)
from .errors import Check, DomainError, UsageError
from .lie import (
    LieAlgebra, MetricLieAlgebra, MetricSymplecticLieAlgebra, PairLDA, Subspace,
    bracket_span, canonical_isotropic_ideal, center, check_ad_invariant, check_jacobi,
    is_derivation, is_lie_homomorphism, is_nilpotent, is_skewsymmetric, lower_central_series,
)
from .linalg import (
    ZERO, Matrix, dot, jordan_chevalley, null_space, solve_vec, unit_vec, vcomb,
)

HALF = Fraction(1, 2)


# ---------------------------------------------------------------- standard model

@dataclass(frozen=True)
class StandardModel:
    """d_{alpha,gamma}(l, a) on l* + a + l (basis Z_1..Z_n, A_1..A_m, L_1..L_n) with D_{delta,epsilon}."""

    model: MetricLieAlgebra
    derivation: Matrix
    source_pair: PairLDA
    source_cocycle: QuadCocycle

    @property
    def n(self) -> int:
        return self.source_pair.n

    @property
    def m(self) -> int:
        return self.source_pair.a_dim

    @property
    def dim(self) -> int:
        return self.model.dim

    def dual_block(self) -> Subspace:
        return Subspace.coordinate(self.dim, range(self.n))

    def module_block(self) -> Subspace:
        return Subspace.coordinate(self.dim, range(self.n, self.n + self.m))

    def base_block(self) -> Subspace:
        return Subspace.coordinate(self.dim, range(self.n + self.m, self.dim))

    def symplectic(self) -> MetricSymplecticLieAlgebra:
        from .lie import symplectic_from_derivation
        return symplectic_from_derivation(self.model, self.derivation)


def model_labels(n: int, m: int) -> list[str]:
    return [f"Z{i + 1}" for i in range(n)] + [f"A{i + 1}" for i in range(m)] + \
        [f"L{i + 1}" for i in range(n)]


def model_gram(pair: PairLDA) -> Matrix:
    n, m = pair.n, pair.a_dim
    I, Z = Matrix.identity(n), Matrix.zeros
    return Matrix.block([
        [Z(n, n), Z(n, m), I],
        [Z(m, n), pair.a_gram, Z(m, n)],
        [I, Z(n, m), Z(n, n)],
    ])


def cochain_matrix(c: Cochain) -> Matrix:
    """Matrix of an a-valued 1-cochain: column j is c(L_j)."""
    return Matrix.from_columns([c.value((j,)) for j in range(c.n)], c.width)


def form_matrix(c: Cochain) -> Matrix:
    """Matrix E[j][k] = c(L_j, L_k) of a real 2-cochain."""
    return Matrix([[c.scalar((j, k)) for k in range(c.n)] for j in range(c.n)], cols=c.n)


def derivation_matrix(pair: PairLDA, delta: Cochain, epsilon: Cochain,
                      Dl: Matrix | None = None, Da: Matrix | None = None) -> Matrix:
    """D_{delta,epsilon}(D_l, D_a) = [[-D_l^T, -delta^*, eps_bar], [0, D_a, delta], [0, 0, D_l]]."""
    n, m = pair.n, pair.a_dim
    Dl = pair.Dl if Dl is None else Dl
    Da = pair.Da if Da is None else Da
    Z = Matrix.zeros
    delta_m = cochain_matrix(delta) if m else Z(0, n)
    delta_star = delta_m.T @ pair.a_gram
    eps_bar = form_matrix(epsilon).T
    return Matrix.block([
        [-Dl.T, -delta_star, eps_bar],
        [Z(m, n), Da, delta_m],
        [Z(n, n), Z(n, m), Dl],
    ])


def assemble_standard_model(pair: PairLDA, c: QuadCocycle) -> tuple[MetricLieAlgebra, Matrix]:
    """Bracket table and derivation with no membership checks (used to probe failures)."""
    for part in c.parts():
        if part.n != pair.n or (not part.real and part.target != pair.a_dim):
            raise UsageError("cocycle does not live on this pair")
    n, m = pair.n, pair.a_dim
    N = 2 * n + m
    Zi = lambda k: k  # noqa: E731
    Ai = lambda a: n + a  # noqa: E731
    Li = lambda j: n + m + j  # noqa: E731
    c3 = [[[ZERO] * N for _ in range(N)] for _ in range(N)]

    def put(i, j, v):
        for k, x in enumerate(v):
            c3[i][j][k] = x
            c3[j][i][k] = -x

    G = pair.a_gram
    lstruct = pair.l.structure
    alpha_vals = {(i, j): c.alpha.value((i, j)) for i in range(n) for j in range(n)}
    for i, j in combinations(range(n), 2):
        v = [ZERO] * N
        for k in range(n):
            v[Zi(k)] = c.gamma.scalar((i, j, k))
            v[Li(k)] = lstruct[i][j][k]
        for a, x in enumerate(alpha_vals[i, j]):
            v[Ai(a)] = x
        put(Li(i), Li(j), v)
    for i in range(n):
        for a in range(m):
            v = [ZERO] * N
            for k in range(n):
                v[Zi(k)] = -dot(G.row(a), alpha_vals[i, k])
            for b in range(m):
                v[Ai(b)] = pair.rho[i][b, a]
            put(Li(i), Ai(a), v)
    for a, b in combinations(range(m), 2):
        v = [ZERO] * N
        for k in range(n):
            v[Zi(k)] = dot(pair.rho[k].col(a), G.col(b))
        put(Ai(a), Ai(b), v)
    for i in range(n):
        for j in range(n):
            v = [ZERO] * N
            for k in range(n):
                v[Zi(k)] = -lstruct[i][k][j]
            put(Li(i), Zi(j), v)
    algebra = LieAlgebra(N, c3, model_labels(n, m))
    model = MetricLieAlgebra(algebra, model_gram(pair))
    return model, derivation_matrix(pair, c.delta, c.epsilon)


def standard_model_defects(pair: PairLDA, model: MetricLieAlgebra, D: Matrix) -> list[str]:
    """Names of the post-hoc assertions that fail for an assembled model."""
    defects = []
    jac = check_jacobi(model.algebra)
    if not jac:
        defects.append(jac.detail)
        # ad-invariance and derivation checks still make sense on the raw table
    inv = check_ad_invariant(model)
    if not inv:
        defects.append(inv.detail)
    if not is_derivation(model.algebra, D):
        defects.append("D is not a derivation")
    if not is_skewsymmetric(model.gram, D):
        defects.append("D is not skewsymmetric")
    S = jordan_chevalley(D)[0]
    expected = derivation_matrix(pair, Cochain.zero(pair.n, 1, pair.a_dim),
                                 Cochain.zero(pair.n, 2, None), pair.Dl_s, pair.Da_s)
    if S != expected:
        defects.append("semisimple part of D differs from D_{0,0}(D_l,s, D_a,s)")
    return defects


def build_standard_model(pair: PairLDA, c: QuadCocycle) -> StandardModel:
    ok = check_ZQplus(pair, c)
    if not ok:
        raise DomainError(f"cocycle is not in Z^2_Q+: {ok.detail}")
    model, D = assemble_standard_model(pair, c)
    defects = standard_model_defects(pair, model, D)
    if defects:
        raise AssertionError("standard model assertions failed: " + "; ".join(defects))
    return StandardModel(model, D, pair, c)


# ---------------------------------------------------------------- balanced cocycles

def _central_term(series: list[Subspace], k: int, n: int) -> Subspace:
    """l^k (1-based) from a lower central series list."""
    return series[k - 1] if k - 1 < len(series) else Subspace.zero(n)


def check_balanced(pair: PairLDA, c: QuadCocycle) -> Check:
    """Conditions (A_k) and (B_k) for k = 0..m, m least with l^{m+2} = 0."""
    for part in c.parts():
        if part.n != pair.n or (not part.real and part.target != pair.a_dim):
            raise UsageError("cocycle does not live on this pair")
    l, n, ma = pair.l, pair.n, pair.a_dim
    series = lower_central_series(l)
    if series[-1].dim != 0:
        raise DomainError("balanced conditions need a nilpotent base algebra")
    if not pair.Dl.is_invertible():
        raise DomainError("D_l is not bijective")
    if not pair.Da.is_invertible():
        raise DomainError("D_a is not bijective")
    if not pair.rho_trivial():
        raise DomainError("balanced conditions need a trivial representation")
    m_idx = next(m for m in range(n + 1) if _central_term(series, m + 2, n).dim == 0)
    z = center(l)
    G = pair.a_gram
    alpha, gamma = c.alpha, c.gamma
    for k in range(m_idx + 1):
        W = _central_term(series, k + 1, n)
        Wb = W.basis
        r = len(Wb)
        zb = z.intersect(W).basis
        s = len(zb)
        # (A_k): unknowns (x in span zb, y in a, w coordinates of Z_0 on W)
        if s:
            rows = []
            for i in range(n):
                ei = unit_vec(n, i)
                cols = [alpha.evaluate([ei, b]) for b in zb]
                for a in range(ma):
                    rows.append([v[a] for v in cols] + [ZERO] * (ma + r))
                for wj in Wb:
                    gam = [gamma.evaluate([ei, b, wj])[0] for b in zb]
                    aw = G.apply(alpha.evaluate([ei, wj]))
                    br = W.coordinates(l.bracket(ei, wj))
                    rows.append(gam + list(aw) + [-x for x in br])
            sol = null_space(Matrix(rows, cols=s + ma + r)) if rows else \
                [unit_vec(s + ma + r, t) for t in range(s + ma + r)]
            if any(any(v[:s]) for v in sol):
                return Check(False, (f"(A_{k})",))
        # (B_k): alpha on the kernel of the bracket map l (x) l^{k+1} -> l
        if r and ma:
            pairs = [(i, wj) for i in range(n) for wj in Wb]
            bmap = Matrix.from_columns([l.bracket(unit_vec(n, i), wj) for i, wj in pairs], n)
            kernel = null_space(bmap)
            images = [vcomb(kv, [alpha.evaluate([unit_vec(n, i), wj]) for i, wj in pairs], ma)
                      for kv in kernel]
            img = Subspace(ma, tuple(images))
            if not img.is_nondegenerate(G):
                return Check(False, (f"(B_{k})",))
    return Check(True)


# ---------------------------------------------------------------- quadratic extensions

@dataclass(frozen=True)
class QuadraticExtension:
    """g as an extension of l by a through the isotropic ideal i.

    Quotient coordinates: g/i has basis (a_reps, l_reps) mod i, a = i^perp/i has
    basis a_reps, l = g/i^perp has basis l_reps.  `basis` lists i, a_reps, l_reps
    as columns.
    """

    g: MetricLieAlgebra
    D: Matrix
    ideal: Subspace
    i_map: Matrix
    p_map: Matrix
    basis: Matrix
    pair: PairLDA

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def m(self) -> int:
        return self.pair.a_dim

    def split(self, x) -> tuple[tuple, tuple, tuple]:
        """Coordinates of x in (ideal basis, a reps, l reps)."""
        coords = self._inverse().apply(x)
        k = self.ideal.dim
        return coords[:k], coords[k:k + self.m], coords[k + self.m:]

    def _inverse(self) -> Matrix:
        inv = self.__dict__.get("_inv")
        if inv is None:
            inv = self.basis.inverse()
            object.__setattr__(self, "_inv", inv)
        return inv

    def reps_a(self) -> list[tuple]:
        k = self.ideal.dim
        return [self.basis.col(k + b) for b in range(self.m)]

    def reps_l(self) -> list[tuple]:
        k = self.ideal.dim
        return [self.basis.col(k + self.m + j) for j in range(self.n)]


def _extension_from(g: MetricLieAlgebra, D: Matrix, ideal: Subspace,
                    a_reps: list, l_reps: list) -> QuadraticExtension:
    N = g.dim
    k, m, n = ideal.dim, len(a_reps), len(l_reps)
    if k + m + n != N:
        raise DomainError("ideal, module and base representatives do not span the algebra")
    basis = Matrix.from_columns(list(ideal.basis) + list(a_reps) + list(l_reps), N)
    if not basis.is_invertible():
        raise DomainError("representatives are not complementary")
    inv = basis.inverse()

    def parts(x):
        cc = inv.apply(x)
        return cc[:k], cc[k:k + m], cc[k + m:]

    lstruct = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            lstruct[i][j] = list(parts(g.bracket(l_reps[i], l_reps[j]))[2])
    l = LieAlgebra(n, lstruct)
    Dl = Matrix.from_columns([parts(D.apply(v))[2] for v in l_reps], n)
    a_gram = Matrix([[g.inner(x, y) for y in a_reps] for x in a_reps], cols=m)
    da_cols = []
    for v in a_reps:
        _, a_part, l_part = parts(D.apply(v))
        if any(l_part):
            raise DomainError("i^perp is not D-invariant")
        da_cols.append(a_part)
    Da = Matrix.from_columns(da_cols, m)
    rho = []
    for x in l_reps:
        cols = []
        for v in a_reps:
            _, a_part, l_part = parts(g.bracket(x, v))
            if any(l_part):
                raise DomainError("i^perp is not an ideal")
            cols.append(a_part)
        rho.append(Matrix.from_columns(cols, m))
    pair = PairLDA(l, Dl, a_gram, Da, tuple(rho))
    i_map = Matrix.block([[Matrix.identity(m)], [Matrix.zeros(n, m)]])
    p_map = Matrix.block([[Matrix.zeros(n, m), Matrix.identity(n)]])
    ext = QuadraticExtension(g, D, ideal, i_map, p_map, basis, pair)
    ok = check_extension(ext)
    assert ok, f"quadratic extension invariants failed: {ok.detail}"
    return ext


def check_extension(ext: QuadraticExtension, D: Matrix | None = None) -> Check:
    """QuadraticExtension invariants, optionally for another derivation D."""
    g, i = ext.g, ext.ideal
    D = ext.D if D is None else D
    N = g.dim
    fails = []
    if not i.is_isotropic(g.gram):
        fails.append("ideal not isotropic")
    if not i.is_invariant(D):
        fails.append("ideal not D-invariant")
    if not bracket_span(g.algebra, Subspace.full(N), i) <= i:
        fails.append("not an ideal")
    perp = i.perp(g.gram)
    if not bracket_span(g.algebra, perp, perp) <= i:
        fails.append("i^perp/i not abelian")
    n, m = ext.n, ext.m
    if i.dim != n or perp.dim != n + m:
        fails.append("dimensions of i, i^perp inconsistent with l, a")
    # induced derivation on g/i in (a_reps, l_reps) coordinates
    reps = ext.reps_a() + ext.reps_l()
    cols = []
    for v in reps:
        _, a_part, l_part = ext.split(D.apply(v))
        cols.append(a_part + l_part)
    Dbar = Matrix.from_columns(cols, m + n)
    Dl = Matrix.from_columns([ext.split(D.apply(v))[2] for v in ext.reps_l()], n)
    Da = Matrix.from_columns([ext.split(D.apply(v))[1] for v in ext.reps_a()], m) \
        if m else Matrix.zeros(0)
    if Dbar @ ext.i_map != ext.i_map @ Da:
        fails.append("i does not intertwine derivations")
    if ext.p_map @ Dbar != Dl @ ext.p_map:
        fails.append("p does not intertwine derivations")
    if (ext.p_map @ ext.i_map).rows and not (ext.p_map @ ext.i_map).is_zero():
        fails.append("p o i is not zero")
    if ext.i_map.rank() != m or ext.p_map.rank() != n:
        fails.append("sequence 0 -> a -> g/i -> l -> 0 is not exact")
    for v in ext.reps_a():
        if not perp.contains(v):
            fails.append("image of i is not i^perp/i")
            break
    a_gram = Matrix([[g.inner(x, y) for y in ext.reps_a()] for x in ext.reps_a()], cols=m)
    if a_gram != ext.pair.a_gram:
        fails.append("i is not isometric")
    return Check.from_failures(fails)


def _derivation_preconditions(g: MetricLieAlgebra, D: Matrix) -> None:
    if D.shape != (g.dim, g.dim):
        raise UsageError("derivation has the wrong size")
    if not is_nilpotent(g.algebra):
        raise DomainError("algebra is not nilpotent")
    if not D.is_invertible():
        raise DomainError("derivation is not bijective")
    if not is_skewsymmetric(g.gram, D):
        raise DomainError("derivation is not skewsymmetric")
    if not is_derivation(g.algebra, D):
        raise DomainError("map is not a derivation")


def canonical_extension_of(g: MetricLieAlgebra, D: Matrix) -> QuadraticExtension:
    """The balanced extension through the canonical isotropic ideal."""
    _derivation_preconditions(g, D)
    ideal = canonical_isotropic_ideal(g)
    perp = ideal.perp(g.gram)
    a_reps = ideal.complement_in(perp)
    l_reps = perp.complement_in(Subspace.full(g.dim))
    return _extension_from(g, D, ideal, a_reps, l_reps)


def standard_extension(sm: StandardModel) -> QuadraticExtension:
    """The extension of a standard model through its l*-block, in model coordinates."""
    n, m, N = sm.n, sm.m, sm.dim
    a_reps = [unit_vec(N, n + a) for a in range(m)]
    l_reps = [unit_vec(N, n + m + j) for j in range(n)]
    return _extension_from(sm.model, sm.derivation, sm.dual_block(), a_reps, l_reps)


# ---------------------------------------------------------------- extraction

def canonical_section(ext: QuadraticExtension) -> Matrix:
    """Columns s(L_j) spanning a D_s-invariant isotropic complement of i^perp."""
    N, n, m = ext.g.dim, ext.n, ext.m
    k = n + m  # coordinates of i^perp in the extension basis
    inv = ext._inverse()
    Ds = jordan_chevalley(ext.D)[0]
    T = inv @ Ds @ ext.basis
    T11 = T.submatrix(range(k), range(k))
    T12 = T.submatrix(range(k), range(k, N))
    T22 = T.submatrix(range(k, N), range(k, N))
    # complement = columns of [Y; I]; invariance: T11 Y - Y T22 = -T12
    rows, rhs = [], []
    for r in range(k):
        for c in range(n):
            row = [ZERO] * (k * n)
            for t in range(k):
                row[t * n + c] += T11[r, t]
            for t in range(n):
                row[r * n + t] -= T22[t, c]
            rows.append(row)
            rhs.append(-T12[r, c])
    if rows:
        y = solve_vec(Matrix(rows, cols=k * n), rhs)
        if y is None:
            raise AssertionError("no D_s-invariant complement found; D_s not semisimple?")
    else:
        y = ()
    W = []
    for c in range(n):
        coords = [y[r * n + c] for r in range(k)] + [ZERO] * n
        coords[k + c] = Fraction(1)
        W.append(ext.basis.apply(coords))
    # isotropize against the pairing of i with W
    G = ext.g.gram
    ib = ext.ideal.basis
    pairing = Matrix([[dot(u, G.apply(w)) for w in W] for u in ib], cols=n)
    Gw = Matrix([[dot(u, G.apply(w)) for w in W] for u in W], cols=n)
    C = (pairing.inverse().T @ Gw) * (-HALF) if n else Matrix.zeros(0)
    section = [vcomb([C[u, j] for u in range(n)], ib, N) for j in range(n)]
    section = [tuple(a + b for a, b in zip(W[j], section[j])) for j in range(n)]
    return Matrix.from_columns(section, N) if n else Matrix.zeros(N, 0)


def _validate_section(ext: QuadraticExtension, S: Matrix) -> None:
    N, n = ext.g.dim, ext.n
    if S.shape != (N, n):
        raise UsageError(f"section must be {N}x{n}")
    cols = S.columns()
    for j, v in enumerate(cols):
        if ext.split(v)[2] != unit_vec(n, j):
            raise DomainError("section is not a right inverse of the projection onto l")
    if not (S.T @ ext.g.gram @ S).is_zero():
        raise DomainError("section image is not isotropic")
    Ds = jordan_chevalley(ext.D)[0]
    image = Subspace(N, tuple(cols))
    if not image.is_invariant(Ds):
        raise DomainError("section image is not D_s-invariant")


def extract_cocycle(ext: QuadraticExtension, section: Matrix | None = None) -> QuadCocycle:
    """Cocycle (alpha, gamma, delta, epsilon) of an extension relative to an admissible section."""
    if section is None:
        section = canonical_section(ext)
    _validate_section(ext, section)
    g, D, G = ext.g, ext.D, ext.g.gram
    N, n, m = g.dim, ext.n, ext.m
    s = section.columns()
    lstruct = ext.pair.l.structure
    # complement V_a of i + s(l), and t: a -> V_a
    Va = (ext.ideal + Subspace(N, tuple(s))).perp(G)
    if Va.dim != m:
        raise AssertionError("module complement has the wrong dimension")
    ib = list(ext.ideal.basis)
    decomp = Matrix.from_columns(ib + list(Va.basis), N) if (ib or Va.basis) else None
    t_of = []
    for v in ext.reps_a():
        coeffs = solve_vec(decomp, v)
        if coeffs is None:
            raise AssertionError("module representative not in i + V_a")
        t_of.append(vcomb(coeffs[len(ib):], Va.basis, N))
    alpha, gamma, delta, eps = {}, {}, {}, {}
    brackets = {(i, j): g.bracket(s[i], s[j]) for i, j in combinations(range(n), 2)}
    for (i, j), br in brackets.items():
        corr = vcomb(lstruct[i][j], s, N)
        diff = tuple(a - b for a, b in zip(br, corr))
        _, a_part, l_part = ext.split(diff)
        assert not any(l_part), "alpha has a component outside i^perp"
        alpha[i, j] = a_part
        for k in range(j + 1, n):
            gamma[i, j, k] = dot(br, G.apply(s[k]))
    Ds_cols = [D.apply(v) for v in s]
    a_inv = ext.pair.a_gram.inverse() if m else None
    for j in range(n):
        if m:
            pairing = [dot(t, G.apply(Ds_cols[j])) for t in t_of]
            delta[(j,)] = a_inv.apply(pairing)
        for k in range(j + 1, n):
            eps[j, k] = dot(Ds_cols[j], G.apply(s[k]))
    c = QuadCocycle(
        Cochain(n, 2, m, alpha), Cochain(n, 3, None, gamma),
        Cochain(n, 1, m, delta), Cochain(n, 2, None, eps))
    ok = check_ZQplus(ext.pair, c)
    assert ok, f"extracted cocycle is not in Z^2_Q+: {ok.detail}"
    return c


# ---------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class EquivalenceWitness:
    transform: TransformPair


@dataclass(frozen=True)
class IsomorphismWitness:
    morphism: MorphismOfPairs
    transform: TransformPair


def equivalence_map(pair: PairLDA, t: TransformPair) -> Matrix:
    """F = [[id, -tau^*, sigma_bar - 1/2 tau^* tau], [0, id, tau], [0, 0, id]]."""
    n, m = pair.n, pair.a_dim
    T = cochain_matrix(t.tau) if m else Matrix.zeros(0, n)
    tau_star = T.T @ pair.a_gram
    sigma_bar = form_matrix(t.sigma).T
    I, Z = Matrix.identity, Matrix.zeros
    return Matrix.block([
        [I(n), -tau_star, sigma_bar - (tau_star @ T) * HALF],
        [Z(m, n), I(m), T],
        [Z(n, n), Z(n, m), I(n)],
    ])


def _is_isometry(G1: Matrix, G2: Matrix, F: Matrix) -> bool:
    return F.T @ G2 @ F == G1


def verify_equivalence(pair: PairLDA, c1: QuadCocycle, c2: QuadCocycle,
                       w: EquivalenceWitness) -> bool:
    """c1 == c2 . (tau, sigma); cross-checks the triangular map F when true."""
    for c in (c1, c2):
        ok = check_ZQplus(pair, c)
        if not ok:
            raise DomainError(f"cocycle not in Z^2_Q+: {ok.detail}")
    t = w.transform
    if not check_CQ(pair, t):
        raise DomainError("witness is not in C^1_Q")
    equal = act(pair, c2, t) == c1
    if equal:
        g1, D1 = assemble_standard_model(pair, c1)
        g2, D2 = assemble_standard_model(pair, c2)
        F = equivalence_map(pair, t)
        n = pair.n
        assert _is_isometry(g1.gram, g2.gram, F), "F is not an isometry"
        assert is_lie_homomorphism(g1.algebra, g2.algebra, F), "F is not a Lie homomorphism"
        assert F @ D1 == D2 @ F, "F does not intertwine the derivations"
        dual = Subspace.coordinate(g1.dim, range(n))
        assert dual.image(F) == dual, "F does not preserve l*"
        assert D1.charpoly() == D2.charpoly()
    return equal


def verify_isomorphism(p1: PairLDA, c1: QuadCocycle, p2: PairLDA, c2: QuadCocycle,
                       w: IsomorphismWitness) -> bool:
    """c1 == ((S,U)^* c2) . (tau, sigma) for balanced cocycles; cross-checks phi o F."""
    g1, D1 = assemble_standard_model(p1, c1)
    g2, D2 = assemble_standard_model(p2, c2)
    if (p1.n, p1.a_dim) != (p2.n, p2.a_dim) or D1.charpoly() != D2.charpoly():
        return False
    for p, c in ((p1, c1), (p2, c2)):
        ok = check_ZQplus(p, c)
        if not ok:
            raise DomainError(f"cocycle not in Z^2_Q+: {ok.detail}")
        bal = check_balanced(p, c)
        if not bal:
            raise DomainError(f"cocycle is not balanced: {bal.detail}")
    mor = w.morphism
    if mor.source != p1 or mor.target != p2:
        raise DomainError("witness morphism does not go between the given pairs")
    ok = check_morphism(mor)
    if not ok:
        raise DomainError(f"invalid morphism of pairs: {ok.detail}")
    if not mor.S.is_invertible() or not mor.U.is_invertible():
        raise DomainError("morphism of pairs is not bijective")
    if not check_CQ(p1, w.transform):
        raise DomainError("witness transform is not in C^1_Q")
    pulled = pullback(mor, c2)
    equal = act(p1, pulled, w.transform) == c1
    if equal:
        F = equivalence_map(p1, w.transform)
        phi = Matrix.block_diag(mor.S.T.inverse(), mor.U.inverse(), mor.S)
        Phi = phi @ F
        assert _is_isometry(g1.gram, g2.gram, Phi), "phi o F is not an isometry"
        assert is_lie_homomorphism(g1.algebra, g2.algebra, Phi), "phi o F is not a Lie map"
        assert Phi @ D1 == D2 @ Phi, "phi o F does not intertwine the derivations"
    return equal


def _space_of(obj):
    if isinstance(obj, StandardModel):
        return obj.model, obj.derivation
    if isinstance(obj, QuadraticExtension):
        return obj.g, obj.D
    if isinstance(obj, MetricSymplecticLieAlgebra):
        return obj.metric_algebra, obj.derivation
    if isinstance(obj, MetricLieAlgebra):
        return obj, None
    if isinstance(obj, tuple) and len(obj) == 2:
        return obj
    raise UsageError("expected a model, extension or (metric algebra, derivation) pair")


def verify_decomposition(space, first: Subspace, second: Subspace) -> Check:
    """Orthogonal, D-invariant, non-degenerate, mutually commuting ideals spanning the space."""
    g, D = _space_of(space)
    N = g.dim
    fails = []
    if first.dim == 0 or second.dim == 0:
        fails.append("a summand is zero")
    if (first + second).dim != N or first.dim + second.dim != N:
        fails.append("summands do not form a direct sum of the whole space")
    G = g.gram
    if any(dot(u, G.apply(v)) for u in first.basis for v in second.basis):
        fails.append("summands are not orthogonal")
    full = Subspace.full(N)
    for name, V in (("first", first), ("second", second)):
        if not bracket_span(g.algebra, full, V) <= V:
            fails.append(f"{name} summand is not an ideal")
        if D is not None and not V.is_invariant(D):
            fails.append(f"{name} summand is not D-invariant")
        if not V.is_nondegenerate(G):
            fails.append(f"{name} summand is degenerate")
    if bracket_span(g.algebra, first, second).dim:
        fails.append("summands do not commute")
    return Check.from_failures(fails)


__all__ = [
    "StandardModel", "QuadraticExtension", "EquivalenceWitness", "IsomorphismWitness",
    "model_labels", "model_gram", "derivation_matrix", "assemble_standard_model",
    "standard_model_defects", "build_standard_model", "check_balanced", "check_extension",
    "canonical_extension_of", "standard_extension", "canonical_section", "extract_cocycle",
    "equivalence_map", "verify_equivalence", "verify_isomorphism", "verify_decomposition",
]
