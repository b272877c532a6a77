"""Lie algebras from structure constants, metrics, derivations and subspaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import Check, DomainError, UsageError
from .linalg import (
    ZERO, Matrix, Vec, dot, is_zero_vec, jordan_chevalley, null_space, q, span_basis,
    unit_vec, vadd, vcomb, vec, vscale, zero_vec,
)


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n stored by its reduced row echelon basis, so equality is structural."""

    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        canon = tuple(span_basis(self.basis, self.ambient_dim))
        object.__setattr__(self, "basis", canon)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(ambient_dim, tuple(vec(v) for v in vectors))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vec(n, i) for i in range(n)))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, tuple(unit_vec(n, i) for i in indices))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(b) if x) for b in self.basis)

    def coordinates(self, v: Sequence) -> Vec:
        """Coordinates of v in the stored basis; v must lie in the subspace."""
        v = vec(v)
        c = tuple(v[p] for p in self.pivots)
        if vcomb(c, self.basis, self.ambient_dim) != v:
            raise DomainError("vector is not in the subspace")
        return c

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        c = tuple(v[p] for p in self.pivots)
        return vcomb(c, self.basis, self.ambient_dim) == v

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        n = self.ambient_dim
        cols = list(self.basis) + [vscale(-1, b) for b in other.basis]
        sol = null_space(Matrix.from_columns(cols, n))
        k = self.dim
        return Subspace(n, tuple(vcomb(s[:k], self.basis, n) for s in sol))

    def perp(self, gram: Matrix) -> "Subspace":
        """Orthogonal complement with respect to a bilinear form."""
        n = self.ambient_dim
        if not self.basis:
            return Subspace.full(n)
        rows = [gram.T.apply(b) for b in self.basis]
        return Subspace(n, tuple(null_space(Matrix(rows, cols=n))))

    def image(self, M: Matrix) -> "Subspace":
        return Subspace(M.rows, tuple(M.apply(b) for b in self.basis))

    def is_invariant(self, M: Matrix) -> bool:
        return all(self.contains(M.apply(b)) for b in self.basis)

    def gram_restricted(self, gram: Matrix) -> Matrix:
        return Matrix([[dot(a, gram.apply(b)) for b in self.basis] for a in self.basis],
                      cols=self.dim)

    def is_isotropic(self, gram: Matrix) -> bool:
        return self.gram_restricted(gram).is_zero()

    def is_nondegenerate(self, gram: Matrix) -> bool:
        return self.gram_restricted(gram).rank() == self.dim

    def complement_in(self, ambient: "Subspace") -> list[Vec]:
        """Deterministic complement inside `ambient`: greedy pick from its RREF basis."""
        chosen: list[Vec] = []
        current = self
        for b in ambient.basis:
            if not current.contains(b):
                chosen.append(b)
                current = Subspace(self.ambient_dim, current.basis + (b,))
        return chosen

    def as_matrix(self) -> Matrix:
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def __repr__(self) -> str:
        rows = ", ".join("(" + " ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(dim {self.dim} in Q^{self.ambient_dim}: {rows})"


# ---------------------------------------------------------------- Lie algebras

class LieAlgebra:
    """Lie algebra given by dense structure constants c[i][j][k]."""

    def __init__(self, dim: int, structure=None, labels: Sequence[str] | None = None):
        if dim < 0:
            raise UsageError("negative dimension")
        if structure is None:
            c = tuple(tuple(zero_vec(dim) for _ in range(dim)) for _ in range(dim))
        else:
            if len(structure) != dim or any(len(r) != dim for r in structure):
                raise UsageError("structure constants must be dim x dim x dim")
            c = tuple(tuple(vec(v) for v in r) for r in structure)
            if any(len(v) != dim for r in c for v in r):
                raise UsageError("structure constants must be dim x dim x dim")
        for i in range(dim):
            if any(c[i][i]):
                raise UsageError(f"bracket of e{i + 1} with itself must be zero")
            for j in range(i + 1, dim):
                if c[i][j] != vscale(-1, c[j][i]):
                    raise UsageError(f"structure constants not antisymmetric at ({i + 1},{j + 1})")
        self.dim = dim
        self.structure = c
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != dim:
            raise UsageError("one label per basis vector required")
        self._pairs = tuple((i, j, c[i][j]) for i in range(dim) for j in range(i + 1, dim)
                            if any(c[i][j]))

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, labels=None) -> "LieAlgebra":
        """Build from {(i, j): vector or {k: coef}} with 0-based indices, i != j."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            if i == j:
                raise UsageError("bracket of equal indices must be zero")
            if isinstance(value, dict):
                v = [ZERO] * dim
                for k, coef in value.items():
                    v[k] += q(coef)
            else:
                v = list(vec(value))
                if len(v) != dim:
                    raise UsageError("bracket vector has wrong length")
            for k in range(dim):
                c[i][j][k] += v[k]
                c[j][i][k] -= v[k]
        return cls(dim, c, labels)

    @classmethod
    def abelian(cls, n: int, labels=None) -> "LieAlgebra":
        return cls(n, None, labels)

    @classmethod
    def heisenberg(cls) -> "LieAlgebra":
        return cls.from_brackets(3, {(0, 1): {2: 1}})

    def basis_bracket(self, i: int, j: int) -> Vec:
        return self.structure[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        out = [ZERO] * self.dim
        for i, j, v in self._pairs:
            f = x[i] * y[j] - x[j] * y[i]
            if f:
                for k, a in enumerate(v):
                    if a:
                        out[k] += f * a
        return tuple(out)

    @property
    def nonzero_brackets(self) -> tuple:
        """(i, j, [e_i, e_j]) for i < j with nonzero bracket."""
        return self._pairs

    def ad(self, i: int) -> Matrix:
        """Matrix of ad(e_i): column j is [e_i, e_j]."""
        return Matrix.from_columns([self.structure[i][j] for j in range(self.dim)], self.dim)

    def ad_of(self, x: Sequence) -> Matrix:
        return Matrix.from_columns(
            [self.bracket(x, unit_vec(self.dim, j)) for j in range(self.dim)], self.dim)

    def is_abelian(self) -> bool:
        return not self._pairs

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i + 1}"

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim \
            and self.structure == other.structure

    def __hash__(self) -> int:
        return hash((self.dim, self.structure))

    def __repr__(self) -> str:
        parts = [f"[{self.label(i)},{self.label(j)}]={_fmt_vec(v, self)}"
                 for i, j, v in self._pairs]
        return f"LieAlgebra(dim {self.dim}{': ' if parts else ''}{', '.join(parts)})"


def _fmt_vec(v: Vec, g: LieAlgebra) -> str:
    terms = [f"{c}*{g.label(k)}" if c != 1 else g.label(k) for k, c in enumerate(v) if c]
    return "+".join(terms) or "0"


def _need_square(D: Matrix, n: int, what: str = "matrix") -> None:
    if D.shape != (n, n):
        raise UsageError(f"{what} must be {n}x{n}, got {D.rows}x{D.cols}")


# ---------------------------------------------------------------- metric types

@dataclass(frozen=True)
class MetricLieAlgebra:
    """Lie algebra with a non-degenerate symmetric form (ad-invariance checked separately)."""

    algebra: LieAlgebra
    gram: Matrix

    def __post_init__(self):
        _need_square(self.gram, self.algebra.dim, "gram")
        if not self.gram.is_symmetric():
            raise UsageError("gram matrix must be symmetric")
        if self.gram.rank() != self.algebra.dim:
            raise UsageError("gram matrix must be non-degenerate")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.gram.apply(y))

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        return self.algebra.bracket(x, y)


@dataclass(frozen=True)
class MetricSymplecticLieAlgebra:
    """Nilpotent metric Lie algebra with omega = gram * D for a skew bijective derivation D."""

    metric_algebra: MetricLieAlgebra
    omega: Matrix
    derivation: Matrix

    def __post_init__(self):
        m = self.metric_algebra
        problems = _derivation_problems(m, self.derivation)
        if self.omega != m.gram @ self.derivation:
            problems.append("omega differs from gram*derivation")
        if problems:
            raise DomainError("; ".join(problems))

    @property
    def dim(self) -> int:
        return self.metric_algebra.dim


@dataclass(frozen=True)
class PairLDA:
    """Base Lie algebra with derivation, plus an orthogonal module (a, <,>_a, D_a, rho)."""

    l: LieAlgebra
    Dl: Matrix
    a_gram: Matrix
    Da: Matrix
    rho: tuple = field(default=None)

    def __post_init__(self):
        n = self.l.dim
        _need_square(self.Dl, n, "Dl")
        m = self.a_gram.rows
        _need_square(self.a_gram, m, "a_gram")
        _need_square(self.Da, m, "Da")
        if self.rho is None:
            object.__setattr__(self, "rho", tuple(Matrix.zeros(m) for _ in range(n)))
        else:
            rho = tuple(self.rho)
            if len(rho) != n:
                raise UsageError("rho needs one matrix per basis vector of l")
            for r in rho:
                _need_square(r, m, "rho(e_i)")
            object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return self.l.dim

    @property
    def a_dim(self) -> int:
        return self.a_gram.rows

    @cached_property
    def Dl_s(self) -> Matrix:
        return jordan_chevalley(self.Dl)[0]

    @cached_property
    def Da_s(self) -> Matrix:
        return jordan_chevalley(self.Da)[0]

    def rho_of(self, x: Sequence) -> Matrix:
        m = self.a_dim
        out = Matrix.zeros(m)
        for c, r in zip(x, self.rho):
            if c:
                out = out + r * c
        return out

    def rho_trivial(self) -> bool:
        return all(r.is_zero() for r in self.rho)

    def a_inner(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.a_gram.apply(y))


# ---------------------------------------------------------------- checks

def check_jacobi(g: LieAlgebra) -> Check:
    n = g.dim
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = (unit_vec(n, t) for t in (i, j, k))
        total = vadd(vadd(g.bracket(ei, g.structure[j][k]), g.bracket(ej, g.structure[k][i])),
                     g.bracket(ek, g.structure[i][j]))
        if not is_zero_vec(total):
            return Check(False, (f"jacobi fails on ({g.label(i)},{g.label(j)},{g.label(k)})",))
    return Check(True)


def check_ad_invariant(m: MetricLieAlgebra) -> Check:
    g, G = m.algebra, m.gram
    n = g.dim
    cols = G.columns()
    rows = [G.row(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            cij = g.structure[i][j]
            for k in range(n):
                if dot(cij, cols[k]) != dot(rows[i], g.structure[j][k]):
                    return Check(False, (
                        f"ad-invariance fails on ({g.label(i)},{g.label(j)},{g.label(k)})",))
    return Check(True)


def derivation_defect(g: LieAlgebra, D: Matrix) -> tuple[int, int] | None:
    """First basis pair (i, j) where the derivation rule fails, else None."""
    _need_square(D, g.dim, "derivation")
    n = g.dim
    images = D.columns()
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D.apply(g.structure[i][j])
            rhs = vadd(g.bracket(images[i], unit_vec(n, j)), g.bracket(unit_vec(n, i), images[j]))
            if lhs != rhs:
                return i, j
    return None


def is_derivation(g: LieAlgebra, D: Matrix) -> bool:
    return derivation_defect(g, D) is None


def is_skewsymmetric(gram: Matrix, D: Matrix) -> bool:
    return (gram @ D + D.T @ gram).is_zero()


def is_lie_homomorphism(g1: LieAlgebra, g2: LieAlgebra, F: Matrix) -> bool:
    if F.shape != (g2.dim, g1.dim):
        raise UsageError("homomorphism matrix has the wrong shape")
    cols = F.columns()
    for i in range(g1.dim):
        for j in range(i + 1, g1.dim):
            if F.apply(g1.structure[i][j]) != g2.bracket(cols[i], cols[j]):
                return False
    return True


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    n = g.dim
    series = [Subspace.full(n)]
    for _ in range(n + 1):
        cur = series[-1]
        if cur.dim == 0:
            break
        nxt = Subspace(n, tuple(g.bracket(unit_vec(n, i), w)
                                for i in range(n) for w in cur.basis))
        if nxt == cur:
            break
        series.append(nxt)
    return series


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    rows = [[g.structure[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return Subspace(n, tuple(null_space(Matrix(rows, cols=n)))) if n else Subspace.zero(0)


def bracket_span(g: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace(g.dim, tuple(g.bracket(u, v) for u in U.basis for v in V.basis))


def canonical_isotropic_ideal(m: MetricLieAlgebra) -> Subspace:
    """Sum over k of g^{k+1} intersected with its orthogonal complement."""
    g = m.algebra
    series = lower_central_series(g)
    if series[-1].dim != 0:
        raise DomainError("canonical isotropic ideal needs a nilpotent Lie algebra")
    ideal = Subspace.zero(g.dim)
    for term in series:
        ideal = ideal + term.intersect(term.perp(m.gram))
    assert ideal.is_isotropic(m.gram), "canonical ideal is not isotropic"
    perp = ideal.perp(m.gram)
    assert bracket_span(g, perp, perp) <= ideal, "quotient i^perp / i is not abelian"
    return ideal


def omega_closed(g: LieAlgebra, omega: Matrix) -> Check:
    """d omega (X,Y,Z) = -w([X,Y],Z) + w([X,Z],Y) - w([Y,Z],X) on basis triples."""
    n = g.dim
    _need_square(omega, n, "omega")
    w = lambda x, j: dot(x, omega.col(j))  # noqa: E731  w(x, e_j)
    c = g.structure
    for i, j, k in combinations(range(n), 3):
        val = -w(c[i][j], k) + w(c[i][k], j) - w(c[j][k], i)
        if val:
            return Check(False, (f"d omega nonzero on ({g.label(i)},{g.label(j)},{g.label(k)})",))
    return Check(True)


def _derivation_problems(m: MetricLieAlgebra, D: Matrix) -> list[str]:
    _need_square(D, m.dim, "derivation")
    problems = []
    if not is_nilpotent(m.algebra):
        problems.append("algebra is not nilpotent")
    if not D.is_invertible():
        problems.append("derivation is not bijective")
    if not is_skewsymmetric(m.gram, D):
        problems.append("derivation is not skewsymmetric")
    if not is_derivation(m.algebra, D):
        problems.append("map is not a derivation")
    return problems


def symplectic_from_derivation(m: MetricLieAlgebra, D: Matrix) -> MetricSymplecticLieAlgebra:
    problems = _derivation_problems(m, D)
    if problems:
        raise DomainError("; ".join(problems))
    omega = m.gram @ D
    assert omega.is_antisymmetric(), "omega is not skewsymmetric"
    assert omega.rank() == m.dim, "omega is degenerate"
    assert omega_closed(m.algebra, omega), "omega is not closed"
    return MetricSymplecticLieAlgebra(m, omega, D)


def derivation_from_symplectic(m: MetricLieAlgebra, omega: Matrix) -> Matrix:
    _need_square(omega, m.dim, "omega")
    if not omega.is_antisymmetric():
        raise DomainError("omega is not skewsymmetric")
    if omega.rank() != m.dim:
        raise DomainError("omega is degenerate")
    closed = omega_closed(m.algebra, omega)
    if not closed:
        raise DomainError(closed.detail)
    D = m.gram.inverse() @ omega
    assert D.is_invertible() and is_skewsymmetric(m.gram, D) and is_derivation(m.algebra, D), \
        "recovered map is not a bijective skewsymmetric derivation"
    return D


def direct_sum(m1: MetricLieAlgebra, m2: MetricLieAlgebra) -> MetricLieAlgebra:
    n1, n2 = m1.dim, m2.dim
    n = n1 + n2
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for off, g in ((0, m1.algebra), (n1, m2.algebra)):
        for i, j, v in g.nonzero_brackets:
            for k, a in enumerate(v):
                c[off + i][off + j][off + k] = a
                c[off + j][off + i][off + k] = -a
    labels = None
    if m1.algebra.labels or m2.algebra.labels:
        labels = [m1.algebra.label(i) for i in range(n1)] + \
                 [m2.algebra.label(i) for i in range(n2)]
    return MetricLieAlgebra(LieAlgebra(n, c, labels), Matrix.block_diag(m1.gram, m2.gram))


def check_pair(p: PairLDA) -> Check:
    """Verify the orthogonal-module axioms; failures are tagged."""
    fails = []
    jac = check_jacobi(p.l)
    if not jac:
        fails.append(f"l-jacobi: {jac.detail}")
    if derivation_defect(p.l, p.Dl) is not None:
        fails.append("Dl-derivation")
    G = p.a_gram
    if not G.is_symmetric():
        fails.append("agram-symmetric")
    elif G.rank() != p.a_dim:
        fails.append("agram-nondegenerate")
    if not is_skewsymmetric(G, p.Da):
        fails.append("Da-skew")
    n = p.n
    for i in range(n):
        for j in range(i + 1, n):
            lhs = p.rho_of(p.l.structure[i][j])
            ri, rj = p.rho[i], p.rho[j]
            if lhs != ri @ rj - rj @ ri:
                fails.append(f"rho-hom at ({i + 1},{j + 1})")
                break
        else:
            continue
        break
    for i, r in enumerate(p.rho):
        if not is_skewsymmetric(G, r):
            fails.append(f"rho-skew at e{i + 1}")
            break
    for i in range(n):
        lhs = p.rho_of(p.Dl.col(i))
        if lhs != p.Da @ p.rho[i] - p.rho[i] @ p.Da:
            fails.append(f"rho-compat at e{i + 1}")
            break
    return Check.from_failures(fails)


__all__ = [
    "Subspace", "LieAlgebra", "MetricLieAlgebra", "MetricSymplecticLieAlgebra", "PairLDA",
    "check_jacobi", "check_ad_invariant", "is_derivation", "derivation_defect", "is_skewsymmetric",
    "is_lie_homomorphism", "lower_central_series", "is_nilpotent", "center", "bracket_span",
    "canonical_isotropic_ideal", "omega_closed", "symplectic_from_derivation",
    "derivation_from_symplectic", "direct_sum", "check_pair",
]
