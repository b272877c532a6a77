"""Alternating cochains on a pair (l, D_l, a) and the operations on quadratic cocycles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import Check, DomainError, UsageError
from .lie import PairLDA, is_lie_homomorphism
from .linalg import ZERO, Matrix, Vec, dot, q, vec, zero_vec

HALF = Fraction(1, 2)


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Sign of the sorting permutation and the sorted tuple; None on repeated indices."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


class Cochain:
    """Alternating p-linear map on l = Q^n with values in a = Q^target, or in Q when target is None.

    Values are stored on strictly increasing index tuples (0-based).
    """

    __slots__ = ("n", "degree", "target", "values")

    def __init__(self, n: int, degree: int, target: int | None,
                 values: Mapping | None = None):
        if n < 0 or degree < 0:
            raise UsageError("cochain dimensions must be non-negative")
        if target is not None and target < 0:
            raise UsageError("target dimension must be non-negative")
        self.n = n
        self.degree = degree
        self.target = target
        width = 1 if target is None else target
        acc: dict[tuple[int, ...], list[Fraction]] = {}
        for key, value in (values or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise UsageError(f"index tuple {key} does not match degree {degree}")
            if any(not 0 <= k < n for k in key):
                raise UsageError(f"index tuple {key} out of range for dim {n}")
            v = (q(value),) if target is None and not isinstance(value, (tuple, list)) \
                else vec(value)
            if len(v) != width:
                raise UsageError(f"value at {key} has length {len(v)}, target dim is {width}")
            canon = _sort_sign(key)
            if canon is None:
                continue
            sign, skey = canon
            slot = acc.setdefault(skey, [ZERO] * width)
            for t, x in enumerate(v):
                slot[t] += sign * x
        self.values = {k: tuple(v) for k, v in sorted(acc.items()) if any(v)}

    # constructors
    @classmethod
    def zero(cls, n: int, degree: int, target: int | None) -> "Cochain":
        return cls(n, degree, target)

    @classmethod
    def form(cls, n: int, *indices: int, coef=1) -> "Cochain":
        """Real form coef * sigma^{i1...ip} (0-based indices)."""
        return cls(n, len(indices), None, {tuple(indices): coef})

    def tensor(self, a_vec: Sequence) -> "Cochain":
        """Real form times a fixed vector of a."""
        if not self.real:
            raise UsageError("tensor expects a real-valued form")
        a_vec = vec(a_vec)
        return Cochain(self.n, self.degree, len(a_vec),
                       {k: tuple(v[0] * x for x in a_vec) for k, v in self.values.items()})

    # basic properties
    @property
    def real(self) -> bool:
        return self.target is None

    @property
    def width(self) -> int:
        return 1 if self.target is None else self.target

    def is_zero(self) -> bool:
        return not self.values

    def same_space(self, other: "Cochain") -> bool:
        return (self.n, self.degree, self.target) == (other.n, other.degree, other.target)

    def _require_same(self, other: "Cochain") -> None:
        if not isinstance(other, Cochain) or not self.same_space(other):
            raise UsageError("cochains live in different spaces")

    def value(self, idx: Sequence[int]) -> Vec:
        """Value on basis vectors e_idx in any order."""
        canon = _sort_sign(idx)
        if canon is None:
            return zero_vec(self.width)
        sign, key = canon
        v = self.values.get(key)
        if v is None:
            return zero_vec(self.width)
        return v if sign > 0 else tuple(-x for x in v)

    def scalar(self, idx: Sequence[int]) -> Fraction:
        """Value of a real cochain."""
        return self.value(idx)[0]

    def evaluate(self, vectors: Sequence[Sequence]) -> Vec:
        """Value on arbitrary vectors of l, by expansion into minors."""
        if len(vectors) != self.degree:
            raise UsageError("wrong number of arguments")
        out = [ZERO] * self.width
        if self.degree == 0:
            return self.value(())
        for key, v in self.values.items():
            det = Matrix([[vectors[c][r] for c in range(self.degree)] for r in key]).det()
            if det:
                for t, x in enumerate(v):
                    out[t] += det * x
        return tuple(out)

    # linear structure
    def __add__(self, other: "Cochain") -> "Cochain":
        self._require_same(other)
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = tuple(a + b for a, b in zip(vals.get(k, zero_vec(self.width)), v))
        return Cochain(self.n, self.degree, self.target, vals)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        c = q(c)
        return Cochain(self.n, self.degree, self.target,
                       {k: tuple(c * x for x in v) for k, v in self.values.items()})

    def __mul__(self, c) -> "Cochain":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.same_space(other) and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.n, self.degree, self.target, tuple(self.values.items())))

    def __repr__(self) -> str:
        kind = "R" if self.real else f"a^{self.target}"
        if not self.values:
            return f"Cochain(deg {self.degree}, {kind}, 0)"
        terms = []
        for k, v in self.values.items():
            idx = "".join(str(i + 1) for i in k)
            val = str(v[0]) if self.real else "(" + ",".join(str(x) for x in v) + ")"
            terms.append(f"{val}*s{idx}")
        return f"Cochain(deg {self.degree}, {kind}, {' + '.join(terms)})"


def sigma(n: int, *one_based: int, coef=1) -> Cochain:
    """The real form coef * sigma^{i1 i2 ...} with 1-based indices as in the classification tables."""
    return Cochain.form(n, *(i - 1 for i in one_based), coef=coef)


# ---------------------------------------------------------------- cocycle containers

@dataclass(frozen=True)
class QuadCocycle:
    """(alpha, gamma, delta, epsilon) of degrees (2, 3, 1, 2); alpha, delta a-valued."""

    alpha: Cochain
    gamma: Cochain
    delta: Cochain
    epsilon: Cochain

    def __post_init__(self):
        a, g, d, e = self.alpha, self.gamma, self.delta, self.epsilon
        if (a.degree, g.degree, d.degree, e.degree) != (2, 3, 1, 2):
            raise UsageError("quadratic cocycle needs degrees (2, 3, 1, 2)")
        if a.real or d.real or not g.real or not e.real:
            raise UsageError("alpha and delta must be a-valued, gamma and epsilon real")
        if a.target != d.target:
            raise UsageError("alpha and delta have different target dimensions")
        if len({a.n, g.n, d.n, e.n}) != 1:
            raise UsageError("cochains of a cocycle live on different base algebras")

    @classmethod
    def zero(cls, n: int, m: int) -> "QuadCocycle":
        return cls(Cochain.zero(n, 2, m), Cochain.zero(n, 3, None),
                   Cochain.zero(n, 1, m), Cochain.zero(n, 2, None))

    @property
    def n(self) -> int:
        return self.alpha.n

    @property
    def a_dim(self) -> int:
        return self.alpha.target

    def parts(self) -> tuple[Cochain, Cochain, Cochain, Cochain]:
        return self.alpha, self.gamma, self.delta, self.epsilon

    def replace(self, **kw) -> "QuadCocycle":
        fields = dict(alpha=self.alpha, gamma=self.gamma, delta=self.delta, epsilon=self.epsilon)
        fields.update(kw)
        return QuadCocycle(**fields)


@dataclass(frozen=True)
class TransformPair:
    """Group element (tau, sigma): tau an a-valued 1-cochain, sigma a real 2-cochain."""

    tau: Cochain
    sigma: Cochain

    def __post_init__(self):
        if self.tau.degree != 1 or self.tau.real:
            raise UsageError("tau must be an a-valued 1-cochain")
        if self.sigma.degree != 2 or not self.sigma.real:
            raise UsageError("sigma must be a real 2-cochain")
        if self.tau.n != self.sigma.n:
            raise UsageError("tau and sigma live on different base algebras")

    @classmethod
    def identity(cls, n: int, m: int) -> "TransformPair":
        return cls(Cochain.zero(n, 1, m), Cochain.zero(n, 2, None))


@dataclass(frozen=True)
class MorphismOfPairs:
    """(S, U) with S: l1 -> l2 and U: a2 -> a1, between `source` (pair 1) and `target` (pair 2)."""

    S: Matrix
    U: Matrix
    source: PairLDA
    target: PairLDA

    def __post_init__(self):
        p1, p2 = self.source, self.target
        if self.S.shape != (p2.n, p1.n):
            raise UsageError(f"S must be {p2.n}x{p1.n}")
        if self.U.shape != (p1.a_dim, p2.a_dim):
            raise UsageError(f"U must be {p1.a_dim}x{p2.a_dim}")


# ---------------------------------------------------------------- operators

def _over(pair: PairLDA, c: Cochain) -> None:
    if c.n != pair.n:
        raise UsageError(f"cochain lives on dim {c.n}, pair base has dim {pair.n}")
    if not c.real and c.target != pair.a_dim:
        raise UsageError(f"cochain has target dim {c.target}, module has dim {pair.a_dim}")


def differential(pair: PairLDA, c: Cochain) -> Cochain:
    """Chevalley-Eilenberg differential; the rho term only acts on a-valued cochains."""
    _over(pair, c)
    n, p, w = c.n, c.degree, c.width
    struct = pair.l.structure
    use_rho = not c.real and not pair.rho_trivial()
    out = {}
    for idx in combinations(range(n), p + 1):
        acc = [ZERO] * w
        if use_rho:
            for pos, i in enumerate(idx):
                v = c.value(idx[:pos] + idx[pos + 1:])
                if any(v):
                    sign = 1 if pos % 2 == 0 else -1
                    for t, x in enumerate(pair.rho[i].apply(v)):
                        acc[t] += sign * x
        for a in range(p + 1):
            for b in range(a + 1, p + 1):
                br = struct[idx[a]][idx[b]]
                if not any(br):
                    continue
                rest = idx[:a] + idx[a + 1:b] + idx[b + 1:]
                sign = 1 if (a + b) % 2 == 0 else -1
                for k, coef in enumerate(br):
                    if coef:
                        v = c.value((k,) + rest)
                        for t, x in enumerate(v):
                            acc[t] += sign * coef * x
        if any(acc):
            out[idx] = acc
    return Cochain(n, p + 1, c.target, out)


def _shuffles(p: int, r: int):
    """Positions of the first block of each (p, r-p) shuffle with the sign of the shuffle."""
    for first in combinations(range(r), p):
        rest = tuple(t for t in range(r) if t not in first)
        inversions = sum(1 for i in first for j in rest if j < i)
        yield first, rest, (-1 if inversions % 2 else 1)


def wedge_pair(a_gram: Matrix, x: Cochain, y: Cochain) -> Cochain:
    """<x ^ y>: shuffle sum of <x(...), y(...)>; real cochains pair by multiplication."""
    if x.n != y.n or x.real != y.real or x.target != y.target:
        raise UsageError("wedge pairing needs cochains with the same base and target")
    if x.real:
        G = Matrix.identity(1)
    else:
        if a_gram.shape != (x.target, x.target):
            raise UsageError("gram matrix does not match the target dimension")
        G = a_gram
    n, p, r = x.n, x.degree, x.degree + y.degree
    out = {}
    if x.values and y.values:
        shuffles = list(_shuffles(p, r))
        for idx in combinations(range(n), r):
            total = ZERO
            for first, rest, sign in shuffles:
                xv = x.values.get(tuple(idx[t] for t in first))
                if xv is None:
                    continue
                yv = y.values.get(tuple(idx[t] for t in rest))
                if yv is None:
                    continue
                total += sign * dot(xv, G.apply(yv))
            if total:
                out[idx] = total
    return Cochain(n, r, None, out)


def dcirc(pair: PairLDA, c: Cochain, use_semisimple: bool = False) -> Cochain:
    """D° c = D_a c(...) - sum_i c(..., D_l L_i, ...); semisimple parts when requested."""
    _over(pair, c)
    Dl = pair.Dl_s if use_semisimple else pair.Dl
    Da = pair.Da_s if use_semisimple else pair.Da
    n, p, w = c.n, c.degree, c.width
    dl_cols = [[(k, a) for k, a in enumerate(Dl.col(i)) if a] for i in range(n)]
    out = {}
    for idx in combinations(range(n), p):
        acc = list(zero_vec(w)) if c.real else list(Da.apply(c.value(idx)))
        for pos, i in enumerate(idx):
            for k, coef in dl_cols[i]:
                v = c.value(idx[:pos] + (k,) + idx[pos + 1:])
                for t, x in enumerate(v):
                    acc[t] -= coef * x
        if any(acc):
            out[idx] = acc
    return Cochain(n, p, c.target, out)


def _check_cocycle_shape(pair: PairLDA, c: QuadCocycle) -> None:
    for part in c.parts():
        _over(pair, part)


def check_ZQ(pair: PairLDA, alpha: Cochain, gamma: Cochain) -> Check:
    if alpha.degree != 2 or gamma.degree != 3 or alpha.real or not gamma.real:
        raise UsageError("check_ZQ needs an a-valued 2-cochain and a real 3-cochain")
    _over(pair, alpha)
    _over(pair, gamma)
    fails = []
    if not differential(pair, alpha).is_zero():
        fails.append("dα ≠ 0")
    if differential(pair, gamma) != wedge_pair(pair.a_gram, alpha, alpha).scale(HALF):
        fails.append("dγ ≠ ½⟨α∧α⟩")
    if not dcirc(pair, alpha, True).is_zero():
        fails.append("D°_s α ≠ 0")
    if not dcirc(pair, gamma, True).is_zero():
        fails.append("D°_s γ ≠ 0")
    return Check.from_failures(fails)


def _cq_failures(pair: PairLDA, tau: Cochain, sig: Cochain, names=("τ", "σ")) -> list[str]:
    fails = []
    if not dcirc(pair, tau, True).is_zero():
        fails.append(f"D°_s {names[0]} ≠ 0")
    if not dcirc(pair, sig, True).is_zero():
        fails.append(f"D°_s {names[1]} ≠ 0")
    return fails


def check_CQ(pair: PairLDA, t: TransformPair) -> Check:
    _over(pair, t.tau)
    _over(pair, t.sigma)
    return Check.from_failures(_cq_failures(pair, t.tau, t.sigma))


def check_ZQplus(pair: PairLDA, c: QuadCocycle) -> Check:
    _check_cocycle_shape(pair, c)
    fails = list(check_ZQ(pair, c.alpha, c.gamma).failures)
    fails += _cq_failures(pair, c.delta, c.epsilon, ("δ", "ε"))
    if differential(pair, c.delta) != dcirc(pair, c.alpha):
        fails.append("dδ ≠ D°α")
    rhs = dcirc(pair, c.gamma) - wedge_pair(pair.a_gram, c.alpha, c.delta)
    if differential(pair, c.epsilon) != rhs:
        fails.append("dε ≠ D°γ − ⟨α∧δ⟩")
    return Check.from_failures(fails)


def group_mul(a_gram: Matrix, t1: TransformPair, t2: TransformPair) -> TransformPair:
    """(tau1 + tau2, sigma1 + sigma2 + 1/2 <tau1 ^ tau2>)."""
    return TransformPair(
        t1.tau + t2.tau,
        t1.sigma + t2.sigma + wedge_pair(a_gram, t1.tau, t2.tau).scale(HALF))


def group_inverse(t: TransformPair) -> TransformPair:
    return TransformPair(-t.tau, -t.sigma)


def act(pair: PairLDA, c: QuadCocycle, t: TransformPair) -> QuadCocycle:
    """Right action of C^1_Q on quadratic cocycles."""
    _check_cocycle_shape(pair, c)
    cq = check_CQ(pair, t)
    if not cq:
        raise DomainError(f"transform is not in C^1_Q: {cq.detail}")
    G = pair.a_gram
    tau, sig = t.tau, t.sigma
    dtau = differential(pair, tau)
    dctau = dcirc(pair, tau)
    alpha = c.alpha + dtau
    gamma = c.gamma + differential(pair, sig) + wedge_pair(G, c.alpha + dtau.scale(HALF), tau)
    delta = c.delta + dctau
    epsilon = c.epsilon + dcirc(pair, sig) + wedge_pair(G, c.delta + dctau.scale(HALF), tau)
    return QuadCocycle(alpha, gamma, delta, epsilon)


# ---------------------------------------------------------------- morphisms and pull-backs

def check_morphism(m: MorphismOfPairs) -> Check:
    p1, p2, S, U = m.source, m.target, m.S, m.U
    fails = []
    if S @ p1.Dl != p2.Dl @ S:
        fails.append("S D_l1 ≠ D_l2 S")
    if U @ p2.Da != p1.Da @ U:
        fails.append("U D_a2 ≠ D_a1 U")
    if not is_lie_homomorphism(p1.l, p2.l, S):
        fails.append("S is not a Lie homomorphism")
    if U.T @ p1.a_gram @ U != p2.a_gram or U.rank() != p2.a_dim:
        fails.append("U is not an isometric embedding")
    s_cols = S.columns()
    for i in range(p1.n):
        if U @ p2.rho_of(s_cols[i]) != p1.rho[i] @ U:
            fails.append(f"U rho_2(S e{i + 1}) ≠ rho_1(e{i + 1}) U")
            break
    return Check.from_failures(fails)


def pullback_cochain(c: Cochain, S: Matrix, U: Matrix | None = None) -> Cochain:
    """(S,U)^* c (L...) = U c(S L, ...); U is ignored for real cochains."""
    if S.rows != c.n:
        raise UsageError("S does not map into the cochain's base algebra")
    n1 = S.cols
    cols = S.columns()
    out = {}
    if c.values:
        for idx in combinations(range(n1), c.degree):
            v = c.evaluate([cols[i] for i in idx])
            if not c.real:
                v = U.apply(v)
            if any(v):
                out[idx] = v
    target = None if c.real else U.rows
    return Cochain(n1, c.degree, target, out)


def pullback(m: MorphismOfPairs, c: QuadCocycle) -> QuadCocycle:
    ok = check_morphism(m)
    if not ok:
        raise DomainError(f"invalid morphism of pairs: {ok.detail}")
    _check_cocycle_shape(m.target, c)
    return QuadCocycle(*(pullback_cochain(x, m.S, m.U) for x in c.parts()))


def pullback_transform(m: MorphismOfPairs, t: TransformPair) -> TransformPair:
    ok = check_morphism(m)
    if not ok:
        raise DomainError(f"invalid morphism of pairs: {ok.detail}")
    return TransformPair(pullback_cochain(t.tau, m.S, m.U), pullback_cochain(t.sigma, m.S))


__all__ = [
    "Cochain", "sigma", "QuadCocycle", "TransformPair", "MorphismOfPairs",
    "differential", "wedge_pair", "dcirc", "check_ZQ", "check_CQ", "check_ZQplus",
    "group_mul", "group_inverse", "act", "check_morphism", "pullback_cochain", "pullback",
    "pullback_transform",
]
