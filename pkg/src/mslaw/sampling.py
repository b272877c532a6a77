"""Seeded random rationals, matrices and cochains, plus exact solving inside cochain spaces."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .cochain import (
    Cochain, QuadCocycle, TransformPair, dcirc, differential, wedge_pair,
)
from .lie import PairLDA
from .linalg import ZERO, Matrix, null_space, solve_vec

HALF = Fraction(1, 2)


def rand_rational(rng: random.Random, bound: int = 3, denominators: Sequence[int] = (1, 1, 2, 3),
                  nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.choice(denominators))
        if x or not nonzero:
            return x


def random_matrix(rng: random.Random, rows: int, cols: int | None = None, **kw) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix([[rand_rational(rng, **kw) for _ in range(cols)] for _ in range(rows)],
                  cols=cols)


def random_invertible(rng: random.Random, n: int, **kw) -> Matrix:
    while True:
        M = random_matrix(rng, n, **kw)
        if M.is_invertible():
            return M


# ---------------------------------------------------------------- cochain spaces as Q^k

def _keys(n: int, degree: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), degree))


def cochain_dim(n: int, degree: int, target: int | None) -> int:
    return len(_keys(n, degree)) * (1 if target is None else target)


def to_coords(c: Cochain) -> tuple:
    out = []
    for key in _keys(c.n, c.degree):
        out.extend(c.value(key))
    return tuple(out)


def from_coords(n: int, degree: int, target: int | None, coords: Sequence) -> Cochain:
    w = 1 if target is None else target
    values = {}
    for t, key in enumerate(_keys(n, degree)):
        chunk = tuple(coords[t * w:(t + 1) * w])
        values[key] = chunk
    return Cochain(n, degree, target, values)


def cochain_basis(n: int, degree: int, target: int | None) -> list[Cochain]:
    k = cochain_dim(n, degree, target)
    return [from_coords(n, degree, target, [1 if i == j else 0 for i in range(k)])
            for j in range(k)]


def operator_matrix(fn: Callable[[Cochain], Sequence[Cochain]], n: int, degree: int,
                    target: int | None) -> Matrix:
    """Matrix of a linear map from a cochain space into a product of cochain spaces."""
    basis = cochain_basis(n, degree, target)
    cols = []
    for b in basis:
        cols.append(sum((to_coords(x) for x in fn(b)), ()))
    if not cols:
        rows = len(sum((to_coords(x) for x in fn(Cochain.zero(n, degree, target))), ()))
        return Matrix.zeros(rows, 0)
    return Matrix.from_columns(cols)


def random_cochain(rng: random.Random, n: int, degree: int, target: int | None,
                   density: float = 0.6) -> Cochain:
    k = cochain_dim(n, degree, target)
    coords = [rand_rational(rng) if rng.random() < density else ZERO for _ in range(k)]
    return from_coords(n, degree, target, coords)


def sample_affine(rng: random.Random, A: Matrix, rhs: Sequence) -> tuple | None:
    """Random point of {x : A x = rhs}: particular solution plus a random kernel combination."""
    if A.cols == 0:
        return () if not any(rhs) else None
    part = solve_vec(A, rhs) if A.rows else tuple(ZERO for _ in range(A.cols))
    if part is None:
        return None
    out = list(part)
    for v in null_space(A):
        coef = rand_rational(rng)
        for i, x in enumerate(v):
            out[i] += coef * x
    return tuple(out)


def semisimple_invariant_cochains(pair: PairLDA, degree: int, real: bool) -> list[Cochain]:
    """Basis of the kernel of D°_s on a cochain space."""
    target = None if real else pair.a_dim
    A = operator_matrix(lambda c: [dcirc(pair, c, True)], pair.n, degree, target)
    return [from_coords(pair.n, degree, target, v) for v in null_space(A)]


def random_transform(rng: random.Random, pair: PairLDA) -> TransformPair:
    """Random element of C^1_Q (both parts in the kernel of D°_s)."""
    n, m = pair.n, pair.a_dim
    tau = Cochain.zero(n, 1, m)
    for b in semisimple_invariant_cochains(pair, 1, False):
        tau = tau + b.scale(rand_rational(rng))
    sig = Cochain.zero(n, 2, None)
    for b in semisimple_invariant_cochains(pair, 2, True):
        sig = sig + b.scale(rand_rational(rng))
    return TransformPair(tau, sig)


def random_cocycle(rng: random.Random, pair: PairLDA, attempts: int = 8) -> QuadCocycle:
    """Random element of Z^2_{Q+}, solved part by part (alpha, gamma, delta, epsilon).

    Resamples when a later affine system is inconsistent and returns the zero
    cocycle if every attempt fails.
    """
    n, m = pair.n, pair.a_dim
    G = pair.a_gram

    def d_and_ds(c):
        return [differential(pair, c), dcirc(pair, c, True)]

    A_alpha = operator_matrix(d_and_ds, n, 2, m)
    A_gamma = operator_matrix(d_and_ds, n, 3, None)
    A_delta = operator_matrix(d_and_ds, n, 1, m)
    A_eps = operator_matrix(d_and_ds, n, 2, None)
    zero_rhs = lambda deg, tgt: to_coords(Cochain.zero(n, deg, tgt))  # noqa: E731
    for _ in range(attempts):
        coords = sample_affine(rng, A_alpha, (ZERO,) * A_alpha.rows)
        alpha = from_coords(n, 2, m, coords)
        rhs = to_coords(wedge_pair(G, alpha, alpha).scale(HALF)) + zero_rhs(3, None)
        g = sample_affine(rng, A_gamma, rhs)
        if g is None:
            continue
        gamma = from_coords(n, 3, None, g)
        rhs = to_coords(dcirc(pair, alpha)) + zero_rhs(1, m)
        d = sample_affine(rng, A_delta, rhs)
        if d is None:
            continue
        delta = from_coords(n, 1, m, d)
        rhs = to_coords(dcirc(pair, gamma) - wedge_pair(G, alpha, delta)) + zero_rhs(2, None)
        e = sample_affine(rng, A_eps, rhs)
        if e is None:
            continue
        return QuadCocycle(alpha, gamma, delta, from_coords(n, 2, None, e))
    return QuadCocycle.zero(n, m)
