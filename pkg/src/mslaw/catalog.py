"""Parameterised families of metric Lie algebras with bijective skewsymmetric derivations.

Each family fixes a pair (l, D_l, a, D_a) and a quadratic cocycle; `verify_entry` runs the
whole pipeline on an instance and `distinguish` compares invariants.
"""

from __future__ import annotations

import enum
import fnmatch
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cochain import Cochain, QuadCocycle, act, check_ZQplus, sigma
from .errors import Check, DomainError, UsageError
from .lie import (
    LieAlgebra, MetricSymplecticLieAlgebra, PairLDA, canonical_isotropic_ideal, center,
    check_pair, derivation_from_symplectic, is_derivation, is_lie_homomorphism,
    lower_central_series, omega_closed, symplectic_from_derivation,
)
from .linalg import Matrix, Poly, jordan_chevalley, q, signature
from .quadext import (
    EquivalenceWitness, StandardModel, build_standard_model, canonical_extension_of,
    check_balanced, equivalence_map, extract_cocycle, standard_extension, verify_equivalence,
)
from .sampling import rand_rational, random_cocycle, random_invertible, random_transform

# ---------------------------------------------------------------- normal forms


def complex_block(a, b) -> Matrix:
    """D_{a+ib} = [[a, -b], [b, a]]."""
    return Matrix([[a, -b], [b, a]])


def jordan_block(b) -> Matrix:
    """N_b = [[b, 1], [0, b]]."""
    return Matrix([[b, 1], [0, b]])


WITT = Matrix([[0, 1], [1, 0]])
EUCLIDEAN_2 = Matrix.identity(2)
NEGATIVE_2 = -Matrix.identity(2)


def _scalar(x) -> Matrix:
    return Matrix([[x]])


# ---------------------------------------------------------------- families

class Family(enum.Enum):
    DIM6_DIAG = "dim6-diag"
    DIM6_JORDAN = "dim6-jordan"
    DIM6_COMPLEX = "dim6-complex"
    DIM8_R2 = "dim8-r2"
    DIM8_R20 = "dim8-r20"
    DIM8_W1 = "dim8-w1"
    DIM8_W2 = "dim8-w2"
    DIM8_W3 = "dim8-w3"
    DIM8_W4 = "dim8-w4"
    DIM8_W5 = "dim8-w5"
    DIM8_W6 = "dim8-w6"
    DIM8_W7 = "dim8-w7"
    DIM8_W8 = "dim8-w8"
    IDX3_DIM8 = "idx3-dim8"

    @classmethod
    def parse(cls, text: str) -> "Family":
        key = text.strip().lower().replace("_", "-")
        for f in cls:
            if f.value == key or f.name.lower().replace("_", "-") == key:
                return f
        raise UsageError(f"unknown family {text!r}")

    @classmethod
    def matching(cls, pattern: str | None) -> list["Family"]:
        if pattern is None:
            return list(cls)
        pat = pattern.strip().lower().replace("_", "-")
        found = [f for f in cls if fnmatch.fnmatchcase(f.value, pat)]
        if not found:
            raise UsageError(f"no family matches {pattern!r}")
        return found


@dataclass(frozen=True)
class _FamilySpec:
    defaults: dict
    expected_signature: tuple[int, int]
    build: Callable[[dict], tuple[PairLDA, QuadCocycle]]
    constraints: Callable[[dict], list[str]]


def _r3_pair(Dl: Matrix, a_gram: Matrix, Da: Matrix) -> PairLDA:
    return PairLDA(LieAlgebra.abelian(3), Dl, a_gram, Da)


def _a(m: int, i: int) -> tuple:
    return tuple(Fraction(int(k == i)) for k in range(m))


def _dim6(Dl: Matrix, k) -> tuple[PairLDA, QuadCocycle]:
    pair = _r3_pair(Dl, Matrix.zeros(0), Matrix.zeros(0))
    c = QuadCocycle.zero(3, 0).replace(gamma=sigma(3, 1, 2, 3, coef=k))
    return pair, c


def _alpha_12_23() -> Cochain:
    return sigma(3, 1, 2).tensor(_a(2, 0)) + sigma(3, 2, 3).tensor(_a(2, 1))


def _rotation_family(p: dict, gram: Matrix) -> tuple[PairLDA, QuadCocycle]:
    b, s = p["b"], p["s"]
    Dl = Matrix.block_diag(complex_block(b, s), _scalar(-b))
    pair = _r3_pair(Dl, gram, complex_block(0, s))
    alpha = sigma(3, 1, 3).tensor(_a(2, 0)) + sigma(3, 2, 3).tensor(_a(2, 1))
    return pair, QuadCocycle.zero(3, 2).replace(alpha=alpha)


def _witt_family(Dl: Matrix, sign, alpha: Cochain | None, gamma: Cochain | None,
                 delta: Cochain | None, s) -> tuple[PairLDA, QuadCocycle]:
    pair = _r3_pair(Dl, WITT, Matrix.diag(sign * s, -sign * s))
    c = QuadCocycle.zero(3, 2)
    if alpha is not None:
        c = c.replace(alpha=alpha)
    if gamma is not None:
        c = c.replace(gamma=gamma)
    if delta is not None:
        c = c.replace(delta=delta)
    return pair, c


def _shared_w5_w8() -> dict:
    return dict(alpha=None, gamma=sigma(3, 1, 2, 3), delta=sigma(3, 1).tensor(_a(2, 0)))


def _c_dim6_diag(p):
    a, b, c = p["a"], p["b"], p["c"]
    out = []
    if a + b + c != 0:
        out.append("a+b+c must be 0")
    if 0 in (a, b, c):
        out.append("a, b, c must be nonzero")
    if not a <= b <= c:
        out.append("a <= b <= c required")
    return out + _c_k(p)


def _c_k(p):
    return ["k must be nonzero"] if p.get("k", 1) == 0 else []


def _c_b(p):
    return ["b must be nonzero"] if p["b"] == 0 else []


def _c_d(p):
    return ["d must be positive"] if p["d"] <= 0 else []


def _c_s(p):
    return ["s must be positive"] if p["s"] <= 0 else []


def _c_e(p):
    return ["e must avoid 0, s, -s"] if p["e"] in (0, p["s"], -p["s"]) else []


def _c_sign(p):
    return ["sign must be +1 or -1"] if p["sign"] not in (1, -1) else []


def _w(build, defaults, *checks) -> _FamilySpec:
    return _FamilySpec(defaults, (4, 4), build, lambda p: [m for chk in checks for m in chk(p)])


_SPECS: dict[Family, _FamilySpec] = {
    Family.DIM6_DIAG: _FamilySpec(
        {"a": -3, "b": 1, "c": 2, "k": 1}, (3, 3),
        lambda p: _dim6(Matrix.diag(p["a"], p["b"], p["c"]), p["k"]),
        _c_dim6_diag),
    Family.DIM6_JORDAN: _FamilySpec(
        {"b": 1, "k": 1}, (3, 3),
        lambda p: _dim6(Matrix.block_diag(jordan_block(p["b"]), _scalar(-2 * p["b"])), p["k"]),
        lambda p: _c_b(p) + _c_k(p)),
    Family.DIM6_COMPLEX: _FamilySpec(
        {"b": 1, "d": 1, "k": 1}, (3, 3),
        lambda p: _dim6(Matrix.block_diag(complex_block(p["b"], p["d"]),
                                          _scalar(-2 * p["b"])), p["k"]),
        lambda p: _c_b(p) + _c_d(p) + _c_k(p)),
    Family.DIM8_R2: _FamilySpec(
        {"b": 1, "s": 1}, (3, 5), lambda p: _rotation_family(p, EUCLIDEAN_2),
        lambda p: _c_b(p) + _c_s(p)),
    Family.DIM8_R20: _FamilySpec(
        {"b": 1, "s": 1}, (5, 3), lambda p: _rotation_family(p, NEGATIVE_2),
        lambda p: _c_b(p) + _c_s(p)),
    Family.IDX3_DIM8: _FamilySpec(
        {"b": 1, "s": 1}, (3, 5), lambda p: _rotation_family(p, EUCLIDEAN_2),
        lambda p: _c_b(p) + _c_s(p)),
    Family.DIM8_W1: _w(
        lambda p: _witt_family(Matrix.diag(p["s"] - p["e"], p["e"], -p["s"] - p["e"]), 1,
                               _alpha_12_23(), None, None, p["s"]),
        {"s": 1, "e": 5}, _c_s, _c_e),
    Family.DIM8_W2: _w(
        lambda p: _witt_family(Matrix.diag(-p["s"], 2 * p["s"], -3 * p["s"]), 1,
                               _alpha_12_23(), None, sigma(3, 1).tensor(_a(2, 1)), p["s"]),
        {"s": 1}, _c_s),
    Family.DIM8_W3: _w(
        lambda p: _witt_family(Matrix.diag(3 * p["s"], -2 * p["s"], p["s"]), 1,
                               _alpha_12_23(), None, sigma(3, 3).tensor(_a(2, 0)), p["s"]),
        {"s": 1}, _c_s),
    Family.DIM8_W4: _w(
        lambda p: _witt_family(
            Matrix.block_diag(jordan_block(p["sign"] * p["s"] / 2),
                              _scalar(-p["sign"] * 3 * p["s"] / 2)),
            p["sign"], _alpha_12_23(), None, None, p["s"]),
        {"s": 1, "sign": 1}, _c_s, _c_sign),
    Family.DIM8_W5: _w(
        lambda p: _witt_family(
            Matrix.diag(p["sign"] * p["s"], p["e"], -p["sign"] * p["s"] - p["e"]),
            p["sign"], s=p["s"], **_shared_w5_w8()),
        {"s": 1, "e": 5, "sign": 1}, _c_s, _c_e, _c_sign),
    Family.DIM8_W6: _w(
        lambda p: _witt_family(
            Matrix.block_diag(jordan_block(p["sign"] * p["s"]), _scalar(-2 * p["sign"] * p["s"])),
            p["sign"], s=p["s"], **_shared_w5_w8()),
        {"s": 1, "sign": 1}, _c_s, _c_sign),
    Family.DIM8_W7: _w(
        lambda p: _witt_family(
            Matrix.block_diag(_scalar(p["sign"] * p["s"]), jordan_block(-p["sign"] * p["s"] / 2)),
            p["sign"], s=p["s"], **_shared_w5_w8()),
        {"s": 1, "sign": 1}, _c_s, _c_sign),
    Family.DIM8_W8: _w(
        lambda p: _witt_family(
            Matrix.block_diag(_scalar(p["sign"] * p["s"]),
                              complex_block(-p["sign"] * p["s"] / 2, p["d"])),
            p["sign"], s=p["s"], **_shared_w5_w8()),
        {"s": 1, "d": 1, "sign": 1}, _c_s, _c_d, _c_sign),
}


def family_defaults(family: Family) -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in _SPECS[family].defaults.items()}


def expected_signature(family: Family) -> tuple[int, int]:
    return _SPECS[family].expected_signature


@dataclass(frozen=True)
class CatalogEntry:
    family: Family
    params: tuple[tuple[str, Fraction], ...]
    pair: PairLDA
    cocycle: QuadCocycle

    @property
    def param_dict(self) -> dict[str, Fraction]:
        return dict(self.params)

    @property
    def name(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family.value}({inner})"


def parse_params(text: str | None) -> dict[str, Fraction]:
    """'a=-3,b=1,c=2' -> {'a': -3, 'b': 1, 'c': 2}."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"parameter {chunk!r} is not of the form name=value")
        key, value = (x.strip() for x in chunk.split("=", 1))
        try:
            out[key] = q(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"parameter {key} has a non-rational value {value!r}") from exc
    return out


def instantiate(family: Family | str, params: dict | None = None) -> CatalogEntry:
    if isinstance(family, str):
        family = Family.parse(family)
    spec = _SPECS[family]
    values = family_defaults(family)
    for key, v in (params or {}).items():
        if key not in values:
            raise UsageError(f"family {family.value} has no parameter {key!r}; "
                             f"expected {sorted(values)}")
        values[key] = q(v)
    problems = spec.constraints(values)
    if problems:
        raise DomainError(f"{family.value}: " + "; ".join(problems))
    pair, c = spec.build(values)
    return CatalogEntry(family, tuple(sorted(values.items())), pair, c)


def default_entries(pattern: str | None = None) -> list[CatalogEntry]:
    return [instantiate(f) for f in Family.matching(pattern)]


# ---------------------------------------------------------------- verification pipeline

@dataclass(frozen=True)
class ReportLine:
    ok: bool
    entry: str
    check: str
    detail: str = ""

    def __str__(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'} {self.entry} {self.check}"
        return f"{head} {self.detail}" if self.detail else head


def _recovery_checks(sm: StandardModel) -> list[tuple[str, Check]]:
    """Compare the canonical extension's (l, D_l) and (a, D_a) with the source pair."""
    pair = sm.source_pair
    n, m = sm.n, sm.m
    ext = canonical_extension_of(sm.model, sm.derivation)
    out = []
    fails = []
    if ext.ideal != sm.dual_block():
        fails.append("canonical ideal differs from the l*-block")
    out.append(("canonical-ideal", Check.from_failures(fails)))
    # l-representatives, read in the L-block of the model basis
    P = Matrix.from_columns([v[n + m:] for v in ext.reps_l()], n)
    fails = []
    if ext.pair.n != n or not P.is_invertible():
        fails.append("l-representatives do not project onto l")
    else:
        if P @ ext.pair.Dl != pair.Dl @ P:
            fails.append("induced D_l differs after base change")
        if not is_lie_homomorphism(ext.pair.l, pair.l, P):
            fails.append("induced bracket on l differs after base change")
    out.append(("recover-l", Check.from_failures(fails)))
    fails = []
    if ext.pair.a_dim != m:
        fails.append(f"a has dim {ext.pair.a_dim}, expected {m}")
    elif m:
        Q = Matrix.from_columns([v[n:n + m] for v in ext.reps_a()], m)
        if not Q.is_invertible():
            fails.append("a-representatives do not project onto a")
        else:
            if Q.T @ pair.a_gram @ Q != ext.pair.a_gram:
                fails.append("inner product on a differs after base change")
            if Q @ ext.pair.Da != pair.Da @ Q:
                fails.append("induced D_a differs after base change")
            for i in range(n):
                rho_src = pair.rho_of(P.col(i))
                if Q @ ext.pair.rho[i] != rho_src @ Q:
                    fails.append("induced representation differs after base change")
                    break
    out.append(("recover-a", Check.from_failures(fails)))
    return out


def verify_entry(e: CatalogEntry) -> list[ReportLine]:
    """Full pipeline on one entry; each check becomes one report line."""
    name = e.name
    lines: list[ReportLine] = []

    def add(check: str, result, detail: str = ""):
        ok = bool(result)
        if not ok and not detail and isinstance(result, Check):
            detail = "; ".join(result.failures)
        lines.append(ReportLine(ok, name, check, detail))

    add("pair", check_pair(e.pair))
    add("cocycle", check_ZQplus(e.pair, e.cocycle))
    try:
        add("balanced", check_balanced(e.pair, e.cocycle))
    except DomainError as exc:
        add("balanced", False, str(exc))
    try:
        sm = build_standard_model(e.pair, e.cocycle)
    except (DomainError, AssertionError) as exc:
        add("standard-model", False, str(exc))
        return lines
    add("standard-model", True, f"dim {sm.dim}")
    ms = None
    try:
        ms = symplectic_from_derivation(sm.model, sm.derivation)
        closed = omega_closed(sm.model.algebra, ms.omega)
        nondeg = ms.omega.is_invertible()
        add("symplectic", bool(closed) and nondeg,
            "" if closed and nondeg else "omega not closed or degenerate")
    except DomainError as exc:
        add("symplectic", False, str(exc))
    neg, pos, zero = signature(sm.model.gram)
    want = expected_signature(e.family)
    add("signature", (neg, pos) == want and zero == 0,
        f"({neg},{pos})" + ("" if (neg, pos) == want else f" expected {want}"))
    if e.family is Family.IDX3_DIM8:
        add("index-3", neg == 3, f"index {neg}")
    try:
        for check, result in _recovery_checks(sm):
            add(check, result)
    except (DomainError, AssertionError) as exc:
        add("recovery", False, str(exc))
    try:
        back = extract_cocycle(standard_extension(sm))
        add("extraction", back == e.cocycle, "" if back == e.cocycle else "cocycle differs")
    except (DomainError, AssertionError) as exc:
        add("extraction", False, str(exc))
    S, N = jordan_chevalley(sm.derivation)
    add("jordan-chevalley",
        S + N == sm.derivation and S @ N == N @ S and is_derivation(sm.model.algebra, S))
    if ms is not None:
        try:
            back_D = derivation_from_symplectic(sm.model, ms.omega)
            add("omega-roundtrip", back_D == sm.derivation)
        except DomainError as exc:
            add("omega-roundtrip", False, str(exc))
    return lines


def perturbed_section(sm: StandardModel, t) -> Matrix:
    """Section L -> F(0, 0, L) of the model, F the equivalence map of t.

    It is admissible whenever t lies in C^1_Q, and extracting along it gives act(c, t).
    """
    F = equivalence_map(sm.source_pair, t)
    n, m = sm.n, sm.m
    return Matrix.from_columns([F.col(n + m + j) for j in range(n)], sm.dim)


def seeded_checks(e: CatalogEntry, seed: int) -> list[ReportLine]:
    """Witness checks driven by a per-entry random stream."""
    rng = random.Random(f"{seed}:{e.name}")
    lines = []
    t = random_transform(rng, e.pair)
    shifted = act(e.pair, e.cocycle, t)
    try:
        ok = verify_equivalence(e.pair, shifted, e.cocycle, EquivalenceWitness(t))
        lines.append(ReportLine(ok, e.name, "equivalence-witness",
                                "" if ok else "c . t does not match"))
    except (DomainError, AssertionError) as exc:
        lines.append(ReportLine(False, e.name, "equivalence-witness", str(exc)))
    try:
        sm = build_standard_model(e.pair, e.cocycle)
        got = extract_cocycle(standard_extension(sm), perturbed_section(sm, t))
        ok = got == shifted
        lines.append(ReportLine(ok, e.name, "perturbed-section",
                                "" if ok else "extracted cocycle differs from c . t"))
    except (DomainError, AssertionError) as exc:
        lines.append(ReportLine(False, e.name, "perturbed-section", str(exc)))
    return lines


# ---------------------------------------------------------------- invariants

@dataclass(frozen=True)
class InvariantVector:
    dim: int
    signature: tuple[int, int]
    derivation_charpoly: Poly
    central_series_dims: tuple[int, ...]
    center_dim: int
    canonical_ideal_dim: int


class Verdict(enum.Enum):
    DISTINCT = "DISTINCT"
    UNKNOWN = "UNKNOWN"


def invariants(ms: MetricSymplecticLieAlgebra | CatalogEntry) -> InvariantVector:
    if isinstance(ms, CatalogEntry):
        sm = build_standard_model(ms.pair, ms.cocycle)
        ms = sm.symplectic()
    g = ms.metric_algebra
    neg, pos, _ = signature(g.gram)
    return InvariantVector(
        dim=g.dim,
        signature=(neg, pos),
        derivation_charpoly=ms.derivation.charpoly(),
        central_series_dims=tuple(s.dim for s in lower_central_series(g.algebra)),
        center_dim=center(g.algebra).dim,
        canonical_ideal_dim=canonical_isotropic_ideal(g).dim,
    )


def distinguish(e1, e2) -> Verdict:
    """DISTINCT when some invariant differs; UNKNOWN otherwise (no isomorphism search)."""
    return Verdict.DISTINCT if invariants(e1) != invariants(e2) else Verdict.UNKNOWN


# ---------------------------------------------------------------- emptiness suite

class BaseChoice(enum.Enum):
    R1 = "r1"
    R2 = "r2"
    H3 = "h3"

    @classmethod
    def parse(cls, text: str) -> "BaseChoice":
        try:
            return cls(text.strip().lower())
        except ValueError as exc:
            raise UsageError(f"unknown base algebra {text!r}; use r1, r2 or h3") from exc


@dataclass(frozen=True)
class EmptinessReport:
    choice: BaseChoice
    samples: int
    balanced: int
    nonzero_alpha: int
    nonzero_cocycles: int
    seed: int

    @property
    def ok(self) -> bool:
        return self.balanced == 0

    def lines(self) -> list[str]:
        tag = f"emptiness-{self.choice.value}"
        return [
            f"{'PASS' if self.ok else 'FAIL'} {tag} balanced {self.balanced}/{self.samples}",
            f"INFO {tag} seed {self.seed} nonzero-cocycles {self.nonzero_cocycles} "
            f"nonzero-alpha {self.nonzero_alpha}",
        ]


def _random_module(rng: random.Random, weights: list[Fraction]) -> tuple[Matrix, Matrix]:
    """Gram and skew bijective D_a on a of dim 0, 2 or 4.

    Witt planes get D_a = diag(mu, -mu) with mu often a sum of base weights, so that
    nonzero alpha and delta have room to exist.
    """
    m = rng.choice((0, 2, 2, 4))
    grams, das = [], []
    for _ in range(m // 2):
        if rng.random() < 0.7:
            if weights and rng.random() < 0.8:
                mu = rng.choice(weights)
            else:
                mu = rand_rational(rng, nonzero=True)
            if mu == 0:
                mu = Fraction(1)
            grams.append(WITT)
            das.append(Matrix.diag(mu, -mu))
        else:
            r = rand_rational(rng, nonzero=True)
            grams.append(EUCLIDEAN_2 if rng.random() < 0.5 else NEGATIVE_2)
            das.append(complex_block(0, r))
    if not grams:
        return Matrix.zeros(0), Matrix.zeros(0)
    return Matrix.block_diag(*grams), Matrix.block_diag(*das)


def _nonzero(rng):
    return rand_rational(rng, nonzero=True)


def _sample_r1(rng):
    lam = _nonzero(rng)
    return LieAlgebra.abelian(1), Matrix([[lam]]), [lam]


def _sample_r2(rng):
    l1, l2 = _nonzero(rng), _nonzero(rng)
    if rng.random() < 0.3:
        Dl = jordan_block(l1)
        l2 = l1
    else:
        Dl = Matrix.diag(l1, l2)
    P = random_invertible(rng, 2)
    Dl = P @ Dl @ P.inverse()
    weights = [w for w in {l1, l2, l1 + l2} if w]
    return LieAlgebra.abelian(2), Dl, weights


def _sample_h3(rng):
    l = LieAlgebra.heisenberg()
    kind = rng.random()
    while True:
        x, y = _nonzero(rng), _nonzero(rng)
        if x + y:
            break
    if kind < 0.6:
        D0 = Matrix.diag(x, y, x + y)
        weights = [x, y, x + y, 2 * x + y, x + 2 * y]
    elif kind < 0.85:
        D0 = Matrix.block_diag(jordan_block(x), _scalar(2 * x))
        weights = [x, 2 * x, 3 * x]
    else:
        D0 = Matrix.block_diag(complex_block(x, y), _scalar(2 * x))
        weights = [2 * x]
    A = random_invertible(rng, 2)
    r0, r1 = rand_rational(rng), rand_rational(rng)
    auto = Matrix([[A[0, 0], A[0, 1], 0], [A[1, 0], A[1, 1], 0], [r0, r1, A.det()]])
    Dl = auto @ D0 @ auto.inverse()
    assert is_derivation(l, Dl), "sampled map is not a derivation of h3"
    return l, Dl, [w for w in weights if w]


_SAMPLERS = {BaseChoice.R1: _sample_r1, BaseChoice.R2: _sample_r2, BaseChoice.H3: _sample_h3}


def sample_pair(rng: random.Random, choice: BaseChoice) -> PairLDA:
    l, Dl, weights = _SAMPLERS[choice](rng)
    gram, Da = _random_module(rng, weights)
    return PairLDA(l, Dl, gram, Da)


def emptiness_suite(choice: BaseChoice | str, samples: int, seed: int = 1) -> EmptinessReport:
    """Sample cocycles in Z^2_{Q+} over the given base and count the balanced ones."""
    if isinstance(choice, str):
        choice = BaseChoice.parse(choice)
    if samples < 1:
        raise UsageError("samples must be at least 1")
    rng = random.Random(seed)
    balanced = nonzero_alpha = nonzero = 0
    for _ in range(samples):
        pair = sample_pair(rng, choice)
        c = random_cocycle(rng, pair)
        assert check_ZQplus(pair, c), "sampled cocycle left Z^2_Q+"
        if not c.alpha.is_zero():
            nonzero_alpha += 1
        if any(not part.is_zero() for part in c.parts()):
            nonzero += 1
        if check_balanced(pair, c):
            balanced += 1
    return EmptinessReport(choice, samples, balanced, nonzero_alpha, nonzero, seed)


__all__ = [
    "Family", "CatalogEntry", "ReportLine", "InvariantVector", "Verdict", "BaseChoice",
    "EmptinessReport", "complex_block", "jordan_block", "WITT", "EUCLIDEAN_2", "NEGATIVE_2",
    "family_defaults", "expected_signature", "parse_params", "instantiate", "default_entries",
    "verify_entry", "perturbed_section", "seeded_checks", "invariants", "distinguish", "sample_pair", "emptiness_suite",
]
