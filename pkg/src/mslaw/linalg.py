"""Exact rational linear algebra.

Matrices hold ``fractions.Fraction`` entries and are immutable.  Vectors are
plain tuples of Fractions; ``Matrix.apply`` maps them.  Polynomials store
coefficients lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UsageError

Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def q(x) -> Fraction:
    """Coerce an int, Fraction or rational string to a Fraction; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise UsageError(f"not a rational number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational number: {x!r}") from exc
    raise UsageError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------- vectors

def vec(values: Iterable) -> Vec:
    return tuple(q(v) for v in values)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def vcomb(coeffs: Iterable, vectors: Sequence[Vec], n: int) -> Vec:
    """Linear combination sum_i coeffs[i] * vectors[i] in dimension n."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def dot(x: Vec, y: Vec) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), ZERO)


def is_zero_vec(x: Vec) -> bool:
    return not any(x)


# ---------------------------------------------------------------- row reduction

def _rref_in_place(rows: list[list[Fraction]], ncols: int) -> list[int]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        lead = pr[c]
        if lead != 1:
            pr = rows[r] = [x / lead for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def _null_vectors(rows: list[list[Fraction]], ncols: int) -> list[Vec]:
    work = [list(r) for r in rows]
    pivots = _rref_in_place(work, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -work[r][f]
        basis.append(tuple(x))
    return basis


# ---------------------------------------------------------------- matrices

class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), cols: int | None = None):
        grid = tuple(tuple(q(x) for x in row) for row in data)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(row) != cols for row in grid):
            raise UsageError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self._data = grid

    @classmethod
    def _raw(cls, grid, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._data = tuple(tuple(r) for r in grid)
        m.rows = len(m._data)
        m.cols = cols
        return m

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw([unit_vec(n, i) for i in range(n)], n)

    @classmethod
    def diag(cls, *entries) -> "Matrix":
        n = len(entries)
        return cls._raw(
            [[q(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [vec(c) for c in columns]
        if rows is None:
            if not columns:
                raise UsageError("row count needed for an empty column list")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise UsageError("columns of unequal length")
        return cls._raw([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def column(cls, values: Iterable) -> "Matrix":
        return cls._raw([(v,) for v in vec(values)], 1)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        grid = [[ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(grid, cols)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble from a rectangular grid of blocks with matching sizes."""
        heights = [row[0].rows for row in grid]
        widths = [b.cols for b in grid[0]] if grid else []
        for bi, row in enumerate(grid):
            if len(row) != len(widths):
                raise UsageError("block grid is not rectangular")
            for bj, b in enumerate(row):
                if b.rows != heights[bi] or b.cols != widths[bj]:
                    raise UsageError("block sizes do not line up")
        out = []
        for bi, row in enumerate(grid):
            for i in range(heights[bi]):
                line: list[Fraction] = []
                for b in row:
                    line.extend(b._data[i])
                out.append(line)
        return cls._raw(out, sum(widths))

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vec:
        return self._data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vec]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self._data[i][j] for j in cols] for i in rows], len(cols))

    @property
    def T(self) -> "Matrix":
        return Matrix._raw([self.col(j) for j in range(self.cols)], self.rows)

    # arithmetic
    def _same_shape(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            raise UsageError("matrix shapes differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw([vadd(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw([vsub(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([tuple(-x for x in r) for r in self._data], self.cols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise UsageError("use @ for matrix products")
        c = q(c)
        return Matrix._raw([vscale(c, r) for r in self._data], self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        # row combinations, skipping zeros (derivations here are sparse)
        odata, n = other._data, other.cols
        grid = []
        for r in self._data:
            acc = [ZERO] * n
            for a, orow in zip(r, odata):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            grid.append(acc)
        return Matrix._raw(grid, n)

    def apply(self, x: Sequence) -> Vec:
        if len(x) != self.cols:
            raise UsageError("vector length does not match matrix")
        return tuple(dot(r, x) for r in self._data)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise UsageError("power needs a square matrix and k >= 0")
        out, base = Matrix.identity(self.rows), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # predicates
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i]
            for i in range(self.rows) for j in range(i + 1, self.rows))

    def is_antisymmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == -self._data[j][i]
            for i in range(self.rows) for j in range(i, self.rows))

    # reductions
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        work = self.tolist()
        piv = _rref_in_place(work, self.cols)
        return Matrix._raw(work, self.cols), tuple(piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def trace(self) -> Fraction:
        if not self.is_square():
            raise UsageError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), ZERO)

    def det(self) -> Fraction:
        if not self.is_square():
            raise UsageError("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        d = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            piv = a[c][c]
            d *= piv
            for i in range(c + 1, n):
                f = a[i][c] / piv
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d

    def inverse(self) -> "Matrix":
        from .errors import DomainError
        if not self.is_square():
            raise UsageError("inverse of a non-square matrix")
        n = self.rows
        work = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self._data)]
        piv = _rref_in_place(work, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise DomainError("matrix is singular")
        return Matrix._raw([r[n:] for r in work], n)

    def charpoly(self) -> "Poly":
        """Characteristic polynomial det(x I - M) (Faddeev-LeVerrier)."""
        if not self.is_square():
            raise UsageError("charpoly of a non-square matrix")
        n = self.rows
        c = [ZERO] * (n + 1)
        c[n] = ONE
        m = Matrix.zeros(n)
        ident = Matrix.identity(n)
        for k in range(1, n + 1):
            m = self @ m + ident * c[n - k + 1]
            c[n - k] = -(self @ m).trace() / k
        return Poly(c)

    # dunder
    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix[{self.rows}x{self.cols}]({body})"

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self._data]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def _as_column(b) -> Vec:
    if isinstance(b, Matrix):
        if b.cols != 1:
            raise UsageError("right-hand side must be a single column")
        return b.col(0)
    return vec(b)


def solve_linear(A: Matrix, b) -> Matrix | None:
    """Some x with A x = b (free variables zero), or None when inconsistent."""
    rhs = _as_column(b)
    if len(rhs) != A.rows:
        raise UsageError(f"system has {A.rows} rows but right-hand side has {len(rhs)}")
    x = solve_vec(A, rhs)
    return None if x is None else Matrix.column(x)


def solve_vec(A: Matrix, rhs: Sequence) -> Vec | None:
    """Tuple-valued core of solve_linear."""
    n = A.cols
    work = [list(r) + [q(v)] for r, v in zip(A._data, rhs)]
    pivots = _rref_in_place(work, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = work[r][n]
    return tuple(x)


def kernel_basis(A: Matrix) -> list[Matrix]:
    """Basis of {x : A x = 0} as column matrices."""
    return [Matrix.column(v) for v in null_space(A)]


def null_space(A: Matrix) -> list[Vec]:
    return _null_vectors(A.tolist(), A.cols)


def span_basis(vectors: Sequence[Vec], n: int) -> list[Vec]:
    """Canonical (RREF) basis of the span of some vectors in dimension n."""
    work = [list(v) for v in vectors if any(v)]
    piv = _rref_in_place(work, n)
    return [tuple(work[i]) for i in range(len(piv))]


# ---------------------------------------------------------------- polynomials

class Poly:
    """Univariate polynomial over the rationals, coefficients lowest first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [q(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, *roots) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-q(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return Poly(c / lc for c in self.coeffs)

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly((other,))

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO)
                    for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead
        quo = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            f = rem[k + dq] / lc
            quo[k] = f
            if f:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= f * c
        return Poly(quo), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_matrix(self, M: Matrix) -> Matrix:
        """Evaluate at a square matrix by Horner's rule."""
        n = M.rows
        acc = Matrix.zeros(n)
        ident = Matrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ M + ident * c
        return acc

    def at_vector(self, M: Matrix, v: Sequence) -> Vec:
        """p(M) v by Horner's rule on vectors."""
        acc = zero_vec(len(v))
        for c in reversed(self.coeffs):
            acc = vadd(M.apply(acc), vscale(c, v))
        return acc

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    @staticmethod
    def xgcd(a: "Poly", b: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """(g, s, t) with s a + t b = g, g monic."""
        r0, r1 = a, b
        s0, s1 = Poly((1,)), Poly()
        t0, t1 = Poly(), Poly((1,))
        while not r1.is_zero():
            quo, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
            t0, t1 = t1, t0 - quo * t1
        lc = r0.lead
        if not lc:
            return r0, s0, t0
        return r0 * (1 / lc), s0 * (1 / lc), t0 * (1 / lc)

    @staticmethod
    def lcm(a: "Poly", b: "Poly") -> "Poly":
        if a.is_zero() or b.is_zero():
            return Poly()
        return (a * b // Poly.gcd(a, b)).monic()

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self.monic()
        return (self // Poly.gcd(self, self.derivative())).monic()

    def is_squarefree(self) -> bool:
        return self.degree <= 0 or Poly.gcd(self, self.derivative()).degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(mag) if (mag != 1 or i == 0) else ""
            body = coef + ("*" if coef and mon else "") + mon
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------- spectral tools

def min_poly(M: Matrix) -> Poly:
    """Monic minimal polynomial: lcm of the Krylov annihilators of the basis vectors."""
    if not M.is_square():
        raise UsageError("min_poly needs a square matrix")
    n = M.rows
    result = Poly((1,))
    for i in range(n):
        e = unit_vec(n, i)
        if result.degree > 0 and is_zero_vec(result.at_vector(M, e)):
            continue
        krylov = [e]
        while True:
            w = M.apply(krylov[-1])
            coeffs = solve_vec(Matrix.from_columns(krylov, n), w)
            if coeffs is not None:
                ann = Poly([-c for c in coeffs] + [ONE])
                break
            krylov.append(w)
        result = Poly.lcm(result, ann)
    return result


@lru_cache(maxsize=256)
def jordan_chevalley(M: Matrix) -> tuple[Matrix, Matrix]:
    """Split M = S + N with S semisimple, N nilpotent, both polynomials in M."""
    if not M.is_square():
        raise UsageError("jordan_chevalley needs a square matrix")
    if M.rows == 0:
        return M, M
    f = min_poly(M).squarefree_part()
    fprime = f.derivative()
    g, s, _ = Poly.xgcd(fprime, f)
    assert g.degree == 0, "squarefree part shares a factor with its derivative"
    u = s % f
    X = M
    for _ in range(M.rows + 2):
        fx = f.at_matrix(X)
        if fx.is_zero():
            break
        X = X - fx @ u.at_matrix(X)
    else:
        raise AssertionError("Newton iteration for the semisimple part did not terminate")
    return X, M - X


def signature(G: Matrix) -> tuple[int, int, int]:
    """Inertia (negative, positive, zero) of a symmetric matrix by congruence."""
    if not G.is_symmetric():
        raise UsageError("signature needs a symmetric matrix")
    a = G.tolist()
    neg = pos = 0
    while a:
        n = len(a)
        i = next((k for k in range(n) if a[k][k]), None)
        if i is None:
            hit = next(((r, c) for r in range(n) for c in range(r + 1, n) if a[r][c]), None)
            if hit is None:
                break
            r, c = hit
            # basis change e_r -> e_r + e_c turns the hyperbolic pair into a diagonal pivot
            a[r] = [x + y for x, y in zip(a[r], a[c])]
            for row in a:
                row[r] += row[c]
            i = r
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        keep = [k for k in range(n) if k != i]
        a = [[a[r][c] - a[r][i] * a[i][c] / d for c in keep] for r in keep]
    zeros = G.rows - neg - pos
    return neg, pos, zeros
