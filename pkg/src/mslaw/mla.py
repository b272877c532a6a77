"""Line-oriented `.mla` text format for algebras, metrics, derivations, pairs, cochains,
cocycles and witnesses.

Indices in files are 1-based; everything in memory is 0-based.  Sections start with a
header line and run until the next header.  `#` starts a comment.

    algebra h3
    dim 3
    labels X Y Z
    bracket 1 2 = 1 3

    metric g on h3
    entry 1 3 = 1

    derivation D on h3
    row 1 = 1 0 0

    pair P
    l = h3
    Dl = D
    adim 2
    agram 1 = 0 1
    Da 1 = 1 0
    rho 1 2 = 0 0          # row 2 of rho(e_1)

    cochain al deg 2 target a on P      # target a | R | <int>; `dim <n>` when no pair
    at 1 2 = 1 0

    cocycle c on P = al 0 0 0           # alpha gamma delta epsilon, 0 for zero

    witness w
    source = P
    target = P
    S 1 = 1 0 0
    U 1 = 1 0
    tau = t
    sigma = 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cochain import Cochain, MorphismOfPairs, QuadCocycle, TransformPair
from .errors import UsageError
from .lie import LieAlgebra, PairLDA
from .linalg import ZERO, Matrix, q

KINDS = ("algebra", "metric", "derivation", "pair", "cochain", "cocycle", "witness")


class ParseError(UsageError):
    def __init__(self, line: int | None, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}" if line else reason)


# ---------------------------------------------------------------- payloads

@dataclass(frozen=True)
class MetricDef:
    algebra: str
    gram: Matrix


@dataclass(frozen=True)
class DerivationDef:
    algebra: str
    matrix: Matrix


@dataclass(frozen=True)
class PairDef:
    l_name: str
    Dl_name: str
    pair: PairLDA


@dataclass(frozen=True)
class CochainDef:
    cochain: Cochain
    pair: str | None = None


@dataclass(frozen=True)
class CocycleDef:
    parts: tuple[str, str, str, str]
    cocycle: QuadCocycle
    pair: str | None = None


@dataclass(frozen=True)
class WitnessDef:
    source: str | None
    target: str | None
    S: Matrix | None
    U: Matrix | None
    tau: str
    sigma: str
    transform: TransformPair | None


@dataclass(frozen=True)
class Section:
    kind: str
    name: str
    body: Any
    line: int = field(default=0, compare=False)


class MlaDocument:
    """Ordered sections with unique names per kind."""

    def __init__(self, sections=()):
        self.sections: list[Section] = []
        self._index: dict[tuple[str, str], Section] = {}
        for s in sections:
            self.add(s)

    def add(self, section: Section) -> None:
        key = (section.kind, section.name)
        if key in self._index:
            raise ParseError(section.line or None,
                             f"duplicate definition of {section.kind} {section.name!r}")
        self.sections.append(section)
        self._index[key] = section

    def has(self, kind: str, name: str) -> bool:
        return (kind, name) in self._index

    def get(self, kind: str, name: str, line: int | None = None):
        try:
            return self._index[(kind, name)].body
        except KeyError:
            raise ParseError(line, f"unresolved reference to {kind} {name!r}") from None

    def names(self, kind: str) -> list[str]:
        return [s.name for s in self.sections if s.kind == kind]

    # lookups used while parsing; `line` goes into the error
    def algebra_dim(self, name: str, line: int | None = None) -> int:
        return self.get("algebra", name, line).dim

    def pair_at(self, name: str, line: int | None = None) -> PairLDA:
        return self.get("pair", name, line).pair

    def cochain_ref(self, name: str, deg: int, real: bool, line: int | None = None):
        """Cochain by name, None for the literal 0; checks degree and value type."""
        if name == "0":
            return None
        c = self.get("cochain", name, line).cochain
        if c.degree != deg or c.real != real:
            kind = "real" if real else "a-valued"
            raise ParseError(line, f"cochain {name!r} must be a {kind} {deg}-cochain")
        return c

    # convenience accessors
    def algebra(self, name: str) -> LieAlgebra:
        return self.get("algebra", name)

    def metric(self, name: str) -> MetricDef:
        return self.get("metric", name)

    def derivation(self, name: str) -> DerivationDef:
        return self.get("derivation", name)

    def pair(self, name: str) -> PairLDA:
        return self.get("pair", name).pair

    def cochain(self, name: str) -> CochainDef:
        return self.get("cochain", name)

    def cocycle(self, name: str) -> CocycleDef:
        return self.get("cocycle", name)

    def witness(self, name: str) -> WitnessDef:
        return self.get("witness", name)

    def morphism(self, name: str) -> MorphismOfPairs:
        w = self.witness(name)
        if w.S is None or w.U is None or w.source is None or w.target is None:
            raise UsageError(f"witness {name!r} has no morphism (needs source, target, S, U)")
        return MorphismOfPairs(w.S, w.U, self.pair(w.source), self.pair(w.target))

    def transform(self, name: str) -> TransformPair:
        w = self.witness(name)
        if w.transform is None:
            raise UsageError(f"witness {name!r} has no transform")
        return w.transform

    def __eq__(self, other) -> bool:
        return isinstance(other, MlaDocument) and self.sections == other.sections

    def __repr__(self) -> str:
        return "MlaDocument(" + ", ".join(f"{s.kind} {s.name}" for s in self.sections) + ")"


# ---------------------------------------------------------------- parsing helpers

def _num(tok: str, line: int) -> Fraction:
    try:
        return q(tok)
    except (ValueError, ZeroDivisionError, UsageError):
        raise ParseError(line, f"not a rational number: {tok!r}") from None


def _int(tok: str, line: int, what: str = "index") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None


def _index(tok: str, bound: int, line: int, what: str = "index") -> int:
    i = _int(tok, line, what)
    if not 1 <= i <= bound:
        raise ParseError(line, f"{what} {i} out of range 1..{bound}")
    return i - 1


def _split_eq(rest: list[str], line: int) -> tuple[list[str], list[str]]:
    if "=" not in rest:
        raise ParseError(line, "expected '='")
    k = rest.index("=")
    return rest[:k], rest[k + 1:]


def _row(values: list[str], width: int, line: int) -> list[Fraction]:
    if len(values) != width:
        raise ParseError(line, f"expected {width} entries, got {len(values)}")
    return [_num(v, line) for v in values]


class _Builder:
    """Accumulates one section's body lines."""

    def __init__(self, doc: MlaDocument, kind: str, header: list[str], line: int):
        self.doc, self.kind, self.line = doc, kind, line
        self.name = header[1] if len(header) > 1 else None
        if self.name is None or self.name in ("=", "on"):
            raise ParseError(line, f"{kind} needs a name")
        getattr(self, f"_start_{kind}")(header[2:])

    # algebra ---------------------------------------------------------------
    def _start_algebra(self, rest):
        if rest:
            raise ParseError(self.line, "unexpected tokens after algebra name")
        self.dim = None
        self.labels = None
        self.brackets: dict[tuple[int, int], list[Fraction]] = {}

    def _body_algebra(self, toks, line):
        key = toks[0]
        if key == "dim":
            if self.dim is not None:
                raise ParseError(line, "dim given twice")
            if len(toks) != 2:
                raise ParseError(line, "usage: dim <n>")
            self.dim = _int(toks[1], line, "dim")
            if self.dim < 0:
                raise ParseError(line, "dim must be non-negative")
        elif key == "labels":
            self._need_dim(line)
            if len(toks) - 1 != self.dim:
                raise ParseError(line, f"expected {self.dim} labels")
            self.labels = toks[1:]
        elif key == "bracket":
            self._need_dim(line)
            lhs, rhs = _split_eq(toks[1:], line)
            if len(lhs) != 2:
                raise ParseError(line, "usage: bracket <i> <j> = <coef> <k> ...")
            i, j = (_index(t, self.dim, line) for t in lhs)
            if i == j:
                raise ParseError(line, "bracket of equal indices must be zero")
            if len(rhs) % 2:
                raise ParseError(line, "bracket terms come in <coef> <k> pairs")
            vec = [ZERO] * self.dim
            for t in range(0, len(rhs), 2):
                vec[_index(rhs[t + 1], self.dim, line)] += _num(rhs[t], line)
            if (i, j) in self.brackets or (j, i) in self.brackets:
                raise ParseError(line, f"bracket {i + 1} {j + 1} given twice")
            self.brackets[(i, j)] = vec
        else:
            raise ParseError(line, f"unknown algebra line {key!r}")

    def _need_dim(self, line):
        if self.dim is None:
            raise ParseError(line, "dim must come first")

    def _finish_algebra(self):
        if self.dim is None:
            raise ParseError(self.line, f"algebra {self.name!r} has no dim")
        return LieAlgebra.from_brackets(self.dim, self.brackets, self.labels)

    # metric / derivation --------------------------------------------------------
    def _on_algebra(self, rest):
        if len(rest) != 2 or rest[0] != "on":
            raise ParseError(self.line, f"usage: {self.kind} <name> on <algebra>")
        self.alg_name = rest[1]
        self.n = self.doc.algebra_dim(rest[1], self.line)

    def _start_metric(self, rest):
        self._on_algebra(rest)
        self.grid = [[ZERO] * self.n for _ in range(self.n)]
        self.seen: set = set()

    def _body_metric(self, toks, line):
        if toks[0] != "entry":
            raise ParseError(line, f"unknown metric line {toks[0]!r}")
        lhs, rhs = _split_eq(toks[1:], line)
        if len(lhs) != 2 or len(rhs) != 1:
            raise ParseError(line, "usage: entry <i> <j> = <coef>")
        i, j = (_index(t, self.n, line) for t in lhs)
        key = (min(i, j), max(i, j))
        if key in self.seen:
            raise ParseError(line, f"entry {i + 1} {j + 1} given twice")
        self.seen.add(key)
        v = _num(rhs[0], line)
        self.grid[i][j] = self.grid[j][i] = v

    def _finish_metric(self):
        return MetricDef(self.alg_name, Matrix(self.grid, cols=self.n))

    def _start_derivation(self, rest):
        self._on_algebra(rest)
        self.grid = [[ZERO] * self.n for _ in range(self.n)]
        self.seen = set()

    def _body_derivation(self, toks, line):
        if toks[0] != "row":
            raise ParseError(line, f"unknown derivation line {toks[0]!r}")
        self._matrix_row(toks, line, self.grid, self.n, self.n, self.seen)

    def _finish_derivation(self):
        return DerivationDef(self.alg_name, Matrix(self.grid, cols=self.n))

    @staticmethod
    def _matrix_row(toks, line, grid, rows, cols, seen, tag=None):
        lhs, rhs = _split_eq(toks[1:], line)
        if len(lhs) != 1:
            raise ParseError(line, f"usage: {toks[0]} <r> = <entries>")
        r = _index(lhs[0], rows, line, "row")
        key = (tag, r)
        if key in seen:
            raise ParseError(line, f"row {r + 1} given twice")
        seen.add(key)
        grid[r] = _row(rhs, cols, line)

    # pair -------------------------------------------------------------------------
    def _start_pair(self, rest):
        if rest:
            raise ParseError(self.line, "unexpected tokens after pair name")
        self.l_name = self.Dl_name = None
        self.m = None
        self.agram = self.Da = None
        self.rho: dict = {}
        self.seen = set()

    def _body_pair(self, toks, line):
        key = toks[0]
        if key in ("l", "Dl"):
            if len(toks) != 3 or toks[1] != "=":
                raise ParseError(line, f"usage: {key} = <name>")
            if key == "l":
                self.doc.algebra_dim(toks[2], line)
                self.l_name = toks[2]
            else:
                d = self.doc.get("derivation", toks[2], line)
                self.Dl_name = toks[2]
                self.Dl_alg = d.algebra
        elif key == "adim":
            if len(toks) != 2:
                raise ParseError(line, "usage: adim <m>")
            self.m = _int(toks[1], line, "adim")
            if self.m < 0:
                raise ParseError(line, "adim must be non-negative")
            self.agram = [[ZERO] * self.m for _ in range(self.m)]
            self.Da = [[ZERO] * self.m for _ in range(self.m)]
        elif key in ("agram", "Da"):
            self._need_m(line)
            self._matrix_row(toks, line, self.agram if key == "agram" else self.Da,
                             self.m, self.m, self.seen, key)
        elif key == "rho":
            self._need_m(line)
            if self.l_name is None:
                raise ParseError(line, "l must come before rho")
            n = self.doc.algebra(self.l_name).dim
            if len(toks) < 3:
                raise ParseError(line, "usage: rho <i> <r> = <entries>")
            i = _index(toks[1], n, line)
            grid = self.rho.setdefault(i, [[ZERO] * self.m for _ in range(self.m)])
            self._matrix_row(["rho"] + toks[2:], line, grid, self.m, self.m, self.seen, ("rho", i))
        else:
            raise ParseError(line, f"unknown pair line {key!r}")

    def _need_m(self, line):
        if self.m is None:
            raise ParseError(line, "adim must come first")

    def _finish_pair(self):
        if self.l_name is None or self.Dl_name is None:
            raise ParseError(self.line, "pair needs l and Dl")
        if self.Dl_alg != self.l_name:
            raise ParseError(self.line, f"Dl is a derivation of {self.Dl_alg!r}, not of l")
        m = self.m or 0
        l = self.doc.algebra(self.l_name)
        agram = Matrix(self.agram or [], cols=m)
        Da = Matrix(self.Da or [], cols=m)
        rho = tuple(Matrix(self.rho.get(i, [[ZERO] * m for _ in range(m)]), cols=m)
                    for i in range(l.dim))
        pair = PairLDA(l, self.doc.derivation(self.Dl_name).matrix, agram, Da, rho)
        return PairDef(self.l_name, self.Dl_name, pair)

    # cochain ------------------------------------------------------------------------
    def _start_cochain(self, rest):
        usage = "usage: cochain <name> deg <p> target <a|R|m> [on <pair>]"
        if len(rest) not in (4, 6) or rest[0] != "deg" or rest[2] != "target":
            raise ParseError(self.line, usage)
        self.deg = _int(rest[1], self.line, "degree")
        if self.deg < 0:
            raise ParseError(self.line, "degree must be non-negative")
        self.pair_name = None
        self.n = None
        if len(rest) == 6:
            if rest[4] != "on":
                raise ParseError(self.line, usage)
            self.pair_name = rest[5]
            p = self.doc.pair_at(rest[5], self.line)
            self.n = p.n
        tgt = rest[3]
        if tgt == "R":
            self.target = None
        elif tgt == "a":
            if self.pair_name is None:
                raise ParseError(self.line, "target a needs 'on <pair>'")
            self.target = self.doc.pair(self.pair_name).a_dim
        else:
            self.target = _int(tgt, self.line, "target")
            if self.target < 0:
                raise ParseError(self.line, "target must be non-negative")
        self.values = {}

    def _body_cochain(self, toks, line):
        key = toks[0]
        if key == "dim":
            if self.n is not None:
                raise ParseError(line, "dim conflicts with 'on <pair>' or was given twice")
            if len(toks) != 2:
                raise ParseError(line, "usage: dim <n>")
            self.n = _int(toks[1], line, "dim")
        elif key == "at":
            if self.n is None:
                raise ParseError(line, "base dimension unknown: add 'dim <n>' or 'on <pair>'")
            lhs, rhs = _split_eq(toks[1:], line)
            if len(lhs) != self.deg:
                raise ParseError(line, f"expected {self.deg} indices")
            idx = tuple(_index(t, self.n, line) for t in lhs)
            if len(set(idx)) != len(idx):
                raise ParseError(line, "repeated index in an alternating cochain")
            if tuple(sorted(idx)) in {tuple(sorted(k)) for k in self.values}:
                raise ParseError(line, "value given twice for the same index set")
            width = 1 if self.target is None else self.target
            self.values[idx] = tuple(_row(rhs, width, line))
        else:
            raise ParseError(line, f"unknown cochain line {key!r}")

    def _finish_cochain(self):
        if self.n is None:
            raise ParseError(self.line, "cochain base dimension unknown")
        return CochainDef(Cochain(self.n, self.deg, self.target, self.values), self.pair_name)

    # cocycle (single line) ---------------------------------------------------------------
    def _start_cocycle(self, rest):
        pair_name = None
        if rest[:1] == ["on"]:
            if len(rest) < 2:
                raise ParseError(self.line, "usage: cocycle <name> [on <pair>] = a g d e")
            pair_name = rest[1]
            self.doc.pair_at(pair_name, self.line)
            rest = rest[2:]
        if len(rest) != 5 or rest[0] != "=":
            raise ParseError(self.line, "usage: cocycle <name> [on <pair>] = a g d e")
        names = tuple(rest[1:])
        specs = ((2, False), (3, True), (1, False), (2, True))
        parts = [self.doc.cochain_ref(nm, deg, real, self.line)
                 for nm, (deg, real) in zip(names, specs)]
        real_parts = [p for p in parts if p is not None]
        if pair_name is not None:
            p = self.doc.pair(pair_name)
            n, m = p.n, p.a_dim
        elif real_parts:
            n = real_parts[0].n
            a_valued = [p for p in (parts[0], parts[2]) if p is not None]
            if not a_valued:
                raise ParseError(self.line, "cannot infer dim a: give 'on <pair>'")
            m = a_valued[0].target
        else:
            raise ParseError(self.line, "cocycle of zeros needs 'on <pair>'")
        filled = []
        for part, (deg, real) in zip(parts, specs):
            filled.append(part if part is not None else Cochain.zero(n, deg, None if real else m))
        try:
            c = QuadCocycle(*filled)
        except UsageError as exc:
            raise ParseError(self.line, str(exc)) from None
        if c.n != n or c.a_dim != m:
            raise ParseError(self.line, "cochains do not live on the cocycle's pair")
        self.body = CocycleDef(names, c, pair_name)

    def _finish_cocycle(self):
        return self.body

    # witness ----------------------------------------------------------------------------
    def _start_witness(self, rest):
        if rest:
            raise ParseError(self.line, "unexpected tokens after witness name")
        self.refs = {}
        self.S_rows: dict = {}
        self.U_rows: dict = {}

    def _body_witness(self, toks, line):
        key = toks[0]
        if key in ("source", "target", "tau", "sigma"):
            if len(toks) != 3 or toks[1] != "=":
                raise ParseError(line, f"usage: {key} = <name>")
            if key in self.refs:
                raise ParseError(line, f"{key} given twice")
            if key in ("source", "target"):
                self.doc.pair_at(toks[2], line)
            self.refs[key] = (toks[2], line)
        elif key in ("S", "U"):
            lhs, rhs = _split_eq(toks[1:], line)
            if len(lhs) != 1:
                raise ParseError(line, f"usage: {key} <r> = <entries>")
            r = _int(lhs[0], line, "row")
            rows = self.S_rows if key == "S" else self.U_rows
            if r in rows:
                raise ParseError(line, f"{key} row {r} given twice")
            rows[r] = ([_num(v, line) for v in rhs], line)
        else:
            raise ParseError(line, f"unknown witness line {key!r}")

    def _witness_matrix(self, rows: dict, nrows: int, ncols: int, what: str) -> Matrix:
        grid = [[ZERO] * ncols for _ in range(nrows)]
        for r, (vals, line) in rows.items():
            if not 1 <= r <= nrows:
                raise ParseError(line, f"{what} row {r} out of range 1..{nrows}")
            if len(vals) != ncols:
                raise ParseError(line, f"{what} rows need {ncols} entries")
            grid[r - 1] = vals
        return Matrix(grid, cols=ncols)

    def _finish_witness(self):
        src = self.refs.get("source", (None, 0))[0]
        tgt = self.refs.get("target", (None, 0))[0]
        S = U = None
        if self.S_rows or self.U_rows:
            if src is None or tgt is None:
                raise ParseError(self.line, "S and U need source and target pairs")
            p1, p2 = self.doc.pair(src), self.doc.pair(tgt)
            S = self._witness_matrix(self.S_rows, p2.n, p1.n, "S")
            U = self._witness_matrix(self.U_rows, p1.a_dim, p2.a_dim, "U")
        tau_name, tl = self.refs.get("tau", ("0", self.line))
        sig_name, sl = self.refs.get("sigma", ("0", self.line))
        tau = self.doc.cochain_ref(tau_name, 1, False, tl)
        sig = self.doc.cochain_ref(sig_name, 2, True, sl)
        transform = None
        base = self.doc.pair(src) if src else None
        if tau is None and sig is None:
            if base is not None:
                transform = TransformPair.identity(base.n, base.a_dim)
        else:
            if tau is None:
                if base is None:
                    raise ParseError(tl, "tau = 0 needs a source pair to size it")
                tau = Cochain.zero(sig.n, 1, base.a_dim)
            if sig is None:
                sig = Cochain.zero(tau.n, 2, None)
            try:
                transform = TransformPair(tau, sig)
            except UsageError as exc:
                raise ParseError(self.line, str(exc)) from None
        return WitnessDef(src, tgt, S, U, tau_name, sig_name, transform)

    # dispatch --------------------------------------------------------------------------
    def body(self, toks, line):
        handler = getattr(self, f"_body_{self.kind}", None)
        if handler is None:
            raise ParseError(line, f"{self.kind} sections take no body lines")
        handler(toks, line)

    def finish(self) -> Section:
        try:
            payload = getattr(self, f"_finish_{self.kind}")()
        except ParseError:
            raise
        except UsageError as exc:
            raise ParseError(self.line, str(exc)) from None
        return Section(self.kind, self.name, payload, self.line)


def parse_mla(text: str) -> MlaDocument:
    doc = MlaDocument()
    current: _Builder | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] in KINDS:
            if current is not None:
                doc.add(current.finish())
            current = _Builder(doc, toks[0], toks, lineno)
            if toks[0] == "cocycle":
                doc.add(current.finish())
                current = None
            continue
        if current is None:
            raise ParseError(lineno, f"line outside any section: {toks[0]!r}")
        current.body(toks, lineno)
    if current is not None:
        doc.add(current.finish())
    return doc


def read_mla(path: str) -> MlaDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not UTF-8 text") from None
    return parse_mla(text)


# ---------------------------------------------------------------- emitting

def _fmt(x: Fraction) -> str:
    return str(x)


def _fmt_row(values) -> str:
    return " ".join(_fmt(v) for v in values)


def _emit_matrix_rows(key: str, M: Matrix, out: list[str]) -> None:
    for r in range(M.rows):
        row = M.row(r)
        if any(row):
            out.append(f"{key} {r + 1} = {_fmt_row(row)}")


def _emit_section(s: Section) -> list[str]:
    out: list[str] = []
    b = s.body
    if s.kind == "algebra":
        out += [f"algebra {s.name}", f"dim {b.dim}"]
        if b.labels is not None:
            out.append("labels " + " ".join(b.labels))
        for i, j, v in b.nonzero_brackets:
            terms = " ".join(f"{_fmt(c)} {k + 1}" for k, c in enumerate(v) if c)
            out.append(f"bracket {i + 1} {j + 1} = {terms}")
    elif s.kind == "metric":
        out.append(f"metric {s.name} on {b.algebra}")
        G = b.gram
        for i in range(G.rows):
            for j in range(i, G.cols):
                if G[i, j]:
                    out.append(f"entry {i + 1} {j + 1} = {_fmt(G[i, j])}")
    elif s.kind == "derivation":
        out.append(f"derivation {s.name} on {b.algebra}")
        _emit_matrix_rows("row", b.matrix, out)
    elif s.kind == "pair":
        p = b.pair
        out += [f"pair {s.name}", f"l = {b.l_name}", f"Dl = {b.Dl_name}", f"adim {p.a_dim}"]
        _emit_matrix_rows("agram", p.a_gram, out)
        _emit_matrix_rows("Da", p.Da, out)
        for i, r in enumerate(p.rho):
            _emit_matrix_rows(f"rho {i + 1}", r, out)
    elif s.kind == "cochain":
        c = b.cochain
        if c.real:
            tgt = "R"
        elif b.pair is not None:
            tgt = "a"
        else:
            tgt = str(c.target)
        head = f"cochain {s.name} deg {c.degree} target {tgt}"
        if b.pair is not None:
            out.append(f"{head} on {b.pair}")
        else:
            out += [head, f"dim {c.n}"]
        for key, v in c.values.items():
            idx = " ".join(str(k + 1) for k in key)
            out.append(f"at {idx} = {_fmt_row(v)}".replace("at  =", "at ="))
    elif s.kind == "cocycle":
        on = f" on {b.pair}" if b.pair else ""
        out.append(f"cocycle {s.name}{on} = {' '.join(b.parts)}")
    elif s.kind == "witness":
        out.append(f"witness {s.name}")
        if b.source:
            out.append(f"source = {b.source}")
        if b.target:
            out.append(f"target = {b.target}")
        if b.S is not None:
            for r in range(b.S.rows):
                out.append(f"S {r + 1} = {_fmt_row(b.S.row(r))}")
        if b.U is not None:
            for r in range(b.U.rows):
                out.append(f"U {r + 1} = {_fmt_row(b.U.row(r))}")
        out += [f"tau = {b.tau}", f"sigma = {b.sigma}"]
    return out


def emit_mla(doc: MlaDocument) -> str:
    blocks = ["\n".join(_emit_section(s)) for s in doc.sections]
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------- document builders

class DocumentBuilder:
    """Assemble a document from library objects, creating names as needed."""

    def __init__(self, doc: MlaDocument | None = None):
        self.doc = doc if doc is not None else MlaDocument()

    def _fresh(self, kind: str, name: str) -> str:
        if not self.doc.has(kind, name):
            return name
        k = 2
        while self.doc.has(kind, f"{name}{k}"):
            k += 1
        return f"{name}{k}"

    def algebra(self, name: str, g: LieAlgebra) -> str:
        name = self._fresh("algebra", name)
        self.doc.add(Section("algebra", name, g))
        return name

    def metric(self, name: str, algebra: str, gram: Matrix) -> str:
        name = self._fresh("metric", name)
        self.doc.add(Section("metric", name, MetricDef(algebra, gram)))
        return name

    def derivation(self, name: str, algebra: str, D: Matrix) -> str:
        name = self._fresh("derivation", name)
        self.doc.add(Section("derivation", name, DerivationDef(algebra, D)))
        return name

    def pair(self, name: str, pair: PairLDA) -> str:
        l_name = self.algebra(f"{name}_l", pair.l)
        d_name = self.derivation(f"{name}_Dl", l_name, pair.Dl)
        name = self._fresh("pair", name)
        self.doc.add(Section("pair", name, PairDef(l_name, d_name, pair)))
        return name

    def cochain(self, name: str, c: Cochain, pair: str | None) -> str:
        if c.is_zero():
            return "0"
        name = self._fresh("cochain", name)
        self.doc.add(Section("cochain", name, CochainDef(c, pair)))
        return name

    def cocycle(self, name: str, c: QuadCocycle, pair: str) -> str:
        parts = tuple(self.cochain(f"{name}_{tag}", x, pair)
                      for tag, x in zip(("alpha", "gamma", "delta", "epsilon"), c.parts()))
        name = self._fresh("cocycle", name)
        self.doc.add(Section("cocycle", name, CocycleDef(parts, c, pair)))
        return name

    def transform_witness(self, name: str, t: TransformPair, pair: str,
                          morphism: MorphismOfPairs | None = None,
                          target: str | None = None) -> str:
        tau = self.cochain(f"{name}_tau", t.tau, pair)
        sig = self.cochain(f"{name}_sigma", t.sigma, pair)
        name = self._fresh("witness", name)
        S = U = None
        if morphism is not None:
            S, U = morphism.S, morphism.U
        tgt = target if morphism is not None else None
        self.doc.add(Section("witness", name, WitnessDef(pair, tgt, S, U, tau, sig, t)))
        return name


__all__ = [
    "ParseError", "MlaDocument", "Section", "MetricDef", "DerivationDef", "PairDef",
    "CochainDef", "CocycleDef", "WitnessDef", "parse_mla", "read_mla", "emit_mla",
    "DocumentBuilder",
]
