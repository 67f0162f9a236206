"""Exact scalars, dense matrices and sparse elimination over Q and F_p.

Every routine here is exact. Rational elimination keeps rows as primitive
integer vectors (fraction-free), prime-field elimination keeps pivots at 1.
Both maintain reduced row echelon form with the first nonzero column as
pivot, so the null-space basis returned for a given row space is unique.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from sympy import isprime

from .config import Settings


class InputError(ValueError):
    """Malformed or mismatched input (shapes, fields, schema)."""


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise InputError("the rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or isinstance(self.p, bool) or not isprime(self.p):
                raise InputError(f"modulus {self.p!r} is not a prime")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``, ``rationals``, ``F5``, ``GF5`` or ``p:5``."""
        t = text.strip()
        if t.lower() in ("q", "qq", "rationals", "rational"):
            return cls.rationals()
        for prefix in ("gf", "f", "p:", "p="):
            if t.lower().startswith(prefix) and t[len(prefix):].isdigit():
                return cls.prime(int(t[len(prefix):]))
        if t.isdigit():
            return cls.prime(int(t))
        raise InputError(f"cannot parse field {text!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def label(self) -> str:
        return "Q" if self.kind == "rationals" else f"F{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or exact string into this field."""
        if isinstance(x, bool) or isinstance(x, float):
            raise InputError(f"refusing inexact scalar {x!r}")
        if isinstance(x, str):
            x = _parse_scalar(x)
        if self.p is None:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            raise InputError(f"cannot coerce {x!r}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in {self.label}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise InputError(f"cannot coerce {x!r}")

    def canon(self, x):
        """Canonical form of a value produced by native +, -, *."""
        if self.p is None:
            return x if type(x) is Fraction else Fraction(x)
        return x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        x = self.canon(x)
        if self.p is None:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "rationals"} if self.p is None else {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, doc) -> "FieldSpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise InputError("field must be an object with a 'kind'")
        if doc["kind"] == "rationals":
            return cls.rationals()
        if doc["kind"] == "prime":
            return cls.prime(doc.get("p"))
        raise InputError(f"unknown field kind {doc['kind']!r}")


def _parse_scalar(s: str):
    s = s.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return int(s)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad exact scalar {s!r}") from None


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


# ---------------------------------------------------------------------------
# dense matrices


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    nrows: int
    ncols: int
    data: tuple = dc_field(repr=False)

    def __post_init__(self):
        if len(self.data) != self.nrows or any(len(r) != self.ncols for r in self.data):
            raise InputError("matrix data does not match its shape")

    # constructors -----------------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(v) if not _is_elem(field, v) else field.canon(v) for v in r) for r in rows)
        if ncols is None:
            if not data:
                raise InputError("ncols required for an empty matrix")
            ncols = len(data[0])
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = list(cols)
        data = tuple(tuple(field.canon(c[i]) for c in cols) for i in range(nrows))
        return cls(field, nrows, len(cols), data)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_sparse(cls, field: FieldSpec, nrows: int, ncols: int, entries: dict) -> "Matrix":
        rows = [[field.zero] * ncols for _ in range(nrows)]
        for (i, j), v in entries.items():
            rows[i][j] = field.canon(rows[i][j] + v)
        return cls(field, nrows, ncols, tuple(tuple(r) for r in rows))

    # access -----------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(idx), self.ncols, tuple(self.data[i] for i in idx))

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.nrows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.data]

    # arithmetic -------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.data)) if self.nrows else
                      tuple(() for _ in range(self.ncols)))

    def _check_field(self, other: "Matrix"):
        if other.field != self.field:
            raise InputError(f"field mismatch: {self.field.label} vs {other.field.label}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        odata = other.data
        nz_other = [[(j, v) for j, v in enumerate(r) if v] for r in odata]
        out = []
        for r in self.data:
            acc = [0] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in nz_other[k]:
                        acc[j] += a * b
            out.append(tuple(f.canon(x) for x in acc))
        return Matrix(f, self.nrows, other.ncols, tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise InputError("vector length mismatch")
        f = self.field
        return tuple(f.canon(sum((a * b for a, b in zip(r, vec) if a and b), 0)) for r in self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise InputError("shape mismatch in addition")
        f = self.field
        return Matrix(f, self.nrows, self.ncols,
                      tuple(tuple(f.canon(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.nrows, self.ncols, tuple(tuple(f.canon(-a) for a in r) for r in self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        f = self.field
        s = f.canon(s)
        return Matrix(f, self.nrows, self.ncols, tuple(tuple(f.canon(s * a) for a in r) for r in self.data))

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, left factor major (lexicographic product bases)."""
        self._check_field(other)
        f = self.field
        rows = []
        for r in self.data:
            for s in other.data:
                rows.append(tuple(f.canon(a * b) for a in r for b in s))
        return Matrix(f, self.nrows * other.nrows, self.ncols * other.ncols, tuple(rows))

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.nrows != other.nrows:
            raise InputError("row mismatch in hstack")
        return Matrix(self.field, self.nrows, self.ncols + other.ncols,
                      tuple(r + s for r, s in zip(self.data, other.data)))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise InputError("column mismatch in vstack")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self.data + other.data)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.field, self.nrows)

    def rank(self) -> int:
        return rank(self)

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(v) for v in r] for r in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(v) for v in r) for r in self.data[:6])
        more = " ..." if self.nrows > 6 else ""
        return f"Matrix<{self.field.label} {self.nrows}x{self.ncols}>[{body}{more}]"


def _is_elem(field: FieldSpec, v) -> bool:
    if field.p is None:
        return type(v) is Fraction or (type(v) is int)
    return type(v) is int


def column_vector(field: FieldSpec, values: Sequence) -> Matrix:
    return Matrix.from_rows(field, [[v] for v in values], ncols=1)


# ---------------------------------------------------------------------------
# sparse elimination


class _PrimeEchelon:
    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    def _normalize_input(self, row: dict) -> dict:
        p = self.p
        out = {}
        for j, v in row.items():
            v = int(v) % p if not isinstance(v, Fraction) else v.numerator * pow(v.denominator, -1, p) % p
            if v:
                out[j] = v
        return out

    def reduce(self, row: dict) -> dict:
        p = self.p
        r = self._normalize_input(row)
        for c in [c for c in r if c in self.pivots]:
            coef = r.get(c)
            if not coef:
                continue
            for j, v in self.pivots[c].items():
                nv = (r.get(j, 0) - coef * v) % p
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        return r

    def insert(self, row: dict) -> int | None:
        r = self.reduce(row)
        if not r:
            return None
        p = self.p
        c = min(r)
        inv = pow(r[c], -1, p)
        r = {j: v * inv % p for j, v in r.items()}
        for pc, prow in self.pivots.items():
            coef = prow.get(c)
            if coef:
                for j, v in r.items():
                    nv = (prow.get(j, 0) - coef * v) % p
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        self.pivots[c] = r
        return c

    def pivot_value(self, c: int, j: int):
        """Entry j of the pivot row at c, divided by its pivot entry."""
        return self.pivots[c].get(j, 0)


class _RationalEchelon:
    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @staticmethod
    def _primitive(r: dict) -> dict:
        g = 0
        for v in r.values():
            g = math.gcd(g, v)
            if g == 1:
                return r
        if g > 1:
            return {j: v // g for j, v in r.items()}
        return r

    @staticmethod
    def _integerize(row: dict) -> dict:
        den = 1
        for v in row.values():
            if isinstance(v, Fraction) and v.denominator != 1:
                den = den * v.denominator // math.gcd(den, v.denominator)
        out = {}
        for j, v in row.items():
            if v:
                out[j] = int(v * den) if den != 1 else int(v)
        return _RationalEchelon._primitive(out)

    def reduce(self, row: dict) -> dict:
        r = self._integerize(row)
        for c in [c for c in r if c in self.pivots]:
            coef = r.get(c)
            if not coef:
                continue
            prow = self.pivots[c]
            a = prow[c]
            g = math.gcd(a, coef)
            ma, mc = a // g, coef // g
            new = {}
            for j in set(r) | set(prow):
                nv = ma * r.get(j, 0) - mc * prow.get(j, 0)
                if nv:
                    new[j] = nv
            r = self._primitive(new)
        return r

    def insert(self, row: dict) -> int | None:
        r = self.reduce(row)
        if not r:
            return None
        c = min(r)
        if r[c] < 0:
            r = {j: -v for j, v in r.items()}
        a = r[c]
        for pc in list(self.pivots):
            prow = self.pivots[pc]
            coef = prow.get(c)
            if coef:
                g = math.gcd(a, coef)
                ma, mc = a // g, coef // g
                new = {}
                for j in set(prow) | set(r):
                    nv = ma * prow.get(j, 0) - mc * r.get(j, 0)
                    if nv:
                        new[j] = nv
                new = self._primitive(new)
                if new[pc] < 0:
                    new = {j: -v for j, v in new.items()}
                self.pivots[pc] = new
        self.pivots[c] = r
        return c

    def pivot_value(self, c: int, j: int):
        prow = self.pivots[c]
        v = prow.get(j, 0)
        return Fraction(v, prow[c]) if v else Fraction(0)


def echelon(field: FieldSpec, ncols: int):
    """Incremental reduced row echelon form over ``field``."""
    if field.p is None:
        return _RationalEchelon(ncols)
    return _PrimeEchelon(field.p, ncols)


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n with a basis whose rows at ``key`` form the identity.

    Coordinates of a member vector are therefore its entries at ``key``.
    """

    basis: Matrix  # ambient x dim, columns are basis vectors
    key: tuple

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def ambient(self) -> int:
        return self.basis.nrows

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    def coords(self, vec: Sequence, check: bool = True) -> tuple:
        c = tuple(vec[i] for i in self.key)
        if check and tuple(self.basis.apply(c)) != tuple(self.field.canon(v) for v in vec):
            raise ValueError("vector is not in the subspace")
        return c

    def contains(self, vec: Sequence) -> bool:
        c = tuple(vec[i] for i in self.key)
        return tuple(self.basis.apply(c)) == tuple(self.field.canon(v) for v in vec)

    def coords_matrix(self, M: Matrix, check: bool = True) -> Matrix:
        """Coordinates of every column of ``M`` (ambient x k) as a dim x k matrix."""
        sub = M.select_rows(self.key)
        if check and self.basis @ sub != M:
            raise ValueError("columns are not in the subspace")
        return sub


def kernel_space(field: FieldSpec, rows: Iterable[dict], ncols: int) -> Subspace:
    """Null space of the sparse system ``rows`` (dicts col -> value)."""
    ech = echelon(field, ncols)
    for r in rows:
        if r:
            ech.insert(r)
    return _kernel_from_echelon(field, ech, ncols)


def _kernel_from_echelon(field: FieldSpec, ech, ncols: int) -> Subspace:
    free = [j for j in range(ncols) if j not in ech.pivots]
    cols = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for c in ech.pivots:
            pv = ech.pivot_value(c, f)
            if pv:
                v[c] = field.canon(-pv)
        cols.append(v)
    return Subspace(Matrix.from_columns(field, cols, ncols), tuple(free))


def span_space(field: FieldSpec, vectors: Iterable[Sequence], ambient: int) -> Subspace:
    """Span of ``vectors``; basis = rows of the reduced echelon form."""
    ech = echelon(field, ambient)
    for v in vectors:
        ech.insert({j: x for j, x in enumerate(v) if x})
    piv = sorted(ech.pivots)
    cols = []
    for c in piv:
        cols.append([ech.pivot_value(c, j) if j != c else field.one for j in range(ambient)])
    return Subspace(Matrix.from_columns(field, cols, ambient), tuple(piv))


def kernel(A: Matrix) -> Matrix:
    """Columns form a basis of {x : A x = 0}."""
    return kernel_space(A.field, A.sparse_rows(), A.ncols).basis


def rank(A: Matrix) -> int:
    ech = echelon(A.field, A.ncols)
    return sum(1 for r in A.sparse_rows() if r and ech.insert(r) is not None)


def rank_of_vectors(field: FieldSpec, vectors: Iterable[Sequence], ambient: int) -> int:
    ech = echelon(field, ambient)
    n = 0
    for v in vectors:
        if ech.insert({j: x for j, x in enumerate(v) if x}) is not None:
            n += 1
    return n


def solve_sparse(field: FieldSpec, rows: Sequence[dict], rhs: Sequence, ncols: int):
    """Solve a sparse affine system; returns (x0, null Subspace) or None."""
    if len(rows) != len(rhs):
        raise InputError("rows/rhs length mismatch")
    ech = echelon(field, ncols + 1)
    for r, b in zip(rows, rhs):
        aug = dict(r)
        if b:
            aug[ncols] = b
        if aug:
            ech.insert(aug)
    if ncols in ech.pivots:
        return None
    x0 = [field.zero] * ncols
    for c in ech.pivots:
        x0[c] = field.canon(ech.pivot_value(c, ncols))
    # null space: drop the augmented column
    free = [j for j in range(ncols) if j not in ech.pivots]
    cols = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for c in ech.pivots:
            pv = ech.pivot_value(c, f)
            if pv:
                v[c] = field.canon(-pv)
        cols.append(v)
    return tuple(x0), Subspace(Matrix.from_columns(field, cols, ncols), tuple(free))


def solve(A: Matrix, b: Sequence):
    """Particular solution and null basis of A x = b, or None if inconsistent."""
    if len(b) != A.nrows:
        raise InputError(f"rhs length {len(b)} != rows {A.nrows}")
    f = A.field
    res = solve_sparse(f, A.sparse_rows(), [f(v) if not _is_elem(f, v) else f.canon(v) for v in b], A.ncols)
    if res is None:
        return None
    x0, null = res
    return x0, null.basis


def det(A: Matrix):
    if A.nrows != A.ncols:
        raise InputError("determinant of a non-square matrix")
    f = A.field
    n = A.nrows
    if f.p is not None:
        p = f.p
        M = [list(r) for r in A.data]
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if M[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                d = -d
            d = d * M[c][c] % p
            inv = pow(M[c][c], -1, p)
            for i in range(c + 1, n):
                if M[i][c]:
                    k = M[i][c] * inv % p
                    Mi, Mc = M[i], M[c]
                    for j in range(c, n):
                        Mi[j] = (Mi[j] - k * Mc[j]) % p
        return d % p
    # Bareiss on integer rows; row scales are divided out at the end
    scale = Fraction(1)
    M = []
    for r in A.data:
        den = 1
        for v in r:
            den = den * v.denominator // math.gcd(den, v.denominator)
        scale *= den
        M.append([int(v * den) for v in r])
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
            M[i][c] = 0
        prev = M[c][c]
    val = M[n - 1][n - 1] if n else 1
    return Fraction(sign * val) / scale


# ---------------------------------------------------------------------------
# existence of an invertible member of an affine matrix family


@dataclass(frozen=True)
class FamilyResult:
    status: str  # "witness" | "none" | "unknown"
    params: tuple | None
    route: str
    evaluations: int
    seed: int
    determinant: object = None
    confidence: Fraction | None = None
    trials: int = 0
    transcript: tuple = ()

    @property
    def found(self) -> bool:
        return self.status == "witness"


def _combine(M0: Matrix, family: Sequence[Matrix], params: Sequence) -> Matrix:
    f = M0.field
    n = M0.nrows
    acc = [list(r) for r in M0.data]
    for t, Mi in zip(params, family):
        if not t:
            continue
        for i in range(n):
            row, src = acc[i], Mi.data[i]
            for j in range(n):
                if src[j]:
                    row[j] += t * src[j]
    return Matrix(f, n, n, tuple(tuple(f.canon(x) for x in r) for r in acc))


def shell_order(values: Sequence[int], k: int) -> Iterator[tuple]:
    """All points of values^k ordered by the largest index used, then lexicographically."""
    if k == 0:
        yield ()
        return
    for s in range(len(values)):
        for idx in itertools.product(range(s + 1), repeat=k):
            if max(idx) == s:
                yield tuple(values[i] for i in idx)


def invertible_in_affine_family(M0: Matrix, family: Sequence[Matrix], budget: int | None = None,
                                seed: int = 0, settings: Settings | None = None) -> FamilyResult:
    """Decide whether det(M0 + sum t_i M_i) is nonzero for some parameters.

    Witness results are replayed by an exact determinant; ``none`` results
    come only from a completed deterministic route.
    """
    settings = settings or Settings()
    budget = settings.budget if budget is None else budget
    f = M0.field
    n = M0.nrows
    for M in [M0, *family]:
        if M.nrows != M.ncols:
            raise InputError("family members must be square")
        if M.shape != M0.shape:
            raise InputError("family members must share one size")
        if M.field != f:
            raise InputError("family members must share one field")
    k = len(family)

    def evaluate(params):
        return det(_combine(M0, family, params))

    if k == 0:
        d = evaluate(())
        if d:
            return FamilyResult("witness", (), "constant", 1, seed, d)
        return FamilyResult("none", None, "constant", 1, seed, transcript=("det(M0) = 0, no parameters",))

    if f.p is None:
        grid_size = (n + 1) ** k
        values = list(range(n + 1))
        grid_route = "grid"
        note = f"det has degree <= {n} per parameter; vanishing on {{0..{n}}}^{k} forces the zero polynomial"
    else:
        grid_size = f.p ** k
        values = list(range(f.p))
        grid_route = "exhaustive"
        note = f"all {f.p}^{k} parameter vectors over {f.label} evaluated"

    if grid_size <= budget:
        evals = 0
        for point in shell_order(values, k):
            evals += 1
            d = evaluate(point)
            if d:
                return FamilyResult("witness", tuple(f.canon(x) for x in point), grid_route, evals, seed, d)
        return FamilyResult("none", None, grid_route, evals, seed, transcript=(note, f"{evals} evaluations, all zero"))

    rng = random.Random(seed)
    if k <= settings.symbolic_cap:
        poly = _symbolic_det(M0, family)
        if not poly:
            return FamilyResult("none", None, "symbolic", 0, seed,
                                transcript=(f"symbolic expansion in {k} parameters is the zero polynomial",))
        point = _nonvanishing_point(f, poly, k, n)
        if point is not None:
            d = evaluate(point)
            if d:
                return FamilyResult("witness", point, "symbolic", 1, seed, d)
        # prime field, nonzero polynomial without a cheaply found rational point
        for trial in range(min(settings.random_trials, budget)):
            point = tuple(rng.randrange(f.p) for _ in range(k))
            d = evaluate(point)
            if d:
                return FamilyResult("witness", point, "symbolic+random", trial + 1, seed, d)
        return FamilyResult("unknown", None, "symbolic", settings.random_trials, seed, confidence=Fraction(0),
                            trials=settings.random_trials,
                            transcript=("determinant polynomial is nonzero but no point found over the field",))

    size = settings.sample_set_size if f.p is None else f.p
    trials = min(settings.random_trials, budget)
    for trial in range(trials):
        point = tuple(f.canon(rng.randrange(size)) for _ in range(k))
        d = evaluate(point)
        if d:
            return FamilyResult("witness", point, "random", trial + 1, seed, d)
    ratio = Fraction(n, size)
    confidence = max(Fraction(0), 1 - ratio ** trials)
    return FamilyResult("unknown", None, "random", trials, seed, confidence=confidence, trials=trials,
                        transcript=(f"{trials} random samples from a set of size {size} all gave det = 0",))


def _symbolic_det(M0: Matrix, family: Sequence[Matrix]) -> dict:
    """Determinant as {exponent tuple: coefficient} via sympy's polynomial-ring Bareiss."""
    from sympy import GF as SGF, QQ as SQQ, symbols
    from sympy.polys.matrices import DomainMatrix

    f = M0.field
    k = len(family)
    syms = symbols(f"t0:{k}")
    R = (SQQ if f.p is None else SGF(f.p))[syms]
    gens = R.gens
    n = M0.nrows

    def conv(x):
        if f.p is None:
            return R.convert(SQQ(x.numerator, x.denominator))
        return R.convert(int(x))

    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = conv(M0[i, j])
            for g, Mi in zip(gens, family):
                if Mi[i, j]:
                    e = e + conv(Mi[i, j]) * g
            row.append(e)
        rows.append(row)
    poly = DomainMatrix(rows, (n, n), R).det()
    out = {}
    for mon, c in poly.items():
        if f.p is None:
            out[mon] = Fraction(int(c.numerator), int(c.denominator))
        else:
            out[mon] = int(R.domain.to_int(c)) % f.p
    return {m: c for m, c in out.items() if c}


def _nonvanishing_point(f: FieldSpec, poly: dict, k: int, n: int):
    """Fix parameters one at a time to values keeping the polynomial nonzero."""
    values = range(n + 1) if f.p is None else range(min(f.p, n + 1))
    point = []
    current = dict(poly)
    for _ in range(k):
        chosen = None
        for v in values:
            sub = {}
            for mon, c in current.items():
                key = mon[1:]
                sub[key] = f.canon(sub.get(key, 0) + c * v ** mon[0])
            sub = {m: c for m, c in sub.items() if c}
            if sub:
                chosen = (v, sub)
                break
        if chosen is None:
            return None
        point.append(f.canon(chosen[0]))
        current = chosen[1]
    return tuple(point)
