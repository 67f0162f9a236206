"""Coalgebras, comodules and their morphisms in structure-constant form.

Conventions (0-based, lexicographic product bases, left factor major):

* ``Coalgebra.delta[(i, j, k)]`` is the coefficient of e_j (x) e_k in Delta(e_i).
* right comodule: ``coaction[(i, j, k)]`` is the coefficient of m_j (x) c_k in rho(m_i);
  left comodule: the coefficient of c_k (x) m_j.
* a morphism V -> W is a dim W x dim V matrix.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import InitVar, dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .config import Settings
from .exact_linalg import (FieldSpec, InputError, Matrix, Subspace, kernel_space, solve_sparse,
                           span_space)

Tensor = dict


class AxiomError(ValueError):
    """Raised when an object fails its structural axioms at construction."""

    def __init__(self, report: "Report"):
        super().__init__(str(report))
        self.report = report


@dataclass(frozen=True)
class Violation:
    identity: str
    index: int
    detail: str = ""

    def __str__(self):
        return f"{self.identity} fails at basis index {self.index}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class Report:
    subject: str
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"{self.subject}: pass"
        return f"{self.subject}: " + "; ".join(str(v) for v in self.violations)


def _clean_tensor(field: FieldSpec, entries) -> dict:
    items = entries.items() if isinstance(entries, dict) else ((tuple(e[:3]), e[3]) for e in entries)
    acc = defaultdict(lambda: field.zero)
    for key, v in items:
        key = tuple(int(x) for x in key)
        acc[key] = field.canon(acc[key] + field(v))
    return {k: acc[k] for k in sorted(acc) if acc[k]}


def _check_cap(dim: int, cap: int | None, what: str):
    cap = Settings().dim_cap if cap is None else cap
    if dim < 0:
        raise InputError(f"{what} dimension must be non-negative")
    if dim > cap:
        raise InputError(f"{what} dimension {dim} exceeds the cap {cap}")


def _tensor_to_3d(t: dict) -> dict:
    """Group a tensor by its first index: {i: [(j, k, v), ...]}."""
    out = defaultdict(list)
    for (i, j, k), v in t.items():
        out[i].append((j, k, v))
    return out


# ---------------------------------------------------------------------------
# coalgebras


@dataclass(frozen=True)
class Coalgebra:
    field: FieldSpec
    dim: int
    delta: dict
    counit: tuple
    labels: tuple | None = None
    check: InitVar[bool] = True
    dim_cap: InitVar[int | None] = None

    def __post_init__(self, check, dim_cap):
        _check_cap(self.dim, dim_cap, "coalgebra")
        object.__setattr__(self, "delta", _clean_tensor(self.field, self.delta))
        for key in self.delta:
            if any(not 0 <= x < self.dim for x in key):
                raise InputError(f"delta index {key} out of range for dimension {self.dim}")
        if len(self.counit) != self.dim:
            raise InputError(f"counit has length {len(self.counit)}, expected {self.dim}")
        object.__setattr__(self, "counit", tuple(self.field(v) for v in self.counit))
        if self.labels is not None:
            if len(self.labels) != self.dim:
                raise InputError("labels length does not match dimension")
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if check:
            report = validate_coalgebra(self)
            if not report:
                raise AxiomError(report)

    @cached_property
    def report(self) -> Report:
        return validate_coalgebra(self)

    @cached_property
    def delta_matrix(self) -> Matrix:
        n = self.dim
        return Matrix.from_sparse(self.field, n * n, n, {(j * n + k, i): v for (i, j, k), v in self.delta.items()})

    @cached_property
    def counit_row(self) -> Matrix:
        return Matrix(self.field, 1, self.dim, (self.counit,))

    @cached_property
    def by_source(self) -> dict:
        return _tensor_to_3d(self.delta)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def opposite(self) -> "Coalgebra":
        """Co-opposite coalgebra: Delta followed by the flip."""
        return Coalgebra(self.field, self.dim, {(i, k, j): v for (i, j, k), v in self.delta.items()},
                         self.counit, self.labels, check=False)

    def __repr__(self):
        return f"Coalgebra<{self.field.label}, dim {self.dim}>"


def ground_coalgebra(field: FieldSpec) -> Coalgebra:
    """The base field as a coalgebra: Delta(1) = 1 (x) 1, eps(1) = 1."""
    return Coalgebra(field, 1, {(0, 0, 0): 1}, (1,), ("1",))


def validate_coalgebra(C: Coalgebra) -> Report:
    f = C.field
    n = C.dim
    bys = C.by_source
    out = []
    for i in range(n):
        left = defaultdict(int)   # (Delta (x) id) Delta
        right = defaultdict(int)  # (id (x) Delta) Delta
        for j, k, v in bys.get(i, ()):
            for a, b, w in bys.get(j, ()):
                left[(a, b, k)] += v * w
            for a, b, w in bys.get(k, ()):
                right[(j, a, b)] += v * w
        if any(f.canon(left.get(key, 0) - right.get(key, 0)) for key in set(left) | set(right)):
            out.append(Violation("coassociativity", i))
        lc = defaultdict(int)
        rc = defaultdict(int)
        for j, k, v in bys.get(i, ()):
            lc[k] += C.counit[j] * v
            rc[j] += v * C.counit[k]
        target = {i: f.one}
        if any(f.canon(lc.get(x, 0) - target.get(x, 0)) for x in range(n)):
            out.append(Violation("left counit law", i))
        if any(f.canon(rc.get(x, 0) - target.get(x, 0)) for x in range(n)):
            out.append(Violation("right counit law", i))
    return Report("coalgebra", tuple(out))


def require_valid(obj):
    report = obj.report
    if not report:
        raise AxiomError(report)
    return obj


# ---------------------------------------------------------------------------
# coalgebra morphisms


@dataclass(frozen=True)
class CoalgebraMorphism:
    source: Coalgebra
    target: Coalgebra
    matrix: Matrix
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise InputError(f"morphism matrix has shape {self.matrix.shape}, "
                             f"expected {(self.target.dim, self.source.dim)}")
        if not (self.source.field == self.target.field == self.matrix.field):
            raise InputError("field mismatch between source, target and matrix")
        if check:
            report = validate_morphism(self)
            if not report:
                raise AxiomError(report)

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @cached_property
    def report(self) -> Report:
        return validate_morphism(self)

    def opposite(self) -> "CoalgebraMorphism":
        return CoalgebraMorphism(self.source.opposite(), self.target.opposite(), self.matrix)

    def compose(self, first: "CoalgebraMorphism") -> "CoalgebraMorphism":
        """self after first."""
        if first.target != self.source:
            raise InputError("morphisms are not composable")
        return CoalgebraMorphism(first.source, self.target, self.matrix @ first.matrix)

    def __repr__(self):
        return f"CoalgebraMorphism<{self.source.dim} -> {self.target.dim}>"


def identity_morphism(C: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(C, C, Matrix.identity(C.field, C.dim))


def counit_morphism(C: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(C, ground_coalgebra(C.field), C.counit_row)


def validate_morphism(lam: CoalgebraMorphism) -> Report:
    C, D, L = lam.source, lam.target, lam.matrix
    out = []
    for name, obj in (("source", C), ("target", D)):
        if not obj.report:
            out.append(Violation(f"{name} coalgebra axioms", -1, str(obj.report)))
    if out:
        return Report("coalgebra morphism", tuple(out))
    lhs = D.delta_matrix @ L
    rhs = L.kron(L) @ C.delta_matrix
    for i in range(C.dim):
        if lhs.column(i) != rhs.column(i):
            out.append(Violation("comultiplicativity", i))
    eps = D.counit_row @ L
    for i in range(C.dim):
        if eps[0, i] != C.counit[i]:
            out.append(Violation("counit preservation", i))
    return Report("coalgebra morphism", tuple(out))


# ---------------------------------------------------------------------------
# comodules


@dataclass(frozen=True)
class Comodule:
    side: str
    over: Coalgebra
    dim: int
    coaction: dict
    check: InitVar[bool] = True
    dim_cap: InitVar[int | None] = None

    def __post_init__(self, check, dim_cap):
        if self.side not in ("left", "right"):
            raise InputError(f"side must be 'left' or 'right', got {self.side!r}")
        _check_cap(self.dim, dim_cap, "comodule")
        object.__setattr__(self, "coaction", _clean_tensor(self.over.field, self.coaction))
        c = self.over.dim
        for (i, j, k) in self.coaction:
            if not (0 <= i < self.dim and 0 <= j < self.dim and 0 <= k < c):
                raise InputError(f"coaction index {(i, j, k)} out of range")
        if check:
            report = validate_comodule(self)
            if not report:
                raise AxiomError(report)

    @property
    def field(self) -> FieldSpec:
        return self.over.field

    @cached_property
    def report(self) -> Report:
        return validate_comodule(self)

    @cached_property
    def by_source(self) -> dict:
        return _tensor_to_3d(self.coaction)

    @cached_property
    def coaction_matrix(self) -> Matrix:
        """rho as a matrix into M (x) C (right) or C (x) M (left)."""
        m, c = self.dim, self.over.dim
        if self.side == "right":
            ent = {(j * c + k, i): v for (i, j, k), v in self.coaction.items()}
        else:
            ent = {(k * m + j, i): v for (i, j, k), v in self.coaction.items()}
        return Matrix.from_sparse(self.field, m * c, m, ent)

    def __repr__(self):
        return f"Comodule<{self.side}, dim {self.dim} over dim {self.over.dim}>"


def validate_comodule(M: Comodule) -> Report:
    f = M.field
    C = M.over
    if not C.report:
        return Report(f"{M.side} comodule", (Violation("coalgebra axioms", -1, str(C.report)),))
    out = []
    bys = M.by_source
    cby = C.by_source
    for i in range(M.dim):
        a = defaultdict(int)
        b = defaultdict(int)
        # right: (rho (x) id) rho vs (id (x) Delta) rho, keyed (m_j, c_x, c_y)
        # left:  (id (x) rho) rho vs (Delta (x) id) rho, keyed (m_j, c_x, c_y) for c_x (x) c_y (x) m_j
        for j, k, v in bys.get(i, ()):
            for jj, kk, w in bys.get(j, ()):
                if M.side == "right":
                    a[(jj, kk, k)] += v * w
                else:
                    a[(jj, k, kk)] += v * w
            for x, y, w in cby.get(k, ()):
                b[(j, x, y)] += v * w
        if any(f.canon(a.get(key, 0) - b.get(key, 0)) for key in set(a) | set(b)):
            out.append(Violation("coaction coassociativity", i))
        cu = defaultdict(int)
        for j, k, v in bys.get(i, ()):
            cu[j] += v * C.counit[k]
        if any(f.canon(cu.get(x, 0) - (1 if x == i else 0)) for x in range(M.dim)):
            out.append(Violation("coaction counit law", i))
    return Report(f"{M.side} comodule", tuple(out))


@dataclass(frozen=True)
class Bicomodule:
    left: Comodule
    right: Comodule
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if self.left.side != "left" or self.right.side != "right":
            raise InputError("bicomodule needs a left and a right coaction")
        if self.left.dim != self.right.dim:
            raise InputError("left and right coactions live on different spaces")
        if self.left.field != self.right.field:
            raise InputError("field mismatch")
        if check:
            report = validate_bicomodule(self)
            if not report:
                raise AxiomError(report)

    @property
    def dim(self) -> int:
        return self.left.dim

    @property
    def field(self) -> FieldSpec:
        return self.left.field

    @cached_property
    def report(self) -> Report:
        return validate_bicomodule(self)

    def __repr__(self):
        return f"Bicomodule<dim {self.dim}, ({self.left.over.dim}, {self.right.over.dim})>"


def validate_bicomodule(B: Bicomodule) -> Report:
    out = list(B.left.report.violations) + list(B.right.report.violations)
    f = B.field
    lby, rby = B.left.by_source, B.right.by_source
    for i in range(B.dim):
        a = defaultdict(int)
        b = defaultdict(int)
        for j, k, v in rby.get(i, ()):
            for jj, kk, w in lby.get(j, ()):
                a[(kk, jj, k)] += v * w
        for j, kk, v in lby.get(i, ()):
            for jj, k, w in rby.get(j, ()):
                b[(kk, jj, k)] += v * w
        if any(f.canon(a.get(key, 0) - b.get(key, 0)) for key in set(a) | set(b)):
            out.append(Violation("left/right coaction compatibility", i))
    return Report("bicomodule", tuple(out))


def regular_right(C: Coalgebra) -> Comodule:
    return Comodule("right", C, C.dim, dict(C.delta))


def regular_left(C: Coalgebra) -> Comodule:
    return Comodule("left", C, C.dim, {(i, k, j): v for (i, j, k), v in C.delta.items()})


def regular_bicomodule(C: Coalgebra) -> Bicomodule:
    return Bicomodule(regular_left(C), regular_right(C))


def corestrict(M, lam: CoalgebraMorphism):
    """Push a comodule (or both sides of a bicomodule) along lam: C -> D."""
    if isinstance(M, Bicomodule):
        return Bicomodule(corestrict(M.left, lam), corestrict(M.right, lam))
    require_valid(M)
    require_valid(lam)
    if M.over != lam.source:
        raise InputError("comodule is not over the source of the morphism")
    L = lam.matrix
    ent = defaultdict(int)
    for (i, j, k), v in M.coaction.items():
        for kp in range(lam.target.dim):
            w = L[kp, k]
            if w:
                ent[(i, j, kp)] += v * w
    return Comodule(M.side, lam.target, M.dim, dict(ent))


def bicomodule_over(lam: CoalgebraMorphism) -> Bicomodule:
    """C as a D-bicomodule via lam on both sides."""
    return corestrict(regular_bicomodule(lam.source), lam)


def zero_comodule(C: Coalgebra, side: str = "right") -> Comodule:
    return Comodule(side, C, 0, {})


def direct_sum(*mods: Comodule) -> Comodule:
    if not mods:
        raise InputError("direct sum of nothing")
    side, over = mods[0].side, mods[0].over
    if any(M.side != side or M.over != over for M in mods):
        raise InputError("summands must share side and coalgebra")
    ent = {}
    off = 0
    for M in mods:
        for (i, j, k), v in M.coaction.items():
            ent[(i + off, j + off, k)] = v
        off += M.dim
    return Comodule(side, over, off, ent)


def cofree(C: Coalgebra, multiplicity: int, side: str = "right") -> Comodule:
    """V (x) C (right) or C (x) V (left) for a vector space V of the given dimension."""
    c = C.dim
    ent = {}
    for a in range(multiplicity):
        for (b, x, y), v in C.delta.items():
            if side == "right":
                ent[(a * c + b, a * c + x, y)] = v
            else:
                ent[(b * multiplicity + a, y * multiplicity + a, x)] = v
    return Comodule(side, C, multiplicity * c, ent)


def restrict_to_subspace(M: Comodule, S: Subspace) -> Comodule:
    """Coaction restricted to an invariant subspace, in the coordinates of S."""
    require_valid(M)
    c = M.over.dim
    m = M.dim
    R = M.coaction_matrix @ S.basis  # columns: rho(s_q) in M(x)C or C(x)M
    ent = {}
    for q in range(S.dim):
        col = R.column(q)
        for k in range(c):
            if M.side == "right":
                vec = [col[j * c + k] for j in range(m)]
            else:
                vec = [col[k * m + j] for j in range(m)]
            if not any(vec):
                continue
            coords = S.coords(vec)
            for p, v in enumerate(coords):
                if v:
                    ent[(q, p, k)] = v
    return Comodule(M.side, M.over, S.dim, ent)


def subcomodule_generated(M: Comodule, vectors: Iterable[Sequence]) -> Comodule:
    """Smallest subcomodule containing the given vectors of M."""
    c, m = M.over.dim, M.dim
    gens = []
    for v in vectors:
        col = M.coaction_matrix.apply(v)
        for k in range(c):
            if M.side == "right":
                gens.append([col[j * c + k] for j in range(m)])
            else:
                gens.append([col[k * m + j] for j in range(m)])
    return restrict_to_subspace(M, span_space(M.field, gens, m))


# ---------------------------------------------------------------------------
# morphism spaces


@dataclass(frozen=True)
class HomSpace:
    kind: str
    source: object
    target: object
    space: Subspace = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def basis(self) -> tuple:
        n, m = self.target.dim, self.source.dim
        out = []
        for col in self.space.basis.columns():
            out.append(Matrix(self.space.field, n, m, tuple(tuple(col[a * m:(a + 1) * m]) for a in range(n))))
        return tuple(out)

    def contains(self, F: Matrix) -> bool:
        return self.space.contains([v for r in F.data for v in r])

    def combination(self, coeffs: Sequence) -> Matrix:
        f = self.space.field
        n, m = self.target.dim, self.source.dim
        vec = self.space.basis.apply(coeffs)
        return Matrix(f, n, m, tuple(tuple(vec[a * m:(a + 1) * m]) for a in range(n)))


def _sides(kind: str, M, N):
    if kind not in ("right", "left", "bicomodule"):
        raise InputError(f"unknown hom kind {kind!r}")
    pairs = []
    for side in ("left", "right"):
        if kind not in (side, "bicomodule"):
            continue
        a = getattr(M, side) if isinstance(M, Bicomodule) else M
        b = getattr(N, side) if isinstance(N, Bicomodule) else N
        if not isinstance(a, Comodule) or not isinstance(b, Comodule) or a.side != side or b.side != side:
            raise InputError(f"{kind} hom space needs {side} coactions on both objects")
        if a.over != b.over:
            raise InputError(f"{side} coactions are over different coalgebras")
        pairs.append((a, b))
    return pairs


def morphism_constraints(kind: str, M, N) -> list[dict]:
    """Sparse rows of rho_N f - (f (x) id) rho_M = 0 (per side) in vec(f), row-major."""
    m, n = M.dim, N.dim
    rows = []
    for a_mod, b_mod in _sides(kind, M, N):
        require_valid(a_mod)
        require_valid(b_mod)
        eqs = defaultdict(lambda: defaultdict(int))
        for (a, j, k), v in b_mod.coaction.items():
            for b in range(m):
                eqs[(b, j, k)][a * m + b] += v
        for (b, i, k), v in a_mod.coaction.items():
            for j in range(n):
                eqs[(b, j, k)][j * m + i] -= v
        for key in sorted(eqs):
            row = {c: v for c, v in eqs[key].items() if v}
            if row:
                rows.append(row)
    return rows


def hom_space(kind: str, M, N) -> HomSpace:
    """All comodule (or bicomodule) morphisms M -> N."""
    rows = morphism_constraints(kind, M, N)
    return HomSpace(kind, M, N, kernel_space(M.field, rows, M.dim * N.dim))


def is_morphism(kind: str, F: Matrix, M, N) -> bool:
    """Replay the defining constraints of hom_space(kind, M, N) on F."""
    if F.shape != (N.dim, M.dim):
        raise InputError(f"map has shape {F.shape}, expected {(N.dim, M.dim)}")
    for a_mod, b_mod in _sides(kind, M, N):
        c = a_mod.over.dim
        I = Matrix.identity(F.field, c)
        if a_mod.side == "right":
            lhs = b_mod.coaction_matrix @ F
            rhs = F.kron(I) @ a_mod.coaction_matrix
        else:
            lhs = b_mod.coaction_matrix @ F
            rhs = I.kron(F) @ a_mod.coaction_matrix
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# injectivity


def is_injective_comodule(M: Comodule) -> bool:
    """M is injective iff rho_M: M -> cofree comodule splits by a comodule map."""
    require_valid(M)
    D = M.over
    m, d = M.dim, D.dim
    if m == 0:
        return True
    if M.side == "right":
        free = cofree(D, m, "right")
    else:
        # basis d_b (x) m_a ordered b * m + a matches the left coaction matrix rows
        free = cofree(D, m, "left")
    rho = M.coaction_matrix  # (m*d) x m, rows in the basis of `free`
    md = m * d
    rows = morphism_constraints(M.side, free, M)
    rhs = [0] * len(rows)
    # sigma rho = id: sum_q sigma[a, q] rho[q, i] = delta_{a i}
    nz = [[(q, rho[q, i]) for q in range(md) if rho[q, i]] for i in range(m)]
    for a in range(m):
        for i in range(m):
            rows.append({a * md + q: v for q, v in nz[i]})
            rhs.append(1 if a == i else 0)
    return solve_sparse(M.field, rows, rhs, m * md) is not None
