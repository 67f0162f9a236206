"""Cotensor products as kernels of omega, with induced coactions."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from .coalgebra import (Bicomodule, Coalgebra, CoalgebraMorphism, Comodule, InputError, corestrict,
                        is_morphism, regular_bicomodule, regular_left, regular_right, require_valid)
from .exact_linalg import Matrix, Subspace, kernel_space, rank_of_vectors, span_space


def _split(M, want: str):
    """(comodule on the `want` side, extra comodule on the other side or None)."""
    if isinstance(M, Bicomodule):
        return (M.right, M.left) if want == "right" else (M.left, M.right)
    if not isinstance(M, Comodule) or M.side != want:
        raise InputError(f"expected a {want} comodule")
    return M, None


def _omega_entries(M: Comodule, N: Comodule) -> dict:
    """{output row: {input column: value}} for rho_M (x) id - id (x) rho_N."""
    if M.side != "right" or N.side != "left":
        raise InputError("omega needs a right comodule on the left and a left comodule on the right")
    if M.over != N.over:
        raise InputError("coactions are over different coalgebras")
    require_valid(M)
    require_valid(N)
    m, n, d = M.dim, N.dim, M.over.dim
    rows = defaultdict(lambda: defaultdict(int))
    for (a, x, k), v in M.coaction.items():
        for b in range(n):
            rows[(x * d + k) * n + b][a * n + b] += v
    for (b, y, k), v in N.coaction.items():
        for a in range(m):
            rows[(a * d + k) * n + y][a * n + b] -= v
    f = M.field
    out = {}
    for r in sorted(rows):
        row = {c: f.canon(v) for c, v in rows[r].items() if f.canon(v)}
        if row:
            out[r] = row
    return out


def omega_rows(M: Comodule, N: Comodule) -> list[dict]:
    """Rows of rho_M (x) id - id (x) rho_N : M (x) N -> M (x) D (x) N."""
    return list(_omega_entries(M, N).values())


def omega(M, N) -> Matrix:
    M, _ = _split(M, "right")
    N, _ = _split(N, "left")
    m, n, d = M.dim, N.dim, M.over.dim
    ent = {(r, c): v for r, row in _omega_entries(M, N).items() for c, v in row.items()}
    return Matrix.from_sparse(M.field, m * d * n, m * n, ent)


def _ambient_right(N_extra: Comodule, m: int) -> dict:
    """Right coaction of M (x) N induced by N's right coaction, as a tensor on M (x) N."""
    n = N_extra.dim
    ent = {}
    for (b, y, k), v in N_extra.coaction.items():
        for a in range(m):
            ent[(a * n + b, a * n + y, k)] = v
    return ent


def _ambient_left(M_extra: Comodule, n: int) -> dict:
    ent = {}
    for (a, x, k), v in M_extra.coaction.items():
        for b in range(n):
            ent[(a * n + b, x * n + b, k)] = v
    return ent


def _restrict(side: str, over: Coalgebra, ambient: dict, S: Subspace) -> Comodule:
    """Restrict a coaction tensor on the ambient space to the invariant subspace S."""
    f = S.field
    per_k = defaultdict(lambda: defaultdict(lambda: defaultdict(int)))  # k -> source -> target -> v
    for (i, j, k), v in ambient.items():
        per_k[k][i][j] += v
    ent = {}
    for q, col in enumerate(S.basis.columns()):
        nz = [(i, w) for i, w in enumerate(col) if w]
        for k, table in per_k.items():
            vec = defaultdict(int)
            for i, w in nz:
                for j, v in table.get(i, {}).items():
                    vec[j] += w * v
            if not any(f.canon(x) for x in vec.values()):
                continue
            dense = [f.canon(vec.get(j, 0)) for j in range(S.ambient)]
            for p, c in enumerate(S.coords(dense)):
                if c:
                    ent[(q, p, k)] = c
    return Comodule(side, over, S.dim, ent)


@dataclass(frozen=True)
class CotensorSpace:
    """M box_D N inside M (x) N with whatever outer coactions M and N carry."""
    left: Comodule
    right: Comodule
    space: Subspace
    left_coaction: Comodule | None = None
    right_coaction: Comodule | None = None
    outer_left: Comodule | None = None
    outer_right: Comodule | None = None

    @property
    def over(self) -> Coalgebra:
        return self.left.over

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def ambient_dim(self) -> int:
        return self.left.dim * self.right.dim

    @property
    def basis(self) -> Matrix:
        return self.space.basis

    @cached_property
    def bicomodule(self) -> Bicomodule:
        if self.left_coaction is None or self.right_coaction is None:
            raise InputError("cotensor product carries no two-sided structure")
        return Bicomodule(self.left_coaction, self.right_coaction)


def cotensor(M, N) -> CotensorSpace:
    """M box_D N for M a right D-comodule and N a left D-comodule.

    A bicomodule argument contributes its outer coaction to the result:
    the left coaction of M and the right coaction of N.
    """
    Mr, Ml = _split(M, "right")
    Nl, Nr = _split(N, "left")
    S = kernel_space(Mr.field, omega_rows(Mr, Nl), Mr.dim * Nl.dim)
    lc = rc = None
    if Ml is not None:
        lc = _restrict("left", Ml.over, _ambient_left(Ml, Nl.dim), S)
    if Nr is not None:
        rc = _restrict("right", Nr.over, _ambient_right(Nr, Mr.dim), S)
    return CotensorSpace(Mr, Nl, S, lc, rc, Ml, Nr)


def embedding_commutes(T: CotensorSpace) -> bool:
    """Coacting after the embedding into M (x) N equals embedding after coacting."""
    checks = []
    if T.right_coaction is not None:
        Y = T.outer_right
        amb = Comodule("right", Y.over, T.ambient_dim, _ambient_right(Y, T.left.dim))
        I = Matrix.identity(T.space.field, Y.over.dim)
        checks.append(amb.coaction_matrix @ T.basis == T.basis.kron(I) @ T.right_coaction.coaction_matrix)
    if T.left_coaction is not None:
        X = T.outer_left
        amb = Comodule("left", X.over, T.ambient_dim, _ambient_left(X, T.right.dim))
        I = Matrix.identity(T.space.field, X.over.dim)
        checks.append(amb.coaction_matrix @ T.basis == I.kron(T.basis) @ T.left_coaction.coaction_matrix)
    return all(checks)


def extension_cotensor(lam: CoalgebraMorphism) -> CotensorSpace:
    """C box_D C as a C-bicomodule."""
    CD = corestrict_outer(lam)
    return cotensor(CD["right"], CD["left"])


def corestrict_outer(lam: CoalgebraMorphism) -> dict:
    """C as (C, D)- and (D, C)-bicomodules."""
    C = lam.source
    right_D = corestrict(regular_right(C), lam)
    left_D = corestrict(regular_left(C), lam)
    return {"right": Bicomodule(regular_left(C), right_D), "left": Bicomodule(left_D, regular_right(C))}


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IotaResult:
    space: CotensorSpace
    forward: Matrix   # D box_D C -> C
    inverse: Matrix   # C -> D box_D C
    round_trips: bool
    morphism: bool

    @property
    def ok(self) -> bool:
        return self.round_trips and self.morphism


def iota(lam: CoalgebraMorphism) -> IotaResult:
    require_valid(lam)
    C, D = lam.source, lam.target
    f = C.field
    L = lam.matrix
    n, d = C.dim, D.dim
    T = cotensor(regular_bicomodule(D), corestrict_outer(lam)["left"])
    amb = Matrix.from_sparse(f, n, d * n, {(b, a * n + b): D.counit[a] for a in range(d) for b in range(n)
                                          if D.counit[a]})
    fwd = amb @ T.basis
    cols = []
    for c in range(n):
        vec = [f.zero] * (d * n)
        for j, k, v in C.by_source.get(c, ()):
            for a in range(d):
                if L[a, j]:
                    vec[a * n + k] = f.canon(vec[a * n + k] + L[a, j] * v)
        cols.append(T.space.coords(vec))
    inv = Matrix.from_columns(f, cols, T.dim)
    trips = (fwd @ inv).is_identity() and (inv @ fwd).is_identity()
    target = Bicomodule(corestrict(regular_left(C), lam), regular_right(C))
    morph = is_morphism("bicomodule", fwd, T.bicomodule, target)
    return IotaResult(T, fwd, inv, trips, morph)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImageInvariance:
    image: Coalgebra
    inclusion: CoalgebraMorphism   # E -> D
    corestriction: CoalgebraMorphism   # C -> E
    kernel_D: Subspace
    kernel_E: Subspace
    equal: bool
    ring_tensor_dims: tuple

    @property
    def ok(self) -> bool:
        return self.equal and self.ring_tensor_dims[0] == self.ring_tensor_dims[1]


def image_coalgebra(lam: CoalgebraMorphism) -> tuple[Coalgebra, CoalgebraMorphism, CoalgebraMorphism]:
    """E = lam(C) with the inclusion E -> D and the corestriction C -> E."""
    require_valid(lam)
    D = lam.target
    f = D.field
    d = D.dim
    S = span_space(f, lam.matrix.columns(), d)
    key = S.key
    e = S.dim
    delta = {}
    DB = D.delta_matrix @ S.basis   # columns: Delta_D(v_q) in D (x) D
    for q in range(e):
        col = DB.column(q)
        for p in range(e):
            for r in range(e):
                v = col[key[p] * d + key[r]]
                if v:
                    delta[(q, p, r)] = v
    counit = (D.counit_row @ S.basis).row(0)
    E = Coalgebra(f, e, delta, counit)
    inc = CoalgebraMorphism(E, D, S.basis)
    core = CoalgebraMorphism(lam.source, E, S.coords_matrix(lam.matrix))
    return E, inc, core


def _same_subspace(A: Subspace, B: Subspace) -> bool:
    f = A.field
    both = rank_of_vectors(f, A.basis.columns() + B.basis.columns(), A.ambient)
    return A.dim == B.dim == both


def cotensor_kernel(lam: CoalgebraMorphism) -> Subspace:
    C = lam.source
    return kernel_space(C.field, omega_rows(corestrict(regular_right(C), lam), corestrict(regular_left(C), lam)),
                        C.dim * C.dim)


def image_invariance(lam: CoalgebraMorphism) -> ImageInvariance:
    from .dual_algebra import dualize_extension, ring_tensor

    E, inc, core = image_coalgebra(lam)
    KD = cotensor_kernel(lam)
    KE = cotensor_kernel(core)
    dims = (ring_tensor(dualize_extension(lam)).dim, ring_tensor(dualize_extension(core)).dim)
    return ImageInvariance(E, inc, core, KD, KE, _same_subspace(KD, KE), dims)
