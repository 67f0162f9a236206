"""Frobenius extensions of coalgebras: decision, certificates and the adjunction data.

For lam: C -> D, a certificate is a pair

    alpha: D -> C            (D-bicomodule map)
    beta:  C box_D C -> C    (C-bicomodule map, on the cotensor basis)

with beta(c_1 (x) alpha lam(c_2)) = beta(alpha lam(c_1) (x) c_2) = c for all c.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .coalgebra import (Bicomodule, CoalgebraMorphism, Comodule, InputError, bicomodule_over, corestrict,
                        counit_morphism, hom_space, is_morphism, regular_bicomodule, regular_left,
                        regular_right, require_valid)
from .config import Settings, default_settings
from .cotensor import CotensorSpace, cotensor, corestrict_outer, extension_cotensor
from .dual_algebra import check_frobenius_ring_extension, cotensor_dual_map, dualize_extension, ring_tensor
from .exact_linalg import Matrix, shell_order, solve_sparse
from .verdict import NO, SEARCH_EXHAUSTED, UNKNOWN, YES, Verdict


@dataclass(frozen=True)
class FrobeniusCertificate:
    alpha: Matrix
    beta: Matrix
    route: str = "dual"
    transcript: tuple = ()

    def __repr__(self):
        return f"FrobeniusCertificate<alpha {self.alpha.shape}, beta {self.beta.shape}, {self.route}>"


class ExtensionData:
    """Cached spaces attached to an extension lam: C -> D."""

    def __init__(self, lam: CoalgebraMorphism):
        require_valid(lam)
        self.lam = lam
        self.C = lam.source
        self.D = lam.target
        self.field = lam.field

    @cached_property
    def cotensor(self) -> CotensorSpace:
        return extension_cotensor(self.lam)

    @cached_property
    def D_bimodule(self) -> Bicomodule:
        return regular_bicomodule(self.D)

    @cached_property
    def C_over_D(self) -> Bicomodule:
        return bicomodule_over(self.lam)

    @cached_property
    def C_bimodule(self) -> Bicomodule:
        return regular_bicomodule(self.C)

    @cached_property
    def alpha_space(self):
        return hom_space("bicomodule", self.D_bimodule, self.C_over_D)

    @cached_property
    def beta_space(self):
        return hom_space("bicomodule", self.cotensor.bicomodule, self.C_bimodule)

    def probes(self, alpha: Matrix) -> tuple[Matrix, Matrix]:
        """Columns c -> coordinates of (alpha lam (x) id) Delta(c) and (id (x) alpha lam) Delta(c).

        Raises ValueError when a probe leaves the cotensor product.
        """
        f = self.field
        n = self.C.dim
        al = alpha @ self.lam.matrix
        S = self.cotensor.space
        left, right = [], []
        for c in range(n):
            v1 = [f.zero] * (n * n)
            v2 = [f.zero] * (n * n)
            for j, k, v in self.C.by_source.get(c, ()):
                for x in range(n):
                    a = al[x, j]
                    if a:
                        v1[x * n + k] = f.canon(v1[x * n + k] + v * a)
                    b = al[x, k]
                    if b:
                        v2[j * n + x] = f.canon(v2[j * n + x] + v * b)
            left.append(S.coords(v1))
            right.append(S.coords(v2))
        return Matrix.from_columns(f, left, S.dim), Matrix.from_columns(f, right, S.dim)


def _data(lam) -> ExtensionData:
    return lam if isinstance(lam, ExtensionData) else ExtensionData(lam)


def verify_certificate(lam, cert: FrobeniusCertificate) -> bool:
    X = _data(lam)
    T = X.cotensor
    if cert.alpha.shape != (X.C.dim, X.D.dim):
        raise InputError(f"alpha has shape {cert.alpha.shape}, expected {(X.C.dim, X.D.dim)}")
    if cert.beta.shape != (X.C.dim, T.dim):
        raise InputError(f"beta has shape {cert.beta.shape}, expected {(X.C.dim, T.dim)}")
    if cert.alpha.field != X.field or cert.beta.field != X.field:
        raise InputError("certificate field differs from the extension field")
    if not is_morphism("bicomodule", cert.alpha, X.D_bimodule, X.C_over_D):
        return False
    if not is_morphism("bicomodule", cert.beta, T.bicomodule, X.C_bimodule):
        return False
    try:
        P1, P2 = X.probes(cert.alpha)
    except ValueError:
        return False
    return (cert.beta @ P1).is_identity() and (cert.beta @ P2).is_identity()


def _normalize(alpha: Matrix, beta: Matrix) -> tuple[Matrix, Matrix]:
    f = alpha.field
    lead = next((v for r in alpha.data for v in r if v), None)
    if lead is None or lead == f.one:
        return alpha, beta
    return alpha.scale(f.inv(lead)), beta.scale(lead)


def check_frobenius_extension(lam: CoalgebraMorphism, seed: int = 0, budget: int | None = None,
                              route: str = "dual", settings: Settings | None = None) -> Verdict:
    settings = settings or default_settings()
    budget = settings.budget if budget is None else budget
    X = _data(lam)
    if route == "dual":
        return _dual_route(X, seed, budget, settings)
    if route == "primal":
        return _primal_route(X, seed, budget, settings)
    raise InputError(f"unknown route {route!r}")


def _dual_route(X: ExtensionData, seed, budget, settings) -> Verdict:
    phi = dualize_extension(X.lam)
    v = check_frobenius_ring_extension(phi, seed=seed, budget=budget, settings=settings)
    if v.status != YES:
        return v
    wit = v.witness
    RT = ring_tensor(phi)
    right = RT.module.right_actions
    U = Matrix.from_columns(X.field, [R.apply(wit.h_class) for R in right], RT.dim)  # b -> h b
    pi = cotensor_dual_map(X.lam, X.cotensor, RT)
    alpha, beta = _normalize(wit.E.T, (pi @ U).T)
    log = v.transcript + ("pulled back along the transpose and the cotensor duality",)
    cert = FrobeniusCertificate(alpha, beta, "dual", log)
    if not verify_certificate(X, cert):
        raise AssertionError("pulled-back certificate failed replay")
    return Verdict(YES, witness=cert, route="dual", transcript=log, family=v.family, seed=v.seed)


def _beta_for(X: ExtensionData, alpha: Matrix):
    """Some beta completing alpha to a certificate, or None."""
    try:
        P1, P2 = X.probes(alpha)
    except ValueError:
        return None
    H = X.beta_space
    n = X.C.dim
    f = X.field
    prods = [(B @ P1, B @ P2) for B in H.basis]
    rows, rhs = [], []
    for which in (0, 1):
        for x in range(n):
            for c in range(n):
                rows.append({j: pr[which][x, c] for j, pr in enumerate(prods) if pr[which][x, c]})
                rhs.append(1 if x == c else 0)
    sol = solve_sparse(f, rows, rhs, H.dim)
    if sol is None:
        return None
    return H.combination(sol[0])


def _primal_route(X: ExtensionData, seed, budget, settings) -> Verdict:
    f = X.field
    H = X.alpha_space
    k = H.dim
    n = X.C.dim
    log = [f"bicomodule maps D -> C: {k}, C box_D C -> C: {X.beta_space.dim}"]
    if f.is_prime:
        values = list(range(f.p))
        deterministic = f.p ** k <= budget
        route = "exhaustive"
    else:
        # the certificate condition on alpha is a determinant of degree <= dim C in each parameter
        values = list(range(n + 1))
        deterministic = (n + 1) ** k <= budget
        route = "grid"
    tried = 0
    if deterministic:
        points = shell_order(values, k) if not f.is_prime else itertools.product(values, repeat=k)
        for t in points:
            tried += 1
            found = _try_alpha(X, H, t)
            if found is not None:
                log.append(f"{route}: alpha found after {tried} points")
                return _primal_yes(X, found, log, seed)
        log.append(f"{route}: all {tried} points fail")
        return Verdict(NO, evidence=SEARCH_EXHAUSTED, route="primal", transcript=tuple(log), seed=seed)
    rng = random.Random(seed)
    size = f.p if f.is_prime else settings.sample_set_size
    trials = min(settings.random_trials, budget)
    for _ in range(trials):
        t = tuple(rng.randrange(size) for _ in range(k))
        tried += 1
        found = _try_alpha(X, H, t)
        if found is not None:
            log.append(f"random: alpha found after {tried} samples")
            return _primal_yes(X, found, log, seed)
    conf = 1 - Fraction(n, size) ** trials if n < size else Fraction(0)
    log.append(f"random: {trials} samples failed")
    return Verdict(UNKNOWN, route="primal", transcript=tuple(log), confidence=conf, seed=seed)


def _try_alpha(X, H, t):
    if not any(t):
        return None
    alpha = H.combination(t)
    beta = _beta_for(X, alpha)
    return None if beta is None else (alpha, beta)


def _primal_yes(X, found, log, seed) -> Verdict:
    alpha, beta = _normalize(*found)
    cert = FrobeniusCertificate(alpha, beta, "primal", tuple(log))
    if not verify_certificate(X, cert):
        raise AssertionError("primal certificate failed replay")
    return Verdict(YES, witness=cert, route="primal", transcript=tuple(log), seed=seed)


def identity_certificate(C) -> FrobeniusCertificate:
    """alpha = id and beta(c (x) c') = eps(c) c' for lam = id_C."""
    from .coalgebra import identity_morphism

    X = ExtensionData(identity_morphism(C))
    f = C.field
    n = C.dim
    amb = Matrix.from_sparse(f, n, n * n, {(b, a * n + b): C.counit[a] for a in range(n) for b in range(n)
                                          if C.counit[a]})
    return FrobeniusCertificate(Matrix.identity(f, n), amb @ X.cotensor.basis, "identity")


# ---------------------------------------------------------------------------
# unit and counit of the adjunction


def _induced(N: Comodule, lam: CoalgebraMorphism) -> CotensorSpace:
    """N box_D C with its right C-coaction."""
    return cotensor(N, corestrict_outer(lam)["left"])


def unit_transformation(alpha: Matrix, N: Comodule, lam: CoalgebraMorphism, check: bool = True):
    """eta_N: N -> N box_D C, n -> n_0 (x) alpha(n_1); returns (matrix, cotensor space)."""
    X = _data(lam)
    if check and not is_morphism("bicomodule", alpha, X.D_bimodule, X.C_over_D):
        raise InputError("alpha is not a bicomodule map D -> C")
    if N.side != "right" or N.over != X.D:
        raise InputError("N must be a right comodule over the target coalgebra")
    T = _induced(N, X.lam)
    f = X.field
    n = X.C.dim
    m = N.dim
    cols = []
    for i in range(m):
        v = [f.zero] * (m * n)
        for j, k, r in N.by_source.get(i, ()):
            for x in range(n):
                if alpha[x, k]:
                    v[j * n + x] = f.canon(v[j * n + x] + r * alpha[x, k])
        cols.append(T.space.coords(v))
    return Matrix.from_columns(f, cols, T.dim), T


def counit_transformation(beta: Matrix, M: Comodule, lam: CoalgebraMorphism, check: bool = True):
    """eps_M: M box_D C -> M, m (x) c -> m_0 eps(beta(m_1 (x) c)); returns (matrix, cotensor space)."""
    X = _data(lam)
    T0 = X.cotensor
    if check and not is_morphism("bicomodule", beta, T0.bicomodule, X.C_bimodule):
        raise InputError("beta is not a bicomodule map C box_D C -> C")
    if M.side != "right" or M.over != X.C:
        raise InputError("M must be a right comodule over the source coalgebra")
    f = X.field
    n = X.C.dim
    m = M.dim
    gamma = X.C.counit_row @ beta
    T = _induced(corestrict(M, X.lam), X.lam)
    cols = []
    for w in T.basis.columns():
        out = [f.zero] * m
        parts = {}
        for a in range(m):
            for b in range(n):
                wab = w[a * n + b]
                if not wab:
                    continue
                for j, k, r in M.by_source.get(a, ()):
                    u = parts.setdefault(j, [f.zero] * (n * n))
                    u[k * n + b] = f.canon(u[k * n + b] + wab * r)
        for j, u in parts.items():
            out[j] = f.canon(out[j] + gamma.apply(T0.space.coords(u))[0])
        cols.append(out)
    return Matrix.from_columns(f, cols, m), T


@dataclass(frozen=True)
class TriangleReport:
    failures: tuple = ()
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def triangle_check(lam: CoalgebraMorphism, cert: FrobeniusCertificate, sample: Sequence[Comodule],
                   require_verified: bool = True) -> TriangleReport:
    """Both triangle identities on every comodule in ``sample``.

    Comodules over D test eps_{F(N)} F(eta_N) = id; comodules over C test
    eps_M eta_{U(M)} = id.
    """
    X = _data(lam)
    if require_verified and not verify_certificate(X, cert):
        raise InputError("certificate does not verify")
    f = X.field
    n = X.C.dim
    fails = []
    for idx, M in enumerate(sample):
        if M.side != "right":
            raise InputError("triangle identities are checked on right comodules")
        if M.over == X.D:
            eta, TN = unit_transformation(cert.alpha, M, X, check=False)
            FN = TN.right_coaction
            eps, TFN = counit_transformation(cert.beta, FN, X, check=False)
            amb = eta.kron(Matrix.identity(f, n)) @ TN.basis
            Feta = TFN.space.coords_matrix(amb)
            ok = (eps @ Feta).is_identity()
            what = "counit after induced unit"
        elif M.over == X.C:
            eta, _ = unit_transformation(cert.alpha, corestrict(M, X.lam), X, check=False)
            eps, _ = counit_transformation(cert.beta, M, X, check=False)
            ok = (eps @ eta).is_identity()
            what = "counit after unit"
        else:
            raise InputError(f"sample comodule {idx} is over neither coalgebra")
        if not ok:
            fails.append((idx, what))
    return TriangleReport(tuple(fails), len(sample))


# ---------------------------------------------------------------------------
# scalar form of beta


class BalanceError(ValueError):
    def __init__(self, index: int):
        super().__init__(f"balance identity fails at cotensor basis index {index}")
        self.index = index


def gamma_form(cert: FrobeniusCertificate, lam: CoalgebraMorphism) -> Matrix:
    """gamma = eps_C beta as a row on the cotensor basis."""
    X = _data(lam)
    return X.C.counit_row @ cert.beta


def _coaction_tables(T: CotensorSpace, n: int):
    L = T.left_coaction.coaction
    R = T.right_coaction.coaction
    return L, R


def balance_violations(lam, gamma: Matrix) -> list[int]:
    """Indices q where c_1 gamma(c_2 (x) c') != gamma(c (x) c'_1) c'_2 on the basis vector t_q."""
    X = _data(lam)
    T = X.cotensor
    f = X.field
    n = X.C.dim
    L, R = _coaction_tables(T, n)
    lhs = [[f.zero] * n for _ in range(T.dim)]
    rhs = [[f.zero] * n for _ in range(T.dim)]
    g = gamma.row(0)
    for (q, p, x), v in L.items():
        lhs[q][x] = f.canon(lhs[q][x] + v * g[p])
    for (q, p, x), v in R.items():
        rhs[q][x] = f.canon(rhs[q][x] + v * g[p])
    return [q for q in range(T.dim) if lhs[q] != rhs[q]]


def reconstruct_beta(lam, gamma: Matrix) -> Matrix:
    """beta(t) = t_-1 gamma(t_0); rejects an unbalanced gamma."""
    X = _data(lam)
    bad = balance_violations(X, gamma)
    if bad:
        raise BalanceError(bad[0])
    T = X.cotensor
    f = X.field
    g = gamma.row(0)
    ent = {}
    for (q, p, x), v in T.left_coaction.coaction.items():
        ent[(x, q)] = f.canon(ent.get((x, q), 0) + v * g[p])
    return Matrix.from_sparse(f, X.C.dim, T.dim, ent)


def gamma_condition(lam, alpha: Matrix, gamma: Matrix) -> bool:
    """gamma(alpha lam(c_1) (x) c_2) = gamma(c_1 (x) alpha lam(c_2)) = eps(c) for every basis c."""
    X = _data(lam)
    try:
        P1, P2 = X.probes(alpha)
    except ValueError:
        return False
    eps = X.C.counit_row
    return gamma @ P1 == eps and gamma @ P2 == eps


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusSystem:
    e: tuple
    pi: Matrix


def frobenius_system(C, seed: int = 0, budget: int | None = None) -> FrobeniusSystem | None:
    """(e, pi) with pi(c (x) e) = pi(e (x) c) = c, from the extension C -> K."""
    lam = counit_morphism(C)
    v = check_frobenius_extension(lam, seed=seed, budget=budget)
    if not v.is_yes:
        return None
    cert = v.witness
    T = extension_cotensor(lam)
    # over the ground coalgebra the cotensor basis is the standard basis of C (x) C
    if not T.basis.is_identity():
        raise AssertionError("unexpected cotensor basis over the ground coalgebra")
    sys = FrobeniusSystem(cert.alpha.column(0), cert.beta)
    if not system_identities(C, sys):
        raise AssertionError("Frobenius system failed replay")
    return sys


def system_identities(C, sys: FrobeniusSystem) -> bool:
    f = C.field
    n = C.dim
    for c in range(n):
        v1 = [f.zero] * (n * n)
        v2 = [f.zero] * (n * n)
        for x, ex in enumerate(sys.e):
            if ex:
                v1[c * n + x] = ex
                v2[x * n + c] = ex
        target = tuple(f.one if i == c else f.zero for i in range(n))
        if sys.pi.apply(v1) != target or sys.pi.apply(v2) != target:
            return False
    return True
