"""Named example coalgebras, extensions and comodules."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .coalgebra import (Coalgebra, CoalgebraMorphism, Comodule, InputError, cofree, corestrict, counit_morphism,
                        direct_sum, ground_coalgebra, identity_morphism, regular_left, regular_right,
                        subcomodule_generated)
from .exact_linalg import QQ, FieldSpec, Matrix


def grouplike(size: int, field: FieldSpec = QQ) -> Coalgebra:
    if size < 1:
        raise InputError("grouplike coalgebra needs at least one element")
    return Coalgebra(field, size, {(i, i, i): 1 for i in range(size)}, (1,) * size,
                     tuple(f"g{i}" for i in range(size)))


def matrix_coalgebra(n: int, field: FieldSpec = QQ) -> Coalgebra:
    """Basis e_ij (index i*n + j), Delta e_ij = sum_k e_ik (x) e_kj."""
    if n < 1:
        raise InputError("matrix coalgebra needs n >= 1")
    delta = {(i * n + j, i * n + k, k * n + j): 1 for i in range(n) for j in range(n) for k in range(n)}
    counit = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    return Coalgebra(field, n * n, delta, counit, tuple(f"e{i}{j}" for i in range(n) for j in range(n)))


def dual_of_square_zero_local(m: int, field: FieldSpec = QQ) -> Coalgebra:
    """Basis g, x_1..x_m with g grouplike and Delta x_i = g (x) x_i + x_i (x) g."""
    if m < 0:
        raise InputError("m must be non-negative")
    delta = {(0, 0, 0): 1}
    for i in range(1, m + 1):
        delta[(i, 0, i)] = 1
        delta[(i, i, 0)] = 1
    return Coalgebra(field, m + 1, delta, (1,) + (0,) * m, ("g",) + tuple(f"x{i}" for i in range(1, m + 1)))


def dual_numbers(field: FieldSpec = QQ) -> Coalgebra:
    C = dual_of_square_zero_local(1, field)
    return Coalgebra(field, 2, C.delta, C.counit, ("g", "x"))


def trivial(field: FieldSpec = QQ) -> Coalgebra:
    return ground_coalgebra(field)


def set_map_extension(f: Sequence[int], target_size: int, field: FieldSpec = QQ) -> CoalgebraMorphism:
    """K[S] -> K[T] induced by a map S -> T given as a list of images."""
    if any(not 0 <= t < target_size for t in f):
        raise InputError("set map image out of range")
    S, T = grouplike(len(f), field), grouplike(target_size, field)
    M = Matrix.from_sparse(field, target_size, len(f), {(t, s): 1 for s, t in enumerate(f)})
    return CoalgebraMorphism(S, T, M)


def trivial_extension(C: Coalgebra) -> CoalgebraMorphism:
    return counit_morphism(C)


@dataclass(frozen=True)
class DirectSumCoring:
    base: Coalgebra
    n: int
    coalgebra: Coalgebra
    extension: CoalgebraMorphism     # sum sigma_i(d_i) -> sum d_i
    inclusions: tuple                # sigma_i: D -> C
    projections: tuple               # p_i: C -> D


def direct_sum_coring(D: Coalgebra, n: int) -> DirectSumCoring:
    if n < 1:
        raise InputError("direct sum needs n >= 1")
    f, d = D.field, D.dim
    delta = {}
    for i in range(n):
        for (a, b, c), v in D.delta.items():
            delta[(i * d + a, i * d + b, i * d + c)] = v
    labels = tuple(f"{D.label(b)}_{i}" for i in range(n) for b in range(d))
    C = Coalgebra(f, n * d, delta, D.counit * n, labels)
    lam = CoalgebraMorphism(C, D, Matrix.from_sparse(f, d, n * d, {(b, i * d + b): 1 for i in range(n)
                                                                  for b in range(d)}))
    sig = tuple(CoalgebraMorphism(D, C, Matrix.from_sparse(f, n * d, d, {(i * d + b, b): 1 for b in range(d)}))
                for i in range(n))
    proj = tuple(Matrix.from_sparse(f, d, n * d, {(b, i * d + b): 1 for b in range(d)}) for i in range(n))
    return DirectSumCoring(D, n, C, lam, sig, proj)


def componentwise_comodule(ring: DirectSumCoring, mods: Sequence[Comodule]) -> Comodule:
    """The C-comodule on the direct sum of right D-comodules M_i: m_i -> (m_i)_0 (x) sigma_i((m_i)_1)."""
    if len(mods) != ring.n:
        raise InputError("one comodule per summand expected")
    d = ring.base.dim
    ent = {}
    off = 0
    for i, M in enumerate(mods):
        if M.side != "right" or M.over != ring.base:
            raise InputError("summands must be right comodules over the base")
        for (a, b, k), v in M.coaction.items():
            ent[(a + off, b + off, i * d + k)] = v
        off += M.dim
    return Comodule("right", ring.coalgebra, off, ent)


def standard_comodules(C: Coalgebra, max_dim: int = 4) -> list[Comodule]:
    """Right comodules: regular, those generated by basis vectors, sums and cofree ones, up to max_dim."""
    f = C.field
    found = []
    seen = set()

    def add(M):
        key = (M.dim, tuple(sorted(M.coaction.items())))
        if M.dim <= max_dim and key not in seen:
            seen.add(key)
            found.append(M)

    R = regular_right(C)
    add(R)
    for i in range(C.dim):
        add(subcomodule_generated(R, [[f.one if j == i else f.zero for j in range(C.dim)]]))
    for M in list(found):
        if 2 * M.dim <= max_dim:
            add(direct_sum(M, M))
    if 2 * C.dim <= max_dim:
        add(cofree(C, 2))
    return found


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bundle:
    name: str
    params: dict
    field: FieldSpec
    coalgebras: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    comodules: dict = dc_field(default_factory=dict)
    maps: dict = dc_field(default_factory=dict)

    @property
    def coalgebra(self) -> Coalgebra:
        return self.coalgebras["C"]

    @property
    def extension(self) -> CoalgebraMorphism | None:
        return self.morphisms.get("lambda")


def _base(spec, field: FieldSpec) -> Coalgebra:
    if isinstance(spec, Coalgebra):
        return spec
    name, _, arg = str(spec).partition(":")
    params = {"n": int(arg)} if arg else {}
    return build(name, params, field).coalgebra


def _coalgebra_bundle(name, params, field, C: Coalgebra) -> Bundle:
    lam = identity_morphism(C)
    comods = {f"right{i}": M for i, M in enumerate(standard_comodules(C))}
    comods["regular_left"] = regular_left(C)
    return Bundle(name, params, field, {"C": C}, {"lambda": lam, "counit": counit_morphism(C)}, comods)


def _need(params: dict, key: str) -> int:
    if key not in params:
        raise InputError(f"missing parameter {key!r}")
    return int(params[key])


PRESETS: dict[str, Callable] = {}


def preset(name):
    def deco(fn):
        PRESETS[name] = fn
        return fn
    return deco


@preset("grouplike")
def _p_grouplike(params, field):
    return _coalgebra_bundle("grouplike", params, field, grouplike(_need(params, "n"), field))


@preset("matrix_coalgebra")
def _p_matrix(params, field):
    return _coalgebra_bundle("matrix_coalgebra", params, field, matrix_coalgebra(_need(params, "n"), field))


@preset("dual_numbers")
def _p_dual_numbers(params, field):
    return _coalgebra_bundle("dual_numbers", params, field, dual_numbers(field))


@preset("dual_of_square_zero_local")
def _p_square_zero(params, field):
    m = _need(params, "n")
    if m < 1:
        raise InputError("n must be positive")
    return _coalgebra_bundle("dual_of_square_zero_local", params, field, dual_of_square_zero_local(m, field))


@preset("trivial")
def _p_trivial(params, field):
    return _coalgebra_bundle("trivial", params, field, trivial(field))


@preset("trivial_extension")
def _p_trivial_extension(params, field):
    C = _base(params.get("base", "dual_numbers"), field)
    lam = trivial_extension(C)
    return Bundle("trivial_extension", params, field, {"C": C, "D": lam.target}, {"lambda": lam},
                  {"C_right": regular_right(C), "D_right": regular_right(lam.target)})


@preset("set_map_extension")
def _p_set_map(params, field):
    images = params.get("map", (0, 0))
    if isinstance(images, str):
        images = [int(x) for x in images.split(",") if x]
    images = [int(x) for x in images]
    if not images:
        raise InputError("set map needs a non-empty domain")
    size = int(params.get("target", max(images) + 1))
    lam = set_map_extension(images, size, field)
    return Bundle("set_map_extension", params, field, {"C": lam.source, "D": lam.target}, {"lambda": lam},
                  {"C_right": regular_right(lam.source), "D_right": regular_right(lam.target)})


@preset("direct_sum_coring")
def _p_direct_sum(params, field):
    D = _base(params.get("base", "grouplike:2"), field)
    ring = direct_sum_coring(D, _need(params, "n"))
    morph = {"lambda": ring.extension}
    morph.update({f"sigma{i}": s for i, s in enumerate(ring.inclusions)})
    maps = {f"p{i}": p for i, p in enumerate(ring.projections)}
    comp = componentwise_comodule(ring, [regular_right(D)] * ring.n)
    return Bundle("direct_sum_coring", params, field, {"C": ring.coalgebra, "D": D}, morph,
                  {"componentwise": comp, "componentwise_over_D": corestrict(comp, ring.extension)}, maps)


def build(name: str, params: dict | None = None, field: FieldSpec = QQ) -> Bundle:
    """Build a preset by name; every object in the bundle is validated on construction."""
    if name not in PRESETS:
        raise InputError(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}")
    return PRESETS[name](dict(params or {}), field)
