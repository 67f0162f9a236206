"""Command line entry point.

Exit codes: 0 success / yes / valid, 1 failure / no / invalid, 2 unknown,
3 malformed input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import documents as docs
from .coalgebra import (AxiomError, Bicomodule, Coalgebra, CoalgebraMorphism, Comodule, InputError, hom_space,
                        is_injective_comodule)
from .config import default_settings
from .cotensor import cotensor, extension_cotensor
from .dual_algebra import dualize_coalgebra, dualize_extension
from .exact_linalg import FieldSpec
from .frobenius import check_frobenius_extension, frobenius_system, verify_certificate
from .zoo import PRESETS, build

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


def _read(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise docs.DocumentError(path, e.strerror or str(e)) from None
    return docs.loads(text, path)


def _load(path: str, want=None, check=True):
    obj = docs.load_object(_read(path), check=check, where=path)
    if want is not None and not isinstance(obj, want):
        names = want.__name__ if isinstance(want, type) else " or ".join(w.__name__ for w in want)
        raise docs.DocumentError(path, f"expected a {names} document")
    return obj


def _emit(doc, out) -> None:
    out.write(docs.dumps(doc))


def cmd_validate(a, out):
    obj = _load(a.file, check=False)
    _emit(docs.report_to_doc(obj.report), out)
    return EXIT_OK if obj.report.ok else EXIT_FAIL


def cmd_check(a, out):
    lam = _load(a.extension, CoalgebraMorphism)
    settings = default_settings()
    budget = a.budget if a.budget is not None else settings.budget
    v = check_frobenius_extension(lam, seed=a.seed, budget=budget, route=a.route, settings=settings)
    basis = extension_cotensor(lam).basis if v.is_yes else None
    doc = docs.verdict_to_doc(v, lam, basis, budget)
    if a.certificate and v.is_yes:
        Path(a.certificate).write_text(docs.dumps(doc["certificate"]), encoding="utf-8")
    _emit(doc, out)
    return v.exit_code


def cmd_verify(a, out):
    lam = _load(a.extension, CoalgebraMorphism)
    basis = extension_cotensor(lam).basis
    cert = docs.certificate_from_doc(_read(a.certificate), lam, basis, a.certificate)
    ok = verify_certificate(lam, cert)
    _emit({"kind": "verification", "valid": ok}, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cotensor(a, out):
    if len(a.files) == 1:
        lam = _load(a.files[0], CoalgebraMorphism)
        T = extension_cotensor(lam)
    elif len(a.files) == 2:
        M = _load(a.files[0], (Comodule, Bicomodule))
        N = _load(a.files[1], (Comodule, Bicomodule))
        T = cotensor(M, N)
    else:
        raise InputError("cotensor takes an extension or a right and a left comodule")
    doc = {"kind": "cotensor", "dim": T.dim, "ambient_dim": T.ambient_dim, "basis": docs.matrix_to_doc(T.basis)}
    if T.left_coaction is not None:
        doc["left_coaction"] = docs.comodule_to_doc(T.left_coaction)
    if T.right_coaction is not None:
        doc["right_coaction"] = docs.comodule_to_doc(T.right_coaction)
    _emit(doc, out)
    return EXIT_OK


def cmd_hom(a, out):
    M = _load(a.source, (Comodule, Bicomodule))
    N = _load(a.target, (Comodule, Bicomodule))
    H = hom_space(a.kind, M, N)
    _emit({"kind": "hom-space", "hom_kind": a.kind, "dim": H.dim,
           "basis": [docs.matrix_to_doc(F) for F in H.basis]}, out)
    return EXIT_OK


def cmd_dualize(a, out):
    obj = _load(a.file, (Coalgebra, CoalgebraMorphism))
    if isinstance(obj, Coalgebra):
        _emit(docs.algebra_to_doc(dualize_coalgebra(obj)), out)
    else:
        _emit(docs.algebra_morphism_to_doc(dualize_extension(obj)), out)
    return EXIT_OK


def cmd_injective(a, out):
    M = _load(a.file, Comodule)
    _emit({"kind": "injectivity", "side": M.side, "injective": is_injective_comodule(M)}, out)
    return EXIT_OK


def cmd_frobenius_system(a, out):
    C = _load(a.file, Coalgebra)
    sys_ = frobenius_system(C, seed=a.seed, budget=a.budget)
    doc = {"kind": "frobenius-system", "present": sys_ is not None}
    if sys_ is not None:
        doc["e"] = [C.field.format(v) for v in sys_.e]
        doc["pi"] = docs.matrix_to_doc(sys_.pi)
    _emit(doc, out)
    return EXIT_OK


def _param(text: str):
    key, sep, val = text.partition("=")
    if not sep:
        raise InputError(f"parameter {text!r} is not key=value")
    return key.strip(), val.strip()


def cmd_zoo(a, out):
    params = dict(_param(p) for p in a.param)
    if a.n is not None:
        params["n"] = a.n
    b = build(a.preset, params, FieldSpec.parse(a.field))
    name = a.object or ("lambda" if b.extension is not None and b.extension.source != b.extension.target
                        else "C")
    if name in b.coalgebras:
        doc = docs.coalgebra_to_doc(b.coalgebras[name])
    elif name in b.morphisms:
        doc = docs.morphism_to_doc(b.morphisms[name])
    elif name in b.comodules:
        doc = docs.comodule_to_doc(b.comodules[name])
    else:
        avail = sorted([*b.coalgebras, *b.morphisms, *b.comodules])
        raise InputError(f"bundle has no object {name!r}; available: {', '.join(avail)}")
    _emit(doc, out)
    return EXIT_OK


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cofrob", description="Frobenius extensions of finite-dimensional coalgebras")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the axioms of a document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check-frobenius", help="decide whether an extension is Frobenius")
    s.add_argument("extension")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--route", choices=("dual", "primal"), default="dual")
    s.add_argument("--certificate", help="write the certificate here on a yes")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify", help="replay a certificate")
    s.add_argument("extension")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cotensor", help="C box_D C for an extension, or M box_D N for two comodules")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_cotensor)

    s = sub.add_parser("hom", help="basis of a comodule or bicomodule morphism space")
    s.add_argument("kind", choices=("right", "left", "bicomodule"))
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("dualize", help="convolution dual of a coalgebra or an extension")
    s.add_argument("file")
    s.set_defaults(func=cmd_dualize)

    s = sub.add_parser("injective", help="is a comodule injective")
    s.add_argument("file")
    s.set_defaults(func=cmd_injective)

    s = sub.add_parser("frobenius-system", help="Frobenius system (e, pi) of a coalgebra")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_frobenius_system)

    s = sub.add_parser("zoo", help="emit a preset object")
    s.add_argument("preset", choices=sorted(PRESETS))
    s.add_argument("--n", type=int)
    s.add_argument("--param", action="append", default=[], help="key=value, e.g. base=dual_numbers")
    s.add_argument("--field", default="Q")
    s.add_argument("--object", help="which object of the bundle to print")
    s.set_defaults(func=cmd_zoo)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return a.func(a, out)
    except (AxiomError, InputError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
