"""JSON documents for coalgebras, morphisms, comodules, certificates and verdicts.

Scalars are always strings ("n" or "n/d"); indices are 0-based integers.
Serialization is canonical: sorted keys, fixed indentation, trailing newline.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any

from .coalgebra import Bicomodule, Coalgebra, CoalgebraMorphism, Comodule, InputError, Report
from .exact_linalg import FieldSpec, Matrix


class DocumentError(InputError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def canonical_hash(doc: Any) -> str:
    raw = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def loads(text: str, where: str = "$") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{where} line {e.lineno} column {e.colno}", e.msg) from None


# ---------------------------------------------------------------------------
# field checks


def _get(doc, key, where, kind=None):
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected an object")
    if key not in doc:
        raise DocumentError(where, f"missing key {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise DocumentError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return v


def _scalar(field: FieldSpec, v, where):
    if not isinstance(v, str):
        raise DocumentError(where, "scalars must be strings")
    try:
        return field(v)
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(where, str(e)) from None


def _index(v, where):
    if isinstance(v, str) and v.strip().lstrip("-").isdigit():
        v = int(v)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DocumentError(where, "indices must be integers")
    return v


def field_to_doc(f: FieldSpec) -> dict:
    return {"kind": "rationals"} if f.p is None else {"kind": "prime", "p": f.p}


def field_from_doc(doc, where="$.field") -> FieldSpec:
    try:
        return FieldSpec.from_json(doc)
    except (ValueError, TypeError, KeyError) as e:
        raise DocumentError(where, f"bad field: {e}") from None


def matrix_to_doc(M: Matrix) -> list:
    return M.to_strings()


def matrix_from_doc(field: FieldSpec, doc, shape: tuple[int, int] | None, where: str) -> Matrix:
    if not isinstance(doc, list) or any(not isinstance(r, list) for r in doc):
        raise DocumentError(where, "matrix must be a list of rows")
    ncols = len(doc[0]) if doc else (shape[1] if shape else 0)
    if any(len(r) != ncols for r in doc):
        raise DocumentError(where, "ragged matrix")
    if shape is not None and (len(doc), ncols) != shape:
        raise DocumentError(where, f"expected shape {shape}, got {(len(doc), ncols)}")
    rows = [[_scalar(field, v, f"{where}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(doc)]
    return Matrix.from_rows(field, rows, ncols)


def _tensor_to_doc(field: FieldSpec, t: dict) -> list:
    return [[i, j, k, field.format(v)] for (i, j, k), v in sorted(t.items())]


def _tensor_from_doc(field: FieldSpec, doc, where: str) -> dict:
    if not isinstance(doc, list):
        raise DocumentError(where, "expected a list of [i, j, k, value] entries")
    out = {}
    for n, e in enumerate(doc):
        w = f"{where}[{n}]"
        if not isinstance(e, list) or len(e) != 4:
            raise DocumentError(w, "expected [i, j, k, value]")
        key = tuple(_index(x, f"{w}[{p}]") for p, x in enumerate(e[:3]))
        if key in out:
            raise DocumentError(w, f"duplicate entry {key}")
        out[key] = _scalar(field, e[3], f"{w}[3]")
    return out


# ---------------------------------------------------------------------------
# coalgebras and morphisms


def coalgebra_to_doc(C: Coalgebra) -> dict:
    doc = {
        "field": field_to_doc(C.field),
        "dim": C.dim,
        "delta": _tensor_to_doc(C.field, C.delta),
        "epsilon": [[i, C.field.format(v)] for i, v in enumerate(C.counit) if v],
    }
    if C.labels is not None:
        doc["labels"] = list(C.labels)
    return doc


def coalgebra_from_doc(doc, where="$", check=True) -> Coalgebra:
    f = field_from_doc(_get(doc, "field", where), f"{where}.field")
    n = _index(_get(doc, "dim", where), f"{where}.dim")
    delta = _tensor_from_doc(f, _get(doc, "delta", where), f"{where}.delta")
    eps_doc = _get(doc, "epsilon", where, list)
    eps = [f.zero] * n
    for p, e in enumerate(eps_doc):
        w = f"{where}.epsilon[{p}]"
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentError(w, "expected [i, value]")
        i = _index(e[0], f"{w}[0]")
        if not 0 <= i < n:
            raise DocumentError(f"{w}[0]", f"index {i} out of range")
        eps[i] = _scalar(f, e[1], f"{w}[1]")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise DocumentError(f"{where}.labels", f"expected a list of {n} names")
    try:
        return Coalgebra(f, n, delta, tuple(eps), tuple(labels) if labels else None, check=check)
    except InputError as e:
        if isinstance(e, DocumentError):
            raise
        raise DocumentError(where, str(e)) from None


def morphism_to_doc(lam: CoalgebraMorphism) -> dict:
    return {"source": coalgebra_to_doc(lam.source), "target": coalgebra_to_doc(lam.target),
            "matrix": matrix_to_doc(lam.matrix)}


def morphism_from_doc(doc, where="$", check=True) -> CoalgebraMorphism:
    C = coalgebra_from_doc(_get(doc, "source", where), f"{where}.source", check)
    D = coalgebra_from_doc(_get(doc, "target", where), f"{where}.target", check)
    if C.field != D.field:
        raise DocumentError(where, "source and target fields differ")
    M = matrix_from_doc(C.field, _get(doc, "matrix", where), (D.dim, C.dim), f"{where}.matrix")
    return CoalgebraMorphism(C, D, M, check=check)


def comodule_to_doc(M: Comodule) -> dict:
    return {"side": M.side, "over": coalgebra_to_doc(M.over), "dim": M.dim,
            "coaction": _tensor_to_doc(M.field, M.coaction)}


def comodule_from_doc(doc, where="$", check=True) -> Comodule:
    side = _get(doc, "side", where, str)
    if side not in ("left", "right"):
        raise DocumentError(f"{where}.side", "must be 'left' or 'right'")
    C = coalgebra_from_doc(_get(doc, "over", where), f"{where}.over", check)
    m = _index(_get(doc, "dim", where), f"{where}.dim")
    t = _tensor_from_doc(C.field, _get(doc, "coaction", where), f"{where}.coaction")
    try:
        return Comodule(side, C, m, t, check=check)
    except InputError as e:
        raise DocumentError(where, str(e)) from None


def bicomodule_to_doc(B: Bicomodule) -> dict:
    return {"left": comodule_to_doc(B.left), "right": comodule_to_doc(B.right)}


def bicomodule_from_doc(doc, where="$", check=True) -> Bicomodule:
    L = comodule_from_doc(_get(doc, "left", where), f"{where}.left", check)
    R = comodule_from_doc(_get(doc, "right", where), f"{where}.right", check)
    try:
        return Bicomodule(L, R, check=check)
    except InputError as e:
        raise DocumentError(where, str(e)) from None


def detect(doc) -> str:
    if not isinstance(doc, dict):
        raise DocumentError("$", "expected an object")
    if "delta" in doc or "epsilon" in doc or "dim" in doc and "coaction" not in doc:
        return "coalgebra"
    if "source" in doc or "target" in doc:
        return "morphism"
    if "coaction" in doc:
        return "comodule"
    if "left" in doc and "right" in doc:
        return "bicomodule"
    raise DocumentError("$", "cannot tell which kind of document this is")


def load_object(doc, check=True, where="$"):
    kind = detect(doc)
    return {"coalgebra": coalgebra_from_doc, "morphism": morphism_from_doc, "comodule": comodule_from_doc,
            "bicomodule": bicomodule_from_doc}[kind](doc, where, check)


def report_to_doc(r: Report) -> dict:
    return {"subject": r.subject, "ok": r.ok,
            "violations": [{"identity": v.identity, "index": v.index, "detail": v.detail} for v in r.violations]}


# ---------------------------------------------------------------------------
# certificates and verdicts


def certificate_to_doc(cert, lam: CoalgebraMorphism, basis: Matrix) -> dict:
    return {
        "kind": "frobenius-certificate",
        "extension_sha256": canonical_hash(morphism_to_doc(lam)),
        "field": field_to_doc(lam.field),
        "cotensor_basis": matrix_to_doc(basis),
        "alpha": matrix_to_doc(cert.alpha),
        "beta": matrix_to_doc(cert.beta),
        "route": cert.route,
    }


def certificate_from_doc(doc, lam: CoalgebraMorphism, basis: Matrix, where="$"):
    """Parse a certificate for ``lam``; refuses a different extension or cotensor basis."""
    from .frobenius import FrobeniusCertificate

    h = _get(doc, "extension_sha256", where, str)
    if h != canonical_hash(morphism_to_doc(lam)):
        raise DocumentError(f"{where}.extension_sha256", "certificate was issued for a different extension")
    f = field_from_doc(_get(doc, "field", where), f"{where}.field")
    if f != lam.field:
        raise DocumentError(f"{where}.field", "field differs from the extension")
    if "cotensor_basis" in doc:
        B = matrix_from_doc(f, doc["cotensor_basis"], None, f"{where}.cotensor_basis")
        if B != basis:
            raise DocumentError(f"{where}.cotensor_basis", "cotensor basis differs from the canonical one")
    alpha = matrix_from_doc(f, _get(doc, "alpha", where), None, f"{where}.alpha")
    beta = matrix_from_doc(f, _get(doc, "beta", where), None, f"{where}.beta")
    return FrobeniusCertificate(alpha, beta, str(doc.get("route", "")))


def verdict_to_doc(v, lam: CoalgebraMorphism | None = None, basis: Matrix | None = None,
                   budget: int | None = None) -> dict:
    fam = None
    if v.family is not None:
        F = v.family
        fam = {"status": F.status, "route": F.route, "evaluations": F.evaluations,
               "params": None if F.params is None else [lam.field.format(t) if lam else str(t) for t in F.params]}
    doc = {
        "kind": "verdict",
        "status": v.status,
        "evidence": v.evidence,
        "route": v.route,
        "seed": v.seed,
        "budget": budget,
        "transcript": list(v.transcript),
        "determinant_family": fam,
        "confidence": None if v.confidence is None else str(v.confidence),
        "certificate": None,
    }
    if v.is_yes and lam is not None:
        doc["certificate"] = certificate_to_doc(v.witness, lam, basis)
    return doc


def algebra_to_doc(A) -> dict:
    return {"kind": "algebra", "field": field_to_doc(A.field), "dim": A.dim,
            "mult": _tensor_to_doc(A.field, A.mult), "unit": [A.field.format(v) for v in A.unit]}


def algebra_morphism_to_doc(phi) -> dict:
    return {"kind": "algebra-morphism", "source": algebra_to_doc(phi.source), "target": algebra_to_doc(phi.target),
            "matrix": matrix_to_doc(phi.matrix)}
