"""JSON file formats and their (de)serialization.

  .bha  algebra       {"dim", "mu", "alpha", "beta"}
  .bhr  representation {"alg_dim", "mod_dim", "l", "r", "phi", "psi"}
  .bhc  cochain       {"degree", "alg_dim", "mod_dim", "tensor"[, "target"]}
  .bhd  deformation   {"algebra": <.bha object>, "terms": [tensor, ...]}

Every scalar is a rational literal: an integer or a string "p" / "p/q" with
q > 0.  mu[i][j][k] is the e_k-coefficient of e_i·e_j; matrices are row-major
and act on column coordinate vectors; cochain tensors nest by input index
with the output coordinates innermost.  Emitted documents always use string
literals, so byte-identical output is reproducible.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import BiHomAlgebra
from .cohomology import Cochain
from .deformation import FormalIsomorphism, TruncatedDeformation
from .errors import InputError
from .exactnum import Matrix, format_rational, parse_rational
from .representation import Representation


def _fail(path: str, message: str):
    raise InputError(f"{path}: {message}")


def _expect_dict(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        _fail(path, "expected a JSON object")
    return obj


def _expect_list(obj, path: str, length=None) -> list:
    if not isinstance(obj, list):
        _fail(path, "expected a JSON array")
    if length is not None and len(obj) != length:
        _fail(path, f"expected {length} entries, found {len(obj)}")
    return obj


def _expect_int(obj, path: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        _fail(path, "expected an integer")
    return obj


def _scalar(obj, path: str):
    try:
        return parse_rational(obj)
    except InputError as exc:
        _fail(path, str(exc))


def parse_matrix(obj, path: str, nrows: int, ncols: int) -> Matrix:
    rows = _expect_list(obj, path, nrows)
    out = []
    for i, row in enumerate(rows):
        row = _expect_list(row, f"{path}[{i}]", ncols)
        out.append([_scalar(e, f"{path}[{i}][{j}]") for j, e in enumerate(row)])
    return Matrix(out)


def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(e) for e in row] for row in m.rows]


def parse_algebra(obj: Any, path: str = "algebra") -> BiHomAlgebra:
    obj = _expect_dict(obj, path)
    for key in ("dim", "mu", "alpha", "beta"):
        if key not in obj:
            _fail(path, f"missing key {key!r}")
    dim = _expect_int(obj["dim"], f"{path}.dim")
    if dim < 1:
        _fail(f"{path}.dim", "must be positive")
    mu_obj = _expect_list(obj["mu"], f"{path}.mu", dim)
    mu = []
    for i, row in enumerate(mu_obj):
        row = _expect_list(row, f"{path}.mu[{i}]", dim)
        mu_row = []
        for j, cell in enumerate(row):
            cell = _expect_list(cell, f"{path}.mu[{i}][{j}]", dim)
            mu_row.append([_scalar(e, f"{path}.mu[{i}][{j}][{k}]") for k, e in enumerate(cell)])
        mu.append(mu_row)
    alpha = parse_matrix(obj["alpha"], f"{path}.alpha", dim, dim)
    beta = parse_matrix(obj["beta"], f"{path}.beta", dim, dim)
    return BiHomAlgebra(dim, mu, alpha, beta)


def algebra_to_json(alg: BiHomAlgebra) -> dict:
    return {
        "dim": alg.dim,
        "mu": [
            [[format_rational(e) for e in cell] for cell in row]
            for row in alg.mu
        ],
        "alpha": matrix_to_json(alg.alpha),
        "beta": matrix_to_json(alg.beta),
    }


def parse_representation(obj: Any, path: str = "representation") -> Representation:
    obj = _expect_dict(obj, path)
    for key in ("alg_dim", "mod_dim", "l", "r", "phi", "psi"):
        if key not in obj:
            _fail(path, f"missing key {key!r}")
    n = _expect_int(obj["alg_dim"], f"{path}.alg_dim")
    m = _expect_int(obj["mod_dim"], f"{path}.mod_dim")
    if n < 1 or m < 1:
        _fail(path, "dimensions must be positive")
    l_list = _expect_list(obj["l"], f"{path}.l", n)
    r_list = _expect_list(obj["r"], f"{path}.r", n)
    l = [parse_matrix(e, f"{path}.l[{i}]", m, m) for i, e in enumerate(l_list)]
    r = [parse_matrix(e, f"{path}.r[{i}]", m, m) for i, e in enumerate(r_list)]
    phi = parse_matrix(obj["phi"], f"{path}.phi", m, m)
    psi = parse_matrix(obj["psi"], f"{path}.psi", m, m)
    return Representation(n, m, l, r, phi, psi)


def representation_to_json(rep: Representation) -> dict:
    return {
        "alg_dim": rep.alg_dim,
        "mod_dim": rep.mod_dim,
        "l": [matrix_to_json(m) for m in rep.l],
        "r": [matrix_to_json(m) for m in rep.r],
        "phi": matrix_to_json(rep.phi),
        "psi": matrix_to_json(rep.psi),
    }


def parse_cochain(obj: Any, path: str = "cochain") -> tuple[Cochain, str]:
    """Returns the cochain and its target tag ("module" or "dual")."""
    obj = _expect_dict(obj, path)
    for key in ("degree", "alg_dim", "mod_dim", "tensor"):
        if key not in obj:
            _fail(path, f"missing key {key!r}")
    degree = _expect_int(obj["degree"], f"{path}.degree")
    n = _expect_int(obj["alg_dim"], f"{path}.alg_dim")
    m = _expect_int(obj["mod_dim"], f"{path}.mod_dim")
    if degree < 1 or degree > 4:
        _fail(f"{path}.degree", "must be between 1 and 4")
    if n < 1 or m < 1:
        _fail(path, "dimensions must be positive")
    target = obj.get("target", "module")
    if target not in ("module", "dual"):
        _fail(f"{path}.target", "must be 'module' or 'dual'")
    data = []

    def walk(node, depth, at):
        if depth == degree:
            node = _expect_list(node, at, m)
            data.extend(_scalar(e, f"{at}[{i}]") for i, e in enumerate(node))
            return
        node = _expect_list(node, at, n)
        for i, child in enumerate(node):
            walk(child, depth + 1, f"{at}[{i}]")

    walk(obj["tensor"], 0, f"{path}.tensor")
    return Cochain(degree, n, m, data), target


def cochain_to_json(cochain: Cochain, target: str = "module") -> dict:
    def build(prefix):
        if len(prefix) == cochain.degree:
            return [format_rational(v) for v in cochain.value(*prefix)]
        return [build(prefix + (i,)) for i in range(cochain.alg_dim)]

    return {
        "degree": cochain.degree,
        "alg_dim": cochain.alg_dim,
        "mod_dim": cochain.mod_dim,
        "target": target,
        "tensor": build(()),
    }


def parse_deformation(obj: Any, path: str = "deformation") -> TruncatedDeformation:
    obj = _expect_dict(obj, path)
    for key in ("algebra", "terms"):
        if key not in obj:
            _fail(path, f"missing key {key!r}")
    alg = parse_algebra(obj["algebra"], f"{path}.algebra")
    terms_obj = _expect_list(obj["terms"], f"{path}.terms")
    terms = []
    for t, tensor in enumerate(terms_obj):
        at = f"{path}.terms[{t}]"
        tensor = _expect_list(tensor, at, alg.dim)
        data = []
        for i, row in enumerate(tensor):
            row = _expect_list(row, f"{at}[{i}]", alg.dim)
            for j, cell in enumerate(row):
                cell = _expect_list(cell, f"{at}[{i}][{j}]", alg.dim)
                data.extend(_scalar(e, f"{at}[{i}][{j}][{k}]") for k, e in enumerate(cell))
        terms.append(Cochain(2, alg.dim, alg.dim, data))
    return TruncatedDeformation(alg, terms)


def deformation_to_json(defm: TruncatedDeformation) -> dict:
    return {
        "algebra": algebra_to_json(defm.alg),
        "terms": [
            [
                [[format_rational(v) for v in t.value(i, j)] for j in range(defm.alg.dim)]
                for i in range(defm.alg.dim)
            ]
            for t in defm.terms
        ],
    }


def isomorphism_to_json(iso: FormalIsomorphism) -> dict:
    return {"terms": [matrix_to_json(m) for m in iso.terms]}


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc


def load_algebra(path: str) -> BiHomAlgebra:
    return parse_algebra(load_json_file(path), path)


def load_representation(path: str) -> Representation:
    return parse_representation(load_json_file(path), path)


def load_cochain(path: str) -> tuple[Cochain, str]:
    return parse_cochain(load_json_file(path), path)


def load_deformation(path: str) -> TruncatedDeformation:
    return parse_deformation(load_json_file(path), path)
