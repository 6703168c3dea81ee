"""JSON formats for polytopes, ellipsoids, decompositions and certificates.

Floats are written with ``repr`` (shortest round-trip decimal).

Polytope       {"dim": n, "vertices": [[x1, ..., xn], ...]}
Ellipsoid      {"dim": n, "shape": [[...], ...], "center": [...]}
Decomposition  {"dim": n, "directions": [[...], ...], "weights": [...],
                "residual": r}
Witness        Decomposition + {"value": v, "subset": [i, ...]}
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .decomposition import IdentityDecomposition
from .errors import InputError
from .polytope import build_polytope

__all__ = ["read_input", "read_json", "write_json", "polytope_to_dict", "polytope_from_dict",
           "ellipsoid_to_dict", "contact_to_dict", "decomposition_to_dict",
           "decomposition_from_dict", "witness_to_dict", "certificate_to_dict",
           "fixture_dir", "load_fixture", "resolve_input"]


def read_input(source):
    """Parse JSON from a path, ``"-"`` (stdin) or an open text stream.

    Returns
    -------
    (data, digest)
        ``digest`` is the SHA-256 of the raw bytes.
    """
    if hasattr(source, "read"):
        raw, label = source.read(), "<stream>"
    elif str(source) == "-":
        raw, label = sys.stdin.buffer.read(), "<stdin>"
    else:
        try:
            raw = Path(source).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
        label = str(source)
    if isinstance(raw, str):
        raw = raw.encode()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw.decode("utf-8")), digest
    except UnicodeDecodeError:
        raise InputError(f"{label}: input is not UTF-8 text") from None
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{label}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def read_json(source):
    return read_input(source)[0]


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj) + 0.0  # drops negative zero
    return obj


def dumps(obj):
    """One top-level key per line, values inline."""
    obj = _plain(obj)
    if not isinstance(obj, dict):
        return json.dumps(obj)
    body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v)}" for k, v in obj.items())
    return "{\n" + body + "\n}"


def write_json(obj, target):
    text = dumps(obj) + "\n"
    if target in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def _matrix(d, key, n, rows=None):
    try:
        A = np.asarray(d[key], dtype=float)
    except KeyError:
        raise InputError(f"missing field {key!r}") from None
    except (TypeError, ValueError):
        raise InputError(f"field {key!r} is not a numeric array") from None
    if A.ndim != 2 or A.shape[1] != n or (rows is not None and A.shape[0] != rows):
        raise InputError(f"dimension mismatch in {key!r}: expected rows of length {n}")
    return A


def _dim(d):
    try:
        n = d["dim"]
    except (KeyError, TypeError):
        raise InputError("missing field 'dim'") from None
    if not isinstance(n, int) or n < 1:
        raise InputError(f"'dim' must be a positive integer, got {n!r}")
    return n


def polytope_to_dict(P):
    return {"dim": P.dim, "vertices": P.vertices}


def polytope_from_dict(d):
    return build_polytope(_matrix(d, "vertices", _dim(d)))


def points_from_dict(d):
    """Point cloud from either polytope JSON or a bare list of points."""
    if isinstance(d, list):
        P = np.asarray(d, dtype=float)
        if P.ndim != 2:
            raise InputError("expected a list of points")
        return P
    key = "vertices" if "vertices" in d else "points"
    return _matrix(d, key, _dim(d))


def ellipsoid_to_dict(E):
    return {"dim": E.dim, "shape": E.shape, "center": E.center}


def contact_to_dict(C):
    out = {"points": C.points, "weights": C.weights, "indices": C.indices,
           "residual": C.residual}
    if C.barycenter_residual is not None:
        out["barycenter_residual"] = C.barycenter_residual
    return out


def decomposition_to_dict(D):
    return {"dim": D.dim, "directions": D.directions, "weights": D.weights,
            "residual": D.residual}


def decomposition_from_dict(d):
    n = _dim(d)
    U = _matrix(d, "directions", n)
    try:
        w = np.asarray(d["weights"], dtype=float)
    except KeyError:
        raise InputError("missing field 'weights'") from None
    if w.shape != (len(U),):
        raise InputError(f"dimension mismatch: {len(U)} directions, {w.size} weights")
    try:
        return IdentityDecomposition(U, w)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def witness_to_dict(W):
    out = decomposition_to_dict(W.decomposition)
    out.update(value=W.value, subset=list(W.subset))
    if W.name:
        out["name"] = W.name
    return out


def certificate_to_dict(C):
    return {"kind": C.kind, "map": C.map.matrix, "det": C.map.det,
            "quotient_before": C.quotient_before,
            "quotient_after": C.quotient_after,
            "decomposition": decomposition_to_dict(C.decomposition),
            "residual": C.residual, "tolerance": C.tolerance,
            "certified": C.certified}


def fixture_dir():
    """Directory of bundled body fixtures; ``ISODIAM_FIXTURES`` overrides it."""
    env = os.environ.get("ISODIAM_FIXTURES")
    if env:
        return Path(env)
    return Path(str(resources.files("isodiam") / "fixtures"))


def resolve_input(path):
    """``path`` as given if it exists, else looked up in the fixture dir."""
    p = Path(path)
    if str(path) == "-" or p.exists():
        return path
    for cand in (fixture_dir() / p.name, fixture_dir() / (p.name + ".json")):
        if cand.exists():
            return cand
    return path


def load_fixture(name):
    return polytope_from_dict(read_json(resolve_input(name)))
