"""Monoid and hom description files, result envelopes, digests.

The on-disk format is JSON.  A monoid file holds an ambient presentation
and a generator list; a hom file holds two monoids, inline or by path
relative to the referencing file, and one ambient matrix.  Keys starting
with an underscore and the key "description" are ignored everywhere, so
files can carry commentary.  Emitted payloads print integers as decimal
strings; the parser accepts both forms.
"""

import hashlib
import json
import os
from fractions import Fraction

from .errors import InputError
from .lattice import FgAbelianGroup, IntMatrix
from .monoid import Monoid
from .morphism import MonoidHom


def _as_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise InputError(f"{where}: not a decimal integer: {value!r}") from None
    raise InputError(f"{where}: expected an integer")


def _as_vector(value, length: int, where: str) -> tuple:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    vec = tuple(_as_int(v, f"{where}[{i}]") for i, v in enumerate(value))
    if len(vec) != length:
        raise InputError(f"{where}: length {len(vec)}, expected {length}")
    return vec


def _as_matrix(value, cols: int, where: str) -> tuple:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of rows")
    return tuple(
        _as_vector(row, cols, f"{where}[{i}]") for i, row in enumerate(value)
    )


def _clean(obj):
    """Strip commentary keys recursively."""
    if isinstance(obj, dict):
        return {
            k: _clean(v)
            for k, v in obj.items()
            if not (isinstance(k, str) and (k.startswith("_") or k == "description"))
        }
    if isinstance(obj, list):
        return [_clean(v) for v in obj]
    return obj


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def read_json(path: str):
    return _load_json(path)


def monoid_from_dict(data, where: str = "monoid") -> Monoid:
    data = _clean(data)
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    ambient = data.get("ambient")
    if not isinstance(ambient, dict):
        raise InputError(f"{where}.ambient: expected an object")
    rank = _as_int(ambient.get("rank"), f"{where}.ambient.rank")
    if rank < 0:
        raise InputError(f"{where}.ambient.rank: must be nonnegative")
    relations = _as_matrix(
        ambient.get("relations", []), rank, f"{where}.ambient.relations"
    )
    generators = data.get("generators", [])
    if not isinstance(generators, list):
        raise InputError(f"{where}.generators: expected a list")
    gens = [
        _as_vector(g, rank, f"{where}.generators[{i}]")
        for i, g in enumerate(generators)
    ]
    return Monoid(FgAbelianGroup(rank, relations), gens)


def load_monoid(path: str) -> Monoid:
    return monoid_from_dict(_load_json(path), where=path)


def _resolve_end(value, base_dir: str, where: str) -> Monoid:
    if isinstance(value, str):
        return load_monoid(os.path.join(base_dir, value))
    return monoid_from_dict(value, where)


def hom_from_dict(data, base_dir: str = ".", where: str = "hom") -> MonoidHom:
    data = _clean(data)
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    if "source" not in data or "target" not in data:
        raise InputError(f"{where}: needs source and target")
    source = _resolve_end(data["source"], base_dir, f"{where}.source")
    target = _resolve_end(data["target"], base_dir, f"{where}.target")
    mat = _as_matrix(
        data.get("ambient_map"), source.ambient.rank, f"{where}.ambient_map"
    )
    if len(mat) != target.ambient.rank:
        raise InputError(
            f"{where}.ambient_map: {len(mat)} rows, expected {target.ambient.rank}"
        )
    return MonoidHom(source, target, mat)


def load_hom(path: str) -> MonoidHom:
    return hom_from_dict(_load_json(path), os.path.dirname(path) or ".", where=path)


def monoid_to_dict(monoid: Monoid) -> dict:
    return {
        "ambient": {
            "rank": monoid.ambient.rank,
            "relations": [list(r) for r in monoid.ambient.relations.entries],
        },
        "generators": sorted(list(g.coords) for g in monoid.generators),
    }


def hom_to_dict(hom: MonoidHom) -> dict:
    return {
        "source": monoid_to_dict(hom.source),
        "target": monoid_to_dict(hom.target),
        "ambient_map": [list(r) for r in hom.matrix.entries],
    }


def structure_to_dict(structure) -> dict:
    return {
        "free_rank": structure.free_rank,
        "invariant_factors": list(structure.invariant_factors),
        "display": str(structure),
    }


def stringify(obj):
    """Payload form: integers become decimal strings, fractions p/q."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(v) for v in obj]
    return obj


def canonical_digest(*parts) -> str:
    """Hex digest of the canonical JSON of the parsed inputs."""
    blob = json.dumps(
        [_clean(p) for p in parts], sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def envelope(command: str, inputs, status: str, payload, certificate=None) -> dict:
    if status == "violated" and certificate is None:
        raise InputError("a violation needs a certificate")
    out = {
        "command": command,
        "inputs": inputs,
        "status": status,
        "payload": stringify(payload),
    }
    if certificate is not None:
        out["certificate"] = stringify(certificate)
    return out
