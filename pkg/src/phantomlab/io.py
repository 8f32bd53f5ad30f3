"""JSON files for algebras, modules, morphisms, contexts and bundles.

Paths inside a file are resolved relative to that file.  A :class:`Loader`
keeps one object per resolved path, so a context and the modules handed to it
on the command line share the same :class:`~phantomlab.quivalg.Algebra`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from . import p1sheaves as p1
from . import quivalg as qa
from .nfrob import FrobeniusContext


class InputError(ValueError):
    """A file is missing, malformed or describes invalid data."""


def _read(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _need(data: dict, key: str, path: Path) -> Any:
    if key not in data:
        raise InputError(f"{path}: missing field {key!r}")
    return data[key]


def _write(path: str | Path, data: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def _rel(target: Path, base: Path) -> str:
    try:
        return str(Path(target).resolve().relative_to(base.parent.resolve()))
    except ValueError:
        return str(Path(target).resolve())


class Loader:
    def __init__(self):
        self._objects: dict[Path, Any] = {}

    def _memo(self, path, build):
        key = Path(path).resolve()
        if key not in self._objects:
            self._objects[key] = build(key)
        return self._objects[key]

    def algebra(self, path) -> qa.Algebra:
        return self._memo(path, self._algebra)

    def module(self, path) -> qa.Module:
        return self._memo(path, self._module)

    def morphism(self, path) -> qa.Morphism:
        return self._memo(path, self._morphism)

    def context(self, path) -> FrobeniusContext:
        return self._memo(path, self._context)

    def bundle(self, path) -> p1.CoherentRep:
        return self._memo(path, self._bundle)

    def _algebra(self, path: Path) -> qa.Algebra:
        d = _read(path)
        try:
            p = int(_need(d, "p", path))
            labels = [str(x) for x in _need(d, "basis", path)]
            alg = qa.Algebra(p, labels, np.array(_need(d, "mult", path), dtype=np.int64),
                             np.array(_need(d, "unit", path), dtype=np.int64),
                             [np.array(e, dtype=np.int64) for e in _need(d, "idempotents", path)],
                             np.array(d.get("radical", []), dtype=np.int64).reshape(-1, len(labels)),
                             name=str(d.get("name", path.stem)))
            alg.check()
        except (qa.AlgebraError, ValueError, TypeError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{path}: {exc}") from None
        return alg

    def _module(self, path: Path) -> qa.Module:
        d = _read(path)
        alg = self.algebra(path.parent / _need(d, "algebra", path))
        dim = int(_need(d, "dim", path))
        action = _need(d, "action", path)
        if not isinstance(action, dict):
            raise InputError(f"{path}: 'action' must map basis labels to matrices")
        unknown = set(action) - set(alg.labels)
        if unknown:
            raise InputError(f"{path}: unknown basis labels {sorted(unknown)}")
        mats = np.zeros((alg.dim, dim, dim), dtype=np.int64)
        for i, lab in enumerate(alg.labels):
            if lab not in action:
                raise InputError(f"{path}: no matrix for basis element {lab!r}")
            m = np.array(action[lab], dtype=np.int64).reshape(-1)
            if m.size != dim * dim:
                raise InputError(f"{path}: matrix for {lab!r} is not {dim}x{dim}")
            mats[i] = m.reshape(dim, dim)
        try:
            return qa.make_module(alg, mats, name=str(d.get("name", path.stem)))
        except qa.AlgebraError as exc:
            raise InputError(f"{path}: {exc}") from None

    def _morphism(self, path: Path) -> qa.Morphism:
        d = _read(path)
        src = self.module(path.parent / _need(d, "source", path))
        tgt = self.module(path.parent / _need(d, "target", path))
        mat = np.array(_need(d, "matrix", path), dtype=np.int64).reshape(-1)
        if mat.size != src.dim * tgt.dim:
            raise InputError(f"{path}: matrix must be {tgt.dim}x{src.dim}")
        try:
            return qa.Morphism(src, tgt, mat.reshape(tgt.dim, src.dim))
        except qa.AlgebraError as exc:
            raise InputError(f"{path}: {exc}") from None

    def _context(self, path: Path) -> FrobeniusContext:
        d = _read(path)
        alg = self.algebra(path.parent / _need(d, "algebra", path))
        registry = [self.module(path.parent / r) for r in _need(d, "registry", path)]
        for m in registry:
            if m.algebra is not alg:
                raise InputError(f"{path}: registry module {m.name} is over a different algebra file")
        bound = int(d.get("zoo_dim_bound", 3))
        seed = int(d.get("seed", 0))
        extra = [self.module(path.parent / r) for r in d.get("zoo_extra", [])]
        zoo = qa.module_zoo(alg, bound, seed=seed, extra=extra + registry, sums=bool(d.get("zoo_sums", False)))
        try:
            return FrobeniusContext(alg, int(_need(d, "n", path)), registry,
                                    registry_complete=bool(d.get("registry_complete", False)),
                                    gorenstein_mode=bool(d.get("gorenstein_mode", False)),
                                    test_family=zoo, seed=seed, name=str(d.get("name", path.stem)))
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None

    def _bundle(self, path: Path) -> p1.CoherentRep:
        d = _read(path)
        p = int(_need(d, "p", path))
        rank = int(_need(d, "rank", path))
        rows = _need(d, "gluing", path)
        if len(rows) != rank or any(len(r) != rank for r in rows):
            raise InputError(f"{path}: gluing must be {rank}x{rank}")
        try:
            g = p1.LaurentMatrix.from_entries(rows, p)
        except (ValueError, TypeError) as exc:
            raise InputError(f"{path}: {exc}") from None
        rep = p1.CoherentRep(g, name=str(d.get("name", path.stem)))
        diag = p1.validate_rep(rep)
        if diag:
            raise InputError(f"{path}: " + "; ".join(diag))
        return rep


# ---------------------------------------------------------------------------
# writers


def algebra_to_json(alg: qa.Algebra) -> dict:
    return {
        "name": alg.name,
        "p": alg.p,
        "basis": list(alg.labels),
        "mult": alg.mult.tolist(),
        "unit": alg.unit.tolist(),
        "idempotents": [e.tolist() for e in alg.idempotents],
        "radical": alg.radical.tolist(),
    }


def module_to_json(m: qa.Module, algebra_path: str) -> dict:
    return {
        "name": m.name,
        "algebra": algebra_path,
        "dim": m.dim,
        "action": {lab: m.action[i].tolist() for i, lab in enumerate(m.algebra.labels)},
    }


def morphism_to_json(f: qa.Morphism, source_path: str, target_path: str) -> dict:
    return {"source": source_path, "target": target_path, "matrix": f.matrix.tolist()}


def bundle_to_json(rep: p1.CoherentRep) -> dict:
    return {"name": rep.name, "p": rep.p, "rank": rep.rank, "gluing": rep.gluing.to_entries()}


def save_algebra(alg: qa.Algebra, path) -> None:
    _write(path, algebra_to_json(alg))


def save_module(m: qa.Module, path, algebra_path) -> None:
    _write(path, module_to_json(m, _rel(Path(algebra_path), Path(path))))


def save_morphism(f: qa.Morphism, path, source_path, target_path) -> None:
    _write(path, morphism_to_json(f, _rel(Path(source_path), Path(path)), _rel(Path(target_path), Path(path))))


def save_context(path, algebra_path, n: int, registry_paths, registry_complete: bool, gorenstein_mode: bool,
                 zoo_dim_bound: int, seed: int = 0, name: str = "", zoo_extra=(), zoo_sums: bool = False) -> None:
    path = Path(path)
    data = {
        "name": name,
        "algebra": _rel(Path(algebra_path), path),
        "n": n,
        "registry": [_rel(Path(r), path) for r in registry_paths],
        "registry_complete": registry_complete,
        "gorenstein_mode": gorenstein_mode,
        "zoo_dim_bound": zoo_dim_bound,
        "seed": seed,
    }
    if zoo_extra:
        data["zoo_extra"] = [_rel(Path(r), path) for r in zoo_extra]
    if zoo_sums:
        data["zoo_sums"] = True
    _write(path, data)


def save_bundle(rep: p1.CoherentRep, path) -> None:
    _write(path, bundle_to_json(rep))


__all__ = [
    "InputError",
    "Loader",
    "algebra_to_json",
    "module_to_json",
    "morphism_to_json",
    "bundle_to_json",
    "save_algebra",
    "save_module",
    "save_morphism",
    "save_context",
    "save_bundle",
]
