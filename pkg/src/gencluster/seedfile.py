"""JSON seed files.

A seed file is a UTF-8 JSON object with keys ``n``, ``m``, ``Btilde``,
``Lambda`` (optional in classical mode), ``R``, ``h``, ``z`` and ``mode``.
Coefficients are written in the canonical text form of :class:`QCoeff`;
``z`` entries are integers, rationals like ``"3/2"`` or symbol names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .errors import DimensionError, InputError
from .patterns import d0_diagonal
from .seedcore import CompatiblePair, MutationData, as_matrix

__all__ = ["SeedFile", "load_seed", "loads_seed", "dump_seed", "dumps_seed"]

MODES = ("classical", "quantum")


@dataclass(frozen=True)
class SeedFile:
    Btilde: np.ndarray
    md: MutationData
    Lambda: np.ndarray | None = None
    mode: str = "classical"

    @property
    def n(self) -> int:
        return self.Btilde.shape[1]

    @property
    def m(self) -> int:
        return self.Btilde.shape[0]

    @property
    def B(self) -> np.ndarray:
        return self.Btilde[: self.n, :]

    def pair(self) -> CompatiblePair:
        if self.Lambda is None:
            raise InputError("this seed has no Lambda; quantum commands need a compatible pair")
        return CompatiblePair(self.Btilde, self.Lambda)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "mode": self.mode,
            "n": self.n,
            "m": self.m,
            "Btilde": [[int(v) for v in row] for row in self.Btilde.tolist()],
        }
        if self.Lambda is not None:
            out["Lambda"] = [[int(v) for v in row] for row in self.Lambda.tolist()]
        out["R"] = list(self.md.r)
        out["h"] = [[str(c) for c in row] for row in self.md.h]
        out["z"] = [[_z_text(v) for v in row] for row in self.md.z]
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeedFile):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def _z_text(v) -> str:
    if v.is_Integer:
        return str(int(v))
    return str(v)


def _matrix(data, key: str):
    val = data.get(key)
    if val is None:
        return None
    if not isinstance(val, list) or not all(isinstance(row, list) for row in val):
        raise InputError(f"{key!r} must be a list of rows")
    try:
        return as_matrix(val)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{key!r}: {exc}") from exc


def _from_dict(data: dict) -> SeedFile:
    if not isinstance(data, dict):
        raise InputError("seed file must contain a JSON object")
    unknown = set(data) - {"mode", "n", "m", "Btilde", "Lambda", "R", "h", "z"}
    if unknown:
        raise InputError(f"unknown seed-file keys: {sorted(unknown)}")
    mode = data.get("mode", "classical")
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")
    Bt = _matrix(data, "Btilde")
    if Bt is None:
        raise InputError("seed file needs 'Btilde'")
    m, n = Bt.shape
    if "n" in data and data["n"] != n:
        raise DimensionError(f"'n' is {data['n']} but Btilde has {n} columns")
    if "m" in data and data["m"] != m:
        raise DimensionError(f"'m' is {data['m']} but Btilde has {m} rows")
    L = _matrix(data, "Lambda")
    R = data.get("R")
    if R is None:
        raise InputError("seed file needs 'R'")
    if not isinstance(R, list) or len(R) != n:
        raise DimensionError(f"'R' must list {n} exponents")
    md = MutationData(R, data.get("h"), data.get("z"))
    if mode == "quantum":
        if L is None:
            raise InputError("quantum seeds need 'Lambda'")
        if data.get("z") is None:
            md = md.with_z_from_h()
    if m < n:
        raise DimensionError(f"Btilde needs at least {n} rows")
    d0_diagonal(Bt[:n, :], md.r)
    seed = SeedFile(Bt, md, L, mode)
    if L is not None:
        seed.pair()
    return seed


def loads_seed(text: str) -> SeedFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return _from_dict(data)


def load_seed(path) -> SeedFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return loads_seed(text)


def dumps_seed(seed: SeedFile) -> str:
    return json.dumps(seed.to_dict(), indent=2)


def dump_seed(seed: SeedFile, path) -> None:
    Path(path).write_text(dumps_seed(seed) + "\n", encoding="utf-8")
