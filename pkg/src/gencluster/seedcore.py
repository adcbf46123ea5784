"""Mutation data, compatible pairs and matrix mutation.

Matrices are numpy arrays of ``dtype=object`` holding Python integers, so all
arithmetic is exact.  Direction indices ``k`` are 1-based throughout the
public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np
import sympy

from .errors import (
    DimensionError,
    IncompatibilityError,
    InputError,
    NotSkewSymmetrizableError,
)
from .qcoeff import QCoeff

__all__ = [
    "as_matrix",
    "pos",
    "MutationData",
    "CompatiblePair",
    "check_compatible",
    "e_matrix",
    "f_matrix",
    "mutate_pair",
    "mutate_exchange_classical",
    "skew_symmetrizer",
    "principal_lift",
]


def as_matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Exact integer matrix (object dtype) from nested sequences."""
    try:
        data = [[int(v) for v in row] for row in rows]
    except TypeError as exc:
        raise InputError(f"matrix rows must be sequences of integers: {exc}") from None
    width = len(data[0]) if data else 0
    if any(len(row) != width for row in data):
        raise DimensionError("ragged matrix")
    out = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            if isinstance(rows[i][j], float) and rows[i][j] != v:
                raise InputError(f"non-integer matrix entry {rows[i][j]!r}")
            out[i, j] = v
    if shape is not None and out.shape != shape:
        raise DimensionError(f"expected a {shape[0]}x{shape[1]} matrix, got {out.shape[0]}x{out.shape[1]}")
    return out


def identity(m: int) -> np.ndarray:
    out = np.zeros((m, m), dtype=object)
    for i in range(m):
        out[i, i] = 1
    return out


def pos(v: int) -> int:
    """``[v]_+``."""
    return v if v > 0 else 0


def _check_k(k: int, n: int) -> int:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
        raise InputError(f"direction {k} is outside [1, {n}]")
    return int(k) - 1


def _check_eps(eps: int) -> int:
    if eps not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {eps}")
    return eps


def _coerce_z(value):
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, bool):
        raise InputError("boolean is not a valid z value")
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return sympy.Rational(Fraction(text))
        except ValueError:
            pass
        try:
            expr = sympy.sympify(text, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise InputError(f"cannot read z value {value!r}") from exc
        return expr
    raise InputError(f"cannot read z value {value!r}")


@dataclass(frozen=True)
class MutationData:
    """Exponents ``r_k`` with palindromic coefficient lists.

    ``h[k]`` is the quantum list ``h_{k,0..r_k}`` of :class:`QCoeff`;
    ``z[k]`` the classical list ``z_{k,0..r_k}`` of sympy expressions (formal
    symbols or numbers).  Both ends of every list are 1.
    """

    r: tuple[int, ...]
    h: tuple[tuple[QCoeff, ...], ...]
    z: tuple[tuple[sympy.Expr, ...], ...]

    def __init__(self, r: Sequence[int], h=None, z=None):
        r = tuple(int(v) for v in r)
        if not r or any(v < 1 for v in r):
            raise InputError("every r_k must be a positive integer")
        if h is None:
            h = [[1] * (rk + 1) for rk in r]
        if z is None:
            z = [default_z(k + 1, rk) for k, rk in enumerate(r)]
        hh = tuple(tuple(QCoeff.coerce(c) for c in row) for row in h)
        zz = tuple(tuple(_coerce_z(c) for c in row) for row in z)
        for name, lists in (("h", hh), ("z", zz)):
            if len(lists) != len(r):
                raise DimensionError(f"{name} has {len(lists)} rows, expected {len(r)}")
            for k, (rk, row) in enumerate(zip(r, lists)):
                if len(row) != rk + 1:
                    raise DimensionError(f"{name}[{k + 1}] needs {rk + 1} entries, got {len(row)}")
                if row[0] != 1 or row[-1] != 1:
                    raise InputError(f"{name}[{k + 1}] must start and end with 1")
                for s in range(rk + 1):
                    if row[s] != row[rk - s]:
                        raise InputError(f"{name}[{k + 1}] violates reciprocity at s={s}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "h", hh)
        object.__setattr__(self, "z", zz)

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def R(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=object)
        for i, v in enumerate(self.r):
            out[i, i] = v
        return out

    def with_z_from_h(self) -> "MutationData":
        """Classical data with ``z_{k,s} := h_{k,s}(1)``.

        A free ``h`` in the quantum coefficients becomes the sympy symbol ``h``.
        """
        hsym = sympy.Symbol("h")
        z = []
        for row in self.h:
            z.append([sum((c * hsym**j for j, c in v.at_q_one().items()), sympy.Integer(0))
                      for v in row])
        return MutationData(self.r, self.h, z)

    def h_positive_at_one(self) -> bool | None:
        """True if every interior ``h_{k,s}(1)`` is positive, False if one is not.

        Returns None when some interior coefficient involves the free symbol
        ``h`` (positivity then depends on the value chosen for it).
        """
        undecided = False
        for row in self.h:
            for c in row[1:-1]:
                v = c.at_q_one()
                if any(j for j in v):
                    undecided = True
                elif v.get(0, 0) <= 0:
                    return False
        return None if undecided else True


def default_z(k: int, rk: int) -> list:
    """Formal ``z_{k,s}`` honouring reciprocity: one symbol per ``1 <= s <= r_k/2``."""
    row = []
    for s in range(rk + 1):
        if s in (0, rk):
            row.append(sympy.Integer(1))
        else:
            row.append(sympy.Symbol(f"z{k}_{min(s, rk - s)}"))
    return row


def check_compatible(Btilde, Lambda) -> tuple[int, ...]:
    """Return the diagonal ``(d_1^{-1}, ..., d_n^{-1})`` of ``D`` where ``Btilde^T Lambda = [D 0]``."""
    Bt = as_matrix(Btilde)
    L = as_matrix(Lambda)
    m, n = Bt.shape
    if n > m:
        raise DimensionError(f"Btilde is {m}x{n}; it needs at least as many rows as columns")
    if L.shape != (m, m):
        raise DimensionError(f"Lambda must be {m}x{m}, got {L.shape[0]}x{L.shape[1]}")
    if not np.array_equal(L.T, -L):
        raise IncompatibilityError("Lambda is not skew-symmetric")
    P = Bt.T.dot(L)
    dinv = []
    for i in range(n):
        for j in range(m):
            v = P[i, j]
            if i == j:
                if v <= 0:
                    raise IncompatibilityError(f"(Btilde^T Lambda)[{i + 1},{i + 1}] = {v} is not positive")
                dinv.append(int(v))
            elif v != 0:
                raise IncompatibilityError(
                    f"Btilde^T Lambda is not of the form [D 0]: entry ({i + 1},{j + 1}) = {v}"
                )
    B = Bt[:n, :]
    DB = np.diag(np.array(dinv, dtype=object)).dot(B)
    if not np.array_equal(DB.T, -DB):
        raise IncompatibilityError("D B is not skew-symmetric")
    return tuple(dinv)


@dataclass(frozen=True)
class CompatiblePair:
    Btilde: np.ndarray
    Lambda: np.ndarray
    dinv: tuple[int, ...] = field(default=())

    def __init__(self, Btilde, Lambda, dinv=None):
        Bt = as_matrix(Btilde)
        L = as_matrix(Lambda)
        d = check_compatible(Bt, L)
        if dinv is not None and tuple(int(v) for v in dinv) != d:
            raise IncompatibilityError(f"pair has D = {d}, expected {tuple(dinv)}")
        object.__setattr__(self, "Btilde", Bt)
        object.__setattr__(self, "Lambda", L)
        object.__setattr__(self, "dinv", d)

    @property
    def n(self) -> int:
        return self.Btilde.shape[1]

    @property
    def m(self) -> int:
        return self.Btilde.shape[0]

    @property
    def B(self) -> np.ndarray:
        return self.Btilde[: self.n, :]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompatiblePair):
            return NotImplemented
        return (
            np.array_equal(self.Btilde, other.Btilde)
            and np.array_equal(self.Lambda, other.Lambda)
            and self.dinv == other.dinv
        )

    def __hash__(self):
        return hash((tuple(map(tuple, self.Btilde)), tuple(map(tuple, self.Lambda)), self.dinv))


def _r_list(md_or_r) -> tuple[int, ...]:
    if isinstance(md_or_r, MutationData):
        return md_or_r.r
    if isinstance(md_or_r, np.ndarray) and md_or_r.ndim == 2:
        return tuple(int(md_or_r[i, i]) for i in range(md_or_r.shape[0]))
    return tuple(int(v) for v in md_or_r)


def e_matrix(Btilde, r, k: int, eps: int = 1) -> np.ndarray:
    """``E_{k,eps}``: identity except column ``k``, which holds ``-1`` on the diagonal and ``[-eps b_ik r_k]_+`` elsewhere."""
    Bt = as_matrix(Btilde)
    m, n = Bt.shape
    r = _r_list(r)
    kk = _check_k(k, n)
    _check_eps(eps)
    E = identity(m)
    for i in range(m):
        E[i, kk] = -1 if i == kk else pos(-eps * Bt[i, kk] * r[kk])
    return E


def f_matrix(Btilde, r, k: int, eps: int = 1) -> np.ndarray:
    """``F_{k,eps}``: identity except row ``k``, which holds ``-1`` on the diagonal and ``[eps r_k b_ki]_+`` elsewhere."""
    Bt = as_matrix(Btilde)
    m, n = Bt.shape
    r = _r_list(r)
    kk = _check_k(k, n)
    _check_eps(eps)
    F = identity(n)
    for i in range(n):
        F[kk, i] = -1 if i == kk else pos(eps * r[kk] * Bt[kk, i])
    return F


def mutate_pair(pair: CompatiblePair, md, k: int, eps: int = 1) -> CompatiblePair:
    """``(E Btilde F, E^T Lambda E)``; the result is checked to be compatible with the same ``D``."""
    E = e_matrix(pair.Btilde, md, k, eps)
    F = f_matrix(pair.Btilde, md, k, eps)
    Bt = E.dot(pair.Btilde).dot(F)
    L = E.T.dot(pair.Lambda).dot(E)
    return CompatiblePair(Bt, L, pair.dinv)


def mutate_exchange_classical(B, r, k: int, eps: int = 1) -> np.ndarray:
    """Entrywise mutation of an exchange matrix (``m x n`` allowed) with multiplicities ``r``."""
    B = as_matrix(B)
    m, n = B.shape
    r = _r_list(r)
    kk = _check_k(k, n)
    _check_eps(eps)
    rk = r[kk]
    out = np.empty_like(B)
    for i in range(m):
        for j in range(n):
            if i == kk or j == kk:
                out[i, j] = -B[i, j]
            else:
                bkj = B[kk, j] if kk < m else 0
                out[i, j] = B[i, j] + rk * (pos(-eps * B[i, kk]) * bkj + B[i, kk] * pos(eps * bkj))
    return out


def skew_symmetrizer(B) -> tuple[int, ...]:
    """Smallest positive integer diagonal ``D0`` with ``D0 B`` skew-symmetric.

    Each connected component of the support graph is scaled independently to
    coprime integers.
    """
    B = as_matrix(B)
    n = B.shape[0]
    if B.shape != (n, n):
        raise DimensionError("exchange matrix must be square")
    d: list[Fraction | None] = [None] * n
    comps: list[list[int]] = []
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                bij, bji = B[i, j], B[j, i]
                if i == j:
                    if bij != 0:
                        raise NotSkewSymmetrizableError(f"diagonal entry ({i + 1},{i + 1}) is nonzero")
                    continue
                if (bij == 0) != (bji == 0):
                    raise NotSkewSymmetrizableError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) have different support")
                if bij == 0:
                    continue
                if (bij > 0) == (bji > 0):
                    raise NotSkewSymmetrizableError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) have the same sign")
                want = -d[i] * Fraction(int(bij), int(bji))
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    stack.append(j)
                elif d[j] != want:
                    raise NotSkewSymmetrizableError("inconsistent symmetrizing ratios around a cycle")
        comps.append(comp)
    out = [0] * n
    for comp in comps:
        den = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            out[i] = v // g
    return tuple(out)


def principal_lift(B, dinv: Sequence[int]) -> CompatiblePair:
    """The pair ``([B; I], [[0, -D], [D, -DB]])`` with ``Btilde^T Lambda = [D 0]``."""
    B = as_matrix(B)
    n = B.shape[0]
    D = np.diag(np.array([int(v) for v in dinv], dtype=object))
    DB = D.dot(B)
    Bt = np.vstack([B, identity(n)])
    zero = np.zeros((n, n), dtype=object)
    L = np.block([[zero, -D], [D, -DB]]).astype(object)
    return CompatiblePair(Bt, L, dinv)
