"""C-, G- and Gtilde-patterns along a mutation path, with duality checks.

Sign coherence of c-vectors is asserted at every step, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import FalsificationError, InputError, IntegralityError, SignCoherenceError
from .seedcore import (
    CompatiblePair,
    _check_eps,
    _check_k,
    _r_list,
    as_matrix,
    e_matrix,
    identity,
    mutate_exchange_classical,
    mutate_pair,
    pos,
    skew_symmetrizer,
)

__all__ = [
    "common_sign",
    "c_step",
    "g_step_classical",
    "g_step_general",
    "g_step_quantum",
    "PatternState",
    "initial_state",
    "pattern_step",
    "run_path",
    "d0_diagonal",
    "d0r_diagonal",
    "inner",
    "verify_tropical_duality",
    "verify_dual_inner_products",
    "verify_GB_BC",
    "verify_d_form_duality",
    "PathData",
    "path_data",
]


def common_sign(c: Sequence[int]) -> int:
    """+1 for a nonzero vector with entries >= 0, -1 for entries <= 0."""
    vals = [int(v) for v in c]
    has_pos = any(v > 0 for v in vals)
    has_neg = any(v < 0 for v in vals)
    if has_pos and has_neg:
        raise SignCoherenceError(f"c-vector {tuple(vals)} has entries of both signs")
    if not (has_pos or has_neg):
        raise SignCoherenceError("c-vector is zero")
    return 1 if has_pos else -1


def c_step(C, Bt, r, k: int, eps: int = 1) -> np.ndarray:
    """Mutate the C-matrix in direction ``k``; ``Bt`` is the current exchange matrix."""
    C = as_matrix(C)
    Bt = as_matrix(Bt)
    n = C.shape[0]
    r = _r_list(r)
    kk = _check_k(k, n)
    _check_eps(eps)
    out = C.copy()
    for i in range(n):
        for j in range(n):
            if j == kk:
                out[i, j] = -C[i, j]
            else:
                out[i, j] = C[i, j] + r[kk] * (C[i, kk] * pos(eps * Bt[kk, j]) + pos(-eps * C[i, kk]) * Bt[kk, j])
    return out


def g_step_classical(G, C, Bt, r, k: int) -> np.ndarray:
    """Mutate G using the sign of ``c_k`` (sign-coherent form)."""
    G = as_matrix(G)
    C = as_matrix(C)
    Bt = as_matrix(Bt)
    n = G.shape[0]
    r = _r_list(r)
    kk = _check_k(k, n)
    e = common_sign(C[:, kk])
    out = G.copy()
    for row in range(G.shape[0]):
        out[row, kk] = -G[row, kk] + r[kk] * sum(pos(-e * Bt[j, kk]) * G[row, j] for j in range(n))
    return out


def g_step_general(G, C, Bt, B0, r, k: int, eps: int = 1) -> np.ndarray:
    """Mutate G (or Gtilde) by the sign-free formula.

    ``G`` is ``m x m`` with ``Bt``, ``B0`` ``m x n`` (pass ``m = n`` for the
    classical pattern).
    """
    G = as_matrix(G)
    C = as_matrix(C)
    Bt = as_matrix(Bt)
    B0 = as_matrix(B0)
    m, n = Bt.shape
    r = _r_list(r)
    kk = _check_k(k, n)
    _check_eps(eps)
    out = G.copy()
    for row in range(m):
        v = sum(pos(-eps * Bt[j, kk]) * G[row, j] for j in range(m))
        v -= sum(pos(-eps * C[j, kk]) * B0[row, j] for j in range(n))
        out[row, kk] = -G[row, kk] + r[kk] * v
    return out


def g_step_quantum(Gtilde, C, Bt, B0, r, k: int, eps: int = 1) -> np.ndarray:
    """Mutate Gtilde; the general formula is checked against ``Gtilde E_{k, eps_k}``."""
    slow = g_step_general(Gtilde, C, Bt, B0, r, k, eps)
    e = common_sign(as_matrix(C)[:, k - 1])
    fast = as_matrix(Gtilde).dot(e_matrix(Bt, r, k, e))
    if not np.array_equal(slow, fast):
        raise FalsificationError(
            "the two Gtilde recursions disagree",
            {"general": slow.tolist(), "product": fast.tolist(), "k": k},
        )
    return fast


@dataclass(frozen=True)
class PatternState:
    """Data attached to one vertex of a mutation path."""

    path: tuple[int, ...]
    Btilde: np.ndarray
    C: np.ndarray
    G: np.ndarray
    Gtilde: np.ndarray
    r: tuple[int, ...]
    Lambda: np.ndarray | None = None
    signs: tuple[int, ...] = field(default=())
    B0tilde: np.ndarray | None = None

    @property
    def t(self) -> int:
        return len(self.path)

    @property
    def n(self) -> int:
        return self.C.shape[0]

    @property
    def B(self) -> np.ndarray:
        return self.Btilde[: self.n, :]

    def as_dict(self) -> dict:
        out = {
            "t": self.t,
            "path": list(self.path),
            "Btilde": self.Btilde.tolist(),
            "C": self.C.tolist(),
            "G": self.G.tolist(),
            "Gtilde": self.Gtilde.tolist(),
            "signs": list(self.signs),
        }
        if self.Lambda is not None:
            out["Lambda"] = self.Lambda.tolist()
        return out


def initial_state(Btilde, r, Lambda=None) -> PatternState:
    Bt = as_matrix(Btilde)
    m, n = Bt.shape
    r = _r_list(r)
    if len(r) != n:
        raise InputError(f"r has {len(r)} entries, expected {n}")
    if Lambda is not None:
        CompatiblePair(Bt, Lambda)
        Lambda = as_matrix(Lambda)
    return PatternState((), Bt, identity(n), identity(n), identity(m), r, Lambda, (), Bt)


def pattern_step(state: PatternState, k: int, eps: int = 1) -> PatternState:
    """One mutation; ``eps`` is the sign fed to the sign-free formulas."""
    n = state.n
    kk = _check_k(k, n)
    e = common_sign(state.C[:, kk])
    B0t = state.B0tilde
    C2 = c_step(state.C, state.B, state.r, k, eps)
    G2 = g_step_classical(state.G, state.C, state.B, state.r, k)
    G2b = g_step_general(state.G, state.C, state.B, B0t[:n, :], state.r, k, eps)
    if not np.array_equal(G2, G2b):
        raise FalsificationError("sign-coherent and general g-recursions disagree", {"k": k})
    Gt2 = g_step_quantum(state.Gtilde, state.C, state.Btilde, B0t, state.r, k, eps)
    if state.Lambda is not None:
        pair = mutate_pair(CompatiblePair(state.Btilde, state.Lambda), state.r, k, eps)
        Bt2, L2 = pair.Btilde, pair.Lambda
    else:
        Bt2, L2 = mutate_exchange_classical(state.Btilde, state.r, k, eps), None
    for j in range(n):
        common_sign(C2[:, j])
    return PatternState(state.path + (k,), Bt2, C2, G2, Gt2, state.r, L2, state.signs + (e,), B0t)


def run_path(Btilde, r, path: Sequence[int], Lambda=None, eps: int = 1) -> list[PatternState]:
    """States at ``t_0, t_1, ..., t_k`` along ``path``."""
    st = initial_state(Btilde, r, Lambda)
    out = [st]
    for k in path:
        st = pattern_step(st, int(k), eps)
        out.append(st)
    return out


def d0_diagonal(B, r) -> tuple[int, ...]:
    """Smallest positive integer ``D0`` with ``D0 R B`` skew-symmetric."""
    B = as_matrix(B)
    r = _r_list(r)
    RB = np.diag(np.array(r, dtype=object)).dot(B)
    return skew_symmetrizer(RB)


def d0r_diagonal(B, r) -> tuple[int, ...]:
    """Diagonal of ``D0 R`` (the ``d_i^{-1}``)."""
    r = _r_list(r)
    return tuple(d * ri for d, ri in zip(d0_diagonal(B, r), r))


def inner(u: Sequence, v: Sequence, diag: Sequence) -> Fraction:
    """``u^T diag(diag) v`` in exact rationals."""
    return sum((Fraction(a) * Fraction(w) * Fraction(b) for a, w, b in zip(u, diag, v)), Fraction(0))


def verify_tropical_duality(G, C, D0, R) -> bool:
    """``D0^{-1} R^{-1} G^T D0 R C = I``."""
    G = as_matrix(G)
    C = as_matrix(C)
    D0 = [int(v) for v in (np.diag(D0) if np.ndim(D0) == 2 else D0)]
    r = _r_list(R)
    n = C.shape[0]
    for i in range(n):
        for j in range(n):
            v = sum(Fraction(G[l, i] * D0[l] * r[l] * C[l, j]) for l in range(n)) / (D0[i] * r[i])
            if v != (1 if i == j else 0):
                return False
    return True


def verify_dual_inner_products(G, C, d0r: Sequence[int]) -> bool:
    """``(g_i, d_j c_j)_{D0 R} = delta_ij`` with ``d_j = 1 / (D0 R)_jj``."""
    G = as_matrix(G)
    C = as_matrix(C)
    n = C.shape[0]
    for i in range(n):
        for j in range(n):
            v = inner(G[:, i], [Fraction(x, d0r[j]) for x in C[:, j]], d0r)
            if v != (1 if i == j else 0):
                return False
    return True


def verify_GB_BC(G, Bt, B0, C) -> bool:
    """``G_t B_t = B_{t0} C_t`` (also for ``Gtilde`` with ``m x n`` matrices)."""
    return bool(np.array_equal(as_matrix(G).dot(as_matrix(Bt)), as_matrix(B0).dot(as_matrix(C))))


def verify_d_form_duality(C, G, dinv: Sequence[int]) -> bool:
    """``(c_i, g_j)_D = d_i^{-1} delta_ij``."""
    C = as_matrix(C)
    G = as_matrix(G)
    n = C.shape[0]
    for i in range(n):
        for j in range(n):
            if inner(C[:, i], G[:n, j], dinv) != (dinv[i] if i == j else 0):
                return False
    return True


@dataclass(frozen=True)
class PathData:
    """Per-step data the product formulas consume.

    Index ``j`` (0-based here) refers to step ``j+1``: ``c[j]`` is
    ``c_{i_j; t_{j-1}}``, ``eps[j]`` its sign, ``cplus[j] = eps[j] c[j]``,
    ``chat[j] = B cplus[j]`` and ``g[j] = g_{i_j; t_j}``.
    """

    path: tuple[int, ...]
    c: tuple[tuple[int, ...], ...]
    eps: tuple[int, ...]
    cplus: tuple[tuple[int, ...], ...]
    chat: tuple[tuple[int, ...], ...]
    g: tuple[tuple[int, ...], ...]
    gtilde: tuple[tuple[int, ...], ...]
    states: tuple[PatternState, ...]


def path_data(Btilde, r, path: Sequence[int], Lambda=None) -> PathData:
    states = run_path(Btilde, r, path, Lambda)
    B0 = states[0].B
    cs, es, cps, chs, gs, gts = [], [], [], [], [], []
    for j, k in enumerate(path):
        prev, cur = states[j], states[j + 1]
        c = tuple(int(v) for v in prev.C[:, k - 1])
        e = common_sign(c)
        cp = tuple(e * v for v in c)
        ch = tuple(int(v) for v in B0.dot(np.array(cp, dtype=object)))
        cs.append(c)
        es.append(e)
        cps.append(cp)
        chs.append(ch)
        gs.append(tuple(int(v) for v in cur.G[:, k - 1]))
        gts.append(tuple(int(v) for v in cur.Gtilde[:, k - 1]))
    return PathData(tuple(path), tuple(cs), tuple(es), tuple(cps), tuple(chs), tuple(gs), tuple(gts), tuple(states))


def integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"{what} = {x} is not an integer")
    return int(x)
