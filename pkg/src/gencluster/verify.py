"""Runnable identity checks and the randomized corpus behind them.

Every check returns a :class:`CheckResult`; a failed identity always carries
the data needed to reproduce it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import FalsificationError, InconclusiveError, SignCoherenceError
from .gca import ClassicalEngine
from .gqca import QuantumEngine
from .patterns import (
    d0_diagonal,
    d0r_diagonal,
    path_data,
    verify_d_form_duality,
    verify_dual_inner_products,
    verify_GB_BC,
    verify_tropical_duality,
)
from .qcoeff import QCoeff
from .seedcore import MutationData, principal_lift, skew_symmetrizer
from .seedfile import SeedFile

__all__ = [
    "CHECKS",
    "CheckResult",
    "VerifyReport",
    "check_duality",
    "check_gbbc",
    "check_separation",
    "check_q1",
    "check_structure",
    "check_triple",
    "run_checks",
    "random_exchange_matrix",
    "random_mutation_data",
    "random_path",
    "random_classical_instance",
    "random_quantum_instance",
    "random_trials",
]

CHECKS = ("duality", "gbbc", "separation", "q1", "structure")

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckResult:
    name: str
    status: str
    payload: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "seconds": round(self.seconds, 4), "payload": self.payload}


@dataclass
class VerifyReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def status(self) -> str:
        states = {r.status for r in self.results}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    def extend(self, other: "VerifyReport") -> None:
        self.results.extend(other.results)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def as_dict(self) -> dict:
        return {"status": self.status, "counts": self.counts(), "checks": [r.as_dict() for r in self.results]}


def _run(name: str, fn: Callable[[], dict]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        payload = fn() or {}
        status = PASS
    except InconclusiveError as exc:
        status, payload = INCONCLUSIVE, {"error": str(exc), **exc.payload}
    except FalsificationError as exc:
        status, payload = FAIL, {"error": str(exc), **exc.payload}
    except SignCoherenceError as exc:
        status, payload = FAIL, {"error": str(exc)}
    return CheckResult(name, status, payload, time.perf_counter() - t0)


# -- individual checks ---------------------------------------------------------


def check_duality(seed: SeedFile, path: Sequence[int]) -> CheckResult:
    """Tropical duality, dual inner products and, with a pair, the D-form duality at every vertex."""

    def body():
        B = seed.B
        r = seed.md.r
        D0 = d0_diagonal(B, r)
        d0r = d0r_diagonal(B, r)
        pd = path_data(seed.Btilde, r, path, seed.Lambda)
        for t, st in enumerate(pd.states):
            if not verify_tropical_duality(st.G, st.C, D0, r):
                raise FalsificationError("tropical duality fails", {"vertex": t, **st.as_dict()})
            if not verify_dual_inner_products(st.G, st.C, d0r):
                raise FalsificationError("dual inner products fail", {"vertex": t, **st.as_dict()})
            if seed.Lambda is not None and not verify_d_form_duality(st.C, st.Gtilde, seed.pair().dinv):
                raise FalsificationError("D-form duality fails", {"vertex": t, **st.as_dict()})
        return {"vertices": len(pd.states)}

    return _run("duality", body)


def check_gbbc(seed: SeedFile, path: Sequence[int]) -> CheckResult:
    """``G_t B_t = B_0 C_t`` and ``Gtilde_t Btilde_t = Btilde_0 C_t`` at every vertex."""

    def body():
        pd = path_data(seed.Btilde, seed.md.r, path, seed.Lambda)
        B0t = pd.states[0].Btilde
        B0 = pd.states[0].B
        for t, st in enumerate(pd.states):
            if not verify_GB_BC(st.G, st.B, B0, st.C):
                raise FalsificationError("G B = B0 C fails", {"vertex": t, **st.as_dict()})
            if not verify_GB_BC(st.Gtilde, st.Btilde, B0t, st.C):
                raise FalsificationError("Gtilde Btilde = Btilde0 C fails", {"vertex": t, **st.as_dict()})
        return {"vertices": len(pd.states)}

    return _run("gbbc", body)


def check_separation(seed: SeedFile, path: Sequence[int], **kw) -> CheckResult:
    def body():
        if seed.mode == "quantum":
            return QuantumEngine(seed.pair(), seed.md).separation_check_quantum(path, **kw)
        eng = ClassicalEngine(seed.B, seed.md)
        for j in range(1, len(path) + 1):
            if not eng.separation_check(path[:j]):
                raise FalsificationError("classical separation formula fails", {"prefix": list(path[:j])})
        return {"steps": len(path)}

    return _run("separation", body)


def check_q1(seed: SeedFile, path: Sequence[int], **kw) -> CheckResult:
    def body():
        eng = QuantumEngine(seed.pair(), seed.md)
        for j in range(1, len(path) + 1):
            F = eng.extract_fpoly(path[:j], **kw)
            eng.specialize_q1(path[:j], F)
        return {"steps": len(path)}

    return _run("q1", body)


def check_structure(seed: SeedFile, path: Sequence[int], **kw) -> CheckResult:
    def body():
        reports = []
        if seed.mode == "quantum":
            eng = QuantumEngine(seed.pair(), seed.md)
            for j in range(1, len(path) + 1):
                F = eng.extract_fpoly(path[:j], **kw)
                if not F.structure_ok():
                    raise FalsificationError("structure check fails", {"prefix": list(path[:j]), **F.structure_report()})
                reports.append(F.structure_report())
        else:
            eng = ClassicalEngine(seed.B, seed.md)
            for j in range(1, len(path) + 1):
                F = eng.gupta_product(path[:j])
                if not F.structure_ok():
                    raise FalsificationError("structure check fails", {"prefix": list(path[:j]), **F.structure_report()})
                reports.append(F.structure_report())
        return {"steps": len(reports)}

    return _run("structure", body)


def check_triple(seed: SeedFile, path: Sequence[int]) -> CheckResult:
    """Direct mutation, the Gupta product and its expansion agree for every prefix."""

    def body():
        eng = ClassicalEngine(seed.B, seed.md)
        for j in range(1, len(path) + 1):
            p = path[:j]
            a = eng.f_poly_direct(p)
            b = eng.gupta_product(p)
            c = eng.gupta_expansion(p, degree_bound=a.degree())
            if not (a == b == c):
                raise FalsificationError(
                    "F-polynomial routes disagree", {"prefix": list(p), "direct": str(a), "product": str(b), "expansion": str(c)}
                )
        return {"steps": len(path)}

    return _run("triple", body)


def run_checks(seed: SeedFile, path: Sequence[int], checks: Iterable[str] = CHECKS, **kw) -> VerifyReport:
    path = [int(k) for k in path]
    report = VerifyReport()
    for name in checks:
        if name == "duality":
            report.add(check_duality(seed, path))
        elif name == "gbbc":
            report.add(check_gbbc(seed, path))
        elif name == "separation":
            report.add(check_separation(seed, path))
        elif name == "q1":
            if seed.mode == "quantum":
                report.add(check_q1(seed, path, **kw))
        elif name == "structure":
            report.add(check_structure(seed, path, **kw))
        elif name == "triple":
            report.add(check_triple(seed, path))
        else:
            raise ValueError(f"unknown check {name!r}")
    return report


# -- random corpus -------------------------------------------------------------


def random_exchange_matrix(rng: random.Random, n: int, max_entry: int = 3) -> np.ndarray:
    """Random skew-symmetrizable ``n x n`` matrix with symmetrizer entries in ``{1, 2, 3}``."""
    d = [rng.choice((1, 1, 2, 3)) for _ in range(n)]
    B = np.zeros((n, n), dtype=object)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            ui, uj = d[j] // g, d[i] // g
            kmax = max(0, max_entry // max(ui, uj))
            k = rng.randint(-kmax, kmax)
            B[i, j] = k * ui
            B[j, i] = -k * uj
    return B


def _random_h(rng: random.Random) -> QCoeff:
    out = QCoeff.const(0)
    for _ in range(rng.randint(1, 2)):
        out = out + QCoeff.q_half(rng.randint(-2, 2), rng.randint(1, 2))
    return out


def random_mutation_data(rng: random.Random, n: int, max_r: int = 3, formal_z: bool | None = None) -> MutationData:
    """Random ``(R, h)`` with ``h_{i,s}(1) > 0`` and either formal or positive integer ``z``."""
    r = [rng.randint(1, max_r) for _ in range(n)]
    if formal_z is None:
        formal_z = rng.random() < 0.5
    h, z = [], []
    for k, rk in enumerate(r):
        hrow = [QCoeff.const(1)] * (rk + 1)
        zrow = [1] * (rk + 1)
        for s in range(1, rk // 2 + 1):
            if s < rk:
                hv = _random_h(rng)
                hrow[s] = hrow[rk - s] = hv
                zv = f"z{k + 1}_{s}" if formal_z else rng.randint(1, 3)
                zrow[s] = zrow[rk - s] = zv
        h.append(hrow)
        z.append(zrow)
    return MutationData(r, h, z)


def random_path(rng: random.Random, n: int, length: int) -> list[int]:
    """Random path without immediate repetitions."""
    out: list[int] = []
    for _ in range(length):
        choices = [k for k in range(1, n + 1) if not out or k != out[-1]]
        out.append(rng.choice(choices))
    return out


def random_classical_instance(
    rng: random.Random,
    ranks: Sequence[int] = (2, 3),
    max_r: int = 3,
    max_len: int = 6,
    max_degree: int = 14,
    attempts: int = 200,
) -> tuple[SeedFile, list[int]]:
    """A seed and path whose F-polynomials stay below ``max_degree`` (bounded-growth filter)."""
    for _ in range(attempts):
        n = rng.choice(list(ranks))
        B = random_exchange_matrix(rng, n)
        if not B.any():
            continue
        md = random_mutation_data(rng, n, max_r)
        path = random_path(rng, n, rng.randint(1, max_len))
        eng = ClassicalEngine(B, md)
        if _max_degree_bounded(eng, path, max_degree):
            return SeedFile(B, md, None, "classical"), path
    raise InconclusiveError("no instance below the degree cap", {"max_degree": max_degree})


def _tropical_degrees(eng: ClassicalEngine, path: Sequence[int]) -> list[int]:
    """Total y-degree of each F along ``path``, read off the L-sequence in max-plus arithmetic.

    Exact for subtraction-free data, since Newton polytopes then add under
    products and take hulls under sums.
    """
    pd = eng.path_data(path)
    E = eng.gupta_exponents(pd)
    trop: list[int] = []
    for l, il in enumerate(pd.path):
        u = sum(pd.cplus[l]) + sum(e * t for e, t in zip(E[l], trop))
        trop.append(max(0, eng.r[il - 1] * u))
    out = []
    for k in range(1, len(path) + 1):
        ex = eng.product_exponents(eng.path_data(path[:k]))
        out.append(sum(e * t for e, t in zip(ex, trop)))
    return out


def _max_degree_bounded(eng: ClassicalEngine, path: Sequence[int], cap: int, c_cap: int = 4) -> bool:
    # tropical filters only; no symbolic work on rejected candidates
    for st in path_data(eng.B, eng.r, path).states:
        if np.abs(st.C.astype(np.int64)).max() > c_cap:
            return False
    return max(_tropical_degrees(eng, path), default=0) <= cap


def random_quantum_instance(
    rng: random.Random,
    ranks: Sequence[int] = (2, 3),
    max_r: int = 3,
    max_len: int = 4,
    max_degree: int = 10,
    attempts: int = 200,
) -> tuple[SeedFile, list[int]]:
    """Principal-coefficient quantum lift of a random seed, filtered like the classical corpus."""
    for _ in range(attempts):
        n = rng.choice(list(ranks))
        B = random_exchange_matrix(rng, n)
        if not B.any():
            continue
        md = random_mutation_data(rng, n, max_r).with_z_from_h()
        path = random_path(rng, n, rng.randint(1, max_len))
        if _max_degree_bounded(ClassicalEngine(B, md), path, max_degree):
            pair = principal_lift(B, skew_symmetrizer(B))
            return SeedFile(pair.Btilde, md, pair.Lambda, "quantum"), path
    raise InconclusiveError("no quantum instance below the degree cap", {"max_degree": max_degree})


def random_trials(
    trials: int,
    seed: int = 0,
    mode: str = "classical",
    checks: Iterable[str] | None = None,
    **kw,
) -> VerifyReport:
    """Run ``checks`` on ``trials`` random instances; each result is tagged with its instance."""
    rng = random.Random(seed)
    report = VerifyReport()
    if checks is None:
        checks = ("triple", "duality", "gbbc", "separation", "structure") if mode == "classical" else CHECKS
    checks = tuple(checks)
    for t in range(trials):
        if mode == "classical":
            sf, path = random_classical_instance(rng, **kw)
        else:
            sf, path = random_quantum_instance(rng, **kw)
        sub = run_checks(sf, path, checks)
        for res in sub.results:
            res.payload = {"trial": t, "path": path, "seed": sf.to_dict(), **res.payload}
            report.add(res)
    return report
