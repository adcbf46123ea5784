"""Quantum F-polynomials through bracketed powers and the ordered Gupta product.

All series live in the torus twisted by ``D B`` (variables ``Z_i``, standing
for the initial ``Yhat_i``) and are truncated by total degree.  F-polynomials
are read off once two truncation levels agree; the separation formula is then
checked against the exchange relation without any truncation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import FalsificationError, InconclusiveError, InputError, IntegralityError
from .extorus import Exp, QSeries, SkewForm, TorusElem, _add_into, torus_mul, yhat_form
from .gca import ClassicalEngine, ClassicalFPoly
from .patterns import PathData, inner, path_data
from .qcoeff import QCoeff
from .seedcore import CompatiblePair, MutationData, pos

__all__ = [
    "BracketBase",
    "QuantumFPoly",
    "Certificate",
    "QuantumEngine",
    "cocycle_holds",
]


# -- bracketed powers --------------------------------------------------------


class BracketBase:
    """``sum_s h_s (q^{b/2} z)^s`` viewed as the base of a bracketed power.

    ``z`` is a series without constant term; ``b`` is an integer (the twist
    in half-units of ``q``).
    """

    def __init__(self, h: Sequence, b: int, z: QSeries):
        self.h = tuple(QCoeff.coerce(c) for c in h)
        self.b = int(b)
        self.z = z
        if z.constant_term():
            raise InputError("the base of a bracketed power must have zero constant term")
        self._powers = [QSeries.one(z.form, z.bound)]
        self._inv_cache: dict[int, QSeries] = {}

    @property
    def r(self) -> int:
        return len(self.h) - 1

    def _zpow(self, s: int) -> QSeries:
        while len(self._powers) <= s:
            self._powers.append(self._powers[-1] * self.z)
        return self._powers[s]

    def factor(self, x: int) -> QSeries:
        """``sum_s h_s q^{s x / 2} z^s``."""
        out = QSeries.one(self.z.form, self.z.bound)
        for s in range(1, self.r + 1):
            if self.h[s]:
                out = out + self._zpow(s).scale(self.h[s].shift(s * x))
        return out

    def factor_inverse(self, x: int) -> QSeries:
        if x not in self._inv_cache:
            self._inv_cache[x] = self.factor(x) ** -1
        return self._inv_cache[x]

    def power(self, a: int, sign: int = 1) -> QSeries:
        """``P^{a}`` for ``sign = 1`` and its inverse for ``sign = -1``.

        The factors are polynomials in the same ``z`` and so commute.
        """
        out = QSeries.one(self.z.form, self.z.bound)
        if a > 0:
            xs = [self.b * (2 * i - 1) for i in range(1, a + 1)]
            invert = sign < 0
        elif a < 0:
            xs = [self.b * (2 * i + 1) for i in range(a, 0)]
            invert = sign > 0
        else:
            return out
        for x in xs:
            out = out * (self.factor_inverse(x) if invert else self.factor(x))
        return out

    def substituted(self, shift: int) -> "BracketBase":
        """Same base with ``z`` replaced by ``q^{shift/2} z``."""
        return BracketBase(self.h, self.b, self.z.shift_q(shift))


def cocycle_holds(base: BracketBase, a: int, a2: int) -> bool:
    """``P^{a + a'} = P^{a}|_{z -> q^{a' b} z} P^{a'}`` up to the truncation of ``base.z``."""
    lhs = base.power(a + a2)
    rhs = base.substituted(2 * a2 * base.b).power(a) * base.power(a2)
    return lhs == rhs


# -- F-polynomials -----------------------------------------------------------


def _z_text(alpha: Exp) -> str:
    parts = []
    for i, e in enumerate(alpha):
        if e:
            parts.append(f"Z{i + 1}" if e == 1 else f"Z{i + 1}^{e}")
    return "*".join(parts)


class QuantumFPoly:
    """Finite sum of ``coeff * Z(alpha)`` in the torus twisted by ``D B``."""

    __slots__ = ("form", "terms", "certificate")

    def __init__(self, form: SkewForm, terms: dict, certificate: "Certificate | None" = None):
        self.form = form
        clean: dict[Exp, QCoeff] = {}
        for alpha, c in terms.items():
            alpha = tuple(int(v) for v in alpha)
            if any(v < 0 for v in alpha):
                raise FalsificationError("F-polynomial has a negative exponent", {"exponent": list(alpha)})
            _add_into(clean, alpha, QCoeff.coerce(c))
        self.terms = clean
        self.certificate = certificate

    @property
    def n(self) -> int:
        return self.form.dim

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exp, QCoeff]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-v for v in kv[0])))

    def constant_term(self) -> QCoeff:
        return self.terms.get((0,) * self.n, QCoeff.const(0))

    def max_monomial(self) -> Exp | None:
        if not self.terms:
            return None
        top = tuple(max(a[i] for a in self.terms) for i in range(self.n))
        return top if top in self.terms else None

    def structure_report(self) -> dict:
        top = self.max_monomial()
        unit = None
        if top is not None:
            mono = self.terms[top].as_monomial()
            if mono is not None and mono[0] == 1 and mono[2] == 0:
                unit = mono[1]
        return {
            "constant_term_one": self.constant_term().is_one(),
            "max_monomial": list(top) if top is not None else None,
            "max_coefficient_q_power": unit,
            "max_divides_all": top is not None,
            "polynomial": all(v >= 0 for a in self.terms for v in a),
        }

    def structure_ok(self) -> bool:
        rep = self.structure_report()
        return rep["constant_term_one"] and rep["max_divides_all"] and rep["max_coefficient_q_power"] is not None

    def to_series(self, bound: int) -> QSeries:
        return QSeries(self.form, self.terms, bound)

    def at_q_one(self):
        """Sympy polynomial in ``y1..yn`` and ``h`` obtained by ``q^{1/2} = 1``."""
        ys = sympy.symbols(f"y1:{self.n + 1}")
        hs = sympy.Symbol("h")
        expr = sympy.Integer(0)
        for alpha, c in self.terms.items():
            coeff = sum((v * hs**j for j, v in c.at_q_one().items()), sympy.Integer(0))
            expr += coeff * sympy.Mul(*[y**e for y, e in zip(ys, alpha)])
        return sympy.expand(expr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuantumFPoly):
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (alpha, c) in enumerate(self.sorted_terms()):
            mono = _z_text(alpha)
            single = c.as_monomial()
            neg = False
            if single is not None:
                neg = single[0] < 0
                ctext = str(-c if neg else c)
                if mono:
                    body = mono if ctext == "1" else f"{ctext}*{mono}"
                else:
                    body = ctext
            else:
                body = f"({c})*{mono}" if mono else str(c)
            if i == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"QuantumFPoly('{self}')"


@dataclass
class Certificate:
    """How a truncated product was certified to be a finite polynomial."""

    levels: tuple[int, ...]
    delta: int
    margin: int
    classical_degree: int
    degree: int
    h_positive: bool | None = True
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "delta": self.delta,
            "margin": self.margin,
            "classical_degree": self.classical_degree,
            "degree": self.degree,
            "h_positive": self.h_positive,
            "seconds": round(self.seconds, 4),
        }


# -- engine ------------------------------------------------------------------


@dataclass
class LTable:
    """``L[j][i]`` holds ``L_{j+1, i+1}`` (only ``i > j`` is filled); ``Ls[j]`` is the base of ``L_{j+1}``."""

    L: list[dict[int, QSeries]] = field(default_factory=list)
    bases: list[BracketBase] = field(default_factory=list)


class QuantumEngine:
    """Generalized quantum cluster algebra attached to a compatible pair and ``(R, h)``."""

    def __init__(self, pair: CompatiblePair, md: MutationData):
        if md.n != pair.n:
            raise InputError(f"mutation data has rank {md.n}, the pair has rank {pair.n}")
        self.pair = pair
        self.md = md
        self.n = pair.n
        self.m = pair.m
        self.dinv = pair.dinv
        self.B = pair.B
        self.form = yhat_form(self.dinv, [[int(v) for v in row] for row in self.B.tolist()])
        self.torus = SkewForm(pair.Lambda.tolist())
        self._classical: ClassicalEngine | None = None

    @property
    def classical(self) -> ClassicalEngine:
        """Classical engine with ``z_{i,s} = h_{i,s}(1)``."""
        if self._classical is None:
            self._classical = ClassicalEngine(self.B, self.md.with_z_from_h())
        return self._classical

    def path_data(self, path: Sequence[int]) -> PathData:
        return path_data(self.pair.Btilde, self.md.r, [int(k) for k in path], self.pair.Lambda)

    def _dform(self, u, v) -> Fraction:
        return inner(u, v, self.dinv)

    def _bracket_arg(self, j: int, pd: PathData, v, what: str) -> int:
        # d_(j) (c_j^+, v)_D with d_(j) = 1 / D_{i_j}
        x = self._dform(pd.cplus[j], v) / self.dinv[pd.path[j] - 1]
        if x.denominator != 1:
            raise IntegralityError(f"{what} = {x} is not an integer")
        return int(x)

    def bracket_exponents(self, pd: PathData) -> dict:
        """All bracket arguments used by the recursion and the product."""
        k = len(pd.path)
        rec = {(j, i): self._bracket_arg(j, pd, pd.chat[i], f"(d_({j + 1}) c_{j + 1}^+, chat_{i + 1}^+)_D")
               for j in range(k) for i in range(j + 1, k)}
        prod = [self._bracket_arg(j, pd, pd.g[-1][: self.n], f"d_({j + 1}) (c_{j + 1}^+, g_k)_D") for j in range(k)]
        return {"recursion": rec, "product": prod}

    def l_recursion(self, path: Sequence[int], bound: int) -> LTable:
        pd = self.path_data(path)
        k = len(pd.path)
        ex = self.bracket_exponents(pd)["recursion"]
        table = LTable()
        form = self.form
        prev: dict[int, QSeries] = {i: QSeries.monomial(form, pd.cplus[i], bound) for i in range(k)}
        base = BracketBase(self.md.h[pd.path[0] - 1], self.dinv[pd.path[0] - 1],
                           QSeries.monomial(form, pd.cplus[0], bound))
        table.bases.append(base)
        for j in range(k):
            cur: dict[int, QSeries] = {}
            for i in range(j + 1, k):
                a = ex[(j, i)]
                cur[i] = prev[i] * base.power(a, -pd.eps[j]) if a else prev[i]
            table.L.append(cur)
            if j + 1 < k:
                il = pd.path[j + 1]
                base = BracketBase(self.md.h[il - 1], self.dinv[il - 1], cur[j + 1])
                table.bases.append(base)
            prev = cur
        return table

    def gupta_product_quantum(self, path: Sequence[int], bound: int) -> QSeries:
        """Ordered product of ``L_j^{-eps_j {d_(j)(c_j^+, g_k)_D}}`` for ``j = 1..k``."""
        path = [int(k) for k in path]
        if not path:
            return QSeries.one(self.form, bound)
        pd = self.path_data(path)
        prod_ex = self.bracket_exponents(pd)["product"]
        table = self.l_recursion(path, bound)
        out = QSeries.one(self.form, bound)
        for j, base in enumerate(table.bases):
            if prod_ex[j]:
                out = out * base.power(prod_ex[j], -pd.eps[j])
        return out

    def classical_fpoly(self, path: Sequence[int]) -> ClassicalFPoly:
        return self.classical.gupta_product(path)

    def extract_fpoly(
        self,
        path: Sequence[int],
        start: int | None = None,
        delta: int = 2,
        margin: int = 1,
        max_bound: int = 60,
        experimental: bool = False,
    ) -> QuantumFPoly:
        """Certified F-polynomial of the last cluster variable along ``path``.

        The product is computed at ``N`` and ``N + delta`` starting from the
        classical degree plus two; it is accepted once both levels agree and
        nothing of degree above ``N - margin`` appears.
        """
        path = [int(k) for k in path]
        positive = self.md.h_positive_at_one()
        if positive is False and not experimental:
            raise InputError("some h_{i,s}(1) is not positive; pass experimental=True to proceed")
        t0 = time.perf_counter()
        cdeg = self.classical_fpoly(path).degree() if path else 0
        N = start if start is not None else cdeg + 2
        N = max(N, margin)
        levels = []
        prev = None
        while N + delta <= max_bound:
            lo = prev if prev is not None and prev.bound == N else self.gupta_product_quantum(path, N)
            hi = self.gupta_product_quantum(path, N + delta)
            levels.extend([N, N + delta])
            if lo.truncate(N) == hi.truncate(N) and hi.degree() <= N - margin:
                cert = Certificate(tuple(sorted(set(levels))), delta, margin, cdeg, hi.degree(),
                                   positive, time.perf_counter() - t0)
                return QuantumFPoly(self.form, hi.terms, cert)
            prev = hi
            N += delta
        raise InconclusiveError(
            "truncated product did not stabilize",
            {"path": path, "levels": levels, "classical_degree": cdeg, "max_bound": max_bound},
        )

    def fpolys_along(self, path: Sequence[int], **kw) -> list[QuantumFPoly]:
        """F-polynomials of ``X_{i_j; t_j}`` for every prefix of ``path``."""
        path = [int(k) for k in path]
        return [self.extract_fpoly(path[: j + 1], **kw) for j in range(len(path))]

    # -- separation formula --

    def separation_element(self, gtilde: Sequence[int], F: QuantumFPoly) -> TorusElem:
        """``X(gtilde) F(Yhat)`` in the initial torus, with ``Yhat^alpha = X(Btilde alpha)``."""
        Bt = self.pair.Btilde
        g = tuple(int(v) for v in gtilde)
        left = TorusElem.monomial(self.torus, g)
        terms = {}
        for alpha, c in F.terms.items():
            beta = tuple(int(sum(Bt[i, j] * alpha[j] for j in range(self.n))) for i in range(self.m))
            _add_into(terms, beta, c)
        return torus_mul(left, TorusElem(self.torus, terms))

    def _normalized_monomial(self, cluster: Sequence[TorusElem], gamma: Sequence[int], Lam) -> TorusElem:
        # X_t(gamma) = q^{(1/2) sum_{i<j} g_i g_j lambda_{ji;t}} X_{1;t}^{g_1} ... X_{m;t}^{g_m}, gamma >= 0
        shift = sum(gamma[i] * gamma[j] * int(Lam[j, i]) for i in range(self.m) for j in range(i + 1, self.m))
        out = TorusElem.one(self.torus)
        for i, e in enumerate(gamma):
            for _ in range(e):
                out = torus_mul(out, cluster[i])
        return TorusElem(self.torus, {a: c.shift(shift) for a, c in out.terms.items()})

    def separation_check_quantum(self, path: Sequence[int], fpolys: Sequence[QuantumFPoly] | None = None) -> dict:
        """Check every step of ``path`` against the exchange relation.

        With ``X_{i;t} = X(gtilde_{i;t}) F_{i;t}(Yhat)`` for the current
        cluster, step ``k`` must satisfy
        ``X'_k X_k = sum_s h_{k,s} q^{(1/2) alpha_s^T Lambda_t e_k} X_t(alpha_s + e_k)``.
        The cluster is also checked to quasi-commute according to ``Lambda_t``.
        Raises :class:`FalsificationError` on the first mismatch.
        """
        path = [int(k) for k in path]
        if fpolys is None:
            fpolys = self.fpolys_along(path)
        pd = self.path_data(path)
        m, n = self.m, self.n
        one = QuantumFPoly(self.form, {(0,) * n: 1})
        cluster = [self.separation_element([1 if j == i else 0 for j in range(m)], one) for i in range(m)]
        checked = 0
        for step, k in enumerate(path):
            st = pd.states[step]
            Lam, Bt = st.Lambda, st.Btilde
            self._check_quasi_commutation(cluster, Lam, step)
            kk = k - 1
            eps = pd.eps[step]
            rk = self.md.r[kk]
            col = [int(Bt[i, kk]) for i in range(m)]
            rhs = TorusElem(self.torus, {})
            for s in range(rk + 1):
                hs = self.md.h[kk][s]
                if not hs:
                    continue
                gamma = [s * pos(eps * b) + (rk - s) * pos(-eps * b) for b in col]
                if gamma[kk] != 0:
                    raise FalsificationError("exchange exponent has a nonzero k-th entry", {"k": k})
                alpha = list(gamma)
                alpha[kk] -= 1
                twist = sum(alpha[i] * int(Lam[i, kk]) for i in range(m))
                term = self._normalized_monomial(cluster, gamma, Lam)
                rhs = rhs + TorusElem(self.torus, {a: c * hs.shift(twist) for a, c in term.terms.items()})
            new = self.separation_element(pd.gtilde[step], fpolys[step])
            lhs = torus_mul(new, cluster[kk])
            if lhs != rhs:
                diff = lhs - rhs
                raise FalsificationError(
                    "separation formula fails the exchange relation",
                    {"step": step + 1, "k": k, "difference": {str(list(a)): str(c) for a, c in diff.terms.items()}},
                )
            cluster[kk] = new
            checked += 1
        self._check_quasi_commutation(cluster, pd.states[-1].Lambda, len(path))
        return {"steps": checked, "status": "pass"}

    def _check_quasi_commutation(self, cluster, Lam, step) -> None:
        m = self.m
        for i in range(m):
            for j in range(i + 1, m):
                lhs = torus_mul(cluster[i], cluster[j])
                rhs = torus_mul(cluster[j], cluster[i])
                rhs = TorusElem(self.torus, {a: c.shift(2 * int(Lam[i, j])) for a, c in rhs.terms.items()})
                if lhs != rhs:
                    raise FalsificationError(
                        "cluster variables do not quasi-commute", {"vertex": step, "pair": [i + 1, j + 1]}
                    )

    # -- q = 1 --

    def specialize_q1(self, path: Sequence[int], F: QuantumFPoly) -> dict:
        """Compare ``F|_{q^{1/2}=1}`` with the classical F-polynomial at ``z = h(1)``."""
        quantum = F.at_q_one()
        path = [int(k) for k in path]
        classical = self.classical_fpoly(path).as_expr() if path else sympy.Integer(1)
        diff = sympy.expand(quantum - classical)
        if diff != 0:
            raise FalsificationError(
                "q = 1 specialization differs from the classical F-polynomial",
                {"quantum": str(quantum), "classical": str(classical), "difference": str(diff)},
            )
        return {"status": "pass", "value": str(quantum)}
