"""Classical generalized cluster algebras with principal coefficients.

Three independent routes to an F-polynomial:

* :meth:`ClassicalEngine.f_poly_direct` mutates Laurent polynomials in the
  initial cluster and sets ``x = 1``;
* :meth:`ClassicalEngine.gupta_product` multiplies powers of the L-sequence
  in a rational function field;
* :meth:`ClassicalEngine.gupta_expansion` sums the generalized multinomial
  expansion of that product.

Polynomial arithmetic is delegated to sympy's sparse ``ring``/``field``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

import numpy as np
import sympy
from sympy import QQ, ZZ, field, ring
from sympy.polys.polyerrors import ExactQuotientFailed

from .errors import FalsificationError, InputError, LaurentFailure
from .patterns import PathData, common_sign, d0r_diagonal, inner, integral, path_data
from .seedcore import MutationData, _check_k, as_matrix, mutate_exchange_classical, pos

__all__ = [
    "TropMonomial",
    "LaurentPoly",
    "ClassicalFPoly",
    "ClassicalSeed",
    "ClassicalEngine",
    "gen_binomial",
    "bracket_multinomial",
    "expand_power",
    "ordinary_mutation_oracle",
]


# -- tropical semifield ------------------------------------------------------


@dataclass(frozen=True)
class TropMonomial:
    """Element of Trop(y, z): exponents of the ``y`` and ``z`` generators."""

    y: tuple[int, ...]
    z: tuple[int, ...] = ()

    def __mul__(self, other: "TropMonomial") -> "TropMonomial":
        return TropMonomial(
            tuple(a + b for a, b in zip(self.y, other.y)),
            tuple(a + b for a, b in zip(self.z, other.z)),
        )

    def __pow__(self, e: int) -> "TropMonomial":
        return TropMonomial(tuple(a * e for a in self.y), tuple(a * e for a in self.z))

    def oplus(self, other: "TropMonomial") -> "TropMonomial":
        return TropMonomial(
            tuple(min(a, b) for a, b in zip(self.y, other.y)),
            tuple(min(a, b) for a, b in zip(self.z, other.z)),
        )

    @classmethod
    def one(cls, n: int, nz: int = 0) -> "TropMonomial":
        return cls((0,) * n, (0,) * nz)


# -- Laurent polynomials in x ------------------------------------------------


class LaurentPoly:
    """``poly * x^shift`` with ``poly`` not divisible by any ``x_i``.

    ``poly`` lives in a sympy ring whose first ``n`` generators are the x's.
    """

    __slots__ = ("poly", "shift", "n")

    def __init__(self, poly, shift: Sequence[int], n: int):
        self.n = n
        if not poly:
            self.poly, self.shift = poly, (0,) * n
            return
        lows = [min(mon[i] for mon in poly.keys()) for i in range(n)]
        if any(lows):
            R = poly.ring
            poly = R.from_dict({_sub_prefix(mon, lows): c for mon, c in poly.items()})
        self.poly = poly
        self.shift = tuple(s + l for s, l in zip(shift, lows))

    @classmethod
    def from_poly(cls, poly, n: int) -> "LaurentPoly":
        return cls(poly, (0,) * n, n)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self.poly * other.poly, tuple(a + b for a, b in zip(self.shift, other.shift)), self.n)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.poly:
            return other
        if not other.poly:
            return self
        low = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        p = _mul_x(self.poly, [a - b for a, b in zip(self.shift, low)], self.n)
        p = p + _mul_x(other.poly, [a - b for a, b in zip(other.shift, low)], self.n)
        return LaurentPoly(p, low, self.n)

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self.poly) != 1:
                raise LaurentFailure("negative power of a non-monomial Laurent polynomial")
            (mon, c), = self.poly.items()
            if c not in (1, -1):
                raise LaurentFailure("negative power of a monomial with non-unit coefficient")
            R = self.poly.ring
            inv = R.from_dict({tuple(-v if i >= self.n else 0 for i, v in enumerate(mon)): c})
            if any(v for v in mon[self.n:]):
                raise LaurentFailure("negative power of a monomial involving y or z")
            return LaurentPoly(inv, tuple(-s for s in self.shift), self.n) ** (-e)
        return LaurentPoly(self.poly**e, tuple(s * e for s in self.shift), self.n)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        try:
            q = self.poly.exquo(other.poly)
        except ExactQuotientFailed:
            raise LaurentFailure(
                "exchange relation does not divide to a Laurent polynomial",
                {"numerator": str(self.poly.as_expr()), "denominator": str(other.poly.as_expr())},
            ) from None
        return LaurentPoly(q, tuple(a - b for a, b in zip(self.shift, other.shift)), self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def as_expr(self):
        R = self.poly.ring
        xs = R.symbols[: self.n]
        mono = sympy.Mul(*[x**s for x, s in zip(xs, self.shift)])
        return self.poly.as_expr() * mono

    def __str__(self) -> str:
        return str(self.as_expr())

    __repr__ = __str__


def _sub_prefix(mon, lows):
    return tuple(v - lows[i] if i < len(lows) else v for i, v in enumerate(mon))


def _mul_x(poly, exps, n):
    if not any(exps):
        return poly
    R = poly.ring
    return R.from_dict({tuple(v + exps[i] if i < n else v for i, v in enumerate(mon)): c for mon, c in poly.items()})


# -- F-polynomials -----------------------------------------------------------


class ClassicalFPoly:
    """Polynomial in ``y_1..y_n`` (standing for the ``yhat``) and the z symbols."""

    __slots__ = ("poly", "n")

    def __init__(self, poly, n: int):
        self.poly = poly
        self.n = n

    @property
    def ring(self):
        return self.poly.ring

    def terms(self) -> dict[tuple[tuple[int, ...], tuple[int, ...]], object]:
        return {(mon[: self.n], mon[self.n:]): c for mon, c in self.poly.items()}

    def y_support(self) -> set[tuple[int, ...]]:
        return {mon[: self.n] for mon in self.poly.keys()}

    def y_coefficient(self, a: Sequence[int]):
        """Coefficient of ``y^a`` as a sympy expression in the z symbols."""
        a = tuple(a)
        expr = sympy.Integer(0)
        zs = self.ring.symbols[self.n:]
        for mon, c in self.poly.items():
            if mon[: self.n] == a:
                expr += self.ring.domain.to_sympy(c) * sympy.Mul(*[s**e for s, e in zip(zs, mon[self.n:])])
        return sympy.expand(expr)

    def constant_term(self):
        return self.y_coefficient((0,) * self.n)

    def degree(self) -> int:
        """Total degree in the y variables."""
        return max((sum(m[: self.n]) for m in self.poly.keys()), default=-1)

    def max_monomial(self) -> tuple[int, ...] | None:
        """The y-exponent dominating every other one componentwise, if any."""
        supp = self.y_support()
        top = tuple(max(a[i] for a in supp) for i in range(self.n)) if supp else None
        return top if top in supp else None

    def structure_report(self) -> dict:
        top = self.max_monomial()
        return {
            "constant_term_one": self.constant_term() == 1,
            "max_monomial": list(top) if top is not None else None,
            "max_coefficient_one": top is not None and self.y_coefficient(top) == 1,
        }

    def structure_ok(self) -> bool:
        rep = self.structure_report()
        return rep["constant_term_one"] and rep["max_coefficient_one"]

    def substitute_z(self, values: dict) -> "ClassicalFPoly":
        """Substitute z symbols (by name) and return a polynomial over the remaining symbols."""
        expr = self.as_expr().subs({sympy.Symbol(k): v for k, v in values.items()})
        return ClassicalFPoly.from_expr(expr, self.n)

    @classmethod
    def from_expr(cls, expr, n: int) -> "ClassicalFPoly":
        expr = sympy.expand(sympy.sympify(expr))
        ys = [sympy.Symbol(f"y{i + 1}") for i in range(n)]
        others = sorted((s for s in expr.free_symbols if s not in ys), key=lambda s: s.name)
        domain = QQ if any(not c.is_integer for c in sympy.Poly(expr, *(ys + others)).coeffs()) else ZZ
        R = ring([s.name for s in ys + others], domain)[0]
        return cls(R.from_expr(expr), n)

    def as_expr(self):
        return self.poly.as_expr()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalFPoly):
            return NotImplemented
        if self.ring == other.ring:
            return self.poly == other.poly
        return sympy.expand(self.as_expr() - other.as_expr()) == 0

    def __hash__(self):
        return hash(str(self))

    def sorted_terms(self):
        n = self.n

        def key(item):
            mon = item[0]
            y, z = mon[:n], mon[n:]
            return (sum(y), tuple(-v for v in y), sum(z), tuple(-v for v in z))

        return sorted(self.poly.items(), key=key)

    def __str__(self) -> str:
        if not self.poly:
            return "0"
        names = [str(s) for s in self.ring.symbols]
        n = self.n
        pieces = []
        for i, (mon, c) in enumerate(self.sorted_terms()):
            c = self.ring.domain.to_sympy(c)
            neg = c < 0
            c = -c if neg else c
            factors = []
            for name, e in list(zip(names[n:], mon[n:])) + list(zip(names[:n], mon[:n])):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            body = "*".join(factors)
            if i == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"ClassicalFPoly('{self}')"


# -- generalized binomials ---------------------------------------------------


def gen_binomial(h: int, k: int) -> int:
    """``binom(h, k)`` for any integer ``h`` and ``k >= 0``."""
    if k < 0:
        return 0
    if h >= 0:
        return comb(h, k) if k <= h else 0
    return (-1) ** k * comb(k - h - 1, k)


def bracket_multinomial(h: int, n0: int, parts: Sequence[int]) -> int:
    """``{h; n0, n1, ..., nl} = binom(h, n0) * multinomial(n0; n1, ..., nl)``; zero unless ``n0 = sum(parts)``."""
    if n0 != sum(parts) or any(p < 0 for p in parts):
        return 0
    mult = factorial(n0)
    for p in parts:
        mult //= factorial(p)
    return gen_binomial(h, n0) * mult


def _weighted_tuples(r: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """All ``(n_1..n_r) >= 0`` with ``sum s n_s <= max_weight``."""

    def rec(s, left):
        if s > r:
            yield ()
            return
        for ns in range(left // s + 1):
            for rest in rec(s + 1, left - s * ns):
                yield (ns,) + rest

    if max_weight < 0:
        return
    yield from rec(1, max_weight)


def expand_power(coeffs: Sequence, h: int, max_degree: int) -> list:
    """Coefficients of ``(1 + a_1 z + ... + a_l z^l)^h`` up to ``z^max_degree``.

    ``coeffs`` is ``[a_1, ..., a_l]``; arithmetic follows the coefficient type.
    """
    out = [0] * (max_degree + 1)
    l = len(coeffs)
    for parts in _weighted_tuples(l, max_degree):
        w = sum((s + 1) * p for s, p in enumerate(parts))
        c = bracket_multinomial(h, sum(parts), parts)
        if not c:
            continue
        term = c
        for a, p in zip(coeffs, parts):
            term = term * a**p
        out[w] = out[w] + term
    return out


# -- seeds -------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalSeed:
    path: tuple[int, ...]
    x: tuple[LaurentPoly, ...]
    y: tuple[TropMonomial, ...]
    B: np.ndarray


class ClassicalEngine:
    """Generalized cluster algebra with principal coefficients for ``(B, r, z)``."""

    def __init__(self, B, md: MutationData):
        self.B = as_matrix(B)
        n = self.B.shape[0]
        if self.B.shape != (n, n):
            raise InputError("exchange matrix must be square")
        if md.n != n:
            raise InputError(f"mutation data has rank {md.n}, matrix has rank {n}")
        self.n = n
        self.md = md
        self.r = md.r
        zsyms: set = set()
        rational = False
        for row in md.z:
            for v in row:
                zsyms |= v.free_symbols
                if v.is_number and not v.is_integer:
                    rational = True
                if not v.is_number:
                    for c in sympy.Poly(v, *sorted(v.free_symbols, key=lambda s: s.name)).coeffs():
                        if not c.is_integer:
                            rational = True
        self.zsyms = sorted(zsyms, key=lambda s: s.name)
        xnames = [f"x{i + 1}" for i in range(n)]
        ynames = [f"y{i + 1}" for i in range(n)]
        znames = [s.name for s in self.zsyms]
        if set(znames) & set(xnames + ynames):
            raise InputError("z symbols clash with x/y variable names")
        self.domain = QQ if rational else ZZ
        self.R = ring(xnames + ynames + znames, self.domain)[0]
        self.FR = ring(ynames + znames, self.domain)[0]
        self.K = field(ynames + znames, self.domain)[0]
        self._z_R = [[self.R.from_expr(v) for v in row] for row in md.z]
        self._z_F = [[self.FR.from_expr(v) for v in row] for row in md.z]
        self._z_K = [[self.K.from_expr(v) for v in row] for row in md.z]
        self._d0r = None

    # -- helpers --

    @property
    def d0r(self) -> tuple[int, ...]:
        if self._d0r is None:
            self._d0r = d0r_diagonal(self.B, self.r)
        return self._d0r

    def path_data(self, path: Sequence[int]) -> PathData:
        return path_data(self.B, self.r, [int(k) for k in path])

    def _ymono(self, a: Sequence[int]):
        n = self.n
        exps = (0,) * n + tuple(a) + (0,) * len(self.zsyms)
        return self.R.from_dict({exps: 1})

    def _x(self, i: int) -> LaurentPoly:
        n = self.n
        exps = tuple(1 if j == i else 0 for j in range(n)) + (0,) * (n + len(self.zsyms))
        return LaurentPoly.from_poly(self.R.from_dict({exps: 1}), n)

    def _const(self, poly) -> LaurentPoly:
        return LaurentPoly.from_poly(poly, self.n)

    # -- mutation --

    def initial_seed(self) -> ClassicalSeed:
        n = self.n
        ys = tuple(TropMonomial(tuple(1 if j == i else 0 for j in range(n)), (0,) * len(self.zsyms)) for i in range(n))
        return ClassicalSeed((), tuple(self._x(i) for i in range(n)), ys, self.B.copy())

    def mutate_seed(self, seed: ClassicalSeed, k: int, eps: int | None = None) -> ClassicalSeed:
        """One (r, z)-mutation; ``eps`` defaults to the sign of the current c-vector."""
        n = self.n
        kk = _check_k(k, n)
        yk = seed.y[kk]
        if eps is None:
            eps = common_sign(yk.y)
        rk = self.r[kk]
        Bt = seed.B
        one = TropMonomial.one(n, len(self.zsyms))
        # tropical denominator; numeric or formal z all enter with their Trop exponent
        den = one
        for s in range(rk + 1):
            den = den.oplus(self._z_trop(kk, s) * yk ** (eps * s))
        num = None
        for s in range(rk + 1):
            ytrop = self._z_trop(kk, s) * yk ** (eps * s)
            yexp = tuple(a - b for a, b in zip(ytrop.y, den.y))
            if any(v < 0 for v in yexp):
                raise FalsificationError("tropical division left a negative exponent", {"k": k})
            coeff = self._z_R[kk][s] * self._ymono(yexp)
            term = self._const(coeff)
            for j in range(n):
                e = s * pos(eps * Bt[j, kk]) + (rk - s) * pos(-eps * Bt[j, kk])
                if e:
                    term = term * seed.x[j] ** e
            num = term if num is None else num + term
        xk = num.exact_div(seed.x[kk])
        xs = list(seed.x)
        xs[kk] = xk
        ys = []
        for i in range(n):
            if i == kk:
                ys.append(yk ** -1)
            else:
                bki = Bt[kk, i]
                ys.append(seed.y[i] * yk ** (pos(eps * bki) * rk) * den ** (-bki))
        B2 = mutate_exchange_classical(Bt, self.r, k, eps)
        return ClassicalSeed(seed.path + (k,), tuple(xs), tuple(ys), B2)

    def _z_trop(self, kk: int, s: int) -> TropMonomial:
        # tropical value of z_{k,s}: formal symbols are free generators, numbers are 1.
        # The min over s always includes s = 0 (z_{k,0} = 1), so z-exponents never
        # survive in y_{i;t}; they are tracked only for completeness.
        nz = len(self.zsyms)
        expo = [0] * nz
        v = self.md.z[kk][s]
        if v.is_Symbol and v in self.zsyms:
            expo[self.zsyms.index(v)] = 1
        return TropMonomial((0,) * self.n, tuple(expo))

    def mutate_along(self, path: Sequence[int], eps: int | None = None) -> list[ClassicalSeed]:
        seeds = [self.initial_seed()]
        for k in path:
            seeds.append(self.mutate_seed(seeds[-1], int(k), eps))
        return seeds

    # -- F-polynomials --

    def _fpoly_from_laurent(self, lp: LaurentPoly) -> ClassicalFPoly:
        n = self.n
        acc = {}
        for mon, c in lp.poly.items():
            key = mon[n:]
            acc[key] = acc.get(key, 0) + c
        return ClassicalFPoly(self.FR.from_dict({k: v for k, v in acc.items() if v}), n)

    def f_poly_direct(self, path: Sequence[int], i: int | None = None) -> ClassicalFPoly:
        """``x_{i;t}`` at ``x = 1``; ``i`` defaults to the last direction of the path."""
        path = [int(k) for k in path]
        seeds = self.mutate_along(path)
        if i is None:
            if not path:
                return ClassicalFPoly(self.FR.one, self.n)
            i = path[-1]
        return self._fpoly_from_laurent(seeds[-1].x[_check_k(i, self.n)])

    def _field_to_fpoly(self, frac, what: str) -> ClassicalFPoly:
        numer, denom = frac.numer, frac.denom
        if not denom.is_ground:
            raise FalsificationError(f"{what} is not a polynomial", {"denominator": str(denom.as_expr())})
        # over QQ the field may keep a constant denominator
        lc = denom.LC
        if lc != 1:
            numer = numer.quo_ground(lc) if self.domain == QQ else numer.exquo_ground(lc)
        return ClassicalFPoly(self.FR.from_dict(dict(numer.items())), self.n)

    def _yhat_K(self, a: Sequence[int]):
        gens = self.K.gens
        out = self.K.one
        for i, e in enumerate(a):
            if e:
                out *= gens[i] ** e
        return out

    def gupta_exponents(self, pd: PathData) -> list[list[int]]:
        """``e[l][j] = -(chat_l^+, d_(j) c_j)_{D0R}`` for ``j < l`` (0-based)."""
        d0r = self.d0r
        k = len(pd.path)
        out = []
        for l in range(k):
            row = []
            for j in range(l):
                dj = Fraction(1, d0r[pd.path[j] - 1])
                v = -inner(pd.chat[l], [dj * c for c in pd.c[j]], d0r)
                row.append(integral(v, f"(chat_{l + 1}^+, d_({j + 1}) c_{j + 1})_D0R"))
            out.append(row)
        return out

    def product_exponents(self, pd: PathData) -> list[int]:
        """``-(g_k, d_(j) c_j)_{D0R}`` for ``j = 1..k``."""
        d0r = self.d0r
        if not pd.path:
            return []
        g = pd.g[-1]
        out = []
        for j in range(len(pd.path)):
            dj = Fraction(1, d0r[pd.path[j] - 1])
            v = -inner(g, [dj * c for c in pd.c[j]], d0r)
            out.append(integral(v, f"(g_k, d_({j + 1}) c_{j + 1})_D0R"))
        return out

    def gupta_L_sequence(self, path: Sequence[int]) -> list:
        """The L-sequence as elements of the rational function field in ``yhat`` and z."""
        pd = self.path_data(path)
        E = self.gupta_exponents(pd)
        Ls = []
        for l, il in enumerate(pd.path):
            base = self._yhat_K(pd.cplus[l])
            for j in range(l):
                if E[l][j]:
                    base = base * Ls[j] ** E[l][j]
            zrow = self._z_K[il - 1]
            total = self.K.zero
            power = self.K.one
            for s in range(self.r[il - 1] + 1):
                total += zrow[s] * power
                power = power * base
            Ls.append(total)
        return Ls

    def format_L(self, path: Sequence[int]) -> list[str]:
        """Human-readable L-sequence, e.g. ``1 + z*(y1*y2*L1^-1*L2^-1) + (y1*y2*L1^-1*L2^-1)^2``."""
        pd = self.path_data(path)
        E = self.gupta_exponents(pd)
        out = []
        for l, il in enumerate(pd.path):
            factors = []
            for i, e in enumerate(pd.cplus[l]):
                if e:
                    factors.append(f"y{i + 1}" if e == 1 else f"y{i + 1}^{e}")
            for j, e in enumerate(E[l]):
                if e:
                    factors.append(f"L{j + 1}" if e == 1 else f"L{j + 1}^{e}")
            base = "*".join(factors)
            wrapped = f"({base})" if len(factors) > 1 else base
            parts = []
            for s, zv in enumerate(self.md.z[il - 1]):
                if zv == 0:
                    continue
                if s == 0:
                    parts.append(str(zv))
                    continue
                pw = base if s == 1 else f"{wrapped}^{s}"
                parts.append(pw if zv == 1 else f"{zv}*{pw}")
            out.append(" + ".join(parts))
        return out

    def gupta_product(self, path: Sequence[int]) -> ClassicalFPoly:
        """``F_{i_k;t_k} = prod_j L_j^{-(g_k, d_(j) c_j)_{D0R}}``."""
        path = [int(k) for k in path]
        if not path:
            return ClassicalFPoly(self.FR.one, self.n)
        pd = self.path_data(path)
        Ls = self.gupta_L_sequence(path)
        ex = self.product_exponents(pd)
        F = self.K.one
        for L, e in zip(Ls, ex):
            if e:
                F = F * L**e
        return self._field_to_fpoly(F, "Gupta product")

    def gupta_expansion(
        self,
        path: Sequence[int],
        degree_bound: int | None = None,
        margin: int = 1,
        max_terms: int = 2_000_000,
    ) -> ClassicalFPoly:
        """Sum of the generalized multinomial expansion of the Gupta product.

        Tuples are enumerated up to total y-degree ``degree_bound + margin``;
        the bound defaults to the degree of :meth:`gupta_product`.  Every
        tuple contributes to exactly one degree, so coefficients are exact in
        that range, and the terms beyond ``degree_bound`` must cancel.
        """
        path = [int(k) for k in path]
        if not path:
            return ClassicalFPoly(self.FR.one, self.n)
        if degree_bound is None:
            degree_bound = self.gupta_product(path).degree()
        limit = degree_bound + margin
        pd = self.path_data(path)
        E = self.gupta_exponents(pd)
        hs = self.product_exponents(pd)
        k = len(path)
        n = self.n
        sizes = [sum(cp) for cp in pd.cplus]
        len(self.zsyms)
        zF = self._z_F
        acc: dict = {}
        count = 0

        # omegas[l] = sum_s s n_s^l for steps already chosen (l > j)
        def rec(j: int, budget: int, omegas: dict, coeff, yexp: tuple):
            nonlocal count
            if j < 0:
                count += 1
                if count > max_terms:
                    raise FalsificationError(
                        "expansion exceeded the term cap", {"max_terms": max_terms, "degree_limit": limit}
                    )
                for mon, c in coeff.items():
                    key = yexp + mon[n:]
                    acc[key] = acc.get(key, 0) + c
                return
            H = hs[j] + sum(om * E[l][j] for l, om in omegas.items())
            rj = self.r[pd.path[j] - 1]
            zrow = zF[pd.path[j] - 1]
            for parts in _weighted_tuples(rj, budget // sizes[j]):
                n0 = sum(parts)
                a = bracket_multinomial(H, n0, parts)
                if not a:
                    continue
                w = sum((s + 1) * p for s, p in enumerate(parts))
                term = coeff * a
                for s, p in enumerate(parts):
                    if p:
                        term = term * zrow[s + 1] ** p
                ye = tuple(v + w * c for v, c in zip(yexp, pd.cplus[j]))
                om = dict(omegas)
                om[j] = w
                rec(j - 1, budget - w * sizes[j], om, term, ye)

        rec(k - 1, limit, {}, self.FR.one, (0,) * n)
        poly = self.FR.from_dict({key: c for key, c in acc.items() if c})
        high = [mon for mon in poly.keys() if sum(mon[:n]) > degree_bound]
        if high:
            raise FalsificationError(
                "expansion has terms beyond the degree bound",
                {"degree_bound": degree_bound, "monomials": [list(m) for m in high]},
            )
        return ClassicalFPoly(poly, n)

    # -- separation formula --

    def separation_rhs(self, g: Sequence[int], F: ClassicalFPoly) -> LaurentPoly:
        """``x^g F(yhat, z)`` with ``yhat_j = y_j prod_i x_i^{b_ij}`` (initial B)."""
        n = self.n
        B = self.B
        total = None
        len(self.zsyms)
        for mon, c in F.poly.items():
            a = mon[:n]
            zexp = mon[n:]
            xexp = [int(g[i]) + sum(int(B[i, j]) * a[j] for j in range(n)) for i in range(n)]
            poly = self.R.from_dict({(0,) * n + tuple(a) + tuple(zexp): c})
            term = LaurentPoly(poly, xexp, n)
            total = term if total is None else total + term
        return total

    def separation_check(self, path: Sequence[int], F: ClassicalFPoly | None = None) -> bool:
        """Compare the mutated ``x_{i_k;t_k}`` with ``x^g F(yhat)``."""
        path = [int(k) for k in path]
        if not path:
            return True
        seeds = self.mutate_along(path)
        pd = self.path_data(path)
        if F is None:
            F = self.gupta_product(path)
        return self.separation_rhs(pd.g[-1], F) == seeds[-1].x[path[-1] - 1]

    def tropical_c_matrix(self, seed: ClassicalSeed) -> np.ndarray:
        """Exponent vectors of ``y_{j;t}`` as columns."""
        n = self.n
        out = np.zeros((n, n), dtype=object)
        for j, y in enumerate(seed.y):
            for i in range(n):
                out[i, j] = y.y[i]
        return out


def ordinary_mutation_oracle(B, path: Sequence[int]):
    """Principal-coefficient cluster variables for ordinary (r = 1) mutation.

    Written directly from the Fomin-Zelevinsky exchange relation with sympy
    rational functions, as an independent oracle.  Returns the list of
    clusters (tuples of sympy expressions) along ``path``.
    """
    B = [[int(v) for v in row] for row in as_matrix(B).tolist()]
    n = len(B)
    xs = list(sympy.symbols(f"x1:{n + 1}"))
    ys_sym = sympy.symbols(f"y1:{n + 1}")
    cvec = [[1 if i == j else 0 for i in range(n)] for j in range(n)]  # cvec[j] = y_j exponents
    out = [tuple(xs)]
    for k in path:
        k -= 1
        c = cvec[k]
        yplus = sympy.Mul(*[y ** pos(e) for y, e in zip(ys_sym, c)])
        yminus = sympy.Mul(*[y ** pos(-e) for y, e in zip(ys_sym, c)])
        mplus = sympy.Mul(*[xs[i] ** pos(B[i][k]) for i in range(n)])
        mminus = sympy.Mul(*[xs[i] ** pos(-B[i][k]) for i in range(n)])
        xs[k] = sympy.cancel((yplus * mplus + yminus * mminus) / xs[k])
        # tropical y-mutation
        newc = []
        for j in range(n):
            if j == k:
                newc.append([-e for e in c])
            else:
                bkj = B[k][j]
                # y_j' = y_j y_k^{[b_kj]_+} (y_k (+) 1)^{-b_kj}
                newc.append([cvec[j][i] + pos(bkj) * c[i] - bkj * min(0, c[i]) for i in range(n)])
        cvec = newc
        B = [[-B[i][j] if (i == k or j == k) else B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
              for j in range(n)] for i in range(n)]
        out.append(tuple(xs))
    return out
