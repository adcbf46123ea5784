"""Quantum tori and truncated q-commuting power series.

A :class:`TorusElem` is a finite sum of ``coeff * X(alpha)`` with the twisted
product ``X(a) X(b) = q^{(1/2) a^T M b} X(a + b)``.  The twist matrix ``M`` is
held by a :class:`SkewForm`; every twist exponent is an integer count of
``q^{1/2}`` powers.

A :class:`QSeries` is the same kind of object restricted to the nonnegative
orthant and truncated at a total degree ``N``.  Series with unit constant term
are invertible (:func:`series_inverse`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, IntegralityError, InputError, InversionError
from .qcoeff import QCoeff, Scalar

__all__ = [
    "SkewForm",
    "TorusElem",
    "QSeries",
    "torus_mul",
    "yhat_mul",
    "yhat_form",
    "series_inverse",
    "monomial_text",
]

Exp = tuple[int, ...]


@dataclass(frozen=True)
class SkewForm:
    """A skew-symmetric integer form on ``Z^m``."""

    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, matrix, check: bool = True):
        rows = tuple(tuple(int(v) for v in row) for row in matrix)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise DimensionError("twist matrix must be square")
        if check:
            for i in range(m):
                for j in range(m):
                    if rows[i][j] != -rows[j][i]:
                        raise InputError(f"twist matrix is not skew-symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "matrix", rows)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``a^T M b``."""
        total = 0
        M = self.matrix
        for i, ai in enumerate(a):
            if ai:
                row = M[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * row[j] * bj
        return total


def yhat_form(dinv: Sequence, B) -> SkewForm:
    """Twist form of the torus spanned by ``Yhat(beta)``, i.e. the matrix ``D B``.

    ``dinv`` is the diagonal of ``D``; entries may be rationals, but every
    entry of ``D B`` must come out integral.
    """
    n = len(dinv)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = Fraction(dinv[i]) * int(B[i][j])
            if v.denominator != 1:
                raise IntegralityError(
                    f"(DB)[{i + 1},{j + 1}] = {v} is not an integer; D and B are inconsistent"
                )
            row.append(int(v))
        rows.append(row)
    return SkewForm(rows)


def _add_into(acc: dict, key, c: QCoeff) -> None:
    prev = acc.get(key)
    if prev is None:
        if c:
            acc[key] = c
    else:
        s = prev + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def monomial_text(alpha: Sequence[int], name: str = "X") -> str:
    return f"{name}({','.join(str(a) for a in alpha)})"


class TorusElem:
    """Element of the quantum torus attached to ``form``."""

    __slots__ = ("form", "terms")

    def __init__(self, form: SkewForm, terms: Mapping[Sequence[int], Scalar] | None = None):
        self.form = form
        clean: dict[Exp, QCoeff] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != form.dim:
                raise DimensionError(f"exponent {alpha} has length {len(alpha)}, expected {form.dim}")
            _add_into(clean, alpha, QCoeff.coerce(c))
        self.terms = clean

    @classmethod
    def monomial(cls, form: SkewForm, alpha: Sequence[int], coeff: Scalar = 1) -> "TorusElem":
        return cls(form, {tuple(alpha): coeff})

    @classmethod
    def one(cls, form: SkewForm) -> "TorusElem":
        return cls(form, {(0,) * form.dim: 1})

    def _check(self, other: "TorusElem") -> None:
        if self.form != other.form:
            raise DimensionError("operands live in different quantum tori")

    def __add__(self, other: "TorusElem") -> "TorusElem":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            _add_into(out, a, c)
        return _raw_torus(self.form, out)

    def __neg__(self) -> "TorusElem":
        return _raw_torus(self.form, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "TorusElem") -> "TorusElem":
        return self + (-other)

    def scale(self, c: Scalar) -> "TorusElem":
        c = QCoeff.coerce(c)
        return _raw_torus(self.form, {a: v * c for a, v in self.terms.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, TorusElem):
            return torus_mul(self, other)
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def at_q_one(self) -> dict[Exp, dict[int, int]]:
        """Coefficients with ``q^{1/2} = 1``, as polynomials in ``h``."""
        out = {}
        for a, c in self.terms.items():
            v = c.at_q_one()
            if v:
                out[a] = v
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"({c}) * {monomial_text(a)}" if len(c) > 1 else f"{c} * {monomial_text(a)}"
                 for a, c in sorted(self.terms.items())]
        return " + ".join(parts)

    __repr__ = __str__


def _raw_torus(form: SkewForm, terms: dict) -> TorusElem:
    obj = TorusElem.__new__(TorusElem)
    obj.form = form
    obj.terms = terms
    return obj


def _twisted_product(form: SkewForm, left: Mapping, right: Mapping, bound: int | None = None) -> dict:
    acc: dict[Exp, QCoeff] = {}
    for a, ca in left.items():
        da = sum(a) if bound is not None else 0
        for b, cb in right.items():
            if bound is not None and da + sum(b) > bound:
                continue
            key = tuple(x + y for x, y in zip(a, b))
            _add_into(acc, key, (ca * cb).shift(form.pair(a, b)))
    return acc


def torus_mul(a: TorusElem, b: TorusElem) -> TorusElem:
    """Twisted product ``X(alpha) X(beta) = q^{(1/2) alpha^T M beta} X(alpha + beta)``."""
    a._check(b)
    return _raw_torus(a.form, _twisted_product(a.form, a.terms, b.terms))


def yhat_mul(a: TorusElem, b: TorusElem, dinv: Sequence, B) -> TorusElem:
    """Product in the torus whose twist is ``D B``.

    The operands may have been built over any form of the right dimension;
    they are reinterpreted over ``D B``.
    """
    form = yhat_form(dinv, B)
    if a.form.dim != form.dim or b.form.dim != form.dim:
        raise DimensionError("operand rank does not match B")
    return _raw_torus(form, _twisted_product(form, a.terms, b.terms))


class QSeries:
    """Truncated series in the nonnegative orthant of a quantum torus.

    Terms of total degree greater than ``bound`` are dropped on construction
    and after every operation.
    """

    __slots__ = ("form", "terms", "bound")

    def __init__(self, form: SkewForm, terms: Mapping[Sequence[int], Scalar] | None, bound: int):
        if bound < 0:
            raise InputError("truncation bound must be nonnegative")
        self.form = form
        self.bound = int(bound)
        clean: dict[Exp, QCoeff] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != form.dim:
                raise DimensionError(f"exponent {alpha} has length {len(alpha)}, expected {form.dim}")
            if any(a < 0 for a in alpha):
                raise InputError(f"series exponent {alpha} leaves the nonnegative orthant")
            if sum(alpha) <= bound:
                _add_into(clean, alpha, QCoeff.coerce(c))
        self.terms = clean

    @classmethod
    def _raw(cls, form: SkewForm, terms: dict, bound: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj.form = form
        obj.terms = terms
        obj.bound = bound
        return obj

    @classmethod
    def one(cls, form: SkewForm, bound: int) -> "QSeries":
        return cls._raw(form, {(0,) * form.dim: QCoeff.const(1)}, bound)

    @classmethod
    def monomial(cls, form: SkewForm, alpha: Sequence[int], bound: int, coeff: Scalar = 1) -> "QSeries":
        return cls(form, {tuple(alpha): coeff}, bound)

    @classmethod
    def from_torus(cls, elem: TorusElem, bound: int) -> "QSeries":
        return cls(elem.form, elem.terms, bound)

    def to_torus(self) -> TorusElem:
        return _raw_torus(self.form, dict(self.terms))

    def _check(self, other: "QSeries") -> int:
        if self.form != other.form:
            raise DimensionError("operands live in different quantum tori")
        return min(self.bound, other.bound)

    def truncate(self, bound: int) -> "QSeries":
        bound = min(bound, self.bound)
        return QSeries._raw(self.form, {a: c for a, c in self.terms.items() if sum(a) <= bound}, bound)

    def constant_term(self) -> QCoeff:
        return self.terms.get((0,) * self.form.dim, QCoeff.const(0))

    def degree(self) -> int:
        """Largest total degree present (``-1`` for the zero series)."""
        return max((sum(a) for a in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(a) for a in self.terms), default=-1)

    def __add__(self, other: "QSeries") -> "QSeries":
        bound = self._check(other)
        out = {a: c for a, c in self.terms.items() if sum(a) <= bound}
        for a, c in other.terms.items():
            if sum(a) <= bound:
                _add_into(out, a, c)
        return QSeries._raw(self.form, out, bound)

    def __neg__(self) -> "QSeries":
        return QSeries._raw(self.form, {a: -c for a, c in self.terms.items()}, self.bound)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c: Scalar) -> "QSeries":
        c = QCoeff.coerce(c)
        out = {}
        for a, v in self.terms.items():
            w = v * c
            if w:
                out[a] = w
        return QSeries._raw(self.form, out, self.bound)

    def shift_q(self, k: int) -> "QSeries":
        """Multiply by the central scalar ``q^(k/2)``."""
        return QSeries._raw(self.form, {a: c.shift(k) for a, c in self.terms.items()}, self.bound)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            bound = self._check(other)
            return QSeries._raw(self.form, _twisted_product(self.form, self.terms, other.terms, bound), bound)
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            return series_inverse(self) ** (-e)
        result = QSeries.one(self.form, self.bound)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        bound = min(self.bound, other.bound)
        return self.form == other.form and self.truncate(bound).terms == other.truncate(bound).terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        body = str(self.to_torus())
        return f"{body} + O(deg {self.bound + 1})"

    __repr__ = __str__


def _graded(terms: Mapping[Exp, QCoeff]) -> dict[int, dict[Exp, QCoeff]]:
    out: dict[int, dict[Exp, QCoeff]] = {}
    for a, c in terms.items():
        out.setdefault(sum(a), {})[a] = c
    return out


def series_inverse(a: QSeries) -> QSeries:
    """Two-sided inverse of a series whose constant term is ``±q^(k/2)``.

    Solved degree by degree from ``a * b = 1``: writing ``a = c + u`` with
    ``u`` of positive degree, ``b_d = -c^{-1} sum_{e >= 1} u_e b_{d-e}``.
    """
    c = a.constant_term()
    mono = c.as_monomial()
    if mono is None or abs(mono[0]) != 1 or mono[2] != 0:
        raise InversionError(f"constant term {c} is not a unit of Z[q^(+-1/2)]")
    sign, k, _ = mono
    form = a.form
    zero = (0,) * form.dim
    u = _graded({al: v for al, v in a.terms.items() if al != zero})
    cinv = QCoeff.q_half(-k, sign)
    neg_cinv = -cinv
    b: dict[int, dict[Exp, QCoeff]] = {0: {zero: cinv}}
    for d in range(1, a.bound + 1):
        acc: dict[Exp, QCoeff] = {}
        for e, ue in u.items():
            if e > d:
                continue
            prev = b.get(d - e)
            if prev:
                for key, val in _twisted_product(form, ue, prev).items():
                    _add_into(acc, key, val)
        if acc:
            b[d] = {key: v * neg_cinv for key, v in acc.items()}
    terms = {}
    for part in b.values():
        terms.update(part)
    return QSeries._raw(form, terms, a.bound)


def series_from_monomials(form: SkewForm, items: Iterable[tuple[Sequence[int], Scalar]], bound: int) -> QSeries:
    acc: dict[Exp, QCoeff] = {}
    for alpha, c in items:
        alpha = tuple(alpha)
        if sum(alpha) <= bound:
            _add_into(acc, alpha, QCoeff.coerce(c))
    return QSeries._raw(form, acc, bound)
