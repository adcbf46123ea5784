"""Exact arithmetic in ``Z[q^{1/2}, q^{-1/2}][h]``.

Every scalar in the quantum computations is a :class:`QCoeff`.  Exponents of
``q`` are stored as integer counts of ``q^{1/2}``, so ``q^{3/2}`` is stored as
``3``.  An optional commuting indeterminate ``h`` lets a mutation datum carry
a free coefficient symbol; most callers never use it.

>>> a = QCoeff.parse("1 + q^(1/2)")
>>> b = QCoeff.parse("1 - q^(1/2)")
>>> str(a * b)
'1 - q'
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Union

from .errors import InputError

__all__ = ["QCoeff", "qc_mul", "qc_eval_at_one", "Scalar"]

# key: (half-exponent of q, exponent of h)
_Key = tuple[int, int]


class QCoeff:
    """An element of ``Z[q^{±1/2}][h]`` in canonical sparse form.

    Parameters
    ----------
    terms:
        Mapping from ``(k, j)`` to an integer coefficient, meaning
        ``coeff * q^(k/2) * h^j``.  A bare integer key ``k`` is read as
        ``(k, 0)``.  Zero coefficients are dropped.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Union[int, _Key], int] | None = None):
        clean: dict[_Key, int] = {}
        if terms:
            for key, c in terms.items():
                if isinstance(key, int):
                    key = (key, 0)
                c = int(c)
                if c:
                    clean[key] = clean.get(key, 0) + c
                    if not clean[key]:
                        del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[_Key, int]) -> "QCoeff":
        # terms must already be canonical (no zero values)
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "QCoeff":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def q_half(cls, k: int, c: int = 1) -> "QCoeff":
        """``c * q^(k/2)``."""
        return cls._raw({(int(k), 0): int(c)} if c else {})

    @classmethod
    def h(cls, power: int = 1) -> "QCoeff":
        if power < 0:
            raise InputError("h is a polynomial indeterminate; negative powers are not allowed")
        return cls._raw({(0, power): 1})

    @classmethod
    def coerce(cls, value: "Scalar") -> "QCoeff":
        if isinstance(value, QCoeff):
            return value
        if isinstance(value, int):
            return cls.const(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot interpret {value!r} as a QCoeff")

    # -- structure ----------------------------------------------------------

    @property
    def terms(self) -> dict[_Key, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[_Key, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_one(self) -> bool:
        return self._terms == {(0, 0): 1}

    def has_h(self) -> bool:
        return any(j for (_, j) in self._terms)

    def unit_exponent(self) -> int | None:
        """Return ``k`` if this is exactly ``q^(k/2)``, else ``None``."""
        if len(self._terms) == 1:
            ((k, j), c), = self._terms.items()
            if j == 0 and c == 1:
                return k
        return None

    def as_monomial(self) -> tuple[int, int, int] | None:
        """``(c, k, j)`` when this is the single term ``c q^(k/2) h^j``."""
        if len(self._terms) == 1:
            ((k, j), c), = self._terms.items()
            return c, k, j
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Scalar") -> "QCoeff":
        if isinstance(other, int):
            other = QCoeff.const(other)
        elif not isinstance(other, QCoeff):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return QCoeff._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "QCoeff":
        return QCoeff._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "Scalar") -> "QCoeff":
        if isinstance(other, int):
            other = QCoeff.const(other)
        elif not isinstance(other, QCoeff):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Scalar") -> "QCoeff":
        return (-self) + other

    def __mul__(self, other: "Scalar") -> "QCoeff":
        if isinstance(other, int):
            if not other:
                return QCoeff._raw({})
            return QCoeff._raw({key: c * other for key, c in self._terms.items()})
        if not isinstance(other, QCoeff):
            return NotImplemented
        if not self._terms or not other._terms:
            return QCoeff._raw({})
        acc: dict[_Key, int] = defaultdict(int)
        for (k1, j1), c1 in self._terms.items():
            for (k2, j2), c2 in other._terms.items():
                acc[(k1 + k2, j1 + j2)] += c1 * c2
        return QCoeff._raw({key: c for key, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QCoeff":
        if e < 0:
            k = self.unit_exponent()
            if k is None:
                raise ArithmeticError(f"{self} is not a unit of Z[q^(±1/2)]")
            return QCoeff.q_half(k * e)
        result = QCoeff.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "QCoeff":
        """Multiply by ``q^(k/2)``."""
        if not k:
            return self
        return QCoeff._raw({(e + k, j): c for (e, j), c in self._terms.items()})

    # -- specialization -----------------------------------------------------

    def at_q_one(self) -> dict[int, int]:
        """Set ``q^{1/2} = 1``; returns the resulting polynomial in ``h`` as ``{power: coeff}``."""
        out: dict[int, int] = defaultdict(int)
        for (_, j), c in self._terms.items():
            out[j] += c
        return {j: c for j, c in out.items() if c}

    def substitute_h(self, value: "QCoeff") -> "QCoeff":
        """Replace ``h`` by another coefficient."""
        out = QCoeff._raw({})
        for (k, j), c in self._terms.items():
            out = out + (value ** j).shift(k) * c
        return out

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QCoeff.const(other)
        if not isinstance(other, QCoeff):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text form ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[_Key, int]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, ((k, j), c) in enumerate(self.sorted_terms()):
            body = _monomial_text(abs(c), k, j)
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"QCoeff('{self}')"

    @classmethod
    def parse(cls, text: str) -> "QCoeff":
        """Parse the canonical text form (and some looser spellings)."""
        s = text.replace(" ", "")
        if not s:
            raise InputError("empty coefficient string")
        if s[0] not in "+-":
            s = "+" + s
        out = QCoeff._raw({})
        for sign, body in _split_terms(s, text):
            out = out + _parse_monomial(body, text) * sign
        return out


Scalar = Union[QCoeff, int]


def _q_text(k: int) -> str:
    if k == 0:
        return ""
    if k % 2 == 0:
        e = k // 2
        if e == 1:
            return "q"
        return f"q^{e}" if e > 0 else f"q^({e})"
    return f"q^({k}/2)"


def _monomial_text(c: int, k: int, j: int) -> str:
    factors = []
    if j:
        factors.append("h" if j == 1 else f"h^{j}")
    if k:
        factors.append(_q_text(k))
    if c != 1 or not factors:
        factors.insert(0, str(c))
    return "*".join(factors)


def _split_terms(s: str, original: str) -> Iterable[tuple[int, str]]:
    depth = 0
    start = 0
    sign = 1
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            if i > start:
                yield sign, s[start:i]
            elif i > 0:
                raise InputError(f"malformed coefficient {original!r}")
            sign = -1 if ch == "-" else 1
            start = i + 1
    if start >= len(s):
        raise InputError(f"malformed coefficient {original!r}")
    yield sign, s[start:]


_Q_EXP = re.compile(r"^q(?:\^(?:(\d+)|\((-?\d+)(?:/(\d+))?\)))?$")
_H_EXP = re.compile(r"^h(?:\^(\d+))?$")


def _parse_monomial(body: str, original: str) -> QCoeff:
    c, k, j = 1, 0, 0
    for factor in body.split("*"):
        if not factor:
            raise InputError(f"malformed coefficient {original!r}")
        if factor.isdigit():
            c *= int(factor)
            continue
        m = _H_EXP.match(factor)
        if m:
            j += int(m.group(1) or 1)
            continue
        m = _Q_EXP.match(factor)
        if m:
            if m.group(1) is not None:
                k += 2 * int(m.group(1))
            elif m.group(2) is not None:
                num = int(m.group(2))
                den = int(m.group(3) or 1)
                if den == 1:
                    k += 2 * num
                elif den == 2:
                    k += num
                else:
                    raise InputError(f"q exponent in {original!r} is not a multiple of 1/2")
            else:
                k += 2
            continue
        raise InputError(f"unrecognized factor {factor!r} in coefficient {original!r}")
    return QCoeff._raw({(k, j): c} if c else {})


def qc_mul(a: Scalar, b: Scalar) -> QCoeff:
    """Product in ``Z[q^{±1/2}]``."""
    return QCoeff.coerce(a) * QCoeff.coerce(b)


def qc_eval_at_one(a: Scalar) -> int:
    """Sum of coefficients, i.e. the value at ``q^{1/2} = 1``.

    Raises :class:`~gencluster.errors.InputError` if ``a`` involves ``h``;
    use :meth:`QCoeff.at_q_one` for that case.
    """
    a = QCoeff.coerce(a)
    if a.has_h():
        raise InputError(f"{a} depends on h; use QCoeff.at_q_one()")
    return sum(c for _, c in a.items())
