"""Exact Laurent polynomials in one variable ``A`` over the integers."""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class ZeroPolynomialError(ValueError):
    """Degree or span requested of the zero polynomial."""


class LaurentPoly:
    """Sparse integer Laurent polynomial; immutable and hashable.

    Coefficients are Python ints, so there is no overflow.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            e, v = int(e), int(v)
            c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in sorted(c.items()) if v}
        self._hash = None

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs, ascending."""
        return list(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have negative powers")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly({e * k: v ** (-k)})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.monomial(other, 0)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    # -- degrees ----------------------------------------------------------

    def maxdeg(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("maximal degree of the zero polynomial is undefined")
        return max(self._c)

    def mindeg(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("minimal degree of the zero polynomial is undefined")
        return min(self._c)

    def span(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("span of the zero polynomial is undefined")
        return self.maxdeg() - self.mindeg()

    # -- formats ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for i, (e, v) in enumerate(self._c.items()):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"A^{e}"
            else:
                body = f"{mag}*A^{e}"
            if i == 0:
                out.append(("-" if v < 0 else "") + body)
            else:
                out.append(("- " if v < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> list[list]:
        return [[e, str(v)] for e, v in self._c.items()]

    @classmethod
    def from_json(cls, data: list) -> "LaurentPoly":
        return cls((int(e), int(v)) for e, v in data)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts ``-A^-2 - A^2``, ``3*A^4 + 1``, ``0``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, int] = {}
        pos = 0
        for m in _TERM.finditer(s):
            if m.start() != pos:
                raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            if m.group(4) is not None:
                coeff = int(m.group(2)) if m.group(2) else 1
                exp = int(m.group(4))
            else:
                if not m.group(2):
                    raise ValueError(f"bad term {m.group(0)!r}")
                coeff, exp = int(m.group(2)), 0
            out[exp] = out.get(exp, 0) + sign * coeff
        if pos != len(s):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        return cls(out)


_TERM = re.compile(r"([+-])(\d+)?(\*?A\^(-?\d+))?")


def _coerce(x: "LaurentPoly | int") -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.monomial(x, 0)
    raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")


def monomial(coeff: int, exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(coeff, exp)


A = LaurentPoly.monomial(1, 1)
DELTA = LaurentPoly({2: -1, -2: -1})  # value of a free loop, -A^2 - A^-2


def span(p: LaurentPoly) -> int:
    return p.span()


def maxdeg(p: LaurentPoly) -> int:
    return p.maxdeg()


def mindeg(p: LaurentPoly) -> int:
    return p.mindeg()
