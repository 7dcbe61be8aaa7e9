"""Integer Laurent polynomials in one variable ``t``."""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Tuple


class LaurentPoly:
    """Element of ``Z[t, 1/t]`` stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their dictionaries are.  Instances are immutable.

    >>> t = LaurentPoly.t()
    >>> str(t - 1 + t**-1)
    't - 1 + t^-1'
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            if v:
                c[int(e)] = int(v)
        self._c = c

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def monomial(cls, e: int, a: int = 1) -> "LaurentPoly":
        return cls({e: a})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient list starting at exponent ``low``."""
        return cls({low + i: a for i, a in enumerate(coeffs)})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def terms(self) -> List[Tuple[int, int]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        return min(self._c)

    @property
    def max_exp(self) -> int:
        return max(self._c)

    def span(self) -> int:
        return self.max_exp - self.min_exp if self._c else 0

    def dense(self) -> List[int]:
        """Coefficients from ``min_exp`` up to ``max_exp``."""
        if not self._c:
            return []
        lo = self.min_exp
        return [self._c.get(lo + i, 0) for i in range(self.span() + 1)]

    def __call__(self, x):
        from fractions import Fraction

        total = 0
        for e, a in self._c.items():
            total += a * (x ** e if e >= 0 else Fraction(1, x ** -e))
        return total

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        return LaurentPoly({e + k: a for e, a in self._c.items()})

    def invert(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        return LaurentPoly({-e: a for e, a in self._c.items()})

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: Dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, a), = self._c.items()
            if abs(a) != 1:
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * k: 1 if k % 2 == 0 else a})
        result = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises if it does not exist."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        num = self.dense()
        den = other.dense()
        shift = self.min_exp - other.min_exp
        quot = [0] * max(len(num) - len(den) + 1, 0)
        rem = list(num)
        lead = den[-1]
        for i in range(len(quot) - 1, -1, -1):
            top = rem[i + len(den) - 1]
            if top % lead:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            q = top // lead
            quot[i] = q
            if q:
                for j, d in enumerate(den):
                    rem[i + j] -= q * d
        if any(rem):
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return LaurentPoly.from_coeffs(quot, shift)

    def __floordiv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.divmod_exact(other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def to_json(self) -> Dict[str, int]:
        return {str(e): a for e, a in self.terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(a) for e, a in data.items()})

    def __repr__(self):
        return f"LaurentPoly({dict(self.terms())!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)
