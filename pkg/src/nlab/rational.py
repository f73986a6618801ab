"""Exact scalars: polynomials in the formal parameter h over the rationals.

All algebraic identities in this package are coefficient-wise in h, so h is
never specialized to a number; every scalar is a QPoly.
"""

from __future__ import annotations

from fractions import Fraction


class QPoly:
    """Polynomial in h with Fraction coefficients, stored sparsely.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        # coeffs: dict {exponent: Fraction-like}; zeros are dropped.
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(k)] = v
        self.c = c

    @staticmethod
    def zero():
        return QPoly()

    @staticmethod
    def one():
        return QPoly({0: 1})

    @staticmethod
    def const(v) -> "QPoly":
        return QPoly({0: Fraction(v)})

    @staticmethod
    def h_power(k, coeff=1) -> "QPoly":
        return QPoly({k: Fraction(coeff)})

    def is_zero(self):
        return not self.c

    def coeff(self, k) -> Fraction:
        """Coefficient of h^k."""
        return self.c.get(k, Fraction(0))

    def degree(self):
        return max(self.c) if self.c else -1

    def __add__(self, other):
        c = dict(self.c)
        for k, v in other.c.items():
            w = c.get(k, 0) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        out = QPoly()
        out.c = c
        return out

    def __neg__(self):
        out = QPoly()
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QPoly):
            c = {}
            for k1, v1 in self.c.items():
                for k2, v2 in other.c.items():
                    k = k1 + k2
                    w = c.get(k, 0) + v1 * v2
                    if w:
                        c[k] = w
                    else:
                        c.pop(k, None)
            out = QPoly()
            out.c = c
            return out
        return self.scale(other)

    def scale(self, v) -> "QPoly":
        v = Fraction(v)
        if not v:
            return QPoly()
        out = QPoly()
        out.c = {k: w * v for k, w in self.c.items()}
        return out

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self == QPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return "QPoly(%s)" % self.str()

    def str(self) -> str:
        """Render like `3/2 h^2` or `1 - 1/4 h^2`; `0` when zero."""
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            v = self.c[k]
            parts.append((v, k))
        out = []
        for i, (v, k) in enumerate(parts):
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            body = monomial_str(mag, k)
            if i == 0:
                out.append(body if v > 0 else "-" + body)
            else:
                out.append("%s %s" % (sign, body))
        return " ".join(out)


def monomial_str(mag: Fraction, k: int) -> str:
    if k == 0:
        return str(mag)
    hpart = "h" if k == 1 else "h^%d" % k
    if mag == 1:
        return hpart
    return "%s %s" % (mag, hpart)


ZERO = QPoly.zero()
ONE = QPoly.one()
