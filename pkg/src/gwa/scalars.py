"""Exact field scalars: arbitrary-precision rationals and cyclotomic numbers.

A scalar is either a ``fractions.Fraction`` (the base field, always reduced
with positive denominator) or a :class:`Cyclotomic`, an element of the
extension obtained by adjoining a primitive m-th root of unity, represented
as the canonical residue modulo the m-th cyclotomic polynomial.  Mixed
arithmetic coerces rationals into the cyclotomic field; two cyclotomic
scalars of different orders do not mix.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Rational = Fraction

#: Largest root-of-unity order accepted by default; phi(m) growth makes
#: matrices over larger fields too expensive to be useful here.
DEFAULT_ORDER_CAP = 64


class ScalarFieldError(ValueError):
    """Incompatible or unsupported scalar fields (e.g. mixing zeta3 with zeta4)."""


def _poly_divmod_int(num, den):
    """Exact division of integer coefficient lists (ascending), den monic."""
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] -= c * dj
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the m-th cyclotomic polynomial.

    Computed by dividing x^m - 1 by the product of the lower cyclotomic
    polynomials over the proper divisors of m; the division is exact in Z[x].
    """
    if m < 1:
        raise ScalarFieldError(f"cyclotomic order must be >= 1, got {m}")
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            phi_d = cyclotomic_coeffs(d)
            den = [
                sum(den[i] * phi_d[k - i] for i in range(max(0, k - len(phi_d) + 1), min(k + 1, len(den))))
                for k in range(len(den) + len(phi_d) - 1)
            ]
    quot, rem = _poly_divmod_int(num, den)
    assert not rem, f"cyclotomic division left a remainder for m={m}"
    return tuple(quot)


def euler_phi(m: int) -> int:
    return len(cyclotomic_coeffs(m)) - 1


def _reduce_mod_phi(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_coeffs(m)
    deg = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            for j in range(deg + 1):
                work[i - deg + j] -= c * phi[j]
    work = work[:deg]
    work += [Fraction(0)] * (deg - len(work))
    return tuple(Fraction(c) for c in work)


class Cyclotomic:
    """Element of the field generated by a primitive ``order``-th root of unity.

    ``coeffs`` is the canonical representative modulo the cyclotomic
    polynomial: a tuple of ``phi(order)`` rationals, ascending powers of the
    root.  All arithmetic is field arithmetic (the cyclotomic polynomial is
    irreducible over the rationals).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs, reduce: bool = True):
        if order < 1:
            raise ScalarFieldError(f"order must be positive, got {order}")
        vals = [Fraction(c) for c in coeffs]
        if reduce:
            self.coeffs = _reduce_mod_phi(vals, order)
        else:
            self.coeffs = tuple(vals)
        self.order = order

    @classmethod
    def _make(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        """Internal constructor: coeffs already reduced Fractions."""
        self = object.__new__(cls)
        self.order = order
        self.coeffs = coeffs
        return self

    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        d = euler_phi(order)
        return cls(order, (Fraction(value),) + (Fraction(0),) * (d - 1), reduce=False)

    @classmethod
    def zeta(cls, order: int, power: int = 1, cap: int = DEFAULT_ORDER_CAP) -> "Cyclotomic":
        if order > cap:
            raise ScalarFieldError(f"order {order} exceeds the configured cap {cap}")
        d = euler_phi(order)
        power %= order
        if power < d:
            coeffs = [Fraction(0)] * d
            coeffs[power] = Fraction(1)
            return cls(order, coeffs, reduce=False)
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return cls(order, coeffs)

    def _pair(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ScalarFieldError(
                    f"cannot mix zeta{self.order} with zeta{other.order} scalars"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._make(
            self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._make(
            self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._make(
            self.order, tuple(b - a for a, b in zip(self.coeffs, o.coeffs))
        )

    def __mul__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        mine = self.coeffs
        if len(mine) == 2:
            # Quadratic field: multiply through z^2 = -b z - c directly.
            phi = cyclotomic_coeffs(self.order)
            a0, a1 = mine
            b0, b1 = o.coeffs
            t = a1 * b1
            return Cyclotomic._make(
                self.order, (a0 * b0 - phi[0] * t, a0 * b1 + a1 * b0 - phi[1] * t)
            )
        n = len(mine)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(mine):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic(self.order, prod)

    __rmul__ = __mul__

    def __neg__(self):
        return Cyclotomic._make(self.order, tuple(-a for a in self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                return self.is_rational() and other.is_rational() and \
                    self.rational_value() == other.rational_value()
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.order, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ScalarFieldError(f"{self} is not rational")
        return self.coeffs[0]

    def inverse(self) -> "Cyclotomic":
        """Field inverse via the extended Euclidean algorithm against Phi_m."""
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        # Invariant: s1*self = r1 modulo Phi_m; stop when r1 is a constant.
        phi = [Fraction(c) for c in cyclotomic_coeffs(self.order)]
        r0, r1 = phi, [c for c in self.coeffs]
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _frac_divmod(r0, r1)
            r0, r1 = r1, rem
            while r1 and not r1[-1]:
                r1.pop()
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
        if not r1:
            raise ScalarFieldError("cyclotomic polynomial not irreducible?")
        c = r1[0]
        inv = [v / c for v in s1]
        return Cyclotomic(self.order, inv)

    def __truediv__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"Cyclotomic({self.order}, {list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("z" if c == 1 else ("-z" if c == -1 else f"{c}*z"))
            else:
                base = f"z^{i}"
                terms.append(base if c == 1 else (f"-{base}" if c == -1 else f"{c}*{base}"))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"({body}) @ zeta{self.order}"


def _frac_divmod(num, den):
    num = list(num)
    while den and not den[-1]:
        den = den[:-1]
    deg_d = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] -= c * dj
    while num and not num[-1]:
        num.pop()
    return quot, num


def _frac_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1 if p and q else 0)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _frac_sub(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else Fraction(0)) - (q[i] if i < len(q) else Fraction(0))
            for i in range(n)]


def zeta(order: int, power: int = 1, cap: int = DEFAULT_ORDER_CAP) -> Cyclotomic:
    """A primitive ``order``-th root of unity raised to ``power``."""
    return Cyclotomic.zeta(order, power, cap)


def scalar_inverse(x):
    if isinstance(x, Cyclotomic):
        return x.inverse()
    x = Fraction(x)
    if not x:
        raise ZeroDivisionError("rational division by zero")
    return 1 / x


def field_order(x) -> int | None:
    """None for rational scalars, the root-of-unity order for cyclotomic ones."""
    return x.order if isinstance(x, Cyclotomic) else None


def common_field_order(values) -> int | None:
    order = None
    for v in values:
        m = field_order(v)
        if m is None:
            continue
        if order is None:
            order = m
        elif order != m:
            raise ScalarFieldError(f"mixed cyclotomic orders {order} and {m}")
    return order


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarFieldError(f"cannot parse rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(x)
