"""Exact arithmetic on dense integer polynomials.

Coefficients are stored in ascending order (index ``i`` holds the
coefficient of ``x**i``) as Python ints, so nothing here ever rounds.
The module also provides the two sum/difference resultants

    g(x) = Res_y[f(x - y), f(y)]      h(x) = Res_y[f(x + y), f(y)]

whose factorisation patterns encode additive relations among the roots
of ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient {c!r} is not an integer")
        object.__setattr__(self, "coeffs", _strip(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPoly":
        # trusted constructor: coeffs already canonical ints
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def from_desc(cls, coeffs: Iterable[int]) -> "IntPoly":
        """Build from coefficients listed highest power first."""
        return cls(list(coeffs)[::-1])

    @classmethod
    def x(cls) -> "IntPoly":
        return cls._raw((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def desc(self) -> tuple[int, ...]:
        return self.coeffs[::-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __lt__(self, other: "IntPoly") -> bool:
        return sort_key(self) < sort_key(other)

    def __repr__(self) -> str:
        return f"IntPoly.from_desc({list(self.desc())})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mon = "x" if i == 1 else f"x^{i}"
                body = mon if a == 1 else f"{a}*{mon}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations -------------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly._raw(())
            return IntPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return IntPoly._raw(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        out = IntPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x: Rational) -> Rational:
        """Exact evaluation at an integer or rational point."""
        if isinstance(x, Fraction) and x.denominator != 1:
            num, den = x.numerator, x.denominator
            return Fraction(eval_homogeneous(self.coeffs, num, den), den ** self.degree) if self.coeffs else Fraction(0)
        x = int(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- structural transforms ------------------------------------------

    def negate_arg(self) -> "IntPoly":
        """a(-x)."""
        return IntPoly._raw(tuple(-c if i & 1 else c for i, c in enumerate(self.coeffs)))

    def reciprocal(self) -> "IntPoly":
        """x^deg * a(1/x), i.e. the coefficient list reversed."""
        return IntPoly(self.coeffs[::-1])

    def scale_half(self) -> "IntPoly":
        """2^deg * a(x/2)."""
        d = self.degree
        return IntPoly._raw(tuple(c << (d - i) for i, c in enumerate(self.coeffs)))

    def derivative(self) -> "IntPoly":
        return IntPoly._raw(_strip([i * c for i, c in enumerate(self.coeffs)][1:]))

    def shift(self, c: int) -> "IntPoly":
        """a(x + c) via repeated synthetic division (Taylor shift)."""
        return IntPoly._raw(_strip(taylor_shift(self.coeffs, c)))

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        if c == 1:
            return self
        return IntPoly._raw(tuple(x // c for x in self.coeffs))

    def trailing_zeros(self) -> int:
        """Multiplicity of x as a factor."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial")

    def strip_x(self) -> "IntPoly":
        """Divide out every factor of x."""
        return IntPoly._raw(self.coeffs[self.trailing_zeros():])

    # -- text format -------------------------------------------------------

    def to_line(self) -> str:
        return " ".join(str(c) for c in self.desc())

    @classmethod
    def from_line(cls, line: str, degree: int | None = None) -> "IntPoly":
        """Parse descending space-separated integers.

        With ``degree`` given the line must hold exactly ``degree + 1``
        tokens and a nonzero leading entry.
        """
        toks = line.split()
        if not toks:
            raise ValueError("empty polynomial line")
        try:
            vals = [int(t) for t in toks]
        except ValueError as exc:
            raise ValueError(f"non-integer token in {line!r}") from exc
        if degree is not None:
            if len(vals) != degree + 1:
                raise ValueError(f"expected {degree + 1} coefficients, got {len(vals)}")
            if vals[0] == 0:
                raise ValueError("leading coefficient is zero")
        return cls.from_desc(vals)


def sort_key(p: IntPoly) -> tuple:
    return (p.degree, p.desc())


# -- raw coefficient helpers (tuples/lists, ascending) ---------------------

def _mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return tuple(out)


def eval_homogeneous(coeffs: Sequence[int], num: int, den: int) -> int:
    """den^deg * p(num/den) as an exact integer."""
    acc = 0
    dpow = 1
    for c in reversed(coeffs):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def taylor_shift(coeffs: Sequence[int], c: int) -> list[int]:
    a = list(coeffs)
    n = len(a)
    if c == 0:
        return a
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += c * a[j + 1]
    return a


def pseudo_divmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = b.degree
    if a.degree < db:
        return IntPoly._raw(()), a
    lb = b.lc
    bc = b.coeffs
    r = list(a.coeffs)
    delta = a.degree - db
    q = [0] * (delta + 1)
    for k in range(delta, -1, -1):
        top = r[k + db]
        # multiply everything so far by lb, then cancel the top term
        q = [x * lb for x in q]
        q[k] += top
        r = [x * lb for x in r[: k + db]]
        if top:
            for i in range(db):
                r[k + i] -= top * bc[i]
    return IntPoly(q), IntPoly._raw(_strip(r))


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder only (cheaper than pseudo_divmod)."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = b.degree
    if a.degree < db:
        return a
    lb = b.coeffs[-1]
    bc = b.coeffs
    r = list(a.coeffs)
    for k in range(a.degree - db, -1, -1):
        top = r[k + db]
        r = [x * lb for x in r[: k + db]]
        if top:
            for i in range(db):
                r[k + i] -= top * bc[i]
    return IntPoly._raw(_strip(r))


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b when the quotient has integer coefficients; ValueError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    db = b.degree
    if a.degree < db:
        raise ValueError("inexact polynomial division")
    lb = b.coeffs[-1]
    bc = b.coeffs
    r = list(a.coeffs)
    q = [0] * (a.degree - db + 1)
    for k in range(a.degree - db, -1, -1):
        top = r[k + db]
        if top:
            qk, rem = divmod(top, lb)
            if rem:
                raise ValueError("inexact polynomial division")
            q[k] = qk
            for i in range(db + 1):
                r[k + i] -= qk * bc[i]
    if any(r):
        raise ValueError("inexact polynomial division")
    return IntPoly(q)


def divides_in_Q(a: IntPoly, b: IntPoly) -> bool:
    """True iff b = a*q for a rational polynomial q."""
    if a.is_zero():
        raise ValueError("divisor is the zero polynomial")
    if b.is_zero():
        return True
    if a.degree == 0:
        return True
    return prem(b, a).is_zero()


def gcd_primitive(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q with positive leading coefficient.

    Uses the primitive remainder sequence.  A constant result (the unit
    polynomial 1) means the inputs are coprime.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return IntPoly.const(1)
        r = prem(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def is_coprime(a: IntPoly, b: IntPoly) -> bool:
    return gcd_primitive(a, b).degree == 0


# -- squarefree decomposition ----------------------------------------------

@dataclass(frozen=True)
class SquarefreePart:
    factor: IntPoly
    multiplicity: int


def squarefree_decomposition(a: IntPoly) -> list[SquarefreePart]:
    """Yun's algorithm over Q.

    Returns pairwise coprime primitive squarefree factors with strictly
    increasing multiplicities whose product (with multiplicity) equals
    ``a`` up to a rational constant.
    """
    if a.is_zero():
        raise ValueError("squarefree decomposition of zero")
    a = a.primitive()
    if a.degree <= 0:
        return []
    da = a.derivative()
    c = gcd_primitive(a, da)
    w = exact_div(a, c).primitive()
    y = exact_div(da, c)
    z = y - w.derivative()
    parts = []
    i = 1
    while w.degree > 0:
        g = gcd_primitive(w, z)
        if g.degree > 0:
            parts.append(SquarefreePart(g, i))
        w = exact_div(w, g)
        y = exact_div(z, g)
        z = y - w.derivative()
        i += 1
    return parts


def max_multiplicity(a: IntPoly, exclude_x: bool = False) -> int:
    """Largest multiplicity in the squarefree decomposition.

    With ``exclude_x`` the factor x is ignored, i.e. only parts that are
    not a power of x count.
    """
    best = 0
    for part in squarefree_decomposition(a):
        f = part.factor
        if exclude_x and f.strip_x().degree <= 0:
            continue
        best = max(best, part.multiplicity)
    return best


def squarefree_part(a: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors (primitive)."""
    if a.degree <= 0:
        return a.primitive()
    c = gcd_primitive(a, a.derivative())
    return exact_div(a.primitive(), c).primitive() if c.degree > 0 else a.primitive()


# -- resultants --------------------------------------------------------------

def resultant(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) by the subresultant algorithm (exact integers)."""
    if a.is_zero() or b.is_zero():
        return 0
    da, db = a.degree, b.degree
    if da == 0:
        return a.lc ** db
    if db == 0:
        return b.lc ** da
    ca, cb = a.content(), b.content()
    A = IntPoly._raw(tuple(x // ca for x in a.coeffs))
    B = IntPoly._raw(tuple(x // cb for x in b.coeffs))
    t = ca ** db * cb ** da
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree & 1 and B.degree & 1:
            s = -1
    g = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree & 1 and B.degree & 1:
            s = -s
        R = prem(A, B)
        A = B
        if R.is_zero():
            return 0
        div = g * h ** delta
        B = IntPoly._raw(tuple(x // div for x in R.coeffs))
        g = A.coeffs[-1]
        if delta:
            h = g ** delta // h ** (delta - 1)
        if B.degree == 0:
            da = A.degree
            lb = B.coeffs[0]
            if da == 0:
                return s * t
            return s * t * (lb ** da // h ** (da - 1))


def _interpolate(points: Sequence[int], values: Sequence[int]) -> IntPoly:
    """Exact interpolation through consecutive integer points."""
    n = len(points)
    diffs = list(values)
    newton = [diffs[0]]
    # forward differences on unit-spaced nodes; k-th divided difference = Δ^k / k!
    fact = 1
    for k in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        fact *= k
        q, r = divmod(diffs[0], fact)
        if r:
            newton.append(Fraction(diffs[0], fact))
        else:
            newton.append(q)
    # Horner on the Newton basis prod (x - x_j)
    acc: list = [newton[-1]]
    for k in range(n - 2, -1, -1):
        xk = points[k]
        nxt = [0] * (len(acc) + 1)
        for i, c in enumerate(acc):
            nxt[i + 1] += c
            nxt[i] -= xk * c
        nxt[0] += newton[k]
        acc = nxt
    if any(isinstance(c, Fraction) and c.denominator != 1 for c in acc):
        raise ArithmeticError("interpolant has non-integral coefficients")
    return IntPoly(int(c) for c in acc)


def relation_resultants(f: IntPoly) -> tuple[IntPoly, IntPoly]:
    """g = Res_y[f(x-y), f(y)] and h = Res_y[f(x+y), f(y)].

    Evaluated at deg^2 + 1 consecutive integers and interpolated exactly.
    Both results have degree deg(f)^2.
    """
    if f.is_zero():
        raise ValueError("relation resultants of the zero polynomial")
    d = f.degree
    if d < 1:
        raise ValueError("relation resultants need degree >= 1")
    n = d * d + 1
    start = -(n // 2)
    points = list(range(start, start + n))
    gv, hv = [], []
    for x0 in points:
        shifted = f.shift(x0)  # f(x0 + y)
        hv.append(resultant(shifted, f))
        gv.append(resultant(shifted.negate_arg(), f))  # f(x0 - y)
    g = _interpolate(points, gv)
    h = _interpolate(points, hv)
    if g.degree != d * d or h.degree != d * d:
        raise ArithmeticError("unexpected resultant degree")
    return g, h


# -- Sylvester route (cross-check only) --------------------------------------

def _poly_in_y(f: IntPoly, sign: int) -> list[IntPoly]:
    """Coefficients (ascending in y) of f(x + sign*y) as polynomials in x."""
    d = f.degree
    out = [IntPoly() for _ in range(d + 1)]
    # (x + s y)^k = sum_j C(k, j) x^(k-j) (s y)^j
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        for j in range(k + 1):
            coef = c * comb(k, j) * (sign ** j)
            out[j] = out[j] + IntPoly([0] * (k - j) + [coef])
    return out


def relation_resultants_sylvester(f: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Same output as relation_resultants via fraction-free elimination.

    Bareiss elimination on the Sylvester matrix with entries in Z[x];
    intended for cross-checking at small degree.
    """
    d = f.degree
    if d < 1:
        raise ValueError("relation resultants need degree >= 1")
    fy = [IntPoly.const(c) for c in f.coeffs]
    return (
        _sylvester_det(_poly_in_y(f, -1), fy),
        _sylvester_det(_poly_in_y(f, 1), fy),
    )


def _sylvester_det(a: list[IntPoly], b: list[IntPoly]) -> IntPoly:
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = IntPoly()
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    M = rows
    sign = 1
    prev = IntPoly.const(1)
    for k in range(size - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, size):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return IntPoly()
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = _div_poly_exact_q(num, prev)
            M[i][k] = zero
        prev = M[k][k]
    det = M[size - 1][size - 1]
    return det * sign


def _div_poly_exact_q(a: IntPoly, b: IntPoly) -> IntPoly:
    if b.degree == 0:
        c = b.coeffs[0]
        out = []
        for x in a.coeffs:
            q, r = divmod(x, c)
            if r:
                raise ArithmeticError("inexact Bareiss step")
            out.append(q)
        return IntPoly(out)
    return exact_div(a, b)
