"""Exact and certified root location for integer polynomials.

Everything that decides a yes/no question (real-root counts, unit-disk
counts, unit-circle roots, Pisot membership) runs in exact integer or
rational arithmetic.  Numeric root approximations only appear inside
``certified_roots``, where each one is wrapped in a disk whose radius is
proven with exact Gaussian-rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
import numpy as np

from .polycore import (
    IntPoly,
    eval_homogeneous,
    exact_div,
    gcd_primitive,
    prem,
    squarefree_decomposition,
    squarefree_part,
)

Number = Union[int, Fraction]

DEFAULT_THETA_RADIUS = Fraction(1, 10**12)


def _frac(x) -> Optional[Fraction]:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class RationalInterval:
    """Interval with exact rational endpoints; ``None`` means unbounded."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo is None:
            object.__setattr__(self, "lo_open", True)
        if self.hi is None:
            object.__setattr__(self, "hi_open", True)
        if self.lo is not None and self.hi is not None:
            if self.lo > self.hi:
                raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
            if self.lo == self.hi and (self.lo_open or self.hi_open):
                raise ValueError("degenerate interval must be closed at both ends")

    @classmethod
    def open(cls, lo, hi) -> "RationalInterval":
        return cls(lo, hi, True, True)

    @classmethod
    def closed(cls, lo, hi) -> "RationalInterval":
        return cls(lo, hi, False, False)

    def contains(self, x: Number) -> bool:
        if self.lo is not None and (x < self.lo or (self.lo_open and x == self.lo)):
            return False
        if self.hi is not None and (x > self.hi or (self.hi_open and x == self.hi)):
            return False
        return True

    def is_subset(self, other: "RationalInterval") -> bool:
        if other.lo is not None:
            if self.lo is None or self.lo < other.lo:
                return False
            if self.lo == other.lo and other.lo_open and not self.lo_open:
                return False
        if other.hi is not None:
            if self.hi is None or self.hi > other.hi:
                return False
            if self.hi == other.hi and other.hi_open and not self.hi_open:
                return False
        return True

    @property
    def width(self) -> Optional[Fraction]:
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{lo}, {hi}{right}"


@dataclass(frozen=True)
class RootEnclosure:
    """Closed disk (or real segment) holding exactly one root.

    The center is a dyadic Gaussian rational ``re + i*im``.
    """

    re: Fraction
    im: Fraction
    radius: Fraction
    is_real: bool

    @property
    def center(self) -> complex:
        return complex(float(self.re), float(self.im))

    def modulus_bounds(self) -> tuple[float, float]:
        m = abs(self.center)
        r = float(self.radius)
        return max(0.0, m - r), m + r


@dataclass(frozen=True)
class PisotRecord:
    poly: IntPoly
    theta: RootEnclosure
    degree: int

    @property
    def theta_value(self) -> float:
        return float(self.theta.re)

    def sort_key(self) -> tuple:
        return (self.degree, self.poly.desc())

    def __lt__(self, other: "PisotRecord") -> bool:
        return self.sort_key() < other.sort_key()

    def to_line(self) -> str:
        enc = self.theta
        if enc.radius > Fraction(1, 10**16):
            # tighten so the printed digits are correctly rounded in practice
            enc = _dominant_root(self.poly, Fraction(1, 10**16))
        return f"{self.degree} {self.poly.to_line()} | {_fmt_decimal(enc.re, 12)}"

    @classmethod
    def from_line(cls, line: str) -> "PisotRecord":
        """Parse ``<degree> <coeffs descending> | <theta>``.

        The decimal is informational; theta is re-certified from the
        coefficients.
        """
        head, _, _ = line.partition("|")
        toks = head.split()
        if not toks:
            raise ValueError("empty record line")
        try:
            d = int(toks[0])
        except ValueError as exc:
            raise ValueError(f"bad degree token {toks[0]!r}") from exc
        poly = IntPoly.from_line(" ".join(toks[1:]), degree=d)
        rec = is_pisot(poly, RationalInterval(1, None))
        if rec is None:
            raise ValueError(f"not a Pisot polynomial: {poly}")
        return rec


def _fmt_decimal(x: Fraction, places: int) -> str:
    scaled = round(x * 10**places)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


# -- Sturm sequences ---------------------------------------------------------

def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sign-faithful Sturm chain p, p', -rem, ... with positive rescaling."""
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = prem(a, b)
        # prem multiplies by lc(b)^(deg a - deg b + 1); undo a negative factor
        if b.lc < 0 and (a.degree - b.degree + 1) % 2 == 1:
            r = -r
        if r.is_zero():
            break
        r = -r
        c = r.content()
        if c > 1:
            r = IntPoly._raw(tuple(x // c for x in r.coeffs))
        seq.append(r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _signs_at(seq: Sequence[IntPoly], x: Optional[Fraction], at_pos_inf: bool) -> list[int]:
    if x is None:
        out = []
        for q in seq:
            if q.is_zero():
                out.append(0)
            elif at_pos_inf:
                out.append(_sign(q.lc))
            else:
                out.append(_sign(q.lc) * (-1 if q.degree & 1 else 1))
        return out
    num, den = x.numerator, x.denominator
    return [_sign(eval_homogeneous(q.coeffs, num, den)) for q in seq]


def sturm_count(p: IntPoly, iv: RationalInterval) -> int:
    """Number of distinct real roots of p in iv (exact).

    Endpoints that happen to be roots are handled directly by the
    (a, b] counting rule of Sturm's theorem, then corrected for the
    open/closed flags, so no perturbation is ever needed.
    """
    if p.is_zero():
        raise ValueError("sturm_count of zero polynomial")
    if p.degree <= 0:
        return 0
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    va = _variations(_signs_at(seq, iv.lo, at_pos_inf=False))
    vb = _variations(_signs_at(seq, iv.hi, at_pos_inf=True))
    count = va - vb
    if iv.lo is not None and not iv.lo_open and sq(iv.lo) == 0:
        count += 1
    if iv.hi is not None and iv.hi_open and sq(iv.hi) == 0:
        count -= 1
    return count


# -- unit circle and unit disk ----------------------------------------------

def _chebyshev_image(s: IntPoly) -> IntPoly:
    """S with s(x) = x^m S(x + 1/x) for a palindromic s of degree 2m."""
    m = s.degree // 2
    c = s.coeffs
    # T_k(w) = x^k + x^-k as polynomials in w = x + 1/x
    t_prev = IntPoly.const(2)
    t_cur = IntPoly.x()
    acc = IntPoly.const(c[m])
    w = IntPoly.x()
    for k in range(1, m + 1):
        if k > 1:
            t_prev, t_cur = t_cur, w * t_cur - t_prev
        acc = acc + t_cur * c[m + k]
    return acc


def has_root_on_unit_circle(p: IntPoly) -> bool:
    """Exact test for a root of modulus exactly 1."""
    if p.is_zero() or p.coeffs[0] == 0:
        raise ValueError("has_root_on_unit_circle needs a nonzero constant term")
    if p.degree <= 0:
        return False
    c = gcd_primitive(p, p.reciprocal())
    if c.degree <= 0:
        return False
    s = squarefree_part(c)
    for r in (1, -1):
        if s(r) == 0:
            return True
    if s.degree % 2:
        raise ArithmeticError("common part with reciprocal has odd degree after removing x+-1")
    if s.reciprocal() != s and s.reciprocal() != -s:
        raise ArithmeticError("common part with reciprocal is not self-reciprocal")
    S = _chebyshev_image(s)
    return sturm_count(S, RationalInterval.closed(-2, 2)) > 0


def _schur_cohn(coeffs: list[int], max_repairs: int = 4) -> tuple[int, Optional[list[int]]]:
    """Run the exact Schur-Cohn reduction.

    Returns (roots counted so far, remaining polynomial or None).  A tie
    |q(0)| == |lc(q)| is broken by multiplying q by (2z - 1), which adds
    one known root inside the disk.  Self-inversive factors make the tie
    recur; after ``max_repairs`` ties the remaining polynomial is handed
    back for numeric counting.
    """
    q = coeffs
    count = 0
    repairs = 0
    while len(q) > 1:
        a0, an = q[0], q[-1]
        if abs(a0) == abs(an):
            if repairs == max_repairs:
                return count, q
            repairs += 1
            # q * (2z - 1)
            q = [-q[0]] + [2 * q[i - 1] - q[i] for i in range(1, len(q))] + [2 * q[-1]]
            count -= 1
            continue
        n = len(q) - 1
        if abs(an) > abs(a0):
            # an*q - a0*q* vanishes at 0; same number of disk roots as q
            r = [an * q[i] - a0 * q[n - i] for i in range(1, n + 1)]
            count += 1
        else:
            r = [a0 * q[i] - an * q[n - i] for i in range(n)]
            while r and r[-1] == 0:
                r.pop()
        g = 0
        for x in r:
            g = math.gcd(g, x)
            if g == 1:
                break
        if g > 1:
            r = [x // g for x in r]
        q = r
    return count, None


def count_in_open_unit_disk(p: IntPoly) -> int:
    """Roots of modulus < 1 counted with multiplicity.

    Requires that p has no root on the unit circle; a ValueError is
    raised when that is violated.
    """
    if p.is_zero():
        raise ValueError("count of zero polynomial")
    count, rest = _schur_cohn(list(p.coeffs))
    if rest is None:
        return count
    return count + _numeric_disk_count(IntPoly(rest))


def _numeric_disk_count(q: IntPoly) -> int:
    k = q.trailing_zeros()
    q = q.strip_x()
    total = k
    for part in squarefree_decomposition(q):
        f = part.factor
        if has_root_on_unit_circle(f):
            raise ValueError("polynomial has a root on the unit circle")
        eps = Fraction(1, 2**20)
        while True:
            encs = certified_roots(f, eps)
            inside = outside = 0
            for e in encs:
                lo, hi = _modulus_bounds_exact(e)
                if hi < 1:
                    inside += 1
                elif lo > 1:
                    outside += 1
            if inside + outside == len(encs):
                total += inside * part.multiplicity
                break
            eps /= 2**20
    return total


def _modulus_bounds_exact(e: RootEnclosure) -> tuple[Fraction, Fraction]:
    # |c| - r <= |z| <= |c| + r, with |c| bracketed by integer square roots
    m2 = e.re * e.re + e.im * e.im
    scale = 2**80
    s = math.isqrt(int(m2 * scale * scale))
    lo = Fraction(s, scale) - e.radius
    hi = Fraction(s + 1, scale) + e.radius
    return lo, hi


# -- certified complex roots --------------------------------------------------

def _exact(x) -> Fraction:
    if isinstance(x, mpmath.mpf):
        sign, man, exp, _ = x._mpf_
        if not man:
            return Fraction(0)
        v = Fraction(man) * Fraction(2) ** exp
        return -v if sign else v
    return Fraction(float(x))


def _isqrt_up(num: int, den: int, frac_bits: int = 64) -> Fraction:
    """Dyadic upper bound of sqrt(num/den)."""
    scale = 1 << frac_bits
    q = -((-num * scale * scale) // den)
    r = math.isqrt(q)
    if r * r < q:
        r += 1
    return Fraction(r, scale)


def certified_roots(p: IntPoly, eps: Number = Fraction(1, 10**12)) -> list[RootEnclosure]:
    """Pairwise disjoint disks of radius <= eps, one per root.

    Approximations come from numpy, then mpmath at escalating precision;
    each disk D(z_i, n|W_i|) with the
    Weierstrass correction W_i = p(z_i) / (lc * prod_{j != i}(z_i - z_j))
    is evaluated exactly over the Gaussian rationals.  When all disks are
    pairwise disjoint each holds exactly one root.  Precision doubles
    until disjointness and the radius target both hold.

    Ordering: by decreasing real part, then decreasing imaginary part.
    """
    if p.degree < 1:
        return []
    eps = Fraction(eps)
    if gcd_primitive(p, p.derivative()).degree > 0:
        raise ValueError("certified_roots requires a squarefree polynomial")
    n = p.degree
    if n == 1:
        c0, c1 = p.coeffs
        z = Fraction(-c0, c1)
        return [RootEnclosure(z, Fraction(0), Fraction(0), True)]
    encs = _try_certify(p, _float_roots(p), 60, Fraction(1, 2**20), eps)
    bits = 64 + 4 * n
    while encs is None:
        snap = Fraction(1, 2 ** (bits // 2))
        encs = _try_certify(p, _approx_roots(p, bits), bits, snap, eps)
        bits *= 2
        if encs is None and bits > 1 << 16:
            raise ArithmeticError("root certification did not converge")
    encs.sort(key=lambda e: (-e.re, -e.im))
    return encs


def _float_roots(p: IntPoly) -> list[complex]:
    return list(np.roots([float(c) for c in p.desc()]))


def _approx_roots(p: IntPoly, bits: int) -> list:
    with mpmath.workprec(bits + 20):
        coeffs = [mpmath.mpf(c) for c in p.desc()]
        try:
            return mpmath.polyroots(coeffs, maxsteps=200 + 10 * p.degree, extraprec=bits)
        except mpmath.libmp.NoConvergence:
            return mpmath.polyroots(coeffs, maxsteps=2000 + 100 * p.degree, extraprec=2 * bits)


def _try_certify(p: IntPoly, approx: Sequence, bits: int, snap: Fraction, eps: Fraction) -> Optional[list[RootEnclosure]]:
    n = p.degree
    scale = 1 << bits
    pts = []
    for z in approx:
        # Fraction(...) of an mpf or float is exact, so rounding is explicit here
        re_f = _exact(z.real)
        im_f = _exact(z.imag)
        re_i = round(re_f * scale)
        im_i = 0 if abs(im_f) < snap else round(im_f * scale)
        pts.append((re_i, im_i))
    if len(set(pts)) != n:
        return None
    # exact Gaussian-integer arithmetic, all values scaled by 2^bits
    cs = p.coeffs
    lc = cs[-1]
    out = []
    for i, (a, b) in enumerate(pts):
        # scale^n * p(z)
        pr, pi = 0, 0
        spow = 1
        for c in reversed(cs):
            pr, pi = pr * a - pi * b + c * spow, pr * b + pi * a
            spow *= scale
        qr, qi = 1, 0
        for j, (a2, b2) in enumerate(pts):
            if j == i:
                continue
            dr, di = a - a2, b - b2
            qr, qi = qr * dr - qi * di, qr * di + qi * dr
        # |W|^2 = |scale^n p(z)|^2 / (lc^2 |scale^(n-1) prod|^2 * scale^2)
        num = pr * pr + pi * pi
        den = lc * lc * (qr * qr + qi * qi) * scale * scale
        if den == 0:
            return None
        rad = n * _isqrt_up(num, den, bits + 16)
        if rad > eps:
            return None
        out.append(RootEnclosure(Fraction(a, scale), Fraction(b, scale), rad, b == 0))
    # disjointness, and non-real disks must avoid the real axis
    for i in range(n):
        ei = out[i]
        if not ei.is_real and abs(ei.im) <= ei.radius:
            return None
        for j in range(i + 1, n):
            ej = out[j]
            dx = ei.re - ej.re
            dy = ei.im - ej.im
            rs = ei.radius + ej.radius
            if dx * dx + dy * dy <= rs * rs:
                return None
    return out


# -- Pisot decision ------------------------------------------------------------

def _dominant_root(p: IntPoly, radius: Fraction = DEFAULT_THETA_RADIUS) -> RootEnclosure:
    """Enclose the unique root > 1 of a polynomial negative on (1, theta)."""
    approx = max(r.real for r in np.roots([float(c) for c in p.desc()]) if abs(r.imag) < 1e-6)
    lo = Fraction(approx) - Fraction(1, 10**9)
    hi = Fraction(approx) + Fraction(1, 10**9)
    if not (lo > 1 and p(lo) < 0 < p(hi)):
        lo = Fraction(1)
        hi = Fraction(1 + max(abs(c) for c in p.coeffs[:-1]))
    while hi - lo > 2 * radius:
        mid = (lo + hi) / 2
        # snap to a dyadic with a short denominator
        den = 1 << max(1, (int(1 / (hi - lo))).bit_length() + 2)
        mid = Fraction(round(mid * den), den)
        if not lo < mid < hi:
            mid = (lo + hi) / 2
        if p(mid) < 0:
            lo = mid
        else:
            hi = mid
    return RootEnclosure((lo + hi) / 2, Fraction(0), (hi - lo) / 2, True)


def _quick_reject(c: Sequence[int], d: int) -> bool:
    """Cheap necessary conditions for a monic Pisot polynomial."""
    if c[0] == 0:
        return True
    # p(1) < 0 and (-1)^d p(-1) > 0
    if sum(c) >= 0:
        return True
    alt = 0
    for i, x in enumerate(c):
        alt += -x if i & 1 else x
    if (alt if d % 2 == 0 else -alt) <= 0:
        return True
    return False


def _theta_in(p: IntPoly, iv: RationalInterval) -> bool:
    """Is the root > 1 inside iv, for p negative on (1, theta) and positive after."""
    if iv.lo is not None and iv.lo > 1:
        v = p(iv.lo)
        if v > 0 or (v == 0 and iv.lo_open):
            return False
    if iv.hi is not None:
        if iv.hi <= 1:
            return False
        v = p(iv.hi)
        if v < 0 or (v == 0 and iv.hi_open):
            return False
    return True


def is_pisot(p: IntPoly, iv: RationalInterval) -> Optional[PisotRecord]:
    """Return a PisotRecord iff p is the minimal polynomial of a Pisot
    number lying in iv, else None."""
    if p.degree < 1:
        raise ValueError("is_pisot needs degree >= 1")
    if not p.is_monic():
        raise ValueError("is_pisot needs a monic polynomial")
    d = p.degree
    if d == 1:
        n = -p.coeffs[0]
        if n >= 2 and iv.contains(n):
            return PisotRecord(p, RootEnclosure(Fraction(n), Fraction(0), Fraction(0), True), 1)
        return None
    c = p.coeffs
    if _quick_reject(c, d):
        return None
    if not _theta_in(p, iv):
        return None
    try:
        inside = count_in_open_unit_disk(p)
    except ValueError:
        return None
    if inside != d - 1:
        return None
    if has_root_on_unit_circle(p):
        return None
    if sturm_count(p, RationalInterval(1, None)) != 1:
        return None
    return PisotRecord(p, _dominant_root(p), d)
