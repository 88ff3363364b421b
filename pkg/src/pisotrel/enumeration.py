"""Complete enumeration of Pisot numbers of fixed degree in an interval.

The search walks the integer power sums s_k = theta^k + sum(beta_i^k) of
the conjugates.  Because the d - 1 non-dominant conjugates lie in the
open unit disk, |s_k - theta^k| < d - 1, so each s_k lives in a short
integer range determined by a window around theta, and each choice of
s_k shrinks the window to a k-th root band.  Newton's identities turn
the power sums into coefficients and prune every branch whose
coefficient would be non-integral.

Windows are dyadic rationals L / 2^P with outward rounding, so the
pruning is sound regardless of floating point.  Every leaf is confirmed
by the exact ``is_pisot`` chain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional, Sequence

from .polycore import IntPoly
from .rootcert import PisotRecord, RationalInterval, is_pisot

WORK_BITS = 64
ORACLE_MAX_DEGREE = 5


@dataclass(frozen=True)
class SearchNode:
    """Partial state of the search at depth k = len(power_sums)."""

    power_sums: tuple[int, ...]
    elem_syms: tuple[int, ...]
    theta_window: RationalInterval


def newton_e_from_s(s: Sequence[int], d: int) -> Optional[list[int]]:
    """Elementary symmetric values e_1..e_k from power sums s_1..s_k.

    Returns None as soon as a Newton step k*e_k = sum (-1)^(i-1) e_(k-i) s_i
    is not divisible by k.
    """
    if len(s) > d:
        raise ValueError("more power sums than the degree")
    e = [1]
    for k in range(1, len(s) + 1):
        acc = 0
        for i in range(1, k + 1):
            term = e[k - i] * s[i - 1]
            acc += term if i & 1 else -term
        q, r = divmod(acc, k)
        if r:
            return None
        e.append(q)
    return e[1:]


def poly_from_e(e: Sequence[int]) -> IntPoly:
    """x^d - e1 x^(d-1) + e2 x^(d-2) - ... + (-1)^d e_d."""
    desc = [1] + [(-x if k & 1 else x) for k, x in enumerate(e, start=1)]
    return IntPoly.from_desc(desc)


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2 or k == 1:
        return n
    b = n.bit_length()
    if b < 1000:
        guess = int(n ** (1.0 / k))
    else:
        shift = ((b - 900) // k) * k
        guess = int((n >> shift) ** (1.0 / k)) << (shift // k)
    x = guess + (guess >> 40) + 2
    while x ** k <= n:
        x = 2 * x
    # Newton from above converges monotonically to the floor
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _iroot_ceil(n: int, k: int) -> int:
    r = iroot(n, k)
    return r if r ** k == n else r + 1


def _validate(d: int, iv: RationalInterval) -> None:
    if d < 1:
        raise ValueError("degree must be >= 1")
    if iv.lo is None or iv.hi is None:
        raise ValueError("search interval must be bounded")
    if iv.lo < 1:
        raise ValueError("search interval must lie in (1, oo)")


def enumerate_pisot(d: int, iv: RationalInterval, *, stats: Optional[dict] = None) -> list[PisotRecord]:
    """All Pisot numbers of degree exactly d in iv, sorted by coefficients."""
    _validate(d, iv)
    if d == 1:
        return _integers(iv)
    out = [rec for rec in _search(d, iv, stats) if rec is not None]
    out.sort()
    return out


def _integers(iv: RationalInterval) -> list[PisotRecord]:
    lo = max(2, int(iv.lo))
    out = []
    n = lo
    while n <= iv.hi:
        rec = is_pisot(IntPoly((-n, 1)), iv)
        if rec is not None:
            out.append(rec)
        n += 1
    return out


def _search(d: int, iv: RationalInterval, stats: Optional[dict]) -> Iterator[Optional[PisotRecord]]:
    P = WORK_BITS
    # keep the window resolution well below its expected final width
    while True:
        L0 = (iv.lo.numerator << P) // iv.lo.denominator
        H0 = -((-iv.hi.numerator << P) // iv.hi.denominator)
        if H0 - L0 >= 1 << 8 or iv.lo == iv.hi:
            break
        P *= 2
    m = d - 1
    counters = {"nodes": 0, "leaves": 0}
    binoms = [comb(m, k) for k in range(d + 1)]

    def leaves(e: list[int], s: list[int], L: int, H: int):
        # last coefficient a_d = (-1)^d e_d
        a = [1] + [(-x if k & 1 else x) for k, x in enumerate(e[1:], start=1)]
        # P(x) = x * R(x) + a_d, R has coefficients a (descending)
        r1 = sum(a)
        rm1 = 0
        for i, x in enumerate(a):  # R(-1), a[i] multiplies x^(d-1-i)
            rm1 += -x if (d - 1 - i) & 1 else x
        # |a_d| = theta * prod|beta| < theta <= hi
        amax = -((-H) >> P) - 1
        lo_ad, hi_ad = -amax, amax
        # P(1) < 0
        hi_ad = min(hi_ad, -r1 - 1)
        # (-1)^d P(-1) > 0 with P(-1) = -R(-1) + a_d
        if d % 2 == 0:
            lo_ad = max(lo_ad, rm1 + 1)
        else:
            hi_ad = min(hi_ad, rm1 - 1)
        # P(lo) <= 0 <= P(hi) on the window
        if L >= 1 << P:
            xr = _eval_scaled(a, L, P)  # 2^(dP) * lo*R(lo)
            hi_ad = min(hi_ad, (-xr) >> (d * P))
        xr = _eval_scaled(a, H, P)
        lo_ad = max(lo_ad, -((xr) >> (d * P)))
        if lo_ad > hi_ad:
            return
        sgn = -1 if d % 2 == 0 else 1  # k*e_k = c + sgn*s_k with sign (-1)^(k-1)
        c = 0
        for i in range(1, d):
            term = e[d - i] * s[i - 1]
            c += term if i & 1 else -term
        Ld = L ** d
        Hd = H ** d
        smin = (Ld >> (d * P)) - m + 1
        smax = -((-Hd) >> (d * P)) + m - 1
        for ad in range(lo_ad, hi_ad + 1):
            if ad == 0:
                continue
            ed = ad if d % 2 == 0 else -ad
            sd = sgn * (d * ed - c)
            if sd < smin or sd > smax:
                continue
            counters["leaves"] += 1
            poly = IntPoly._raw(tuple(reversed(a + [ad])))
            yield is_pisot(poly, iv)

    def rec(k: int, e: list[int], s: list[int], L: int, H: int):
        if k == d:
            yield from leaves(e, s, L, H)
            return
        kP = k * P
        Lk = L ** k
        Hk = H ** k
        # |s_k - theta^k| < m with lo <= theta <= hi
        smin = (Lk >> kP) - m + 1
        smax = -((-Hk) >> kP) + m - 1
        c = 0
        for i in range(1, k):
            term = e[k - i] * s[i - 1]
            c += term if i & 1 else -term
        sgn = 1 if k & 1 else -1
        # k*e_k = c + sgn*s_k, and |e_k| <= C(m,k) + hi*C(m,k-1)
        ebound = binoms[k] + ((H * binoms[k - 1]) >> P) + 1
        if sgn > 0:
            e_lo = -((-(smin + c)) // k)
            e_hi = (smax + c) // k
        else:
            e_lo = -((-(c - smax)) // k)
            e_hi = (c - smin) // k
        e_lo = max(e_lo, -ebound)
        e_hi = min(e_hi, ebound)
        for ek in range(e_lo, e_hi + 1):
            sk = sgn * (k * ek - c)
            nl, nh = L, H
            top = sk + m
            if top <= 1:
                continue
            rh = _iroot_ceil(top << kP, k)
            if rh < nh:
                nh = rh
            bot = sk - m
            if bot > 0:
                rl = iroot(bot << kP, k)
                if rl > nl:
                    nl = rl
            if nl > nh:
                continue
            counters["nodes"] += 1
            e.append(ek)
            s.append(sk)
            yield from rec(k + 1, e, s, nl, nh)
            e.pop()
            s.pop()

    yield from rec(1, [1], [], L0, H0)
    if stats is not None:
        stats.update(counters)


def _eval_scaled(a_desc: Sequence[int], X: int, P: int) -> int:
    """2^(dP) * x * R(x) for x = X / 2^P, R with descending coefficients a_desc."""
    n = len(a_desc)  # R has degree n - 1 = d - 1
    acc = 0
    spow = 1
    for c in a_desc:
        acc = acc * X + c * spow
        spow <<= P
    # acc = 2^((n-1)P) R(x); multiply by x * 2^P
    return acc * X


def walk_nodes(d: int, iv: RationalInterval) -> Iterator[SearchNode]:
    """Yield every interior search node (for inspection and tests)."""
    _validate(d, iv)
    P = WORK_BITS
    m = d - 1
    L0 = (iv.lo.numerator << P) // iv.lo.denominator
    H0 = -((-iv.hi.numerator << P) // iv.hi.denominator)
    stack = [((), L0, H0)]
    scale = Fraction(1, 1 << P)
    while stack:
        s, L, H = stack.pop()
        k = len(s) + 1
        if k > d:
            continue
        for sk in range((L ** k >> (k * P)) - m + 1, -((-(H ** k)) >> (k * P)) + m):
            ns = s + (sk,)
            e = newton_e_from_s(ns, d)
            if e is None:
                continue
            if sk + m <= 1:
                continue
            nh = min(H, _iroot_ceil((sk + m) << (k * P), k))
            nl = max(L, iroot((sk - m) << (k * P), k)) if sk - m > 0 else L
            if nl > nh:
                continue
            yield SearchNode(ns, tuple(e), RationalInterval.closed(nl * scale, nh * scale))
            stack.append((ns, nl, nh))


def elementary_bound(d: int, k: int, B: Fraction) -> int:
    """Integer bound on |e_k| for d - 1 roots in the unit disk and one of modulus <= B."""
    return int(comb(d - 1, k) + B * comb(d - 1, k - 1))


def oracle_enumerate(d: int, iv: RationalInterval) -> list[PisotRecord]:
    """Brute force over the box of admissible coefficient vectors."""
    _validate(d, iv)
    if d > ORACLE_MAX_DEGREE:
        raise ValueError(f"oracle_enumerate is limited to degree <= {ORACLE_MAX_DEGREE}")
    B = iv.hi
    bounds = [elementary_bound(d, k, B) for k in range(1, d + 1)]
    out = []
    for e in itertools.product(*(range(-b, b + 1) for b in bounds)):
        rec = is_pisot(poly_from_e(e), iv)
        if rec is not None:
            out.append(rec)
    out.sort()
    return out
