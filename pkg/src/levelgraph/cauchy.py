"""Cauchy indices of real rational functions.

The index of h = num/den at a point s counts the jump of h across s: +1 for a
jump from -inf to +inf, -1 for the reverse, 0 otherwise, with half-integer
one-sided contributions at interval endpoints.  Indices over an interval
[c, d] collect the right-hand contribution at c, the full jumps strictly
inside, and minus the left-hand contribution at d; this makes the interval
index exactly additive when intervals are concatenated, even at poles.

Three evaluation routes are provided:

- ``index_on_interval``: enumerate real poles via the clustering root finder,
  cancel common factors against the numerator, and probe signs next to each
  surviving pole.  Handles poles at the endpoints and infinite endpoints.
- ``index_on_interval_sturm``: signed-remainder (Sturm) chain in floating
  point, evaluated as a sign-variation difference.  Fast and exact for
  endpoints that are not poles; refuses pole endpoints.
- ``index_on_interval_exact``: the same chain over ``fractions.Fraction``.
  Every double is a rational number, so this is exact for any float input;
  it exists as an oracle for the other two.

All three return :class:`HalfInteger`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DenominatorIdenticallyZero, IndeterminateSign
from .poly import RealPolynomial, roots

__all__ = [
    "HalfInteger",
    "RationalFunction",
    "index_at_point",
    "index_one_sided",
    "index_on_interval",
    "index_on_interval_sturm",
    "index_on_interval_exact",
]


class HalfInteger:
    """An element of (1/2)Z, stored as twice its value (always an int)."""

    __slots__ = ("twice_value",)

    def __init__(self, twice_value: int):
        if not isinstance(twice_value, int):
            raise TypeError("twice_value must be an int")
        self.twice_value = twice_value

    @classmethod
    def from_int(cls, n: int) -> "HalfInteger":
        return cls(2 * n)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def _twice(self, other) -> int:
        if isinstance(other, HalfInteger):
            return other.twice_value
        if isinstance(other, int):
            return 2 * other
        return NotImplemented

    def __add__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else HalfInteger(self.twice_value + t)

    __radd__ = __add__

    def __sub__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else HalfInteger(self.twice_value - t)

    def __rsub__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else HalfInteger(t - self.twice_value)

    def __neg__(self):
        return HalfInteger(-self.twice_value)

    def __abs__(self):
        return HalfInteger(abs(self.twice_value))

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInteger(self.twice_value * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else self.twice_value == t

    def __lt__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else self.twice_value < t

    def __le__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else self.twice_value <= t

    def __gt__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else self.twice_value > t

    def __ge__(self, other):
        t = self._twice(other)
        return NotImplemented if t is NotImplemented else self.twice_value >= t

    def __hash__(self):
        return hash(self.twice_value / 2)

    def __float__(self):
        return self.twice_value / 2

    def __int__(self):
        if self.twice_value % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice_value // 2

    def __str__(self):
        if self.twice_value % 2 == 0:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"

    def __repr__(self):
        return f"HalfInteger({self.twice_value})"


class RationalFunction:
    """num/den with real polynomial parts; den must not be identically zero.

    No reduction is performed on construction -- common factors are handled
    where they matter, inside the index routines.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: RealPolynomial, den: RealPolynomial):
        if den.is_zero:
            raise DenominatorIdenticallyZero("denominator is the zero polynomial")
        self.num = num
        self.den = den

    def __call__(self, y: float) -> float:
        return self.num(y) / self.den(y)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __repr__(self):
        return f"RationalFunction(num={self.num.coeffs}, den={self.den.coeffs})"


# ---------------------------------------------------------------------------
# pole enumeration backend


def _real_root_list(p: RealPolynomial):
    """(location, multiplicity) for the real roots of a real polynomial."""
    if p.degree < 1:
        return []
    out = []
    for r in roots(p.to_complex()):
        band = max(1e-7 * (1.0 + abs(r.location)), 2.0 * r.cluster_radius)
        if abs(r.location.imag) <= band:
            out.append((r.location.real, r.multiplicity, r.cluster_radius))
    return out


def _probe_sign(h: RationalFunction, x: float) -> int:
    nv, dv = h.num(x), h.den(x)
    nscale = h.num.coeff_scale * max(1.0, abs(x)) ** max(h.num.degree, 0)
    dscale = h.den.coeff_scale * max(1.0, abs(x)) ** max(h.den.degree, 0)
    if abs(nv) <= 1e-12 * nscale or abs(dv) <= 1e-12 * dscale:
        raise IndeterminateSign(
            f"sign probe at y={x!r} is too close to zero to trust"
        )
    return 1 if (nv > 0) == (dv > 0) else -1


class _Pole:
    __slots__ = ("s", "order", "delta")

    def __init__(self, s, order, delta):
        self.s = s
        self.order = order
        self.delta = delta


def _surviving_poles(h: RationalFunction, snap: float | None = None):
    """Real poles of h after cancelling numerator factors.

    Returns a list of _Pole with a probe offset delta small enough that
    num*den has no other sign change within (s - delta, s + delta).
    """
    if h.num.is_zero:
        return []
    den_roots = _real_root_list(h.den)
    num_roots = _real_root_list(h.num)
    poles = []
    all_locs = [s for s, _, _ in den_roots] + [s for s, _, _ in num_roots]
    for s, mult, rad in den_roots:
        match = max(1e-6 * (1.0 + abs(s)), 4.0 * rad) if snap is None else snap
        num_order = sum(m for t, m, tr in num_roots if abs(t - s) <= max(match, 4.0 * tr))
        order = mult - num_order
        if order <= 0:
            continue
        others = [abs(t - s) for t in all_locs if abs(t - s) > match]
        gap = min(others) if others else 1.0 + abs(s)
        poles.append(_Pole(s, order, 0.4 * gap))
    return poles


def index_one_sided(h: RationalFunction, s: float, side: int) -> HalfInteger:
    """ind at s from one side: +-1/2 when the one-sided limit is +-inf."""
    if side not in (+1, -1):
        raise ValueError("side must be +1 or -1")
    for pole in _surviving_poles(h):
        snap = max(1e-9 * (1.0 + abs(s)), 1e-12)
        if abs(pole.s - s) <= max(snap, pole.delta * 1e-3):
            return HalfInteger(_probe_sign(h, pole.s + side * pole.delta))
    return HalfInteger(0)


def index_at_point(h: RationalFunction, s: float) -> HalfInteger:
    """Full jump index at s: ind^+ - ind^-."""
    return index_one_sided(h, s, +1) - index_one_sided(h, s, -1)


def index_on_interval(h: RationalFunction, c: float, d: float) -> HalfInteger:
    """Cauchy index of h over [c, d] by pole enumeration.

    Endpoints may be -inf/+inf.  A pole exactly at c contributes its
    right-hand half-jump; a pole at d contributes minus its left-hand
    half-jump.
    """
    if not c < d:
        raise ValueError(f"need c < d, got c={c}, d={d}")
    total = 0
    for pole in _surviving_poles(h):
        s = pole.s
        snap = max(1e-9 * (1.0 + abs(s)), 1e-12)
        at_c = math.isfinite(c) and abs(s - c) <= snap
        at_d = math.isfinite(d) and abs(s - d) <= snap
        if at_c:
            total += _probe_sign(h, s + pole.delta)
        elif at_d:
            total -= _probe_sign(h, s - pole.delta)
        elif c < s < d:
            if pole.order % 2 == 0:
                continue  # equal one-sided signs, jump cancels
            right = _probe_sign(h, s + pole.delta)
            total += 2 * right  # left sign is -right for an odd-order pole
    return HalfInteger(total)


# ---------------------------------------------------------------------------
# Sturm-chain backends


def _rem_ascending(a: list, b: list):
    """Remainder of a mod b, both ascending coefficient lists (any field)."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    for top in range(len(a) - 1, db - 1, -1):
        q = a[top] / lead
        if q != 0:
            for j in range(db):
                a[top - db + j] -= q * b[j]
        a[top] = a[top] * 0  # exact zero of the right type
    del a[db:]
    return a


def _signed_remainder_chain_float(den, num):
    chain = [list(den.coeffs), list(num.coeffs)]
    # normalize so coefficient scales stay O(1) through the divisions
    for f in chain:
        m = max(abs(c) for c in f)
        for i in range(len(f)):
            f[i] /= m
    while len(chain[-1]) > 1:
        r = _rem_ascending(chain[-2], chain[-1])
        m = max((abs(c) for c in r), default=0.0)
        if m <= 1e-11:
            break
        while r and abs(r[-1]) <= 1e-12 * m:
            r.pop()
        chain.append([-c / m for c in r])
    return chain


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(f: list, x: float) -> int:
    if not f:
        return 0
    if x == math.inf:
        v = f[-1]
    elif x == -math.inf:
        v = f[-1] * (1 if (len(f) - 1) % 2 == 0 else -1)
    else:
        v = 0.0
        for c in reversed(f):
            v = v * x + c
    return (v > 0) - (v < 0)


def index_on_interval_sturm(h: RationalFunction, c: float, d: float) -> HalfInteger:
    """Cauchy index over [c, d] as a sign-variation difference.

    Valid when neither endpoint is a pole of h (the variation count cannot
    express the half-jump a pole endpoint contributes); raises
    IndeterminateSign there.
    """
    if not c < d:
        raise ValueError(f"need c < d, got c={c}, d={d}")
    if h.num.is_zero:
        return HalfInteger(0)
    for x in (c, d):
        if math.isfinite(x):
            scale = h.den.coeff_scale * max(1.0, abs(x)) ** max(h.den.degree, 0)
            if abs(h.den(x)) <= 1e-12 * scale:
                raise IndeterminateSign(
                    f"endpoint y={x!r} sits on a zero of the denominator; "
                    "use index_on_interval instead"
                )
    chain = _signed_remainder_chain_float(h.den, h.num)
    vc = _variations([_sign_at(f, c) for f in chain])
    vd = _variations([_sign_at(f, d) for f in chain])
    return HalfInteger.from_int(vc - vd)


def _sign_at_exact(f: list, x) -> int:
    if not f:
        return 0
    if x == math.inf:
        v = f[-1]
    elif x == -math.inf:
        v = f[-1] if (len(f) - 1) % 2 == 0 else -f[-1]
    else:
        v = Fraction(0)
        for c in reversed(f):
            v = v * x + c
    return (v > 0) - (v < 0)


def index_on_interval_exact(h: RationalFunction, c: float, d: float) -> HalfInteger:
    """Exact Sturm-chain index over Fraction arithmetic.

    Floats convert to Fraction losslessly, so this gives the mathematically
    exact index of the function the doubles actually represent.  Endpoint
    restrictions are as for the float Sturm variant.
    """
    if not c < d:
        raise ValueError(f"need c < d, got c={c}, d={d}")
    if h.num.is_zero:
        return HalfInteger(0)
    den = [Fraction(x) for x in h.den.coeffs]
    num = [Fraction(x) for x in h.num.coeffs]
    cx = Fraction(c) if math.isfinite(c) else c
    dx = Fraction(d) if math.isfinite(d) else d
    for x in (cx, dx):
        if isinstance(x, Fraction):
            v = Fraction(0)
            for co in reversed(den):
                v = v * x + co
            if v == 0:
                raise IndeterminateSign(
                    f"endpoint y={float(x)!r} is a pole; use index_on_interval"
                )
    chain = [den, num]
    while len(chain[-1]) > 1:
        r = _rem_ascending(chain[-2], chain[-1])
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
        # rescale to integer coefficients to keep Fraction sizes tame
        lcm = 1
        for co in r:
            lcm = lcm * co.denominator // math.gcd(lcm, co.denominator)
        g = 0
        for co in r:
            g = math.gcd(g, abs(co.numerator * (lcm // co.denominator)))
        chain.append([Fraction(-co.numerator * (lcm // co.denominator) // g) for co in r])
    vc = _variations([_sign_at_exact(f, cx) for f in chain])
    vd = _variations([_sign_at_exact(f, dx) for f in chain])
    return HalfInteger.from_int(vc - vd)
