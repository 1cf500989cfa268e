"""Forward-mode automatic differentiation carrying value, gradient and Hessian.

A ``Jet`` is a truncated second-order Taylor expansion in ``n`` independent
variables.  All arithmetic propagates derivatives exactly (to rounding), which
is what the Hessian, momentum and Euler-Lagrange machinery rely on.  Plain
floats pass through the module-level math functions unchanged, so numerical
kernels can be written once and evaluated either on numbers or on jets.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "Jet",
    "variables",
    "constant",
    "value",
    "sqrt",
    "sin",
    "cos",
    "exp",
    "log",
    "tanh",
    "acos",
    "atan2",
]


class Jet:
    """Second-order jet: value ``f``, gradient ``g`` (n,), Hessian ``h`` (n, n)."""

    __slots__ = ("f", "g", "h")

    def __init__(self, f, g, h):
        self.f = float(f)
        self.g = np.asarray(g, dtype=float)
        self.h = np.asarray(h, dtype=float)

    @property
    def n(self):
        return self.g.shape[0]

    def __repr__(self):
        return f"Jet({self.f!r}, grad={self.g!r})"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return constant(float(other), self.n)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.f + o.f, self.g + o.g, self.h + o.h)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.f, -self.g, -self.h)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.f - o.f, self.g - o.g, self.h - o.h)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        h = self.h * o.f + o.h * self.f
        h = h + np.outer(self.g, o.g) + np.outer(o.g, self.g)
        return Jet(self.f * o.f, self.f * o.g + o.f * self.g, h)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * _chain(o, 1.0 / o.f, -1.0 / o.f**2, 2.0 / o.f**3)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, p):
        if isinstance(p, Jet):
            if p.g.any() or p.h.any():
                raise ValueError("jet-valued exponents are not supported")
            p = p.f
        p = float(p)
        if p == int(p) and abs(p) <= 64:
            k = int(p)
            if k == 0:
                return constant(1.0, self.n)
            if k < 0:
                return 1.0 / (self ** (-k))
            out = self
            for _ in range(k - 1):
                out = out * self
            return out
        if self.f <= 0.0:
            raise ValueError(f"x**{p} needs x > 0, got x={self.f}")
        return _chain(
            self,
            self.f**p,
            p * self.f ** (p - 1.0),
            p * (p - 1.0) * self.f ** (p - 2.0),
        )

    def __abs__(self):
        if self.f == 0.0:
            raise ValueError("abs() is not differentiable at 0")
        return self if self.f > 0.0 else -self

    # -- comparisons on values (handy for domain checks) ------------------

    def __lt__(self, other):
        return self.f < value(other)

    def __le__(self, other):
        return self.f <= value(other)

    def __gt__(self, other):
        return self.f > value(other)

    def __ge__(self, other):
        return self.f >= value(other)

    def __float__(self):
        raise TypeError("refusing to silently drop derivatives; use jets.value()")


def variables(*vals):
    """Seed independent jet variables from numeric values."""
    n = len(vals)
    return [Jet(v, np.eye(n)[i], np.zeros((n, n))) for i, v in enumerate(vals)]


def constant(v, n):
    return Jet(v, np.zeros(n), np.zeros((n, n)))


def value(x):
    """Numeric value of a jet or plain number."""
    return x.f if isinstance(x, Jet) else float(x)


def _chain(u, f, f1, f2):
    """Compose a scalar function (value f, derivatives f1, f2) with jet u."""
    return Jet(f, f1 * u.g, f1 * u.h + f2 * np.outer(u.g, u.g))


def _chain2(ux, uy, f, fx, fy, fxx, fyy, fxy):
    g = fx * ux.g + fy * uy.g
    h = fx * ux.h + fy * uy.h
    h = h + fxx * np.outer(ux.g, ux.g) + fyy * np.outer(uy.g, uy.g)
    h = h + fxy * (np.outer(ux.g, uy.g) + np.outer(uy.g, ux.g))
    return Jet(f, g, h)


def sqrt(x):
    if not isinstance(x, Jet):
        if x < 0.0:
            raise ValueError(f"sqrt of negative value {x}")
        return math.sqrt(x)
    if x.f <= 0.0:
        raise ValueError(f"sqrt needs a positive argument, got {x.f}")
    r = math.sqrt(x.f)
    return _chain(x, r, 0.5 / r, -0.25 / (r * x.f))


def sin(x):
    if not isinstance(x, Jet):
        return math.sin(x)
    return _chain(x, math.sin(x.f), math.cos(x.f), -math.sin(x.f))


def cos(x):
    if not isinstance(x, Jet):
        return math.cos(x)
    return _chain(x, math.cos(x.f), -math.sin(x.f), -math.cos(x.f))


def exp(x):
    if not isinstance(x, Jet):
        return math.exp(x)
    e = math.exp(x.f)
    return _chain(x, e, e, e)


def log(x):
    if not isinstance(x, Jet):
        return math.log(x)
    if x.f <= 0.0:
        raise ValueError("log needs a positive argument")
    return _chain(x, math.log(x.f), 1.0 / x.f, -1.0 / x.f**2)


def tanh(x):
    if not isinstance(x, Jet):
        return math.tanh(x)
    t = math.tanh(x.f)
    s = 1.0 - t * t
    return _chain(x, t, s, -2.0 * t * s)


def acos(x):
    if not isinstance(x, Jet):
        return math.acos(x)
    if not -1.0 < x.f < 1.0:
        raise ValueError("acos is differentiable only on (-1, 1)")
    s = 1.0 - x.f * x.f
    return _chain(x, math.acos(x.f), -1.0 / math.sqrt(s), -x.f / s**1.5)


def atan2(y, x):
    if not isinstance(y, Jet) and not isinstance(x, Jet):
        return math.atan2(y, x)
    if not isinstance(y, Jet):
        y = constant(y, x.n)
    if not isinstance(x, Jet):
        x = constant(x, y.n)
    d = x.f * x.f + y.f * y.f
    if d == 0.0:
        raise ValueError("atan2 undefined at the origin")
    f = math.atan2(y.f, x.f)
    fx, fy = -y.f / d, x.f / d
    fxx = 2.0 * x.f * y.f / d**2
    fyy = -fxx
    fxy = (y.f * y.f - x.f * x.f) / d**2
    return _chain2(x, y, f, fx, fy, fxx, fyy, fxy)
