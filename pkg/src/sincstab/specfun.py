"""Scalar special functions used throughout the package.

Normalized sinc (real and complex), the two real branches of the Lambert W
function on [-1/e, 0), the Lamb-Oseen constant, and the Riemann zeta function
for real argument s > 1.  All functions are pure and thread-safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "BranchedWValue",
    "OseenConstant",
    "sinc",
    "sinc_complex",
    "sinc_array",
    "sinc_complex_array",
    "lambert_w0",
    "lambert_wm1",
    "lamb_oseen_alpha",
    "riemann_zeta",
    "zeta_minus_one",
]

# Branch point of W.  -1/e is not exactly representable; arguments up to
# _BRANCH_SLACK below the rounded value are clamped onto it.
_NEG_INV_E = -math.exp(-1.0)
_BRANCH_SLACK = 1e-14


@dataclass(frozen=True)
class BranchedWValue:
    """A Lambert W evaluation: w with w*exp(w) == argument on a fixed branch.

    branch is "principal" (value in [-1, 0)) or "minus_one" (value <= -1).
    """

    branch: str
    argument: float
    value: float


@dataclass(frozen=True)
class OseenConstant:
    """The Lamb-Oseen constant: the positive root of exp(a) = 2a + 1."""

    alpha: float


def sinc(x: float) -> float:
    """Normalized sinc, sin(pi*x)/(pi*x), with sinc(0) = 1.

    Even in x and bounded by 1 in absolute value.  Integer arguments give
    exactly 0 (or 1 at zero): sin(pi*n) vanishes identically, and the
    cardinal interpolation identities rely on the Kronecker values being
    exact.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"sinc requires a finite argument, got {x!r}")
    if x == math.floor(x):
        return 1.0 if x == 0.0 else 0.0
    px = math.pi * x
    return math.sin(px) / px


def sinc_complex(z: complex) -> complex:
    """Analytic continuation sin(pi*z)/(pi*z) of the normalized sinc.

    For |pi*z| < 0.1 a degree-12 Taylor polynomial is used; the truncation
    error there is below 1e-17, and the direct quotient is avoided where
    numerator and denominator both vanish.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"sinc_complex requires a finite argument, got {z!r}")
    if z.imag == 0.0 and z.real == math.floor(z.real):
        return complex(1.0 if z.real == 0.0 else 0.0, 0.0)
    w = math.pi * z
    if abs(w) < 0.1:
        w2 = w * w
        # sin(w)/w = 1 - w^2/3! + w^4/5! - ... through w^12/13!
        return 1.0 + w2 * (
            -1.0 / 6.0
            + w2 * (1.0 / 120.0 + w2 * (-1.0 / 5040.0 + w2 * (
                1.0 / 362880.0 + w2 * (-1.0 / 39916800.0 + w2 / 6227020800.0))))
        )
    return cmath.sin(w) / w


def sinc_array(x) -> np.ndarray:
    """Vectorized real sinc with exact Kronecker values at the integers."""
    x = np.asarray(x, dtype=np.float64)
    y = np.sinc(x)
    exact = x == np.floor(x)
    if np.any(exact):
        y = np.where(exact, 0.0, y)
        y = np.where(x == 0.0, 1.0, y)
    return y


def sinc_complex_array(z) -> np.ndarray:
    """Vectorized complex sinc; series-stabilized near 0, exact at integers."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.pi * z
    out = np.empty(w.shape, dtype=np.complex128)
    small = np.abs(w) < 0.1
    ws = w[small] ** 2
    out[small] = 1.0 + ws * (
        -1.0 / 6.0
        + ws * (1.0 / 120.0 + ws * (-1.0 / 5040.0 + ws * (
            1.0 / 362880.0 + ws * (-1.0 / 39916800.0 + ws / 6227020800.0))))
    )
    wb = w[~small]
    out[~small] = np.sin(wb) / wb
    exact = (z.imag == 0.0) & (z.real == np.floor(z.real))
    if np.any(exact):
        out[exact & (z != 0.0)] = 0.0
        out[z == 0.0] = 1.0
    return out


def _halley_w(x: float, w: float) -> float:
    """Refine a Lambert W seed by Halley's method on f(w) = w*exp(w) - x."""
    for _ in range(80):
        ew = math.exp(w)
        f = w * ew - x
        w1 = w + 1.0
        if w1 == 0.0:
            break
        dw = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1))
        w -= dw
        if abs(dw) <= 1e-16 * (1.0 + abs(w)):
            break
    return w


def _check_w_domain(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x) or x >= 0.0 or x < _NEG_INV_E - _BRANCH_SLACK:
        raise ValueError(f"{name} is defined on [-1/e, 0), got {x!r}")
    return max(x, _NEG_INV_E)


def lambert_w0(x: float) -> BranchedWValue:
    """Principal branch W0 on [-1/e, 0); values lie in [-1, 0)."""
    x = _check_w_domain(x, "lambert_w0")
    # p parametrizes the distance to the branch point: p^2 = 2(1 + e*x)
    q = max(2.0 * (1.0 + math.e * x), 0.0)
    p = math.sqrt(q)
    if p < 1e-5:
        w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
    else:
        if x < -0.3:
            w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
        else:
            w = x * math.exp(-x)
        w = _halley_w(x, w)
    w = max(w, -1.0)
    return BranchedWValue(branch="principal", argument=x, value=w)


def lambert_wm1(x: float) -> BranchedWValue:
    """Secondary real branch W-1 on [-1/e, 0); values lie in (-inf, -1]."""
    x = _check_w_domain(x, "lambert_wm1")
    q = max(2.0 * (1.0 + math.e * x), 0.0)
    p = math.sqrt(q)
    if p < 1e-5:
        w = -1.0 - p - p * p / 3.0 - 11.0 * p ** 3 / 72.0
    else:
        if x < -0.25:
            w = -1.0 - p - p * p / 3.0
        else:
            lx = math.log(-x)
            w = lx - math.log(-lx)
        w = _halley_w(x, w)
    w = min(w, -1.0)
    return BranchedWValue(branch="minus_one", argument=x, value=w)


def lamb_oseen_alpha() -> OseenConstant:
    """The constant alpha = -1/2 - W_{-1}(-exp(-1/2)/2), approx 1.25643.

    alpha is the positive solution of exp(a) = 2a + 1.
    """
    arg = -0.5 * math.exp(-0.5)
    return OseenConstant(alpha=-0.5 - lambert_wm1(arg).value)


# Bernoulli numbers B_{2k} for the Euler-Maclaurin corrections, k = 1..15.
_B2K = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
    Fraction(854513, 138), Fraction(-236364091, 2730), Fraction(8553103, 6),
    Fraction(-23749461029, 870), Fraction(8615841276005, 14322),
]
# B_{2k} / (2k)! as floats.
_EM_COEFFS = [float(b / math.factorial(2 * (k + 1))) for k, b in enumerate(_B2K)]
_EM_HEAD = 24  # head length; keeps the asymptotic-series remainder < 1e-14


def zeta_minus_one(s: float) -> float:
    """zeta(s) - 1 for real s > 1, computed without cancellation near 1.

    Euler-Maclaurin summation: an explicit head of length 24 plus the
    integral term, the half-sample correction and Bernoulli corrections.
    The series is alternating-asymptotic; summation stops at the smallest
    term, whose size bounds the remainder (well below 1e-14 here).
    """
    s = float(s)
    if not math.isfinite(s) or s <= 1.0:
        raise ValueError(f"zeta is only evaluated for real s > 1, got {s!r}")
    n = _EM_HEAD
    head = 0.0
    for k in range(2, n):
        head += k ** -s
    tail = n ** (1.0 - s) / (s - 1.0) + 0.5 * n ** -s
    power = n ** (-s - 1.0)  # n^{1-s-2k} at k = 1
    poch = s                 # s(s+1)...(s+2k-2) at k = 1
    corr = 0.0
    prev = math.inf
    for k, c in enumerate(_EM_COEFFS, start=1):
        term = c * poch * power
        if abs(term) >= prev:
            break  # asymptotic series turned; stop at the smallest term
        corr += term
        prev = abs(term)
        if abs(term) < 1e-18 * (abs(head + tail) + 1e-30):
            break
        power /= n * n
        poch *= (s + 2 * k - 1) * (s + 2 * k)
    return head + tail + corr


def riemann_zeta(s: float) -> float:
    """Riemann zeta for real s > 1, absolute accuracy ~1e-13 on the tail."""
    return 1.0 + zeta_minus_one(s)
