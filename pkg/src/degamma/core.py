"""Degenerate gamma and beta functions via the closed form.

The central identity: for lambda in (0,1) and u = 1/lambda,

    dgamma_lambda(s) = lambda**(-s) * Gamma(s) * Gamma(u - s) / Gamma(u),

which continues the defining integral to a meromorphic function with simple
poles at s = 0, -1, -2, ... and s = u, u+1, u+2, ....  All evaluation is in
log space end to end; exponentiation happens once at the EvalResult boundary.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import classical
from .classical import POLE_TOLERANCE, LOG_OVERFLOW
from .errors import (
    BranchPointError,
    DomainError,
    ParameterRangeError,
    PoleError,
    SingularParameterError,
)

__all__ = [
    "DegenerateParameter",
    "PoleFamily",
    "PoleInfo",
    "EvalMethod",
    "EvalStatus",
    "EvalResult",
    "GeneralizedFallingFactorial",
    "IntegerGammaValue",
    "ShiftStep",
    "degenerate_exp",
    "degenerate_log",
    "falling_factorial",
    "falling_factorial_exact",
    "degenerate_gamma",
    "degenerate_gamma_log",
    "degenerate_gamma_integer",
    "difference_step",
    "lambda_shift_recurrence",
    "poles",
    "pole_residue",
    "symmetry_partner",
    "degenerate_beta",
    "degenerate_beta_classical",
]

# Distance band [POLE_TOLERANCE, NEAR_POLE_RADIUS) marks a result as near-pole
# and scales its error estimate by NEAR_POLE_RADIUS/distance: the closed form
# loses digits to cancellation there and the estimate should say so.
NEAR_POLE_RADIUS = 1e-4


@dataclass(frozen=True)
class DegenerateParameter:
    """A validated deformation parameter lambda in the open interval (0,1).

    Caches 1/lambda and log(lambda), the two derived quantities every
    evaluation path needs.
    """

    lam: float
    inv_lambda: float = field(init=False, repr=False)
    log_lambda: float = field(init=False, repr=False)

    def __post_init__(self):
        lam = float(self.lam)
        if not (0.0 < lam < 1.0):
            raise ParameterRangeError(
                f"lambda must lie strictly inside (0, 1); got {lam!r}"
            )
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "inv_lambda", 1.0 / lam)
        object.__setattr__(self, "log_lambda", math.log(lam))


class PoleFamily(enum.Enum):
    NON_POSITIVE = "non-positive"
    SHIFTED_BY_INV_LAMBDA = "shifted-by-inv-lambda"


@dataclass(frozen=True)
class PoleInfo:
    """One simple pole: its family, index n, location, and residue."""

    family: PoleFamily
    index: int
    location: complex
    residue: complex


class EvalMethod(enum.Enum):
    CLOSED_FORM = "closed-form"
    DIRECT_INTEGRAL = "direct-integral"
    HANKEL = "hankel"
    WEIERSTRASS_PRODUCT = "weierstrass"
    EULER_LIMIT = "euler-limit"
    CLASSICAL_MIXED = "classical-mixed"


class EvalStatus(enum.Enum):
    REGULAR = "regular"
    NEAR_POLE = "near-pole"
    AT_POLE = "pole"
    OVERFLOW = "overflow"


@dataclass(frozen=True)
class EvalResult:
    """A function value with an absolute error estimate and provenance.

    ``value`` is NaN-encoded when status is AT_POLE (the PoleInfo carries the
    residue) or OVERFLOW (``log_value`` still holds the finite log-space
    result).
    """

    value: complex
    abs_error_estimate: float
    method: EvalMethod
    status: EvalStatus
    pole: PoleInfo | None = None
    log_value: complex | None = None
    note: str | None = None


_NAN = complex(math.nan, math.nan)


def degenerate_exp(x: complex, t: complex, lam: float) -> complex:
    """(1 + lambda*t)**(x/lambda) on the principal branch.

    Defined for any nonzero real lambda (the gamma-side machinery is stricter
    and requires lambda in (0,1)).  Recovers exp(x*t) as lambda -> 0.
    """
    lam = float(lam)
    if lam == 0.0 or not math.isfinite(lam):
        raise ParameterRangeError("degenerate_exp: lambda must be a nonzero real")
    x, t = complex(x), complex(t)
    w = lam * t
    if abs(1.0 + w) < POLE_TOLERANCE:
        raise BranchPointError(
            f"degenerate_exp: 1 + lambda*t = {1.0 + w} is at the branch point"
        )
    return cmath.exp((x / lam) * _clog1p(w))


def degenerate_log(t: complex, lam: float) -> complex:
    """(t**lambda - 1)/lambda on the principal branch; inverse of degenerate_exp."""
    lam = float(lam)
    if lam == 0.0 or not math.isfinite(lam):
        raise ParameterRangeError("degenerate_log: lambda must be a nonzero real")
    t = complex(t)
    if t == 0.0:
        raise DomainError("degenerate_log: t = 0 is outside the domain")
    return _cexpm1(lam * cmath.log(t)) / lam


def _clog1p(w: complex) -> complex:
    """log(1 + w) for complex w, accurate for small |w|."""
    u = 1.0 + w
    if u == 1.0:
        return w
    if abs(w) > 0.5:
        return cmath.log(u)
    return cmath.log(u) * (w / (u - 1.0))


def _cexpm1(w: complex) -> complex:
    """exp(w) - 1 for complex w, accurate for small |w|."""
    u = cmath.exp(w)
    if u == 1.0:
        return w
    if abs(u - 1.0) > 0.5:
        return u - 1.0
    return (u - 1.0) * (w / cmath.log(u))


def falling_factorial(x: complex, n: int, lam: float) -> complex:
    """Generalized falling factorial x(x-lam)(x-2*lam)...(x-(n-1)*lam); 1 for n=0."""
    if n < 0:
        raise ValueError("falling_factorial: n must be a non-negative integer")
    out = 1.0 + 0.0j
    x = complex(x)
    for j in range(n):
        out *= x - j * lam
    return out


def falling_factorial_exact(x, n: int, lam) -> Fraction:
    """Exact-rational falling factorial; floats convert exactly to Fractions."""
    if n < 0:
        raise ValueError("falling_factorial_exact: n must be non-negative")
    xf, lf = Fraction(x), Fraction(lam)
    out = Fraction(1)
    for j in range(n):
        out *= xf - j * lf
    return out


@dataclass(frozen=True)
class GeneralizedFallingFactorial:
    """A falling-factorial product together with the inputs that formed it."""

    x: complex
    n: int
    lam: float
    value: complex

    @classmethod
    def compute(cls, x: complex, n: int, lam: float) -> "GeneralizedFallingFactorial":
        return cls(complex(x), int(n), float(lam), falling_factorial(x, n, lam))


def _lg(z: complex) -> complex:
    """Complex log-gamma as a single complex number."""
    return classical.log_gamma(z).as_complex()


def _lg_real(x: float) -> float:
    """log Gamma(x) for real x > 0."""
    return classical.log_gamma(x).log_abs


def pole_residue(family: PoleFamily, n: int, p: DegenerateParameter) -> complex:
    """Residue of the degenerate gamma function at the n-th pole of a family.

    Computed in log space, so Gamma(1/lambda + n) never has to be
    representable.  At the pole s = 0 the residue is exactly 1.
    """
    if n < 0:
        raise ValueError("pole_residue: n must be non-negative")
    u = p.inv_lambda
    lg_u = _lg_real(u)
    log_mag = _lg_real(u + n) - _lg_real(n + 1.0) - lg_u
    if family is PoleFamily.NON_POSITIVE:
        log_mag += n * p.log_lambda
        sign = -1.0 if n % 2 else 1.0
    elif family is PoleFamily.SHIFTED_BY_INV_LAMBDA:
        log_mag += (-n - u) * p.log_lambda
        sign = 1.0 if n % 2 else -1.0
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown pole family {family}")
    if log_mag > LOG_OVERFLOW:
        return complex(math.copysign(math.inf, sign), 0.0)
    return complex(sign * math.exp(log_mag), 0.0)


def _pole_info(family: PoleFamily, n: int, p: DegenerateParameter) -> PoleInfo:
    if family is PoleFamily.NON_POSITIVE:
        location = complex(-n, 0.0)
    else:
        location = complex(p.inv_lambda + n, 0.0)
    return PoleInfo(family, n, location, pole_residue(family, n, p))


def poles(p: DegenerateParameter, n_max: int) -> list[PoleInfo]:
    """The 2*(n_max+1) poles {-n} and {1/lambda + n}, n = 0..n_max, with residues."""
    if n_max < 0:
        raise ValueError("poles: n_max must be non-negative")
    out = [_pole_info(PoleFamily.NON_POSITIVE, n, p) for n in range(n_max + 1)]
    out += [
        _pole_info(PoleFamily.SHIFTED_BY_INV_LAMBDA, n, p) for n in range(n_max + 1)
    ]
    return out


def nearest_pole(s: complex, p: DegenerateParameter) -> tuple[float, PoleFamily, int]:
    """Distance from s to the nearest pole, found analytically per family."""
    s = complex(s)
    n1 = max(0, int(round(-s.real)))
    d1 = abs(s + n1)
    n2 = max(0, int(round(s.real - p.inv_lambda)))
    d2 = abs(s - (p.inv_lambda + n2))
    if d1 <= d2:
        return d1, PoleFamily.NON_POSITIVE, n1
    return d2, PoleFamily.SHIFTED_BY_INV_LAMBDA, n2


def degenerate_gamma_log(s: complex, p: DegenerateParameter) -> complex:
    """log of the degenerate gamma function (closed form), as one complex number.

    Raises PoleError within POLE_TOLERANCE of either pole family.
    """
    s = complex(s)
    u = p.inv_lambda
    return (-s) * p.log_lambda + _lg(s) + _lg(u - s) - _lg_real(u)


def degenerate_gamma(s: complex, p: DegenerateParameter) -> EvalResult:
    """Degenerate gamma at s via the closed form, with pole handling in status.

    Away from poles the relative accuracy is at the 1e-13 level (the error
    estimate is derived from the magnitudes of the log-gamma terms).  Within
    POLE_TOLERANCE of a pole the status is AT_POLE and the PoleInfo carries
    the residue; in the band up to NEAR_POLE_RADIUS the status is NEAR_POLE
    and the estimate is inflated to reflect cancellation.
    """
    s = complex(s)
    dist, family, n = nearest_pole(s, p)
    if dist < POLE_TOLERANCE:
        info = _pole_info(family, n, p)
        return EvalResult(
            value=_NAN,
            abs_error_estimate=math.inf,
            method=EvalMethod.CLOSED_FORM,
            status=EvalStatus.AT_POLE,
            pole=info,
        )
    u = p.inv_lambda
    term_s = _lg(s)
    term_us = _lg(u - s)
    term_u = _lg_real(u)
    log_val = (-s) * p.log_lambda + term_s + term_us - term_u
    mag_sum = (
        abs(term_s) + abs(term_us) + abs(term_u) + abs(s) * abs(p.log_lambda)
    )
    rel_est = 1e-14 + 8e-16 * mag_sum
    pole_info = None
    status = EvalStatus.REGULAR
    if dist < NEAR_POLE_RADIUS:
        status = EvalStatus.NEAR_POLE
        pole_info = _pole_info(family, n, p)
        rel_est *= NEAR_POLE_RADIUS / dist
    if log_val.real > LOG_OVERFLOW:
        return EvalResult(
            value=_NAN,
            abs_error_estimate=math.inf,
            method=EvalMethod.CLOSED_FORM,
            status=EvalStatus.OVERFLOW,
            pole=pole_info,
            log_value=log_val,
        )
    value = cmath.exp(log_val)
    return EvalResult(
        value=value,
        abs_error_estimate=abs(value) * rel_est,
        method=EvalMethod.CLOSED_FORM,
        status=status,
        pole=pole_info,
        log_value=log_val,
    )


@dataclass(frozen=True)
class IntegerGammaValue:
    """Exact value at a positive integer: Gamma(k) / (1)_{k+1,lambda}."""

    k: int
    lam: float
    value: complex
    falling: GeneralizedFallingFactorial

    def exact(self) -> Fraction:
        """The same quantity in exact rational arithmetic (lambda as a binary rational)."""
        return Fraction(math.factorial(self.k - 1)) / falling_factorial_exact(
            1, self.k + 1, self.lam
        )


def degenerate_gamma_integer(k: int, p: DegenerateParameter) -> IntegerGammaValue:
    """Degenerate gamma at a positive integer k as the exact product formula.

    Raises SingularParameterError when lambda collides with 1/j for some
    2 <= j <= k (the product (1)_{k+1,lambda} vanishes there; the closed form
    correctly reports those points as poles instead).
    """
    k = int(k)
    if k < 1:
        raise ValueError("degenerate_gamma_integer: k must be a positive integer")
    for j in range(2, k + 1):
        if abs(p.lam - 1.0 / j) < POLE_TOLERANCE:
            raise SingularParameterError(
                f"lambda = {p.lam} collides with 1/{j}; the integer-argument "
                f"product (1)_(k+1,lambda) vanishes for k = {k}"
            )
    falling = GeneralizedFallingFactorial.compute(1.0, k + 1, p.lam)
    if k <= 170:
        value = complex(math.factorial(k - 1)) / falling.value
    else:
        # log-space route for factorials beyond double range
        log_num = _lg_real(float(k))
        value = cmath.exp(log_num - cmath.log(falling.value))
    return IntegerGammaValue(k=k, lam=p.lam, value=value, falling=falling)


def difference_step(s: complex, p: DegenerateParameter) -> complex:
    """The factor s / (1 - lambda*(s+1)) in dgamma(s+1) = factor * dgamma(s)."""
    s = complex(s)
    den = 1.0 - p.lam * (s + 1.0)
    if abs(den) < POLE_TOLERANCE:
        raise PoleError(
            f"difference_step: 1 - lambda*(s+1) = {den} vanishes "
            f"(s + 1 = 1/lambda is a pole)",
            location=complex(p.inv_lambda - 1.0, 0.0),
        )
    return s / den


@dataclass(frozen=True)
class ShiftStep:
    """Multiplicative step of the lambda-shift recurrence.

    dgamma_{lam}(s+1) = factor * dgamma_{shifted_lambda}(shifted_arg)
    with shifted_lambda = lam / (1 - (k+1)*lam) and shifted_arg = s - k.
    """

    factor: complex
    shifted_lambda: float
    shifted_arg: complex


def lambda_shift_recurrence(
    s: complex, k: int, p: DegenerateParameter
) -> ShiftStep:
    """Shift both the argument and the parameter by k+1 recurrence steps.

    Valid for lambda in (0, 1/(k+1)) and s inside the strip
    k < Re(s) < (1-lambda)/lambda; both bounds are enforced.  For k = 0 this
    is the single-step rule dgamma(s+1) = s*(1-lambda)**(-s-1) *
    dgamma_{lambda/(1-lambda)}(s).
    """
    k = int(k)
    if k < 0:
        raise ValueError("lambda_shift_recurrence: k must be non-negative")
    s = complex(s)
    lam = p.lam
    if lam >= 1.0 / (k + 1):
        raise ParameterRangeError(
            f"lambda = {lam} is outside (0, 1/{k + 1}) required for a k = {k} shift"
        )
    upper = (1.0 - lam) / lam
    if not (k < s.real < upper):
        raise ParameterRangeError(
            f"Re(s) = {s.real} is outside the validity strip "
            f"{k} < Re(s) < (1 - lambda)/lambda = {upper:.6g}"
        )
    shrink = 1.0 - (k + 1) * lam  # positive by the range check
    numerator = 1.0 + 0.0j
    for j in range(k + 1):
        numerator *= s - j
    log_den = 0.0
    for j in range(1, k + 1):
        log_den += math.log1p(-j * lam)
    factor = numerator * cmath.exp(-log_den - (s - k + 1.0) * math.log(shrink))
    return ShiftStep(
        factor=factor,
        shifted_lambda=lam / shrink,
        shifted_arg=s - k,
    )


def symmetry_partner(s: complex, p: DegenerateParameter) -> complex:
    """The reflected argument 1/lambda - s of the symmetry identity
    lambda**s * dgamma(s) = lambda**(1/lambda - s) * dgamma(1/lambda - s)."""
    return p.inv_lambda - complex(s)


def _beta_argument_check(name: str, w: complex, p: DegenerateParameter) -> None:
    dist, family, n = nearest_pole(w, p)
    if dist < POLE_TOLERANCE:
        raise PoleError(
            f"degenerate beta: argument {name} = {w} sits at the pole "
            f"{_pole_info(family, n, p).location} of the degenerate gamma function",
            location=_pole_info(family, n, p).location,
            argument_name=name,
        )


def _beta_sum_at_pole(a: complex, b: complex, p: DegenerateParameter) -> bool:
    dist, _, _ = nearest_pole(a + b, p)
    return dist < POLE_TOLERANCE


_BETA_ZERO_NOTE = (
    "alpha+beta sits at a pole of the degenerate gamma function; "
    "the ratio vanishes in the limit, so 0 is returned"
)


def _finish_beta(log_val: complex, method: EvalMethod, rel_est: float) -> EvalResult:
    if log_val.real > LOG_OVERFLOW:
        return EvalResult(
            value=_NAN,
            abs_error_estimate=math.inf,
            method=method,
            status=EvalStatus.OVERFLOW,
            log_value=log_val,
        )
    value = cmath.exp(log_val)
    return EvalResult(
        value=value,
        abs_error_estimate=abs(value) * rel_est,
        method=method,
        status=EvalStatus.REGULAR,
        log_value=log_val,
    )


def degenerate_beta(a: complex, b: complex, p: DegenerateParameter) -> EvalResult:
    """Degenerate beta as the ratio dgamma(a) dgamma(b) / dgamma(a+b).

    Evaluated as one exponential of a sum of closed-form logs.  When a+b sits
    at a pole while a and b are regular, the ratio tends to zero; the result
    is 0 with an explanatory note.
    """
    a, b = complex(a), complex(b)
    _beta_argument_check("alpha", a, p)
    _beta_argument_check("beta", b, p)
    if _beta_sum_at_pole(a, b, p):
        return EvalResult(
            value=0.0 + 0.0j,
            abs_error_estimate=0.0,
            method=EvalMethod.CLOSED_FORM,
            status=EvalStatus.REGULAR,
            note=_BETA_ZERO_NOTE,
        )
    la = degenerate_gamma_log(a, p)
    lb = degenerate_gamma_log(b, p)
    lab = degenerate_gamma_log(a + b, p)
    log_val = la + lb - lab
    rel_est = 1e-14 + 8e-16 * (abs(la) + abs(lb) + abs(lab))
    return _finish_beta(log_val, EvalMethod.CLOSED_FORM, rel_est)


def degenerate_beta_classical(
    a: complex, b: complex, p: DegenerateParameter
) -> EvalResult:
    """Degenerate beta through the classical-kernel grouping.

    B_lam(a,b) = B(a,b) * Gamma(u-a) Gamma(u-b) / (Gamma(u) Gamma(u-a-b)),
    u = 1/lambda; an independent regrouping of the same closed form, used as
    a cross-check path.
    """
    a, b = complex(a), complex(b)
    _beta_argument_check("alpha", a, p)
    _beta_argument_check("beta", b, p)
    if _beta_sum_at_pole(a, b, p):
        return EvalResult(
            value=0.0 + 0.0j,
            abs_error_estimate=0.0,
            method=EvalMethod.CLASSICAL_MIXED,
            status=EvalStatus.REGULAR,
            note=_BETA_ZERO_NOTE,
        )
    u = p.inv_lambda
    terms = [
        classical.log_beta(a, b),
        _lg(u - a),
        _lg(u - b),
        -_lg(u - a - b),
        -_lg_real(u),
    ]
    log_val = sum(terms)
    rel_est = 1e-14 + 8e-16 * sum(abs(t) for t in terms)
    return _finish_beta(log_val, EvalMethod.CLASSICAL_MIXED, rel_est)
