"""Complex-plane numerics for the degenerate gamma and beta functions.

The one-parameter deformation implemented here is defined on the strip
0 < Re(s) < 1/lambda by

    dgamma_lambda(s) = integral_0^inf (1 + lambda*t)**(-1/lambda) t**(s-1) dt

for lambda in (0, 1), continues meromorphically to the whole plane with
simple poles at s = 0, -1, -2, ... and s = 1/lambda, 1/lambda + 1, ...,
and recovers the classical gamma function as lambda -> 0.  Every
representation -- closed form, defining integral, loop contour, infinite
products -- is implemented as an independent evaluation path, and the
:mod:`degamma.verify` harness cross-checks them against each other.
"""

from .classical import (
    EULER_GAMMA,
    LOG_OVERFLOW,
    POLE_TOLERANCE,
    LogGammaResult,
    beta,
    beta_product,
    gamma,
    log_beta,
    log_gamma,
    reflection_product,
    sin_pi,
)
from .core import (
    DegenerateParameter,
    EvalMethod,
    EvalResult,
    EvalStatus,
    GeneralizedFallingFactorial,
    IntegerGammaValue,
    PoleFamily,
    PoleInfo,
    ShiftStep,
    degenerate_beta,
    degenerate_beta_classical,
    degenerate_exp,
    degenerate_gamma,
    degenerate_gamma_integer,
    degenerate_gamma_log,
    degenerate_log,
    difference_step,
    falling_factorial,
    falling_factorial_exact,
    lambda_shift_recurrence,
    pole_residue,
    poles,
    symmetry_partner,
)
from .errors import (
    BranchPointError,
    ConvergenceError,
    DegammaError,
    DomainError,
    IntegerArgumentError,
    ParameterRangeError,
    PoleError,
    SingularParameterError,
    StripError,
)
from .quadrature import (
    QuadratureSpec,
    de_quadrature,
    direct_integral_gamma,
    hankel_gamma,
    hankel_gamma_reflected,
)
from .representations import (
    ProductSpec,
    degenerate_beta_product,
    euler_limit_gamma,
    sine_product,
    weierstrass_gamma,
)
from .verify import (
    CHECK_ROSTER,
    CheckReport,
    GridSpec,
    run_cross_path_scan,
    run_identity_suite,
    run_limit_checks,
)

__version__ = "0.1.0"
