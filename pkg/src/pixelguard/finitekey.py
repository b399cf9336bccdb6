"""Exact one-sided binomial confidence bounds.

The bounds invert the regularized incomplete beta function I_x(a, b), the
CDF of the Beta distribution. For an observed count k out of N pulses,

    upper bound:  1 - I^{-1}_eps(N - k, k + 1)
    lower bound:  I^{-1}_eps(k, N - k + 1)

which are the Clopper-Pearson one-sided limits at confidence 1 - eps.

I_x(a, b) is evaluated with the continued fraction of the incomplete beta
function (modified Lentz), switching to the reflected fraction above
x = (a + 1) / (a + b + 2). Both tails are returned separately so that
probabilities close to 1 keep full precision in their complement. The
fraction needs O(sqrt(max(a, b))) terms, so for shapes with a + b above
``LARGE_SHAPE_THRESHOLD`` (pulse counts of a day at GHz rates) the tails
come from SciPy's forward ``betainc``/``betaincc``. Those are inverted here
with Brent's method, not through SciPy's own inverses, which return NaN for
shapes near 1e13 and above. A non-finite tail is never clamped; it raises
:class:`ConvergenceError`.
"""

from __future__ import annotations

import math

from scipy import optimize, special

from pixelguard._utils.logger import get_logger
from pixelguard._utils.validators import (
    frequency_to_count,
    validate_positive,
    validate_probability,
)
from pixelguard.constants import (
    BETA_CF_EPSILON,
    BETA_CF_MAX_ITERATIONS,
    BETA_INVERSE_MAX_ITERATIONS,
    BETA_INVERSE_TOLERANCE,
    BOUNDS_PER_SESSION,
    LARGE_SHAPE_THRESHOLD,
)
from pixelguard.exceptions import ConvergenceError, ValidationError
from pixelguard.models.params import FiniteKeyParams

logger = get_logger("finitekey")

_TINY = 1e-300
_MAX_EXP = 700.0


# ─────────────────────────────────────────────────────────────────────────────
# Regularized incomplete beta function
# ─────────────────────────────────────────────────────────────────────────────


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Args:
        a: First shape parameter, a > 0.
        b: Second shape parameter, b > 0.
        x: Evaluation point in [0, 1].

    Returns:
        I_x(a, b) in [0, 1].

    Raises:
        ValidationError: If a parameter is outside its domain.
    """
    _check_shapes(a, b)
    validate_probability("x", x)

    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if b == 1.0:
        return math.exp(a * math.log(x))
    if a == 1.0:
        return -math.expm1(b * math.log1p(-x))
    return _tails(a, b, x)[0]


def reg_inc_beta_complement(a: float, b: float, x: float) -> float:
    """Upper tail 1 - I_x(a, b), accurate when I_x(a, b) is close to 1."""
    _check_shapes(a, b)
    validate_probability("x", x)

    if x == 0.0:
        return 1.0
    if x == 1.0:
        return 0.0
    if b == 1.0:
        return -math.expm1(a * math.log(x))
    if a == 1.0:
        return math.exp(b * math.log1p(-x))
    return _tails(a, b, x)[1]


def inv_reg_inc_beta(a: float, b: float, p: float) -> float:
    """Inverse of I_x(a, b) in x.

    Args:
        a: First shape parameter, a > 0.
        b: Second shape parameter, b > 0.
        p: Target probability in [0, 1].

    Returns:
        x in [0, 1] with I_x(a, b) = p. Monotone in p.

    Raises:
        ValidationError: If a parameter is outside its domain.
        ConvergenceError: If the root search exhausts its iteration budget.
    """
    _check_shapes(a, b)
    validate_probability("p", p)

    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    if b == 1.0:
        return math.exp(math.log(p) / a)
    if a == 1.0:
        return -math.expm1(math.log1p(-p) / b)
    if p <= 0.5:
        return _solve(a, b, p, upper_tail=False)
    return _solve(a, b, 1.0 - p, upper_tail=True)


def inv_reg_inc_beta_complement(a: float, b: float, q: float) -> float:
    """x with 1 - I_x(a, b) = q, accurate for q close to 0."""
    _check_shapes(a, b)
    validate_probability("q", q)

    if q == 0.0:
        return 1.0
    if q == 1.0:
        return 0.0
    if b == 1.0:
        return math.exp(math.log1p(-q) / a)
    if a == 1.0:
        return -math.expm1(math.log(q) / b)
    if q <= 0.5:
        return _solve(a, b, q, upper_tail=True)
    return _solve(a, b, 1.0 - q, upper_tail=False)


def _check_shapes(a: float, b: float) -> None:
    validate_positive("a", a)
    validate_positive("b", b)


def _log_front(a: float, b: float, x: float) -> float:
    """log of x^a (1 - x)^b / B(a, b)."""
    return (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )


def _tails(a: float, b: float, x: float) -> tuple[float, float]:
    """(I_x(a, b), 1 - I_x(a, b)), each computed without cancellation."""
    if a + b > LARGE_SHAPE_THRESHOLD:
        return _backend_tails(a, b, x)
    front = math.exp(_log_front(a, b, x))
    if x < (a + 1.0) / (a + b + 2.0):
        lower = _unit(front * _beta_cf(a, b, x) / a)
        return lower, 1.0 - lower
    upper = _unit(front * _beta_cf(b, a, 1.0 - x) / b)
    return 1.0 - upper, upper


def _backend_tails(a: float, b: float, x: float) -> tuple[float, float]:
    lower = float(special.betainc(a, b, x))
    upper = float(special.betaincc(a, b, x))
    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise ConvergenceError(
            "SciPy incomplete beta returned a non-finite value",
            a=a,
            b=b,
            x=x,
            lower=lower,
            upper=upper,
        )
    return lower, upper


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction of the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0

    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d

    for m in range(1, BETA_CF_MAX_ITERATIONS + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < BETA_CF_EPSILON:
            return h

    raise ConvergenceError(
        "Incomplete beta continued fraction did not converge",
        a=a,
        b=b,
        x=x,
        iterations=BETA_CF_MAX_ITERATIONS,
    )


def _solve(a: float, b: float, target: float, *, upper_tail: bool) -> float:
    """Root of a tail equation by bisection safeguarded Newton steps.

    Solves I_x(a, b) = target (``upper_tail=False``) or
    1 - I_x(a, b) = target (``upper_tail=True``). Either way
    g(x) = +/- (tail - target) is increasing with slope equal to the
    Beta density, which drives the Newton step.
    """
    if a + b > LARGE_SHAPE_THRESHOLD:
        return _solve_bracketed(a, b, target, upper_tail=upper_tail)

    log_norm = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
    lo, hi = 0.0, 1.0
    x = a / (a + b)

    for _ in range(BETA_INVERSE_MAX_ITERATIONS):
        lower, upper = _tails(a, b, x)
        g = target - upper if upper_tail else lower - target
        if g == 0.0:
            return x
        if g < 0.0:
            lo = x
        else:
            hi = x

        log_pdf = log_norm + (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x)
        x_new = 0.5 * (lo + hi)
        if log_pdf < _MAX_EXP:
            pdf = math.exp(log_pdf)
            if pdf > 0.0:
                candidate = x - g / pdf
                if lo < candidate < hi:
                    x_new = candidate

        if abs(x_new - x) <= BETA_INVERSE_TOLERANCE * x_new or hi - lo <= BETA_INVERSE_TOLERANCE * lo:
            return x_new
        x = x_new

    raise ConvergenceError(
        "Incomplete beta inversion did not converge",
        a=a,
        b=b,
        target=target,
    )


def _solve_bracketed(a: float, b: float, target: float, *, upper_tail: bool) -> float:
    """Derivative-free root of a tail equation on [0, 1] (Brent's method).

    At these shapes lgamma cancellation leaves the log of the Beta density's
    normalisation off by several units, so there are no Newton steps.
    """

    def excess(x: float) -> float:
        lower, upper = _backend_tails(a, b, x)
        return target - upper if upper_tail else lower - target

    try:
        root, result = optimize.brentq(
            excess,
            0.0,
            1.0,
            xtol=_TINY,
            rtol=BETA_INVERSE_TOLERANCE,
            maxiter=BETA_INVERSE_MAX_ITERATIONS,
            full_output=True,
            disp=False,
        )
    except (ValueError, RuntimeError) as e:
        raise ConvergenceError(
            "Incomplete beta inversion failed",
            a=a,
            b=b,
            target=target,
            cause=str(e),
        ) from e
    if not result.converged or not math.isfinite(root):
        raise ConvergenceError(
            "Incomplete beta inversion did not converge",
            a=a,
            b=b,
            target=target,
            iterations=result.iterations,
        )
    logger.debug(f"Bracketed inversion a={a:g} b={b:g} took {result.iterations} iterations")
    return float(root)


def _unit(value: float) -> float:
    return min(1.0, max(0.0, value))


# ─────────────────────────────────────────────────────────────────────────────
# One-sided binomial bounds
# ─────────────────────────────────────────────────────────────────────────────


def upper_bound_count(n_c: int, n_pulses: int, epsilon: float) -> float:
    """Upper confidence bound on a click probability from its count.

    Args:
        n_c: Observed count (e.g. coincidences).
        n_pulses: Number of pulses N.
        epsilon: Failure probability of the bound.

    Returns:
        The smallest p with P(Bin(N, p) <= n_c) <= epsilon; 1 when n_c = N.
    """
    _check_count("n_c", n_c, n_pulses, epsilon)
    if n_c == n_pulses:
        return 1.0
    # 1 - I^{-1}_eps(N - n_c, n_c + 1), written through the reflected tail
    bound = inv_reg_inc_beta_complement(n_c + 1, n_pulses - n_c, epsilon)
    return max(bound, n_c / n_pulses)


def lower_bound_count(n_s: int, n_pulses: int, epsilon: float) -> float:
    """Lower confidence bound on a click probability from its count.

    Returns:
        The largest p with P(Bin(N, p) >= n_s) <= epsilon; 0 when n_s = 0.
    """
    _check_count("n_s", n_s, n_pulses, epsilon)
    if n_s == 0:
        return 0.0
    bound = inv_reg_inc_beta(n_s, n_pulses - n_s + 1, epsilon)
    return min(bound, n_s / n_pulses)


def upper_bound_pc(p_c: float, fk: FiniteKeyParams) -> float:
    """Upper bound p_c^u on the coincidence probability.

    Args:
        p_c: Observed coincidence frequency; ``N * p_c`` must be an integer
            count within rounding.
        fk: Pulse count and confidence parameter.

    Raises:
        ValidationError: If p_c is outside [0, 1] or not a count over N.
    """
    n_c = frequency_to_count("p_c", p_c, fk.n_pulses)
    return upper_bound_count(n_c, fk.n_pulses, fk.epsilon)


def lower_bound_ps(p_s: float, fk: FiniteKeyParams) -> float:
    """Lower bound p_s^l on a single-click probability.

    Raises:
        ValidationError: If p_s is outside [0, 1] or not a count over N.
    """
    n_s = frequency_to_count("p_s", p_s, fk.n_pulses)
    return lower_bound_count(n_s, fk.n_pulses, fk.epsilon)


def hoeffding_upper(p: float, n_pulses: int, epsilon: float) -> float:
    """Hoeffding upper bound, kept only for comparison with the exact one."""
    return min(1.0, p + math.sqrt(math.log(1.0 / epsilon) / (2.0 * n_pulses)))


def hoeffding_lower(p: float, n_pulses: int, epsilon: float) -> float:
    """Hoeffding lower bound, kept only for comparison with the exact one."""
    return max(0.0, p - math.sqrt(math.log(1.0 / epsilon) / (2.0 * n_pulses)))


def total_failure_probability(epsilon: float) -> float:
    """Failure probability of a bound built from p_s1^l, p_s2^l and p_c^u."""
    return BOUNDS_PER_SESSION * epsilon


def _check_count(name: str, count: int, n_pulses: int, epsilon: float) -> None:
    if n_pulses <= 0:
        raise ValidationError(f"n_pulses must be positive (got {n_pulses})")
    if not 0 <= count <= n_pulses:
        raise ValidationError(f"{name} must lie in [0, n_pulses] (got {count} of {n_pulses})")
    validate_probability("epsilon", epsilon, open_low=True, open_high=True)
