"""Modified Bessel functions of the second kind, orders 0 and 1/2.

k0 uses the ascending series with its logarithmic term for x <= 2. For
x > 2 it integrates K0(x) = int_0^inf exp(-x cosh u) du with the trapezoidal
rule on the scaled integrand exp(-2x sinh^2(u/2)), which converges
exponentially in the step size. Each argument gets its own grid, cut off
where the integrand falls below exp(-45) and holding a fixed number of
nodes, so the step follows the 1/sqrt(x) width of the integrand.
k_{1/2} is the closed form.
"""
import math

import numpy as np

from Lattice_type.Types import BesselOrder

EULER_GAMMA = 0.57721566490153286061
SERIES_LIMIT = 2.0
SERIES_TERMS = 30
QUADRATURE_NODES = 400
# exp(-45) is below double precision relative to the u = 0 term
QUADRATURE_CUTOFF = 45.0

_factorial_squared = np.array([math.factorial(k) ** 2 for k in range(SERIES_TERMS)], dtype=np.float64)
_harmonic = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, SERIES_TERMS))])


def _k0_series(x: np.ndarray) -> np.ndarray:
    quarter = (x * x / 4.0)[:, None] ** np.arange(SERIES_TERMS)[None, :]
    terms = quarter / _factorial_squared
    i0 = terms.sum(axis=1)
    return -(np.log(x / 2.0) + EULER_GAMMA) * i0 + (terms * _harmonic).sum(axis=1)


def _k0_scaled_quadrature(x: np.ndarray) -> np.ndarray:
    steps = np.arccosh(1.0 + QUADRATURE_CUTOFF / x) / (QUADRATURE_NODES - 1)
    u = steps[:, None] * np.arange(QUADRATURE_NODES)[None, :]
    values = np.exp(-2.0 * x[:, None] * np.sinh(0.5 * u) ** 2)
    return steps * (values.sum(axis=1) - 0.5 * (values[:, 0] + values[:, -1]))


def k0(x):
    values = np.atleast_1d(np.asarray(x, dtype=np.float64))
    _check_domain(values)
    result = np.empty_like(values)
    small = values <= SERIES_LIMIT
    if small.any():
        result[small] = _k0_series(values[small])
    if (~small).any():
        large = values[~small]
        result[~small] = _k0_scaled_quadrature(large) * np.exp(-large)
    return result if np.ndim(x) else float(result[0])


def k_half(x):
    values = np.asarray(x, dtype=np.float64)
    _check_domain(np.atleast_1d(values))
    result = np.sqrt(np.pi / (2.0 * values)) * np.exp(-values)
    return result if np.ndim(x) else float(result)


def bessel_k(order: str, x):
    if order == BesselOrder.ZERO:
        return k0(x)
    if order == BesselOrder.HALF:
        return k_half(x)
    raise ValueError(f"Unsupported Bessel order {order!r}; expected one of {BesselOrder.values()}")


def _check_domain(values: np.ndarray) -> None:
    if not np.all(values > 0):
        bad = values[~(values > 0)][0]
        raise ValueError(f"modified Bessel k diverges at x <= 0 (got x={bad})")
