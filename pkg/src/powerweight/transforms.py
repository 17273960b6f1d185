"""Tukey and Box-Cox power transformations.

Both families map ``y`` to a reshaped value controlled by a power ``lambda1``
and a shift ``lambda2``::

    tukey:   (y + lambda2) ** lambda1
    boxcox:  ((y + lambda2) ** lambda1 - 1) / lambda1

At ``lambda1 == 0`` both degenerate to a logarithm of ``y + lambda2``.  The
logarithm base is :data:`LOG_BASE` (2 by default); changing it rescales every
log branch uniformly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from powerweight.errors import DomainError

LOG_BASE = 2.0

#: powers closer to zero than this take the logarithmic branch
ZERO_POWER_EPS = 1e-12

# below this the direct Box-Cox quotient loses digits; expm1 keeps them
_EXPM1_BELOW = 1e-6


def log(x: float, base: float | None = None) -> float:
    """Logarithm in the package-wide base (``LOG_BASE`` unless given)."""
    if base is None:
        base = LOG_BASE
    if base == 2.0:
        return math.log2(x)
    return math.log(x) / math.log(base)


@dataclass(frozen=True)
class PowerParams:
    """Power ``lambda1`` and shift ``lambda2`` of a power transformation."""

    lambda1: float
    lambda2: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lambda1) and math.isfinite(self.lambda2)):
            raise DomainError(f"non-finite power parameters: {self}")

    @property
    def is_log(self) -> bool:
        return abs(self.lambda1) < ZERO_POWER_EPS


def _shifted(y: float, params: PowerParams) -> float:
    s = y + params.lambda2
    if not s > 0:
        raise DomainError(
            f"y + lambda2 must be positive, got {y} + {params.lambda2} = {s}"
        )
    return s


def tukey_transform(y: float, params: PowerParams) -> float:
    """Evaluate ``(y + lambda2) ** lambda1``, or ``log(y + lambda2)`` at power 0.

    Negative powers are applied as written, so the result decreases in ``y``.

    Raises
    ------
    DomainError
        If ``y + lambda2 <= 0``.
    """
    s = _shifted(y, params)
    if params.is_log:
        return log(s)
    return math.pow(s, params.lambda1)


def boxcox_transform(y: float, params: PowerParams) -> float:
    """Evaluate ``((y + lambda2) ** lambda1 - 1) / lambda1``.

    The power-0 limit is ``ln(y + lambda2)``; it is returned in the package
    log base so it lines up with the Tukey log branch.

    Raises
    ------
    DomainError
        If ``y + lambda2 <= 0``.
    """
    s = _shifted(y, params)
    lam = params.lambda1
    if params.is_log:
        return log(s)
    if abs(lam) < _EXPM1_BELOW:
        return math.expm1(lam * math.log(s)) / lam
    return (math.pow(s, lam) - 1.0) / lam
