"""Best-Match local weights: BM25, BM11, BM15 and the inverse-regression BM25IR.

All weights share the attenuation factor ``K = k1 * B`` where
``B = (1 - b) + b * dl / avedl`` normalizes for document length.  ``f`` may be
a scalar or an array of term frequencies; scalars come back as ``float``.
"""

from __future__ import annotations

import decimal
import logging
import math
from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from powerweight.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75


@dataclass(frozen=True)
class BmParams:
    """Saturation ``k1``, length normalization ``b`` and the scaling flag.

    ``apply_scale=None`` means "model default": BM25 multiplies by ``k1 + 1``,
    raw BM25IR does not.
    """

    k1: float = DEFAULT_K1
    b: float = DEFAULT_B
    apply_scale: bool | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k1) and self.k1 > 0):
            raise DomainError(f"k1 must be positive, got {self.k1}")
        if not 0.0 <= self.b <= 1.0:
            raise DomainError(f"b must lie in [0, 1], got {self.b}")
        if not self.within_heuristic:
            logger.warning(
                "b/k1 = %.4g >= 1; b/k1 < 1 is the usual working range",
                self.b / self.k1,
            )

    @property
    def within_heuristic(self) -> bool:
        """True when ``b / k1 < 1``, the range reported to work well."""
        return self.b / self.k1 < 1.0

    def scale(self, default: bool) -> float:
        on = default if self.apply_scale is None else self.apply_scale
        return self.k1 + 1.0 if on else 1.0


def _check_ratio(ratio: float) -> None:
    if not (math.isfinite(ratio) and ratio > 0):
        raise DomainError(f"length ratio dl/avedl must be positive, got {ratio}")


def _freqs(f):
    arr = np.asarray(f, dtype=np.float64)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("term frequencies must be finite and non-negative")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _dec(x: float) -> Decimal:
    return Decimal(repr(float(x)))


_CTX = decimal.Context(prec=60)


# B is evaluated in decimal on the parameters' shortest repr, so b=0.8,
# ratio=0.1 gives 0.28 rather than the binary 0.27999999999999997.
def length_norm_B(b: float, ratio: float) -> float:
    """Length normalization ``(1 - b) + b * ratio``, with ``ratio = dl / avedl``."""
    _check_ratio(ratio)
    if not 0.0 <= b <= 1.0:
        raise DomainError(f"b must lie in [0, 1], got {b}")
    db = _dec(b)
    return float(_CTX.add(_CTX.subtract(Decimal(1), db), _CTX.multiply(db, _dec(ratio))))


def attenuation_K(params: BmParams, ratio: float) -> float:
    """Attenuation factor ``K = k1 * B``; equals ``k1`` for average-length docs."""
    return params.k1 * length_norm_B(params.b, ratio)


def poisson2_core(f, k: float):
    """Saturating core ``f / (f + k)``.

    ``k = 0`` gives the binary indicator ``f > 0``; ``0 / 0`` is taken as 0.
    """
    if not (math.isfinite(k) and k >= 0):
        raise DomainError(f"k must be non-negative, got {k}")
    arr = _freqs(f)
    den = arr + k
    out = np.divide(arr, den, out=np.zeros_like(den), where=den > 0)
    return _out(out)


def inverse_core(f, k: float):
    """Box-Cox ``p = -1`` weight ``1 - 1/(f + k)``, evaluated literally.

    Written as ``(f + k - 1) / (f + k)`` so that at ``k = 1`` it matches
    ``f / (f + 1)`` bit for bit.  At ``f = 0`` this is ``1 - 1/k``, which is
    negative for ``k < 1``; scoring code goes through :func:`bm25ir_local`.
    """
    arr = _freqs(f)
    den = arr + k
    if np.any(den <= 0):
        raise DomainError(f"f + K must be positive (K={k})")
    return _out((den - 1.0) / den)


def bm_local(f, params: BmParams, ratio: float = 1.0):
    """BM25 local weight ``f / (f + K) * (k1 + 1)``.

    ``b = 1`` is BM11 and ``b = 0`` is BM15.  The scaling factor is applied
    unless ``params.apply_scale`` is False.
    """
    K = attenuation_K(params, ratio)
    return _out(np.asarray(poisson2_core(f, K)) * params.scale(True))


def bm25ir_local(f, params: BmParams, ratio: float = 1.0):
    """BM25IR local weight ``1 - 1/(f + K)``, optionally times ``k1 + 1``.

    Absent terms (``f = 0``) weigh 0.  Unscaled unless ``params.apply_scale``
    is True.  At ``K = 1`` this equals :func:`bm_local`.
    """
    K = attenuation_K(params, ratio)
    arr = _freqs(f)
    w = np.asarray(inverse_core(np.maximum(arr, 1.0), K))
    return _out(np.where(arr > 0, w, 0.0) * params.scale(False))


def bm11_local(f, k1: float = DEFAULT_K1, ratio: float = 1.0, apply_scale: bool = True):
    """BM11: BM25 with full length normalization (``b = 1``)."""
    return bm_local(f, BmParams(k1, 1.0, apply_scale), ratio)


def bm15_local(f, k1: float = DEFAULT_K1, apply_scale: bool = True):
    """BM15: BM25 without length normalization (``b = 0``)."""
    return bm_local(f, BmParams(k1, 0.0, apply_scale), 1.0)
