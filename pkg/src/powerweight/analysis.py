"""Profile curves, occurrence increments and the critical saturation constant.

The Box-Cox ``p = -1`` weight ``L(f) = 1 - 1/(f + k)`` (with ``L(0) = 0`` for
an absent term) gains most from the first occurrence when ``k`` is large and
from the second when ``k`` is small.  The crossover solves
``k**2 + 2k - 1 = 0``, i.e. ``k = sqrt(2) - 1``.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from powerweight import bm
from powerweight.catalog import BmScheme, DocStats, Scheme, SchemeId, bm_weight, local_weight
from powerweight.errors import DomainError

CRITICAL_K_EXACT = math.sqrt(2.0) - 1.0

FIGURE1_K = (0.0, 0.1, 0.42, 1.0, 2.0, 10.0)
FIGURE2_RATIOS = (0.1, 1.0, 10.0)
# (k1, b) pairs with b/k1 in [0.3, 0.8]
FIGURE2_GRID = ((1.0, 0.3), (1.0, 0.5), (1.0, 0.6), (1.0, 0.8), (2.0, 0.6), (2.0, 1.0))


@dataclass(frozen=True)
class InverseRegressionParams:
    beta0: float = 1.0
    beta1: float = -1.0


def inverse_regression_eval(x: float, params: InverseRegressionParams = InverseRegressionParams()) -> float:
    """Reciprocal regression curve ``beta0 + beta1 / x``.

    With the defaults ``(1, -1)`` and ``x = f + k`` this is the Box-Cox
    ``p = -1`` weight.
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    return params.beta0 + params.beta1 / x


@dataclass
class ProfileCurve:
    """Sampled ``(f, L)`` points of one weight model."""

    scheme: str
    parameters: dict
    raw: bool
    points: list[tuple[int, float]] = field(default_factory=list)

    @property
    def weights(self) -> list[float]:
        return [w for _, w in self.points]

    def increments(self) -> list[float]:
        w = self.weights
        return [b - a for a, b in zip(w, w[1:])]

    @property
    def stem(self) -> str:
        parts = [self.scheme.split(":")[0]]
        parts += [f"{key}={value:g}" for key, value in self.parameters.items()]
        if self.raw:
            parts.append("raw")
        return "_".join(parts)

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["f", "L"])
            for f, w in self.points:
                writer.writerow([f, f"{w:.6f}"])


def profile_curve(
    scheme: SchemeId, f_max: int, raw: bool = False, ratio: float = 1.0, stats: DocStats | None = None
) -> ProfileCurve:
    """Evaluate ``scheme`` at ``f = 0 .. f_max``.

    BM schemes are evaluated at length ratio ``ratio`` (ignored when
    ``stats`` is given).  With ``raw=True`` the formula is applied literally at
    ``f = 0``, otherwise an absent term weighs 0.
    """
    if f_max < 1:
        raise DomainError(f"f_max must be >= 1, got {f_max}")
    if isinstance(scheme, BmScheme):
        if stats is not None:
            ratio = stats.length_ratio
        parameters = {
            "k1": scheme.params.k1,
            "b": scheme.params.b,
            "ratio": ratio,
            "K": bm.attenuation_K(scheme.params, ratio),
        }
        points = [(f, bm_weight(scheme, f, ratio, raw=raw)) for f in range(f_max + 1)]
    else:
        parameters = {key: getattr(scheme, key) for key in ("p", "k") if getattr(scheme, key) is not None}
        points = [(f, local_weight(scheme, f, stats, raw=raw)) for f in range(f_max + 1)]
    return ProfileCurve(scheme.name, parameters, raw, points)


def figure1_curves(f_max: int = 10) -> list[ProfileCurve]:
    """Saturating core and Box-Cox ``p = -1`` curves across ``FIGURE1_K``."""
    curves = [profile_curve(Scheme("poisson2", k=k), f_max) for k in FIGURE1_K]
    curves += [profile_curve(Scheme("boxcox", p=-1.0, k=k), f_max) for k in FIGURE1_K]
    return curves


def figure2_curves(f_max: int = 10) -> list[ProfileCurve]:
    """Unscaled BM25IR curves over ``FIGURE2_GRID`` at each of ``FIGURE2_RATIOS``."""
    return [
        profile_curve(BmScheme("bm25ir", bm.BmParams(k1, b)), f_max, ratio=ratio)
        for ratio in FIGURE2_RATIOS
        for k1, b in FIGURE2_GRID
    ]


def write_curves(curves: list[ProfileCurve], out_dir: str | Path) -> Path:
    """Write one CSV per curve plus ``manifest.json``; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for curve in curves:
        name = f"{curve.stem}.csv"
        curve.write_csv(out / name)
        entries.append(
            {"file": name, "scheme": curve.scheme, "raw": curve.raw, "parameters": curve.parameters}
        )
    manifest = out / "manifest.json"
    manifest.write_text(json.dumps({"curves": entries}, indent=2) + "\n")
    return manifest


@dataclass(frozen=True)
class IncrementReport:
    k: float
    increments: list[tuple[int, float]]
    argmax_n: int

    @property
    def first_or_second(self) -> str:
        return {1: "first", 2: "second"}.get(self.argmax_n, f"occurrence {self.argmax_n}")


def _inverse_weight(f: int, k: float) -> float:
    return 0.0 if f == 0 else 1.0 - 1.0 / (f + k)


def increment_report(k: float, n_max: int = 10) -> IncrementReport:
    """Weight gained by each additional occurrence under ``1 - 1/(f + k)``.

    ``argmax_n`` is the smallest occurrence index with the largest gain.
    """
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    deltas = [(n, _inverse_weight(n, k) - _inverse_weight(n - 1, k)) for n in range(1, n_max + 1)]
    best_n, best = deltas[0]
    for n, d in deltas[1:]:
        # gains equal up to rounding count as a tie; the earlier occurrence wins
        if d > best + 1e-12 * abs(best):
            best_n, best = n, d
    return IncrementReport(k, deltas, best_n)


def _first_minus_second(k: float) -> float:
    return (_inverse_weight(1, k) - _inverse_weight(0, k)) - (_inverse_weight(2, k) - _inverse_weight(1, k))


def bisect(func, lo: float, hi: float, tol: float, max_iter: int = 200) -> float:
    """Root of ``func`` in ``[lo, hi]`` by bisection; needs a sign change."""
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise DomainError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 2 * tol:
            return mid
        f_mid = func(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_k(tolerance: float = 1e-12) -> float:
    """The ``k`` at which the first and second occurrences gain equally."""
    if not tolerance > 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    return bisect(_first_minus_second, 0.0, 1.0, tolerance)


@dataclass(frozen=True)
class RegimeReport:
    K: float
    argmax_n: int
    first_or_second: str


def bm25ir_regime(params: bm.BmParams, ratio: float = 1.0, n_max: int = 10) -> RegimeReport:
    """Which occurrence carries the largest BM25IR gain for these parameters."""
    K = bm.attenuation_K(params, ratio)
    report = increment_report(K, n_max)
    return RegimeReport(K, report.argmax_n, report.first_or_second)
