"""Named local term-weight models and the scheme grammar.

Schemes are written ``name[:param[:param]]``:

=================  ==============================================
``freq``           ``f``
``sqrt``           ``1 + sqrt(f - 0.5)``
``loga``           ``1 + log(f)``
``logn``           ``(1 + log f) / (1 + log avef)``
``logln``          ``log(f + 1) / log(dl)``
``logg``           ``0.2 + 0.8 log(f + 1)``
``tukey:p:k``      ``(f + k) ** p``
``boxcox:p:k``     ``((f + k) ** p - 1) / p``
``poisson2:k``     ``f / (f + k)``
``bm25:k1:b``      BM25 (defaults 1.2, 0.75)
``bm11:k1``        BM25 with ``b = 1``
``bm15:k1``        BM25 with ``b = 0``
``bm25ir:k1:b``    inverse-regression BM25
=================  ==============================================

Every scheme gives weight 0 to an absent term (``f = 0``) unless evaluated
with ``raw=True``, in which case the formula is applied literally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

from powerweight import bm
from powerweight.errors import DomainError
from powerweight.transforms import PowerParams, boxcox_transform, log, tukey_transform

NAMED = ("freq", "sqrt", "loga", "logn", "logln", "logg")
PARAMETRIC = ("tukey", "boxcox", "poisson2")
BM_VARIANTS = ("bm25", "bm11", "bm15", "bm25ir")


@dataclass(frozen=True)
class DocStats:
    """Per-document statistics some weights depend on.

    ``ave_term_freq`` is the mean occurrence count over the document's
    distinct terms, i.e. ``doc_length / n_distinct``.
    """

    doc_length: int = 1
    ave_doc_length: float = 1.0
    ave_term_freq: float = 1.0

    def __post_init__(self) -> None:
        if self.doc_length < 1:
            raise DomainError(f"doc_length must be >= 1, got {self.doc_length}")
        if not self.ave_doc_length > 0:
            raise DomainError(f"ave_doc_length must be > 0, got {self.ave_doc_length}")
        if not self.ave_term_freq >= 1:
            raise DomainError(f"ave_term_freq must be >= 1, got {self.ave_term_freq}")

    @property
    def length_ratio(self) -> float:
        return self.doc_length / self.ave_doc_length


def _fmt(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class Scheme:
    """A catalog weight model; ``p`` and ``k`` only for tukey/boxcox/poisson2."""

    kind: str
    p: float | None = None
    k: float | None = None

    def __post_init__(self) -> None:
        if self.kind in NAMED:
            if self.p is not None or self.k is not None:
                raise DomainError(f"{self.kind} takes no parameters")
        elif self.kind == "poisson2":
            if self.k is None or self.p is not None:
                raise DomainError("poisson2 takes exactly k")
        elif self.kind in ("tukey", "boxcox"):
            if self.p is None or self.k is None:
                raise DomainError(f"{self.kind} needs both p and k")
        else:
            raise DomainError(f"unknown scheme kind {self.kind!r}")

    @property
    def name(self) -> str:
        if self.kind == "poisson2":
            return f"poisson2:{_fmt(self.k)}"
        if self.kind in ("tukey", "boxcox"):
            return f"{self.kind}:{_fmt(self.p)}:{_fmt(self.k)}"
        return self.kind

    def weight(self, f: int, stats: DocStats | None = None, raw: bool = False) -> float:
        return local_weight(self, f, stats, raw=raw)


@dataclass(frozen=True)
class BmScheme:
    """A Best-Match variant with its parameters.

    ``bm11``/``bm15`` pin ``b`` to 1/0.  ``apply_scale=None`` in the params
    keeps each model's own default.
    """

    variant: str
    params: bm.BmParams = bm.BmParams()

    def __post_init__(self) -> None:
        if self.variant not in BM_VARIANTS:
            raise DomainError(f"unknown BM variant {self.variant!r}")
        pinned = {"bm11": 1.0, "bm15": 0.0}.get(self.variant)
        if pinned is not None and self.params.b != pinned:
            object.__setattr__(self, "params", replace(self.params, b=pinned))

    @property
    def name(self) -> str:
        p = self.params
        if self.variant in ("bm11", "bm15"):
            return f"{self.variant}:{_fmt(p.k1)}"
        return f"{self.variant}:{_fmt(p.k1)}:{_fmt(p.b)}"

    def weight(self, f: int, stats: DocStats | None = None, raw: bool = False) -> float:
        return local_weight(self, f, stats, raw=raw)


SchemeId = Union[Scheme, BmScheme]


def parse_scheme(text: str, apply_scale: bool | None = None) -> SchemeId:
    """Parse ``name[:param[:param]]`` into a scheme.

    >>> parse_scheme("boxcox:-1:1").name
    'boxcox:-1:1'
    >>> parse_scheme("bm25").params.k1
    1.2
    """
    name, *rest = text.strip().lower().split(":")
    try:
        vals = [float(v) for v in rest]
    except ValueError:
        raise DomainError(f"non-numeric parameter in scheme {text!r}") from None

    def arity(lo: int, hi: int) -> None:
        if not lo <= len(vals) <= hi:
            raise DomainError(f"scheme {name!r} takes {lo}-{hi} parameters, got {len(vals)}")

    if name in NAMED:
        arity(0, 0)
        return Scheme(name)
    if name in ("tukey", "boxcox"):
        arity(2, 2)
        return Scheme(name, p=vals[0], k=vals[1])
    if name == "poisson2":
        arity(1, 1)
        return Scheme(name, k=vals[0])
    if name in ("bm25", "bm25ir"):
        arity(0, 2)
        k1, b = (vals + [bm.DEFAULT_K1, bm.DEFAULT_B][len(vals):])[:2]
        return BmScheme(name, bm.BmParams(k1, b, apply_scale))
    if name in ("bm11", "bm15"):
        arity(0, 1)
        k1 = vals[0] if vals else bm.DEFAULT_K1
        return BmScheme(name, bm.BmParams(k1, 1.0 if name == "bm11" else 0.0, apply_scale))
    raise DomainError(f"unknown scheme {text!r}")


def _need(stats: DocStats | None, kind: str) -> DocStats:
    if stats is None:
        raise DomainError(f"{kind} needs document statistics")
    return stats


def _catalog(scheme: Scheme, f: float, stats: DocStats | None) -> float:
    kind = scheme.kind
    if kind == "freq":
        return float(f)
    if kind == "sqrt":
        if f < 0.5:
            raise DomainError("sqrt weight needs f >= 0.5")
        return 1.0 + math.sqrt(f - 0.5)
    if kind in ("loga", "logn"):
        if f <= 0:
            raise DomainError(f"{kind} weight is undefined at f = 0")
        value = 1.0 + log(f)
        if kind == "logn":
            value /= 1.0 + log(_need(stats, kind).ave_term_freq)
        return value
    if kind == "logln":
        dl = _need(stats, kind).doc_length
        if dl < 2:
            raise DomainError("logln needs doc_length >= 2 (log(1) = 0 denominator)")
        return log(f + 1.0) / log(dl)
    if kind == "logg":
        return 0.2 + 0.8 * log(f + 1.0)
    if kind == "tukey":
        return tukey_transform(f, PowerParams(scheme.p, scheme.k))
    if kind == "boxcox":
        return boxcox_transform(f, PowerParams(scheme.p, scheme.k))
    return bm.poisson2_core(f, scheme.k)


def local_weight(
    scheme: SchemeId, f: int, stats: DocStats | None = None, raw: bool = False
) -> float:
    """Local weight of a term occurring ``f`` times under ``scheme``.

    Absent terms weigh exactly 0; ``raw=True`` evaluates the formula at
    ``f = 0`` instead (used for plotting).  BM schemes read the length ratio
    from ``stats`` and assume an average-length document without it.

    Raises
    ------
    DomainError
        For negative ``f``, ``logln`` with ``doc_length < 2``, or a
        power transform evaluated where ``f + k <= 0``.
    """
    if f < 0:
        raise DomainError(f"f must be non-negative, got {f}")
    if f == 0 and not raw:
        if isinstance(scheme, Scheme) and scheme.kind == "logln":
            _catalog(scheme, 1, stats)  # still reject dl < 2
        return 0.0
    if isinstance(scheme, Scheme):
        return _catalog(scheme, f, stats)

    ratio = stats.length_ratio if stats is not None else 1.0
    return bm_weight(scheme, f, ratio, raw=raw)


def bm_weight(scheme: BmScheme, f: int, ratio: float = 1.0, raw: bool = False) -> float:
    """Weight of a BM scheme at length ratio ``dl / avedl``."""
    params = scheme.params
    if scheme.variant == "bm25ir":
        if raw:
            K = bm.attenuation_K(params, ratio)
            return bm.inverse_core(f, K) * params.scale(False)
        return bm.bm25ir_local(f, params, ratio)
    return bm.bm_local(f, params, ratio)
