"""Local term weights from power transformations, BM25 and BM25IR."""

from powerweight.analysis import (
    CRITICAL_K_EXACT,
    InverseRegressionParams,
    IncrementReport,
    ProfileCurve,
    bm25ir_regime,
    critical_k,
    increment_report,
    inverse_regression_eval,
    profile_curve,
)
from powerweight.bm import (
    BmParams,
    attenuation_K,
    bm25ir_local,
    bm_local,
    length_norm_B,
    poisson2_core,
)
from powerweight.catalog import BmScheme, DocStats, Scheme, local_weight, parse_scheme
from powerweight.engine import (
    Index,
    QueryResult,
    idf,
    ingest_corpus,
    kendall_tau,
    rank_query,
    score_document,
    tokenize,
)
from powerweight.errors import DomainError, DuplicateIdError, EmptyCorpusError, FormatError
from powerweight.transforms import PowerParams, boxcox_transform, tukey_transform

__version__ = "0.1.0"
