"""A small in-memory inverted index scored with any local weight times IDF."""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

from powerweight.catalog import BmScheme, DocStats, SchemeId
from powerweight.errors import DomainError, DuplicateIdError, EmptyCorpusError, FormatError

INDEX_FORMAT = "powerweight-index"
INDEX_VERSION = 1

_SPLIT = re.compile(r"[^0-9a-z]+")


def tokenize(text: str) -> list[str]:
    """Lower-case and split on every run of non-alphanumeric characters.

    >>> tokenize("The cat, the CAT!")
    ['the', 'cat', 'the', 'cat']
    """
    return [t for t in _SPLIT.split(text.lower()) if t]


@dataclass(frozen=True)
class Posting:
    doc_id: int
    term_freq: int


@dataclass
class Document:
    doc_id: int
    text: str
    tokens: list[str]
    term_freqs: Counter
    stats: DocStats | None = None

    @property
    def length(self) -> int:
        return len(self.tokens)


@dataclass
class Index:
    documents: dict[int, Document]
    postings: dict[str, list[Posting]]
    avedl: float

    @property
    def N(self) -> int:
        return len(self.documents)

    def doc_freq(self, term: str) -> int:
        return len(self.postings.get(term, ()))


@dataclass
class QueryResult:
    hits: list[tuple[int, float]]
    terms: list[str]
    scheme: str

    @property
    def doc_ids(self) -> list[int]:
        return [d for d, _ in self.hits]

    def to_jsonl(self) -> str:
        return "".join(
            f'{{"rank": {rank}, "doc_id": {doc_id}, "score": {score:.6f}}}\n'
            for rank, (doc_id, score) in enumerate(self.hits, start=1)
        )


def build_index(records: Iterable[tuple[int, str]]) -> Index:
    """Build an index from ``(id, text)`` pairs.

    Documents with no tokens are skipped.  Raises DuplicateIdError on a
    repeated id and EmptyCorpusError when nothing is left.
    """
    documents: dict[int, Document] = {}
    for doc_id, text in records:
        if doc_id in documents:
            raise DuplicateIdError(f"duplicate document id {doc_id}")
        tokens = tokenize(text)
        if not tokens:
            continue
        documents[doc_id] = Document(doc_id, text, tokens, Counter(tokens))
    if not documents:
        raise EmptyCorpusError("no documents with tokens")

    avedl = sum(d.length for d in documents.values()) / len(documents)
    postings: dict[str, list[Posting]] = {}
    for doc_id in sorted(documents):
        doc = documents[doc_id]
        doc.stats = DocStats(doc.length, avedl, doc.length / len(doc.term_freqs))
        for term, tf in doc.term_freqs.items():
            postings.setdefault(term, []).append(Posting(doc_id, tf))
    return Index(documents, postings, avedl)


def _parse_record(line: str, lineno: int) -> tuple[int, str]:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(rec, dict):
        raise FormatError(f"line {lineno}: expected an object")
    doc_id, text = rec.get("id"), rec.get("text")
    if not isinstance(doc_id, int) or isinstance(doc_id, bool) or doc_id < 0:
        raise FormatError(f"line {lineno}: 'id' must be a non-negative integer")
    if not isinstance(text, str):
        raise FormatError(f"line {lineno}: 'text' must be a string")
    return doc_id, text


def ingest_corpus(lines: Iterable[str]) -> Index:
    """Build an index from JSON lines with fields ``id`` and ``text``."""
    records = (
        _parse_record(line, n) for n, line in enumerate(lines, start=1) if line.strip()
    )
    return build_index(records)


def save_index(index: Index, path: str | Path) -> None:
    payload = {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "n_docs": index.N,
        "avedl": index.avedl,
        "documents": [
            {"id": d, "text": index.documents[d].text} for d in sorted(index.documents)
        ],
    }
    Path(path).write_text(json.dumps(payload) + "\n")


def load_index(path: str | Path) -> Index:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not a JSON index ({exc.msg})") from None
    if not isinstance(payload, dict) or payload.get("format") != INDEX_FORMAT:
        raise FormatError(f"{path}: not a {INDEX_FORMAT} file")
    if payload.get("version") != INDEX_VERSION:
        raise FormatError(f"{path}: unsupported index version {payload.get('version')}")
    index = build_index((d["id"], d["text"]) for d in payload["documents"])
    if index.N != payload["n_docs"] or not math.isclose(index.avedl, payload["avedl"]):
        raise FormatError(f"{path}: header does not match stored documents")
    return index


def idf(term: str, index: Index) -> float:
    """Smoothed ``log2((N + 1) / (n_t + 0.5))``; positive for every term."""
    return math.log2((index.N + 1) / (index.doc_freq(term) + 0.5))


def scoring_scheme(scheme: SchemeId) -> SchemeId:
    """BM25IR is scaled by ``k1 + 1`` when scoring unless told otherwise."""
    if isinstance(scheme, BmScheme) and scheme.params.apply_scale is None:
        return replace(scheme, params=replace(scheme.params, apply_scale=True))
    return scheme


def _distinct(terms: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(terms))


def score_document(terms: Iterable[str], doc_id: int, index: Index, scheme: SchemeId) -> float:
    """Sum of local weight times IDF over the distinct query terms.

    Any object with a ``weight(f, stats)`` method can serve as the scheme.
    """
    doc = index.documents[doc_id]
    scheme = scoring_scheme(scheme)
    return sum(
        scheme.weight(doc.term_freqs.get(t, 0), doc.stats) * idf(t, index)
        for t in _distinct(terms)
    )


def rank_query(query: str, index: Index, scheme: SchemeId, top_k: int = 10) -> QueryResult:
    """Rank every document containing a query term; ties go to the lower id."""
    if top_k < 1:
        raise DomainError(f"top_k must be >= 1, got {top_k}")
    terms = _distinct(tokenize(query))
    candidates = sorted({p.doc_id for t in terms for p in index.postings.get(t, ())})
    scored = [(d, score_document(terms, d, index, scheme)) for d in candidates]
    scored.sort(key=lambda hit: (-hit[1], hit[0]))
    return QueryResult(scored[:top_k], terms, scheme.name)


def kendall_tau(ranking_a: list[int], ranking_b: list[int]) -> float:
    """Kendall rank correlation between two orderings of the same ids."""
    if len(set(ranking_a)) != len(ranking_a) or set(ranking_a) != set(ranking_b) or len(ranking_a) != len(ranking_b):
        raise DomainError("rankings must be permutations of the same id set")
    if len(ranking_a) < 2:
        raise DomainError("need at least two ranked ids")
    from scipy.stats import kendalltau

    pos_b = {d: i for i, d in enumerate(ranking_b)}
    return float(kendalltau(range(len(ranking_a)), [pos_b[d] for d in ranking_a]).statistic)
