"""Deterministic synthetic citation corpora.

Edge weights follow a truncated zeta law, ``P(w) ∝ w**-alpha`` for
``1 <= w <= max_weight``, sampled by inverse CDF over a precomputed table.
Cited journals are picked with probability proportional to
``(in_degree + 1) ** attachment``, so early-cited journals keep attracting
citations. Output is the pair of text files :mod:`citegraph.corpus` reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .corpus import (
    CitationEdge,
    InstitutionClass,
    JournalRecord,
    Language,
    format_edges,
    format_journals,
)
from .errors import ValidationError

FIELDS = ("geo-sciences", "general science", "materials", "life sciences", "engineering")


def _default_mix() -> dict[str, dict[str, float]]:
    return {
        "language": {"Chinese": 0.6, "English": 0.35, "Other": 0.05},
        "country": {"CN": 0.5, "US": 0.3, "GB": 0.2},
        "institution_class": {"University": 0.45, "Academy": 0.18, "Other": 0.37},
    }


@dataclass(frozen=True)
class SynthConfig:
    n_journals: int = 200
    alpha: float = 2.0
    max_weight: int = 10_000
    # mean number of distinct journals each journal cites; None targets ~2.5% density
    edges_per_journal: float | None = None
    rng_seed: int = 0
    attachment: float = 1.0
    # full totals = ceil(in-database total * factor)
    external_factor: float = 3.0
    attribute_mix: Mapping[str, Mapping[str, float]] = field(default_factory=_default_mix)

    def __post_init__(self):
        if self.n_journals < 2:
            raise ValidationError("n_journals must be >= 2")
        if self.alpha <= 1:
            raise ValidationError("alpha must exceed 1")
        if self.max_weight < 1:
            raise ValidationError("max_weight must be >= 1")
        if self.edges_per_journal is not None and self.edges_per_journal <= 0:
            raise ValidationError("edges_per_journal must be positive")
        if self.attachment < 0:
            raise ValidationError("attachment must be nonnegative")
        if self.external_factor < 1:
            raise ValidationError("external_factor must be >= 1")
        for attr, mix in self.attribute_mix.items():
            if attr not in ("language", "country", "institution_class"):
                raise ValidationError(f"unknown attribute {attr!r} in attribute_mix")
            if any(p < 0 for p in mix.values()) or not math.isclose(sum(mix.values()), 1.0, abs_tol=1e-9):
                raise ValidationError(f"{attr} fractions must be nonnegative and sum to 1")

    @property
    def mean_out_degree(self) -> float:
        if self.edges_per_journal is not None:
            return self.edges_per_journal
        return max(1.0, 0.025 * self.n_journals)


def zeta_pmf(alpha: float, max_weight: int) -> np.ndarray:
    """Probabilities of weights 1..max_weight under the truncated zeta law."""
    w = np.arange(1, max_weight + 1, dtype=float)
    p = w**-alpha
    return p / p.sum()


class ZetaSampler:
    """Inverse-CDF sampler for the truncated zeta law."""

    def __init__(self, alpha: float, max_weight: int):
        self.alpha = alpha
        self.max_weight = max_weight
        self.cdf = np.cumsum(zeta_pmf(alpha, max_weight))
        self.cdf[-1] = 1.0

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random(size)
        return np.searchsorted(self.cdf, u, side="right") + 1


def _pick(rng: np.random.Generator, mix: Mapping[str, float], n: int) -> list[str]:
    labels = list(mix)
    probs = np.array([mix[k] for k in labels], dtype=float)
    return [labels[i] for i in rng.choice(len(labels), size=n, p=probs / probs.sum())]


def generate_graph_data(config: SynthConfig) -> tuple[list[JournalRecord], list[CitationEdge]]:
    rng = np.random.default_rng(config.rng_seed)
    n = config.n_journals
    mix = {**_default_mix(), **config.attribute_mix}
    languages = _pick(rng, mix["language"], n)
    countries = _pick(rng, mix["country"], n)
    institutions = _pick(rng, mix["institution_class"], n)
    fields = rng.integers(0, len(FIELDS), size=n)

    sampler = ZetaSampler(config.alpha, config.max_weight)
    in_degree = np.zeros(n)
    edges: list[CitationEdge] = []
    width = len(str(n))
    ids = [f"J{i:0{width}d}" for i in range(1, n + 1)]
    for i in range(n):
        k = int(min(n, max(1, rng.poisson(config.mean_out_degree))))
        attract = (in_degree + 1.0) ** config.attachment
        targets = np.sort(rng.choice(n, size=k, replace=False, p=attract / attract.sum()))
        weights = sampler.sample(rng, k)
        for t, w in zip(targets, weights):
            edges.append(CitationEdge(ids[i], ids[int(t)], int(w)))
        in_degree[targets] += 1

    out_total = [0] * n
    in_total = [0] * n
    index = {jid: i for i, jid in enumerate(ids)}
    for e in edges:
        out_total[index[e.citing]] += e.weight
        in_total[index[e.cited]] += e.weight
    journals = [
        JournalRecord(
            id=ids[i],
            name=f"Synthetic Journal {i + 1}",
            language=Language(languages[i]),
            country=countries[i],
            institution_class=InstitutionClass(institutions[i]),
            field_tag=FIELDS[fields[i]],
            external_total_refs=math.ceil(out_total[i] * config.external_factor),
            external_total_cites=math.ceil(in_total[i] * config.external_factor),
        )
        for i in range(n)
    ]
    edges.sort(key=lambda e: (e.citing, e.cited))
    return journals, edges


def generate_corpus(config: SynthConfig) -> tuple[str, str]:
    """Return ``(journal_metadata_text, edge_list_text)`` for *config*."""
    journals, edges = generate_graph_data(config)
    return format_journals(journals), format_edges(edges)
