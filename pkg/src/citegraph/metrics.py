"""Scalar citation indicators.

Database level: relation counts, density and per-journal means, plus ratios
between two databases. Journal level: self-citing and self-cited rates,
coverage share, visibility and the decomposition of received citations by
the origin of the citing journals.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping

from .corpus import CitationGraph
from .errors import EmptyBasisError, MissingTotalError, ValidationError

DEFAULT_MIN_COUNT = 2
GROUP_ATTRIBUTES = ("country", "language", "institution_class")


def round_half_up(value: float, decimals: int = 1) -> Decimal:
    """Round the way printed tables do (2.85 -> 2.9, not banker's rounding)."""
    quantum = Decimal(1).scaleb(-decimals)
    return Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP)


def percent(fraction: float | None, decimals: int = 1) -> str:
    if fraction is None:
        return "undefined"
    return f"{round_half_up(100 * fraction, decimals)}%"


@dataclass(frozen=True)
class DbStats:
    n_journals: int
    unique_relations: int
    relation_sum: int
    total_citing: int
    total_cited: int

    def __post_init__(self):
        if self.n_journals < 1:
            raise ValidationError("database statistics need at least one journal")
        for name in ("unique_relations", "relation_sum", "total_citing", "total_cited"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be nonnegative")
        if self.unique_relations > self.n_journals**2:
            raise ValidationError("more unique relations than ordered journal pairs")

    @property
    def density(self) -> float:
        return self.unique_relations / self.n_journals**2

    @property
    def mean_relations(self) -> float:
        return self.relation_sum / self.n_journals

    @property
    def mean_refs(self) -> float:
        return self.total_citing / self.n_journals

    @property
    def mean_cited(self) -> float:
        return self.total_cited / self.n_journals

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(
            density=self.density,
            mean_relations=self.mean_relations,
            mean_refs=self.mean_refs,
            mean_cited=self.mean_cited,
        )
        return d

    @classmethod
    def from_dict(cls, data: Mapping) -> "DbStats":
        return cls(**{k: int(data[k]) for k in (
            "n_journals", "unique_relations", "relation_sum", "total_citing", "total_cited"
        )})


def db_stats(graph: CitationGraph) -> DbStats:
    """Table-1 style aggregates from in-database totals only."""
    if graph.n_journals == 0:
        raise ValidationError("graph has no journals")
    total = graph.relation_sum
    return DbStats(
        n_journals=graph.n_journals,
        unique_relations=graph.unique_relation_count,
        relation_sum=total,
        total_citing=total,
        total_cited=total,
    )


def external_db_stats(graph: CitationGraph) -> DbStats:
    """Like :func:`db_stats` but totals summed from every journal's external counts."""
    refs = [j.external_total_refs for j in graph.journals.values()]
    cites = [j.external_total_cites for j in graph.journals.values()]
    if graph.n_journals == 0:
        raise ValidationError("graph has no journals")
    if None in refs or None in cites:
        raise MissingTotalError("not every journal carries external totals")
    return DbStats(
        n_journals=graph.n_journals,
        unique_relations=graph.unique_relation_count,
        relation_sum=graph.relation_sum,
        total_citing=sum(refs),
        total_cited=sum(cites),
    )


@dataclass(frozen=True)
class RatioReport:
    relations: float
    refs: float
    cited: float

    def summary(self) -> str:
        return " / ".join(f"×{round_half_up(r, 1)}" for r in (self.relations, self.refs, self.cited))


def db_compare(a: DbStats, b: DbStats) -> RatioReport:
    """Per-journal means of *a* divided by those of *b*."""
    for name in ("mean_relations", "mean_refs", "mean_cited"):
        if getattr(b, name) == 0:
            raise EmptyBasisError(f"{name} of the reference database is zero")
    return RatioReport(
        relations=a.mean_relations / b.mean_relations,
        refs=a.mean_refs / b.mean_refs,
        cited=a.mean_cited / b.mean_cited,
    )


@dataclass(frozen=True)
class JournalStats:
    id: str
    total_refs: int
    total_cites: int
    self_citations: int
    # None when the denominator is zero
    self_citing_rate: float | None
    self_cited_rate: float | None
    refs_basis: str = "external"
    cites_basis: str = "external"


def self_citation_rates(
    total_refs: int, total_cites: int, self_citations: int, journal_id: str = ""
) -> JournalStats:
    if min(total_refs, total_cites, self_citations) < 0:
        raise ValidationError("counts must be nonnegative")
    if self_citations > min(total_refs, total_cites):
        raise ValidationError(
            f"{journal_id or 'journal'}: {self_citations} self-citations exceed its totals"
        )
    return JournalStats(
        id=journal_id,
        total_refs=total_refs,
        total_cites=total_cites,
        self_citations=self_citations,
        self_citing_rate=self_citations / total_refs if total_refs else None,
        self_cited_rate=self_citations / total_cites if total_cites else None,
    )


def self_citation(graph: CitationGraph, journal_id: str) -> JournalStats:
    """Self-citation rates, preferring external totals over in-database ones."""
    rec = graph.journal(journal_id)
    refs = rec.external_total_refs
    cites = rec.external_total_cites
    stats = self_citation_rates(
        graph.out_total(journal_id) if refs is None else refs,
        graph.in_total(journal_id) if cites is None else cites,
        graph.self_total(journal_id),
        journal_id,
    )
    return JournalStats(
        **{
            **asdict(stats),
            "refs_basis": "indb" if refs is None else "external",
            "cites_basis": "indb" if cites is None else "external",
        }
    )


def _seed_total_cites(graph: CitationGraph, seed: str) -> int:
    rec = graph.journal(seed)
    total = graph.in_total(seed) if rec.external_total_cites is None else rec.external_total_cites
    if total == 0:
        raise EmptyBasisError(f"journal {seed!r} has no citations")
    return total


@dataclass(frozen=True)
class OriginShares:
    seed: str
    group_attribute: str
    min_count: int
    total_cites: int
    group_weights: Mapping[str, int]
    unattributed_weight: int
    share_by_group: Mapping[str, float] = field(init=False)
    other_share: float = field(init=False)

    def __post_init__(self):
        shares = {g: w / self.total_cites for g, w in sorted(self.group_weights.items())}
        object.__setattr__(self, "share_by_group", shares)
        object.__setattr__(self, "other_share", self.unattributed_weight / self.total_cites)


def origin_shares(
    graph: CitationGraph,
    seed: str,
    group_attribute: str = "country",
    min_count: int = DEFAULT_MIN_COUNT,
    restrict: Mapping[str, str] | None = None,
) -> OriginShares:
    """Split the seed's received citations by an attribute of the citing journal.

    Only citers giving at least *min_count* citations are attributed. Shares
    are fractions of the seed's total citations (external when known); the
    remainder, covering sub-threshold citers, citers excluded by *restrict*
    and citations from outside the edge list, is ``other_share``.

    *restrict* limits attribution to citers matching every ``attribute: value``
    pair, e.g. ``{"country": "CN"}`` to split the domestic share by language.
    """
    if group_attribute == "institution":
        group_attribute = "institution_class"
    if group_attribute not in GROUP_ATTRIBUTES:
        raise ValidationError(f"group attribute must be one of {GROUP_ATTRIBUTES}")
    if min_count < 1:
        raise ValidationError("min_count must be >= 1")
    total = _seed_total_cites(graph, seed)

    groups: dict[str, int] = {}
    for citer, w in graph.in_edges[seed].items():
        if w < min_count:
            continue
        rec = graph.journals[citer]
        if restrict and any(rec.attribute(k) != v for k, v in restrict.items()):
            continue
        key = rec.attribute(group_attribute)
        groups[key] = groups.get(key, 0) + w
    attributed = sum(groups.values())
    if attributed > total:
        raise ValidationError(
            f"{seed}: attributed citations {attributed} exceed total citations {total}"
        )
    return OriginShares(seed, group_attribute, min_count, total, groups, total - attributed)


@dataclass(frozen=True)
class DomesticSplit:
    seed: str
    country: str
    domestic: float
    international: float
    other: float


def domestic_international(
    graph: CitationGraph, seed: str, min_count: int = DEFAULT_MIN_COUNT
) -> DomesticSplit:
    """Citation shares from the seed's own country, from elsewhere, and the remainder.

    Citers with an empty country code count as unattributed.
    """
    country = graph.journal(seed).country
    shares = origin_shares(graph, seed, "country", min_count)
    domestic = shares.share_by_group.get(country, 0.0)
    international = sum(s for g, s in shares.share_by_group.items() if g and g != country)
    return DomesticSplit(seed, country, domestic, international, 1.0 - domestic - international)


def coverage_share(graph: CitationGraph, seed: str) -> float:
    """Fraction of the seed's full reference list landing on journals in the graph."""
    rec = graph.journal(seed)
    if rec.external_total_refs is None:
        raise MissingTotalError(f"journal {seed!r} has no external_total_refs")
    if rec.external_total_refs == 0:
        raise EmptyBasisError(f"journal {seed!r} has zero external_total_refs")
    return graph.out_total(seed) / rec.external_total_refs


@dataclass(frozen=True)
class Visibility:
    seed: str
    citing_journals: int
    n_journals: int
    include_self: bool

    @property
    def fraction(self) -> float:
        return self.citing_journals / self.n_journals


def visibility(graph: CitationGraph, seed: str, include_self: bool = True) -> Visibility:
    """Number and share of database journals citing the seed at least once."""
    graph.journal(seed)
    citers = set(graph.in_edges[seed])
    if not include_self:
        citers.discard(seed)
    return Visibility(seed, len(citers), graph.n_journals, include_self)
