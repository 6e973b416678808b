"""Journal records, aggregated citation edges and the immutable citation graph.

Two delimited text formats feed the graph:

* journal metadata, comma-separated with the header
  ``id,name,language,country,institution_class,field_tag,external_total_refs,external_total_cites``
  (an optional ``abbreviation`` column may be added anywhere);
* the edge list, tab-separated with the header ``citing<TAB>cited<TAB>count``.

Repeated (citing, cited) rows are summed into a single edge. Self-edges are
kept: they are journal self-citations.
"""

from __future__ import annotations

import csv
import enum
import io
import os
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import IO, Union

from .errors import UnknownJournalError, ValidationError

Source = Union[str, bytes, os.PathLike, IO[str], IO[bytes], Iterable[str]]

JOURNAL_COLUMNS = (
    "id",
    "name",
    "language",
    "country",
    "institution_class",
    "field_tag",
    "external_total_refs",
    "external_total_cites",
)
EDGE_COLUMNS = ("citing", "cited", "count")


class Language(str, enum.Enum):
    CHINESE = "Chinese"
    ENGLISH = "English"
    OTHER = "Other"

    @classmethod
    def parse(cls, text: str) -> "Language":
        for member in cls:
            if member.value.lower() == text.strip().lower():
                return member
        return cls.OTHER


class InstitutionClass(str, enum.Enum):
    UNIVERSITY = "University"
    ACADEMY = "Academy"
    OTHER = "Other"
    UNKNOWN = "Unknown"

    @classmethod
    def parse(cls, text: str) -> "InstitutionClass":
        text = text.strip()
        if not text:
            return cls.UNKNOWN
        for member in cls:
            if member.value.lower() == text.lower():
                return member
        return cls.OTHER


@dataclass(frozen=True)
class JournalRecord:
    id: str
    name: str
    language: Language = Language.OTHER
    country: str = ""
    institution_class: InstitutionClass = InstitutionClass.UNKNOWN
    field_tag: str = ""
    external_total_refs: int | None = None
    external_total_cites: int | None = None
    abbreviation: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValidationError("journal id must be non-empty")
        for name in ("external_total_refs", "external_total_cites"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValidationError(f"{name} must be nonnegative, got {value}")

    def attribute(self, name: str) -> str:
        """Grouping value for ``country``, ``language`` or ``institution_class``."""
        if name == "country":
            return self.country
        if name == "language":
            return self.language.value
        if name in ("institution_class", "institution"):
            return self.institution_class.value
        raise ValueError(f"unknown grouping attribute {name!r}")


@dataclass(frozen=True)
class CitationEdge:
    citing: str
    cited: str
    weight: int

    def __post_init__(self):
        if self.weight < 1:
            raise ValidationError(f"edge weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class SkippedRow:
    line: int
    citing: str
    cited: str
    count: int
    reason: str


@dataclass(frozen=True)
class EdgeTable:
    """Aggregated edges plus the rows dropped in lenient mode."""

    edges: tuple[CitationEdge, ...]
    skipped: tuple[SkippedRow, ...] = ()

    def __iter__(self) -> Iterator[CitationEdge]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def _text_lines(source: Source) -> list[str]:
    """Read *source* into a list of lines.

    ``str`` is treated as literal content, ``os.PathLike`` as a file path.
    """
    if isinstance(source, os.PathLike):
        with open(source, encoding="utf-8", newline="") as fh:
            return fh.read().splitlines()
    if isinstance(source, bytes):
        return source.decode("utf-8").splitlines()
    if isinstance(source, str):
        return source.splitlines()
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return data.splitlines()
    return [line.rstrip("\r\n") for line in source]


def _parse_count(text: str, column: str, line: int) -> int | None:
    text = text.strip()
    if not text:
        return None
    try:
        value = int(text)
    except ValueError:
        raise ValidationError(f"{column} is not an integer: {text!r}", line) from None
    if value < 0:
        raise ValidationError(f"{column} must be nonnegative, got {value}", line)
    return value


def parse_journals(source: Source) -> list[JournalRecord]:
    """Parse journal metadata (comma-separated, header row required)."""
    lines = _text_lines(source)
    if not lines:
        raise ValidationError("missing header row", 1)
    reader = csv.reader(lines)
    header = [h.strip() for h in next(reader)]
    missing = [c for c in JOURNAL_COLUMNS if c not in header]
    if missing:
        raise ValidationError(f"header lacks columns {missing}", 1)
    index = {name: i for i, name in enumerate(header)}

    records: list[JournalRecord] = []
    seen: set[str] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ValidationError(
                f"expected {len(header)} fields, found {len(row)}", lineno
            )
        jid = row[index["id"]].strip()
        if not jid:
            raise ValidationError("empty journal id", lineno)
        if jid in seen:
            raise ValidationError(f"duplicate journal id {jid!r}", lineno)
        seen.add(jid)
        abbreviation = None
        if "abbreviation" in index:
            abbreviation = row[index["abbreviation"]].strip() or None
        records.append(
            JournalRecord(
                id=jid,
                name=row[index["name"]].strip(),
                language=Language.parse(row[index["language"]]),
                country=row[index["country"]].strip(),
                institution_class=InstitutionClass.parse(row[index["institution_class"]]),
                field_tag=row[index["field_tag"]].strip(),
                external_total_refs=_parse_count(
                    row[index["external_total_refs"]], "external_total_refs", lineno
                ),
                external_total_cites=_parse_count(
                    row[index["external_total_cites"]], "external_total_cites", lineno
                ),
                abbreviation=abbreviation,
            )
        )
    return records


def parse_edges(
    source: Source, journals: Iterable[JournalRecord], strict: bool = True
) -> EdgeTable:
    """Parse and aggregate a tab-separated edge list.

    Rows naming a journal absent from *journals* raise in strict mode and are
    collected in ``EdgeTable.skipped`` otherwise. Nonpositive counts and
    malformed rows always raise.
    """
    known = {j.id for j in journals}
    lines = _text_lines(source)
    if not lines:
        raise ValidationError("missing header row", 1)
    header = [h.strip() for h in lines[0].split("\t")]
    if tuple(header) != EDGE_COLUMNS:
        raise ValidationError(
            f"edge header must be {'<TAB>'.join(EDGE_COLUMNS)!r}, got {lines[0]!r}", 1
        )

    totals: dict[tuple[str, str], int] = {}
    skipped: list[SkippedRow] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValidationError(f"expected 3 tab-separated fields, found {len(parts)}", lineno)
        citing, cited, raw = (p.strip() for p in parts)
        try:
            count = int(raw)
        except ValueError:
            raise ValidationError(f"count is not an integer: {raw!r}", lineno) from None
        if count < 1:
            raise ValidationError(f"count must be positive, got {count}", lineno)
        unknown = next((j for j in (citing, cited) if j not in known), None)
        if unknown is not None:
            if strict:
                raise UnknownJournalError(unknown, lineno)
            skipped.append(SkippedRow(lineno, citing, cited, count, f"unknown journal {unknown!r}"))
            continue
        totals[citing, cited] = totals.get((citing, cited), 0) + count

    edges = tuple(CitationEdge(a, b, w) for (a, b), w in sorted(totals.items()))
    return EdgeTable(edges, tuple(skipped))


@dataclass(frozen=True, eq=False)
class CitationGraph:
    """Directed, weighted journal-journal citation aggregate.

    Built through :func:`build_graph`; all lookups are read-only views.
    """

    journals: Mapping[str, JournalRecord]
    weights: Mapping[tuple[str, str], int]
    out_edges: Mapping[str, Mapping[str, int]] = field(repr=False)
    in_edges: Mapping[str, Mapping[str, int]] = field(repr=False)
    _out_total: Mapping[str, int] = field(repr=False)
    _in_total: Mapping[str, int] = field(repr=False)

    @property
    def n_journals(self) -> int:
        return len(self.journals)

    @property
    def unique_relation_count(self) -> int:
        return len(self.weights)

    @property
    def relation_sum(self) -> int:
        return sum(self._out_total.values())

    def __contains__(self, journal_id: object) -> bool:
        return journal_id in self.journals

    def journal(self, journal_id: str) -> JournalRecord:
        try:
            return self.journals[journal_id]
        except KeyError:
            raise UnknownJournalError(journal_id) from None

    def weight(self, citing: str, cited: str) -> int:
        return self.weights.get((citing, cited), 0)

    def out_total(self, journal_id: str) -> int:
        self.journal(journal_id)
        return self._out_total[journal_id]

    def in_total(self, journal_id: str) -> int:
        self.journal(journal_id)
        return self._in_total[journal_id]

    def self_total(self, journal_id: str) -> int:
        self.journal(journal_id)
        return self.weight(journal_id, journal_id)

    def edges(self) -> Iterator[CitationEdge]:
        for (a, b), w in self.weights.items():
            yield CitationEdge(a, b, w)


def build_graph(
    journals: Iterable[JournalRecord], edges: Iterable[CitationEdge]
) -> CitationGraph:
    """Assemble a :class:`CitationGraph` and cache per-journal totals.

    Edges repeating an ordered pair are summed, so raw rows may be passed.
    """
    records: dict[str, JournalRecord] = {}
    for j in journals:
        if j.id in records:
            raise ValidationError(f"duplicate journal id {j.id!r}")
        records[j.id] = j

    weights: dict[tuple[str, str], int] = {}
    for e in edges:
        for end in (e.citing, e.cited):
            if end not in records:
                raise UnknownJournalError(end)
        weights[e.citing, e.cited] = weights.get((e.citing, e.cited), 0) + e.weight
    weights = dict(sorted(weights.items()))

    out_edges: dict[str, dict[str, int]] = {j: {} for j in records}
    in_edges: dict[str, dict[str, int]] = {j: {} for j in records}
    for (a, b), w in weights.items():
        out_edges[a][b] = w
        in_edges[b][a] = w

    return CitationGraph(
        journals=MappingProxyType(records),
        weights=MappingProxyType(weights),
        out_edges=MappingProxyType({k: MappingProxyType(v) for k, v in out_edges.items()}),
        in_edges=MappingProxyType({k: MappingProxyType(v) for k, v in in_edges.items()}),
        _out_total=MappingProxyType({k: sum(v.values()) for k, v in out_edges.items()}),
        _in_total=MappingProxyType({k: sum(v.values()) for k, v in in_edges.items()}),
    )


def load_graph(
    journals_path: str | os.PathLike, edges_path: str | os.PathLike, strict: bool = True
) -> tuple[CitationGraph, EdgeTable]:
    """Read both corpus files from disk and build the graph."""
    journals = parse_journals(Path(journals_path))
    table = parse_edges(Path(edges_path), journals, strict=strict)
    return build_graph(journals, table.edges), table


def check_external_totals(graph: CitationGraph) -> list[str]:
    """Journals whose external totals fall below their in-database totals."""
    problems = []
    for jid, rec in graph.journals.items():
        if rec.external_total_refs is not None and rec.external_total_refs < graph.out_total(jid):
            problems.append(
                f"{jid}: external_total_refs {rec.external_total_refs} < "
                f"in-database references {graph.out_total(jid)}"
            )
        if rec.external_total_cites is not None and rec.external_total_cites < graph.in_total(jid):
            problems.append(
                f"{jid}: external_total_cites {rec.external_total_cites} < "
                f"in-database citations {graph.in_total(jid)}"
            )
    return problems


def format_journals(records: Iterable[JournalRecord]) -> str:
    """Serialize records in the journal metadata format (inverse of parse_journals)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(JOURNAL_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.id,
                r.name,
                r.language.value,
                r.country,
                r.institution_class.value,
                r.field_tag,
                "" if r.external_total_refs is None else r.external_total_refs,
                "" if r.external_total_cites is None else r.external_total_cites,
            ]
        )
    return buf.getvalue()


def format_edges(edges: Iterable[CitationEdge]) -> str:
    lines = ["\t".join(EDGE_COLUMNS)]
    lines.extend(f"{e.citing}\t{e.cited}\t{e.weight}" for e in edges)
    return "\n".join(lines) + "\n"
