import io
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citegraph.corpus import (
    CitationEdge,
    InstitutionClass,
    JournalRecord,
    Language,
    build_graph,
    check_external_totals,
    format_edges,
    format_journals,
    load_graph,
    parse_edges,
    parse_journals,
)
from citegraph.errors import UnknownJournalError, ValidationError

from conftest import graph_from_rows, journals, random_rows

HEADER = "id,name,language,country,institution_class,field_tag,external_total_refs,external_total_cites\n"


def test_parse_journal_line_with_external_totals():
    text = HEADER + "CSB-C,Chinese Science Bulletin,Chinese,CN,Academy,general science,11506,3958\n"
    (rec,) = parse_journals(text)
    assert rec.id == "CSB-C"
    assert rec.language is Language.CHINESE
    assert rec.institution_class is InstitutionClass.ACADEMY
    assert rec.field_tag == "general science"
    assert (rec.external_total_refs, rec.external_total_cites) == (11506, 3958)


def test_empty_file_after_header():
    assert parse_journals(HEADER) == []


def test_negative_external_total_reports_line():
    text = HEADER + "A,a,English,US,University,x,1,1\nB,b,English,US,University,x,-5,\n"
    with pytest.raises(ValidationError, match="line 3"):
        parse_journals(text)


def test_unknown_attributes_and_blank_totals():
    text = HEADER + "A,a,Klingon,US,,x,,\nB,b,english,US,Ministry,x,,\n"
    a, b = parse_journals(text)
    assert a.language is Language.OTHER
    assert a.institution_class is InstitutionClass.UNKNOWN
    assert b.language is Language.ENGLISH
    assert b.institution_class is InstitutionClass.OTHER
    assert a.external_total_refs is None and a.external_total_cites is None


def test_duplicate_id_rejected():
    with pytest.raises(ValidationError, match="duplicate"):
        parse_journals(HEADER + "A,a,English,US,,x,,\nA,b,English,US,,x,,\n")


@pytest.mark.parametrize(
    "line, message",
    [("A,a,English\n", "expected 8 fields"), ("A,a,English,US,,x,ten,\n", "not an integer")],
)
def test_malformed_journal_line(line, message):
    with pytest.raises(ValidationError, match=message) as info:
        parse_journals(HEADER + line)
    assert info.value.line == 2


def test_parse_journals_accepts_bytes_path_and_stream(tmp_path):
    text = HEADER + "A,名称,Chinese,CN,University,x,3,4\n"
    path = tmp_path / "j.csv"
    path.write_text(text, encoding="utf-8")
    expected = parse_journals(text)
    assert parse_journals(text.encode("utf-8")) == expected
    assert parse_journals(path) == expected
    assert parse_journals(io.BytesIO(text.encode("utf-8"))) == expected
    assert expected[0].name == "名称"


def test_optional_abbreviation_column():
    text = "abbreviation," + HEADER + "CSB,A,a,English,US,,x,,\n"
    assert parse_journals(text)[0].abbreviation == "CSB"


def edge_text(*rows):
    return "citing\tcited\tcount\n" + "".join(f"{a}\t{b}\t{w}\n" for a, b, w in rows)


def test_repeated_rows_are_summed():
    table = parse_edges(edge_text(("A", "B", 3), ("A", "B", 2)), journals("A", "B"))
    assert list(table) == [CitationEdge("A", "B", 5)]


def test_self_edge_kept():
    table = parse_edges(edge_text(("A", "A", 64)), journals("A"))
    assert list(table) == [CitationEdge("A", "A", 64)]


def test_unknown_journal_strict_names_it():
    with pytest.raises(UnknownJournalError, match="'X'"):
        parse_edges(edge_text(("A", "X", 1)), journals("A"))


def test_unknown_journal_lenient_is_reported():
    table = parse_edges(edge_text(("A", "X", 1), ("A", "A", 2)), journals("A"), strict=False)
    assert list(table) == [CitationEdge("A", "A", 2)]
    assert [(s.line, s.cited) for s in table.skipped] == [(2, "X")]


@pytest.mark.parametrize("row", ["A\tB\t0", "A\tB\t-2", "A\tB", "A\tB\tx"])
def test_bad_edge_rows(row):
    with pytest.raises(ValidationError):
        parse_edges("citing\tcited\tcount\n" + row + "\n", journals("A", "B"), strict=False)


def test_bad_edge_header():
    with pytest.raises(ValidationError, match="header"):
        parse_edges("from\tto\tn\n", journals("A"))


def test_build_graph_totals():
    g = graph_from_rows(["A", "B"], [("A", "B", 3), ("B", "A", 2), ("A", "A", 5)])
    assert (g.out_total("A"), g.in_total("A"), g.self_total("A")) == (8, 7, 5)
    assert g.unique_relation_count == 3
    assert g.relation_sum == 10


def test_graph_without_edges():
    g = build_graph(journals("A", "B"), [])
    assert [g.out_total(j) + g.in_total(j) + g.self_total(j) for j in "AB"] == [0, 0]
    assert g.relation_sum == 0 and g.unique_relation_count == 0


def test_graph_is_immutable():
    g = build_graph(journals("A"), [CitationEdge("A", "A", 1)])
    with pytest.raises(TypeError):
        g.weights["A", "A"] = 3
    with pytest.raises(AttributeError):
        g.journals = {}


def test_unknown_lookup():
    g = build_graph(journals("A"), [])
    with pytest.raises(UnknownJournalError):
        g.out_total("Z")


def test_build_graph_rejects_dangling_edge():
    with pytest.raises(UnknownJournalError):
        build_graph(journals("A"), [CitationEdge("A", "B", 1)])


def brute_force_totals(rows):
    out, inn, self_, pairs = {}, {}, {}, set()
    for a, b, w in rows:
        out[a] = out.get(a, 0) + w
        inn[b] = inn.get(b, 0) + w
        if a == b:
            self_[a] = self_.get(a, 0) + w
        pairs.add((a, b))
    return out, inn, self_, pairs


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 15), st.integers(0, 120))
def test_totals_match_brute_force(seed, n, m):
    rng = random.Random(seed)
    ids, rows = random_rows(rng, n, m)
    g = graph_from_rows(ids, rows)
    out, inn, self_, pairs = brute_force_totals(rows)
    for j in ids:
        assert g.out_total(j) == out.get(j, 0)
        assert g.in_total(j) == inn.get(j, 0)
        assert g.self_total(j) == self_.get(j, 0)
    assert g.unique_relation_count == len(pairs)
    total = sum(w for _, _, w in rows)
    assert g.relation_sum == total
    assert sum(g.out_total(j) for j in ids) == sum(g.in_total(j) for j in ids) == total

    shuffled = rows[:]
    rng.shuffle(shuffled)
    assert dict(graph_from_rows(ids, shuffled).weights) == dict(g.weights)


def test_format_round_trip(tmp_path: Path):
    recs = [
        JournalRecord("A", 'Name, with "quotes"', Language.ENGLISH, "US", InstitutionClass.UNIVERSITY, "x", 10, 4),
        JournalRecord("B", "b", external_total_refs=None),
    ]
    assert parse_journals(format_journals(recs)) == recs
    edges = [CitationEdge("A", "B", 2), CitationEdge("B", "B", 1)]
    (tmp_path / "j.csv").write_text(format_journals(recs), encoding="utf-8")
    (tmp_path / "e.tsv").write_text(format_edges(edges), encoding="utf-8")
    g, table = load_graph(tmp_path / "j.csv", tmp_path / "e.tsv")
    assert list(g.edges()) == edges and not table.skipped


def test_check_external_totals_flags_undercount():
    recs = [JournalRecord("A", "a", external_total_refs=1, external_total_cites=10)]
    g = build_graph(recs, [CitationEdge("A", "A", 3)])
    problems = check_external_totals(g)
    assert len(problems) == 1 and "external_total_refs" in problems[0]
