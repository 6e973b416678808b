"""Published 2003 CSTPCD and SCI figures, and consistency checks against them.

The raw journal-journal matrices are proprietary, so these aggregates are
the only real-data fixtures available. :func:`consistency_checks` recomputes
every derived figure from its published inputs and compares it with the
printed value at the printed precision.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import metrics
from .metrics import DbStats, round_half_up

CSTPCD_2003 = DbStats(
    n_journals=1576,
    unique_relations=157_659,
    relation_sum=573_543,
    total_citing=2_233_524,
    total_cited=570_384,
)
SCI_2003 = DbStats(
    n_journals=5907,
    unique_relations=971_502,
    relation_sum=17_604_594,
    total_citing=23_953_246,
    total_cited=19_497_302,
)

# printed density cells, percent
PRINTED_DENSITY = {"CSTPCD": 2.3, "SCI": 2.8}
# printed per-journal means (relations, references, citations)
PRINTED_MEANS = {"CSTPCD": (364, 1417, 362), "SCI": (2980, 4055, 3301)}
# "eight times", "approximately three times", "nine times"
PRINTED_RATIOS = (8, 3, 9)


@dataclass(frozen=True)
class SelfCitationRow:
    journal: str
    source: str
    total_refs: int
    total_cites: int
    self_citations: int
    self_citing_pct: float
    self_cited_pct: float


SELF_CITATION_TABLE = (
    SelfCitationRow("JUSTB-E", "SCI", 1338, 145, 64, 4.8, 44.1),
    SelfCitationRow("JIM", "SCI", 2788, 346, 90, 3.2, 26.0),
    SelfCitationRow("JUSTB-C", "CSTPCD", 1300, 311, 77, 5.9, 24.8),
    SelfCitationRow("SCSE-C", "CSTPCD", 1922, 136, 31, 1.6, 22.8),
    SelfCitationRow("CSB-E", "SCI", 12082, 2302, 407, 3.4, 17.7),
    SelfCitationRow("JIM", "CSTPCD", 3279, 896, 93, 2.8, 10.4),
    SelfCitationRow("SCSC-E", "SCI", 1522, 228, 21, 1.4, 9.2),
    SelfCitationRow("SCSE-E", "SCI", 1003, 210, 19, 1.9, 9.0),
    SelfCitationRow("CSB-C", "CSTPCD", 11506, 3958, 332, 2.9, 8.4),
    SelfCitationRow("JMST", "SCI", 2656, 318, 25, 0.9, 7.9),
    SelfCitationRow("SCSC-C", "CSTPCD", 1641, 282, 17, 1.0, 6.0),
)

# Chinese / international / other journals, percent of citations received (SCI)
ORIGIN_TABLE = {
    "CSB-E": (47, 33, 20),
    "JIM": (56, 19, 25),
    "JMST": (21, 46, 23),
    "SCSC-E": (38, 30, 22),
    "JUSTB-E": (64, 11, 25),
    "SCSE-E": (38, 22, 40),
}

# (journal, in-database references, full reference count, printed percent)
COVERAGE_FIGURES = (
    ("CSB-C", 1605, 11506, 14),
    ("JIM", 407, 3279, 14),
    ("SCSC-C", 157, 1641, 10),
)
# (journal, citing journals, database size, printed percent)
VISIBILITY_FIGURES = (("CSB-C", 700, 1576, 44),)

# CSB-E received citations: total, from journals citing it >= 2 times, and
# from the Chinese journals among those
CSBE_CITES_TOTAL = 2302
CSBE_CITES_QUALIFYING = 1900
CSBE_CITES_CHINESE = 1091
CSBE_TEXT_OTHER_PCT = 18


@dataclass(frozen=True)
class Check:
    name: str
    computed: float
    printed: float
    decimals: int
    note: str = ""

    @property
    def consistent(self) -> bool:
        return float(round_half_up(self.computed, self.decimals)) == float(self.printed)

    def line(self) -> str:
        status = "ok" if self.consistent else "INCONSISTENT"
        text = (
            f"{self.name}: computed {round_half_up(self.computed, max(self.decimals, 2))}"
            f" printed {self.printed} [{status}]"
        )
        return f"{text} {self.note}".rstrip()


def table1_checks() -> list[Check]:
    checks = []
    for label, stats in (("CSTPCD", CSTPCD_2003), ("SCI", SCI_2003)):
        note = ""
        if label == "CSTPCD":
            note = "(printed cell disagrees with unique relations / journals squared)"
        checks.append(Check(f"{label} density %", 100 * stats.density, PRINTED_DENSITY[label], 1, note))
        for field_name, printed in zip(("mean_relations", "mean_refs", "mean_cited"), PRINTED_MEANS[label]):
            checks.append(Check(f"{label} {field_name}", getattr(stats, field_name), printed, 0))
    ratios = metrics.db_compare(SCI_2003, CSTPCD_2003)
    for field_name, printed in zip(("relations", "refs", "cited"), PRINTED_RATIOS):
        checks.append(Check(f"SCI/CSTPCD {field_name} ratio", getattr(ratios, field_name), printed, 0))
    return checks


def table3_checks() -> list[Check]:
    checks = []
    for row in SELF_CITATION_TABLE:
        stats = metrics.self_citation_rates(row.total_refs, row.total_cites, row.self_citations, row.journal)
        tag = f"{row.journal} ({row.source})"
        checks.append(Check(f"{tag} self-citing %", 100 * stats.self_citing_rate, row.self_citing_pct, 1))
        checks.append(Check(f"{tag} self-cited %", 100 * stats.self_cited_rate, row.self_cited_pct, 1))
    return checks


def share_checks() -> list[Check]:
    checks = []
    for journal, indb, full, printed in COVERAGE_FIGURES:
        checks.append(Check(f"{journal} coverage share %", 100 * indb / full, printed, 0))
    for journal, citers, n, printed in VISIBILITY_FIGURES:
        checks.append(Check(f"{journal} visibility %", 100 * citers / n, printed, 0))

    total = CSBE_CITES_TOTAL
    checks.append(Check("CSB-E Chinese origin share %", 100 * CSBE_CITES_CHINESE / total, ORIGIN_TABLE["CSB-E"][0], 0))
    international = CSBE_CITES_QUALIFYING - CSBE_CITES_CHINESE
    checks.append(
        Check(
            "CSB-E international origin share %",
            100 * international / total,
            ORIGIN_TABLE["CSB-E"][1],
            0,
            "(qualifying 1900 minus Chinese 1091)",
        )
    )
    other = total - CSBE_CITES_QUALIFYING
    checks.append(Check("CSB-E other share % (text)", 100 * other / total, CSBE_TEXT_OTHER_PCT, 0))
    checks.append(Check("CSB-E other share % (table)", 100 * other / total, ORIGIN_TABLE["CSB-E"][2], 0))
    checks.append(Check("JIM (SCI) qualifying citation share %", 100 * 259 / 346, 75, 0))
    checks.append(Check("JMST qualifying citation share %", 100 * 211 / 318, 67, 0))
    for journal, (chinese, intl, other_pct) in ORIGIN_TABLE.items():
        checks.append(Check(f"{journal} origin shares sum %", chinese + intl + other_pct, 100, 0))
    return checks


def cross_reference_checks() -> list[Check]:
    # the same quantity reported twice with different values
    return [
        Check(
            "SCSE-C total citations",
            136,
            362,
            0,
            "(self-citation table gives 136, domestic visibility text gives 362)",
        ),
    ]


def consistency_checks() -> list[Check]:
    return table1_checks() + table3_checks() + share_checks() + cross_reference_checks()


def discrepancies() -> list[Check]:
    return [c for c in consistency_checks() if not c.consistent]


def discrepancy_report() -> str:
    lines = ["Published figure consistency report", ""]
    lines.extend(c.line() for c in consistency_checks())
    bad = discrepancies()
    lines += ["", f"{len(bad)} inconsistencies:"]
    lines.extend(f"  - {c.line()}" for c in bad)
    return "\n".join(lines) + "\n"
