"""Seed-journal citation environments.

A citing environment holds the journals that receive at least
``threshold * total`` of the seed's references; a cited environment holds the
journals that give at least ``threshold * total`` of the seed's citations.
The seed is always a member.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .corpus import CitationGraph
from .errors import EmptyBasisError, MissingTotalError, UnknownJournalError, ValidationError

DEFAULT_THRESHOLD = 0.01


class Mode(str, enum.Enum):
    CITING = "citing"
    CITED = "cited"


class Basis(str, enum.Enum):
    IN_DATABASE = "indb"
    EXTERNAL = "external"


@dataclass(frozen=True)
class EnvironmentSpec:
    seed: str
    mode: Mode
    threshold: float = DEFAULT_THRESHOLD
    basis: Basis = Basis.IN_DATABASE

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "basis", Basis(self.basis))
        if not 0 < self.threshold <= 1:
            raise ValidationError(f"threshold must lie in (0, 1], got {self.threshold}")


@dataclass(frozen=True)
class Environment:
    spec: EnvironmentSpec
    basis_total: int
    members: tuple[str, ...]
    admission_weight: Mapping[str, int]
    submatrix: np.ndarray

    @property
    def seed(self) -> str:
        return self.spec.seed

    def share_of_basis(self, journal_id: str) -> float:
        return self.admission_weight[journal_id] / self.basis_total

    def rows(self) -> list[tuple[int, str, int, float]]:
        """(rank, id, admission_weight, share_of_basis) for every member."""
        return [
            (rank, jid, self.admission_weight[jid], self.share_of_basis(jid))
            for rank, jid in enumerate(self.members, start=1)
        ]


def basis_total(graph: CitationGraph, seed: str, mode: Mode, basis: Basis) -> int:
    record = graph.journal(seed)
    if basis is Basis.IN_DATABASE:
        return graph.out_total(seed) if mode is Mode.CITING else graph.in_total(seed)
    value = record.external_total_refs if mode is Mode.CITING else record.external_total_cites
    if value is None:
        column = "external_total_refs" if mode is Mode.CITING else "external_total_cites"
        raise MissingTotalError(f"journal {seed!r} has no {column}")
    return value


def _cutoff(threshold: float) -> Fraction:
    # decimal reading of the threshold, so 0.07 * 100 admits a weight of exactly 7
    return Fraction(repr(threshold))


def _extract(graph: CitationGraph, spec: EnvironmentSpec) -> Environment:
    seed = spec.seed
    total = basis_total(graph, seed, spec.mode, spec.basis)
    if total == 0:
        raise EmptyBasisError(
            f"journal {seed!r} has zero {spec.mode.value} total ({spec.basis.value} basis)"
        )
    partners = graph.out_edges[seed] if spec.mode is Mode.CITING else graph.in_edges[seed]
    cutoff = _cutoff(spec.threshold) * total

    admitted = [(jid, w) for jid, w in partners.items() if jid != seed and w >= cutoff]
    admitted.sort(key=lambda item: (-item[1], item[0]))
    members = (seed,) + tuple(jid for jid, _ in admitted)
    weights = {seed: graph.self_total(seed), **dict(admitted)}
    return Environment(
        spec=spec,
        basis_total=total,
        members=members,
        admission_weight=weights,
        submatrix=environment_submatrix(graph, members),
    )


def citing_environment(graph: CitationGraph, spec: EnvironmentSpec) -> Environment:
    """Journals cited by the seed at or above the threshold share of its references."""
    if spec.mode is not Mode.CITING:
        raise ValueError("citing_environment needs a spec with mode=citing")
    return _extract(graph, spec)


def cited_environment(graph: CitationGraph, spec: EnvironmentSpec) -> Environment:
    """Journals citing the seed at or above the threshold share of its citations."""
    if spec.mode is not Mode.CITED:
        raise ValueError("cited_environment needs a spec with mode=cited")
    return _extract(graph, spec)


def environment(graph: CitationGraph, spec: EnvironmentSpec) -> Environment:
    return _extract(graph, spec)


def environment_submatrix(graph: CitationGraph, members: Sequence[str]) -> np.ndarray:
    """Dense member x member weight matrix; ``m[r, c]`` counts citations r -> c."""
    if not members:
        raise ValidationError("member list is empty")
    for jid in members:
        if jid not in graph:
            raise UnknownJournalError(jid)
    index = {jid: i for i, jid in enumerate(members)}
    matrix = np.zeros((len(members), len(members)), dtype=np.int64)
    for r, jid in enumerate(members):
        for cited, w in graph.out_edges[jid].items():
            c = index.get(cited)
            if c is not None:
                matrix[r, c] = w
    return matrix
