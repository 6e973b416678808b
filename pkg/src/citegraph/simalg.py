"""Similarity matrices over environment profiles and principal components.

Cosine similarity is what gets drawn: it is nonnegative on citation counts and
well behaved on sparse data. Pearson correlation feeds the eigen-decomposition.
Every pairwise value is computed once with :func:`math.fsum`, so results are
exactly symmetric and do not depend on BLAS summation order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .envnet import Mode
from .errors import ConvergenceError, UndefinedEntryError, ValidationError

DEFAULT_MIN_SIMILARITY = 0.2
JACOBI_TOLERANCE = 1e-10
JACOBI_MAX_SWEEPS = 10_000


class Kind(str, enum.Enum):
    COSINE = "cosine"
    PEARSON = "pearson"


class Orientation(str, enum.Enum):
    ROWS = "rows"
    COLUMNS = "cols"


def default_orientation(mode: Mode) -> Orientation:
    """Citing environments compare rows, cited environments compare columns."""
    return Orientation.ROWS if Mode(mode) is Mode.CITING else Orientation.COLUMNS


@dataclass(frozen=True)
class SimilarityMatrix:
    members: tuple[str, ...]
    kind: Kind
    values: np.ndarray
    orientation: Orientation | None = None
    # member indices whose profile is all-zero (cosine) or constant (Pearson)
    degenerate: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.members)

    def value(self, a: str, b: str) -> float:
        return float(self.values[self.members.index(a), self.members.index(b)])

    @property
    def has_undefined(self) -> bool:
        return bool(np.isnan(self.values).any())


@dataclass(frozen=True)
class DisplayNetwork:
    members: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]
    min_similarity: float | None = field(default=DEFAULT_MIN_SIMILARITY, compare=False)

    def isolated(self) -> list[str]:
        touched = {i for i, _, _ in self.edges} | {j for _, j, _ in self.edges}
        return [m for k, m in enumerate(self.members) if k not in touched]


@dataclass(frozen=True)
class ComponentLoadings:
    members: tuple[str, ...]
    eigenvalues: np.ndarray
    loadings: np.ndarray
    sweeps: int = 0

    @property
    def n_components(self) -> int:
        return self.loadings.shape[1]


def profile_vectors(
    submatrix: np.ndarray, orientation: Orientation | str, include_self: bool = True
) -> list[np.ndarray]:
    """Citing profiles (rows) or cited profiles (columns) of a square submatrix.

    With ``include_self=False`` the diagonal (self-citation) cells are zeroed.
    """
    m = np.array(submatrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"submatrix must be square, got shape {m.shape}")
    if not include_self:
        np.fill_diagonal(m, 0.0)
    if Orientation(orientation) is Orientation.COLUMNS:
        m = m.T
    return [row.copy() for row in m]


def _as_rows(vectors: Sequence[Sequence[float]]) -> list[list[float]]:
    rows = [[float(x) for x in v] for v in vectors]
    if not rows:
        raise ValidationError("need at least one vector")
    width = len(rows[0])
    for k, row in enumerate(rows):
        if len(row) != width:
            raise ValidationError(f"vector {k} has length {len(row)}, expected {width}")
    return rows


def _members(members: Sequence[str] | None, n: int) -> tuple[str, ...]:
    if members is None:
        return tuple(str(i) for i in range(n))
    if len(members) != n:
        raise ValidationError(f"{len(members)} member ids for {n} vectors")
    return tuple(members)


def _dot(a: list[float], b: list[float]) -> float:
    return math.fsum(x * y for x, y in zip(a, b))


def _pairwise(rows: list[list[float]], norms: list[float], valid: list[bool]) -> np.ndarray:
    n = len(rows)
    out = np.zeros((n, n))
    for i in range(n):
        if not valid[i]:
            continue
        out[i, i] = 1.0
        for j in range(i + 1, n):
            if not valid[j]:
                continue
            v = _dot(rows[i], rows[j]) / (norms[i] * norms[j])
            out[i, j] = out[j, i] = min(1.0, max(-1.0, v))
    return out


def cosine_matrix(
    vectors: Sequence[Sequence[float]],
    members: Sequence[str] | None = None,
    orientation: Orientation | None = None,
) -> SimilarityMatrix:
    """Pairwise cosine; all-zero vectors score 0 everywhere, diagonal included."""
    rows = _as_rows(vectors)
    norms = [math.sqrt(_dot(r, r)) for r in rows]
    valid = [nrm > 0 for nrm in norms]
    return SimilarityMatrix(
        members=_members(members, len(rows)),
        kind=Kind.COSINE,
        values=_pairwise(rows, norms, valid),
        orientation=orientation,
        degenerate=tuple(i for i, ok in enumerate(valid) if not ok),
    )


def pearson_matrix(
    vectors: Sequence[Sequence[float]],
    members: Sequence[str] | None = None,
    orientation: Orientation | None = None,
) -> SimilarityMatrix:
    """Pairwise sample correlation; constant vectors give NaN rows and columns."""
    rows = _as_rows(vectors)
    if len(rows[0]) < 2:
        raise ValidationError("Pearson correlation needs vectors of length >= 2")
    centred = []
    for r in rows:
        mean = math.fsum(r) / len(r)
        centred.append([x - mean for x in r])
    norms = [math.sqrt(_dot(c, c)) for c in centred]
    # constant up to rounding of the mean
    valid = [
        nrm > 1e-12 * max(1.0, max(abs(x) for x in r)) * math.sqrt(len(r))
        for nrm, r in zip(norms, rows)
    ]
    values = _pairwise(centred, norms, valid)
    bad = [i for i, ok in enumerate(valid) if not ok]
    values[bad, :] = np.nan
    values[:, bad] = np.nan
    return SimilarityMatrix(
        members=_members(members, len(rows)),
        kind=Kind.PEARSON,
        values=values,
        orientation=orientation,
        degenerate=tuple(bad),
    )


def similarity_matrix(
    submatrix: np.ndarray,
    members: Sequence[str],
    kind: Kind | str = Kind.COSINE,
    orientation: Orientation | str = Orientation.ROWS,
    include_self: bool = True,
) -> SimilarityMatrix:
    orientation = Orientation(orientation)
    vectors = profile_vectors(submatrix, orientation, include_self=include_self)
    build = cosine_matrix if Kind(kind) is Kind.COSINE else pearson_matrix
    return build(vectors, members=members, orientation=orientation)


def drop_degenerate(sim: SimilarityMatrix) -> SimilarityMatrix:
    """Restrict *sim* to members with a defined profile."""
    keep = [i for i in range(len(sim)) if i not in set(sim.degenerate)]
    return SimilarityMatrix(
        members=tuple(sim.members[i] for i in keep),
        kind=sim.kind,
        values=sim.values[np.ix_(keep, keep)].copy(),
        orientation=sim.orientation,
    )


def display_network(
    sim: SimilarityMatrix, min_similarity: float = DEFAULT_MIN_SIMILARITY
) -> DisplayNetwork:
    """Undirected edges (i, j, s) with i < j and s >= min_similarity."""
    n = len(sim)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            s = float(sim.values[i, j])
            if not math.isnan(s) and s >= min_similarity:
                edges.append((i, j, s))
    return DisplayNetwork(sim.members, tuple(edges), min_similarity)


def jacobi_eigh(
    matrix: np.ndarray, tol: float = JACOBI_TOLERANCE, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi eigen-decomposition of a real symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues sorted in
    descending order and eigenvectors in the matching columns. Converged when
    the Frobenius norm of the off-diagonal part drops below *tol*.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValidationError(f"matrix must be square, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12):
        raise ValidationError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)

    def off_norm() -> float:
        return math.sqrt(math.fsum(a[p, q] ** 2 for p in range(n) for q in range(n) if p != q))

    sweeps = 0
    while off_norm() >= tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge within {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows/columns p and q
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    eigenvalues = np.diag(a).copy()
    order = sorted(range(n), key=lambda k: (-eigenvalues[k], k))
    return eigenvalues[order], v[:, order], sweeps


def principal_components(
    sim: SimilarityMatrix, n_components: int | None = None
) -> ComponentLoadings:
    """Eigenvectors of a correlation matrix scaled to loadings.

    Loadings are ``eigenvector * sqrt(eigenvalue)``; each component is signed
    so that its largest-magnitude loading is positive.
    """
    if sim.has_undefined:
        raise UndefinedEntryError(
            "correlation matrix has undefined entries; drop constant profiles first"
        )
    n = len(sim)
    if n_components is None:
        n_components = n
    if not 1 <= n_components <= n:
        raise ValidationError(f"n_components must be in [1, {n}], got {n_components}")
    eigenvalues, vectors, sweeps = jacobi_eigh(sim.values)
    loadings = vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))
    for k in range(n):
        col = loadings[:, k] if eigenvalues[k] > 0 else vectors[:, k]
        if col[np.argmax(np.abs(col))] < 0:
            loadings[:, k] *= -1
            vectors[:, k] *= -1
    return ComponentLoadings(
        members=sim.members,
        eigenvalues=eigenvalues[:n_components],
        loadings=loadings[:, :n_components],
        sweeps=sweeps,
    )
