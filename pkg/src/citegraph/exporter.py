"""Byte-stable text serialization: Pajek networks, member lists, tables, reports."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .envnet import Environment
from .errors import ValidationError
from .simalg import ComponentLoadings, DisplayNetwork, SimilarityMatrix

_VERTEX_LINE = re.compile(r'^(\d+)\s+"((?:[^"]|"")*)"\s*$')


def _quote(label: str) -> str:
    return '"' + label.replace('"', '""') + '"'


def write_pajek(net: DisplayNetwork, labels: Mapping[str, str] | None = None) -> bytes:
    """Undirected Pajek network: 1-based vertices in member order, weights to 4 places.

    *labels* maps member ids to display names; when omitted the ids are used.
    """
    lines = [f"*Vertices {len(net.members)}"]
    for k, member in enumerate(net.members, start=1):
        if labels is None:
            label = member
        else:
            try:
                label = labels[member]
            except KeyError:
                raise ValidationError(f"no label for member {member!r}") from None
        lines.append(f"{k} {_quote(label)}")
    lines.append("*Edges")
    for i, j, w in sorted(net.edges):
        lo, hi = min(i, j), max(i, j)
        lines.append(f"{lo + 1} {hi + 1} {w:.4f}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_pajek_arcs(
    members: Sequence[str], matrix: np.ndarray, labels: Mapping[str, str] | None = None
) -> bytes:
    """Directed raw citation counts as a Pajek ``*Arcs`` section (self-loops kept)."""
    lines = [f"*Vertices {len(members)}"]
    for k, member in enumerate(members, start=1):
        lines.append(f"{k} {_quote(member if labels is None else labels[member])}")
    lines.append("*Arcs")
    m = np.asarray(matrix)
    for r in range(len(members)):
        for c in range(len(members)):
            if m[r, c]:
                lines.append(f"{r + 1} {c + 1} {int(m[r, c])}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_pajek(data: bytes | str) -> DisplayNetwork:
    """Parse the dialect produced by :func:`write_pajek`.

    Vertex labels become the member ids; ``min_similarity`` is not stored in
    the file and comes back as ``None``.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValidationError("empty Pajek stream", 1)

    head = lines[0].split()
    if len(head) != 2 or head[0].lower() != "*vertices" or not head[1].isdigit():
        raise ValidationError(f"expected '*Vertices N', got {lines[0]!r}", 1)
    n = int(head[1])
    if len(lines) < n + 2:
        raise ValidationError("stream ends inside the vertex section", len(lines))

    members = []
    for k in range(1, n + 1):
        match = _VERTEX_LINE.match(lines[k])
        if not match:
            raise ValidationError(f"malformed vertex line {lines[k]!r}", k + 1)
        if int(match.group(1)) != k:
            raise ValidationError(f"vertex {match.group(1)} out of order", k + 1)
        members.append(match.group(2).replace('""', '"'))

    if lines[n + 1].strip().lower() != "*edges":
        raise ValidationError(f"expected '*Edges', got {lines[n + 1]!r}", n + 2)

    edges = []
    for lineno, line in enumerate(lines[n + 2 :], start=n + 3):
        parts = line.split()
        if len(parts) != 3:
            raise ValidationError(f"malformed edge line {line!r}", lineno)
        try:
            i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ValidationError(f"malformed edge line {line!r}", lineno) from None
        for v in (i, j):
            if not 1 <= v <= n:
                raise ValidationError(f"vertex index {v} out of range 1..{n}", lineno)
        edges.append((i - 1, j - 1, w))
    return DisplayNetwork(tuple(members), tuple(edges), None)


def _fmt(x: float) -> str:
    return "NA" if math.isnan(x) else f"{x:.6f}"


def environment_csv(env: Environment) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "id", "admission_weight", "share_of_basis"])
    for rank, jid, weight, share in env.rows():
        w.writerow([rank, jid, weight, _fmt(share)])
    return buf.getvalue()


def similarity_csv(sim: SimilarityMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["", *sim.members])
    for member, row in zip(sim.members, sim.values):
        w.writerow([member, *(_fmt(float(x)) for x in row)])
    return buf.getvalue()


def loadings_csv(comp: ComponentLoadings) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", *(f"component_{k + 1}" for k in range(comp.n_components))])
    w.writerow(["eigenvalue", *(_fmt(float(x)) for x in comp.eigenvalues)])
    for member, row in zip(comp.members, comp.loadings):
        w.writerow([member, *(_fmt(float(x)) for x in row)])
    return buf.getvalue()


def table_csv(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
    return buf.getvalue()


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return None if math.isnan(obj) else float(obj)
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def report_json(report: Mapping[str, Any]) -> str:
    """Structured report keyed by operation name; keys sorted for stable output."""
    return json.dumps(_jsonable(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
