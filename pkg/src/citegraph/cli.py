"""Command line entry point: ``citegraph <subcommand> ...``.

Every subcommand writes its artifacts (always including ``report.json``) to
``--out`` or to a fresh ``<subcommand>-<timestamp>`` directory, and prints a
short summary. Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Any, Sequence

from . import corpus, envnet, exporter, metrics, reference, simalg, synth
from .errors import CitegraphError

log = logging.getLogger("citegraph")

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _strict_default() -> bool:
    value = os.environ.get("CITEGRAPH_STRICT", "1").strip()
    if value not in ("0", "1"):
        raise UsageError(f"CITEGRAPH_STRICT must be 0 or 1, got {value!r}")
    return value == "1"


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return value


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--journals", required=True, type=Path, help="journal metadata CSV")
    p.add_argument("--edges", required=True, type=Path, help="edge list TSV")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=None)
    mode.add_argument("--lenient", dest="strict", action="store_false",
                      help="skip edges naming unknown journals instead of failing")


def _add_env_args(p: argparse.ArgumentParser, need_mode: bool = True) -> None:
    p.add_argument("--seed", required=True)
    if need_mode:
        p.add_argument("--mode", choices=[m.value for m in envnet.Mode], required=True)
    p.add_argument("--threshold", type=_fraction, default=envnet.DEFAULT_THRESHOLD)
    p.add_argument("--basis", choices=[b.value for b in envnet.Basis], default="indb")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, help="output directory (default: <command>-<timestamp>)")
    p.add_argument("--round", action="store_true", help="print percentages rounded to one decimal")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="citegraph", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="ingest the corpus and report invariant checks")
    _add_corpus_args(p)
    _add_output_args(p)

    p = sub.add_parser("dbstats", help="database-level statistics")
    _add_corpus_args(p)
    _add_output_args(p)
    p.add_argument("--external", action="store_true",
                   help="sum external journal totals for total citing/cited")

    p = sub.add_parser("journal", help="self-citation statistics for one journal")
    p.add_argument("id")
    _add_corpus_args(p)
    _add_output_args(p)

    p = sub.add_parser("env", help="extract a seed environment")
    _add_corpus_args(p)
    _add_env_args(p)
    _add_output_args(p)

    p = sub.add_parser("simmap", help="environment -> similarity -> display network -> Pajek")
    _add_corpus_args(p)
    _add_env_args(p)
    _add_output_args(p)
    p.add_argument("--min-cosine", type=_fraction, default=simalg.DEFAULT_MIN_SIMILARITY)
    p.add_argument("--orientation", choices=[o.value for o in simalg.Orientation])
    p.add_argument("--kind", choices=[k.value for k in simalg.Kind], default="cosine")
    p.add_argument("--exclude-self", action="store_true", help="zero self-citation cells in profiles")

    p = sub.add_parser("components", help="principal components of the environment's correlation matrix")
    _add_corpus_args(p)
    _add_env_args(p)
    _add_output_args(p)
    p.add_argument("--n", type=int, default=None, help="number of components (default: all)")
    p.add_argument("--orientation", choices=[o.value for o in simalg.Orientation])
    p.add_argument("--exclude-self", action="store_true")

    p = sub.add_parser("shares", help="origin shares of a journal's received citations")
    _add_corpus_args(p)
    _add_output_args(p)
    p.add_argument("--seed", required=True)
    p.add_argument("--group-by", choices=["country", "language", "institution"], default="country")
    p.add_argument("--min-count", type=int, default=metrics.DEFAULT_MIN_COUNT)
    p.add_argument("--within", action="append", default=[], metavar="ATTR=VALUE",
                   help="only attribute citers with this attribute value (repeatable)")

    p = sub.add_parser("coverage", help="share of references landing inside the database")
    _add_corpus_args(p)
    _add_output_args(p)
    p.add_argument("--seed", required=True)

    p = sub.add_parser("visibility", help="number and share of journals citing the seed")
    _add_corpus_args(p)
    _add_output_args(p)
    p.add_argument("--seed", required=True)
    p.add_argument("--exclude-self", action="store_true")

    p = sub.add_parser("gen", help="generate a synthetic corpus")
    _add_output_args(p)
    p.add_argument("--n-journals", type=int, default=200)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--max-weight", type=int, default=10_000)
    p.add_argument("--edges-per-journal", type=float, default=None)
    p.add_argument("--attachment", type=float, default=1.0)
    p.add_argument("--external-factor", type=float, default=3.0)
    p.add_argument("--rng-seed", type=int, default=0)

    p = sub.add_parser("compare", help="ratios between two dbstats JSON files (A / B)")
    p.add_argument("stats_a", type=Path)
    p.add_argument("stats_b", type=Path)
    _add_output_args(p)

    p = sub.add_parser("discrepancies", help="consistency report for the published 2003 figures")
    _add_output_args(p)
    return parser


class Run:
    """Output directory plus the structured report for one command."""

    def __init__(self, command: str, out: Path | None, rounded: bool):
        if out is None:
            out = Path(f"{command}-{time.strftime('%Y%m%d-%H%M%S')}")
        self.out = out
        self.rounded = rounded
        self.report: dict[str, Any] = {}
        self.lines: list[str] = []

    def pct(self, fraction: float | None) -> str:
        if fraction is None:
            return "undefined"
        return metrics.percent(fraction, 1) if self.rounded else f"{100 * fraction}%"

    def write(self, name: str, data: str | bytes) -> None:
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        if isinstance(data, bytes):
            path.write_bytes(data)
        else:
            path.write_text(data, encoding="utf-8", newline="")

    def finish(self) -> None:
        self.write("report.json", exporter.report_json(self.report))
        for line in self.lines:
            print(line)
        print(f"artifacts: {self.out}")


def _load(args) -> tuple[corpus.CitationGraph, corpus.EdgeTable]:
    strict = _strict_default() if args.strict is None else args.strict
    graph, table = corpus.load_graph(args.journals, args.edges, strict=strict)
    for row in table.skipped:
        log.warning("skipped edge at line %d: %s", row.line, row.reason)
    return graph, table


def _spec(args, mode: str | None = None) -> envnet.EnvironmentSpec:
    return envnet.EnvironmentSpec(
        seed=args.seed, mode=mode or args.mode, threshold=args.threshold, basis=args.basis
    )


def cmd_validate(args, run: Run) -> int:
    graph, table = _load(args)
    problems = corpus.check_external_totals(graph)
    if graph.unique_relation_count == 0:
        problems.insert(0, "no edges")
    run.report["validate"] = {
        "journals": graph.n_journals,
        "unique_relations": graph.unique_relation_count,
        "relation_sum": graph.relation_sum,
        "skipped_rows": [asdict(s) for s in table.skipped],
        "problems": problems,
        "ok": not problems,
    }
    run.lines.append(
        f"{graph.n_journals} journals, {graph.unique_relation_count} relations, "
        f"{graph.relation_sum} citations, {len(table.skipped)} skipped rows"
    )
    run.lines.extend(f"FAIL: {p}" for p in problems)
    run.lines.append("valid" if not problems else "invalid")
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_dbstats(args, run: Run) -> int:
    graph, _ = _load(args)
    stats = metrics.external_db_stats(graph) if args.external else metrics.db_stats(graph)
    run.report["dbstats"] = stats.to_dict()
    run.write("dbstats.json", json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n")
    run.lines += [
        f"journals {stats.n_journals}",
        f"unique relations {stats.unique_relations} (density {run.pct(stats.density)})",
        f"sum of relations {stats.relation_sum}",
        f"total citing {stats.total_citing}, total cited {stats.total_cited}",
        f"mean relations {stats.mean_relations:.1f}, mean refs {stats.mean_refs:.1f}, "
        f"mean cited {stats.mean_cited:.1f}",
    ]
    return EXIT_OK


def cmd_journal(args, run: Run) -> int:
    graph, _ = _load(args)
    stats = metrics.self_citation(graph, args.id)
    run.report["journal"] = asdict(stats)
    run.write("journal.csv", exporter.table_csv([asdict(stats)], list(asdict(stats))))
    run.lines.append(
        f"{stats.id}: refs {stats.total_refs} ({stats.refs_basis}), cites {stats.total_cites} "
        f"({stats.cites_basis}), self {stats.self_citations}; self-citing "
        f"{run.pct(stats.self_citing_rate)}, self-cited {run.pct(stats.self_cited_rate)}"
    )
    return EXIT_OK


def _env_report(env: envnet.Environment) -> dict:
    return {
        "seed": env.seed,
        "mode": env.spec.mode.value,
        "threshold": env.spec.threshold,
        "basis": env.spec.basis.value,
        "basis_total": env.basis_total,
        "members": [
            {"rank": r, "id": j, "admission_weight": w, "share_of_basis": s}
            for r, j, w, s in env.rows()
        ],
    }


def cmd_env(args, run: Run) -> int:
    graph, _ = _load(args)
    env = envnet.environment(graph, _spec(args))
    run.report["env"] = _env_report(env)
    run.write("members.csv", exporter.environment_csv(env))
    run.lines.append(f"{len(env.members)} members in the {env.spec.mode.value} environment of {env.seed}")
    run.lines.extend(f"  {r:3d} {j} {w} {run.pct(s)}" for r, j, w, s in env.rows())
    return EXIT_OK


def _orientation(args) -> simalg.Orientation:
    if args.orientation:
        return simalg.Orientation(args.orientation)
    return simalg.default_orientation(envnet.Mode(args.mode))


def cmd_simmap(args, run: Run) -> int:
    graph, _ = _load(args)
    env = envnet.environment(graph, _spec(args))
    sim = simalg.similarity_matrix(
        env.submatrix, env.members, args.kind, _orientation(args), include_self=not args.exclude_self
    )
    net = simalg.display_network(sim, args.min_cosine)
    labels = {m: graph.journal(m).name or m for m in env.members}
    run.write("members.csv", exporter.environment_csv(env))
    run.write("similarity.csv", exporter.similarity_csv(sim))
    run.write("network.net", exporter.write_pajek(net, labels))
    run.write("citations.net", exporter.write_pajek_arcs(env.members, env.submatrix, labels))
    run.report["simmap"] = {
        "environment": _env_report(env),
        "kind": sim.kind.value,
        "orientation": sim.orientation.value,
        "min_similarity": args.min_cosine,
        "degenerate": [sim.members[i] for i in sim.degenerate],
        "edges": [{"a": sim.members[i], "b": sim.members[j], "similarity": w} for i, j, w in net.edges],
        "isolated": net.isolated(),
    }
    run.lines.append(
        f"{len(net.members)} vertices, {len(net.edges)} edges with {sim.kind.value} >= {args.min_cosine}"
    )
    return EXIT_OK


def cmd_components(args, run: Run) -> int:
    graph, _ = _load(args)
    env = envnet.environment(graph, _spec(args))
    sim = simalg.similarity_matrix(
        env.submatrix, env.members, simalg.Kind.PEARSON, _orientation(args),
        include_self=not args.exclude_self,
    )
    excluded = [sim.members[i] for i in sim.degenerate]
    comp = simalg.principal_components(simalg.drop_degenerate(sim), args.n)
    run.write("loadings.csv", exporter.loadings_csv(comp))
    run.report["components"] = {
        "environment": _env_report(env),
        "excluded_constant_profiles": excluded,
        "members": comp.members,
        "eigenvalues": comp.eigenvalues,
        "loadings": comp.loadings,
    }
    run.lines.append(f"eigenvalues: {', '.join(f'{x:.4f}' for x in comp.eigenvalues)}")
    if excluded:
        run.lines.append(f"excluded constant profiles: {', '.join(excluded)}")
    return EXIT_OK


def cmd_shares(args, run: Run) -> int:
    graph, _ = _load(args)
    restrict = {}
    for item in args.within:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--within expects ATTR=VALUE, got {item!r}")
        restrict[key] = value
    shares = metrics.origin_shares(graph, args.seed, args.group_by, args.min_count, restrict or None)
    split = metrics.domestic_international(graph, args.seed, args.min_count)
    run.report["shares"] = {
        "seed": shares.seed,
        "group_attribute": shares.group_attribute,
        "min_count": shares.min_count,
        "total_cites": shares.total_cites,
        "group_weights": dict(shares.group_weights),
        "share_by_group": dict(shares.share_by_group),
        "other_share": shares.other_share,
        "domestic_international": asdict(split),
    }
    rows = [{"group": g, "weight": shares.group_weights[g], "share": s} for g, s in shares.share_by_group.items()]
    rows.append({"group": "other", "weight": shares.unattributed_weight, "share": shares.other_share})
    run.write("shares.csv", exporter.table_csv(rows, ["group", "weight", "share"]))
    run.lines.extend(f"{r['group'] or '(blank)'}: {r['weight']} ({run.pct(r['share'])})" for r in rows)
    run.lines.append(
        f"domestic ({split.country}) {run.pct(split.domestic)}, international "
        f"{run.pct(split.international)}, other {run.pct(split.other)}"
    )
    return EXIT_OK


def cmd_coverage(args, run: Run) -> int:
    graph, _ = _load(args)
    share = metrics.coverage_share(graph, args.seed)
    run.report["coverage"] = {
        "seed": args.seed,
        "in_database_refs": graph.out_total(args.seed),
        "external_total_refs": graph.journal(args.seed).external_total_refs,
        "coverage_share": share,
    }
    run.lines.append(f"{args.seed}: {run.pct(share)} of references go to covered journals")
    return EXIT_OK


def cmd_visibility(args, run: Run) -> int:
    graph, _ = _load(args)
    vis = metrics.visibility(graph, args.seed, include_self=not args.exclude_self)
    run.report["visibility"] = {**asdict(vis), "fraction": vis.fraction}
    run.lines.append(
        f"{args.seed}: cited by {vis.citing_journals} of {vis.n_journals} journals ({run.pct(vis.fraction)})"
    )
    return EXIT_OK


def cmd_gen(args, run: Run) -> int:
    config = synth.SynthConfig(
        n_journals=args.n_journals,
        alpha=args.alpha,
        max_weight=args.max_weight,
        edges_per_journal=args.edges_per_journal,
        rng_seed=args.rng_seed,
        attachment=args.attachment,
        external_factor=args.external_factor,
    )
    journals_text, edges_text = synth.generate_corpus(config)
    run.write("journals.csv", journals_text)
    run.write("edges.tsv", edges_text)
    config_dict = {k: v for k, v in asdict(config).items()}
    run.report["gen"] = {"config": config_dict, "edges": edges_text.count("\n") - 1}
    run.lines.append(f"wrote {config.n_journals} journals and {run.report['gen']['edges']} edges")
    return EXIT_OK


def _read_stats(path: Path) -> metrics.DbStats:
    data = json.loads(path.read_text(encoding="utf-8"))
    if "dbstats" in data:
        data = data["dbstats"]
    try:
        return metrics.DbStats.from_dict(data)
    except KeyError as exc:
        raise UsageError(f"{path}: missing field {exc.args[0]}") from None


def cmd_compare(args, run: Run) -> int:
    a, b = _read_stats(args.stats_a), _read_stats(args.stats_b)
    ratios = metrics.db_compare(a, b)
    run.report["compare"] = {**asdict(ratios), "summary": ratios.summary()}
    run.lines.append(f"relations / refs / cited: {ratios.summary()}")
    return EXIT_OK


def cmd_discrepancies(args, run: Run) -> int:
    checks = reference.consistency_checks()
    run.report["discrepancies"] = [
        {**asdict(c), "consistent": c.consistent} for c in checks
    ]
    text = reference.discrepancy_report()
    run.write("discrepancies.txt", text)
    run.lines.append(text.rstrip())
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "dbstats": cmd_dbstats,
    "journal": cmd_journal,
    "env": cmd_env,
    "simmap": cmd_simmap,
    "components": cmd_components,
    "shares": cmd_shares,
    "coverage": cmd_coverage,
    "visibility": cmd_visibility,
    "gen": cmd_gen,
    "compare": cmd_compare,
    "discrepancies": cmd_discrepancies,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    out = Run(args.command, args.out, args.round)
    try:
        code = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"citegraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CitegraphError, FileNotFoundError) as exc:
        print(f"citegraph: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out.finish()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
