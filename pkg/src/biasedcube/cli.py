"""Command-line front end.

Each subcommand parses its arguments into the same request models the HTTP
service accepts, calls the shared handler in-process, and renders the
response either as aligned text or as line-delimited JSON records
(``--format json-lines``).  Exit codes: 0 for success (including benign
"hypothesis not met" outcomes), 1 when an asserted theorem check fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable

from .cube import InputError, PreconditionError, family_from_text
from .service import handlers, models


def _read_family(path: str) -> models.FamilyModel:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read family file {path!r}: {exc}") from None
    family = family_from_text(text)
    return handlers.family_to_model(family)


def _print_records(records: Iterable[dict]) -> None:
    for record in records:
        print(json.dumps(record, sort_keys=True))


def _cmd_check(args: argparse.Namespace) -> int:
    response = handlers.check(models.CheckRequest(family=_read_family(args.family)))
    if args.format == "json-lines":
        _print_records([{"record": "check", **response.model_dump()}])
        return 0
    print(f"d={response.d} size={response.size}")
    print(f"union-closed:        {'yes' if response.union_closed else 'no'}")
    print(f"simply-rooted:       {'yes' if response.simply_rooted else 'no'}")
    print(f"contains-empty:      {'yes' if response.contains_empty else 'no'}")
    print(f"has-nonempty-member: {'yes' if response.has_nonempty_member else 'no'}")
    if response.best_ratio is not None:
        coords = ",".join(map(str, response.best_ratio_coordinates)) or "-"
        print(f"best coordinate ratio: {response.best_ratio} (coordinates {coords})")
    for note in response.notes:
        print(f"note: {note}")
    return 0


def _cmd_measure(args: argparse.Namespace) -> int:
    response = handlers.measure(
        models.MeasureRequest(family=_read_family(args.family), weights=args.weights)
    )
    if args.format == "json-lines":
        records = [{"record": "total", "weights": response.weights, "total": response.total}]
        records.extend(
            {"record": "coordinate", **row.model_dump()} for row in response.per_coordinate
        )
        _print_records(records)
        return 0
    print(f"weights: {response.weights}")
    print(f"family weight: {response.total}")
    for row in response.per_coordinate:
        ratio = row.ratio if row.ratio is not None else "-"
        print(
            f"  i={row.coordinate} p={row.weight} subfamily={row.subfamily_weight} ratio={ratio}"
        )
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    response = handlers.spectrum(
        models.SpectrumRequest(family=_read_family(args.family), weights=args.weights)
    )
    if args.format == "json-lines":
        records = [{"record": "kernel", **row.model_dump()} for row in response.rows]
        records.append({"record": "levels", "level_weights": response.level_weights})
        records.append({"record": "parseval", "defect": response.parseval_defect})
        _print_records(records)
        return 0
    print(f"weights: {response.weights}")
    for row in response.rows:
        subset = "{" + ",".join(map(str, row.subset)) + "}"
        print(f"  S={subset} kernel={row.kernel} coeff_sq={row.coeff_sq} coeff={row.coeff:+.6f}")
    levels = " ".join(f"W^{k}={mass}" for k, mass in enumerate(response.level_weights))
    print(f"level weights: {levels}")
    print(f"parseval defect: {response.parseval_defect}")
    return 0


def _cmd_influence(args: argparse.Namespace) -> int:
    response = handlers.influence(
        models.InfluenceRequest(family=_read_family(args.family), weights=args.weights)
    )
    if args.format == "json-lines":
        records = [
            {"record": "coordinate", **row.model_dump()} for row in response.per_coordinate
        ]
        records.append(
            {
                "record": "totals",
                "total_plus": response.total_plus,
                "total_minus": response.total_minus,
                "total": response.total,
            }
        )
        records.extend({"record": "identity", **pair.model_dump()} for pair in response.degree_one)
        records.append(
            {
                "record": "level-defects",
                "total": response.level_identity_defect,
                "per_coordinate": response.coordinate_level_defects,
            }
        )
        records.extend(
            {"record": "low-degree", **margin.model_dump()} for margin in response.low_degree_margins
        )
        _print_records(records)
        return 0
    print(f"weights: {response.weights}")
    for row in response.per_coordinate:
        print(f"  i={row.coordinate} plus={row.plus} minus={row.minus} combined={row.combined}")
    print(
        f"weighted totals: plus={response.total_plus} minus={response.total_minus} "
        f"total={response.total}"
    )
    for pair in response.degree_one:
        status = "ok" if pair.equal else "MISMATCH"
        print(f"  {pair.label}: {pair.lhs} vs {pair.rhs} [{status}]")
    print(
        f"level identity defect: {response.level_identity_defect} "
        f"(per coordinate: {', '.join(response.coordinate_level_defects)})"
    )
    for margin in response.low_degree_margins:
        print(f"  low-degree margin k={margin.k}: {margin.margin}")
    return 0


def _cmd_hitting(args: argparse.Namespace) -> int:
    response = handlers.hitting(
        models.HittingRequest(family=_read_family(args.family), weights=args.weights)
    )
    if args.format == "json-lines":
        records = [{"record": "summary", "count": response.count}]
        records.extend(
            {"record": "hitting-set", **entry.model_dump()}
            for entry in response.minimal_hitting_sets
        )
        _print_records(records)
        return 0
    print(f"minimal hitting sets: {response.count}")
    for entry in response.minimal_hitting_sets:
        subset = "{" + ",".join(map(str, entry.coordinates)) + "}"
        print(f"  S={subset}")
        for rep in entry.certificate.representatives:
            print(f"    representative of {rep.coordinate}: {rep.member}")
        for union in entry.certificate.unions:
            t = "{" + ",".join(map(str, union.subset)) + "}"
            print(f"    union for {t}: {union.member}")
        if entry.size_bound is not None:
            bound = entry.size_bound
            verdict = "holds" if bound.holds else "FAILS"
            print(f"    size bound: 2^|S|={bound.power} <= |F|={bound.family_size} [{verdict}]")
        elif entry.size_bound_skipped:
            print(f"    size bound skipped: {entry.size_bound_skipped}")
        if entry.weighted_bound is not None:
            wb = entry.weighted_bound
            verdict = "holds" if wb.holds else "FAILS"
            print(
                f"    weighted bound: mu(F)={wb.family_weight} >= "
                f"{wb.outside_q_product} [{verdict}]"
            )
        elif entry.weighted_bound_skipped:
            print(f"    weighted bound skipped: {entry.weighted_bound_skipped}")
    return 0


def _write_witness(directory: str, theorem: str, form: str | None, text: str) -> str:
    os.makedirs(directory, exist_ok=True)
    suffix = f"-{form}" if form else ""
    base = f"witness-{theorem}{suffix}"
    path = os.path.join(directory, base + ".txt")
    counter = 1
    while os.path.exists(path):
        counter += 1
        path = os.path.join(directory, f"{base}-{counter}.txt")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return path


def _cmd_verify(args: argparse.Namespace) -> int:
    response = handlers.verify(
        models.VerifyRequest(
            family=_read_family(args.family),
            weights=args.weights,
            theorem=args.theorem,
        )
    )
    witness_paths = []
    for report in response.reports:
        should_dump = (
            report.asserted
            and report.conclusion_status == "fails"
            and report.witness_text is not None
        )
        if should_dump:
            witness_paths.append(
                _write_witness(args.witness_dir, report.theorem, report.form, report.witness_text)
            )
    if args.format == "json-lines":
        records = []
        for report in response.reports:
            payload = report.model_dump()
            payload.pop("witness_text", None)
            records.append({"record": "report", **payload})
        records.extend({"record": "skipped", **s.model_dump()} for s in response.skipped)
        records.append(
            {"record": "verdict", "failed": response.failed, "witness_files": witness_paths}
        )
        _print_records(records)
        return 1 if response.failed else 0
    print(f"weights: {response.weights}")
    for report in response.reports:
        form = f" [{report.form} form]" if report.form else ""
        asserted = "asserted" if report.asserted else "reference only"
        print(f"{report.theorem}{form} ({asserted})")
        for reason in report.hypothesis_reasons:
            print(f"  hypothesis {report.hypothesis_status}: {reason}")
        print(f"  conclusion: {report.conclusion_status}")
        for witness in report.witnesses:
            print(f"    witness i={witness.coordinate} margin={witness.margin}")
        for note in report.notes:
            print(f"  note: {note}")
    for skipped in response.skipped:
        print(f"{skipped.theorem}: skipped ({skipped.reason})")
    for path in witness_paths:
        print(f"witness dumped: {path}")
    print("verdict: FAILED" if response.failed else "verdict: ok")
    return 1 if response.failed else 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    response = handlers.enumerate_families_handler(
        models.EnumerateRequest(
            d=args.d, filters=args.filter or [], emit=args.emit, jobs=args.jobs
        )
    )
    if args.format == "json-lines":
        records = [
            {
                "record": "summary",
                "d": response.d,
                "count": response.count,
                "includes_empty_family": response.includes_empty_family,
                "notes": response.notes,
            }
        ]
        if response.families is not None:
            records.extend(
                {"record": "family", "index": idx, "d": fam.d, "members": fam.members}
                for idx, fam in enumerate(response.families)
            )
        _print_records(records)
        return 0
    print(f"d={response.d} count={response.count}")
    for note in response.notes:
        print(f"note: {note}")
    if response.families is not None:
        for idx, fam in enumerate(response.families):
            members = ",".join(fam.members) or "-"
            print(f"  #{idx} members={members}")
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    response = handlers.search(
        models.SearchRequest(
            d=args.d,
            weights=args.weights,
            budget=args.budget,
            seed=args.seed,
            require_weight_hypothesis=args.require_weight_hypothesis,
            include_empty=not args.no_empty,
        )
    )
    if args.format == "json-lines":
        _print_records([{"record": "search", **response.model_dump()}])
        return 0
    members = ",".join(response.family.members) or "-"
    print(f"seed={response.seed} evaluations={response.evaluations} accepted={response.accepted} restarts={response.restarts}")
    print(f"best objective: {response.objective} (~{response.objective_float:.6f})")
    print(f"best family: d={response.family.d} members={members}")
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    family = _read_family(args.family) if args.family else None
    response = handlers.sample(
        models.SampleRequest(weights=args.weights, n=args.n, seed=args.seed, family=family)
    )
    if args.format == "json-lines":
        records = []
        if response.points is not None:
            records.extend({"record": "point", "point": point} for point in response.points)
        if response.estimate is not None:
            records.append({"record": "estimate", "seed": response.seed, **response.estimate.model_dump()})
        _print_records(records)
        return 0
    if response.points is not None:
        for point in response.points:
            print(point)
    if response.estimate is not None:
        est = response.estimate
        print(f"seed={response.seed} draws={est.draws} hits={est.hits}")
        print(f"estimate: {est.estimate} (~{est.estimate_float:.6f}) stderr={est.stderr:.6f}")
        print(f"exact:    {est.exact} (~{est.exact_float:.6f})")
        print(
            f"abs error {est.abs_error:.6f} is "
            f"{'within' if est.within_five_stderr else 'OUTSIDE'} five standard errors"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biasedcube",
        description="Exact analysis of Boolean functions and set families on the p-biased cube.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("human", "json-lines"),
        default="human",
        help="output format (default: human)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="structural predicates of a family")
    p.add_argument("family", help="path to a family file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("measure", parents=[common], help="exact family and subfamily weights")
    p.add_argument("family")
    p.add_argument("--weights", "-w", help="comma-separated rational weights (default: uniform 1/2)")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("spectrum", parents=[common], help="exact kernel spectrum of the indicator")
    p.add_argument("family")
    p.add_argument("--weights", "-w")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("influence", parents=[common], help="exact influences and identities")
    p.add_argument("family")
    p.add_argument("--weights", "-w")
    p.set_defaults(func=_cmd_influence)

    p = sub.add_parser("hitting", parents=[common], help="minimal hitting sets and certificates")
    p.add_argument("family")
    p.add_argument("--weights", "-w")
    p.set_defaults(func=_cmd_hitting)

    p = sub.add_parser("verify", parents=[common], help="run theorem checks against a family")
    p.add_argument("family")
    p.add_argument("--weights", "-w")
    p.add_argument(
        "--theorem",
        required=True,
        choices=handlers.THEOREM_NAMES + ("all",),
    )
    p.add_argument(
        "--witness-dir",
        default="witnesses",
        help="directory for witness dumps on asserted failures (default: witnesses)",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustively enumerate families")
    p.add_argument("--d", type=int, required=True)
    p.add_argument(
        "--filter",
        action="append",
        choices=("union-closed", "simply-rooted", "contains-empty", "has-nonempty-member"),
        help="may be given multiple times; all filters must pass",
    )
    p.add_argument("--emit", action="store_true", help="also print every family")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (never changes output)")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("search", parents=[common], help="search for small worst-coordinate ratios")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--weights", "-w")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, help=f"default: ${handlers.SEED_ENV_VAR} or 0")
    p.add_argument("--require-weight-hypothesis", action="store_true")
    p.add_argument("--no-empty", action="store_true", help="do not force the empty set into candidates")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("sample", parents=[common], help="seeded sampling and Monte Carlo estimates")
    p.add_argument("--weights", "-w", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, help=f"default: ${handlers.SEED_ENV_VAR} or 0")
    p.add_argument("--family", help="estimate this family's weight instead of printing points")
    p.set_defaults(func=_cmd_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
