"""Command-line interface.

Exit codes: 0 when every check passes (a successful computation with an
empty result still exits 0), 1 when violations or counterexamples were
found, 2 on input errors (unreadable files, parse or semantic errors,
refused bounds).
"""

from __future__ import annotations

import argparse
import sys

from .augment import Augmentation, EnumerationBoundError, check_augmentation, \
    enumerate_augmentations
from .bridge import BoundingCochain, SupportError, check_squared_zero, \
    deformed_differential, derive_ce, mc_residual, verify_mc_aug_identity
from .dga import ValidationReport
from .pearly import (BoundsTooLargeError, ConfigError, TrajectorySearchBounds,
                     TreeSearchBounds, exhaustive_search, trajectory_ledger,
                     trajectory_verdict, tree_ledger, tree_verdict)
from .report import input_digest, make_report, report_json
from .surgery import (PreconditionError, QuotientError, SurgeryAlgebra,
                      construct_surgery_augmentation, quotient_order_reversing,
                      validate_surgery_shape, verify_certificate)
from .textio import (DgaDocument, DocumentError, parse_dga, parse_disk_counts,
                     parse_strip_counts, parse_traj_config, parse_tree_config,
                     parse_values, serialize_dga)

OK, VIOLATIONS, INPUT_ERROR = 0, 1, 2


class _Runner:
    """Collects human-readable lines and the machine report for one command."""

    def __init__(self, command: str, json_path: str | None):
        self.command = command
        self.json_path = json_path
        self.lines: list[str] = []
        self.texts: list[str] = []

    def say(self, line: str) -> None:
        self.lines.append(line)

    def read(self, path: str) -> str:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
        self.texts.append(text)
        return text

    def finish(self, status: str, payload: dict, code: int) -> int:
        report = make_report(self.command, input_digest(*self.texts), status, payload)
        out = "\n".join(self.lines)
        if out:
            print(out)
        if self.json_path == "-":
            print(report_json(report), end="")
        elif self.json_path:
            with open(self.json_path, "w", encoding="utf-8") as handle:
                handle.write(report_json(report))
        return code

    def input_error(self, message: str) -> int:
        self.say(f"error: {message}")
        return self.finish("error", {"error": message}, INPUT_ERROR)


def _violation_lines(runner: _Runner, report: ValidationReport) -> None:
    for violation in report.violations:
        runner.say(f"  {violation}")


def _report_payload(report: ValidationReport) -> list[dict]:
    return report.as_dicts()


def _load_doc(runner: _Runner, path: str, field: int | None = None):
    try:
        return parse_dga(runner.read(path), field_override=field)
    except OSError as exc:
        raise _InputProblem(str(exc)) from exc
    except DocumentError as exc:
        raise _InputProblem("\n".join(str(i) for i in exc.issues)) from exc


class _InputProblem(Exception):
    pass


# -- subcommands ----------------------------------------------------------


def _cmd_validate(args) -> int:
    runner = _Runner("validate", args.json)
    try:
        doc = _load_doc(runner, args.file)
    except _InputProblem as exc:
        return runner.input_error(str(exc))
    report = doc.dga.validate_all()
    runner.say(f"{args.file}: {len(doc.dga.generators)} generators, "
               f"{len(doc.dga.nonzero_differentials())} nonzero differentials")
    if report.ok:
        runner.say("valid: d^2 = 0, grading and action filtration hold")
        return runner.finish("ok", {"violations": []}, OK)
    runner.say(f"{len(report)} violation(s):")
    _violation_lines(runner, report)
    return runner.finish("violations", {"violations": _report_payload(report)}, VIOLATIONS)


def _cmd_augment(args) -> int:
    runner = _Runner("augment", args.json)
    try:
        doc = _load_doc(runner, args.file, field=args.field)
    except _InputProblem as exc:
        return runner.input_error(str(exc))
    try:
        found = enumerate_augmentations(doc.dga, max_degree_zero=args.limit)
    except EnumerationBoundError as exc:
        return runner.input_error(str(exc))
    runner.say(f"{len(found)} augmentation(s) over F_{doc.dga.p}")
    listing = []
    for aug in found:
        values = {name: aug.value(name) for name in sorted(doc.dga.degree_zero_names())}
        listing.append(values)
        if args.list:
            inside = ", ".join(f"{n}={v}" for n, v in values.items()) or "(trivial)"
            runner.say(f"  {inside}")
    payload = {"field": doc.dga.p, "count": len(found)}
    if args.list:
        payload["augmentations"] = listing
    return runner.finish("ok", payload, OK)


def _cmd_ce_lift(args) -> int:
    runner = _Runner("ce-lift", args.json)
    try:
        table = parse_disk_counts(runner.read(args.file))
    except OSError as exc:
        return runner.input_error(str(exc))
    except DocumentError as exc:
        return runner.input_error("\n".join(str(i) for i in exc.issues))
    dga = derive_ce(table)
    text = serialize_dga(dga)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        runner.say(f"wrote {args.output}")
    else:
        runner.say(text.rstrip("\n"))
    for rej in table.rejected:
        runner.say(f"rejected {rej.entry}: {rej.reason}")
    payload = {
        "generators": len(dga.generators),
        "rejected": [{"entry": r.entry, "reason": r.reason} for r in table.rejected],
    }
    return runner.finish("ok", payload, OK)


def _cmd_mc_check(args) -> int:
    runner = _Runner("mc-check", args.json)
    try:
        table = parse_disk_counts(runner.read(args.file))
        values = parse_values(runner.read(args.cochain), table.p)
    except OSError as exc:
        return runner.input_error(str(exc))
    except DocumentError as exc:
        return runner.input_error("\n".join(str(i) for i in exc.issues))
    cochain = BoundingCochain(table.p, values)
    try:
        residual = mc_residual(table, cochain)
        identity = verify_mc_aug_identity(table, cochain)
    except SupportError as exc:
        return runner.input_error(str(exc))
    for rej in table.rejected:
        runner.say(f"rejected {rej.entry}: {rej.reason}")
    nonzero = {name: value for name, value in residual.items() if value}
    for name in sorted(residual):
        runner.say(f"residual at {name}: {residual[name]}")
    runner.say("series/augmentation identity: " + ("holds" if identity else "FAILS"))
    solves = not nonzero
    runner.say("cochain solves the deformation equation" if solves
               else "cochain is obstructed")
    payload = {
        "residual": {n: residual[n] for n in sorted(residual)},
        "identity_holds": identity,
        "solves": solves,
        "rejected": [{"entry": r.entry, "reason": r.reason} for r in table.rejected],
    }
    if solves and identity:
        return runner.finish("ok", payload, OK)
    return runner.finish("violations", payload, VIOLATIONS)


def _cmd_deform(args) -> int:
    runner = _Runner("deform", args.json)
    try:
        table = parse_strip_counts(runner.read(args.file))
        v0 = parse_values(runner.read(args.cochain0), table.p)
        v1 = parse_values(runner.read(args.cochain1), table.p)
    except OSError as exc:
        return runner.input_error(str(exc))
    except DocumentError as exc:
        return runner.input_error("\n".join(str(i) for i in exc.issues))
    b0 = BoundingCochain(table.p, v0)
    b1 = BoundingCochain(table.p, v1)
    try:
        matrix = deformed_differential(table, b0, b1)
        squared = check_squared_zero(table, b0, b1)
    except SupportError as exc:
        return runner.input_error(str(exc))
    entries = matrix.nonzero_entries()
    runner.say(f"twisted differential has {len(entries)} nonzero entr"
               f"{'y' if len(entries) == 1 else 'ies'}")
    for out, inp, coeff in entries:
        runner.say(f"  d({inp}) += {coeff} {out}")
    payload = {
        "entries": [{"out": o, "in": i, "coeff": c} for o, i, c in entries],
        "squared_zero": squared.ok,
        "violations": _report_payload(squared),
    }
    if squared.ok:
        runner.say("twisted differential squares to zero")
        return runner.finish("ok", payload, OK)
    runner.say("twisted differential does NOT square to zero:")
    _violation_lines(runner, squared)
    return runner.finish("violations", payload, VIOLATIONS)


def _cmd_surgery(args) -> int:
    runner = _Runner("surgery", args.json)
    try:
        doc = _load_doc(runner, args.file)
        base_values = parse_values(runner.read(args.base_aug), doc.dga.p)
    except _InputProblem as exc:
        return runner.input_error(str(exc))
    except OSError as exc:
        return runner.input_error(str(exc))
    except DocumentError as exc:
        return runner.input_error("\n".join(str(i) for i in exc.issues))
    dga = doc.dga
    if doc.marked:
        try:
            dga = quotient_order_reversing(dga, doc.marked)
        except QuotientError as exc:
            runner.say("order-reversing marking is not differential-closed:")
            _violation_lines(runner, exc.report)
            return runner.finish("violations",
                                 {"violations": _report_payload(exc.report)}, VIOLATIONS)
        runner.say(f"quotiented {len(doc.marked)} order-reversing chord(s)")
    k = sum(1 for role in doc.roles.values() if role.type == "a")
    try:
        algebra = SurgeryAlgebra(dga, k, doc.roles)
    except (ValueError, KeyError) as exc:
        return runner.input_error(str(exc))
    shape = validate_surgery_shape(algebra)
    shape.extend(dga.validate_d_squared())
    if not shape.ok:
        runner.say(f"{len(shape)} structural violation(s):")
        _violation_lines(runner, shape)
        return runner.finish("violations",
                             {"violations": _report_payload(shape)}, VIOLATIONS)
    eb = Augmentation(dga.p, base_values)
    base_check = check_augmentation(algebra.base_ce(), eb)
    if not base_check.ok:
        runner.say("base augmentation is invalid:")
        _violation_lines(runner, base_check)
        return runner.finish("violations",
                             {"violations": _report_payload(base_check)}, VIOLATIONS)
    try:
        certificate = construct_surgery_augmentation(algebra, eb,
                                                     order_reversing=doc.marked)
    except PreconditionError as exc:
        return runner.input_error(str(exc))
    recheck = verify_certificate(algebra, certificate, eb)
    values = {n: certificate.augmentation.value(n) for n in dga.names()}
    runner.say(f"extended augmentation over k={k} cocores:")
    for name in dga.names():
        if values[name]:
            runner.say(f"  {name} -> {values[name]}")
    for flag in certificate.flags:
        runner.say(f"flag: {flag}")
    payload = {
        "k": k,
        "augmentation": {n: v for n, v in sorted(values.items()) if v},
        "flags": list(certificate.flags),
        "violations": _report_payload(recheck),
    }
    if recheck.ok and not certificate.flags:
        runner.say("certificate verified: all conditions hold and the "
                   "extension vanishes on every differential")
        return runner.finish("ok", payload, OK)
    runner.say("certificate verification FAILED:")
    _violation_lines(runner, recheck)
    return runner.finish("violations", payload, VIOLATIONS)


def _cmd_quotient(args) -> int:
    runner = _Runner("quotient", args.json)
    try:
        doc = _load_doc(runner, args.file)
    except _InputProblem as exc:
        return runner.input_error(str(exc))
    try:
        quotient = quotient_order_reversing(doc.dga, doc.marked)
    except QuotientError as exc:
        runner.say("marking does not generate a differential-closed ideal:")
        _violation_lines(runner, exc.report)
        return runner.finish("violations",
                             {"violations": _report_payload(exc.report)}, VIOLATIONS)
    text = serialize_dga(DgaDocument(quotient, (), dict(doc.roles)))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        runner.say(f"wrote {args.output}")
    else:
        runner.say(text.rstrip("\n"))
    payload = {"removed": list(doc.marked),
               "generators": len(quotient.generators)}
    return runner.finish("ok", payload, OK)


def _cmd_tree_check(args) -> int:
    runner = _Runner("tree-check", args.json)
    try:
        tree = parse_tree_config(runner.read(args.file))
    except OSError as exc:
        return runner.input_error(str(exc))
    except DocumentError as exc:
        return runner.input_error("\n".join(str(i) for i in exc.issues))
    try:
        ledger = tree_ledger(tree)
    except ConfigError as exc:
        return runner.input_error(str(exc))
    verdict = tree_verdict(tree, require_global_constraint=not args.no_global)
    runner.say(f"ledger: m={ledger.m} k={ledger.k} lhs={ledger.lhs} "
               f"rhs={ledger.rhs} telescoped={ledger.telescoped}")
    payload = {
        "ledger": {"m": ledger.m, "k": ledger.k, "lhs": ledger.lhs,
                   "rhs": ledger.rhs, "telescoped": ledger.telescoped},
        "hypotheses_ok": verdict.hypotheses_ok,
        "hypothesis_violations": list(verdict.hypothesis_violations),
        "positivity_propagates": verdict.positivity_propagates,
        "output_action_positive": verdict.output_action_positive,
        "global_constraint_satisfied": verdict.global_constraint_satisfied,
        "forced_disk_count": verdict.forced_disk_count,
        "single_disk": verdict.single_disk,
    }
    if not verdict.hypotheses_ok:
        runner.say("hypothesis violations:")
        for violation in verdict.hypothesis_violations:
            runner.say(f"  {violation}")
        return runner.finish("violations", payload, VIOLATIONS)
    runner.say(f"positivity propagates: {verdict.positivity_propagates}; "
               f"output action positive: {verdict.output_action_positive}")
    if verdict.global_constraint_satisfied is None:
        runner.say("global degree constraint not applied")
    elif verdict.global_constraint_satisfied:
        runner.say(f"global constraint holds: forced disk count = "
                   f"{verdict.forced_disk_count} (single disk: {verdict.single_disk})")
    else:
        runner.say("configuration cannot satisfy the rigid global degree constraint")
    code = OK if ledger.telescoped else VIOLATIONS
    return runner.finish("ok" if code == OK else "violations", payload, code)


def _cmd_traj_check(args) -> int:
    runner = _Runner("traj-check", args.json)
    try:
        traj = parse_traj_config(runner.read(args.file))
    except OSError as exc:
        return runner.input_error(str(exc))
    except DocumentError as exc:
        return runner.input_error("\n".join(str(i) for i in exc.issues))
    try:
        ledger = trajectory_ledger(traj)
    except ConfigError as exc:
        return runner.input_error(str(exc))
    verdict = trajectory_verdict(traj)
    runner.say(f"ledger: M={ledger.M} (K={ledger.K}, m0={ledger.m0}, m1={ledger.m1}) "
               f"k={ledger.k} l={ledger.l} lhs={ledger.lhs} rhs={ledger.rhs} "
               f"telescoped={ledger.telescoped}")
    payload = {
        "ledger": {"M": ledger.M, "K": ledger.K, "m0": ledger.m0, "m1": ledger.m1,
                   "k": ledger.k, "l": ledger.l, "lhs": ledger.lhs,
                   "rhs": ledger.rhs, "telescoped": ledger.telescoped},
        "hypotheses_ok": verdict.hypotheses_ok,
        "hypothesis_violations": list(verdict.hypothesis_violations),
        "global_constraint_satisfied": verdict.global_constraint_satisfied,
        "forced_component_count": verdict.forced_component_count,
        "unbroken": verdict.unbroken,
        "no_attached_disks": verdict.no_attached_disks,
    }
    if not verdict.hypotheses_ok:
        runner.say("hypothesis violations:")
        for violation in verdict.hypothesis_violations:
            runner.say(f"  {violation}")
        return runner.finish("violations", payload, VIOLATIONS)
    if verdict.global_constraint_satisfied:
        runner.say(f"global constraint holds: forced component count = "
                   f"{verdict.forced_component_count} (unbroken: {verdict.unbroken})")
    else:
        runner.say("configuration cannot satisfy the rigid global degree constraint")
    code = OK if ledger.telescoped else VIOLATIONS
    return runner.finish("ok" if code == OK else "violations", payload, code)


def _cmd_search(args) -> int:
    runner = _Runner("search", args.json)
    lo, hi = args.degree_lo, args.degree_hi
    if lo > hi:
        return runner.input_error(f"empty degree range [{lo}, {hi}]")
    if args.mode == "trees":
        bounds = TreeSearchBounds(max_disks=args.max_disks,
                                  max_inputs_per_disk=args.max_inputs,
                                  degree_range=(lo, hi),
                                  max_configs=args.max_configs)
    else:
        bounds = TrajectorySearchBounds(max_strips=args.max_strips,
                                        max_inputs_per_disk=args.max_inputs,
                                        degree_range=(lo, hi),
                                        max_configs=args.max_configs)
    try:
        result = exhaustive_search(bounds)
    except BoundsTooLargeError as exc:
        return runner.input_error(str(exc))
    runner.say(f"mode {result.mode}: estimated {result.estimated_configs} "
               f"configurations, enumerated {result.enumerated}")
    runner.say(f"telescope failures: {result.telescope_failures}; "
               f"materialized cross-checks: {result.materialized}")
    runner.say(f"counterexamples: {len(result.counterexamples)}")
    payload = {
        "mode": result.mode,
        "bounds": result.bounds,
        "estimated_configs": result.estimated_configs,
        "enumerated": result.enumerated,
        "telescope_failures": result.telescope_failures,
        "materialized": result.materialized,
        "counterexamples": result.counterexamples,
    }
    if result.ok:
        return runner.finish("ok", payload, OK)
    return runner.finish("violations", payload, VIOLATIONS)


def _cmd_corpus(args) -> int:
    from . import corpus
    runner = _Runner("corpus", args.json)
    results = corpus.run_corpus()
    failures = 0
    for case in results:
        status = "PASS" if case["passed"] else "FAIL"
        if not case["passed"]:
            failures += 1
        runner.say(f"{status} {case['name']}: exit {case['exit']} "
                   f"(expected {case['expected_exit']})")
        if not case["passed"] and case.get("detail"):
            runner.say(f"     {case['detail']}")
    runner.say(f"{len(results) - failures}/{len(results)} corpus cases behaved as expected")
    payload = {"cases": results, "failures": failures}
    if failures:
        return runner.finish("violations", payload, VIOLATIONS)
    return runner.finish("ok", payload, OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cedga",
        description="Symbolic checks for filtered noncommutative chord algebras: "
                    "validation, augmentation search, count-table bridges, surgery "
                    "extensions, and degeneration ledgers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", metavar="PATH",
                       help="write the machine-readable report to PATH ('-' for stdout)")
        p.set_defaults(func=func)
        return p

    p = add("validate", _cmd_validate, "check d^2, grading, and the action filtration")
    p.add_argument("file")

    p = add("augment", _cmd_augment, "enumerate augmentations")
    p.add_argument("file")
    p.add_argument("--field", type=int, default=None,
                   help="override the document's field characteristic")
    p.add_argument("--limit", type=int, default=24,
                   help="refuse when there are more degree-0 generators than this")
    p.add_argument("--list", action="store_true", help="list every augmentation")

    p = add("ce-lift", _cmd_ce_lift, "derive the chord algebra from a disk-count table")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the derived algebra here")

    p = add("mc-check", _cmd_mc_check,
            "evaluate the obstruction series and the bridge identity")
    p.add_argument("file")
    p.add_argument("--cochain", required=True)

    p = add("deform", _cmd_deform,
            "twisted differential from a strip table plus two cochains")
    p.add_argument("file")
    p.add_argument("--cochain0", required=True)
    p.add_argument("--cochain1", required=True)

    p = add("surgery", _cmd_surgery,
            "validate a surgery algebra and extend a base augmentation")
    p.add_argument("file")
    p.add_argument("--base-aug", required=True, dest="base_aug")

    p = add("quotient", _cmd_quotient, "quotient by the marked order-reversing chords")
    p.add_argument("file")
    p.add_argument("-o", "--output")

    p = add("tree-check", _cmd_tree_check, "ledger and verdict for a disk tree")
    p.add_argument("file")
    p.add_argument("--no-global", action="store_true",
                   help="do not impose the global rigid degree constraint")

    p = add("traj-check", _cmd_traj_check, "ledger and verdict for a broken trajectory")
    p.add_argument("file")

    p = add("search", _cmd_search, "exhaustive counterexample search")
    p.add_argument("--mode", choices=("trees", "trajectories"), required=True)
    p.add_argument("--max-disks", type=int, default=4)
    p.add_argument("--max-strips", type=int, default=3)
    p.add_argument("--max-inputs", type=int, default=None)
    p.add_argument("--degree-lo", type=int, default=-3)
    p.add_argument("--degree-hi", type=int, default=4)
    p.add_argument("--max-configs", type=int, default=50_000_000)

    add("corpus", _cmd_corpus, "run the bundled example corpus")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_inputs", None) is None and args.command == "search":
        args.max_inputs = 3 if args.mode == "trees" else 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
