"""The ``orientedmonoids`` console script and its subcommands.

Payloads (JSON, CSV, result lines) are written to stdout; progress,
check results, and errors go to stderr. Exit codes: 0 when everything
passed, 1 when a check failed, 2 on bad input.

"""
import io
import json
from csv import writer as csv_writer

from rich.table import Table

from .args import arg
from .command import command
from .counting import (
    TABLE_COLUMNS,
    TYPE_KEYS,
    brute_force_counts,
    group_counts,
    total_endomorphisms,
)
from .endomorphisms import all_constructed, classify, type_census
from .exc import DomainError
from .groups import group_endomorphisms, named_group_endomorphisms
from .search import enumerate_endomorphisms
from .semigroup import SemigroupKind, export_cayley, expand_kinds
from .semigroup import build as build_monoid
from .util import Emit, abort, printer
from .verify import SUITES, VerifySuite, records_to_json

KIND_HELP = "Kind tag: op, popi, pop, or, pori, por, o, poi, po, c, d2, t, i, pt"
BUDGET_HELP = "Search budget in seconds"
EMIT_HELP = "Output format"
TEXT_OR_JSON = (Emit.text, Emit.json)
MODES = ("formula", "enumerate", "both")
SOURCES = ("search", "constructed")
GROUP_KINDS = (SemigroupKind.C, SemigroupKind.D2)


@command(read_config=True)
def orientedmonoids(
    subcommand: arg(help="Subcommand to run"),
    debug: arg(help="Show debugging info") = False,
):
    """Oriented transformation monoids and their endomorphisms.

    Run ``orientedmonoids <subcommand> --help`` for a subcommand's args.

    """
    if debug:
        printer.debug("Running subcommand:", subcommand)


def _per_type_line(per_type):
    return " ".join(f"{key}={per_type.get(key, 0)}" for key in TYPE_KEYS)


@orientedmonoids.subcommand()
def build(
    kind: arg(help=KIND_HELP) = "op",
    n: arg(help="Chain size") = 3,
    method: arg(choices=("closure", "predicate"), help="Build method") = "closure",
    variant: arg(help="Alternative generating set (g_n-1 for POPI)") = None,
    out: arg(help="Write elements and generators as JSON to this path") = None,
    cayley: arg(help="Write the binary Cayley table to this path") = None,
    emit: arg(type=Emit, choices=TEXT_OR_JSON, help=EMIT_HELP) = Emit.text,
    debug=False,
):
    """Build a monoid and report its size.

    With ``--emit json`` the elements are written to stdout as image
    lists (1-based, ``null`` where undefined) in canonical order.

    """
    S = build_monoid(kind, n, method=method, variant=variant)
    if debug:
        printer.debug(f"Built {S!r} with generators {list(S.generators)}")
    payload = S.to_json()
    if out:
        with open(out, "w") as fp:
            json.dump(payload, fp, indent=2)
        printer.info(f"Wrote {S.label} to {out}")
    if cayley:
        export_cayley(S, cayley)
        printer.info(f"Wrote the Cayley table of {S.label} to {cayley}")
    if emit is Emit.json:
        printer.emit(json.dumps(payload, indent=2))
    else:
        printer.emit(f"{S.label}: {len(S)} elements")


@orientedmonoids.subcommand()
def groups(
    tag: arg(choices=("c", "d2"), help="Group: c (C_n) or d2 (D_2n)") = "d2",
    n: arg(help="Chain size") = 4,
    report: arg(type=Emit, choices=TEXT_OR_JSON, help=EMIT_HELP) = Emit.text,
    named: arg(help="Check the brute force against the named families") = False,
    debug=False,
):
    """Find every endomorphism of C_n or D_2n by brute force."""
    result = group_endomorphisms(tag, n)
    label = f"{result.tag}_{n}"
    return_code = 0
    if named:
        families = named_group_endomorphisms(tag, n)
        if set(families.values()) != set(result.endomorphisms):
            printer.error(f"The named families of {label} differ from brute force")
            return_code = 1
        elif debug:
            printer.debug(f"{len(families)} named families match")
    if report is Emit.json:
        printer.emit(json.dumps(result.to_json(), indent=2))
    else:
        printer.emit(
            f"{label}: {result.total} endomorphisms, "
            f"{result.total_automorphisms} automorphisms"
        )
    return return_code


@orientedmonoids.subcommand()
def endos(
    kind: arg(help=KIND_HELP) = "op",
    n: arg(help="Chain size") = 3,
    emit: arg(type=Emit, choices=TEXT_OR_JSON, help=EMIT_HELP) = Emit.text,
    budget: arg(type=float, help=BUDGET_HELP) = None,
    workers: arg(type=int, help="Number of search processes") = None,
    source: arg(choices=SOURCES, help="Backtracking search or T1-T7") = "search",
    debug=False,
):
    """List the endomorphisms of a monoid.

    Each endomorphism is given by its image array over the canonically
    ordered elements. For the six oriented monoids every endomorphism
    is tagged with its type.

    """
    S = build_monoid(kind, n)
    classifiable = S.kind.is_classification_target
    if source == "constructed":
        if not classifiable:
            raise DomainError(f"{S.kind} is not one of the oriented monoids")
        found = all_constructed(S)
    else:
        found = enumerate_endomorphisms(S, budget=budget, workers=workers, debug=debug)
        if classifiable:
            found = [endo.with_type(classify(S, endo)) for endo in found]
    if emit is Emit.json:
        printer.emit(json.dumps([endo.to_json() for endo in found], indent=2))
    else:
        for endo in found:
            name = "-" if endo.type is None else str(endo.tag)
            printer.emit(f"{name} {endo.images.tolist()}")
    printer.info(f"{S.label}: {len(found)} endomorphisms")
    if classifiable:
        census = type_census(S, found)
        printer.info(" ".join(f"{tag}={count}" for tag, count in census.items()))


def _count_group(kind, n, mode, emit):
    label = f"{kind}_{n}"
    endos_total, autos_total = group_counts(kind, n)
    enumerated = None
    if mode != "formula":
        result = group_endomorphisms(kind, n)
        enumerated = (result.total, result.total_automorphisms)
        if mode == "enumerate":
            endos_total, autos_total = enumerated
    if emit is Emit.json:
        obj = {
            "tag": str(kind),
            "n": n,
            "endomorphisms": endos_total,
            "automorphisms": autos_total,
        }
        if mode == "both":
            obj["enumerated"] = list(enumerated)
        printer.emit(json.dumps(obj, indent=2))
    else:
        printer.emit(
            f"{label}: {endos_total} endomorphisms, {autos_total} automorphisms"
        )
    if mode == "both" and enumerated != (endos_total, autos_total):
        printer.error(f"Formula and enumeration disagree for {label}: {enumerated}")
        return 1
    return 0


@orientedmonoids.subcommand()
def count(
    kind: arg(help=KIND_HELP) = "op",
    n: arg(help="Chain size") = 3,
    mode: arg(choices=MODES, help="Count by formula or enumeration") = "formula",
    budget: arg(type=float, help=BUDGET_HELP) = None,
    emit: arg(type=Emit, choices=TEXT_OR_JSON, help=EMIT_HELP) = Emit.text,
    debug=False,
):
    """Count endomorphisms of an oriented monoid, C_n, or D_2n."""
    kind = SemigroupKind.coerce(kind)
    if kind in GROUP_KINDS:
        return _count_group(kind, n, mode, emit)

    report = total_endomorphisms(kind, n)
    label = f"{kind}_{n}"
    per_type = report.per_type
    enumerated_per_type = None

    if mode != "formula":
        S = build_monoid(kind, n)
        found = enumerate_endomorphisms(S, budget=budget, debug=debug)
        enumerated_per_type = brute_force_counts(S, found)
        report.enumerated_total = len(found)

    if mode == "enumerate":
        obj = {
            "kind": str(kind),
            "n": n,
            "enumerated_total": report.enumerated_total,
            "enumerated_per_type": enumerated_per_type,
        }
        line = f"{label}: {report.enumerated_total} endomorphisms (enumerated)"
        per_type = enumerated_per_type
    else:
        obj = report.to_json()
        line = f"{label}: {report.formula_total} endomorphisms"
        if mode == "both":
            obj["enumerated_per_type"] = enumerated_per_type
            line = f"{line} (enumerated: {report.enumerated_total})"

    if emit is Emit.json:
        printer.emit(json.dumps(obj, indent=2))
    else:
        printer.emit(line)
        printer.emit(f"  {_per_type_line(per_type)}")

    if mode == "both":
        if not report.consistent or enumerated_per_type != report.per_type:
            printer.error(
                f"Formula and enumeration disagree for {label}: "
                f"{_per_type_line(enumerated_per_type)}"
            )
            return 1
    elif mode == "formula" and not report.consistent:
        printer.error(f"The per-type counts of {label} do not add up")
        return 1
    return 0


@orientedmonoids.subcommand()
def table(
    kinds: arg(container=tuple, help="Kinds to include (all = the six)") = ("all",),
    n_min: arg(help="Smallest chain size") = 3,
    n_max: arg(help="Largest chain size") = 12,
    csv: arg(help="Write CSV instead of a table") = False,
    enumerate_max: arg(help="Also enumerate up to this chain size") = 0,
    budget: arg(type=float, help=BUDGET_HELP) = None,
    debug=False,
):
    """Tabulate endomorphism counts per type for a range of chain sizes.

    The ``enumerated`` column is filled in only for chain sizes up to
    ``--enumerate-max``; a mismatch there makes the command fail.

    """
    if n_min < 3:
        raise DomainError(f"--n-min must be at least 3; got {n_min}")
    if n_max < n_min:
        abort(2, f"--n-max ({n_max}) is smaller than --n-min ({n_min})")

    rows = []
    mismatches = []
    for kind in expand_kinds(kinds):
        for n in range(n_min, n_max + 1):
            report = total_endomorphisms(kind, n)
            if n <= enumerate_max:
                S = build_monoid(kind, n)
                found = enumerate_endomorphisms(S, budget=budget, debug=debug)
                report.enumerated_total = len(found)
            if not report.consistent:
                mismatches.append(f"{kind}_{n}")
            rows.append(report.to_row())

    if csv:
        stream = io.StringIO()
        out = csv_writer(stream, lineterminator="\n")
        out.writerow(TABLE_COLUMNS)
        out.writerows(rows)
        printer.emit(stream.getvalue(), end="")
    else:
        rich_table = Table(title="Endomorphism counts")
        for column in TABLE_COLUMNS:
            justify = "left" if column == "kind" else "right"
            rich_table.add_column(column, justify=justify)
        for row in rows:
            rich_table.add_row(*(str(value) for value in row))
        printer.show(rich_table)

    if mismatches:
        printer.error(f"Formula and enumeration disagree for {', '.join(mismatches)}")
        return 1
    return 0


@orientedmonoids.subcommand()
def verify(
    suite: arg(container=tuple, choices=SUITES + ("all",), help="Suites") = ("all",),
    kind: arg(container=tuple, help="Kinds (all = the six)") = ("all",),
    n: arg(container=tuple, type=int, help="Chain sizes") = (3,),
    budget: arg(type=float, help=BUDGET_HELP) = None,
    emit: arg(type=Emit, choices=TEXT_OR_JSON, help=EMIT_HELP) = Emit.text,
    debug=False,
):
    """Run verification suites and report a pass/fail record per check.

    Failed checks that come with a counterexample have it dumped as
    JSON on stderr.

    """
    records = VerifySuite(suite, kind, n, budget).run(debug=debug)
    failed = [record for record in records if not record.passed]

    if emit is Emit.json:
        printer.emit(records_to_json(records))
    else:
        printer.hr(f"{len(records)} checks", color="rule")
        for record in records:
            printer.check(record.label, record.passed, record.detail)

    for record in failed:
        if record.counterexample is not None:
            printer.print(json.dumps(record.counterexample, indent=2), soft_wrap=True)

    passed = len(records) - len(failed)
    if failed:
        printer.error(f"{passed} of {len(records)} checks passed")
        return 1
    printer.success(f"All {len(records)} checks passed")
    return 0
