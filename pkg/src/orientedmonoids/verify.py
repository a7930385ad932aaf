"""Verification suites.

Each suite runs a group of exhaustive checks for one (kind, n) pair (or
just for n, for the group-only suites) and yields a :class:`CheckRecord`
per check. Records are sorted by (kind, n, check) so a run's output does
not depend on the order the checks happened to run in.

"""
import json

import numpy as np

from .counting import (
    brute_force_counts,
    e_count,
    group_counts,
    idempotents_per_rank,
    total_endomorphisms,
    type_counts,
)
from .endomorphisms import (
    all_constructed,
    automorphisms,
    classify,
    inner_auto,
    is_endomorphism,
    kernel_shape,
    phi_sigma,
)
from .exc import DomainError, OrientedMonoidsError, TheoremViolation
from .green import (
    find_idempotent_family,
    green_from_table,
    identify_group,
    partitions_agree,
)
from .groups import (
    cyclic_elements,
    dihedral_elements,
    group_endomorphisms,
    i1_extension,
    inner_automorphism_group,
    named_group_endomorphisms,
    normalizer_family,
    normalizer_in_sn,
    totient,
)
from .search import enumerate_endomorphisms
from .semigroup import SemigroupKind, build, e_set, expand_kinds
from .util import printer

__all__ = [
    "CheckRecord",
    "SUITES",
    "VerifySuite",
    "records_to_json",
]

MAX_I1_EXTENSION_N = 5


class CheckRecord:
    def __init__(
        self, suite, kind, n, check, passed, detail=None, counterexample=None
    ):
        self.suite = suite
        self.kind = kind
        self.n = n
        self.check = check
        self.passed = bool(passed)
        self.detail = detail
        self.counterexample = counterexample

    @property
    def sort_key(self):
        return ("" if self.kind is None else str(self.kind), self.n, self.check)

    @property
    def label(self):
        scope = f"n={self.n}" if self.kind is None else f"{self.kind}_{self.n}"
        return f"{self.suite}: {scope}: {self.check}"

    def to_json(self):
        return {
            "suite": self.suite,
            "kind": None if self.kind is None else str(self.kind),
            "n": self.n,
            "check": self.check,
            "passed": self.passed,
            "detail": self.detail,
            "counterexample": self.counterexample,
        }

    def __repr__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"CheckRecord({status} {self.label})"


class _Context:

    """Per (kind, n) data shared between suites so it's computed once."""

    def __init__(self, kind, n, budget):
        self.kind = kind
        self.n = n
        self.budget = budget
        self._semigroup = None
        self._endomorphisms = None

    @property
    def semigroup(self):
        if self._semigroup is None:
            self._semigroup = build(self.kind, self.n)
        return self._semigroup

    @property
    def endomorphisms(self):
        if self._endomorphisms is None:
            self._endomorphisms = enumerate_endomorphisms(
                self.semigroup, budget=self.budget
            )
        return self._endomorphisms


def _record(suite, ctx, check, passed, detail=None, counterexample=None):
    return CheckRecord(suite, ctx.kind, ctx.n, check, passed, detail, counterexample)


def _images_json(S, images):
    return {"semigroup": S.label, "images": [int(i) for i in images]}


# Suites over (kind, n) -------------------------------------------------------


def check_orientation(ctx):
    S = ctx.semigroup
    by_predicate = build(ctx.kind, ctx.n, method="predicate")
    yield _record(
        "orientation",
        ctx,
        "closure-equals-predicate",
        S.elements == by_predicate.elements,
        f"{len(S)} generated vs {len(by_predicate)} by predicate",
    )
    outside = [t for t in S if not ctx.kind.contains(t)]
    yield _record(
        "orientation",
        ctx,
        "members-satisfy-predicate",
        not outside,
        None if not outside else f"{outside[0]} fails the predicate",
    )
    yield _record("orientation", ctx, "associative", S.is_associative())


def check_green(ctx):
    S = ctx.semigroup
    fast = S.green
    slow = green_from_table(S)
    for relation in ("l", "r", "h", "j"):
        ids = f"{relation}_ids"
        yield _record(
            "green",
            ctx,
            f"{relation.upper()}-classes",
            partitions_agree(getattr(fast, ids), getattr(slow, ids)),
        )


def check_idempotents(ctx):
    S = ctx.semigroup
    expected = idempotents_per_rank(ctx.kind, ctx.n)
    actual = {k: 0 for k in expected}
    for e in S.idempotents:
        actual[int(S.ranks[e])] = actual.get(int(S.ranks[e]), 0) + 1
    yield _record(
        "idempotents",
        ctx,
        "per-rank-counts",
        actual == expected,
        f"expected {expected}; found {actual}",
    )
    mismatches = [
        int(e)
        for e in S.idempotents
        if len(e_set(S, e)) != e_count(ctx.kind, int(S.ranks[e]))
    ]
    yield _record(
        "idempotents",
        ctx,
        "below-counts",
        not mismatches,
        None if not mismatches else f"|E_S(e)| is off for {S[mismatches[0]]}",
    )


def check_autos(ctx):
    S = ctx.semigroup
    group = inner_automorphism_group(S)
    yield _record(
        "autos",
        ctx,
        "inner-automorphism-group",
        group == sorted(dihedral_elements(ctx.n)),
        f"{len(group)} permutations normalize {S.label}",
    )
    inner = {inner_auto(S, sigma) for sigma in dihedral_elements(ctx.n)}
    found = set(automorphisms(S, ctx.endomorphisms))
    yield _record(
        "autos",
        ctx,
        "automorphisms-are-inner",
        found == inner and len(found) == 2 * ctx.n,
        f"{len(found)} automorphisms found; {len(inner)} inner",
    )


def check_endo_soundness(ctx):
    S = ctx.semigroup
    constructed = all_constructed(S)
    bad = [endo for endo in constructed if not is_endomorphism(S, endo.images)]
    yield _record(
        "endo-soundness",
        ctx,
        "constructed-are-endomorphisms",
        not bad,
        None if not bad else f"{bad[0].type} is not an endomorphism",
        None if not bad else _images_json(S, bad[0].images),
    )
    if ctx.kind.is_partial:
        maps = {phi_sigma(S, sigma) for sigma in normalizer_family(ctx.n)}
        yield _record(
            "endo-soundness",
            ctx,
            "phi-sigma-distinct",
            len(maps) == ctx.n * totient(ctx.n),
        )


def check_endo_completeness(ctx):
    S = ctx.semigroup
    found = set(ctx.endomorphisms)
    constructed = set(all_constructed(S))
    missing = constructed - found
    extra = found - constructed
    example = next(iter(extra or missing), None)
    yield _record(
        "endo-completeness",
        ctx,
        "search-equals-families",
        not missing and not extra,
        f"{len(found)} found, {len(constructed)} constructed, "
        f"{len(extra)} unexplained, {len(missing)} missed",
        None if example is None else _images_json(S, example.images),
    )
    violation = None
    for endo in ctx.endomorphisms:
        try:
            classify(S, endo)
        except TheoremViolation as exc:
            violation = exc
            break
    yield _record(
        "endo-completeness",
        ctx,
        "every-endomorphism-classifies",
        violation is None,
        None if violation is None else violation.message,
        None if violation is None else violation.to_json(),
    )


def check_counts(ctx):
    S = ctx.semigroup
    report = total_endomorphisms(ctx.kind, ctx.n, len(ctx.endomorphisms))
    yield _record(
        "counts",
        ctx,
        "formula-equals-enumerated",
        report.consistent,
        f"formula={report.formula_total} enumerated={report.enumerated_total}",
    )
    expected = type_counts(ctx.kind, ctx.n)
    actual = brute_force_counts(S, ctx.endomorphisms)
    yield _record(
        "counts",
        ctx,
        "per-type",
        expected == actual,
        f"formula {expected}; classified {actual}",
    )


def _lr_violation(S, endo, shape):
    green = S.green
    outside = np.flatnonzero(S.ranks >= shape.k)
    images = endo.images
    for ids in (green.l_ids, green.r_ids):
        related = ids[outside][:, None] == ids[outside][None, :]
        image_ids = ids[images[outside]]
        image_related = image_ids[:, None] == image_ids[None, :]
        if not np.array_equal(related, image_related):
            return True
    return False


def check_structure(ctx):
    S = ctx.semigroup
    n = ctx.n
    kind = ctx.kind
    lr_bad = rank_bad = units_bad = None
    ideal = np.flatnonzero(S.ranks <= n - 2)
    j_n = np.flatnonzero(S.ranks == n)
    j_n_minus_1 = np.flatnonzero(S.ranks == n - 1)
    for endo in ctx.endomorphisms:
        shape = kernel_shape(S, endo)
        if shape.universal:
            continue
        images = endo.images
        if lr_bad is None and _lr_violation(S, endo, shape):
            lr_bad = endo
        if 2 <= shape.k <= n - 1 and rank_bad is None:
            fits = (
                kind.is_partial
                and shape.k == n - 1
                and set(images[j_n].tolist()) == set(j_n.tolist())
                and np.all(S.ranks[images[j_n_minus_1]] == 1)
                and np.all(images[ideal] == S.zero)
            )
            if not fits:
                rank_bad = endo
        if shape.k == n and units_bad is None:
            units = np.unique(images[S.units])
            h_ids = S.green.h_ids[units]
            grouped = len(np.unique(h_ids)) == 1 and S.green.is_group_element(
                units[0]
            )
            if len(units) == 1:
                fits = grouped and S.mul(units[0], units[0]) == units[0]
            else:
                fits = (
                    grouped
                    and (2 * n) % len(units) == 0
                    and identify_group(S, units) != "other"
                )
            if not fits:
                units_bad = endo
    for check, bad in (
        ("lr-reflection", lr_bad),
        ("middle-rank-kernels", rank_bad),
        ("unit-group-image", units_bad),
    ):
        yield _record(
            "structure",
            ctx,
            check,
            bad is None,
            None,
            None if bad is None else _images_json(S, bad.images),
        )
    for k in range((n + 2) // 2, n):
        family = find_idempotent_family(S, k)
        yield _record(
            "structure",
            ctx,
            f"idempotent-family-rank-{k}",
            family is not None,
            None if family is None else f"{len(family)} idempotents",
        )


def check_kernels(ctx):
    S = ctx.semigroup
    violation = None
    for endo in ctx.endomorphisms:
        try:
            kernel_shape(S, endo)
        except TheoremViolation as exc:
            violation = exc
            break
    yield _record(
        "kernels",
        ctx,
        "allowed-shapes",
        violation is None,
        None if violation is None else violation.message,
        None if violation is None else violation.to_json(),
    )


# Suites over n only ----------------------------------------------------------


def check_normalizer(ctx):
    n = ctx.n
    family = sorted(normalizer_family(n))
    for name, group in (("C", cyclic_elements(n)), ("D2", dihedral_elements(n))):
        normalizer = normalizer_in_sn(n, group)
        yield _record(
            "normalizer",
            ctx,
            f"normalizer-of-{name}",
            normalizer == family and len(family) == n * totient(n),
            f"|N| = {len(normalizer)}; n·φ(n) = {n * totient(n)}",
        )
    if n <= MAX_I1_EXTENSION_N:
        monoid = i1_extension(n, cyclic_elements(n))
        inner = inner_automorphism_group(monoid)
        yield _record(
            "normalizer",
            ctx,
            "i1-extension-automorphisms",
            len(inner) == len(family),
            f"{len(inner)} inner automorphisms",
        )


def check_groups(ctx):
    n = ctx.n
    for tag in (SemigroupKind.C, SemigroupKind.D2):
        report = group_endomorphisms(tag, n)
        endos, autos = group_counts(tag, n)
        yield _record(
            "groups",
            ctx,
            f"{tag}-counts",
            (report.total, report.total_automorphisms) == (endos, autos),
            f"{report.total} endomorphisms, "
            f"{report.total_automorphisms} automorphisms",
        )
        named = named_group_endomorphisms(tag, n)
        yield _record(
            "groups",
            ctx,
            f"{tag}-named-families",
            set(named.values()) == set(report.endomorphisms)
            and len(named) == report.total,
        )


KIND_SUITES = {
    "orientation": check_orientation,
    "green": check_green,
    "idempotents": check_idempotents,
    "autos": check_autos,
    "endo-soundness": check_endo_soundness,
    "endo-completeness": check_endo_completeness,
    "counts": check_counts,
    "structure": check_structure,
    "kernels": check_kernels,
}
GROUP_SUITES = {
    "normalizer": check_normalizer,
    "groups": check_groups,
}
SUITES = tuple(sorted(KIND_SUITES)) + tuple(sorted(GROUP_SUITES))


class VerifySuite:

    """Run verification suites for some kinds and chain sizes.

    Args:
        suites: Suite names; ``"all"`` selects every suite.
        kinds: Kinds (or tags); ``"all"`` selects the six oriented monoids.
        ns: Chain sizes.
        budget (float): Search budget per enumeration.

    """

    def __init__(self, suites=("all",), kinds=("all",), ns=(3,), budget=None):
        self.suites = self._expand_suites(suites)
        self.kinds = expand_kinds(kinds)
        self.ns = tuple(sorted(set(ns)))
        self.budget = budget
        for n in self.ns:
            if n < 3:
                raise DomainError(f"Verification requires n >= 3; got {n}")

    @staticmethod
    def _expand_suites(suites):
        if isinstance(suites, str):
            suites = [suites]
        names = []
        for suite in suites:
            if suite == "all":
                names.extend(SUITES)
            elif suite in SUITES:
                names.append(suite)
            else:
                raise DomainError(f"Unknown suite: {suite}")
        return tuple(dict.fromkeys(names))

    def _run_one(self, suite, check, ctx):
        try:
            return list(check(ctx))
        except OrientedMonoidsError as exc:
            counterexample = exc.to_json() if hasattr(exc, "to_json") else None
            record = CheckRecord(suite, ctx.kind, ctx.n, "error", False, str(exc))
            record.counterexample = counterexample
            return [record]

    def run(self, debug=False):
        records = []
        for n in self.ns:
            group_ctx = _Context(None, n, self.budget)
            for suite in self.suites:
                if suite in GROUP_SUITES:
                    check = GROUP_SUITES[suite]
                    records.extend(self._run_one(suite, check, group_ctx))
            for kind in self.kinds:
                ctx = _Context(kind, n, self.budget)
                for suite in self.suites:
                    if suite in KIND_SUITES:
                        if debug:
                            printer.debug(f"Running {suite} for {kind}_{n}")
                        records.extend(self._run_one(suite, KIND_SUITES[suite], ctx))
        records.sort(key=lambda record: record.sort_key)
        return records


def records_to_json(records):
    return json.dumps([record.to_json() for record in records], indent=2)
