# -*- coding: utf-8 -*-

"""
Command-line entry point: positroids.

Every command prints one JSON report document on stdout (sorted keys,
stable ordering) unless --text is given. Logs go to stderr.

Exit codes:
    0  verdict true
    1  verdict false, or bonding hypotheses failed
    2  input, precondition or capacity error, or bad usage
    3  search budget exhausted

Matroids are read from exchange documents; "catalog:NAME" names one of
the built-in matroids instead of a file, and "bond --pair NAME" bonds a
built-in pair.
"""

import functools
import json
import logging
import sys
import time

import click
import numpy as np

from src.config.settings import get_settings
from src.config.settings_generator import grid
from src.data.catalog import named, named_pair
from src.data.exchange_format import MatroidDocument, load_matroid
from src.data.families import FamilyParams
from src.data.random_matroids import random_matroid
from src.models.bonding import (
    bond,
    bond_theorem_check_1,
    bond_theorem_check_2,
)
from src.models.exceptions import (
    BudgetExhausted,
    CapacityError,
    MatroidInputError,
    PreconditionError,
)
from src.models.excluded_minor import ExcludedMinorVerifier
from src.models.experiment import Experiment
from src.models.order_search import find_positroid_order
from src.models.orders import LinearOrder
from src.models.positroid import ORDER_TESTS, CheckReport, grassmann_necklace
from src.visualization.reports import (
    agreement,
    build_report,
    dumps,
    info_report,
    load_report,
    render_text,
    replay_certificate,
)


logger = logging.getLogger(__name__)

EXIT_CODES = {
    "true": 0,
    "false": 1,
    "hypotheses_failed": 1,
    "budget_exhausted": 3,
    "undetermined": 3,
}
CATALOG_PREFIX = "catalog:"
AGREEMENT_METHODS = ("necklace", "sorting", "cip", "rank2")


# -------------------------------------------------------------------
# Helpers
# -------------------------------------------------------------------
def _handled(command):
    """Map library errors to exit code 2 and budget overruns to 3."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (MatroidInputError, PreconditionError, CapacityError) as error:
            click.echo(f"error: {error}", err=True)
            sys.exit(2)
        except BudgetExhausted as error:
            click.echo(f"budget exhausted: {error}", err=True)
            sys.exit(3)
    return wrapper


def _load(source):
    """Matroid and document from a path or a catalog name."""
    if source.startswith(CATALOG_PREFIX):
        name = source[len(CATALOG_PREFIX):]
        matroid = named(name)
        return matroid, MatroidDocument.from_matroid(matroid, name)
    return load_matroid(source)


def _load_pair(first, second, pair):
    """Both sides of a bonding from two sources or one catalog pair."""
    if pair:
        if first or second:
            raise click.UsageError("give FIRST and SECOND or --pair, not both")
        left, right = named_pair(pair)
        return (
            left, MatroidDocument.from_matroid(left, f"{pair}.first"),
            right, MatroidDocument.from_matroid(right, f"{pair}.second"),
        )
    if not (first and second):
        raise click.UsageError("bond needs FIRST and SECOND, or --pair")
    return _load(first) + _load(second)


def _order(matroid, document, text, name):
    if text and name:
        raise click.UsageError("give --order or --order-name, not both")
    if text:
        return LinearOrder.parse(text)
    if name:
        return document.order(name)
    if "natural" in document.orders:
        return document.order("natural")
    return LinearOrder.natural(matroid.labels)


def _emit(ctx, command, arguments, report, started):
    timing = time.perf_counter() - started if ctx.obj["timing"] else None
    document = build_report(command, arguments, report, timing)
    if ctx.obj["text"]:
        click.echo(render_text(document), nl=False)
    else:
        click.echo(dumps(document), nl=False)
    ctx.exit(EXIT_CODES.get(document["status"], 1))


# -------------------------------------------------------------------
# Command group
# -------------------------------------------------------------------
@click.group()
@click.option("--budget", type=click.IntRange(min=1), default=None,
              help="Search budget (nodes per component).")
@click.option("--seed", type=int, default=None,
              help="Seed for randomized commands.")
@click.option("--n-jobs", type=int, default=None,
              help="joblib workers for sweeps.")
@click.option("--log-level", default=None,
              type=click.Choice(
                  ["DEBUG", "INFO", "WARNING", "ERROR"],
                  case_sensitive=False,
              ))
@click.option("--timing", is_flag=True,
              help="Include wall time in reports.")
@click.option("--text", is_flag=True,
              help="Human-readable output instead of JSON.")
@click.pass_context
def cli(ctx, budget, seed, n_jobs, log_level, timing, text):
    """Positroid recognition, bonding and excluded-minor checks."""
    settings = get_settings().override(
        search_budget=budget,
        seed=seed,
        n_jobs=n_jobs,
        log_level=log_level.upper() if log_level else None,
    )
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    ctx.obj = {"settings": settings, "timing": timing, "text": text}


# -------------------------------------------------------------------
# Inspection
# -------------------------------------------------------------------
@cli.command()
@click.argument("source")
@click.pass_context
@_handled
def info(ctx, source):
    """Size, rank, bases, components, cyclic flats and clones."""
    started = time.perf_counter()
    matroid, document = _load(source)
    _emit(ctx, "info", {"file": source},
          info_report(matroid, document.name), started)


@cli.command()
@click.argument("source")
@click.option("--order", "order_text", default=None,
              help="Comma-separated labels; default: natural order.")
@click.option("--order-name", default=None,
              help="Named order stored in the document.")
@click.pass_context
@_handled
def necklace(ctx, source, order_text, order_name):
    """Grassmann necklace of an order."""
    started = time.perf_counter()
    matroid, document = _load(source)
    order = _order(matroid, document, order_text, order_name)
    result = grassmann_necklace(matroid, order)
    report = CheckReport.passed(
        "necklace_entries",
        rank=result.rank,
        entries=[
            [x for x in order.shift(i).sequence if x in entry]
            for i, entry in enumerate(result.entries, start=1)
        ],
    )
    _emit(ctx, "necklace",
          {"file": source, "order": list(order.sequence)}, report, started)


# -------------------------------------------------------------------
# Positroid orders
# -------------------------------------------------------------------
def _applicable(matroid):
    methods = list(AGREEMENT_METHODS)
    if not matroid.coloops():
        methods.append("dual_cyclic")
    if matroid.is_connected() and matroid.full_rank >= 2:
        methods.extend(["arw2", "flags"])
    return methods


@cli.command("check-order")
@click.argument("source")
@click.option("--order", "order_text", default=None,
              help="Comma-separated labels; default: natural order.")
@click.option("--order-name", default=None,
              help="Named order stored in the document.")
@click.option("--method", default="cip",
              type=click.Choice(sorted(ORDER_TESTS)))
@click.option("--all", "run_all", is_flag=True,
              help="Run every applicable test and require agreement.")
@click.option("--k", default=2, type=int,
              help="Flag length for --method flags.")
@click.option("--verify-certificate", "report_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Replay a stored report against this matroid.")
@click.pass_context
@_handled
def check_order(ctx, source, order_text, order_name, method, run_all, k,
                report_path):
    """Test whether an order is a positroid order."""
    started = time.perf_counter()
    matroid, document = _load(source)

    if report_path:
        stored = load_report(report_path)
        report = replay_certificate(matroid, stored)
        return _emit(ctx, "check-order",
                     {"file": source, "verify_certificate": report_path},
                     report, started)

    order = _order(matroid, document, order_text, order_name)
    arguments = {"file": source, "order": list(order.sequence)}
    if run_all:
        reports = {
            name: ORDER_TESTS[name](matroid, order)
            for name in _applicable(matroid)
        }
        arguments["method"] = "all"
        return _emit(ctx, "check-order", arguments, agreement(reports),
                     started)

    kwargs = {"k": k} if method == "flags" else {}
    arguments["method"] = method
    if kwargs:
        arguments["k"] = k
    report = ORDER_TESTS[method](matroid, order, **kwargs)
    _emit(ctx, "check-order", arguments, report, started)


@cli.command("find-order")
@click.argument("source")
@click.option("--output", default=None, type=click.Path(dir_okay=False),
              help="Write the document with the order stored as "
                   "'positroid'.")
@click.pass_context
@_handled
def find_order(ctx, source, output):
    """Search a positroid order."""
    started = time.perf_counter()
    matroid, document = _load(source)
    budget = ctx.obj["settings"].search_budget
    order, report = find_positroid_order(matroid, budget)
    if output and order is not None:
        document.orders["positroid"] = list(order.sequence)
        document.save(output)
    _emit(ctx, "find-order", {"file": source}, report, started)


# -------------------------------------------------------------------
# Bonding
# -------------------------------------------------------------------
@cli.command("bond")
@click.argument("first", required=False)
@click.argument("second", required=False)
@click.option("--pair", default=None,
              help="Catalog pair to bond instead of FIRST and SECOND.")
@click.option("--check1", is_flag=True,
              help="Check the clone criterion for a positroid bonding.")
@click.option("--check2", "subset", default=None,
              help="Comma-separated P for the second criterion.")
@click.option("--output", default=None, type=click.Path(dir_okay=False),
              help="Write the bonded matroid document here.")
@click.pass_context
@_handled
def bond_command(ctx, first, second, pair, check1, subset, output):
    """Bond two matroids along their shared labels."""
    started = time.perf_counter()
    if check1 and subset:
        raise click.UsageError("give --check1 or --check2, not both")
    left, left_doc, right, right_doc = _load_pair(first, second, pair)
    budget = ctx.obj["settings"].search_budget

    bonded = bond(left, right)
    result = MatroidDocument.from_matroid(
        bonded, f"bond({left_doc.name},{right_doc.name})"
    )
    if output:
        result.save(output)

    arguments = {"pair": pair} if pair else {"first": first, "second": second}
    if check1:
        report = bond_theorem_check_1(left, right, budget)
    elif subset:
        labels = [x.strip() for x in subset.split(",") if x.strip()]
        arguments["subset"] = labels
        report = bond_theorem_check_2(left, right, labels, budget)
    else:
        if not output:
            click.echo(result.dumps(), nl=False)
        ctx.exit(0)
    _emit(ctx, "bond", arguments, report, started)


# -------------------------------------------------------------------
# Excluded minors
# -------------------------------------------------------------------
def _sweep(ctx, name, output):
    settings = ctx.obj["settings"]
    points = grid(name)
    experiment = Experiment(
        points,
        budget=settings.search_budget,
        n_jobs=settings.n_jobs,
        results_path=output,
    )
    statuses = []
    for row in experiment.iter_results(progress=False):
        if not ctx.obj["timing"]:
            row = {k: v for k, v in row.items() if k != "seconds"}
        click.echo(json.dumps(row, sort_keys=True))
        statuses.append(row["status"])
    if "error" in statuses:
        ctx.exit(2)
    if "budget_exhausted" in statuses:
        ctx.exit(3)
    ctx.exit(0 if all(s == "true" for s in statuses) else 1)


@cli.command()
@click.argument("source", required=False)
@click.option("--family", default=None,
              help="Family name, with --params.")
@click.option("--params", default=None,
              help="Comma-separated integer parameters.")
@click.option("--sweep", default=None,
              help="Grid name (genK4, examples, whirlFreeExt, "
                   "whirlVariant, closing or all).")
@click.option("--output", default=None, type=click.Path(dir_okay=False),
              help="Checkpoint CSV for --sweep.")
@click.pass_context
@_handled
def exmin(ctx, source, family, params, sweep, output):
    """Verify that a matroid is an excluded minor for positroids."""
    started = time.perf_counter()
    given = [x for x in (source, family, sweep) if x]
    if len(given) != 1:
        raise click.UsageError("give exactly one of SOURCE, --family, --sweep")
    if sweep:
        return _sweep(ctx, sweep, output)
    if family:
        if params is None:
            raise click.UsageError("--family needs --params")
        point = FamilyParams.parse(family, params)
        matroid = point.build()
        arguments = point.as_dict()
    else:
        matroid, _ = _load(source)
        arguments = {"file": source}
    verifier = ExcludedMinorVerifier(ctx.obj["settings"].search_budget)
    _emit(ctx, "exmin", arguments, verifier.verify(matroid), started)


# -------------------------------------------------------------------
# Randomized self-check
# -------------------------------------------------------------------
@cli.command()
@click.option("--count", default=50, type=click.IntRange(min=1))
@click.option("--size", default=6, type=click.IntRange(min=2, max=9),
              help="Largest ground set to draw.")
@click.pass_context
@_handled
def selfcheck(ctx, count, size):
    """Agreement of the order tests on random matroids."""
    started = time.perf_counter()
    seed = ctx.obj["settings"].seed
    rng = np.random.default_rng(seed)
    checked, disagreements = 0, []
    for index in range(count):
        n = int(rng.integers(2, size + 1))
        matroid = random_matroid(rng, n)
        order = LinearOrder(tuple(
            matroid.labels[i] for i in rng.permutation(matroid.n)
        ))
        verdicts = {
            name: ORDER_TESTS[name](matroid, order).verdict
            for name in AGREEMENT_METHODS
        }
        checked += 1
        if len(set(verdicts.values())) > 1:
            logger.error(f"Disagreement on instance {index}: {verdicts}")
            disagreements.append({
                "instance": index,
                "document": MatroidDocument.from_matroid(
                    matroid, f"selfcheck-{index}"
                ).as_dict(),
                "order": list(order.sequence),
                "verdicts": verdicts,
            })
    certificate = {"seed": seed, "checked": checked}
    if disagreements:
        report = CheckReport.failed(
            "selfcheck", disagreements=disagreements, **certificate
        )
    else:
        report = CheckReport.passed("selfcheck", **certificate)
    _emit(ctx, "selfcheck", {"count": count, "size": size}, report, started)


def main():
    cli(prog_name="positroids")


if __name__ == "__main__":
    main()
