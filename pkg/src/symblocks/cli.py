"""Command line interface.

Exit codes: 0 when every check passes, 1 for usage errors, 2 when an
internal consistency check (or a golden comparison) fails.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .blocks import Block, eigen_m0, m_matrix
from .decomp import decomposition_matrix
from .errors import InternalConsistencyError, SymBlocksError, UsageError
from .exact import format_rational
from .partitions import format_multipartition, format_partition, parse_partition
from .pipeline import (
    FORMATS,
    METHODS,
    RunConfig,
    compare_golden,
    conjecture_suite,
    count_morita,
    render,
    report_filename,
    suite_json,
    suite_table,
)
from .scopes import conjugation_pairing, enumerate_representatives, morita_upper_bound, scopes_count, with_partners

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2


def _common(f):
    opts = [
        click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                     help="Directory for cached character tables (default: $SYMBLOCKS_CACHE_DIR)."),
        click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes."),
        click.option("--mem-cap", type=int, default=None, help="Entries per character-value cache."),
        click.option("--size-cap", type=int, default=None, help="Largest core size enumerated."),
        click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True),
        click.option("--out", type=click.Path(file_okay=False), default=None,
                     help="Also write the output to this directory."),
        click.option("--golden", type=click.Path(file_okay=False), default=None,
                     help="Compare the output byte for byte with the file of the same name here."),
        click.option("--figures", type=click.Path(file_okay=False), default=None,
                     help="Write figures (PNG) to this directory."),
        click.option("--run-info", is_flag=True, help="Include timings and cache counters."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(kw, method=None) -> RunConfig:
    return RunConfig(cache_dir=kw["cache_dir"], jobs=kw["jobs"], mem_cap=kw["mem_cap"],
                     size_cap=kw["size_cap"], fmt=kw["fmt"], method=method, run_info=kw["run_info"])


def _emit(text: str, name: str, kw) -> None:
    click.echo(text, nl=False)
    if kw["out"]:
        out = Path(kw["out"])
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
    if kw["golden"]:
        compare_golden(text, Path(kw["golden"]) / name)
        click.echo(f"golden match: {name}", err=True)


def _ext(kw) -> str:
    return "json" if kw["fmt"] == "json" else "tsv"


def _figure(kw, name: str):
    return Path(kw["figures"]) / name if kw["figures"] else None


def _core(text: str) -> tuple:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose):
    """Morita invariants and counts for blocks of symmetric groups."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


@cli.command("scopes-list")
@click.argument("p", type=int)
@click.argument("w", type=int)
@_common
def scopes_list(p, w, **kw):
    """Reduced cores representing the Scopes classes of weight W."""
    config = _config(kw)
    reps = with_partners(enumerate_representatives(p, w, config.size_cap), p, w)
    pairing = conjugation_pairing(reps, p, w)
    if kw["fmt"] == "json":
        data = {
            "p": p, "w": w, "scopes_count": scopes_count(p, w),
            "upper_bound": morita_upper_bound(p, w), "conjugation_classes": len(pairing.classes),
            "representatives": [{"core": format_partition(r.core), "size": sum(r.core),
                                 "partner": format_partition(r.partner), "self_paired": r.self_paired}
                                for r in reps],
        }
        text = json.dumps(data, indent=2) + "\n"
    else:
        lines = ["core\tsize\tpartner\tself_paired"]
        lines += [f"{format_partition(r.core)}\t{sum(r.core)}\t{format_partition(r.partner)}\t{int(r.self_paired)}"
                  for r in reps]
        lines.append(f"# scopes classes {scopes_count(p, w)}, after conjugation {len(pairing.classes)}")
        text = "\n".join(lines) + "\n"
    _emit(text, f"scopes_p{p}_w{w}.{_ext(kw)}", kw)


def _matrix_text(labels_r, labels_c, rows, fmt, header: dict) -> str:
    if fmt == "json":
        data = dict(header)
        data["rows"] = labels_r
        data["cols"] = labels_c
        data["matrix"] = [[format_rational(x) for x in row] for row in rows]
        return json.dumps(data, indent=1) + "\n"
    lines = ["\t".join([""] + labels_c)]
    lines += ["\t".join([lab] + [format_rational(x) for x in row]) for lab, row in zip(labels_r, rows)]
    return "\n".join(lines) + "\n"


@cli.command("m-matrix")
@click.argument("p", type=int)
@click.argument("w", type=int)
@click.argument("core")
@_common
def m_matrix_cmd(p, w, core, **kw):
    """Matrix of p-scalar products of the block with the given core."""
    config = _config(kw)
    config.apply_memory_cap()
    inv = m_matrix(Block(p, w, _core(core)), config.cache_dir)
    labels = [format_partition(r.lam) for r in inv.records]
    header = {"p": p, "w": w, "core": format_partition(inv.block.core),
              "quotients": [format_multipartition(r.quotient) for r in inv.records],
              "signs": [r.sign for r in inv.records]}
    text = _matrix_text(labels, labels, inv.m.tolist(), kw["fmt"], header)
    tag = f"p{p}_w{w}_{'-'.join(map(str, inv.block.core)) or 'empty'}"
    _emit(text, f"mmatrix_{tag}.{_ext(kw)}", kw)
    if kw["figures"]:
        from .plotting import plot_matrix

        plot_matrix(inv.m.tolist(), _figure(kw, f"mmatrix_{tag}.png"), str(inv.block), labels, labels)


@cli.command("decomp")
@click.argument("p", type=int)
@click.argument("w", type=int)
@click.argument("core")
@click.option("--dots", is_flag=True, help="Print the matrix with '.' for zero.")
@_common
def decomp_cmd(p, w, core, dots, **kw):
    """Decomposition matrix of the block (odd p, w <= 2, or w = 3 with p >= 5)."""
    block = Block(p, w, _core(core))
    try:
        q = decomposition_matrix(block)
    except SymBlocksError as exc:
        if isinstance(exc, InternalConsistencyError):
            raise
        raise UsageError(str(exc)) from exc
    rl = [format_partition(x) for x in q.rows]
    cl = [format_partition(x) for x in q.cols]
    tag = f"p{p}_w{w}_{'-'.join(map(str, block.core)) or 'empty'}"
    if dots:
        text = q.to_text() + "\n"
        name = f"decomp_{tag}.txt"
    else:
        text = _matrix_text(rl, cl, q.entries, kw["fmt"], {"p": p, "w": w, "core": format_partition(block.core)})
        name = f"decomp_{tag}.{_ext(kw)}"
    _emit(text, name, kw)
    if kw["figures"]:
        from .plotting import plot_matrix

        plot_matrix(q.entries, _figure(kw, f"decomp_{tag}.png"), str(block), rl, cl)


@cli.command("count")
@click.argument("p", type=int)
@click.argument("w", type=int)
@click.option("--method", type=click.Choice(METHODS), default=None,
              help="Invariant used to separate classes (default: M0 for p=2, decomp where supported, else M).")
@_common
def count_cmd(p, w, method, **kw):
    """Bounds on the number of Morita classes of p-blocks of weight W."""
    config = _config(kw, method)
    report = count_morita(p, w, method, config)
    _emit(render(report, config), report_filename(report, config.fmt), kw)
    if kw["figures"]:
        from .plotting import plot_report

        plot_report(report, _figure(kw, f"morita_p{p}_w{w}_{report.method}.png"))


def _parse_primes(text: str) -> list:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad prime list {text!r}") from exc


@cli.command("conjectures")
@click.option("--p-max", type=int, default=3, show_default=True)
@click.option("--w-max", type=int, default=4, show_default=True)
@click.option("--w-min", type=int, default=1, show_default=True)
@click.option("--primes", default=None, help="Explicit primes, e.g. '2,3,5' (overrides --p-max).")
@click.option("--method", type=click.Choice(METHODS), default=None)
@_common
def conjectures_cmd(p_max, w_max, w_min, primes, method, **kw):
    """Compare computed counts with the conjectured values; exit 2 on any FAIL."""
    config = _config(kw, method)
    ps = _parse_primes(primes) if primes else [p for p in (2, 3, 5, 7, 11, 13) if p <= p_max]
    rows = conjecture_suite(ps, w_max, config, w_min=w_min)
    text = suite_json(rows) if kw["fmt"] == "json" else suite_table(rows)
    _emit(text, f"conjectures_p{'-'.join(map(str, ps))}_w{w_min}-{w_max}.{_ext(kw)}", kw)
    if kw["figures"]:
        from .plotting import plot_suite

        plot_suite(rows, _figure(kw, "conjectures.png"))
    failed = [r for r in rows if r.status != "PASS"]
    if failed:
        raise InternalConsistencyError(
            "conjecture check failed at " + ", ".join(f"(p={r.p}, w={r.w})" for r in failed))


@cli.command("eigencheck")
@click.argument("w", type=int)
@click.option("--core", default="()", show_default=True, help="2-core of the block.")
@_common
def eigencheck_cmd(w, core, **kw):
    """Integer eigenvalues of the scaled height-0 matrix of a 2-block of weight W."""
    block = Block(2, w, _core(core))
    rep = eigen_m0(block)
    if kw["fmt"] == "json":
        text = json.dumps({"w": w, "core": format_partition(block.core), "scale": rep.scale,
                           "eigenvalues": list(rep.roots), "residual": list(rep.residual)}, indent=2) + "\n"
    else:
        lines = [f"# {block}, scale {rep.scale}", "eigenvalue\tfactorisation"]
        lines += [f"{r}\t{_factor(r)}" for r in rep.roots]
        if rep.residual:
            lines.append("# residual factor " + " ".join(map(str, rep.residual)))
        text = "\n".join(lines) + "\n"
    _emit(text, f"eigen_w{w}_{'-'.join(map(str, block.core)) or 'empty'}.{_ext(kw)}", kw)
    if kw["figures"]:
        from .plotting import plot_eigenvalues

        plot_eigenvalues(rep, _figure(kw, f"eigen_w{w}.png"), str(block))


def _factor(n: int) -> str:
    import sympy

    if n == 0:
        return "0"
    return "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(sympy.factorint(abs(n)).items())) or "1"


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="symblocks", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.UsageError, click.Abort) as exc:
        click.echo(f"usage error: {exc}", err=True)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        click.echo(f"internal consistency failure: {exc}", err=True)
        return EXIT_INTERNAL
    except (SymBlocksError, ValueError) as exc:
        click.echo(f"usage error: {exc}", err=True)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
