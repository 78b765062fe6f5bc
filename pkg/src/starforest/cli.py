"""Command-line front end.

Exit codes: 0 success, 1 witness found or disagreement, 2 inconclusive
(resource cap), 64 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from itertools import product

import click

from . import constructions as C
from . import formulas as F
from .detect import Budget, Pattern, SearchLimitExceeded, find_pattern, node_cap_from_env
from .hypercore import (
    ColoredHypergraph,
    Hypergraph,
    HypergraphError,
    is_linear,
    parse_hypergraph,
    write_hypergraph,
)
from .oracle import (
    ForbiddenFamily,
    count_cliques,
    exact_generalized_turan,
    exact_turan,
)

EXIT_OK, EXIT_FOUND, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64

THEOREMS = ("thm1", "thm2", "thm3", "matching", "gmp", "large_r", "small_r", "cor47")
ROW_FIELDS = ("id", "n", "k", "l", "r", "construction", "formula", "kind", "oracle", "agree", "status")
GRID_KEYS = ("n", "k", "l", "r")


class _Cli(click.Group):
    """Group that maps usage and parameter errors to exit code 64."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
            code = rv if isinstance(rv, int) else EXIT_OK
        except click.UsageError as e:
            e.show()
            code = EXIT_USAGE
        except (F.RegimeError, HypergraphError, ValueError) as e:
            click.echo(f"error: {e}", err=True)
            code = EXIT_USAGE
        except click.Abort:
            code = EXIT_FOUND
        if standalone_mode:
            sys.exit(code)
        return code


def parse_range(text: str) -> list[int]:
    """``"7"``, ``"3..6"`` or ``"2,4,8"`` to a list of integers."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise click.BadParameter(f"empty range {text!r}")
    return out


def parse_grid(text: str) -> dict[str, list[int]]:
    grid = {}
    for item in text.replace(";", " ").split():
        key, _, val = item.partition("=")
        if key not in GRID_KEYS or not val:
            raise click.BadParameter(f"bad grid item {item!r}; expected n=..,k=..,l=..,r=..")
        grid[key] = parse_range(val)
    return grid


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_csv(rows, fields) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# theorem verification rows


def agreement(kind: str, construction, formula, oracle) -> bool:
    """Recompute a row's agreement flag from its cells."""
    cons, val = Fraction(construction), Fraction(formula)
    orc = None if oracle in ("-", None) else Fraction(oracle)
    if kind == F.UPPER:
        return cons <= val and (orc is None or orc <= val)
    return cons == val and (orc is None or orc == val)


def _free(h: Hypergraph, pattern: Pattern) -> bool | None:
    try:
        return find_pattern(h, pattern, budget=Budget(node_cap_from_env())) is None
    except SearchLimitExceeded:
        return None


def _oracle(n, r, family, seed, workers):
    rep = exact_turan(n, r, family, workers=workers, seed=seed)
    return rep.optimum, rep.status


def theorem_row(tid: str, n: int, k: int, l: int, r: int, with_oracle: bool = False,
                check_free: bool = True, workers: int = 1) -> dict:
    row = dict(id=tid, n=n, k=k, l=l, r=r, construction="-", formula="-", kind="-",
               oracle="-", agree="n/a", status="ok")
    try:
        built, bound, pattern, family, linear = _theorem_parts(tid, n, k, l, r, workers)
    except (F.RegimeError, C.ConstructionError) as e:
        row["status"] = f"regime-violation: {e}"
        return row
    except SearchLimitExceeded:
        row["status"] = "inconclusive"
        return row
    count, h = built
    row.update(construction=count, formula=str(bound.value), kind=bound.kind)
    notes = []
    if check_free and h is not None:
        if linear and not is_linear(h):
            notes.append("not-linear")
        free = _free(h, pattern)
        if free is None:
            notes.append("inconclusive")
        elif not free:
            notes.append("not-free")
    if with_oracle:
        if tid == "cor47":
            rep = exact_generalized_turan(n, r, k, l, workers=workers)
            value, status = rep.optimum, rep.status
        else:
            seed = h if h is not None and "not-free" not in notes and "not-linear" not in notes else None
            value, status = _oracle(n, h.r if h is not None else r, family, seed, workers)
        row["oracle"] = value
        if status != "exact":
            notes.append("inconclusive")
    agree = agreement(bound.kind, row["construction"], row["formula"], row["oracle"])
    row["agree"] = "yes" if agree else "no"
    if not agree:
        notes.append("disagreement")
    if notes:
        row["status"] = ";".join(notes)
    return row


def _theorem_parts(tid, n, k, l, r, workers):
    """Returns ``((count, hypergraph), BoundValue, pattern, family, linear_host)``."""
    if tid == "thm1":
        lc = C.llp_extremal_graph(n, k, l)
        fam = ForbiddenFamily("graph-star-forest", k, l)
        return (len(lc.hypergraph.edges), lc.hypergraph), F.f_star_forest_graph(n, k, l), \
            fam.as_pattern, fam, False
    if tid == "thm2":
        m = n - k + 1
        if m < r:
            raise F.RegimeError("needs n - k + 1 >= r")
        rep = exact_turan(m, r, ForbiddenFamily("expansion-star", 1, l), workers=workers)
        if rep.status != "exact":
            raise SearchLimitExceeded(rep.nodes)
        base = parse_hypergraph(rep.extremal[0])
        lc = C.apex_extremal_expansion(n, k, r, base)
        fam = ForbiddenFamily("expansion-star-forest", k, l)
        return (len(lc.hypergraph.edges), lc.hypergraph), F.f_expansion_forest(n, k, l, r, rep.optimum), \
            fam.as_pattern, fam, False
    if tid in ("thm3", "matching"):
        ll = 1 if tid == "matching" else l
        lc = C.linear_star_forest_extremal(n, k, ll, r)
        fam = ForbiddenFamily("expansion-star-forest", k, ll, "linear")
        bound = F.f_linear_matching_leading(n, k, r) if tid == "matching" else F.f_linear_upper(n, k, ll, r)
        return (len(lc.hypergraph.edges), lc.hypergraph), bound, fam.as_pattern, fam, True
    if tid == "gmp":
        lc = C.berge_star_extremal(n, l, r)
        fam = ForbiddenFamily("berge-star", 1, l)
        return (len(lc.hypergraph.edges), lc.hypergraph), F.f_berge_star(n, l, r), fam.as_pattern, fam, False
    if tid == "large_r":
        bound = F.f_berge_forest_large_r(n, k, l, r)
        lc = C.berge_forest_large_r(n, k, l, r)
        fam = ForbiddenFamily("berge-star-forest", k, l)
        return (len(lc.hypergraph.edges), lc.hypergraph), bound, fam.as_pattern, fam, False
    if tid == "small_r":
        bound = F.f_berge_forest_small_r(n, k, l, r)
        lc = C.berge_forest_small_r(n, k, l, r)
        fam = ForbiddenFamily("berge-star-forest", k, l)
        return (len(lc.hypergraph.edges), lc.hypergraph), bound, fam.as_pattern, fam, False
    if tid == "cor47":
        bound = F.f_generalized_turan_cliques(n, k, l, r)
        g = C.clique_join_graph(n, k, l)
        fam = ForbiddenFamily("graph-star-forest", k, l)
        # the clique host graph is what must avoid k.S_l
        return (count_cliques(g, r), g), bound, fam.as_pattern, fam, False
    raise click.BadParameter(f"unknown theorem id {tid!r}")


def theorem_rows(tid: str, grid: dict[str, list[int]], **kw) -> list[dict]:
    keys = [grid[key] for key in GRID_KEYS]
    rows = [theorem_row(tid, *pt, **kw) for pt in product(*keys)]
    rows.sort(key=lambda row: tuple(row[key] for key in GRID_KEYS))
    return rows


def rows_exit_code(rows) -> int:
    statuses = ";".join(row["status"] for row in rows)
    if any(row["agree"] == "no" for row in rows) or "not-free" in statuses or "not-linear" in statuses:
        return EXIT_FOUND
    if "inconclusive" in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# commands


@click.group(cls=_Cli)
def cli():
    """Star-forest Turán workbench."""


_NAMED = {
    "complete": ("m", "r"),
    "circle_regular": ("n", "r", "d"),
    "lattice": ("r", "d"),
    "linear_star_forest": ("n", "k", "l", "r"),
    "berge_star": ("n", "l", "r"),
    "berge_forest_large_r": ("n", "k", "l", "r"),
    "berge_forest_small_r": ("n", "k", "l", "r"),
    "llp_graph": ("n", "k", "l"),
    "apex_expansion": ("n", "k", "r"),
}


@cli.command()
@click.option("--name", required=True, type=click.Choice(sorted(_NAMED)))
@click.option("--n", type=int)
@click.option("--m", type=int)
@click.option("--k", type=int)
@click.option("--l", "l_", type=int)
@click.option("--r", type=int)
@click.option("--d", type=int)
@click.option("--out", type=click.Path(dir_okay=False))
@click.option("--labels", "labels_path", type=click.Path(dir_okay=False),
              help="Side-car label file (default: OUT.labels when --out is given).")
def construct(name, n, m, k, l_, r, d, out, labels_path):
    """Build a named construction and write it in hypergraph text format."""
    given = {"n": n, "m": m, "k": k, "l": l_, "r": r, "d": d}
    missing = [p for p in _NAMED[name] if given[p] is None]
    if missing:
        raise click.UsageError(f"{name} needs --{' --'.join(missing)}")
    args = [given[p] for p in _NAMED[name]]
    if name == "apex_expansion":
        built = C.apex_extremal_expansion(n, k, r, Hypergraph(n - k + 1, r))
    else:
        built = C.BUILDERS[name](*args)
    labels = None
    if isinstance(built, C.LabeledConstruction):
        h, labels = built.hypergraph, built.label_text()
    elif isinstance(built, ColoredHypergraph):
        h = built.base
    else:
        h = built
    _emit(write_hypergraph(h), out)
    if labels is not None and (labels_path or out):
        with open(labels_path or out + ".labels", "w", newline="\n") as fh:
            fh.write(labels)
    return EXIT_OK


@cli.command()
@click.option("--pattern", required=True,
              type=click.Choice(["berge-star", "berge-star-forest", "graph-star-forest",
                                 "expansion-star", "expansion-star-forest", "matching"]))
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--l", "l_", type=int, default=1, show_default=True)
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False),
              help="Hypergraph file; standard input when omitted.")
@click.option("--witness", "witness_path", type=click.Path(dir_okay=False),
              help="Write the witness JSON here instead of standard output.")
@click.option("--node-cap", type=int, help="Backtracking node cap (default TURAN_NODE_CAP or 10^7).")
def check(pattern, k, l_, in_path, witness_path, node_cap):
    """Search a hypergraph for a forbidden star configuration."""
    text = open(in_path).read() if in_path else sys.stdin.read()
    h = parse_hypergraph(text)
    if not isinstance(h, Hypergraph):
        raise click.UsageError("input must be a uniform hypergraph")
    pat = Pattern.named(pattern, k, l_)
    try:
        hit = find_pattern(h, pat, budget=Budget(node_cap))
    except SearchLimitExceeded as e:
        click.echo(f"inconclusive after {e.nodes} nodes")
        return EXIT_INCONCLUSIVE
    if hit is None:
        click.echo("none exhaustive")
        return EXIT_OK
    if pat.kind == "berge":
        body = {"stars": [w.to_json() for w in hit]}
    else:
        body = hit.to_json()
    body.update(pattern=pattern, k=pat.k, l=pat.l)
    _emit(_json(body), witness_path)
    return EXIT_FOUND


@cli.command()
@click.option("--name", required=True, type=click.Choice(sorted(F.FORMULAS)))
@click.option("--n", type=int)
@click.option("--k", type=int)
@click.option("--l", "l_", type=int)
@click.option("--r", type=int)
@click.option("--ex-star", type=int, help="Certified ex_r(n-k+1, S_l^+), for expansion_forest.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
def formula(name, n, k, l_, r, ex_star, fmt):
    """Evaluate a closed-form value in exact arithmetic."""
    bv = F.evaluate(name, n=n, k=k, l=l_, r=r, ex_star=ex_star)
    if fmt == "text":
        click.echo(str(bv.value))
    else:
        params = {p: v for p, v in dict(n=n, k=k, l=l_, r=r, ex_star=ex_star).items() if v is not None}
        click.echo(_json(dict(bv.to_json(), name=name, params=params)), nl=False)
    return EXIT_OK


@cli.command()
@click.option("--name", required=True, type=click.Choice(sorted(F.FORMULAS)))
@click.option("--n", "n_", default="1", help="Range such as 5..20 or 4,8,12.")
@click.option("--k", "k_", default="1")
@click.option("--l", "l_", default="1")
@click.option("--r", "r_", default="2")
@click.option("--out", type=click.Path(dir_okay=False))
def table(name, n_, k_, l_, r_, out):
    """Sweep a formula over a parameter grid and write CSV."""
    rows = []
    for n, k, l, r in product(parse_range(n_), parse_range(k_), parse_range(l_), parse_range(r_)):
        row = dict(name=name, n=n, k=k, l=l, r=r, value="-", kind="-", regime="-", status="ok")
        try:
            bv = F.evaluate(name, n=n, k=k, l=l, r=r)
            row.update(value=str(bv.value), kind=bv.kind, regime=bv.regime)
        except F.RegimeError as e:
            row.update(status="regime-violation", regime=str(e))
        rows.append(row)
    _emit(_write_csv(rows, ("name", "n", "k", "l", "r", "value", "kind", "regime", "status")), out)
    return EXIT_OK


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--r", type=int, required=True)
@click.option("--pattern", required=True,
              type=click.Choice(["berge-star", "berge-star-forest", "graph-star-forest",
                                 "expansion-star", "expansion-star-forest", "matching"]))
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--l", "l_", type=int, default=1, show_default=True)
@click.option("--host", type=click.Choice(["all", "linear"]), default="all", show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--node-cap", type=int)
@click.option("--out", type=click.Path(dir_okay=False))
def search(n, r, pattern, k, l_, host, workers, node_cap, out):
    """Exact Turán number by branch-and-bound; writes a JSON report."""
    fam = ForbiddenFamily(pattern, k, l_, host)
    rep = exact_turan(n, r, fam, workers=workers, node_cap=node_cap)
    _emit(_json(rep.to_json()), out)
    return EXIT_OK if rep.status == "exact" else EXIT_INCONCLUSIVE


@cli.command("verify-theorem")
@click.option("--id", "tid", required=True, type=click.Choice(THEOREMS))
@click.option("--grid", help='Grid such as "n=7..10 k=2 l=2 r=3"; overrides the single flags.')
@click.option("--n", "n_")
@click.option("--k", "k_", default="1")
@click.option("--l", "l_", default="1")
@click.option("--r", "r_", default="2")
@click.option("--with-oracle", type=click.BOOL, default=False, show_default=True)
@click.option("--check-free", type=click.BOOL, default=True, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def verify_theorem(tid, grid, n_, k_, l_, r_, with_oracle, check_free, workers, out):
    """Build, check, evaluate and optionally run the oracle over a grid; CSV rows."""
    if grid:
        pts = parse_grid(grid)
    elif n_ is None:
        raise click.UsageError("give --n or --grid")
    else:
        pts = {"n": parse_range(n_), "k": parse_range(k_), "l": parse_range(l_), "r": parse_range(r_)}
    for key in GRID_KEYS:
        pts.setdefault(key, {"k": [1], "l": [1], "r": [2]}.get(key, [1]))
    rows = theorem_rows(tid, pts, with_oracle=with_oracle, check_free=check_free, workers=workers)
    _emit(_write_csv(rows, ROW_FIELDS), out)
    return rows_exit_code(rows)


def main():
    cli()


if __name__ == "__main__":
    main()
