"""Command line front end.

Every command is a thin adapter over the library: parse a configuration
(file plus flag overrides), call one library entry point, render the result.
JSON is the canonical machine format (compact separators, deterministic
order); tables are human renderings of the same data.  Exit codes: 0 ok,
2 bad configuration or arguments, 3 enumeration budget exceeded, 1 failed
certification.
"""

from __future__ import annotations

import json
import sys

import click

from . import certify as certify_mod
from .geometry import Component, ConfigError, GeometryConfig, Space, load_config
from .nested import (
    BudgetError,
    count_divisors,
    divisors_for,
    enumerate_nested_sets,
    f_vector,
    make_nested_set,
    maximal_nested_sets,
    parse_divisor,
)
from .orders import SCHEMES, BlowupSequence, generate_order, swap_rewrite, two_block_order, validate_inclusion_order
from .symmetry import orbits
from .trees import fiber_tree, is_stable, to_dot, tree_to_nested

ORDER_SOURCES = SCHEMES + ("two_block",)


def _dump(data) -> str:
    return json.dumps(data, separators=(",", ":"))


def _echo_json(data):
    click.echo(_dump(data))


def _fail(code: int, message: str):
    click.echo(_dump({"error": message}), err=True)
    sys.exit(code)


config_options = [
    click.option("--config", "config_path", type=click.Path(), default=None, help="Configuration JSON file."),
    click.option("--n", "n_points", type=int, default=None, help="Number of labeled points."),
    click.option("--dim-x", type=int, default=None, help="Dimension of the ambient variety."),
    click.option("--components", "n_point_components", type=int, default=None,
                 help="Shorthand: this many point components c1, c2, ..."),
    click.option("--component", "component_specs", multiple=True,
                 help="One component as name:dim; repeatable."),
    click.option("--space", type=click.Choice([s.value for s in Space]), default=None),
]


def with_config(fn):
    for opt in reversed(config_options):
        fn = opt(fn)
    return fn


def build_config(config_path, n_points, dim_x, n_point_components, component_specs, space) -> GeometryConfig:
    try:
        if config_path:
            base = load_config(config_path)
            n = n_points if n_points is not None else base.n
            d = dim_x if dim_x is not None else base.dim_x
            comps = base.components
            sp = Space(space) if space else base.space
        else:
            if n_points is None:
                raise ConfigError("--n is required without --config")
            n = n_points
            d = dim_x if dim_x is not None else 1
            comps = ()
            sp = Space(space) if space else Space.XD_BRACKET
        if component_specs:
            parsed = []
            for spec in component_specs:
                name, sep, dim_text = spec.partition(":")
                if not sep:
                    raise ConfigError("--component expects name:dim, got %r" % spec)
                parsed.append(Component(name, int(dim_text)))
            comps = tuple(parsed)
        elif n_point_components is not None:
            comps = tuple(Component("c%d" % (i + 1), 0) for i in range(n_point_components))
        return GeometryConfig(n, d, comps, sp)
    except (ConfigError, ValueError, OSError) as exc:
        _fail(2, str(exc))


@click.group()
def main():
    """Combinatorics of wonderful compactifications of configuration spaces
    relative to a subvariety."""


@main.command()
@with_config
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def divisors(fmt, **cfg):
    """List the boundary divisors."""
    g = build_config(**cfg)
    ds = divisors_for(g)
    if fmt == "json":
        _echo_json({"count": count_divisors(g), "divisors": [str(d) for d in ds]})
    else:
        for d in ds:
            click.echo(str(d))
        click.echo("total %d" % count_divisors(g))


@main.command()
@with_config
@click.option("--max-size", type=int, default=None)
@click.option("--fvector", "want_fvector", is_flag=True, help="Print only the face counts.")
@click.option("--workers", type=int, default=1)
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table")
def nested(max_size, want_fvector, workers, fmt, **cfg):
    """Enumerate nested sets (the boundary stratification poset)."""
    g = build_config(**cfg)
    try:
        if want_fvector:
            fv = f_vector(g, workers=workers)
            _render_fvector(fv, fmt)
            return
        sets = enumerate_nested_sets(g, max_size=max_size, workers=workers)
    except BudgetError as exc:
        _fail(3, str(exc))
    if fmt == "json":
        _echo_json({"count": len(sets), "nested_sets": [list(ns.labels()) for ns in sets]})
    else:
        for ns in sets:
            click.echo("{" + ",".join(ns.labels()) + "}")
        click.echo("total %d" % len(sets))


def _render_fvector(fv, fmt):
    if fmt == "json":
        _echo_json({"fvector": list(fv)})
    elif fmt == "csv":
        click.echo(",".join("f%d" % i for i in range(len(fv))))
        click.echo(",".join(str(v) for v in fv))
    else:
        click.echo(",".join(str(v) for v in fv))


@main.command()
@with_config
@click.option("--workers", type=int, default=1)
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table")
def fvector(workers, fmt, **cfg):
    """Face counts of the nested-set complex."""
    g = build_config(**cfg)
    try:
        fv = f_vector(g, workers=workers)
    except BudgetError as exc:
        _fail(3, str(exc))
    _render_fvector(fv, fmt)


@main.command()
@with_config
@click.option("--workers", type=int, default=1)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def facets(workers, fmt, **cfg):
    """Maximal nested sets (deepest strata)."""
    g = build_config(**cfg)
    try:
        sets = maximal_nested_sets(g, workers=workers)
    except BudgetError as exc:
        _fail(3, str(exc))
    if fmt == "json":
        _echo_json({"count": len(sets), "facets": [list(ns.labels()) for ns in sets]})
    else:
        for ns in sets:
            click.echo("{" + ",".join(ns.labels()) + "}")
        click.echo("total %d" % len(sets))


@main.command()
@with_config
@click.option("--scheme", type=click.Choice(list(SCHEMES)), required=True)
@click.option("--check/--no-check", default=False, help="Also validate the generated order.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
def order(scheme, check, fmt, **cfg):
    """Generate a blowup order."""
    g = build_config(**cfg)
    try:
        seq = generate_order(g, scheme)
    except ValueError as exc:
        _fail(2, str(exc))
    if check and scheme == "inclusion" and not validate_inclusion_order(seq).ok:
        _fail(1, "generated inclusion order failed validation")
    if fmt == "json":
        _echo_json(seq.labels())
    else:
        for label in seq.labels():
            click.echo(label)


def _sequence_from(g, text) -> BlowupSequence:
    if text in SCHEMES:
        return generate_order(g, text)
    if text == "two_block":
        return two_block_order(g)
    from .loci import parse_center

    labels = _parse_label_array(text)
    return BlowupSequence(g, tuple(parse_center(t, g.n) for t in labels))


def _parse_label_array(text: str) -> list[str]:
    """A JSON array of labels, or the relaxed unquoted form [D:c1:{1},...]."""
    try:
        data = json.loads(text)
        if isinstance(data, list) and all(isinstance(x, str) for x in data):
            return data
    except json.JSONDecodeError:
        pass
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError("expected a JSON array of labels, got %r" % text)
    body = t[1:-1].strip()
    if not body:
        return []
    out = []
    depth = 0
    token = ""
    for ch in body:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(token.strip().strip('"'))
            token = ""
        else:
            token += ch
    out.append(token.strip().strip('"'))
    return out


@main.command()
@with_config
@click.option("--source", required=True, help="Scheme name (%s) or JSON array of labels." % "|".join(ORDER_SOURCES))
@click.option("--target", required=True, help="Scheme name or JSON array of labels.")
def rewrite(source, target, **cfg):
    """Rewrite one blowup order into another by certified adjacent swaps."""
    g = build_config(**cfg)
    try:
        seq = _sequence_from(g, source)
        tgt = _sequence_from(g, target)
        result = swap_rewrite(seq, tgt)
    except ValueError as exc:
        _fail(2, str(exc))
    payload = {
        "ok": result.ok,
        "swaps": [
            {"position": s.position, "left": s.left, "right": s.right, "certificate": s.certificate}
            for s in result.swaps
        ],
    }
    if not result.ok:
        payload["blocking"] = list(result.blocking)
    _echo_json(payload)
    if not result.ok:
        sys.exit(1)


@main.command()
@with_config
@click.option("--nested", "nested_literal", required=True, help="Nested set as an array of divisor labels.")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="json")
def fiber(nested_literal, fmt, **cfg):
    """Dual graph of the universal-family fiber over a boundary stratum."""
    g = build_config(**cfg)
    try:
        labels = _parse_label_array(nested_literal)
        ns = make_nested_set(g, [parse_divisor(t, g.n) for t in labels])
        tree = fiber_tree(g, ns)
    except ValueError as exc:
        _fail(2, str(exc))
    if fmt == "dot":
        click.echo(to_dot(tree), nl=False)
    else:
        _echo_json(
            {
                "vertices": [
                    {"id": v.vid, "label": v.label(), "marks": list(tree.marks_on(v.vid))}
                    for v in tree.vertices
                ],
                "edges": [[tree.parents[v.vid], v.vid] for v in tree.vertices[1:]],
                "stable": is_stable(tree).ok,
                "nested": list(tree_to_nested(tree).labels()),
            }
        )


@main.command("orbits")
@with_config
@click.option("--kind", type=click.Choice(["divisors", "nested"]), default="divisors")
@click.option("--size", type=int, default=None, help="Cardinality for kind=nested.")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def orbits_cmd(kind, size, fmt, **cfg):
    """Orbits of the symmetric-group action."""
    g = build_config(**cfg)
    try:
        out = orbits(g, kind, size)
    except (ValueError, BudgetError) as exc:
        _fail(2 if isinstance(exc, ValueError) else 3, str(exc))
    rows = []
    for orbit in out:
        rep = orbit.representative
        rep_text = str(rep) if not hasattr(rep, "labels") else "{" + ",".join(rep.labels()) + "}"
        rows.append({"representative": rep_text, "size": orbit.size, "stabilizer_order": orbit.stabilizer_order})
    if fmt == "json":
        _echo_json(rows)
    else:
        for row in rows:
            click.echo("%s size=%d stabilizer=%d" % (row["representative"], row["size"], row["stabilizer_order"]))
        click.echo("orbits %d" % len(rows))


@main.command("certify")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def certify_cmd(fmt):
    """Run the cross-validation suite and report each check."""
    results = certify_mod.run_all()
    if fmt == "json":
        _echo_json([{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results])
    else:
        for r in results:
            click.echo("%s %s: %s" % ("ok  " if r.ok else "FAIL", r.name, r.detail))
    if not all(r.ok for r in results):
        sys.exit(1)


if __name__ == "__main__":
    main()
