import logging

import click

from scavenger.commands.options import (
    NUMERIC_ARGS,
    POINT,
    RATIONAL,
    make_config,
    square_free_t,
    workers_option,
)
from scavenger.core.cycles import find_5cycle, find_symmetric_5cycle, gen_vectors, scan_d
from scavenger.core.geom import (
    circle_param,
    equidistant_circle,
    farey_parameters,
    rational_point_on_circle,
)
from scavenger.core.graph import chromatic_number, forced_relations, is_triangle_free
from scavenger.core.numtheory import (
    TernaryForm,
    eq_pair_feasible,
    in_T,
    legendre_solution,
    legendre_witnesses,
    normalize_form,
    t_values,
)
from scavenger.core.qcore import dist_sq, reduce_distance
from scavenger.fileio import parse_edge_list
from scavenger.workers import parallel_map

# Initialize logger
logger = logging.getLogger("scavenger")

_WITNESS_NAMES = ("-ab", "-ac", "-bc")


def _cycle_line(task) -> tuple[str, bool]:
    t, denominators, height = task
    if not in_T(t):
        return f"t={t}: not in T", False
    cycle = find_5cycle(t, gen_vectors(t, denominators, height))
    if cycle is None:
        return f"t={t}: none", False
    return f"t={t}: " + " | ".join(str(p) for p in cycle), True


def _scan_lines(task) -> tuple[list[str], bool]:
    t, bound, height = task
    d = scan_d(t, bound, height)
    if d is None:
        return [f"t={t}: no admissible d <= {bound}"], False
    verdict = eq_pair_feasible(t, d)
    lines = [f"t={t}: d={d}"]
    for label, form in zip(("base", "legs"), verdict.details):
        witnesses = ", ".join(
            f"{name} = {value} is a QR of {mod} (root {root})"
            for name, (value, mod, root) in zip(_WITNESS_NAMES, legendre_witnesses(form))
        )
        lines.append(f"  {label}: {form}: {witnesses}")
    return lines, True


def legendre_report(a: int, b: int, c: int) -> str:
    """One line: a solution, or the first failing condition."""
    form = TernaryForm(a, b, c)
    normalized = normalize_form(form)
    prefix = "" if normalized.form == form else f"normalized to {normalized.form}; "
    if not normalized.mixed_signs:
        return f"unsolvable: {prefix}coefficients all share one sign"
    for name, (value, mod, root) in zip(_WITNESS_NAMES, legendre_witnesses(form)):
        if root is None:
            return f"unsolvable: {prefix}{name} = {value} not a QR of {mod}"
    x, y, z = legendre_solution(form)
    return f"solvable: {prefix}(x, y, z) = ({x}, {y}, {z})"


def tool_commands(cli):
    """
    Number theory and geometry tools
    """
    @cli.command("find-cycle", help="Search 5-cycles of G(Q^3, sqrt t) by meet in the middle.")
    @click.argument("ts", nargs=-1, required=True, type=RATIONAL)
    @click.option("--denominators", default="1,3", show_default=True, help="Comma-separated denominators.")
    @click.option("--pool-height", type=click.IntRange(min=1), help="Numerator bound of the vector pool.")
    @workers_option
    def find_cycle(ts, denominators, pool_height, workers):
        try:
            dens = frozenset(int(k) for k in denominators.split(","))
        except ValueError:
            raise click.BadParameter(f"bad denominator list {denominators!r}")
        config = make_config(pool_height=pool_height, workers=workers)
        tasks = [(square_free_t(t), dens, config.pool_height) for t in ts]
        results = parallel_map(_cycle_line, tasks, config.workers)
        for line, _ in results:
            click.echo(line)
        return 0 if all(ok for _, ok in results) else 1

    @cli.command("find-symmetric-cycle", help="Search a symmetric 5-cycle of G(Q^3, sqrt t).")
    @click.argument("t", type=RATIONAL)
    @click.option("--d-bound", type=click.IntRange(min=1), help="Largest integer d tried.")
    @click.option("--height", type=click.IntRange(min=1), help="Farey height of the circle parameters.")
    @click.option("--pool-height", type=click.IntRange(min=1), help="Numerator bound of the vector pool.")
    def find_symmetric_cycle(t, d_bound, height, pool_height):
        t = square_free_t(t)
        config = make_config(d_bound=d_bound, height=height, pool_height=pool_height)
        sym = find_symmetric_5cycle(t, gen_vectors(t, {1, 3}, config.pool_height), config.d_bound, config.height)
        if sym is None:
            click.echo(f"t={t}: none with d <= {config.d_bound}")
            return 1
        click.echo(f"t={t}: d={sym.d}")
        for i, p in enumerate(sym.points):
            click.echo(f"  x{i} = {p}")
        click.echo(f"  plane: {sym.plane}")
        return 0

    @cli.command("scan-d", help="Least d making both isosceles triangles of a symmetric 5-cycle rational.")
    @click.argument("ts", nargs=-1, required=True, type=RATIONAL)
    @click.option("--bound", type=click.IntRange(min=1), help="Largest integer d tried.")
    @click.option("--rational-height", type=click.IntRange(min=2), default=None,
                  help="Also try d = p/q with q up to this after the integers.")
    @workers_option
    def scan_d_command(ts, bound, rational_height, workers):
        config = make_config(d_bound=bound, workers=workers)
        tasks = [(square_free_t(t), config.d_bound, rational_height) for t in ts]
        results = parallel_map(_scan_lines, tasks, config.workers)
        for lines, _ in results:
            for line in lines:
                click.echo(line)
        return 0 if all(ok for _, ok in results) else 1

    @cli.command("solve-legendre", context_settings=NUMERIC_ARGS,
                 help="Decide and solve a x^2 + b y^2 + c z^2 = 0.")
    @click.argument("a", type=int)
    @click.argument("b", type=int)
    @click.argument("c", type=int)
    def solve_legendre(a, b, c):
        if 0 in (a, b, c):
            raise click.BadParameter("coefficients must be non-zero")
        line = legendre_report(a, b, c)
        click.echo(line)
        return 0 if line.startswith("solvable") else 1

    @cli.command("param-circle", context_settings=NUMERIC_ARGS,
                 help="Rational points at sqrt t from two points, by conic parameterization.")
    @click.argument("p", type=POINT)
    @click.argument("q", type=POINT)
    @click.argument("t", type=RATIONAL)
    @click.option("--known", type=POINT, help="A known rational point of the circle.")
    @click.option("-s", "--parameter", "params", multiple=True, type=RATIONAL,
                  help="Parameter values (repeatable); Farey order by default.")
    @click.option("--height", type=click.IntRange(min=1), default=3, show_default=True,
                  help="Farey height when no parameters are given.")
    def param_circle(p, q, t, known, params, height):
        circle = equidistant_circle(p, q, t)
        click.echo(f"circle: center {circle.center}, radius^2 {circle.radius_sq}, plane {circle.plane}")
        if circle.degenerate:
            click.echo(f"degenerate: the only point is {circle.center}")
            return 0
        if known is None:
            known = rational_point_on_circle(circle)
        param = circle_param(circle, known)
        cp = param.conic
        click.echo(f"conic: {cp.a} u^2 + {cp.b} uv + {cp.c} v^2 + {cp.d} u + {cp.e} v + {cp.f} = 0, base {known}")
        for s in params or farey_parameters(height):
            point = param.point(s)
            click.echo(f"s={s}: {point}  ({dist_sq(point, p)}, {dist_sq(point, q)})")
        return 0

    @cli.command(help="Chromatic number of an abstract graph read from an edge list.")
    @click.argument("path", type=click.Path(exists=True, dir_okay=False))
    @click.option("--order", type=click.IntRange(min=1), help="Vertex count, for isolated trailing vertices.")
    @click.option("--forced", "forced_k", type=click.IntRange(min=2),
                  help="Also list the pairs colored alike or differently in every k-coloring.")
    def color(path, order, forced_k):
        graph = parse_edge_list(path, order)
        shape = "triangle-free" if is_triangle_free(graph) else "with triangles"
        click.echo(f"{graph.order} vertices, {len(graph.edges)} edges, {shape}, chi = {chromatic_number(graph)}")
        if forced_k:
            same, different = forced_relations(graph, forced_k)
            for name, pairs in (("same", same), ("different", different)):
                for u, v in sorted(pairs):
                    click.echo(f"{name}: {graph.labels[u]} {graph.labels[v]}")
        return 0

    @cli.command(help="Write sqrt(q) as scale * sqrt(r) with r square-free.")
    @click.argument("q", type=RATIONAL)
    def reduce(q):
        if q <= 0:
            raise click.BadParameter(f"squared distance must be positive, got {q}")
        r, scale = reduce_distance(q)
        member = "in T" if in_T(r) else "not in T"
        click.echo(f"sqrt({q}) = {scale} * sqrt({r}); {r} is {member}")
        return 0

    @cli.command("in-t", help="Membership in T: square-free, even, with an odd prime factor = 2 (mod 3).")
    @click.argument("ts", nargs=-1, type=int)
    @click.option("--below", type=click.IntRange(min=1), help="List every member of T below this.")
    def in_t(ts, below):
        if below:
            click.echo(" ".join(str(t) for t in t_values(below)))
        for t in ts:
            click.echo(f"{t}: {'in T' if in_T(t) else 'not in T'}")
        return 0 if all(in_T(t) for t in ts) else 1
