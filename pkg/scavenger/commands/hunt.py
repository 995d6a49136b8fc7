import logging

import click

from scavenger.commands.options import (
    RATIONAL,
    echo_lines,
    make_config,
    square_free_t,
    workers_option,
)
from scavenger.core.certificate import Certificate, CertificateKind, dumps, verify_certificate
from scavenger.core.cycles import find_5cycle, gen_vectors, validate_5cycle
from scavenger.core.graph import critical_reduce
from scavenger.core.hunts import CandidateSpec, greedy_hunt, grotzsch_type_hunt, h_device_hunt
from scavenger.core.geom import farey_parameters
from scavenger.errors import ConsistencyError, SearchExhaustedError
from scavenger.fileio import parse_vertex_file, write_certificate

# Initialize logger
logger = logging.getLogger("scavenger")


def _load_cycle(path, t, pool_height, workers=1):
    """The 5-cycle in a vertex file, or the first one the pool search finds."""
    if path:
        points = list(parse_vertex_file(path).points)
        problems = validate_5cycle(points, t)
        if problems:
            raise click.BadParameter(f"{path}: {problems[0]}")
        return points
    cycle = find_5cycle(t, gen_vectors(t, {1, 3}, pool_height), workers)
    if cycle is None:
        raise SearchExhaustedError(f"no 5-cycle found for t={t}; pass one with --cycle", pool_height)
    return cycle


def _emit(cert: Certificate, output) -> int:
    """Verify, print and optionally write a certificate."""
    report = verify_certificate(cert)
    if report.failed:
        raise ConsistencyError("search produced a certificate that fails verification")
    echo_lines(report.lines())
    if output:
        write_certificate(output, cert)
        click.echo(f"certificate written to {output}")
    else:
        click.echo(dumps(cert), nl=False)
    return report.exit_code


def hunt_commands(cli):
    """
    Search commands
    """
    @cli.command("hunt-greedy", help="Grow a 4-chromatic subgraph vertex by vertex from a 5-cycle.")
    @click.argument("t", type=RATIONAL)
    @click.option("--cycle", "cycle_file", type=click.Path(exists=True, dir_okay=False),
                  help="Vertex file with the seed 5-cycle.")
    @click.option("--box", type=click.IntRange(min=1), help="Half-width of the candidate box.")
    @click.option("--cap", type=click.IntRange(min=5), help="Vertex cap.")
    @click.option("--pool-height", type=click.IntRange(min=1), help="Numerator bound for the seed search.")
    @click.option("--critical/--no-critical", default=False, help="Reduce the result to a 4-critical subgraph.")
    @click.option("--output", type=click.Path(dir_okay=False), help="Certificate file to write.")
    @workers_option
    def hunt_greedy(t, cycle_file, box, cap, pool_height, critical, output, workers):
        """
        Run the greedy search and print the resulting certificate.

        Returns:
            int: Exit code of the certificate check, 1 when the search fails.
        """
        t = square_free_t(t)
        config = make_config(box=box, cap=cap, pool_height=pool_height, output=output, workers=workers)
        seed = _load_cycle(cycle_file, t, config.pool_height, config.workers)
        spec = CandidateSpec(frozenset({1, 3}), config.box)
        logger.info(f"hunt-greedy t={t} box={config.box} cap={config.cap}")
        result = greedy_hunt(t, seed, spec, config.cap)
        if not result.success:
            click.echo(f"RESULT FAIL {result.reason} (order {result.order})")
            return 1
        graph = critical_reduce(result.graph, 4) if critical else result.graph
        click.echo(f"greedy order {result.order}, certificate order {graph.order}")
        cert = Certificate(CertificateKind.DIRECT, graph.t, graph.vertices)
        return _emit(cert, config.output)

    @cli.command("hunt-grotzsch-type", help="Build the order-25 Grötzsch-type graph around a 5-cycle.")
    @click.argument("t", type=RATIONAL)
    @click.option("--cycle", "cycle_file", type=click.Path(exists=True, dir_okay=False),
                  help="Vertex file with the 5-cycle.")
    @click.option("--height", type=click.IntRange(min=1), help="Farey height of the circle parameters.")
    @click.option("--max-tries", default=1_500_000, show_default=True, type=click.IntRange(min=1),
                  help="Parameter triples tried per apex.")
    @click.option("--pool-height", type=click.IntRange(min=1), help="Numerator bound for the cycle search.")
    @click.option("--output", type=click.Path(dir_okay=False), help="Certificate file to write.")
    @workers_option
    def hunt_grotzsch_type(t, cycle_file, height, max_tries, pool_height, output, workers):
        t = square_free_t(t)
        config = make_config(height=height, pool_height=pool_height, output=output, workers=workers)
        cycle = _load_cycle(cycle_file, t, config.pool_height, config.workers)
        found = grotzsch_type_hunt(t, cycle, farey_parameters(config.height), max_tries, config.workers)
        if found is None:
            click.echo("RESULT FAIL no rational apex for every i within the parameter bounds")
            return 1
        _, cert = found
        return _emit(cert, config.output)

    @cli.command("hunt-grotzsch-subgraph", help="Complete a symmetric 5-cycle to the H device.")
    @click.argument("t", type=RATIONAL)
    @click.option("--height", type=click.IntRange(min=1), help="Farey height of the circle parameters.")
    @click.option("--d-bound", type=click.IntRange(min=1), help="Largest integer d tried.")
    @click.option("--pool-height", type=click.IntRange(min=1), help="Numerator bound of the vector pool.")
    @click.option("--max-pairs", default=100_000, show_default=True, type=click.IntRange(min=1),
                  help="Parameter pairs tried per symmetric 5-cycle.")
    @click.option("--max-cycles", default=20, show_default=True, type=click.IntRange(min=1),
                  help="Symmetric 5-cycles tried.")
    @click.option("--output", type=click.Path(dir_okay=False), help="Certificate file to write.")
    @workers_option
    def hunt_grotzsch_subgraph(t, height, d_bound, pool_height, max_pairs, max_cycles, output, workers):
        t = square_free_t(t)
        config = make_config(height=height, d_bound=d_bound, pool_height=pool_height, output=output,
                             workers=workers)
        pool = gen_vectors(t, {1, 3}, config.pool_height)
        found = h_device_hunt(t, pool, config.d_bound, config.height, max_pairs, max_cycles, config.workers)
        if found is None:
            click.echo(f"RESULT FAIL no H device from {max_cycles} symmetric 5-cycles with d <= {config.d_bound}")
            return 1
        sym, cert = found
        click.echo(f"symmetric 5-cycle with d = {sym.d}: " + " | ".join(str(p) for p in sym.points))
        return _emit(cert, config.output)
