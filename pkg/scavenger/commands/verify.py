import logging

import click

from scavenger.commands.options import echo_lines, make_config, workers_option
from scavenger.core.certificate import Certificate, CertificateKind, verify_certificate
from scavenger.errors import ScavengerError
from scavenger.fileio import parse_vertex_file, read_certificate
from scavenger.workers import parallel_map

# Initialize logger
logger = logging.getLogger("scavenger")


def load_any(path) -> Certificate:
    """
    A certificate file, or a vertex file read as a direct-chromatic claim.
    """
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if line:
                break
        else:
            line = ""
    if line.startswith("certificate"):
        return read_certificate(path)
    vertex_file = parse_vertex_file(path)
    return Certificate(CertificateKind.DIRECT, vertex_file.t, vertex_file.points)


def verify_path(path) -> tuple[list[str], int]:
    """Report lines and exit code for one file."""
    try:
        report = verify_certificate(load_any(path))
    except (ScavengerError, OSError) as e:
        logger.error(f"verify {path}: {e}")
        return [f"ERROR {path}: {e}"], 1
    return report.lines(), report.exit_code


def combine_codes(codes) -> int:
    codes = list(codes)
    if 1 in codes:
        return 1
    return 2 if 2 in codes else 0


def verify_commands(cli):
    """
    Verification commands
    """
    @cli.command(help="Re-check vertex files and certificates with exact arithmetic.")
    @click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
    @workers_option
    def verify(files, workers):
        """
        Verify each file and print its CHECK lines.

        Args:
            files (tuple[str]): Vertex files or certificates.
            workers (int): Files verified in parallel.

        Returns:
            int: 0 pass, 1 fail, 2 pass with warnings.
        """
        config = make_config(workers=workers)
        logger.info(f"verify {len(files)} file(s) on {config.workers} worker(s)")
        results = parallel_map(verify_path, files, config.workers)
        for path, (lines, _) in zip(files, results):
            if len(files) > 1:
                click.echo(f"== {path}")
            echo_lines(lines)
        return combine_codes(code for _, code in results)
