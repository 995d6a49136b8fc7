import logging

import click

import settings
from scavenger.core.qcore import parse_point, parse_rational, reduce_distance
from scavenger.errors import ParseError

logger = logging.getLogger("scavenger")

# negative numbers are values, not options
NUMERIC_ARGS = {"ignore_unknown_options": True}


class RationalType(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_rational(value)
        except ParseError as e:
            self.fail(str(e), param, ctx)


class PointType(click.ParamType):
    name = "point"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_point(value)
        except ParseError as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalType()
POINT = PointType()


def square_free_t(value) -> int:
    """
    Reduce a squared distance to its square-free part; G(Q^3, sqrt q) and
    G(Q^3, sqrt r) are similar when q = scale^2 * r.
    """
    if value <= 0:
        raise click.BadParameter(f"squared distance must be positive, got {value}")
    r, scale = reduce_distance(value)
    if scale != 1:
        click.echo(f"note: sqrt({value}) = {scale} * sqrt({r}); searching G(Q^3, sqrt {r})", err=True)
        logger.info(f"distance {value} reduced to {r}")
    return r


def workers_option(func):
    return click.option(
        "--workers", default=1, show_default=True, type=click.IntRange(min=1),
        help="Worker processes (SCAVENGER_WORKERS overrides).",
    )(func)


def make_config(**bounds) -> settings.RunConfig:
    """RunConfig from command options, falling back to settings defaults."""
    given = {key: value for key, value in bounds.items() if value is not None}
    if "workers" in given:
        given["workers"] = settings.resolve_workers(given["workers"])
    try:
        return settings.RunConfig(**given)
    except ValueError as e:
        raise click.UsageError(str(e))


def echo_lines(lines) -> None:
    for line in lines:
        click.echo(line)
