"""
Flat-file inputs and outputs: vertex files, abstract edge lists and
certificates.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from scavenger.core.certificate import Certificate, dumps, loads
from scavenger.core.graph import AbstractGraph
from scavenger.core.qcore import QPoint3, parse_point, parse_rational
from scavenger.errors import ParseError

logger = logging.getLogger("scavenger")


@dataclass(frozen=True)
class VertexFile:
    path: Path
    points: tuple[QPoint3, ...]
    t: Fraction
    duplicates: int = 0


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_vertex_file(path) -> VertexFile:
    """
    Read `t=<rational>` followed by one point per line.

    Args:
        path (str | Path): File to read.

    Returns:
        VertexFile: Points in file order, repeated points dropped.
    """
    t = None
    points, seen, duplicates = [], set(), 0
    for lineno, line in _content_lines(_read(path)):
        if t is None:
            if not line.startswith("t="):
                raise ParseError("expected header t=<rational>", lineno, 1)
            t = parse_rational(line[2:], lineno, 3)
            if t <= 0:
                raise ParseError(f"t must be positive, got {t}", lineno, 3)
            continue
        p = parse_point(line, lineno)
        if p in seen:
            duplicates += 1
            logger.warning(f"{path}:{lineno}: duplicate point {p} dropped")
            continue
        seen.add(p)
        points.append(p)
    if t is None:
        raise ParseError(f"{path} has no t= header")
    return VertexFile(Path(path), tuple(points), t, duplicates)


def parse_edge_list(path, order: int | None = None) -> AbstractGraph:
    """One `u v` pair of 0-based indices per line."""
    edges = []
    for lineno, line in _content_lines(_read(path)):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two indices, got {line!r}", lineno, 1)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer index in {line!r}", lineno, 1)
        if u < 0 or v < 0:
            raise ParseError(f"negative index in {line!r}", lineno, 1)
        edges.append((u, v))
    if order is None:
        order = 1 + max((max(e) for e in edges), default=-1)
    return AbstractGraph(order, tuple(edges))


def read_certificate(path) -> Certificate:
    return loads(_read(path))


def write_certificate(path, cert: Certificate) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(cert), encoding="utf-8")
    logger.info(f"certificate written to {path}")
